//! Instance generators: lattices on the torus and Klein bottle, a wheel on
//! the projective plane, planar grids, and random drawings for any surface.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embedding::{Crossing, Edge, EmbeddedGraph, HalfEdgeId, SlotId, Vertex, Weight};
use crate::error::{Error, Result};
use crate::homology::{SurfaceKind, SurfaceSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TorusLattice,
    KleinLattice,
    Rp2Wheel,
    PlanarGrid,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" | "torus_lattice" => Ok(Family::TorusLattice),
            "klein" | "klein_lattice" => Ok(Family::KleinLattice),
            "rp2" | "rp2_wheel" => Ok(Family::Rp2Wheel),
            "planar" | "planar_grid" => Ok(Family::PlanarGrid),
            _ => Err(Error::BadSpec(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TorusLattice => "torus_lattice",
            Family::KleinLattice => "klein_lattice",
            Family::Rp2Wheel => "rp2_wheel",
            Family::PlanarGrid => "planar_grid",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    /// Horizontal (or rim) and vertical (or spoke) weights.
    pub weights: (Weight, Weight),
}

impl GeneratorSpec {
    pub fn new(family: Family, m: usize, n: usize) -> Self {
        GeneratorSpec {
            family,
            m,
            n,
            weights: (Weight::symbol("x"), Weight::symbol("y")),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<EmbeddedGraph> {
    if spec.m == 0 || spec.n == 0 {
        return Err(Error::BadSpec(format!("dimensions {}x{} must be positive", spec.m, spec.n)));
    }
    let (wx, wy) = spec.weights.clone();
    let g = match spec.family {
        Family::TorusLattice => lattice(spec.m, spec.n, false, wx, wy),
        Family::KleinLattice => lattice(spec.m, spec.n, true, wx, wy),
        Family::PlanarGrid => planar_grid(spec.m, spec.n, wx, wy),
        Family::Rp2Wheel => rp2_wheel(spec.m, spec.n, wx, wy)?,
    };
    debug_assert!(g.validate().is_empty(), "{:?}", g.validate());
    Ok(g)
}

/// Half-edge ids of grid vertex `v` in clockwise order south, west, north, east.
fn compass(v: usize) -> [HalfEdgeId; 4] {
    let b = 4 * v as HalfEdgeId;
    [b, b + 1, b + 2, b + 3]
}

const S: usize = 0;
const W: usize = 1;
const N: usize = 2;
const E: usize = 3;

/// `m` columns by `n` rows on the torus, or on the Klein bottle when
/// `twisted` (rows wrap with a flip). Horizontal edges get `wx`.
fn lattice(m: usize, n: usize, twisted: bool, wx: Weight, wy: Weight) -> EmbeddedGraph {
    let vid = |i: usize, j: usize| j * m + i;
    let signature = if twisted {
        SurfaceSignature::klein()
    } else {
        SurfaceSignature::torus()
    };
    // Occurrences a (bottom), b (right), a⁻¹ (top), b or b⁻¹ (left).
    let off = [0, m, m + n, 2 * m + n];
    let slot = |occ: usize, p: usize| (off[occ] + p) as SlotId;
    let perimeter = (0..4)
        .map(|k| {
            let len = if k % 2 == 0 { m } else { n };
            (0..len).map(|p| slot(k, p)).collect()
        })
        .collect();
    let vertices = (0..m * n)
        .map(|v| Vertex {
            id: v,
            rotation: compass(v).to_vec(),
        })
        .collect();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..m {
            let v = vid(i, j);
            let id = edges.len();
            if i + 1 < m {
                edges.push(Edge::new(id, compass(v)[E], compass(vid(i + 1, j))[W], wx.clone(), vec![]));
            } else {
                let (target, entry) = if twisted {
                    (vid(0, n - 1 - j), slot(3, j))
                } else {
                    (vid(0, j), slot(3, n - 1 - j))
                };
                edges.push(Edge::new(
                    id,
                    compass(v)[E],
                    compass(target)[W],
                    wx.clone(),
                    vec![Crossing { exit: slot(1, j), entry }],
                ));
            }
        }
    }
    for j in 0..n {
        for i in 0..m {
            let v = vid(i, j);
            let id = edges.len();
            if j + 1 < n {
                edges.push(Edge::new(id, compass(v)[N], compass(vid(i, j + 1))[S], wy.clone(), vec![]));
            } else {
                edges.push(Edge::new(
                    id,
                    compass(v)[N],
                    compass(vid(i, 0))[S],
                    wy.clone(),
                    vec![Crossing {
                        exit: slot(2, m - 1 - i),
                        entry: slot(0, i),
                    }],
                ));
            }
        }
    }
    EmbeddedGraph {
        signature,
        vertices,
        edges,
        perimeter,
    }
}

fn planar_grid(m: usize, n: usize, wx: Weight, wy: Weight) -> EmbeddedGraph {
    let vid = |i: usize, j: usize| j * m + i;
    let mut edges = Vec::new();
    let mut used = vec![[false; 4]; m * n];
    for j in 0..n {
        for i in 0..m {
            if i + 1 < m {
                let (a, b) = (vid(i, j), vid(i + 1, j));
                used[a][E] = true;
                used[b][W] = true;
                let id = edges.len();
                edges.push(Edge::new(id, compass(a)[E], compass(b)[W], wx.clone(), vec![]));
            }
        }
    }
    for j in 0..n {
        for i in 0..m {
            if j + 1 < n {
                let (a, b) = (vid(i, j), vid(i, j + 1));
                used[a][N] = true;
                used[b][S] = true;
                let id = edges.len();
                edges.push(Edge::new(id, compass(a)[N], compass(b)[S], wy.clone(), vec![]));
            }
        }
    }
    let vertices = (0..m * n)
        .map(|v| Vertex {
            id: v,
            rotation: (0..4).filter(|&d| used[v][d]).map(|d| compass(v)[d]).collect(),
        })
        .collect();
    EmbeddedGraph {
        signature: SurfaceSignature::sphere(),
        vertices,
        edges,
        perimeter: vec![],
    }
}

/// A hub inside `m` concentric cycles of `n` vertices; the outer cycle's
/// opposite vertices are joined through the cross-cap. Cycle and cross-cap
/// edges get `w_rim`, spokes and radial edges `w_spoke`.
fn rp2_wheel(m: usize, n: usize, w_rim: Weight, w_spoke: Weight) -> Result<EmbeddedGraph> {
    if n % 2 == 1 {
        return Err(Error::BadSpec(format!("rp2_wheel needs an even cycle length, got {n}")));
    }
    let hub = m * n;
    let vid = |r: usize, i: usize| r * n + i;
    let mut b = Builder::new(m * n + 1);
    for r in 0..m {
        for i in 0..n {
            let (a, c) = (vid(r, i), vid(r, (i + 1) % n));
            b.edge(a, c, w_rim.clone(), vec![], (Key::Next, Key::Prev));
        }
    }
    for i in 0..n {
        b.edge(vid(0, i), hub, w_spoke.clone(), vec![], (Key::Inner, Key::Hub(n - i)));
        for r in 1..m {
            b.edge(vid(r, i), vid(r - 1, i), w_spoke.clone(), vec![], (Key::Inner, Key::Outer(0)));
        }
    }
    let half = n / 2;
    for i in 0..half {
        let (a, c) = (vid(m - 1, i), vid(m - 1, i + half));
        b.edge(
            a,
            c,
            w_rim.clone(),
            vec![Crossing {
                exit: i as SlotId,
                entry: (i + half) as SlotId,
            }],
            (Key::Outer(0), Key::Outer(0)),
        );
    }
    let perimeter = vec![
        (0..half as SlotId).collect(),
        (half as SlotId..n as SlotId).collect(),
    ];
    Ok(b.finish(SurfaceSignature::projective(), perimeter))
}

/// Position of a half-edge in its vertex's clockwise rotation, for a vertex
/// on a circle traversed counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
enum Key {
    /// Toward the boundary; larger values come first.
    Outer(u32),
    /// Toward the previous vertex on the circle.
    Prev,
    /// Toward the interior, ordered by the value.
    Inside(f64),
    Inner,
    Next,
    /// At a central vertex, ordered by the value.
    Hub(usize),
}

impl Key {
    fn rank(&self) -> (u8, f64) {
        match *self {
            Key::Outer(s) => (0, -(s as f64)),
            Key::Prev => (1, 0.0),
            Key::Inside(x) => (2, x),
            Key::Inner => (2, 0.5),
            Key::Next => (3, 0.0),
            Key::Hub(i) => (4, i as f64),
        }
    }
}

struct Builder {
    slots: Vec<Vec<(Key, HalfEdgeId)>>,
    edges: Vec<Edge>,
    next_he: HalfEdgeId,
}

impl Builder {
    fn new(nv: usize) -> Self {
        Builder {
            slots: vec![Vec::new(); nv],
            edges: Vec::new(),
            next_he: 0,
        }
    }

    fn edge(&mut self, a: usize, b: usize, w: Weight, crossings: Vec<Crossing>, keys: (Key, Key)) {
        let (u, v) = (self.next_he, self.next_he + 1);
        self.next_he += 2;
        self.slots[a].push((keys.0, u));
        self.slots[b].push((keys.1, v));
        let id = self.edges.len();
        self.edges.push(Edge::new(id, u, v, w, crossings));
    }

    fn finish(self, signature: SurfaceSignature, perimeter: Vec<Vec<SlotId>>) -> EmbeddedGraph {
        let vertices = self
            .slots
            .into_iter()
            .enumerate()
            .map(|(id, mut hs)| {
                hs.sort_by(|x, y| x.0.rank().partial_cmp(&y.0.rank()).expect("finite keys"));
                Vertex {
                    id,
                    rotation: hs.into_iter().map(|(_, h)| h).collect(),
                }
            })
            .collect();
        EmbeddedGraph {
            signature,
            vertices,
            edges: self.edges,
            perimeter,
        }
    }
}

/// Knobs of [`random_instance`].
#[derive(Clone, Debug)]
pub struct RandomParams {
    /// Vertices on the circle, at most.
    pub max_ring: usize,
    /// Edges crossing each side pair, at most.
    pub max_per_pair: usize,
    pub max_chords: usize,
    pub pendant_prob: f64,
    pub hub_prob: f64,
    pub drop_ring_prob: f64,
    /// Chance of merging the two outside edges at a degree-2 vertex.
    pub smooth_prob: f64,
    /// Chance that a vertex with two boundary edges is skipped by the circle.
    pub bypass_prob: f64,
    pub symbols: Vec<String>,
    /// Chance of a small rational weight instead of a symbol.
    pub rational_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_ring: 6,
            max_per_pair: 3,
            max_chords: 3,
            pendant_prob: 0.15,
            hub_prob: 0.2,
            drop_ring_prob: 0.35,
            smooth_prob: 0.8,
            bypass_prob: 0.5,
            symbols: vec!["x".into(), "y".into(), "z".into()],
            rational_prob: 0.15,
        }
    }
}

fn random_weight(rng: &mut ChaCha8Rng, p: &RandomParams) -> Weight {
    if p.symbols.is_empty() || rng.gen_bool(p.rational_prob) {
        let choices = [(1, 2), (1, 3), (2, 3), (2, 1), (1, 1)];
        let (a, b) = choices[rng.gen_range(0..choices.len())];
        Weight::rational(a, b)
    } else {
        Weight::symbol(p.symbols.choose(rng).expect("nonempty"))
    }
}

/// Random drawing: vertices on a circle joined by circle edges (some
/// dropped), non-crossing chords or a central hub, inside pendants, and
/// edges through the side pairs attached in boundary order. Degree-2
/// vertices between two such edges may be smoothed into one edge crossing
/// several sides.
/// Draws are repeated from the same stream until the result validates, which
/// rejects components meeting the boundary in interleaved positions.
pub fn random_instance(sig: SurfaceSignature, seed: u64, p: &RandomParams) -> EmbeddedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = draw_instance(sig, &mut rng, p);
        if g.validate().is_empty() {
            return g;
        }
    }
}

fn draw_instance(sig: SurfaceSignature, rng: &mut ChaCha8Rng, p: &RandomParams) -> EmbeddedGraph {
    let k = rng.gen_range(1..=p.max_ring.max(1));
    let word = sig.side_word();
    let pos = sig.pair_positions();
    let counts: Vec<usize> = (0..sig.b1()).map(|_| rng.gen_range(0..=p.max_per_pair)).collect();

    let mut perimeter: Vec<Vec<SlotId>> = Vec::with_capacity(word.len());
    let mut next_slot: SlotId = 0;
    for o in &word {
        let c = counts[o.pair];
        perimeter.push((next_slot..next_slot + c as SlotId).collect());
        next_slot += c as SlotId;
    }
    let total = next_slot as usize;
    let mut owner: Vec<usize> = (0..total).map(|_| rng.gen_range(0..k)).collect();
    owner.sort_unstable();

    let hub = rng.gen_bool(p.hub_prob) && k >= 2;
    let nv = k + hub as usize;
    let mut b = Builder::new(nv);
    for (s, pair_pos) in pos.iter().enumerate() {
        let [k0, k1] = *pair_pos;
        let n = counts[s];
        for q in 0..n {
            let exit = perimeter[k0][q];
            let entry = if sig.is_twisted(s) {
                perimeter[k1][q]
            } else {
                perimeter[k1][n - 1 - q]
            };
            let w = random_weight(rng, p);
            b.edge(
                owner[exit as usize],
                owner[entry as usize],
                w,
                vec![Crossing { exit, entry }],
                (Key::Outer(exit), Key::Outer(entry)),
            );
        }
    }
    // Vertices holding exactly two stubs may be skipped by the circle edges,
    // leaving them ready to be smoothed away.
    let mut stubs = vec![0usize; k];
    for &o in &owner {
        stubs[o] += 1;
    }
    let members: Vec<usize> = (0..k)
        .filter(|&i| !(stubs[i] == 2 && rng.gen_bool(p.bypass_prob)))
        .collect();
    let r = members.len();
    if r >= 2 {
        for t in 0..r {
            let keep = if r == 2 && t == 1 {
                rng.gen_bool(0.5)
            } else {
                !rng.gen_bool(p.drop_ring_prob)
            };
            if keep {
                let w = random_weight(rng, p);
                b.edge(members[t], members[(t + 1) % r], w, vec![], (Key::Next, Key::Prev));
            }
        }
    }
    // Clockwise at member t the interior directions point to t−1, t−2, …, t+1.
    let dist = |t: usize, u: usize| ((t + r - u) % r) as f64;
    if hub {
        for &m in &members {
            if rng.gen_bool(0.7) {
                let w = random_weight(rng, p);
                b.edge(m, k, w, vec![], (Key::Inside(r as f64 / 2.0), Key::Hub(k - m)));
            }
        }
    } else if r >= 4 {
        let mut chords: Vec<(usize, usize)> = Vec::new();
        for _ in 0..p.max_chords {
            let i = rng.gen_range(0..r);
            let j = rng.gen_range(0..r);
            let (i, j) = (i.min(j), i.max(j));
            if j - i < 2 || (i == 0 && j == r - 1) || chords.contains(&(i, j)) {
                continue;
            }
            let crosses = chords
                .iter()
                .any(|&(a, c)| (i < a && a < j && j < c) || (a < i && i < c && c < j));
            if !crosses {
                chords.push((i, j));
                let w = random_weight(rng, p);
                b.edge(
                    members[i],
                    members[j],
                    w,
                    vec![],
                    (Key::Inside(dist(i, j)), Key::Inside(dist(j, i))),
                );
            }
        }
    }
    let mut g = b.finish(sig, perimeter);
    for v in 0..k {
        if rng.gen_bool(p.pendant_prob) {
            add_pendant(&mut g, v, rng, p);
        }
    }
    loop {
        let candidates: Vec<usize> = (0..g.vertices.len()).filter(|&v| smoothable(&g, v)).collect();
        let Some(&v) = candidates.choose(rng) else { break };
        if !rng.gen_bool(p.smooth_prob) {
            break;
        }
        let w = random_weight(rng, p);
        g = smooth(&g, v, w);
    }
    g
}

/// Leaf attached to `v` at a random interior position of its rotation.
fn add_pendant(g: &mut EmbeddedGraph, v: usize, rng: &mut ChaCha8Rng, p: &RandomParams) {
    let next = g
        .vertices
        .iter()
        .flat_map(|x| x.rotation.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let rot = &mut g.vertices[v].rotation;
    let at = rng.gen_range(0..=rot.len());
    rot.insert(at, next);
    let id = g.vertices.len();
    g.vertices.push(Vertex {
        id,
        rotation: vec![next + 1],
    });
    let eid = g.edges.len();
    let w = random_weight(rng, p);
    g.edges.push(Edge::new(eid, next, next + 1, w, vec![]));
    if g.validate().is_empty() {
        return;
    }
    // The random position landed among the boundary stubs; undo.
    g.edges.pop();
    g.vertices.pop();
    g.vertices[v].rotation.remove(at);
}

fn smoothable(g: &EmbeddedGraph, v: usize) -> bool {
    let rot = &g.vertices[v].rotation;
    if rot.len() != 2 {
        return false;
    }
    let e: Vec<&Edge> = rot
        .iter()
        .map(|&h| g.edges.iter().find(|e| e.u == h || e.v == h).expect("known half-edge"))
        .collect();
    e[0].id != e[1].id && e[0].is_outside() && e[1].is_outside()
}

fn reversed(e: &Edge) -> Edge {
    Edge {
        u: e.v,
        v: e.u,
        crossings: e
            .crossings
            .iter()
            .rev()
            .map(|c| Crossing {
                exit: c.entry,
                entry: c.exit,
            })
            .collect(),
        ..e.clone()
    }
}

/// Replaces degree-2 vertex `v` and its two edges by one edge.
fn smooth(g: &EmbeddedGraph, v: usize, w: Weight) -> EmbeddedGraph {
    let rot = &g.vertices[v].rotation;
    let find = |h: HalfEdgeId| g.edges.iter().position(|e| e.u == h || e.v == h).expect("known");
    let (i1, i2) = (find(rot[0]), find(rot[1]));
    let e1 = if g.edges[i1].v == rot[0] {
        g.edges[i1].clone()
    } else {
        reversed(&g.edges[i1])
    };
    let e2 = if g.edges[i2].u == rot[1] {
        g.edges[i2].clone()
    } else {
        reversed(&g.edges[i2])
    };
    let merged = Edge {
        id: 0,
        u: e1.u,
        v: e2.v,
        weight: w,
        crossings: e1.crossings.iter().chain(&e2.crossings).copied().collect(),
        auxiliary: false,
    };
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != i1 && i != i2)
        .map(|(_, e)| e.clone())
        .collect();
    edges.push(merged);
    for (i, e) in edges.iter_mut().enumerate() {
        e.id = i;
    }
    let vertices = g
        .vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .enumerate()
        .map(|(id, (_, x))| Vertex {
            id,
            rotation: x.rotation.clone(),
        })
        .collect();
    EmbeddedGraph {
        signature: g.signature,
        vertices,
        edges,
        perimeter: g.perimeter.clone(),
    }
}

/// Random connected-or-not instances whose cycle space has dimension at most
/// `max_rank`, one per seed, skipping seeds that exceed it.
pub fn random_instances(
    sig: SurfaceSignature,
    count: usize,
    max_rank: usize,
    first_seed: u64,
    p: &RandomParams,
) -> Vec<(u64, EmbeddedGraph)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = first_seed;
    while out.len() < count {
        let g = random_instance(sig, seed, p);
        if g.cycle_rank().is_ok_and(|r| r <= max_rank) {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

/// Signatures exercised by the randomized checks.
pub fn small_signatures() -> Vec<SurfaceSignature> {
    vec![
        SurfaceSignature::new(SurfaceKind::Orientable, 0),
        SurfaceSignature::new(SurfaceKind::Orientable, 1),
        SurfaceSignature::new(SurfaceKind::Orientable, 2),
        SurfaceSignature::new(SurfaceKind::KleinSum, 0),
        SurfaceSignature::new(SurfaceKind::KleinSum, 1),
        SurfaceSignature::new(SurfaceKind::ProjectiveSum, 0),
        SurfaceSignature::new(SurfaceKind::ProjectiveSum, 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_1x1_matches_hand_drawing() {
        let g = generate(&GeneratorSpec::new(Family::TorusLattice, 1, 1)).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.vertices[0].rotation, vec![0, 1, 2, 3]);
        assert_eq!(g.edges[0].crossings, vec![Crossing { exit: 1, entry: 3 }]);
        assert_eq!(g.edges[1].crossings, vec![Crossing { exit: 2, entry: 0 }]);
        assert_eq!(g.perimeter, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn torus_2x2_counts() {
        let g = generate(&GeneratorSpec::new(Family::TorusLattice, 2, 2)).unwrap();
        assert!(g.validate().is_empty());
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 8);
        assert_eq!(g.edges.iter().filter(|e| e.is_outside()).count(), 4);
    }

    #[test]
    fn families_validate() {
        for fam in [Family::TorusLattice, Family::KleinLattice, Family::PlanarGrid, Family::Rp2Wheel] {
            for (m, n) in [(1, 2), (2, 2), (3, 2), (2, 4)] {
                let g = generate(&GeneratorSpec::new(fam, m, n)).unwrap();
                assert!(g.validate().is_empty(), "{fam} {m}x{n}: {:?}", g.validate());
            }
        }
        assert!(generate(&GeneratorSpec::new(Family::Rp2Wheel, 1, 3)).is_err());
        assert!(generate(&GeneratorSpec::new(Family::TorusLattice, 0, 3)).is_err());
    }

    #[test]
    fn random_instances_validate() {
        let p = RandomParams::default();
        for sig in small_signatures() {
            for seed in 0..200 {
                let g = random_instance(sig, seed, &p);
                assert!(g.validate().is_empty(), "{sig} seed {seed}: {:?}", g.validate());
            }
        }
    }

    #[test]
    fn smoothing_produces_multi_crossing_edges() {
        let p = RandomParams {
            smooth_prob: 1.0,
            drop_ring_prob: 0.9,
            ..RandomParams::default()
        };
        let found = (0..200).any(|s| {
            random_instance(SurfaceSignature::new(SurfaceKind::Orientable, 2), s, &p)
                .edges
                .iter()
                .any(|e| e.crossings.len() > 1)
        });
        assert!(found);
    }

    #[test]
    fn generation_is_deterministic() {
        let p = RandomParams::default();
        let a = random_instance(SurfaceSignature::klein(), 7, &p);
        let b = random_instance(SurfaceSignature::klein(), 7, &p);
        assert_eq!(a, b);
    }
}
