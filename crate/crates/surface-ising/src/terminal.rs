//! The terminal graph: every vertex of degree d becomes a complete graph K_d.
//!
//! Terminals are numbered by vertex id, then by label; the label of a
//! half-edge is its 1-based position in the clockwise rotation. Long edges
//! keep the index of the edge of `G` they come from, short edges follow.

use std::collections::HashMap;

use crate::drawing::Drawing;
use crate::embedding::{EmbeddedGraph, GraphIndex, HalfEdgeId, Weight};
use crate::error::{Error, Result};
use crate::homology::{IntersectionForm, SurfaceSignature, Z2Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TEdgeKind {
    Long { edge: usize },
    /// Chord of `K_d` at `vertex` between labels `lo < hi` (1-based).
    Short { vertex: usize, lo: usize, hi: usize },
}

/// Edge of `G^T` with its canonical endpoint pair: `(u end, v end)` for long
/// edges, `(lo label, hi label)` for short ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TEdge {
    pub kind: TEdgeKind,
    pub ends: (usize, usize),
}

impl TEdge {
    pub fn is_long(&self) -> bool {
        matches!(self.kind, TEdgeKind::Long { .. })
    }
}

/// One traversed edge of a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

/// Closed walk in `G^T` with a traversal direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCycle {
    pub steps: Vec<Step>,
}

impl FaceCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        let n = self.steps.len();
        n > 0 && (0..n).all(|i| self.steps[i].to == self.steps[(i + 1) % n].from)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.steps.iter().any(|s| s.edge == e)
    }
}

#[derive(Clone, Debug)]
pub struct TerminalGraph {
    pub graph: EmbeddedGraph,
    pub index: GraphIndex,
    pub form: IntersectionForm,
    /// First terminal of each vertex.
    pub offsets: Vec<usize>,
    /// `(vertex, label)` of each terminal.
    pub owner: Vec<(usize, usize)>,
    pub edges: Vec<TEdge>,
    short_offsets: Vec<usize>,
    pub crossing: Vec<Z2Vector>,
    pub crossing_sequence: Vec<Vec<usize>>,
    pub omega: Vec<bool>,
    /// Distinct weights, sorted; `weight_class[e]` indexes into it.
    pub classes: Vec<Weight>,
    pub weight_class: Vec<usize>,
    pub(crate) drawing: Drawing,
    inside_index: HashMap<usize, usize>,
}

fn pair_index(d: usize, lo: usize, hi: usize) -> usize {
    // 0-based lo < hi < d, row-major over the upper triangle.
    lo * (2 * d - lo - 1) / 2 + (hi - lo - 1)
}

/// Whether chords `{a, b}` and `{c, d}` on a circle cross (labels distinct).
pub fn chords_interleave(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d) && ![a, b].contains(&c) && ![a, b].contains(&d)
}

pub fn build_terminal(g: &EmbeddedGraph) -> Result<TerminalGraph> {
    let index = g.check()?;
    if let Some(e) = g.edges.iter().position(|e| e.crossings.len() > 1) {
        return Err(Error::NotNormalized(e));
    }
    if let Some(v) = (0..g.vertices.len()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let drawing = Drawing::build(g, &index);
    if !drawing.is_connected_inside() {
        return Err(Error::NotNormalized(usize::MAX));
    }

    let mut offsets = Vec::with_capacity(g.vertices.len());
    let mut owner = Vec::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        offsets.push(owner.len());
        for k in 1..=vert.rotation.len() {
            owner.push((v, k));
        }
    }
    let term = |h: HalfEdgeId| {
        let (v, p) = index.he_vertex[&h];
        offsets[v] + p
    };

    let mut edges = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        edges.push(TEdge {
            kind: TEdgeKind::Long { edge: i },
            ends: (term(e.u), term(e.v)),
        });
    }
    let mut short_offsets = Vec::with_capacity(g.vertices.len());
    for (v, vert) in g.vertices.iter().enumerate() {
        short_offsets.push(edges.len());
        let d = vert.rotation.len();
        for lo in 1..=d {
            for hi in lo + 1..=d {
                edges.push(TEdge {
                    kind: TEdgeKind::Short { vertex: v, lo, hi },
                    ends: (offsets[v] + lo - 1, offsets[v] + hi - 1),
                });
            }
        }
    }

    let mut crossing = Vec::with_capacity(g.edges.len());
    let mut crossing_sequence = Vec::with_capacity(g.edges.len());
    let mut omega = Vec::with_capacity(g.edges.len());
    for i in 0..g.edges.len() {
        crossing.push(g.crossing_vector(&index, i)?);
        crossing_sequence.push(g.crossing_sequence(&index, i)?);
        omega.push(g.omega_edge(&index, i)?);
    }
    let classes = g.weight_classes();
    let weight_class = g
        .edges
        .iter()
        .map(|e| classes.binary_search(&e.weight).expect("class listed"))
        .collect();
    let inside_index = drawing
        .inside
        .iter()
        .flatten()
        .enumerate()
        .map(|(k, &f)| (f, k))
        .collect();

    Ok(TerminalGraph {
        form: g.signature.intersection_form(),
        graph: g.clone(),
        index,
        offsets,
        owner,
        edges,
        short_offsets,
        crossing,
        crossing_sequence,
        omega,
        classes,
        weight_class,
        drawing,
        inside_index,
    })
}

impl TerminalGraph {
    pub fn signature(&self) -> SurfaceSignature {
        self.graph.signature
    }

    pub fn num_terminals(&self) -> usize {
        self.owner.len()
    }

    pub fn num_long(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn num_short(&self) -> usize {
        self.edges.len() - self.num_long()
    }

    pub fn terminal(&self, h: HalfEdgeId) -> usize {
        let (v, p) = self.index.he_vertex[&h];
        self.offsets[v] + p
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    /// Short edge between labels `a ≠ b` (1-based) of `K_d(v)`.
    pub fn short_edge(&self, v: usize, a: usize, b: usize) -> usize {
        let (lo, hi) = (a.min(b), a.max(b));
        assert!(lo >= 1 && lo < hi && hi <= self.degree(v), "bad labels");
        self.short_offsets[v] + pair_index(self.degree(v), lo - 1, hi - 1)
    }

    /// Short edge joining two terminals of one complete graph.
    pub fn short_between(&self, s: usize, t: usize) -> usize {
        let (v, a) = self.owner[s];
        let (w, b) = self.owner[t];
        assert_eq!(v, w, "terminals in different complete graphs");
        self.short_edge(v, a, b)
    }

    /// 1 iff both are short edges of the same `K_d` whose labels interleave.
    pub fn chord_cross(&self, s1: usize, s2: usize) -> bool {
        match (self.edges[s1].kind, self.edges[s2].kind) {
            (
                TEdgeKind::Short { vertex: v, lo: a, hi: b },
                TEdgeKind::Short { vertex: w, lo: c, hi: d },
            ) if v == w => chords_interleave(a, b, c, d),
            _ => false,
        }
    }

    pub fn standard_dimer(&self) -> Vec<usize> {
        (0..self.num_long()).collect()
    }

    pub fn is_perfect_matching(&self, d: &[usize]) -> bool {
        let mut seen = vec![false; self.num_terminals()];
        for &e in d {
            let Some(te) = self.edges.get(e) else {
                return false;
            };
            for t in [te.ends.0, te.ends.1] {
                if seen[t] {
                    return false;
                }
                seen[t] = true;
            }
        }
        seen.iter().all(|&x| x)
    }

    fn require_matching(&self, d: &[usize]) -> Result<()> {
        if self.is_perfect_matching(d) {
            Ok(())
        } else {
            Err(Error::NotPerfectMatching)
        }
    }

    /// Parity of crossings between short edges of `D` inside the complete graphs.
    pub fn t_in_parity(&self, d: &[usize]) -> Result<bool> {
        self.require_matching(d)?;
        let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in d {
            if let TEdgeKind::Short { vertex, .. } = self.edges[e].kind {
                by_vertex.entry(vertex).or_default().push(e);
            }
        }
        let mut t = false;
        for shorts in by_vertex.values() {
            for i in 0..shorts.len() {
                for j in i + 1..shorts.len() {
                    t ^= self.chord_cross(shorts[i], shorts[j]);
                }
            }
        }
        Ok(t)
    }

    /// Parity of self-crossings of edge `e` outside the polygon: the
    /// intersection number of each earlier crossed side with each later one.
    pub fn edge_self_parity(&self, e: usize) -> bool {
        let seq = &self.crossing_sequence[e];
        let mut t = false;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                t ^= self.form.entry(seq[i], seq[j]) == 1;
            }
        }
        t
    }

    /// Parity of crossings among the long edges of `D` outside the polygon.
    pub fn t_out_parity(&self, d: &[usize]) -> Result<bool> {
        self.require_matching(d)?;
        let longs: Vec<usize> = d.iter().copied().filter(|&e| self.edges[e].is_long()).collect();
        let mut t = false;
        for (i, &e) in longs.iter().enumerate() {
            t ^= self.edge_self_parity(e);
            for &f in &longs[i + 1..] {
                t ^= self.form.pair(&self.crossing[e], &self.crossing[f]);
            }
        }
        Ok(t)
    }

    pub fn t_parity(&self, d: &[usize]) -> Result<bool> {
        Ok(self.t_in_parity(d)? ^ self.t_out_parity(d)?)
    }

    /// Homology class of the long edges of `D`.
    pub fn class_of(&self, d: &[usize]) -> Z2Vector {
        let mut x = Z2Vector::zero(self.form.dim());
        for &e in d {
            if self.edges[e].is_long() {
                x = x.add(&self.crossing[e]);
            }
        }
        x
    }

    /// Cycles of the symmetric difference of two perfect matchings, each
    /// traversed starting along an edge of `d`.
    pub fn alternating_cycles(&self, d: &[usize], d2: &[usize]) -> Result<Vec<FaceCycle>> {
        self.require_matching(d)?;
        self.require_matching(d2)?;
        let n = self.num_terminals();
        let mate = |m: &[usize]| {
            let mut out = vec![usize::MAX; n];
            for &e in m {
                let (a, b) = self.edges[e].ends;
                out[a] = e;
                out[b] = e;
            }
            out
        };
        let (m1, m2) = (mate(d), mate(d2));
        let other = |e: usize, t: usize| {
            let (a, b) = self.edges[e].ends;
            if a == t {
                b
            } else {
                a
            }
        };
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || m1[start] == m2[start] {
                continue;
            }
            let mut steps = Vec::new();
            let mut t = start;
            loop {
                seen[t] = true;
                let e = m1[t];
                let u = other(e, t);
                seen[u] = true;
                steps.push(Step { edge: e, from: t, to: u });
                let f = m2[u];
                let w = other(f, u);
                steps.push(Step { edge: f, from: u, to: w });
                t = w;
                if t == start {
                    break;
                }
            }
            out.push(FaceCycle { steps });
        }
        Ok(out)
    }

    /// Cycles for every face of `G` lying inside the polygon, each traversed
    /// counterclockwise and lifted through the complete graphs.
    pub fn inside_face_cycles(&self) -> Vec<FaceCycle> {
        self.drawing
            .inside
            .iter()
            .flatten()
            .map(|&f| self.lift_face(f))
            .collect()
    }

    fn lift_face(&self, f: usize) -> FaceCycle {
        let steps = self.drawing.face_steps(f);
        let n = steps.len();
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            let s = steps[i];
            let (a, b) = (self.terminal(s.from), self.terminal(s.to));
            out.push(Step { edge: s.edge, from: a, to: b });
            let c = self.terminal(steps[(i + 1) % n].from);
            if b != c {
                out.push(Step {
                    edge: self.short_between(b, c),
                    from: b,
                    to: c,
                });
            }
        }
        FaceCycle { steps: out }
    }

    /// Inside faces on the two sides of inside edge `e`, as indices into
    /// [`TerminalGraph::inside_face_cycles`]: the face left of `u → v`, then
    /// the face left of `v → u`.
    pub fn inside_faces_of_edge(&self, e: usize) -> (Option<usize>, Option<usize>) {
        let edge = &self.graph.edges[e];
        let side = |h: HalfEdgeId| {
            let d = self.drawing.dart_of_he[&h];
            self.inside_index.get(&self.drawing.face_of[d]).copied()
        };
        (side(edge.u), side(edge.v))
    }

    pub fn outside_edges(&self) -> Vec<usize> {
        (0..self.num_long())
            .filter(|&e| self.graph.edges[e].is_outside())
            .collect()
    }

    /// Cycle of outside edge `e`: `e` drawn as an arc outside the polygon
    /// over the boundary interval between its two slots that avoids the
    /// start of the side word, followed by the outer boundary of the inside
    /// drawing back along that interval. Other outside edges are ignored,
    /// so their terminals are passed through along consecutive labels.
    pub fn outside_face_cycle(&self, e: usize) -> Result<FaceCycle> {
        let edge = self.graph.edges.get(e).ok_or(Error::UnknownEdge(e))?;
        let [c] = edge.crossings.as_slice() else {
            return Err(Error::NotOutsideEdge(e));
        };
        let (h_lo, h_hi) = if c.exit < c.entry {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        };
        let mut steps = vec![Step {
            edge: e,
            from: self.terminal(h_lo),
            to: self.terminal(h_hi),
        }];
        let limit = 4 * self.num_terminals() + 8;
        let mut cur = h_hi;
        for iter in 0.. {
            if iter > limit {
                return Err(Error::FaceWalk(format!("outside face of edge {e}")));
            }
            let (v, p) = self.index.he_vertex[&cur];
            let rot = &self.graph.vertices[v].rotation;
            let next = rot[(p + 1) % rot.len()];
            let (a, b) = (self.terminal(cur), self.terminal(next));
            if a != b {
                steps.push(Step {
                    edge: self.short_between(a, b),
                    from: a,
                    to: b,
                });
            }
            if next == h_lo {
                break;
            }
            let (f, _) = self.index.he_edge[&next];
            let other = &self.graph.edges[f];
            if other.is_outside() {
                cur = next;
            } else {
                let twin = if other.u == next { other.v } else { other.u };
                steps.push(Step {
                    edge: f,
                    from: self.terminal(next),
                    to: self.terminal(twin),
                });
                cur = twin;
            }
        }
        Ok(FaceCycle { steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{Crossing, Edge, Vertex};

    fn torus_1x1() -> EmbeddedGraph {
        EmbeddedGraph {
            signature: SurfaceSignature::torus(),
            vertices: vec![Vertex {
                id: 0,
                rotation: vec![0, 1, 2, 3],
            }],
            edges: vec![
                Edge::new(0, 3, 1, Weight::symbol("x"), vec![Crossing { exit: 1, entry: 3 }]),
                Edge::new(1, 2, 0, Weight::symbol("y"), vec![Crossing { exit: 2, entry: 0 }]),
            ],
            perimeter: vec![vec![0], vec![1], vec![2], vec![3]],
        }
    }

    fn path(n_edges: usize) -> EmbeddedGraph {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut he = 0;
        for v in 0..=n_edges {
            let mut rot = Vec::new();
            if v > 0 {
                rot.push(2 * (v as u32 - 1) + 1);
            }
            if v < n_edges {
                rot.push(2 * v as u32);
            }
            vertices.push(Vertex { id: v, rotation: rot });
        }
        for i in 0..n_edges {
            edges.push(Edge::new(i, he, he + 1, Weight::symbol("x"), vec![]));
            he += 2;
        }
        EmbeddedGraph {
            signature: SurfaceSignature::sphere(),
            vertices,
            edges,
            perimeter: vec![],
        }
    }

    fn triangle() -> EmbeddedGraph {
        // Vertices 0, 1, 2 counterclockwise; each rotation lists the two
        // half-edges clockwise.
        EmbeddedGraph {
            signature: SurfaceSignature::sphere(),
            vertices: vec![
                Vertex { id: 0, rotation: vec![0, 5] },
                Vertex { id: 1, rotation: vec![2, 1] },
                Vertex { id: 2, rotation: vec![4, 3] },
            ],
            edges: vec![
                Edge::new(0, 0, 1, Weight::symbol("x"), vec![]),
                Edge::new(1, 2, 3, Weight::symbol("x"), vec![]),
                Edge::new(2, 4, 5, Weight::symbol("x"), vec![]),
            ],
            perimeter: vec![],
        }
    }

    #[test]
    fn torus_terminal_counts() {
        let t = build_terminal(&torus_1x1()).unwrap();
        assert_eq!(t.num_terminals(), 4);
        assert_eq!(t.num_short(), 6);
        assert_eq!(t.num_long(), 2);
        assert!(t.is_perfect_matching(&t.standard_dimer()));
        // y loop joins labels 1 (S) and 3 (N), x loop joins 2 (W) and 4 (E).
        assert_eq!(t.edges[1].ends, (2, 0));
        assert_eq!(t.edges[0].ends, (3, 1));
    }

    #[test]
    fn small_path_counts() {
        let t = build_terminal(&path(1)).unwrap();
        assert_eq!((t.num_terminals(), t.num_long(), t.num_short()), (2, 1, 0));
        let t = build_terminal(&path(2)).unwrap();
        assert_eq!((t.num_terminals(), t.num_long(), t.num_short()), (4, 2, 1));
    }

    #[test]
    fn isolated_vertex_rejected() {
        let mut g = path(1);
        g.vertices.push(Vertex { id: 2, rotation: vec![] });
        assert!(matches!(build_terminal(&g), Err(Error::IsolatedVertex(2))));
    }

    #[test]
    fn unnormalized_rejected() {
        let g = EmbeddedGraph {
            signature: SurfaceSignature::torus(),
            vertices: vec![Vertex { id: 0, rotation: vec![0, 1] }],
            edges: vec![Edge::new(
                0,
                0,
                1,
                Weight::symbol("x"),
                vec![Crossing { exit: 0, entry: 2 }, Crossing { exit: 1, entry: 3 }],
            )],
            perimeter: vec![vec![0], vec![1], vec![2], vec![3]],
        };
        assert!(matches!(build_terminal(&g), Err(Error::NotNormalized(0))));
        assert!(build_terminal(&g.normalize()).is_ok());
    }

    #[test]
    fn chord_cross_examples() {
        assert!(chords_interleave(1, 3, 2, 4));
        assert!(!chords_interleave(1, 2, 3, 4));
        assert!(!chords_interleave(1, 4, 2, 3));
        let t = build_terminal(&torus_1x1()).unwrap();
        let s13 = t.short_edge(0, 1, 3);
        let s24 = t.short_edge(0, 2, 4);
        let s12 = t.short_edge(0, 1, 2);
        let s34 = t.short_edge(0, 3, 4);
        assert!(t.chord_cross(s13, s24));
        assert!(!t.chord_cross(s12, s34));
        assert!(!t.chord_cross(0, s12));
    }

    #[test]
    fn short_edge_indexing_is_consistent() {
        let t = build_terminal(&torus_1x1()).unwrap();
        for (i, e) in t.edges.iter().enumerate() {
            if let TEdgeKind::Short { vertex, lo, hi } = e.kind {
                assert_eq!(t.short_edge(vertex, lo, hi), i);
                assert_eq!(t.short_edge(vertex, hi, lo), i);
            }
        }
    }

    #[test]
    fn t_out_of_standard_dimer_on_torus() {
        let t = build_terminal(&torus_1x1()).unwrap();
        let d0 = t.standard_dimer();
        assert!(t.t_out_parity(&d0).unwrap());
        assert!(!t.t_in_parity(&d0).unwrap());
        assert!(t.t_out_parity(&[0]).is_err());
    }

    #[test]
    fn t_in_counts_interleaved_shorts() {
        let t = build_terminal(&torus_1x1()).unwrap();
        let d = [t.short_edge(0, 1, 3), t.short_edge(0, 2, 4)];
        assert!(t.t_in_parity(&d).unwrap());
        let d = [t.short_edge(0, 1, 2), t.short_edge(0, 3, 4)];
        assert!(!t.t_in_parity(&d).unwrap());
    }

    #[test]
    fn self_crossing_of_diagonal_edge() {
        let g = EmbeddedGraph {
            signature: SurfaceSignature::torus(),
            vertices: vec![Vertex { id: 0, rotation: vec![0, 1] }],
            edges: vec![Edge::new(
                0,
                0,
                1,
                Weight::symbol("x"),
                vec![Crossing { exit: 0, entry: 2 }, Crossing { exit: 1, entry: 3 }],
            )],
            perimeter: vec![vec![0], vec![1], vec![2], vec![3]],
        };
        let idx = g.check().unwrap();
        let seq = g.crossing_sequence(&idx, 0).unwrap();
        let j = g.signature.intersection_form();
        assert_eq!(seq, vec![0, 1]);
        assert_eq!(j.entry(seq[0], seq[1]), 1);
    }

    #[test]
    fn torus_has_no_inside_faces() {
        let t = build_terminal(&torus_1x1()).unwrap();
        assert!(t.inside_face_cycles().is_empty());
    }

    #[test]
    fn triangle_inner_face_has_length_six() {
        let t = build_terminal(&triangle()).unwrap();
        let faces = t.inside_face_cycles();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 6);
        assert!(faces[0].is_closed());
    }

    #[test]
    fn torus_outside_faces() {
        let t = build_terminal(&torus_1x1()).unwrap();
        // x loop: the long step goes from the lower slot's terminal to the
        // other end, then short steps rotate back to where it started.
        let fx = t.outside_face_cycle(0).unwrap();
        assert!(fx.is_closed());
        assert_eq!(fx.steps[0], Step { edge: 0, from: 3, to: 1 });
        let terms: Vec<usize> = fx.steps.iter().map(|s| s.to).collect();
        assert_eq!(terms, vec![1, 2, 3]);
        let fy = t.outside_face_cycle(1).unwrap();
        assert!(fy.is_closed());
        assert_eq!(fy.steps[0], Step { edge: 1, from: 0, to: 2 });
        let terms: Vec<usize> = fy.steps.iter().map(|s| s.to).collect();
        assert_eq!(terms, vec![2, 3, 0]);
        assert!(matches!(t.outside_face_cycle(7), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn outside_face_rejects_inside_edge() {
        let t = build_terminal(&path(1)).unwrap();
        assert!(matches!(t.outside_face_cycle(0), Err(Error::NotOutsideEdge(0))));
    }

    #[test]
    fn alternating_cycles_of_torus_matchings() {
        let t = build_terminal(&torus_1x1()).unwrap();
        let d0 = t.standard_dimer();
        let d = [t.short_edge(0, 1, 2), t.short_edge(0, 3, 4)];
        let cycles = t.alternating_cycles(&d, &d0).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
        assert!(cycles[0].is_closed());
        assert!(t.alternating_cycles(&d0, &d0).unwrap().is_empty());
    }

    #[test]
    fn dimer_sign_lemma() {
        // Σ over perfect matchings of K_{2n} of (−1)^{t_in} = 1.
        fn matchings(rest: Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            let a = rest[0];
            for k in 1..rest.len() {
                let b = rest[k];
                let r: Vec<usize> = rest.iter().copied().filter(|&x| x != a && x != b).collect();
                acc.push((a, b));
                matchings(r, acc, out);
                acc.pop();
            }
        }
        for n in 1..=5 {
            let mut all = Vec::new();
            matchings((1..=2 * n).collect(), &mut Vec::new(), &mut all);
            let expected: usize = (1..=n).map(|k| 2 * k - 1).product();
            assert_eq!(all.len(), expected);
            let mut sum = 0i64;
            for m in &all {
                let mut t = false;
                for i in 0..m.len() {
                    for j in i + 1..m.len() {
                        t ^= chords_interleave(m[i].0, m[i].1, m[j].0, m[j].1);
                    }
                }
                sum += if t { -1 } else { 1 };
            }
            assert_eq!(sum, 1, "K_{}", 2 * n);
        }
    }
}
