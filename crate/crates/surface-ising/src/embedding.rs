//! Weighted graphs drawn in the fundamental polygon of a surface.
//!
//! Rotations list half-edge ids clockwise around each vertex. Every side of the
//! polygon carries an ordered list of crossing slots; slot ids are global
//! integers increasing along the side word, so they also give the cyclic order
//! of slots around the polygon boundary. An edge records the sides it crosses
//! as `(exit, entry)` slot pairs, listed from its `u` end to its `v` end.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::homology::{SurfaceSignature, Z2Vector};

pub type HalfEdgeId = u32;
pub type SlotId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Rational(BigRational),
    Symbol(String),
}

impl Weight {
    pub fn one() -> Self {
        Weight::Rational(BigRational::one())
    }

    pub fn symbol(s: &str) -> Self {
        Weight::Symbol(s.to_string())
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Weight::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::BadWeight(s.to_string());
        let mut chars = t.chars();
        match chars.next() {
            None => Err(bad()),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                if chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    Ok(Weight::Symbol(t.to_string()))
                } else {
                    Err(bad())
                }
            }
            Some(_) => parse_rational(t).map(Weight::Rational).ok_or_else(bad),
        }
    }
}

/// Parses `p/q`, an integer, or a finite decimal exactly.
pub fn parse_rational(t: &str) -> Option<BigRational> {
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).ok()?;
        let mag = int.abs() * &scale + f;
        let num = if neg { -mag } else { mag };
        return Some(BigRational::new(num, scale));
    }
    BigInt::from_str(t).ok().map(BigRational::from_integer)
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Symbol(s) => write!(f, "{s}"),
            Weight::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Weight::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => {
                return Err(serde::de::Error::custom(format!(
                    "weight must be a string or number, got {other}"
                )))
            }
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub exit: SlotId,
    pub entry: SlotId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub rotation: Vec<HalfEdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub u: HalfEdgeId,
    pub v: HalfEdgeId,
    pub weight: Weight,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub crossings: Vec<Crossing>,
    /// Zero-weight edge added by [`EmbeddedGraph::normalize`] to connect the
    /// inside drawing; it never changes the partition function.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub auxiliary: bool,
}

impl Edge {
    pub fn new(id: usize, u: HalfEdgeId, v: HalfEdgeId, weight: Weight, crossings: Vec<Crossing>) -> Self {
        Edge {
            id,
            u,
            v,
            weight,
            crossings,
            auxiliary: false,
        }
    }

    pub fn is_outside(&self) -> bool {
        !self.crossings.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedGraph {
    #[serde(rename = "surface")]
    pub signature: SurfaceSignature,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub perimeter: Vec<Vec<SlotId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdMismatch { item: &'static str, index: usize, id: usize },
    DuplicateHalfEdge { half_edge: HalfEdgeId },
    MissingHalfEdge { edge: usize, half_edge: HalfEdgeId },
    OrphanHalfEdge { vertex: usize, half_edge: HalfEdgeId },
    PerimeterLength { expected: usize, found: usize },
    SlotPairingMismatch { pair: usize, first: usize, second: usize },
    DuplicateSlot { slot: SlotId },
    SlotOrder { occurrence: usize },
    UnknownSlot { edge: usize, slot: SlotId },
    WrongPartner { edge: usize, exit: SlotId, entry: SlotId, expected: SlotId },
    SlotReused { slot: SlotId },
    SlotUnused { slot: SlotId },
    NonPositiveWeight { edge: usize },
    NotPlanar { component: usize, euler: i64 },
    AuxiliaryWeight { edge: usize },
    InterleavedComponents { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            IdMismatch { item, index, id } => {
                write!(f, "{item} at position {index} has id {id}")
            }
            DuplicateHalfEdge { half_edge } => write!(f, "half-edge {half_edge} appears twice"),
            MissingHalfEdge { edge, half_edge } => {
                write!(f, "edge {edge} uses half-edge {half_edge}, which is in no rotation")
            }
            OrphanHalfEdge { vertex, half_edge } => {
                write!(f, "half-edge {half_edge} at vertex {vertex} belongs to no edge")
            }
            PerimeterLength { expected, found } => {
                write!(f, "perimeter lists {found} sides, the word has {expected}")
            }
            SlotPairingMismatch { pair, first, second } => write!(
                f,
                "side pair {pair} has {first} and {second} slots on its two occurrences"
            ),
            DuplicateSlot { slot } => write!(f, "slot {slot} listed twice on the perimeter"),
            SlotOrder { occurrence } => {
                write!(f, "slot ids do not increase along side occurrence {occurrence}")
            }
            UnknownSlot { edge, slot } => write!(f, "edge {edge} uses unknown slot {slot}"),
            WrongPartner {
                edge,
                exit,
                entry,
                expected,
            } => write!(
                f,
                "edge {edge} leaves through slot {exit} and enters at {entry}, expected {expected}"
            ),
            SlotReused { slot } => write!(f, "slot {slot} is used by more than one crossing"),
            SlotUnused { slot } => write!(f, "slot {slot} is not used by any crossing"),
            NonPositiveWeight { edge } => write!(f, "edge {edge} has a non-positive weight"),
            NotPlanar { component, euler } => write!(
                f,
                "inside drawing of component {component} is not planar (Euler characteristic {euler})"
            ),
            AuxiliaryWeight { edge } => write!(f, "auxiliary edge {edge} must have weight 0"),
            InterleavedComponents { first, second } => write!(
                f,
                "components {first} and {second} reach the boundary in interleaved positions"
            ),
        }
    }
}

/// Lookup tables derived from a structurally sound graph.
#[derive(Clone, Debug)]
pub struct GraphIndex {
    /// half-edge → (vertex, position in rotation)
    pub he_vertex: HashMap<HalfEdgeId, (usize, usize)>,
    /// half-edge → (edge, 0 for `u` / 1 for `v`)
    pub he_edge: HashMap<HalfEdgeId, (usize, usize)>,
    /// slot → (side occurrence, position along it)
    pub slot_pos: HashMap<SlotId, (usize, usize)>,
}

impl GraphIndex {
    pub fn vertex_of(&self, h: HalfEdgeId) -> usize {
        self.he_vertex[&h].0
    }

    pub fn label_of(&self, h: HalfEdgeId) -> usize {
        self.he_vertex[&h].1
    }
}

impl EmbeddedGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a leading `"schema": 1`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Versioned<'a> {
            schema: u32,
            #[serde(flatten)]
            graph: &'a EmbeddedGraph,
        }
        serde_json::to_string_pretty(&Versioned { schema: 1, graph: self }).expect("graph serializes")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].rotation.len()
    }

    /// Identified side pair of each slot's occurrence.
    fn occurrence_pair(&self, k: usize) -> usize {
        self.signature.side_word()[k].pair
    }

    /// Builds the lookup tables, reporting structural violations.
    pub fn index(&self) -> std::result::Result<GraphIndex, Vec<Violation>> {
        let mut v = Vec::new();
        let mut he_vertex = HashMap::new();
        for (i, vert) in self.vertices.iter().enumerate() {
            if vert.id != i {
                v.push(Violation::IdMismatch {
                    item: "vertex",
                    index: i,
                    id: vert.id,
                });
            }
            for (p, &h) in vert.rotation.iter().enumerate() {
                if he_vertex.insert(h, (i, p)).is_some() {
                    v.push(Violation::DuplicateHalfEdge { half_edge: h });
                }
            }
        }
        let mut he_edge = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.id != i {
                v.push(Violation::IdMismatch {
                    item: "edge",
                    index: i,
                    id: e.id,
                });
            }
            for (end, h) in [(0, e.u), (1, e.v)] {
                if !he_vertex.contains_key(&h) {
                    v.push(Violation::MissingHalfEdge { edge: i, half_edge: h });
                }
                if he_edge.insert(h, (i, end)).is_some() {
                    v.push(Violation::DuplicateHalfEdge { half_edge: h });
                }
            }
        }
        for (i, vert) in self.vertices.iter().enumerate() {
            for &h in &vert.rotation {
                if !he_edge.contains_key(&h) {
                    v.push(Violation::OrphanHalfEdge { vertex: i, half_edge: h });
                }
            }
        }
        let word = self.signature.side_word();
        let mut slot_pos = HashMap::new();
        if self.perimeter.len() != word.len() {
            v.push(Violation::PerimeterLength {
                expected: word.len(),
                found: self.perimeter.len(),
            });
        } else {
            let mut last: Option<SlotId> = None;
            for (k, side) in self.perimeter.iter().enumerate() {
                for (p, &s) in side.iter().enumerate() {
                    if slot_pos.insert(s, (k, p)).is_some() {
                        v.push(Violation::DuplicateSlot { slot: s });
                    }
                    if last.is_some_and(|l| s <= l) {
                        v.push(Violation::SlotOrder { occurrence: k });
                    }
                    last = Some(s);
                }
            }
            for (pair, [p, q]) in self.signature.pair_positions().into_iter().enumerate() {
                let (a, b) = (self.perimeter[p].len(), self.perimeter[q].len());
                if a != b {
                    v.push(Violation::SlotPairingMismatch {
                        pair,
                        first: a,
                        second: b,
                    });
                }
            }
        }
        if v.is_empty() {
            Ok(GraphIndex {
                he_vertex,
                he_edge,
                slot_pos,
            })
        } else {
            v.dedup();
            Err(v)
        }
    }

    /// The slot glued to `s` on the other occurrence of its side pair.
    pub fn partner(&self, idx: &GraphIndex, s: SlotId) -> Option<SlotId> {
        let &(k, p) = idx.slot_pos.get(&s)?;
        let pair = self.occurrence_pair(k);
        let [k0, k1] = self.signature.pair_positions()[pair];
        let other = if k == k0 { k1 } else { k0 };
        let n = self.perimeter[other].len();
        let q = if self.signature.is_twisted(pair) { p } else { n.checked_sub(p + 1)? };
        self.perimeter[other].get(q).copied()
    }

    /// Side pair crossed at slot `s`.
    pub fn slot_pair(&self, idx: &GraphIndex, s: SlotId) -> usize {
        self.occurrence_pair(idx.slot_pos[&s].0)
    }

    fn crossing_violations(&self, idx: &GraphIndex) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut used: BTreeMap<SlotId, usize> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for c in &e.crossings {
                let mut ok = true;
                for s in [c.exit, c.entry] {
                    if !idx.slot_pos.contains_key(&s) {
                        v.push(Violation::UnknownSlot { edge: i, slot: s });
                        ok = false;
                    }
                    *used.entry(s).or_default() += 1;
                }
                if ok {
                    let expected = self.partner(idx, c.exit).expect("known slot has a partner");
                    if expected != c.entry {
                        v.push(Violation::WrongPartner {
                            edge: i,
                            exit: c.exit,
                            entry: c.entry,
                            expected,
                        });
                    }
                }
            }
        }
        for (&s, &n) in &used {
            if n > 1 {
                v.push(Violation::SlotReused { slot: s });
            }
        }
        for side in &self.perimeter {
            for s in side {
                if !used.contains_key(s) {
                    v.push(Violation::SlotUnused { slot: *s });
                }
            }
        }
        v
    }

    /// Every violated invariant; empty iff the graph is a valid drawing.
    pub fn validate(&self) -> Vec<Violation> {
        let idx = match self.index() {
            Ok(i) => i,
            Err(v) => return v,
        };
        let mut v = self.crossing_violations(&idx);
        for (i, e) in self.edges.iter().enumerate() {
            match (&e.weight, e.auxiliary) {
                (Weight::Rational(r), true) if r.is_zero() => {}
                (_, true) => v.push(Violation::AuxiliaryWeight { edge: i }),
                (Weight::Rational(r), false) if !r.is_positive() => {
                    v.push(Violation::NonPositiveWeight { edge: i })
                }
                _ => {}
            }
        }
        if !v.is_empty() {
            return v;
        }
        v.extend(Drawing::build(self, &idx).violations());
        v
    }

    pub fn check(&self) -> Result<GraphIndex> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self.index().expect("validated"))
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Every edge crosses at most one side and the inside drawing of each
    /// component is connected.
    pub fn is_normalized(&self) -> bool {
        if !self.edges.iter().all(|e| e.crossings.len() <= 1) {
            return false;
        }
        match self.index() {
            Ok(idx) => Drawing::build(self, &idx).is_connected_inside(),
            Err(_) => false,
        }
    }

    fn next_half_edge(&self) -> HalfEdgeId {
        self.edges
            .iter()
            .flat_map(|e| [e.u, e.v])
            .chain(self.vertices.iter().flat_map(|v| v.rotation.iter().copied()))
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Brings a valid graph into the form the Pfaffian machinery needs.
    ///
    /// Every edge crossing k ≥ 2 sides is subdivided into k single-crossing
    /// edges joined at new degree-2 vertices; the first piece keeps the weight,
    /// the others get weight 1. Then, while some component's inside drawing
    /// is disconnected, a weight-0 auxiliary edge is drawn across a face that
    /// touches the boundary in two arcs. Neither step changes `Z_I`.
    pub fn normalize(&self) -> EmbeddedGraph {
        let mut g = self.subdivide();
        loop {
            let Ok(idx) = g.index() else { return g };
            let d = Drawing::build(&g, &idx);
            let Some(&f) = d.split_faces.first() else {
                return g;
            };
            let (a_out, b_in) = d.split_corner(f);
            let x = g.next_half_edge();
            let y = x + 1;
            let (a, pa) = idx.he_vertex[&a_out];
            let (b, pb) = idx.he_vertex[&b_in];
            g.vertices[a].rotation.insert(pa, x);
            g.vertices[b].rotation.insert(pb + 1, y);
            g.edges.push(Edge {
                id: g.edges.len(),
                u: x,
                v: y,
                weight: Weight::Rational(BigRational::zero()),
                crossings: Vec::new(),
                auxiliary: true,
            });
        }
    }

    fn subdivide(&self) -> EmbeddedGraph {
        let mut g = self.clone();
        let mut next_he = self.next_half_edge();
        for i in 0..self.edges.len() {
            let e = &self.edges[i];
            let k = e.crossings.len();
            if k < 2 {
                continue;
            }
            let mut tail = e.u;
            for j in 0..k {
                let head = if j + 1 == k {
                    e.v
                } else {
                    let h = next_he;
                    next_he += 1;
                    h
                };
                let piece = Edge {
                    id: if j == 0 { i } else { g.edges.len() },
                    u: tail,
                    v: head,
                    weight: if j == 0 { e.weight.clone() } else { Weight::one() },
                    crossings: vec![e.crossings[j]],
                    auxiliary: e.auxiliary,
                };
                if j == 0 {
                    g.edges[i] = piece;
                } else {
                    g.edges.push(piece);
                }
                if j + 1 < k {
                    let out = next_he;
                    next_he += 1;
                    g.vertices.push(Vertex {
                        id: g.vertices.len(),
                        rotation: vec![head, out],
                    });
                    tail = out;
                }
            }
        }
        g
    }

    /// Crossing tally mod 2 per side pair.
    pub fn crossing_vector(&self, idx: &GraphIndex, e: usize) -> Result<Z2Vector> {
        let edge = self.edges.get(e).ok_or(Error::UnknownEdge(e))?;
        let mut x = Z2Vector::zero(self.signature.b1());
        for c in &edge.crossings {
            x.flip(self.slot_pair(idx, c.exit));
        }
        Ok(x)
    }

    /// Side pairs crossed by `e`, in order from `u` to `v`.
    pub fn crossing_sequence(&self, idx: &GraphIndex, e: usize) -> Result<Vec<usize>> {
        let edge = self.edges.get(e).ok_or(Error::UnknownEdge(e))?;
        Ok(edge
            .crossings
            .iter()
            .map(|c| self.slot_pair(idx, c.exit))
            .collect())
    }

    /// Parity of crossings with the orientation-reversing side pairs.
    pub fn omega_edge(&self, idx: &GraphIndex, e: usize) -> Result<bool> {
        let x = self.crossing_vector(idx, e)?;
        Ok(self.signature.omega().eval(&x))
    }

    /// Vertex sets of connected components, each sorted, ordered by smallest vertex.
    pub fn component_vertices(&self, idx: &GraphIndex) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, idx.vertex_of(e.u));
            let b = find(&mut parent, idx.vertex_of(e.v));
            parent[a.max(b)] = a.min(b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Connected components with at least one edge, as standalone graphs
    /// (vertices and edges renumbered in order, perimeter restricted to the
    /// component's slots), plus the number of isolated vertices dropped.
    pub fn split_components(&self) -> Result<(Vec<EmbeddedGraph>, usize)> {
        let idx = self.check()?;
        let mut out = Vec::new();
        let mut isolated = 0;
        for comp in self.component_vertices(&idx) {
            let vset: BTreeSet<usize> = comp.iter().copied().collect();
            let edges: Vec<&Edge> = self
                .edges
                .iter()
                .filter(|e| vset.contains(&idx.vertex_of(e.u)))
                .collect();
            if edges.is_empty() {
                isolated += comp.len();
                continue;
            }
            let slots: BTreeSet<SlotId> = edges
                .iter()
                .flat_map(|e| e.crossings.iter().flat_map(|c| [c.exit, c.entry]))
                .collect();
            let g = EmbeddedGraph {
                signature: self.signature,
                vertices: comp
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Vertex {
                        id: i,
                        rotation: self.vertices[v].rotation.clone(),
                    })
                    .collect(),
                edges: edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| Edge { id: i, ..(*e).clone() })
                    .collect(),
                perimeter: self
                    .perimeter
                    .iter()
                    .map(|side| side.iter().copied().filter(|s| slots.contains(s)).collect())
                    .collect(),
            };
            out.push(g);
        }
        Ok((out, isolated))
    }

    /// Distinct weights in sorted order.
    pub fn weight_classes(&self) -> Vec<Weight> {
        let set: BTreeSet<&Weight> = self.edges.iter().map(|e| &e.weight).collect();
        set.into_iter().cloned().collect()
    }

    /// Distinct symbol names in sorted order.
    pub fn symbols(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .edges
            .iter()
            .filter_map(|e| match &e.weight {
                Weight::Symbol(s) => Some(s.as_str()),
                Weight::Rational(_) => None,
            })
            .collect();
        set.into_iter().map(String::from).collect()
    }

    /// Dimension of the cycle space, `|E| − |V| + #components`.
    pub fn cycle_rank(&self) -> Result<usize> {
        let idx = self.index().map_err(Error::Invalid)?;
        let c = self.component_vertices(&idx).len();
        Ok(self.edges.len() + c - self.vertices.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{SurfaceKind, SurfaceSignature};

    /// One vertex on the torus with a horizontal loop (weight x, through the
    /// right/left sides b) and a vertical loop (weight y, through top/bottom a).
    fn torus_1x1() -> EmbeddedGraph {
        // Word a b a⁻¹ b⁻¹ = bottom, right, top, left. Rotation S, W, N, E.
        // Half-edges: 0 = S, 1 = W, 2 = N, 3 = E.
        EmbeddedGraph {
            signature: SurfaceSignature::torus(),
            vertices: vec![Vertex {
                id: 0,
                rotation: vec![0, 1, 2, 3],
            }],
            edges: vec![
                Edge {
                    id: 0,
                    u: 3,
                    v: 1,
                    weight: Weight::symbol("x"),
                    crossings: vec![Crossing { exit: 1, entry: 3 }],
                    auxiliary: false,
                },
                Edge {
                    id: 1,
                    u: 2,
                    v: 0,
                    weight: Weight::symbol("y"),
                    crossings: vec![Crossing { exit: 2, entry: 0 }],
                    auxiliary: false,
                },
            ],
            perimeter: vec![vec![0], vec![1], vec![2], vec![3]],
        }
    }

    /// A single loop leaving through the bottom, re-entering at the top,
    /// running inside to the right side, and returning through the left.
    fn torus_diagonal_loop() -> EmbeddedGraph {
        EmbeddedGraph {
            signature: SurfaceSignature::torus(),
            vertices: vec![Vertex {
                id: 0,
                rotation: vec![0, 1],
            }],
            edges: vec![Edge {
                id: 0,
                u: 0,
                v: 1,
                weight: Weight::symbol("x"),
                crossings: vec![
                    Crossing { exit: 0, entry: 2 },
                    Crossing { exit: 1, entry: 3 },
                ],
                auxiliary: false,
            }],
            perimeter: vec![vec![0], vec![1], vec![2], vec![3]],
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("x".parse::<Weight>().unwrap(), Weight::symbol("x"));
        assert_eq!("3/6".parse::<Weight>().unwrap(), Weight::rational(1, 2));
        assert_eq!("0.25".parse::<Weight>().unwrap(), Weight::rational(1, 4));
        assert_eq!("2".parse::<Weight>().unwrap(), Weight::rational(2, 1));
        assert!("1/0".parse::<Weight>().is_err());
        assert!("x-y".parse::<Weight>().is_err());
        assert_eq!(Weight::rational(3, 4).to_string(), "3/4");
    }

    #[test]
    fn json_roundtrip() {
        let g = torus_1x1();
        let text = g.to_json();
        assert_eq!(EmbeddedGraph::from_json(&text).unwrap(), g);
        let err = EmbeddedGraph::from_json("{\"surface\": 3}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn valid_torus() {
        assert_eq!(torus_1x1().validate(), vec![]);
        assert_eq!(torus_diagonal_loop().validate(), vec![]);
    }

    #[test]
    fn missing_half_edge_detected() {
        let mut g = torus_1x1();
        g.vertices[0].rotation.retain(|&h| h != 2);
        assert_eq!(
            g.validate(),
            vec![Violation::MissingHalfEdge { edge: 1, half_edge: 2 }]
        );
    }

    #[test]
    fn slot_count_mismatch_detected() {
        let mut g = torus_1x1();
        g.perimeter[0].push(9);
        let v = g.validate();
        assert!(v.contains(&Violation::SlotPairingMismatch {
            pair: 0,
            first: 2,
            second: 1
        }));
    }

    #[test]
    fn wrong_partner_detected() {
        let mut g = torus_1x1();
        g.edges[0].crossings[0].entry = 0;
        g.edges[1].crossings[0].entry = 3;
        let v = g.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::WrongPartner { edge: 0, .. })));
    }

    #[test]
    fn nonplanar_rotation_detected() {
        // Swapping W and N makes the two loops cross inside the polygon.
        let mut g = torus_1x1();
        g.vertices[0].rotation = vec![0, 2, 1, 3];
        let v = g.validate();
        assert_eq!(v, vec![Violation::NotPlanar { component: 0, euler: 0 }]);
    }

    #[test]
    fn nonpositive_weight_detected() {
        let mut g = torus_1x1();
        g.edges[0].weight = Weight::rational(0, 1);
        assert_eq!(g.validate(), vec![Violation::NonPositiveWeight { edge: 0 }]);
    }

    #[test]
    fn crossing_vectors_and_omega() {
        let g = torus_1x1();
        let idx = g.check().unwrap();
        assert_eq!(g.crossing_vector(&idx, 1).unwrap().to_vec(), vec![1, 0]);
        assert_eq!(g.crossing_vector(&idx, 0).unwrap().to_vec(), vec![0, 1]);
        assert!(!g.omega_edge(&idx, 0).unwrap());
        assert!(matches!(g.crossing_vector(&idx, 5), Err(Error::UnknownEdge(5))));

        let mut k = torus_1x1();
        k.signature = SurfaceSignature::klein();
        // a b a⁻¹ b: the right and left sides are glued without inversion.
        let idx = k.check().unwrap();
        assert!(k.omega_edge(&idx, 0).unwrap());
        assert!(!k.omega_edge(&idx, 1).unwrap());
    }

    #[test]
    fn normalize_splits_multi_crossing_edges() {
        let g = torus_diagonal_loop();
        assert!(!g.is_normalized());
        let n = g.normalize();
        assert_eq!(n.validate(), vec![]);
        assert!(n.is_normalized());
        let real: Vec<&Edge> = n.edges.iter().filter(|e| !e.auxiliary).collect();
        assert_eq!(real.len(), 2);
        assert_eq!(n.vertices.len(), 2);
        assert_eq!(real[0].weight, Weight::symbol("x"));
        assert_eq!(real[1].weight, Weight::one());
        let idx = n.check().unwrap();
        assert_eq!(n.crossing_vector(&idx, 0).unwrap().to_vec(), vec![1, 0]);
        assert_eq!(n.crossing_vector(&idx, 1).unwrap().to_vec(), vec![0, 1]);
        // The subdivision vertex sits on a chord that touches nothing else
        // inside the polygon, so one auxiliary edge joins it to the rest.
        let aux: Vec<&Edge> = n.edges.iter().filter(|e| e.auxiliary).collect();
        assert_eq!(aux.len(), 1);
        assert_eq!(aux[0].weight, Weight::rational(0, 1));
        assert_eq!(n.normalize(), n);
        assert_eq!(torus_1x1().normalize(), torus_1x1());
    }

    #[test]
    fn auxiliary_edges_must_have_zero_weight() {
        let mut n = torus_diagonal_loop().normalize();
        let last = n.edges.len() - 1;
        n.edges[last].weight = Weight::one();
        assert_eq!(n.validate(), vec![Violation::AuxiliaryWeight { edge: last }]);
    }

    #[test]
    fn components_split_and_restrict_perimeter() {
        let mut g = torus_1x1();
        g.vertices.push(Vertex {
            id: 1,
            rotation: vec![10, 11],
        });
        g.vertices.push(Vertex {
            id: 2,
            rotation: vec![12],
        });
        g.vertices.push(Vertex {
            id: 3,
            rotation: vec![],
        });
        g.edges.push(Edge {
            id: 2,
            u: 10,
            v: 12,
            weight: Weight::symbol("z"),
            crossings: vec![],
            auxiliary: false,
        });
        g.edges.push(Edge {
            id: 3,
            u: 11,
            v: 11 + 100,
            weight: Weight::symbol("z"),
            crossings: vec![],
            auxiliary: false,
        });
        // Broken on purpose: half-edge 111 is in no rotation.
        assert!(!g.validate().is_empty());
        g.vertices[2].rotation.push(111);
        assert_eq!(g.validate(), vec![]);
        let (parts, isolated) = g.split_components().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(isolated, 1);
        assert_eq!(parts[1].perimeter, vec![Vec::<SlotId>::new(); 4]);
        assert_eq!(parts[1].edges.len(), 2);
        assert_eq!(g.cycle_rank().unwrap(), 2 + 1);
    }

    #[test]
    fn sphere_requires_empty_perimeter() {
        let g = EmbeddedGraph {
            signature: SurfaceSignature::new(SurfaceKind::Orientable, 0),
            vertices: vec![
                Vertex { id: 0, rotation: vec![0] },
                Vertex { id: 1, rotation: vec![1] },
            ],
            edges: vec![Edge {
                id: 0,
                u: 0,
                v: 1,
                weight: Weight::symbol("x"),
                crossings: vec![],
                auxiliary: false,
            }],
            perimeter: vec![],
        };
        assert_eq!(g.validate(), vec![]);
        let mut bad = g.clone();
        bad.perimeter = vec![vec![]];
        assert_eq!(
            bad.validate(),
            vec![Violation::PerimeterLength { expected: 0, found: 1 }]
        );
    }
}
