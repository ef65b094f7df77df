//! Planar map of the drawing inside the polygon.
//!
//! Each connected component of `G` is drawn in the disc with its own slots on
//! the boundary circle. Nodes are the vertices of `G` and the slots; edges are
//! the pieces of `G`-edges between vertices and slots, plus boundary arcs
//! joining cyclically consecutive slots. Faces are traced counterclockwise
//! with `φ(d) = σ(rev d)`, where `σ` is the clockwise rotation at a node.

use std::collections::{BTreeSet, HashMap};

use crate::embedding::{EmbeddedGraph, GraphIndex, HalfEdgeId, SlotId, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DartKind {
    /// Piece of edge `edge`; half-edges are set where the piece touches a vertex.
    Piece {
        edge: usize,
        from: Option<HalfEdgeId>,
        to: Option<HalfEdgeId>,
    },
    /// Boundary arc from a slot to the next slot counterclockwise.
    Next,
    /// Boundary arc from a slot to the previous slot.
    Prev,
}

#[derive(Clone, Debug)]
pub(crate) struct Dart {
    pub kind: DartKind,
    pub twin: usize,
}

/// One step of an inside face: edge `edge` traversed from half-edge `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct FaceStep {
    pub edge: usize,
    pub from: HalfEdgeId,
    pub to: HalfEdgeId,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Component {
    pub vertices: Vec<usize>,
    pub slots: Vec<SlotId>,
}

#[derive(Clone, Debug)]
pub(crate) struct Drawing {
    pub darts: Vec<Dart>,
    pub sigma: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    pub components: Vec<Component>,
    /// Face indices lying strictly inside the polygon, per component.
    pub inside: Vec<Vec<usize>>,
    /// Dart leaving a vertex through each half-edge.
    pub dart_of_he: HashMap<HalfEdgeId, usize>,
    /// Faces meeting the boundary circle in more than one arc, which happens
    /// exactly when the inside drawing of a component is disconnected.
    pub split_faces: Vec<usize>,
    violations: Vec<Violation>,
}

impl Drawing {
    pub fn build(g: &EmbeddedGraph, idx: &GraphIndex) -> Drawing {
        let mut d = Drawing {
            darts: Vec::new(),
            sigma: Vec::new(),
            faces: Vec::new(),
            face_of: Vec::new(),
            components: Vec::new(),
            inside: Vec::new(),
            dart_of_he: HashMap::new(),
            split_faces: Vec::new(),
            violations: Vec::new(),
        };
        let comps = g.component_vertices(idx);
        let mut comp_of_vertex = vec![0; g.vertices.len()];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of_vertex[v] = c;
            }
        }
        let mut comp_edges = vec![Vec::new(); comps.len()];
        for (i, e) in g.edges.iter().enumerate() {
            comp_edges[comp_of_vertex[idx.vertex_of(e.u)]].push(i);
        }
        for (c, vs) in comps.iter().enumerate() {
            let slots: BTreeSet<SlotId> = comp_edges[c]
                .iter()
                .flat_map(|&i| g.edges[i].crossings.iter().flat_map(|x| [x.exit, x.entry]))
                .collect();
            d.components.push(Component {
                vertices: vs.clone(),
                slots: slots.into_iter().collect(),
            });
            let inside = if comp_edges[c].is_empty() {
                Vec::new()
            } else {
                d.add_component(g, c, &comp_edges[c])
            };
            d.inside.push(inside);
        }
        d.check_laminar();
        d
    }

    fn push_edge(&mut self, a: DartKind, b: DartKind) -> (usize, usize) {
        let i = self.darts.len();
        self.darts.push(Dart { kind: a, twin: i + 1 });
        self.darts.push(Dart { kind: b, twin: i });
        (i, i + 1)
    }

    fn add_component(&mut self, g: &EmbeddedGraph, c: usize, edges: &[usize]) -> Vec<usize> {
        let first_dart = self.darts.len();
        let slots = self.components[c].slots.clone();
        // Dart leaving each slot along its piece.
        let mut slot_piece: HashMap<SlotId, usize> = HashMap::new();
        for &i in edges {
            let e = &g.edges[i];
            // Points along the edge: vertex(u), slot pairs..., vertex(v).
            let mut tail: (Option<HalfEdgeId>, Option<SlotId>) = (Some(e.u), None);
            let mut pieces = Vec::new();
            for x in &e.crossings {
                pieces.push((tail, (None, Some(x.exit))));
                tail = (None, Some(x.entry));
            }
            pieces.push((tail, (Some(e.v), None)));
            for ((fh, fs), (th, ts)) in pieces {
                let (fwd, bwd) = self.push_edge(
                    DartKind::Piece {
                        edge: i,
                        from: fh,
                        to: th,
                    },
                    DartKind::Piece {
                        edge: i,
                        from: th,
                        to: fh,
                    },
                );
                match (fh, fs) {
                    (Some(h), _) => {
                        self.dart_of_he.insert(h, fwd);
                    }
                    (None, Some(s)) => {
                        slot_piece.insert(s, fwd);
                    }
                    _ => unreachable!(),
                }
                match (th, ts) {
                    (Some(h), _) => {
                        self.dart_of_he.insert(h, bwd);
                    }
                    (None, Some(s)) => {
                        slot_piece.insert(s, bwd);
                    }
                    _ => unreachable!(),
                }
            }
        }
        let k = slots.len();
        let mut next_of = vec![0; k];
        let mut prev_of = vec![0; k];
        for j in 0..k {
            let (fwd, bwd) = self.push_edge(DartKind::Next, DartKind::Prev);
            next_of[j] = fwd;
            prev_of[(j + 1) % k] = bwd;
        }
        let end = self.darts.len();
        self.sigma.resize(end, usize::MAX);
        for &v in &self.components[c].vertices {
            let rot = &g.vertices[v].rotation;
            for (p, h) in rot.iter().enumerate() {
                let here = self.dart_of_he[h];
                let next = self.dart_of_he[&rot[(p + 1) % rot.len()]];
                self.sigma[here] = next;
            }
        }
        for (j, s) in slots.iter().enumerate() {
            let ring = [slot_piece[s], next_of[j], prev_of[j]];
            for r in 0..3 {
                self.sigma[ring[r]] = ring[(r + 1) % 3];
            }
        }

        // Trace faces.
        self.face_of.resize(end, usize::MAX);
        let first_face = self.faces.len();
        for start in first_dart..end {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let f = self.faces.len();
            let mut cyc = Vec::new();
            let mut d = start;
            loop {
                self.face_of[d] = f;
                cyc.push(d);
                d = self.sigma[self.darts[d].twin];
                if d == start {
                    break;
                }
            }
            self.faces.push(cyc);
        }

        let nv = self.components[c].vertices.len() + k;
        let ne = (end - first_dart) / 2;
        let nf = self.faces.len() - first_face;
        let euler = nv as i64 - ne as i64 + nf as i64;
        if euler != 2 {
            self.violations.push(Violation::NotPlanar { component: c, euler });
            return Vec::new();
        }

        let face_range = first_face..self.faces.len();
        let mut inside = Vec::new();
        if k == 0 {
            let outer = face_range
                .clone()
                .max_by_key(|&f| (self.faces[f].len(), std::cmp::Reverse(self.faces[f][0])))
                .expect("component with edges has faces");
            inside.extend(face_range.filter(|&f| f != outer));
        } else {
            for f in face_range {
                let nexts = self.faces[f]
                    .iter()
                    .filter(|&&d| self.darts[d].kind == DartKind::Next)
                    .count();
                let prevs = self.faces[f]
                    .iter()
                    .filter(|&&d| self.darts[d].kind == DartKind::Prev)
                    .count();
                if nexts > 1 {
                    self.split_faces.push(f);
                }
                if nexts == 0 && prevs == 0 {
                    inside.push(f);
                }
            }
        }
        inside
    }

    fn check_laminar(&mut self) {
        let n = self.components.len();
        for a in 0..n {
            let sa = &self.components[a].slots;
            if sa.is_empty() {
                continue;
            }
            for b in 0..n {
                let sb = &self.components[b].slots;
                if a == b || sb.is_empty() {
                    continue;
                }
                let gap = |s: &SlotId| sa.partition_point(|x| x < s) % sa.len();
                let g0 = gap(&sb[0]);
                if sb.iter().any(|s| gap(s) != g0) && a < b {
                    self.violations.push(Violation::InterleavedComponents {
                        first: a,
                        second: b,
                    });
                }
            }
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        self.violations.clone()
    }

    /// Inside face `f` as a cyclic list of edge traversals.
    pub fn face_steps(&self, f: usize) -> Vec<FaceStep> {
        self.faces[f]
            .iter()
            .map(|&d| match self.darts[d].kind {
                DartKind::Piece {
                    edge,
                    from: Some(from),
                    to: Some(to),
                } => FaceStep { edge, from, to },
                other => panic!("inside face contains a non-edge dart {other:?}"),
            })
            .collect()
    }


    /// Whether every component's inside drawing is connected.
    pub fn is_connected_inside(&self) -> bool {
        self.split_faces.is_empty()
    }

    /// For a split face, a boundary dart `p → p+1` of it with the vertex `a`
    /// half-edge leading to slot `p` and the vertex `b` half-edge coming from
    /// slot `p+1`: `(h_out at a, h_in at b)`.
    pub fn split_corner(&self, f: usize) -> (HalfEdgeId, HalfEdgeId) {
        let cyc = &self.faces[f];
        let n = cyc.len();
        let i = (0..n)
            .find(|&i| self.darts[cyc[i]].kind == DartKind::Next)
            .expect("split face has boundary darts");
        let before = self.darts[cyc[(i + n - 1) % n]].kind;
        let after = self.darts[cyc[(i + 1) % n]].kind;
        match (before, after) {
            (
                DartKind::Piece { from: Some(a), to: None, .. },
                DartKind::Piece { from: None, to: Some(b), .. },
            ) => (a, b),
            other => panic!("boundary dart not flanked by stubs: {other:?}"),
        }
    }
}
