//! Good orientations of the terminal graph and their homology variants.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{QuadraticEnhancement, Z2Vector};
use crate::terminal::{FaceCycle, TEdgeKind, TerminalGraph};

/// A direction for every edge of `G^T`: `forward[e]` means `ends.0 → ends.1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub forward: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GoodnessViolation {
    /// Short edge not oriented from the bigger label to the smaller.
    ShortEdge { edge: usize },
    /// Inside face (index into the inside face list) with even `n^K`.
    InsideFace { face: usize },
    /// Outside face of the given outside edge with even `n^K`.
    OutsideFace { edge: usize },
}

impl std::fmt::Display for GoodnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ShortEdge { edge } => write!(f, "short edge {edge} points from the smaller label"),
            Self::InsideFace { face } => write!(f, "inside face {face} has an even number of disagreeing edges"),
            Self::OutsideFace { edge } => {
                write!(f, "outside face of edge {edge} has an even number of disagreeing edges")
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct OrientationFile {
    schema: u32,
    /// `[from, to]` terminal pair per edge of `G^T`, in edge order.
    directions: Vec<[usize; 2]>,
}

impl Orientation {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// `(tail, head)` of edge `e`.
    pub fn direction(&self, gt: &TerminalGraph, e: usize) -> (usize, usize) {
        let (a, b) = gt.edges[e].ends;
        if self.forward[e] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn flip(&mut self, e: usize) {
        self.forward[e] = !self.forward[e];
    }

    /// Number of steps of `c` traversing their edge against its direction.
    pub fn disagreements(&self, gt: &TerminalGraph, c: &FaceCycle) -> usize {
        c.steps
            .iter()
            .filter(|s| self.direction(gt, s.edge).0 != s.from)
            .count()
    }

    pub fn to_json(&self, gt: &TerminalGraph) -> String {
        let file = OrientationFile {
            schema: 1,
            directions: (0..self.len())
                .map(|e| {
                    let (a, b) = self.direction(gt, e);
                    [a, b]
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("orientation serializes")
    }

    pub fn from_json(gt: &TerminalGraph, text: &str) -> Result<Orientation> {
        let file: OrientationFile = serde_json::from_str(text)?;
        if file.directions.len() != gt.edges.len() {
            return Err(Error::BadOrientation(format!(
                "expected {} edges, found {}",
                gt.edges.len(),
                file.directions.len()
            )));
        }
        let mut forward = Vec::with_capacity(file.directions.len());
        for (e, [a, b]) in file.directions.into_iter().enumerate() {
            let ends = gt.edges[e].ends;
            if (a, b) == ends {
                forward.push(true);
            } else if (b, a) == ends {
                forward.push(false);
            } else {
                return Err(Error::BadOrientation(format!(
                    "edge {e} joins terminals {} and {}, not {a} and {b}",
                    ends.0, ends.1
                )));
            }
        }
        Ok(Orientation { forward })
    }
}

/// Builds a good orientation: short edges by labels, inside long edges fixed
/// through a spanning tree of the dual graph, each outside edge fixed by its
/// own outside face.
pub fn construct_good(gt: &TerminalGraph) -> Result<Orientation> {
    construct_from(gt, |e| gt.edges[e].ends.0 < gt.edges[e].ends.1)
}

/// Same construction with the initial long-edge directions drawn at random;
/// the result is good but generally differs from [`construct_good`].
pub fn construct_good_seeded(gt: &TerminalGraph, seed: u64) -> Result<Orientation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial: Vec<bool> = (0..gt.num_long()).map(|_| rng.gen()).collect();
    construct_from(gt, |e| initial[e])
}

fn construct_from(gt: &TerminalGraph, initial: impl Fn(usize) -> bool) -> Result<Orientation> {
    let mut k = Orientation {
        forward: gt
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| match e.kind {
                TEdgeKind::Short { .. } => false,
                TEdgeKind::Long { .. } => initial(i),
            })
            .collect(),
    };

    let faces = gt.inside_face_cycles();
    let nf = faces.len();
    let outer = nf;
    // Dual adjacency through inside long edges; faces absent from the inside
    // list all collapse into the outer node.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf + 1];
    for e in 0..gt.num_long() {
        if gt.graph.edges[e].is_outside() {
            continue;
        }
        let (a, b) = gt.inside_faces_of_edge(e);
        let (a, b) = (a.unwrap_or(outer), b.unwrap_or(outer));
        if a != b {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nf + 1];
    let mut seen = vec![false; nf + 1];
    let mut order = Vec::with_capacity(nf + 1);
    let mut queue = VecDeque::from([outer]);
    seen[outer] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &(h, e) in &adj[f] {
            if !seen[h] {
                seen[h] = true;
                parent[h] = Some((f, e));
                queue.push_back(h);
            }
        }
    }
    if order.len() != nf + 1 {
        return Err(Error::DualDisconnected);
    }
    let mut odd: Vec<bool> = faces.iter().map(|c| k.disagreements(gt, c) % 2 == 1).collect();
    odd.push(true);
    for &f in order.iter().rev() {
        if f == outer || odd[f] {
            continue;
        }
        let (p, e) = parent[f].expect("non-root has a parent");
        k.flip(e);
        odd[f] = true;
        odd[p] = !odd[p];
    }

    for e in gt.outside_edges() {
        let c = gt.outside_face_cycle(e)?;
        if k.disagreements(gt, &c).is_multiple_of(2) {
            k.flip(e);
        }
    }
    debug_assert!(check_good(gt, &k).is_empty());
    Ok(k)
}

/// All violated conditions; empty iff `k` is good.
pub fn check_good(gt: &TerminalGraph, k: &Orientation) -> Vec<GoodnessViolation> {
    let mut out = Vec::new();
    for (e, te) in gt.edges.iter().enumerate() {
        if let TEdgeKind::Short { .. } = te.kind {
            if k.forward[e] {
                out.push(GoodnessViolation::ShortEdge { edge: e });
            }
        }
    }
    for (i, c) in gt.inside_face_cycles().iter().enumerate() {
        if k.disagreements(gt, c).is_multiple_of(2) {
            out.push(GoodnessViolation::InsideFace { face: i });
        }
    }
    for e in gt.outside_edges() {
        match gt.outside_face_cycle(e) {
            Ok(c) if k.disagreements(gt, &c) % 2 == 1 => {}
            _ => out.push(GoodnessViolation::OutsideFace { edge: e }),
        }
    }
    out
}

/// `K_0` with every long edge `e` inverted iff `flips · c(e) = 1`.
pub fn variant(gt: &TerminalGraph, k0: &Orientation, flips: &Z2Vector) -> Result<Orientation> {
    if flips.len() != gt.form.dim() {
        return Err(Error::DimensionMismatch {
            expected: gt.form.dim(),
            found: flips.len(),
        });
    }
    let mut k = k0.clone();
    for e in 0..gt.num_long() {
        if flips.dot(&gt.crossing[e]) {
            k.flip(e);
        }
    }
    Ok(k)
}

/// `K_0` with every long edge inverted iff `q([e]) ≠ q̃_0([e])`.
pub fn variant_for_enhancement(
    gt: &TerminalGraph,
    k0: &Orientation,
    q: &QuadraticEnhancement,
) -> Result<Orientation> {
    let q0 = gt.signature().reference_enhancement();
    if q.form() != q0.form() {
        return Err(Error::DimensionMismatch {
            expected: q0.form().dim(),
            found: q.form().dim(),
        });
    }
    let mut k = k0.clone();
    for e in 0..gt.num_long() {
        if q.eval(&gt.crossing[e])? != q0.eval(&gt.crossing[e])? {
            k.flip(e);
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{Crossing, Edge, EmbeddedGraph, Vertex, Weight};
    use crate::homology::{dual_flip_vector, SurfaceSignature};
    use crate::terminal::build_terminal;

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

    fn single_edge() -> EmbeddedGraph {
        EmbeddedGraph {
            signature: SurfaceSignature::sphere(),
            vertices: vec![
                Vertex { id: 0, rotation: vec![0] },
                Vertex { id: 1, rotation: vec![1] },
            ],
            edges: vec![Edge::new(0, 0, 1, Weight::symbol("x"), vec![])],
            perimeter: vec![],
        }
    }

    #[test]
    fn torus_orientation_is_good() {
        let gt = build_terminal(&torus_1x1()).unwrap();
        let k = construct_good(&gt).unwrap();
        assert!(check_good(&gt, &k).is_empty());
        for e in 2..gt.edges.len() {
            let (a, b) = k.direction(&gt, e);
            assert!(a > b);
        }
    }

    #[test]
    fn seeded_orientations_are_good() {
        let gt = build_terminal(&torus_1x1()).unwrap();
        for seed in 0..8 {
            let k = construct_good_seeded(&gt, seed).unwrap();
            assert!(check_good(&gt, &k).is_empty());
        }
    }

    #[test]
    fn single_edge_low_to_high() {
        let gt = build_terminal(&single_edge()).unwrap();
        let k = construct_good(&gt).unwrap();
        assert_eq!(k.direction(&gt, 0), (0, 1));
        assert!(check_good(&gt, &k).is_empty());
    }

    #[test]
    fn corrupted_orientation_reported() {
        let gt = build_terminal(&torus_1x1()).unwrap();
        let mut k = construct_good(&gt).unwrap();
        k.flip(0);
        assert_eq!(check_good(&gt, &k), vec![GoodnessViolation::OutsideFace { edge: 0 }]);
        k.flip(0);
        k.flip(2);
        let v = check_good(&gt, &k);
        assert!(v.contains(&GoodnessViolation::ShortEdge { edge: 2 }));
    }

    #[test]
    fn json_roundtrip() {
        let gt = build_terminal(&torus_1x1()).unwrap();
        let k = construct_good(&gt).unwrap();
        let back = Orientation::from_json(&gt, &k.to_json(&gt)).unwrap();
        assert_eq!(back, k);
        assert!(Orientation::from_json(&gt, r#"{"schema":1,"directions":[[0,1]]}"#).is_err());
    }

    #[test]
    fn variants() {
        let gt = build_terminal(&torus_1x1()).unwrap();
        let k = construct_good(&gt).unwrap();
        assert_eq!(variant(&gt, &k, &Z2Vector::zero(2)).unwrap(), k);
        // flips (1,0) inverts only the loop crossing side pair a.
        let k10 = variant(&gt, &k, &Z2Vector::from_slice(&[1, 0])).unwrap();
        let changed: Vec<usize> = (0..k.len()).filter(|&e| k.forward[e] != k10.forward[e]).collect();
        assert_eq!(changed, vec![1]);
        assert!(variant(&gt, &k, &Z2Vector::zero(3)).is_err());
    }

    #[test]
    fn enhancement_variant_matches_homology_variant() {
        for sig in [SurfaceSignature::torus(), SurfaceSignature::klein()] {
            let mut g = torus_1x1();
            g.signature = sig;
            let gt = build_terminal(&g).unwrap();
            let k = construct_good(&gt).unwrap();
            let q0 = sig.reference_enhancement();
            for d in Z2Vector::all(2) {
                let flips = dual_flip_vector(&gt.form, &d).unwrap();
                let q = q0.shifted(&flips).unwrap();
                assert_eq!(
                    variant_for_enhancement(&gt, &k, &q).unwrap(),
                    variant(&gt, &k, &flips).unwrap()
                );
            }
        }
    }
}
