//! Skew-symmetric adjacency matrices of oriented terminal graphs and their
//! Pfaffians, exact (subset expansion) and numeric (skew elimination).

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::embedding::Weight;
use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::poly::{rat_to_f64, GaussInt, GaussRat, Monomial, Poly};
use crate::terminal::{TEdgeKind, TerminalGraph};

/// Default size bound of [`pfaffian_exact`].
pub const EXACT_BOUND: usize = 16;

/// Relative pivot size below which the numeric Pfaffian is declared zero.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// Dense skew-symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type ExactMatrix = SkewMatrix<Poly<GaussInt>>;
pub type NumericMatrix = SkewMatrix<Complex64>;

impl<T: Clone> SkewMatrix<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    /// Same matrix with rows and columns reindexed: entry `(i, j)` moves to
    /// `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[perm[i] * n + perm[j]] = self.data[i * n + j].clone();
            }
        }
        SkewMatrix { n, data }
    }
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            data: vec![Poly::zero(); n * n],
        }
    }

    /// Adds `v` at `(i, j)` and `−v` at `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, v: &Poly<GaussInt>) {
        assert_ne!(i, j, "diagonal entry");
        let n = self.n;
        self.data[i * n + j].add_assign(v);
        self.data[j * n + i].add_assign(&v.neg());
    }

    pub fn from_rows(rows: Vec<Vec<Poly<GaussInt>>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        for i in 0..n {
            for j in 0..n {
                if data[i * n + j] != data[j * n + i].neg() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewMatrix { n, data })
    }

    pub fn evaluate(&self, values: &[Complex64]) -> NumericMatrix {
        SkewMatrix {
            n: self.n,
            data: self.data.iter().map(|p| eval_gauss_poly(p, values)).collect(),
        }
    }
}

fn eval_gauss_poly(p: &Poly<GaussInt>, values: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::zero();
    for (m, c) in p.terms() {
        let mut t = Complex64::new(c.re as f64, c.im as f64);
        for &(v, e) in m.pairs() {
            t *= values[v as usize].powu(e);
        }
        acc += t;
    }
    acc
}

impl NumericMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            data: vec![Complex64::zero(); n * n],
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        assert_ne!(i, j, "diagonal entry");
        let n = self.n;
        self.data[i * n + j] += v;
        self.data[j * n + i] -= v;
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                if (data[i * n + j] + data[j * n + i]).norm() > 1e-12 * scale.max(1.0) {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewMatrix { n, data })
    }
}

/// `i^k`, exactly.
fn i_power(k: u8) -> GaussInt {
    GaussInt::i_pow(k as i64)
}

/// Adjacency matrix of `(G^T, K)` over the half-weight variables `s_c`, one
/// per weight class (variable index = class index). Long edges contribute
/// `±i^{ω(e)}` when `twisted`, short edges `±s_c s_c'`. `perm` reindexes
/// the terminals.
pub fn build_adjacency(
    gt: &TerminalGraph,
    k: &Orientation,
    twisted: bool,
    perm: Option<&[usize]>,
) -> Result<ExactMatrix> {
    let n = gt.num_terminals();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if !twisted && gt.omega.iter().any(|&w| w) {
        return Err(Error::TwistRequired);
    }
    let pos = |t: usize| perm.map_or(t, |p| p[t]);
    let class_of_terminal = terminal_classes(gt);
    let mut a = ExactMatrix::zeros(n);
    for (e, te) in gt.edges.iter().enumerate() {
        let (from, to) = k.direction(gt, e);
        let v = match te.kind {
            TEdgeKind::Long { edge } => {
                Poly::constant(i_power(if twisted && gt.omega[edge] { 1 } else { 0 }))
            }
            TEdgeKind::Short { .. } => {
                let (c1, c2) = (class_of_terminal[from], class_of_terminal[to]);
                Poly::term(
                    Monomial::var(c1 as u32).mul(&Monomial::var(c2 as u32)),
                    GaussInt::ONE,
                )
            }
        };
        a.add(pos(from), pos(to), &v);
    }
    Ok(a)
}

/// Weight class of the edge ending at each terminal.
pub fn terminal_classes(gt: &TerminalGraph) -> Vec<usize> {
    let mut c = vec![0; gt.num_terminals()];
    for (e, te) in gt.edges.iter().enumerate().take(gt.num_long()) {
        c[te.ends.0] = gt.weight_class[e];
        c[te.ends.1] = gt.weight_class[e];
    }
    c
}

/// Numeric adjacency: `class_values[c]` is the weight of class `c` (its
/// square root is used on short edges).
pub fn build_adjacency_numeric(
    gt: &TerminalGraph,
    k: &Orientation,
    twisted: bool,
    class_values: &[f64],
    perm: Option<&[usize]>,
) -> Result<NumericMatrix> {
    let n = gt.num_terminals();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if !twisted && gt.omega.iter().any(|&w| w) {
        return Err(Error::TwistRequired);
    }
    let pos = |t: usize| perm.map_or(t, |p| p[t]);
    let half: Vec<f64> = class_values.iter().map(|x| x.sqrt()).collect();
    let class_of_terminal = terminal_classes(gt);
    let mut a = NumericMatrix::zeros(n);
    for (e, te) in gt.edges.iter().enumerate() {
        let (from, to) = k.direction(gt, e);
        let v = match te.kind {
            TEdgeKind::Long { edge } => {
                if twisted && gt.omega[edge] {
                    Complex64::i()
                } else {
                    Complex64::new(1.0, 0.0)
                }
            }
            TEdgeKind::Short { .. } => {
                Complex64::new(half[class_of_terminal[from]] * half[class_of_terminal[to]], 0.0)
            }
        };
        a.add(pos(from), pos(to), v);
    }
    Ok(a)
}

/// Exact Pfaffian by expansion along the lowest unmatched row, memoized on
/// the set of unmatched indices.
pub fn pfaffian_exact(a: &ExactMatrix, bound: usize) -> Result<Poly<GaussInt>> {
    let n = a.dim();
    if n > bound || n > 128 {
        return Err(Error::BoundExceeded { dim: n, bound });
    }
    if n % 2 == 1 {
        return Ok(Poly::zero());
    }
    let nonzero: Vec<Vec<usize>> = (0..n)
        .map(|i| (i + 1..n).filter(|&j| !a.get(i, j).is_zero()).collect())
        .collect();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut memo: HashMap<u128, Poly<GaussInt>> = HashMap::new();
    Ok(pf_rec(a, &nonzero, full, &mut memo))
}

fn pf_rec(
    a: &ExactMatrix,
    nonzero: &[Vec<usize>],
    mask: u128,
    memo: &mut HashMap<u128, Poly<GaussInt>>,
) -> Poly<GaussInt> {
    if mask == 0 {
        return Poly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let mut acc = Poly::zero();
    for &j in &nonzero[i] {
        if mask >> j & 1 == 0 {
            continue;
        }
        let rest = mask & !(1u128 << i) & !(1u128 << j);
        let sub = pf_rec(a, nonzero, rest, memo);
        if sub.is_zero() {
            continue;
        }
        let between = (mask & ((1u128 << j) - 1)).count_ones() - 1;
        acc.add_product(a.get(i, j), &sub, between % 2 == 1);
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Converts a Pfaffian in half-weight variables to the edge weights: every
/// exponent is halved, numeric classes are substituted, and symbolic classes
/// become variables indexed by `symbols`.
pub fn to_weights(p: &Poly<GaussInt>, classes: &[Weight], symbols: &[String]) -> Result<Poly<GaussRat>> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let h = m
            .halved()
            .ok_or_else(|| Error::ExactPhase("odd half-weight exponent".into()))?;
        let mut coeff = c.to_rat();
        let mut pairs = Vec::new();
        for &(v, e) in h.pairs() {
            match &classes[v as usize] {
                Weight::Rational(r) => {
                    let f = num_traits::pow(r.clone(), e as usize);
                    coeff = GaussRat::new(&coeff.re * &f, &coeff.im * &f);
                }
                Weight::Symbol(s) => {
                    let idx = symbols.binary_search(s).expect("symbol listed");
                    pairs.push((idx as u32, e));
                }
            }
        }
        out.add_term(Monomial::from_pairs(pairs), coeff);
    }
    Ok(out)
}

/// Pfaffian by skew-symmetric Gaussian elimination with pivoting.
pub fn pfaffian_numeric(a: &NumericMatrix) -> Result<Complex64> {
    let n = a.dim();
    if n % 2 == 1 {
        return Ok(Complex64::zero());
    }
    let mut m = a.data.clone();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if scale == 0.0 {
        return Ok(Complex64::zero());
    }
    let at = |i: usize, j: usize| i * n + j;
    let mut unit = Complex64::new(1.0, 0.0);
    let mut log2 = 0i64;
    for k in (0..n - 1).step_by(2) {
        let (mut kp, mut best) = (k + 1, m[at(k + 1, k)].norm());
        for r in k + 2..n {
            let v = m[at(r, k)].norm();
            if v > best {
                kp = r;
                best = v;
            }
        }
        if best <= PIVOT_THRESHOLD * scale {
            return Ok(Complex64::zero());
        }
        if kp != k + 1 {
            for c in 0..n {
                m.swap(at(k + 1, c), at(kp, c));
            }
            for r in 0..n {
                m.swap(at(r, k + 1), at(r, kp));
            }
            unit = -unit;
        }
        let piv = m[at(k, k + 1)];
        unit *= piv;
        let exp = exponent(unit.norm());
        if exp != 0 {
            unit /= 2f64.powi(exp);
            log2 += exp as i64;
        }
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|c| m[at(k, c)] / piv).collect();
            let col: Vec<Complex64> = (k + 2..n).map(|r| m[at(r, k + 1)]).collect();
            for (ri, r) in (k + 2..n).enumerate() {
                for (ci, c) in (k + 2..n).enumerate() {
                    m[at(r, c)] += tau[ri] * col[ci] - col[ri] * tau[ci];
                }
            }
        }
    }
    let out = unit * 2f64.powi(log2.clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::Overflow("numeric Pfaffian"));
    }
    Ok(out)
}

fn exponent(x: f64) -> i32 {
    if x == 0.0 || !x.is_finite() {
        return 0;
    }
    x.log2().floor() as i32
}

/// Determinant by LU decomposition with partial pivoting.
pub fn determinant(a: &NumericMatrix) -> Complex64 {
    let n = a.dim();
    let mut m = a.data.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&r, &s| m[r * n + k].norm().total_cmp(&m[s * n + k].norm()))
            .expect("nonempty range");
        if m[p * n + k].norm() == 0.0 {
            return Complex64::zero();
        }
        if p != k {
            for c in 0..n {
                m.swap(k * n + c, p * n + c);
            }
            det = -det;
        }
        let piv = m[k * n + k];
        det *= piv;
        for r in k + 1..n {
            let f = m[r * n + k] / piv;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = m[k * n + c];
                m[r * n + c] -= f * v;
            }
        }
    }
    det
}

/// `ε^K(D)`: sign of the permutation listing each edge of `D` as its two
/// terminals in increasing order, times `−1` per edge pointing downward.
pub fn matching_sign(gt: &TerminalGraph, k: &Orientation, d: &[usize]) -> Result<i8> {
    if !gt.is_perfect_matching(d) {
        return Err(Error::NotPerfectMatching);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(d.len());
    let mut sign = 1i8;
    for &e in d {
        let (a, b) = k.direction(gt, e);
        if a > b {
            sign = -sign;
        }
        pairs.push((a.min(b), a.max(b)));
    }
    for (i, p) in pairs.iter().enumerate() {
        for q in &pairs[i + 1..] {
            let (x, y) = if p.0 < q.0 { (p, q) } else { (q, p) };
            if x.0 < y.0 && y.0 < x.1 && x.1 < y.1 {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Every perfect matching of `G^T` as a sorted list of edge ids (parallel
/// long and short edges give distinct matchings). Errors past `limit`.
pub fn perfect_matchings(gt: &TerminalGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = gt.num_terminals();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, te) in gt.edges.iter().enumerate() {
        let (a, b) = te.ends;
        incident[a].push((b, e));
        incident[b].push((a, e));
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut acc = Vec::new();
    fn rec(
        incident: &[Vec<(usize, usize)>],
        used: &mut [bool],
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            let mut m = acc.clone();
            m.sort_unstable();
            out.push(m);
            return out.len() <= limit;
        };
        used[i] = true;
        for &(j, e) in &incident[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            acc.push(e);
            let ok = rec(incident, used, acc, out, limit);
            acc.pop();
            used[j] = false;
            if !ok {
                return false;
            }
        }
        used[i] = false;
        true
    }
    if !rec(&incident, &mut used, &mut acc, &mut out, limit) {
        return Err(Error::OracleBound { dim: n, bound: limit });
    }
    out.sort();
    Ok(out)
}

/// Numeric value of every weight class, with symbols looked up in `values`.
pub fn class_values(classes: &[Weight], values: &HashMap<String, f64>) -> Result<Vec<f64>> {
    classes
        .iter()
        .map(|w| match w {
            Weight::Rational(r) => Ok(rat_to_f64(r)),
            Weight::Symbol(s) => values.get(s).copied().ok_or_else(|| Error::MissingValue(s.clone())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{Crossing, Edge, EmbeddedGraph, Vertex};
    use crate::homology::{SurfaceSignature, Z2Vector};
    use crate::orientation::{construct_good, variant};
    use crate::terminal::build_terminal;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn torus_1x1(sig: SurfaceSignature) -> EmbeddedGraph {
        EmbeddedGraph {
            signature: sig,
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

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn pf_string(g: &EmbeddedGraph, flips: &[u8]) -> String {
        let gt = build_terminal(g).unwrap();
        let k0 = construct_good(&gt).unwrap();
        let k = variant(&gt, &k0, &Z2Vector::from_slice(flips)).unwrap();
        let a = build_adjacency(&gt, &k, true, None).unwrap();
        let p = to_weights(&pfaffian_exact(&a, EXACT_BOUND).unwrap(), &gt.classes, &gt.graph.symbols()).unwrap();
        p.display(&names()).to_string()
    }

    #[test]
    fn two_by_two() {
        let a = NumericMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(-1.0), c(0.0)]]).unwrap();
        assert_eq!(pfaffian_numeric(&a).unwrap(), c(1.0));
        assert!(NumericMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]).is_err());
    }

    #[test]
    fn four_by_four_expansion() {
        let (a12, a13, a14, a23, a24, a34) = (2.0, 3.0, 5.0, 7.0, 11.0, 13.0);
        let rows = vec![
            vec![c(0.0), c(a12), c(a13), c(a14)],
            vec![c(-a12), c(0.0), c(a23), c(a24)],
            vec![c(-a13), c(-a23), c(0.0), c(a34)],
            vec![c(-a14), c(-a24), c(-a34), c(0.0)],
        ];
        let m = NumericMatrix::from_rows(&rows).unwrap();
        let expect = a12 * a34 - a13 * a24 + a14 * a23;
        assert!((pfaffian_numeric(&m).unwrap() - c(expect)).norm() < 1e-12);
        let id = NumericMatrix::from_rows(&[
            vec![c(0.0), c(1.0), c(0.0), c(0.0)],
            vec![c(-1.0), c(0.0), c(0.0), c(0.0)],
            vec![c(0.0), c(0.0), c(0.0), c(1.0)],
            vec![c(0.0), c(0.0), c(-1.0), c(0.0)],
        ])
        .unwrap();
        assert_eq!(pfaffian_numeric(&id).unwrap(), c(1.0));
    }

    #[test]
    fn torus_matrix_matches_drawn_example() {
        let g = torus_1x1(SurfaceSignature::torus());
        let gt = build_terminal(&g).unwrap();
        let k = construct_good(&gt).unwrap();
        let a = build_adjacency(&gt, &k, true, None).unwrap();
        // Variables: class 0 = x, class 1 = y (half-weights).
        let sxy = Poly::term(Monomial::from_pairs(vec![(0, 1), (1, 1)]), GaussInt::ONE);
        let one = Poly::<GaussInt>::one();
        let x = Poly::term(Monomial::from_pairs(vec![(0, 2)]), GaussInt::ONE);
        let y = Poly::term(Monomial::from_pairs(vec![(1, 2)]), GaussInt::ONE);
        let z = Poly::zero();
        let expected = ExactMatrix::from_rows(vec![
            vec![z.clone(), sxy.neg(), one.sub(&y), sxy.neg()],
            vec![sxy.clone(), z.clone(), sxy.neg(), one.sub(&x)],
            vec![y.sub(&one), sxy.clone(), z.clone(), sxy.neg()],
            vec![sxy.clone(), x.sub(&one), sxy.clone(), z],
        ])
        .unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn torus_pfaffians() {
        let g = torus_1x1(SurfaceSignature::torus());
        assert_eq!(pf_string(&g, &[0, 0]), "x*y + x + y - 1");
    }

    #[test]
    fn klein_matrix_entry_is_twisted() {
        let g = torus_1x1(SurfaceSignature::klein());
        let gt = build_terminal(&g).unwrap();
        let k = construct_good(&gt).unwrap();
        let a = build_adjacency(&gt, &k, true, None).unwrap();
        let x = Poly::term(Monomial::from_pairs(vec![(0, 2)]), GaussInt::ONE);
        assert_eq!(a.get(1, 3), &Poly::constant(GaussInt::I).sub(&x));
        assert!(matches!(build_adjacency(&gt, &k, false, None), Err(Error::TwistRequired)));
        assert_eq!(pf_string(&g, &[0, 0]), "x*y + x + i*y - i");
    }

    #[test]
    fn exact_bound_enforced() {
        let a = ExactMatrix::zeros(18);
        assert!(matches!(pfaffian_exact(&a, EXACT_BOUND), Err(Error::BoundExceeded { dim: 18, .. })));
    }

    #[test]
    fn single_edge_sign() {
        let g = EmbeddedGraph {
            signature: SurfaceSignature::sphere(),
            vertices: vec![
                Vertex { id: 0, rotation: vec![0] },
                Vertex { id: 1, rotation: vec![1] },
            ],
            edges: vec![Edge::new(0, 0, 1, Weight::one(), vec![])],
            perimeter: vec![],
        };
        let gt = build_terminal(&g).unwrap();
        let mut k = construct_good(&gt).unwrap();
        let a = build_adjacency(&gt, &k, false, None).unwrap();
        assert_eq!(a.get(0, 1), &Poly::one());
        assert_eq!(matching_sign(&gt, &k, &[0]).unwrap(), 1);
        k.flip(0);
        assert_eq!(matching_sign(&gt, &k, &[0]).unwrap(), -1);
        assert!(matching_sign(&gt, &k, &[]).is_err());
    }

    #[test]
    fn matching_terms_sum_to_pfaffian() {
        for sig in [SurfaceSignature::torus(), SurfaceSignature::klein()] {
            let g = torus_1x1(sig);
            let gt = build_terminal(&g).unwrap();
            let k = construct_good(&gt).unwrap();
            let a = build_adjacency(&gt, &k, true, None).unwrap();
            let pf = pfaffian_exact(&a, EXACT_BOUND).unwrap();
            let cls = terminal_classes(&gt);
            let mut sum = Poly::zero();
            for d in perfect_matchings(&gt, 1000).unwrap() {
                let mut term = Poly::constant(GaussInt::new(matching_sign(&gt, &k, &d).unwrap() as i128, 0));
                for &e in &d {
                    let te = gt.edges[e];
                    let f = match te.kind {
                        TEdgeKind::Long { edge } => Poly::constant(GaussInt::i_pow(gt.omega[edge] as i64)),
                        TEdgeKind::Short { .. } => Poly::term(
                            Monomial::var(cls[te.ends.0] as u32).mul(&Monomial::var(cls[te.ends.1] as u32)),
                            GaussInt::ONE,
                        ),
                    };
                    term = term.mul(&f);
                }
                sum.add_assign(&term);
            }
            assert_eq!(sum, pf);
        }
    }

    fn random_skew(n: usize, seed: &[f64]) -> NumericMatrix {
        let mut m = NumericMatrix::zeros(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.add(i, j, Complex64::new(seed[k % seed.len()], seed[(k + 7) % seed.len()]));
                k += 1;
            }
        }
        m
    }

    proptest! {
        #[test]
        fn pf_squared_is_det(n in 1usize..6, seed in prop::collection::vec(-2.0f64..2.0, 40)) {
            let m = random_skew(2 * n, &seed);
            let pf = pfaffian_numeric(&m).unwrap();
            let det = determinant(&m);
            prop_assert!((pf * pf - det).norm() <= 1e-9 * det.norm().max(1e-300) + 1e-12);
        }

        #[test]
        fn permutation_multiplies_by_sign(n in 1usize..5, seed in prop::collection::vec(-2.0f64..2.0, 30), shuffle in prop::collection::vec(any::<u32>(), 10)) {
            let dim = 2 * n;
            let m = random_skew(dim, &seed);
            let mut perm: Vec<usize> = (0..dim).collect();
            for (i, s) in shuffle.iter().enumerate().take(dim) {
                perm.swap(i, (*s as usize) % dim);
            }
            let mut sign = 1.0;
            let mut seen = vec![false; dim];
            for i in 0..dim {
                if seen[i] { continue; }
                let mut j = i;
                let mut len = 0;
                while !seen[j] { seen[j] = true; j = perm[j]; len += 1; }
                if len % 2 == 0 { sign = -sign; }
            }
            let a = pfaffian_numeric(&m).unwrap();
            let b = pfaffian_numeric(&m.permuted(&perm)).unwrap();
            prop_assert!((b - a * sign).norm() <= 1e-9 * a.norm().max(1.0));
        }

        #[test]
        fn exact_matches_numeric(n in 1usize..7, entries in prop::collection::vec((-5i64..5, -5i64..5), 66)) {
            let dim = 2 * n;
            let mut a = ExactMatrix::zeros(dim);
            let mut k = 0;
            for i in 0..dim {
                for j in i + 1..dim {
                    let (re, im) = entries[k % entries.len()];
                    a.add(i, j, &Poly::constant(GaussInt::new(re as i128, im as i128)));
                    k += 1;
                }
            }
            let exact = pfaffian_exact(&a, EXACT_BOUND).unwrap().constant_term();
            let num = pfaffian_numeric(&a.evaluate(&[])).unwrap();
            let e = Complex64::new(exact.re as f64, exact.im as f64);
            prop_assert!((num - e).norm() <= 1e-9 * e.norm().max(1.0));
        }
    }
}
