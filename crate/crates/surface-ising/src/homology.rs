//! Z2 homology of a surface presented by a polygon word.
//!
//! The basis element `e_s` of `H_1(Σ; Z2)` is the class of a loop crossing the
//! side pair `s` exactly once, so an edge's crossing tally mod 2 is directly its
//! coordinate vector. In this basis two basis classes meet iff the
//! occurrences of their side pairs interleave in the word, and `e_s · e_s = 1`
//! exactly when the pair is glued without inversion (`x … x`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::GaussInt;

/// Largest first Betti number supported by the bit-packed vectors.
pub const MAX_B1: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "orientable")]
    Orientable,
    #[serde(rename = "klein")]
    KleinSum,
    #[serde(rename = "projective")]
    ProjectiveSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub kind: SurfaceKind,
    pub genus: usize,
}

/// One side of the polygon: which identified pair it belongs to and whether it
/// is read inverted (`x⁻¹`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideOccurrence {
    pub pair: usize,
    pub inverse: bool,
}

impl SurfaceSignature {
    pub fn new(kind: SurfaceKind, genus: usize) -> Self {
        SurfaceSignature { kind, genus }
    }

    pub fn sphere() -> Self {
        SurfaceSignature::new(SurfaceKind::Orientable, 0)
    }

    pub fn torus() -> Self {
        SurfaceSignature::new(SurfaceKind::Orientable, 1)
    }

    pub fn klein() -> Self {
        SurfaceSignature::new(SurfaceKind::KleinSum, 0)
    }

    pub fn projective() -> Self {
        SurfaceSignature::new(SurfaceKind::ProjectiveSum, 0)
    }

    pub fn b1(&self) -> usize {
        match self.kind {
            SurfaceKind::Orientable => 2 * self.genus,
            SurfaceKind::KleinSum => 2 * self.genus + 2,
            SurfaceKind::ProjectiveSum => 2 * self.genus + 1,
        }
    }

    pub fn is_orientable(&self) -> bool {
        self.kind == SurfaceKind::Orientable
    }

    /// `a1 b1 a1⁻¹ b1⁻¹ … ag bg ag⁻¹ bg⁻¹`, followed by `a b a⁻¹ b` or `c c`.
    pub fn side_word(&self) -> Vec<SideOccurrence> {
        let occ = |pair, inverse| SideOccurrence { pair, inverse };
        let mut w = Vec::with_capacity(2 * self.b1());
        for i in 0..self.genus {
            let (a, b) = (2 * i, 2 * i + 1);
            w.extend([occ(a, false), occ(b, false), occ(a, true), occ(b, true)]);
        }
        let base = 2 * self.genus;
        match self.kind {
            SurfaceKind::Orientable => {}
            SurfaceKind::KleinSum => {
                w.extend([
                    occ(base, false),
                    occ(base + 1, false),
                    occ(base, true),
                    occ(base + 1, false),
                ]);
            }
            SurfaceKind::ProjectiveSum => {
                w.extend([occ(base, false), occ(base, false)]);
            }
        }
        w
    }

    /// Human names of the side pairs, in basis order.
    pub fn pair_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.b1());
        for i in 1..=self.genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        match self.kind {
            SurfaceKind::Orientable => {}
            SurfaceKind::KleinSum => {
                names.push("a".into());
                names.push("b".into());
            }
            SurfaceKind::ProjectiveSum => names.push("c".into()),
        }
        names
    }

    /// Word positions of the two occurrences of each pair.
    pub fn pair_positions(&self) -> Vec<[usize; 2]> {
        let mut pos = vec![[usize::MAX; 2]; self.b1()];
        for (k, o) in self.side_word().iter().enumerate() {
            let slot = &mut pos[o.pair];
            if slot[0] == usize::MAX {
                slot[0] = k;
            } else {
                slot[1] = k;
            }
        }
        pos
    }

    /// Pairs glued without inversion (`x … x`).
    pub fn is_twisted(&self, pair: usize) -> bool {
        let w = self.side_word();
        let [p, q] = self.pair_positions()[pair];
        w[p].inverse == w[q].inverse
    }

    pub fn intersection_form(&self) -> IntersectionForm {
        let pos = self.pair_positions();
        let n = self.b1();
        let mut rows = vec![0u64; n];
        for s in 0..n {
            for t in 0..n {
                let bit = if s == t {
                    self.is_twisted(s)
                } else {
                    let [p0, p1] = pos[s];
                    let [q0, q1] = pos[t];
                    (p0 < q0 && q0 < p1) != (p0 < q1 && q1 < p1)
                };
                if bit {
                    rows[s] |= 1 << t;
                }
            }
        }
        IntersectionForm { dim: n, rows }
    }

    pub fn omega(&self) -> OmegaClass {
        self.intersection_form().omega()
    }

    /// The reference enhancement `q̃0`: value `ω(e_s)` on each basis class,
    /// which is the self-intersection count of a single-crossing edge.
    pub fn reference_enhancement(&self) -> QuadraticEnhancement {
        let form = self.intersection_form();
        let values = (0..self.b1()).map(|s| form.entry(s, s)).collect();
        QuadraticEnhancement::new(form, values).expect("diagonal values have the right parity")
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::Orientable => write!(f, "orientable genus {}", self.genus),
            SurfaceKind::KleinSum => write!(f, "klein # genus {}", self.genus),
            SurfaceKind::ProjectiveSum => write!(f, "projective # genus {}", self.genus),
        }
    }
}

/// Element of `Z2^len`, bit `s` holding the coefficient of basis class `s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Vector {
    len: usize,
    bits: u64,
}

impl Z2Vector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_B1, "Z2 vectors are limited to {MAX_B1} coordinates");
        Z2Vector { len, bits: 0 }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_B1, "Z2 vectors are limited to {MAX_B1} coordinates");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Z2Vector {
            len,
            bits: bits & mask,
        }
    }

    pub fn basis(len: usize, s: usize) -> Self {
        assert!(s < len);
        Z2Vector::from_bits(len, 1 << s)
    }

    pub fn from_slice(v: &[u8]) -> Self {
        let mut x = Z2Vector::zero(v.len());
        for (s, &b) in v.iter().enumerate() {
            x.set(s, b & 1 == 1);
        }
        x
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, s: usize) -> bool {
        self.bits >> s & 1 == 1
    }

    pub fn set(&mut self, s: usize, v: bool) {
        assert!(s < self.len);
        if v {
            self.bits |= 1 << s;
        } else {
            self.bits &= !(1 << s);
        }
    }

    pub fn flip(&mut self, s: usize) {
        assert!(s < self.len);
        self.bits ^= 1 << s;
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, o: &Z2Vector) -> Z2Vector {
        assert_eq!(self.len, o.len, "Z2 vector length mismatch");
        Z2Vector {
            len: self.len,
            bits: self.bits ^ o.bits,
        }
    }

    /// Plain coordinate dot product.
    pub fn dot(&self, o: &Z2Vector) -> bool {
        (self.bits & o.bits).count_ones() % 2 == 1
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len).map(|s| self.get(s) as u8).collect()
    }

    /// All `2^len` vectors in increasing bit order.
    pub fn all(len: usize) -> impl Iterator<Item = Z2Vector> {
        assert!(len < 64, "cannot enumerate 2^{len} vectors");
        (0..1u64 << len).map(move |b| Z2Vector::from_bits(len, b))
    }
}

impl fmt::Display for Z2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..self.len {
            write!(f, "{}", self.get(s) as u8)?;
        }
        Ok(())
    }
}

/// Symmetric Z2 bilinear form stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    dim: usize,
    rows: Vec<u64>,
}

impl IntersectionForm {
    /// Builds a form from an explicit symmetric 0/1 matrix.
    pub fn from_matrix(m: &[Vec<u8>]) -> Result<Self> {
        let dim = m.len();
        if dim > MAX_B1 {
            return Err(Error::DimensionMismatch {
                expected: MAX_B1,
                found: dim,
            });
        }
        let mut rows = vec![0u64; dim];
        for (s, row) in m.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (t, &b) in row.iter().enumerate() {
                if b & 1 != m[t][s] & 1 {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: dim,
                    });
                }
                if b & 1 == 1 {
                    rows[s] |= 1 << t;
                }
            }
        }
        Ok(IntersectionForm { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, s: usize, t: usize) -> u8 {
        (self.rows[s] >> t & 1) as u8
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.dim)
            .map(|s| (0..self.dim).map(|t| self.entry(s, t)).collect())
            .collect()
    }

    fn check(&self, x: &Z2Vector) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `J·x`, i.e. the covector `y ↦ y·x`.
    pub fn apply(&self, x: &Z2Vector) -> Z2Vector {
        let mut acc = 0u64;
        for s in 0..self.dim {
            if x.get(s) {
                acc ^= self.rows[s];
            }
        }
        Z2Vector::from_bits(self.dim, acc)
    }

    pub fn pair(&self, x: &Z2Vector, y: &Z2Vector) -> bool {
        x.dot(&self.apply(y))
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.dim).all(|s| self.entry(s, s) == 0)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(p) = (rank..self.dim).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..self.dim {
                if r != rank && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim
    }

    /// Solves `J·x = y`.
    pub fn solve(&self, y: &Z2Vector) -> Result<Z2Vector> {
        self.check(y)?;
        let n = self.dim;
        // Augmented rows: low n bits hold J, bit n holds the right-hand side.
        let mut rows: Vec<u128> = (0..n)
            .map(|s| self.rows[s] as u128 | ((y.get(s) as u128) << n))
            .collect();
        let mut pivots = Vec::with_capacity(n);
        for (r, col) in (0..n).enumerate() {
            let Some(p) = (r..n).find(|&i| rows[i] >> col & 1 == 1) else {
                return Err(Error::DegenerateForm);
            };
            rows.swap(r, p);
            for i in 0..n {
                if i != r && rows[i] >> col & 1 == 1 {
                    rows[i] ^= rows[r];
                }
            }
            pivots.push(col);
        }
        let mut x = Z2Vector::zero(n);
        for (i, &col) in pivots.iter().enumerate() {
            x.set(col, rows[i] >> n & 1 == 1);
        }
        Ok(x)
    }

    /// The class `ω` with `x·x = ω(x)`, read off the diagonal.
    pub fn omega(&self) -> OmegaClass {
        let mut w = Z2Vector::zero(self.dim);
        for s in 0..self.dim {
            w.set(s, self.entry(s, s) == 1);
        }
        OmegaClass { covector: w }
    }

    /// `Σ_{s<t} x_s x_t J_st mod 2`.
    fn cross_terms(&self, x: &Z2Vector) -> u32 {
        let mut c = 0;
        for s in 0..self.dim {
            if x.get(s) {
                let above = if s + 1 >= 64 { 0 } else { !((2u64 << s) - 1) };
                c += (self.rows[s] & x.bits() & above).count_ones();
            }
        }
        c & 1
    }
}

/// Dual of `d` under the intersection form.
pub fn dual_flip_vector(form: &IntersectionForm, d: &Z2Vector) -> Result<Z2Vector> {
    form.check(d)?;
    Ok(form.apply(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaClass {
    covector: Z2Vector,
}

impl OmegaClass {
    pub fn covector(&self) -> Z2Vector {
        self.covector
    }

    pub fn eval(&self, x: &Z2Vector) -> bool {
        self.covector.dot(x)
    }

    pub fn is_zero(&self) -> bool {
        self.covector.is_zero()
    }
}

/// Z2-valued quadratic refinement of an alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    form: IntersectionForm,
    values: Vec<u8>,
}

impl QuadraticForm {
    pub fn new(form: IntersectionForm, values: Vec<u8>) -> Result<Self> {
        if !form.is_alternating() {
            return Err(Error::NotAlternating);
        }
        if values.len() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                found: values.len(),
            });
        }
        let values = values.into_iter().map(|v| v & 1).collect();
        Ok(QuadraticForm { form, values })
    }

    /// The form vanishing on the basis.
    pub fn zero(form: IntersectionForm) -> Result<Self> {
        let n = form.dim();
        QuadraticForm::new(form, vec![0; n])
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.values
    }

    pub fn eval(&self, x: &Z2Vector) -> Result<u8> {
        self.form.check(x)?;
        let mut v = self.form.cross_terms(x);
        for (s, &q) in self.values.iter().enumerate() {
            if x.get(s) {
                v += q as u32;
            }
        }
        Ok((v & 1) as u8)
    }

    /// `2q`, viewed as an enhancement.
    pub fn to_enhancement(&self) -> QuadraticEnhancement {
        QuadraticEnhancement {
            form: self.form.clone(),
            values: self.values.iter().map(|v| 2 * v).collect(),
        }
    }
}

/// Exact `Σ_x (−1)^{q(x)}`.
pub fn gauss_sum_form(q: &QuadraticForm) -> i128 {
    Z2Vector::all(q.form.dim())
        .map(|x| if q.eval(&x).unwrap() == 0 { 1 } else { -1 })
        .sum()
}

pub fn arf(q: &QuadraticForm) -> Result<u8> {
    let n = q.form.dim();
    if !n.is_multiple_of(2) || !q.form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let s = gauss_sum_form(q);
    let root = 1i128 << (n / 2);
    match s {
        _ if s == root => Ok(0),
        _ if s == -root => Ok(1),
        _ => Err(Error::GaussSum { re: s, im: 0, b1: n }),
    }
}

/// All quadratic forms refining `form`, lexicographic in basis values.
pub fn enumerate_forms(form: &IntersectionForm) -> Result<Vec<QuadraticForm>> {
    let n = form.dim();
    (0..1u64 << n)
        .map(|k| {
            let values = (0..n).map(|s| (k >> (n - 1 - s) & 1) as u8).collect();
            QuadraticForm::new(form.clone(), values)
        })
        .collect()
}

/// Z4-valued quadratic enhancement of a (not necessarily alternating) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticEnhancement {
    form: IntersectionForm,
    values: Vec<u8>,
}

impl std::hash::Hash for IntersectionForm {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.dim.hash(h);
        self.rows.hash(h);
    }
}

impl QuadraticEnhancement {
    pub fn new(form: IntersectionForm, values: Vec<u8>) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                found: values.len(),
            });
        }
        for (s, &v) in values.iter().enumerate() {
            if (v % 4) % 2 != form.entry(s, s) {
                return Err(Error::EnhancementParity { index: s, value: v });
            }
        }
        let values = values.into_iter().map(|v| v % 4).collect();
        Ok(QuadraticEnhancement { form, values })
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.values
    }

    pub fn eval(&self, x: &Z2Vector) -> Result<u8> {
        self.form.check(x)?;
        let mut v = 2 * self.form.cross_terms(x);
        for (s, &q) in self.values.iter().enumerate() {
            if x.get(s) {
                v += q as u32;
            }
        }
        Ok((v % 4) as u8)
    }

    /// `q + 2·φ` for a covector `φ`, again an enhancement.
    pub fn shifted(&self, phi: &Z2Vector) -> Result<QuadraticEnhancement> {
        self.form.check(phi)?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(s, &v)| (v + 2 * phi.get(s) as u8) % 4)
            .collect();
        Ok(QuadraticEnhancement {
            form: self.form.clone(),
            values,
        })
    }

    /// The covector `(q − other)/2`.
    pub fn difference(&self, other: &QuadraticEnhancement) -> Result<Z2Vector> {
        if self.form != other.form {
            return Err(Error::DimensionMismatch {
                expected: self.form.dim(),
                found: other.form.dim(),
            });
        }
        let mut d = Z2Vector::zero(self.form.dim());
        for s in 0..self.form.dim() {
            d.set(s, (self.values[s] + 4 - other.values[s]) % 4 == 2);
        }
        Ok(d)
    }
}

/// Exact `Σ_x i^{q(x)}`.
pub fn gauss_sum(q: &QuadraticEnhancement) -> GaussInt {
    let mut counts = [0i128; 4];
    for x in Z2Vector::all(q.form.dim()) {
        counts[q.eval(&x).unwrap() as usize] += 1;
    }
    GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
}

/// Brown invariant in `Z8`, read exactly off the Gaussian-integer Gauss sum.
pub fn brown(q: &QuadraticEnhancement) -> Result<u8> {
    let n = q.form.dim();
    if !q.form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    brown_from_gauss_sum(gauss_sum(q), n)
}

/// `k` with `G = 2^{n/2} ζ^k`, `ζ = e^{iπ/4}`.
pub fn brown_from_gauss_sum(g: GaussInt, n: usize) -> Result<u8> {
    let bad = || Error::GaussSum {
        re: g.re,
        im: g.im,
        b1: n,
    };
    if n.is_multiple_of(2) {
        let r = 1i128 << (n / 2);
        match (g.re, g.im) {
            (a, 0) if a == r => Ok(0),
            (0, b) if b == r => Ok(2),
            (a, 0) if a == -r => Ok(4),
            (0, b) if b == -r => Ok(6),
            _ => Err(bad()),
        }
    } else {
        let r = 1i128 << (n / 2);
        match (g.re, g.im) {
            (a, b) if a == r && b == r => Ok(1),
            (a, b) if a == -r && b == r => Ok(3),
            (a, b) if a == -r && b == -r => Ok(5),
            (a, b) if a == r && b == -r => Ok(7),
            _ => Err(bad()),
        }
    }
}

/// All enhancements of `form`, lexicographic in basis values.
pub fn enumerate_enhancements_of(form: &IntersectionForm) -> Vec<QuadraticEnhancement> {
    let n = form.dim();
    (0..1u64 << n)
        .map(|k| {
            let values = (0..n)
                .map(|s| form.entry(s, s) + 2 * (k >> (n - 1 - s) & 1) as u8)
                .collect();
            QuadraticEnhancement {
                form: form.clone(),
                values,
            }
        })
        .collect()
}

pub fn enumerate_enhancements(sig: &SurfaceSignature) -> Vec<QuadraticEnhancement> {
    enumerate_enhancements_of(&sig.intersection_form())
}
