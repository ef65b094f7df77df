//! Sparse multivariate polynomials over Gaussian integers and Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient ring used by [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// Gaussian integer with overflow-checked `i128` parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: i128,
    pub im: i128,
}

const OVERFLOW: &str = "Gaussian integer coefficient overflow";

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub fn new(re: i128, im: i128) -> Self {
        GaussInt { re, im }
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn norm(self) -> i128 {
        self.re
            .checked_mul(self.re)
            .and_then(|a| self.im.checked_mul(self.im).and_then(|b| a.checked_add(b)))
            .expect(OVERFLOW)
    }

    pub fn to_rat(self) -> GaussRat {
        GaussRat::new(
            BigRational::from_integer(BigInt::from(self.re)),
            BigRational::from_integer(BigInt::from(self.im)),
        )
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re.checked_add(o.re).expect(OVERFLOW),
            self.im.checked_add(o.im).expect(OVERFLOW),
        )
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        self + (-o)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(
            self.re.checked_neg().expect(OVERFLOW),
            self.im.checked_neg().expect(OVERFLOW),
        )
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        let m = |a: i128, b: i128| a.checked_mul(b).expect(OVERFLOW);
        GaussInt::new(
            m(self.re, o.re).checked_sub(m(self.im, o.im)).expect(OVERFLOW),
            m(self.re, o.im).checked_add(m(self.im, o.re)).expect(OVERFLOW),
        )
    }
}

impl Coeff for GaussInt {
    fn zero() -> Self {
        GaussInt::ZERO
    }
    fn one() -> Self {
        GaussInt::ONE
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Exact division; `None` when dividing by zero.
    pub fn checked_div(&self, d: &GaussRat) -> Option<GaussRat> {
        let n = &d.re * &d.re + &d.im * &d.im;
        if n.is_zero() {
            return None;
        }
        let num = self.mul_ref(&d.conj());
        Some(GaussRat::new(num.re / &n, num.im / n))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Coeff for GaussRat {
    fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg_ref(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

/// Sparse monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Halves every exponent, or `None` if some exponent is odd.
    pub fn halved(&self) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, e) in &self.0 {
            if e % 2 != 0 {
                return None;
            }
            out.push((v, e / 2));
        }
        Some(Monomial(out))
    }

    /// Key giving the display order: higher total degree first, then
    /// lexicographically larger exponent vectors first.
    fn display_key(&self, nvars: u32) -> (std::cmp::Reverse<u32>, std::cmp::Reverse<Vec<u32>>) {
        let dense = (0..nvars).map(|v| self.exponent(v)).collect();
        (std::cmp::Reverse(self.degree()), std::cmp::Reverse(dense))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Coeff> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: u32) -> Self {
        Poly::term(Monomial::var(v), C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Poly<C>) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += sign · a · b`, the inner step of Pfaffian expansion.
    pub fn add_product(&mut self, a: &Poly<C>, b: &Poly<C>, negate: bool) {
        for (ma, ca) in &a.terms {
            let ca = if negate { ca.neg_ref() } else { ca.clone() };
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
    }

    pub fn mul(&self, o: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        out.add_product(self, o, false);
        out
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul_ref(c));
        }
        out
    }

    pub fn neg(&self) -> Poly<C> {
        self.scale(&C::one().neg_ref())
    }

    pub fn sub(&self, o: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.add_assign(&o.neg());
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Largest variable index appearing plus one.
    pub fn nvars(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|p| p.0 + 1))
            .max()
            .unwrap_or(0)
    }

    /// Terms in display order (descending total degree, then descending exponents).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let n = self.nvars();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| m.display_key(n));
        v
    }
}

impl Poly<GaussRat> {
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn eval_f64(&self, values: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let mut t = 1.0;
            for &(v, e) in m.pairs() {
                t *= values[v as usize].powi(e as i32);
            }
            let (cr, ci) = c.to_f64_pair();
            re += cr * t;
            im += ci * t;
        }
        (re, im)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly<GaussRat>,
    names: &'a [String],
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| {
            let name = names
                .get(v as usize)
                .cloned()
                .unwrap_or_else(|| format!("v{v}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Returns (is_negative, body) for one term.
fn fmt_term(m: &Monomial, c: &GaussRat, names: &[String]) -> (bool, String) {
    let mono = fmt_monomial(m, names);
    let with_mono = |coef: String| -> String {
        if mono.is_empty() {
            coef
        } else if coef.is_empty() {
            mono.clone()
        } else {
            format!("{coef}*{mono}")
        }
    };
    if c.im.is_zero() || c.re.is_zero() {
        let (val, imag) = if c.im.is_zero() {
            (&c.re, false)
        } else {
            (&c.im, true)
        };
        let neg = val.is_negative();
        let a = val.abs();
        let mut coef = if a.is_one() && (imag || !mono.is_empty()) {
            String::new()
        } else {
            fmt_rat(&a)
        };
        if imag {
            coef = if coef.is_empty() {
                "i".to_string()
            } else {
                format!("{coef}*i")
            };
        }
        (neg, with_mono(coef))
    } else {
        let im_part = if c.im.is_negative() {
            format!("-{}*i", fmt_rat(&c.im.abs()))
        } else {
            format!("+{}*i", fmt_rat(&c.im))
        };
        (false, with_mono(format!("({}{})", fmt_rat(&c.re), im_part)))
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (neg, body) = fmt_term(m, c, self.names);
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn gauss_int_arithmetic() {
        let a = GaussInt::new(1, 2);
        let b = GaussInt::new(3, -1);
        assert_eq!(a * b, GaussInt::new(5, 5));
        assert_eq!(GaussInt::i_pow(3), GaussInt::new(0, -1));
        assert_eq!(GaussInt::i_pow(-1), GaussInt::new(0, -1));
        assert_eq!(a.norm(), 5);
    }

    #[test]
    fn gauss_rat_division() {
        let a = GaussRat::new(rat(1, 1), rat(1, 1));
        let q = a.checked_div(&a).unwrap();
        assert_eq!(q, GaussRat::one());
        assert!(a.checked_div(&GaussRat::zero()).is_none());
    }

    #[test]
    fn monomial_product_merges() {
        let a = Monomial::from_pairs(vec![(1, 1), (0, 2)]);
        let b = Monomial::from_pairs(vec![(1, 3), (2, 1)]);
        assert_eq!(a.mul(&b).pairs(), &[(0, 2), (1, 4), (2, 1)]);
        assert_eq!(a.mul(&b).halved(), None);
        assert_eq!(
            Monomial::from_pairs(vec![(0, 4)]).halved(),
            Some(Monomial::from_pairs(vec![(0, 2)]))
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let x: Poly<GaussInt> = Poly::var(0);
        let d = x.sub(&x);
        assert!(d.is_zero());
    }

    #[test]
    fn display_orders_by_degree() {
        let x: Poly<GaussRat> = Poly::var(0);
        let y: Poly<GaussRat> = Poly::var(1);
        let mut p = x.mul(&y);
        p.add_assign(&Poly::constant(GaussRat::new(rat(0, 1), rat(-1, 1))));
        p.add_assign(&x);
        p.add_assign(&y.scale(&GaussRat::new(rat(0, 1), rat(1, 1))));
        assert_eq!(p.display(&names()).to_string(), "x*y + x + i*y - i");
        let q = Poly::constant(GaussRat::new(rat(1, 2), rat(-3, 1)));
        assert_eq!(q.display(&names()).to_string(), "(1/2-3*i)");
        assert_eq!(Poly::<GaussRat>::zero().display(&names()).to_string(), "0");
        let r = x.scale(&GaussRat::from_int(-2));
        assert_eq!(r.display(&names()).to_string(), "-2*x");
    }
}
