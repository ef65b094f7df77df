//! High-temperature partition functions `Z_I(G, x)` from Pfaffians, with an
//! even-subgraph enumeration oracle and the Boltzmann conversion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::{EmbeddedGraph, Weight};
use crate::error::{Error, Result};
use crate::homology::{arf, enumerate_enhancements, enumerate_forms, gauss_sum, QuadraticEnhancement, Z2Vector};
use crate::orientation::{construct_good, construct_good_seeded, variant, Orientation};
use crate::pfaffian::{
    build_adjacency, build_adjacency_numeric, class_values, matching_sign, pfaffian_exact, pfaffian_numeric,
    to_weights,
};
use crate::poly::{GaussInt, GaussRat, Monomial, Poly};
use crate::terminal::{build_terminal, TerminalGraph};

/// Size bound of the exact Pfaffian inside the evaluators.
pub const PIPELINE_EXACT_BOUND: usize = 64;
/// Largest cycle-space dimension the enumeration oracle accepts.
pub const BRUTEFORCE_BOUND: usize = 24;
/// Allowed imaginary residual relative to the value in numeric mode.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Practical,
    General,
    Bruteforce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Practical => "practical",
            Method::General => "general",
            Method::Bruteforce => "bruteforce",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Values of symbolic weights, used in numeric mode.
    pub values: HashMap<String, f64>,
    /// Worker threads for the Pfaffian sweep; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Seed for the initial long-edge directions of the good orientation.
    pub orientation_seed: Option<u64>,
    pub exact_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Poly<GaussRat>),
    Numeric(f64),
}

impl Value {
    pub fn as_exact(&self) -> Option<&Poly<GaussRat>> {
        match self {
            Value::Exact(p) => Some(p),
            Value::Numeric(_) => None,
        }
    }

    pub fn as_f64(&self, values: &HashMap<String, f64>, symbols: &[String]) -> Result<f64> {
        match self {
            Value::Numeric(v) => Ok(*v),
            Value::Exact(p) => {
                let vals = symbols
                    .iter()
                    .map(|s| values.get(s).copied().ok_or_else(|| Error::MissingValue(s.clone())))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(p.eval_f64(&vals).0)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PfValue {
    Exact(Poly<GaussRat>),
    Numeric(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PfaffianRow {
    pub component: usize,
    pub flips: Z2Vector,
    pub value: PfValue,
}

#[derive(Clone, Debug)]
pub struct PartitionResult {
    pub value: Value,
    pub method: Method,
    pub mode: Mode,
    /// Variable names of exact values.
    pub symbols: Vec<String>,
    pub pfaffians: Vec<PfaffianRow>,
    /// `ε_0` of each component (general method only).
    pub epsilon0: Vec<i8>,
    /// Largest relative imaginary residual met (numeric mode).
    pub residual: f64,
}

/// A connected component ready for Pfaffian evaluation.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub gt: TerminalGraph,
    pub k0: Orientation,
    pub epsilon0: i8,
}

pub fn prepare_component(g: &EmbeddedGraph, seed: Option<u64>) -> Result<Prepared> {
    let gt = build_terminal(&g.normalize())?;
    let k0 = match seed {
        Some(s) => construct_good_seeded(&gt, s)?,
        None => construct_good(&gt)?,
    };
    let epsilon0 = epsilon0(&gt, &k0)?;
    Ok(Prepared { gt, k0, epsilon0 })
}

/// `ε_0 = ε^{K_0}(D_0)·(−1)^{t(D_0)}` for the standard dimer `D_0`.
pub fn epsilon0(gt: &TerminalGraph, k0: &Orientation) -> Result<i8> {
    let d0 = gt.standard_dimer();
    let s = matching_sign(gt, k0, &d0)?;
    Ok(if gt.t_parity(&d0)? { -s } else { s })
}

fn prepare(g: &EmbeddedGraph, opts: &Options) -> Result<Vec<Prepared>> {
    let (comps, _) = g.split_components()?;
    comps.iter().map(|c| prepare_component(c, opts.orientation_seed)).collect()
}

fn run_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::BadSpec(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Pfaffian of the variant `K_f` for each flips vector, in input order.
pub fn pfaffians(
    p: &Prepared,
    flips: &[Z2Vector],
    mode: Mode,
    symbols: &[String],
    opts: &Options,
) -> Result<Vec<PfValue>> {
    let bound = opts.exact_bound.unwrap_or(PIPELINE_EXACT_BOUND);
    let values = match mode {
        Mode::Numeric => Some(class_values(&p.gt.classes, &opts.values)?),
        Mode::Exact => None,
    };
    let one = |f: &Z2Vector| -> Result<PfValue> {
        let k = variant(&p.gt, &p.k0, f)?;
        match &values {
            None => {
                let a = build_adjacency(&p.gt, &k, true, None)?;
                let pf = pfaffian_exact(&a, bound)?;
                Ok(PfValue::Exact(to_weights(&pf, &p.gt.classes, symbols)?))
            }
            Some(v) => {
                let a = build_adjacency_numeric(&p.gt, &k, true, v, None)?;
                Ok(PfValue::Numeric(pfaffian_numeric(&a)?))
            }
        }
    };
    // Components without outside edges see the same matrix for every flip.
    if p.gt.outside_edges().is_empty() && !flips.is_empty() {
        let v = one(&flips[0])?;
        return Ok(vec![v; flips.len()]);
    }
    run_pool(opts.threads, || flips.par_iter().map(one).collect::<Result<Vec<_>>>())?
}

fn gauss_to_complex(g: GaussInt) -> Complex64 {
    Complex64::new(g.re as f64, g.im as f64)
}

fn gauss_rat(g: GaussInt) -> GaussRat {
    g.to_rat()
}

fn scale_rat(p: &Poly<GaussRat>, c: &GaussRat) -> Poly<GaussRat> {
    p.scale(c)
}

fn combine_exact(terms: Vec<(GaussRat, Poly<GaussRat>)>) -> Poly<GaussRat> {
    let mut acc = Poly::zero();
    for (c, p) in terms {
        acc.add_assign(&scale_rat(&p, &c));
    }
    acc
}

fn combine_numeric(terms: &[(Complex64, Complex64)]) -> Complex64 {
    terms.iter().map(|(c, v)| c * v).sum()
}

fn positive_real(p: Poly<GaussRat>, what: &str, normalize_sign: bool) -> Result<Poly<GaussRat>> {
    if !p.is_real() {
        return Err(Error::ExactPhase(format!("{what}: non-real result")));
    }
    let c = p.constant_term();
    if c.re.is_negative() {
        if normalize_sign {
            return Ok(p.neg());
        }
        return Err(Error::ExactPhase(format!("{what}: negative result")));
    }
    if c.re.is_zero() && !p.is_zero() {
        return Err(Error::ExactPhase(format!("{what}: vanishing constant term")));
    }
    Ok(p)
}

fn check_residual(z: Complex64, value: f64) -> Result<f64> {
    let residual = z.im.abs();
    if residual > RESIDUAL_TOLERANCE * value.abs() || !value.is_finite() {
        return Err(Error::PhaseResidual { residual, value });
    }
    Ok(if value == 0.0 { 0.0 } else { residual / value.abs() })
}

struct ComponentValue {
    value: Value,
    rows: Vec<(Z2Vector, PfValue)>,
    residual: f64,
}

/// `Σ_Δ i^{q̃_0(Δ)} Pf(K_{JΔ})` divided by the Gauss sum of `q̃_0`; its
/// absolute value is `Z_I`.
fn practical_component(p: &Prepared, mode: Mode, symbols: &[String], opts: &Options) -> Result<ComponentValue> {
    let q0 = p.gt.signature().reference_enhancement();
    let form = &p.gt.form;
    let deltas: Vec<Z2Vector> = Z2Vector::all(form.dim()).collect();
    let flips: Vec<Z2Vector> = deltas.iter().map(|d| form.apply(d)).collect();
    let pfs = pfaffians(p, &flips, mode, symbols, opts)?;
    let g = gauss_sum(&q0);
    let phases: Vec<GaussInt> = deltas.iter().map(|d| GaussInt::i_pow(q0.eval(d).unwrap() as i64)).collect();
    let rows: Vec<(Z2Vector, PfValue)> = flips.iter().cloned().zip(pfs.iter().cloned()).collect();
    let value = match mode {
        Mode::Exact => {
            let s = combine_exact(
                phases
                    .iter()
                    .zip(&pfs)
                    .map(|(ph, pf)| match pf {
                        PfValue::Exact(x) => (gauss_rat(*ph), x.clone()),
                        PfValue::Numeric(_) => unreachable!(),
                    })
                    .collect(),
            );
            let inv = GaussRat::from_int(1)
                .checked_div(&gauss_rat(g))
                .ok_or_else(|| Error::ExactPhase("zero Gauss sum".into()))?;
            let z = positive_real(s.scale(&inv), "practical", true)?;
            return Ok(ComponentValue {
                value: Value::Exact(z),
                rows,
                residual: 0.0,
            });
        }
        Mode::Numeric => {
            let terms: Vec<(Complex64, Complex64)> = phases
                .iter()
                .zip(&pfs)
                .map(|(ph, pf)| match pf {
                    PfValue::Numeric(x) => (gauss_to_complex(*ph), *x),
                    PfValue::Exact(_) => unreachable!(),
                })
                .collect();
            let s = combine_numeric(&terms);
            let z = s / gauss_to_complex(g);
            let z = if z.re < 0.0 { -z } else { z };
            (z, z.norm())
        }
    };
    let (z, v) = value;
    let residual = check_residual(z, v)?;
    Ok(ComponentValue {
        value: Value::Numeric(v),
        rows,
        residual,
    })
}

/// `ε_0 Σ_q conj(G(q))/2^{b1} Pf(K_q)` over all enhancements, or
/// `ε_0/2^g Σ_q (−1)^{Arf(q)} Pf(K_q)` over quadratic forms when orientable.
fn general_component(p: &Prepared, mode: Mode, symbols: &[String], opts: &Options) -> Result<ComponentValue> {
    let sig = p.gt.signature();
    let b1 = sig.b1();
    let (flips, coeffs): (Vec<Z2Vector>, Vec<GaussRat>) = if sig.is_orientable() {
        let g = sig.genus;
        let denom = BigRational::from_integer(BigInt::one() << g);
        enumerate_forms(&p.gt.form)?
            .into_iter()
            .map(|q| {
                let sign = if arf(&q).unwrap() == 1 { -1 } else { 1 };
                let c = GaussRat::real(BigRational::from_integer(sign.into()) / &denom);
                (Z2Vector::from_slice(q.basis_values()), c)
            })
            .unzip()
    } else {
        let q0 = sig.reference_enhancement();
        let denom = BigRational::from_integer(BigInt::one() << b1);
        enumerate_enhancements(&sig)
            .into_iter()
            .map(|q| {
                let g = gauss_sum(&q).conj().to_rat();
                let c = GaussRat::new(g.re / &denom, g.im / &denom);
                (q.difference(&q0).unwrap(), c)
            })
            .unzip()
    };
    let pfs = pfaffians(p, &flips, mode, symbols, opts)?;
    let eps = p.epsilon0 as i64;
    let rows: Vec<(Z2Vector, PfValue)> = flips.iter().cloned().zip(pfs.iter().cloned()).collect();
    match mode {
        Mode::Exact => {
            let terms = coeffs
                .iter()
                .zip(&pfs)
                .map(|(c, pf)| match pf {
                    PfValue::Exact(x) => (c.clone(), x.clone()),
                    PfValue::Numeric(_) => unreachable!(),
                })
                .collect();
            let z = combine_exact(terms).scale(&GaussRat::from_int(eps));
            let z = positive_real(z, "general", false)?;
            Ok(ComponentValue {
                value: Value::Exact(z),
                rows,
                residual: 0.0,
            })
        }
        Mode::Numeric => {
            let terms: Vec<(Complex64, Complex64)> = coeffs
                .iter()
                .zip(&pfs)
                .map(|(c, pf)| match pf {
                    PfValue::Numeric(x) => {
                        let (re, im) = c.to_f64_pair();
                        (Complex64::new(re, im), *x)
                    }
                    PfValue::Exact(_) => unreachable!(),
                })
                .collect();
            let z = combine_numeric(&terms) * eps as f64;
            let residual = check_residual(z, z.re)?;
            if z.re < 0.0 {
                return Err(Error::PhaseResidual {
                    residual: z.im.abs(),
                    value: z.re,
                });
            }
            Ok(ComponentValue {
                value: Value::Numeric(z.re),
                rows,
                residual,
            })
        }
    }
}

fn numeric_weights(g: &EmbeddedGraph, values: &HashMap<String, f64>) -> Result<Vec<f64>> {
    g.edges
        .iter()
        .map(|e| match &e.weight {
            Weight::Rational(r) => Ok(crate::poly::rat_to_f64(r)),
            Weight::Symbol(s) => values.get(s).copied().ok_or_else(|| Error::MissingValue(s.clone())),
        })
        .collect()
}

/// Evaluates `Z_I(G, x)` with the chosen method.
pub fn compute(g: &EmbeddedGraph, method: Method, mode: Mode, opts: &Options) -> Result<PartitionResult> {
    g.check()?;
    let symbols = g.symbols();
    if mode == Mode::Numeric {
        numeric_weights(g, &opts.values)?;
    }
    if method == Method::Bruteforce {
        let z = z_bruteforce(g)?;
        let value = match mode {
            Mode::Exact => Value::Exact(z),
            Mode::Numeric => Value::Numeric(Value::Exact(z).as_f64(&opts.values, &symbols)?),
        };
        return Ok(PartitionResult {
            value,
            method,
            mode,
            symbols,
            pfaffians: Vec::new(),
            epsilon0: Vec::new(),
            residual: 0.0,
        });
    }
    let comps = prepare(g, opts)?;
    let mut exact = Poly::<GaussRat>::one();
    let mut numeric = 1.0f64;
    let mut rows = Vec::new();
    let mut residual = 0.0f64;
    for (i, p) in comps.iter().enumerate() {
        let cv = match method {
            Method::Practical => practical_component(p, mode, &symbols, opts)?,
            Method::General => general_component(p, mode, &symbols, opts)?,
            Method::Bruteforce => unreachable!(),
        };
        match cv.value {
            Value::Exact(z) => exact = exact.mul(&z),
            Value::Numeric(z) => numeric *= z,
        }
        residual = residual.max(cv.residual);
        rows.extend(cv.rows.into_iter().map(|(flips, value)| PfaffianRow {
            component: i,
            flips,
            value,
        }));
    }
    let value = match mode {
        Mode::Exact => Value::Exact(exact),
        Mode::Numeric => Value::Numeric(numeric),
    };
    Ok(PartitionResult {
        value,
        method,
        mode,
        symbols,
        pfaffians: rows,
        epsilon0: comps.iter().map(|p| p.epsilon0).collect(),
        residual,
    })
}

pub fn z_practical(g: &EmbeddedGraph) -> Result<Poly<GaussRat>> {
    exact_value(compute(g, Method::Practical, Mode::Exact, &Options::default())?)
}

pub fn z_general(g: &EmbeddedGraph) -> Result<Poly<GaussRat>> {
    exact_value(compute(g, Method::General, Mode::Exact, &Options::default())?)
}

fn exact_value(r: PartitionResult) -> Result<Poly<GaussRat>> {
    match r.value {
        Value::Exact(p) => Ok(p),
        Value::Numeric(_) => unreachable!(),
    }
}

/// Pfaffian of every variant `K_f` of a connected graph, ordered by `f`.
pub fn pfaffian_table(g: &EmbeddedGraph, mode: Mode, opts: &Options) -> Result<Vec<PfaffianRow>> {
    g.check()?;
    let symbols = g.symbols();
    let comps = prepare(g, opts)?;
    let mut rows = Vec::new();
    for (i, p) in comps.iter().enumerate() {
        let flips: Vec<Z2Vector> = Z2Vector::all(p.gt.form.dim()).collect();
        let pfs = pfaffians(p, &flips, mode, &symbols, opts)?;
        rows.extend(flips.into_iter().zip(pfs).map(|(flips, value)| PfaffianRow {
            component: i,
            flips,
            value,
        }));
    }
    Ok(rows)
}

/// Even subgraphs grouped by homology class: `class → Σ_{[P]=class} x(P)`.
pub fn z_per_class(g: &EmbeddedGraph) -> Result<BTreeMap<Z2Vector, Poly<GaussRat>>> {
    let idx = g.check()?;
    let ne = g.edges.len();
    let dim = g.cycle_rank()?;
    if dim > BRUTEFORCE_BOUND {
        return Err(Error::OracleBound {
            dim,
            bound: BRUTEFORCE_BOUND,
        });
    }
    let classes = g.weight_classes();
    let class_of: Vec<usize> = g
        .edges
        .iter()
        .map(|e| classes.binary_search(&e.weight).expect("class listed"))
        .collect();
    let crossing: Vec<u64> = (0..ne)
        .map(|e| g.crossing_vector(&idx, e).map(|v| v.bits()))
        .collect::<Result<_>>()?;
    let cycles = fundamental_cycles(g)?;
    debug_assert_eq!(cycles.len(), dim);

    let mut member = vec![false; ne];
    let mut counts = vec![0u32; classes.len()];
    let mut class = 0u64;
    let mut tally: HashMap<(u64, Vec<u32>), u64> = HashMap::new();
    *tally.entry((0, counts.clone())).or_default() += 1;
    for step in 1u64..(1u64 << dim) {
        let c = &cycles[step.trailing_zeros() as usize];
        for &e in c {
            member[e] = !member[e];
            class ^= crossing[e];
            if member[e] {
                counts[class_of[e]] += 1;
            } else {
                counts[class_of[e]] -= 1;
            }
        }
        *tally.entry((class, counts.clone())).or_default() += 1;
    }

    let symbols = g.symbols();
    let b1 = g.signature.b1();
    let mut out: BTreeMap<Z2Vector, Poly<GaussRat>> = BTreeMap::new();
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort();
    for ((class, counts), n) in keys {
        let mut coeff = BigRational::from_integer(BigInt::from(n));
        let mut pairs = Vec::new();
        for (c, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            match &classes[c] {
                Weight::Rational(r) => coeff *= num_traits::pow(r.clone(), k as usize),
                Weight::Symbol(s) => pairs.push((symbols.binary_search(s).expect("listed") as u32, k)),
            }
        }
        out.entry(Z2Vector::from_bits(b1, class))
            .or_insert_with(Poly::zero)
            .add_term(Monomial::from_pairs(pairs), GaussRat::real(coeff));
    }
    Ok(out)
}

/// Edge sets of a fundamental cycle basis of the cycle space.
fn fundamental_cycles(g: &EmbeddedGraph) -> Result<Vec<Vec<usize>>> {
    let idx = g.check()?;
    let nv = g.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, e) in g.edges.iter().enumerate() {
        let (a, b) = (idx.vertex_of(e.u), idx.vertex_of(e.v));
        adj[a].push((b, i));
        if a != b {
            adj[b].push((a, i));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree = vec![false; g.edges.len()];
    for root in 0..nv {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        let (mut a, mut b) = (idx.vertex_of(e.u), idx.vertex_of(e.v));
        let mut cyc = vec![i];
        while a != b {
            if depth[a] >= depth[b] {
                let (p, f) = parent[a].expect("non-root");
                cyc.push(f);
                a = p;
            } else {
                let (p, f) = parent[b].expect("non-root");
                cyc.push(f);
                b = p;
            }
        }
        cycles.push(cyc);
    }
    Ok(cycles)
}

/// `Σ_P x(P)` over all even subgraphs.
pub fn z_bruteforce(g: &EmbeddedGraph) -> Result<Poly<GaussRat>> {
    let mut z = Poly::zero();
    for p in z_per_class(g)?.values() {
        z.add_assign(p);
    }
    Ok(z)
}

/// `Z^q = Σ_α i^{q(α)} Z_α` from the class table.
pub fn z_q(g: &EmbeddedGraph, q: &QuadraticEnhancement) -> Result<Poly<GaussRat>> {
    let mut z = Poly::zero();
    for (alpha, p) in z_per_class(g)? {
        z.add_assign(&p.scale(&GaussInt::i_pow(q.eval(&alpha)? as i64).to_rat()));
    }
    Ok(z)
}

/// `Z^q` of a connected graph from a single Pfaffian:
/// `ε_0 · i^{−q([D_0]) − 2ω([D_0])} · Pf(K_f)` with `f = (q − q̃_0)/2 + J[D_0]`.
pub fn z_q_pfaffian(g: &EmbeddedGraph, q: &QuadraticEnhancement) -> Result<Poly<GaussRat>> {
    let (comps, _) = g.split_components()?;
    let symbols = g.symbols();
    match comps.len() {
        0 => return Ok(Poly::one()),
        1 => {}
        n => return Err(Error::BadSpec(format!("graph has {n} components"))),
    }
    let p = prepare_component(&comps[0], None)?;
    let gt = &p.gt;
    let q0 = gt.signature().reference_enhancement();
    let d0 = gt.class_of(&gt.standard_dimer());
    let f = q.difference(&q0)?.add(&gt.form.apply(&d0));
    let omega = gt.form.omega().eval(&d0) as i64;
    let phase = GaussInt::i_pow(-(q.eval(&d0)? as i64) - 2 * omega + if p.epsilon0 < 0 { 2 } else { 0 });
    let opts = Options::default();
    let pf = pfaffians(&p, &[f], Mode::Exact, &symbols, &opts)?;
    match &pf[0] {
        PfValue::Exact(x) => Ok(x.scale(&phase.to_rat())),
        PfValue::Numeric(_) => unreachable!(),
    }
}

/// Couplings `J_e`: per weight symbol, with a default for everything else.
#[derive(Clone, Debug)]
pub struct Couplings {
    pub default: f64,
    pub per_symbol: BTreeMap<String, f64>,
}

impl Default for Couplings {
    fn default() -> Self {
        Couplings {
            default: 1.0,
            per_symbol: BTreeMap::new(),
        }
    }
}

impl Couplings {
    pub fn of(&self, w: &Weight) -> f64 {
        match w {
            Weight::Symbol(s) => self.per_symbol.get(s).copied().unwrap_or(self.default),
            Weight::Rational(_) => self.default,
        }
    }
}

/// `Z_β = 2^{|V|} Π_e cosh(βJ_e) · Z_I(G, tanh βJ_e)`.
pub fn boltzmann(g: &EmbeddedGraph, beta: f64, couplings: &Couplings, opts: &Options) -> Result<f64> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::NonPositive(format!("beta = {beta}")));
    }
    let mut h = g.clone();
    let mut values = HashMap::new();
    let mut prefactor = (g.vertices.len() as f64) * std::f64::consts::LN_2;
    for e in &mut h.edges {
        let j = if e.auxiliary { 0.0 } else { couplings.of(&e.weight) };
        if (j.is_nan() || j <= 0.0) && !e.auxiliary {
            return Err(Error::NonPositive(format!("coupling of edge {}", e.id)));
        }
        prefactor += (beta * j).cosh().ln();
        let name = format!("J{}", j.to_bits());
        values.insert(name.clone(), (beta * j).tanh());
        e.weight = Weight::Symbol(name);
    }
    if g.edges.is_empty() {
        return Ok(prefactor.exp());
    }
    let o = Options {
        values,
        ..opts.clone()
    };
    let r = compute(&h, Method::Practical, Mode::Numeric, &o)?;
    match r.value {
        Value::Numeric(z) => Ok(z * prefactor.exp()),
        Value::Exact(_) => unreachable!(),
    }
}

/// `Z_β` by summing over all spin assignments (at most 24 vertices).
pub fn boltzmann_bruteforce(g: &EmbeddedGraph, beta: f64, couplings: &Couplings) -> Result<f64> {
    let idx = g.check()?;
    let n = g.vertices.len();
    if n > 24 {
        return Err(Error::OracleBound { dim: n, bound: 24 });
    }
    let edges: Vec<(usize, usize, f64)> = g
        .edges
        .iter()
        .map(|e| (idx.vertex_of(e.u), idx.vertex_of(e.v), couplings.of(&e.weight)))
        .collect();
    let mut z = 0.0;
    for s in 0u32..(1u32 << n) {
        let spin = |v: usize| if s >> v & 1 == 1 { 1.0 } else { -1.0 };
        let energy: f64 = edges.iter().map(|&(a, b, j)| j * spin(a) * spin(b)).sum();
        z += (beta * energy).exp();
    }
    Ok(z)
}
