use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value as Json};

use surface_ising::embedding::{parse_rational, EmbeddedGraph, Weight};
use surface_ising::generate::{generate, random_instance, Family, GeneratorSpec, RandomParams};
use surface_ising::homology::{SurfaceKind, SurfaceSignature};
use surface_ising::orientation::construct_good;
use surface_ising::partition::{
    boltzmann, compute, pfaffian_table, Couplings, Method, Mode, Options, PfValue, PfaffianRow, Value,
};
use surface_ising::poly::rat_to_f64;
use surface_ising::terminal::build_terminal;
use surface_ising::verify::{verify, Status};
use surface_ising::{Error, Result};

#[derive(Parser)]
#[command(name = "surface-ising", version, about = "Ising partition functions of graphs on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Gen {
        /// torus, klein, rp2, planar or random
        family: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Two comma-separated weights (symbols or rationals).
        #[arg(long, default_value = "x,y")]
        weights: String,
        /// Surface of random instances: orientable, klein or projective.
        #[arg(long, default_value = "orientable")]
        surface: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the partition function.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Practical)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Inverse temperature; switches to Z_β with x_e = tanh(βJ_e).
        #[arg(long)]
        beta: Option<f64>,
        /// Coupling J, either a default value or symbol=value; repeatable.
        #[arg(long)]
        coupling: Vec<String>,
        /// Weight value symbol=value; repeatable.
        #[arg(long = "set")]
        set: Vec<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Tabulate the Pfaffian of every orientation variant.
    Pfaffians {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long = "set")]
        set: Vec<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check validity, orientations, the sign law and evaluator agreement.
    Verify {
        file: PathBuf,
        /// Orientation to check instead of the constructed one.
        #[arg(long)]
        orientation: Option<PathBuf>,
        /// Write the constructed orientation here.
        #[arg(long)]
        write_orientation: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Practical,
    General,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Practical => Method::Practical,
            MethodArg::General => Method::General,
            MethodArg::Bruteforce => Method::Bruteforce,
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<EmbeddedGraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::BadSpec(format!("cannot read {}: {e}", path.display())))?;
    EmbeddedGraph::from_json(&text)
}

/// Rows in `(component, flips)` order, flips read as a bit string.
fn sorted_rows(rows: &[PfaffianRow]) -> Vec<&PfaffianRow> {
    let mut out: Vec<&PfaffianRow> = rows.iter().collect();
    out.sort_by_key(|r| (r.component, r.flips.to_string()));
    out
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for it in items {
        let (k, v) = it
            .split_once('=')
            .ok_or_else(|| Error::BadSpec(format!("expected name=value, got {it:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_number(s: &str) -> Result<f64> {
    parse_rational(s)
        .map(|r| rat_to_f64(&r))
        .ok_or_else(|| Error::BadWeight(s.to_string()))
}

/// Substitutes exact values for symbols in exact mode.
fn substitute(g: &EmbeddedGraph, set: &BTreeMap<String, String>) -> Result<EmbeddedGraph> {
    let mut h = g.clone();
    for e in &mut h.edges {
        if let Weight::Symbol(s) = &e.weight {
            if let Some(v) = set.get(s) {
                e.weight = Weight::Rational(parse_rational(v).ok_or_else(|| Error::BadWeight(v.clone()))?);
            }
        }
    }
    Ok(h)
}

fn numeric_values(set: &BTreeMap<String, String>) -> Result<HashMap<String, f64>> {
    set.iter().map(|(k, v)| Ok((k.clone(), parse_number(v)?))).collect()
}

fn threads(arg: Option<usize>) -> Result<Option<usize>> {
    if arg.is_some() {
        return Ok(arg);
    }
    match std::env::var("SURFACE_ISING_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::BadSpec(format!("SURFACE_ISING_THREADS={v:?} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn complex_string(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn pf_string(v: &PfValue, symbols: &[String]) -> String {
    match v {
        PfValue::Exact(p) => p.display(symbols).to_string(),
        PfValue::Numeric(z) => complex_string(*z),
    }
}

fn run_gen(
    family: &str,
    m: usize,
    n: usize,
    weights: &str,
    surface: &str,
    genus: usize,
    seed: u64,
) -> Result<EmbeddedGraph> {
    if family == "random" {
        let kind = match surface {
            "orientable" => SurfaceKind::Orientable,
            "klein" => SurfaceKind::KleinSum,
            "projective" => SurfaceKind::ProjectiveSum,
            other => return Err(Error::BadSpec(format!("unknown surface {other:?}"))),
        };
        return Ok(random_instance(
            SurfaceSignature::new(kind, genus),
            seed,
            &RandomParams::default(),
        ));
    }
    let (a, b) = weights
        .split_once(',')
        .ok_or_else(|| Error::BadSpec(format!("expected two weights, got {weights:?}")))?;
    let spec = GeneratorSpec {
        family: family.parse::<Family>()?,
        m,
        n,
        weights: (a.trim().parse()?, b.trim().parse()?),
    };
    generate(&spec)
}

#[allow(clippy::too_many_arguments)]
fn run_compute(
    file: &PathBuf,
    method: Method,
    mode: Mode,
    beta: Option<f64>,
    coupling: &[String],
    set: &[String],
    json_out: bool,
    threads_arg: Option<usize>,
) -> Result<String> {
    let g = read_graph(file)?;
    let set = parse_assignments(set)?;
    let opts = Options {
        values: numeric_values(&set)?,
        threads: threads(threads_arg)?,
        ..Options::default()
    };
    if let Some(beta) = beta {
        let mut c = Couplings::default();
        for item in coupling {
            match item.split_once('=') {
                Some((k, v)) => {
                    c.per_symbol.insert(k.trim().to_string(), parse_number(v.trim())?);
                }
                None => c.default = parse_number(item)?,
            }
        }
        let z = boltzmann(&g, beta, &c, &opts)?;
        return Ok(if json_out {
            let v = json!({
                "schema": 1,
                "quantity": "boltzmann",
                "beta": beta,
                "couplings": {"default": c.default, "per_symbol": c.per_symbol},
                "value": z,
            });
            serde_json::to_string_pretty(&v).expect("json")
        } else {
            format!("Z_beta = {z}")
        });
    }
    let g = if mode == Mode::Exact { substitute(&g, &set)? } else { g };
    let r = compute(&g, method, mode, &opts)?;
    let value_str = match &r.value {
        Value::Exact(p) => p.display(&r.symbols).to_string(),
        Value::Numeric(v) => format!("{v}"),
    };
    if json_out {
        let pf: Vec<Json> = sorted_rows(&r.pfaffians)
            .into_iter()
            .map(|row| {
                json!({
                    "component": row.component,
                    "flips": row.flips.to_string(),
                    "value": pf_string(&row.value, &r.symbols),
                })
            })
            .collect();
        let value = match &r.value {
            Value::Exact(_) => Json::String(value_str),
            Value::Numeric(v) => json!(v),
        };
        let v = json!({
            "schema": 1,
            "quantity": "z_i",
            "method": r.method,
            "mode": r.mode,
            "symbols": r.symbols,
            "value": value,
            "epsilon0": r.epsilon0,
            "residual": r.residual,
            "pfaffians": pf,
        });
        Ok(serde_json::to_string_pretty(&v).expect("json"))
    } else {
        Ok(format!("Z_I = {value_str}"))
    }
}

fn run_pfaffians(
    file: &PathBuf,
    mode: Mode,
    set: &[String],
    json_out: bool,
    threads_arg: Option<usize>,
) -> Result<String> {
    let g = read_graph(file)?;
    let set = parse_assignments(set)?;
    let g = if mode == Mode::Exact { substitute(&g, &set)? } else { g };
    let opts = Options {
        values: numeric_values(&set)?,
        threads: threads(threads_arg)?,
        ..Options::default()
    };
    let symbols = g.symbols();
    let rows = pfaffian_table(&g, mode, &opts)?;
    if json_out {
        let v: Vec<Json> = sorted_rows(&rows)
            .into_iter()
            .map(|r| {
                json!({
                    "component": r.component,
                    "flips": r.flips.to_string(),
                    "value": pf_string(&r.value, &symbols),
                })
            })
            .collect();
        Ok(serde_json::to_string_pretty(&json!({"schema": 1, "pfaffians": v})).expect("json"))
    } else {
        let mut out = String::from("component\tflips\tpfaffian");
        for r in sorted_rows(&rows) {
            out.push_str(&format!("\n{}\t{}\t{}", r.component, r.flips, pf_string(&r.value, &symbols)));
        }
        Ok(out)
    }
}

fn run_verify(
    file: &PathBuf,
    orientation: Option<&PathBuf>,
    write: Option<&PathBuf>,
    json_out: bool,
) -> Result<(String, bool)> {
    let g = read_graph(file)?;
    let text = orientation.map(fs::read_to_string).transpose()?;
    let report = verify(&g, text.as_deref());
    if let Some(path) = write {
        let (comps, _) = g.split_components()?;
        let [c] = comps.as_slice() else {
            return Err(Error::BadSpec(format!(
                "orientation output needs a connected instance, found {} components",
                comps.len()
            )));
        };
        let gt = build_terminal(&c.normalize())?;
        let k = construct_good(&gt)?;
        fs::write(path, k.to_json(&gt) + "\n")?;
    }
    let passed = report.passed();
    let out = if json_out {
        serde_json::to_string_pretty(&report).expect("json")
    } else {
        let mut lines = Vec::new();
        for c in &report.checks {
            lines.push(match &c.status {
                Status::Pass => format!("pass     {}", c.name),
                Status::Fail(d) => format!("FAIL     {}: {d}", c.name),
                Status::Skipped(d) => format!("skipped  {}: {d}", c.name),
            });
        }
        lines.push(if passed { "ok".into() } else { "failed".into() });
        lines.join("\n")
    };
    Ok((out, passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen {
            family,
            m,
            n,
            weights,
            surface,
            genus,
            seed,
            output,
        } => run_gen(family, *m, *n, weights, surface, *genus, *seed).and_then(|g| {
            let text = g.to_json() + "\n";
            match output {
                Some(p) => fs::write(p, text).map_err(Error::from).map(|_| (String::new(), true)),
                None => Ok((text.trim_end().to_string(), true)),
            }
        }),
        Command::Compute {
            file,
            method,
            mode,
            beta,
            coupling,
            set,
            json,
            threads,
        } => run_compute(
            file,
            (*method).into(),
            (*mode).into(),
            *beta,
            coupling,
            set,
            *json,
            *threads,
        )
        .map(|s| (s, true)),
        Command::Pfaffians {
            file,
            mode,
            set,
            json,
            threads,
        } => run_pfaffians(file, (*mode).into(), set, *json, *threads).map(|s| (s, true)),
        Command::Verify {
            file,
            orientation,
            write_orientation,
            json,
        } => run_verify(file, orientation.as_ref(), write_orientation.as_ref(), *json),
    };
    match result {
        Ok((out, ok)) => {
            if !out.is_empty() {
                println!("{out}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
