//! Self-checks of an instance: validity, good orientations, the sign law on
//! all perfect matchings, and agreement of the three evaluators.

use serde::Serialize;

use crate::embedding::EmbeddedGraph;
use crate::error::Result;
use crate::orientation::{check_good, construct_good, Orientation};
use crate::partition::{z_bruteforce, z_general, z_practical};
use crate::pfaffian::{matching_sign, perfect_matchings};
use crate::terminal::{build_terminal, TerminalGraph};

/// Largest terminal graph on which the sign law is checked exhaustively.
pub const SIGN_LAW_BOUND: usize = 12;
/// Largest cycle-space dimension for the three-way comparison.
pub const AGREEMENT_BOUND: usize = 16;
/// Largest terminal graph for the three-way comparison (exact Pfaffians).
pub const AGREEMENT_TERMINALS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, Status::Fail(_)))
    }
}

/// `Some(ε_0)` if `ε^K(D)(−1)^{t(D)}` takes the single value `ε_0` over every
/// perfect matching `D`, `None` otherwise.
pub fn sign_law(gt: &TerminalGraph, k: &Orientation) -> Result<Option<i8>> {
    let mut constant = None;
    for d in perfect_matchings(gt, usize::MAX)? {
        let s = matching_sign(gt, k, &d)? * if gt.t_parity(&d)? { -1 } else { 1 };
        match constant {
            None => constant = Some(s),
            Some(c) if c != s => return Ok(None),
            _ => {}
        }
    }
    Ok(constant)
}

fn check(name: impl Into<String>, status: Status) -> Check {
    Check {
        name: name.into(),
        status,
    }
}

/// Runs every check; `orientation` replaces the constructed one (connected
/// instances only).
pub fn verify(g: &EmbeddedGraph, orientation: Option<&str>) -> VerifyReport {
    let mut checks = Vec::new();
    let violations = g.validate();
    if !violations.is_empty() {
        let msg = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        checks.push(check("validate", Status::Fail(msg)));
        return VerifyReport { schema: 1, checks };
    }
    checks.push(check("validate", Status::Pass));

    let comps = match g.split_components() {
        Ok((c, _)) => c,
        Err(e) => {
            checks.push(check("components", Status::Fail(e.to_string())));
            return VerifyReport { schema: 1, checks };
        }
    };
    if orientation.is_some() && comps.len() != 1 {
        checks.push(check(
            "orientation file",
            Status::Fail(format!("needs a connected instance, found {} components", comps.len())),
        ));
    }
    let mut largest = 0;
    for (i, c) in comps.iter().enumerate() {
        let gt = match build_terminal(&c.normalize()) {
            Ok(t) => t,
            Err(e) => {
                checks.push(check(format!("terminal graph [{i}]"), Status::Fail(e.to_string())));
                continue;
            }
        };
        largest = largest.max(gt.num_terminals());
        let k = match (orientation, comps.len()) {
            (Some(text), 1) => Orientation::from_json(&gt, text),
            _ => construct_good(&gt),
        };
        let k = match k {
            Ok(k) => k,
            Err(e) => {
                checks.push(check(format!("good orientation [{i}]"), Status::Fail(e.to_string())));
                continue;
            }
        };
        let bad = check_good(&gt, &k);
        checks.push(check(
            format!("good orientation [{i}]"),
            if bad.is_empty() {
                Status::Pass
            } else {
                Status::Fail(bad.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))
            },
        ));
        let name = format!("sign law [{i}]");
        if gt.num_terminals() > SIGN_LAW_BOUND {
            checks.push(check(
                name,
                Status::Skipped(format!("bound: {} terminals > {SIGN_LAW_BOUND}", gt.num_terminals())),
            ));
        } else {
            checks.push(check(
                name,
                match sign_law(&gt, &k) {
                    Ok(Some(_)) => Status::Pass,
                    Ok(None) => Status::Fail("sign varies over perfect matchings".into()),
                    Err(e) => Status::Fail(e.to_string()),
                },
            ));
        }
    }

    let rank = g.cycle_rank().unwrap_or(usize::MAX);
    if rank > AGREEMENT_BOUND || largest > AGREEMENT_TERMINALS {
        checks.push(check(
            "practical = general = bruteforce",
            Status::Skipped(format!("bound: cycle rank {rank}, {largest} terminals")),
        ));
    } else {
        let status = match (z_practical(g), z_general(g), z_bruteforce(g)) {
            (Ok(p), Ok(q), Ok(b)) if p == b && q == b => Status::Pass,
            (Ok(_), Ok(_), Ok(_)) => Status::Fail("values differ".into()),
            (p, q, b) => Status::Fail(
                [p.err(), q.err(), b.err()]
                    .into_iter()
                    .flatten()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
        };
        checks.push(check("practical = general = bruteforce", status));
    }
    VerifyReport { schema: 1, checks }
}
