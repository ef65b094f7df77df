#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use surface_ising::embedding::{EmbeddedGraph, Weight};
use surface_ising::generate::{random_instance, small_signatures, RandomParams};
use surface_ising::terminal::{build_terminal, TerminalGraph};

/// Connected components with at most `max_terminals` terminals drawn from
/// random instances, `per_signature` of them for each small signature.
pub fn small_components(per_signature: usize, max_terminals: usize) -> Vec<(String, TerminalGraph)> {
    let p = RandomParams::default();
    let mut out = Vec::new();
    for sig in small_signatures() {
        let mut found = 0;
        let mut seed = 0;
        while found < per_signature {
            let g = random_instance(sig, seed, &p);
            let (comps, _) = g.split_components().unwrap();
            for (i, c) in comps.iter().enumerate() {
                let gt = build_terminal(&c.normalize()).unwrap();
                if gt.num_terminals() <= max_terminals && found < per_signature {
                    out.push((format!("{sig} seed {seed} component {i}"), gt));
                    found += 1;
                }
            }
            seed += 1;
        }
    }
    out
}

/// Replaces each symbol by the rational in `values`.
pub fn substitute(g: &EmbeddedGraph, values: &HashMap<String, BigRational>) -> EmbeddedGraph {
    let mut h = g.clone();
    for e in &mut h.edges {
        if let Weight::Symbol(s) = &e.weight {
            if let Some(v) = values.get(s) {
                e.weight = Weight::Rational(v.clone());
            }
        }
    }
    h
}
