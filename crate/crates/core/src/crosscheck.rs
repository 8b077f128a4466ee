//! End-to-end comparison of the permutation formulas with the rewriting
//! oracle on a generated model, summarised as a machine-readable report.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::perm::DecoratedPermutation;
use crate::plabic::realize;
use crate::presentation::{self, relations_admissible, relations_circ, PathSymbolWord};
use crate::rewrite::PathEngine;

pub const CHECKS: [&str; 5] = ["arrow_defining", "relation_numbers", "quiver", "relations", "substitutions"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Mismatch,
    Error,
}

/// A failed comparison with the smallest context that reproduces it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub permutation: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub outcome: Outcome,
    pub permutations: usize,
    pub checks: Vec<CheckCount>,
    pub mismatches: Vec<Mismatch>,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serialises");
        s.push('\n');
        s
    }
}

#[derive(Default)]
struct Tally {
    counts: [(usize, usize); CHECKS.len()],
    mismatches: Vec<Mismatch>,
    errors: Vec<String>,
}

impl Tally {
    fn record(&mut self, check: usize, ok: bool, miss: impl FnOnce() -> Mismatch) {
        if ok {
            self.counts[check].0 += 1;
        } else {
            self.counts[check].1 += 1;
            self.mismatches.push(miss());
        }
    }
}

fn check_one(p: &DecoratedPermutation) -> Tally {
    let mut t = Tally::default();
    let name = p.to_string();
    let fail = |e: &dyn std::fmt::Display| format!("{name}: {e}");
    let model = match realize(p) {
        Ok(m) => m,
        Err(e) => {
            t.errors.push(fail(&e));
            return t;
        }
    };
    let engine = match PathEngine::new(&model) {
        Ok(e) => e,
        Err(e) => {
            t.errors.push(fail(&e));
            return t;
        }
    };
    let verdicts = match engine.all_verdicts() {
        Ok(v) => v,
        Err(e) => {
            t.errors.push(fail(&e));
            return t;
        }
    };
    for v in &verdicts {
        let pair = Some((v.from, v.to));
        let want = presentation::is_arrow_defining(p, v.from, v.to).expect("pair in range");
        t.record(0, want == v.arrow_defining, || Mismatch {
            permutation: name.clone(),
            check: CHECKS[0].into(),
            pair,
            expected: want.to_string(),
            got: v.arrow_defining.to_string(),
        });
        let r = presentation::relation_numbers(p, v.from, v.to).expect("pair in range");
        t.record(1, (r.x, r.y) == (v.x, v.y), || Mismatch {
            permutation: name.clone(),
            check: CHECKS[1].into(),
            pair,
            expected: format!("{}:{}", r.x, r.y),
            got: format!("{}:{}", v.x, v.y),
        });
    }
    let formula = presentation::gabriel_quiver(p).expect("connected");
    match engine.oracle_quiver() {
        Ok(q) => t.record(2, q == formula, || Mismatch {
            permutation: name.clone(),
            check: CHECKS[2].into(),
            pair: None,
            expected: format!("{formula:?}"),
            got: format!("{q:?}"),
        }),
        Err(e) => t.errors.push(fail(&e)),
    }
    let adm = match relations_admissible(p) {
        Ok(a) => a,
        Err(e) => {
            t.errors.push(fail(&e));
            return t;
        }
    };
    let circ = relations_circ(p).expect("connected");
    for rel in circ.iter().chain(&adm.relations) {
        match engine.verify_relation(rel) {
            Ok(ok) => t.record(3, ok, || Mismatch {
                permutation: name.clone(),
                check: CHECKS[3].into(),
                pair: None,
                expected: rel.to_string(),
                got: "not equivalent".into(),
            }),
            Err(e) => t.errors.push(format!("{name}: {rel}: {e}")),
        }
    }
    for s in &adm.substitutions {
        let lhs = PathSymbolWord::symbol(p.n(), s.symbol);
        let holds = engine.expand(&lhs).and_then(|l| engine.expand(&s.word).and_then(|r| engine.equivalent(&l, &r)));
        match holds {
            Ok(ok) => t.record(4, ok, || Mismatch {
                permutation: name.clone(),
                check: CHECKS[4].into(),
                pair: None,
                expected: format!("{} = {}", s.symbol, s.word),
                got: "not equivalent".into(),
            }),
            Err(e) => t.errors.push(format!("{name}: {}: {e}", s.symbol)),
        }
    }
    t
}

/// Hex SHA-256 of the text describing the input.
pub fn digest(input: &str) -> String {
    Sha256::digest(input.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs every check on every permutation. Results are merged in input order,
/// so the report does not depend on scheduling.
pub fn crosscheck(command: &str, input: &str, perms: &[DecoratedPermutation]) -> RunReport {
    let tallies: Vec<Tally> = perms.par_iter().map(check_one).collect();
    let mut checks: Vec<CheckCount> = CHECKS.iter().map(|c| CheckCount { name: (*c).into(), ..Default::default() }).collect();
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    for t in tallies {
        for (c, (ok, bad)) in checks.iter_mut().zip(t.counts) {
            c.passed += ok;
            c.failed += bad;
        }
        mismatches.extend(t.mismatches);
        errors.extend(t.errors);
    }
    let outcome = if !errors.is_empty() {
        Outcome::Error
    } else if !mismatches.is_empty() {
        Outcome::Mismatch
    } else {
        Outcome::Ok
    };
    RunReport {
        command: command.into(),
        input_digest: digest(input),
        outcome,
        permutations: perms.len(),
        checks,
        mismatches,
        errors,
        wall_time_ms: None,
    }
}
