use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};
use crate::pentanomial::{assemble_f, build_bz, PentanomialSpec, Theorem};

use super::criterion::{criterion, CriterionDetails};
use super::mu::mu_reduction_permutes;
use super::oracle::{brute_force_permutes_with, Strategy, DEFAULT_ORACLE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub oracle_cap: u64,
    pub strategy: Strategy,
    pub run_oracle: bool,
    pub run_mu: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_cap: DEFAULT_ORACLE_CAP,
            strategy: Strategy::Auto,
            run_oracle: true,
            run_mu: true,
        }
    }
}

/// Wall-clock time per check, in microseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub construct_us: u64,
    pub criterion_us: u64,
    pub oracle_us: u64,
    pub mu_us: u64,
}

impl Timing {
    pub fn total_us(&self) -> u64 {
        self.construct_us + self.criterion_us + self.oracle_us + self.mu_us
    }
}

/// Criterion verdict against the two oracle verdicts for one spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationReport {
    pub spec: PentanomialSpec,
    pub criterion_verdict: bool,
    pub oracle_verdict: Option<bool>,
    pub mu_verdict: Option<bool>,
    /// `q = e mod 3`, reported for T1 only.
    pub e: Option<i8>,
    pub gcd_details: CriterionDetails,
    /// Checks not run because a resource cap was hit.
    pub skipped: Vec<String>,
    pub timing: Timing,
}

impl PermutationReport {
    /// True iff every verdict that was computed equals the criterion.
    pub fn agree(&self) -> bool {
        [self.oracle_verdict, self.mu_verdict]
            .iter()
            .flatten()
            .all(|&v| v == self.criterion_verdict)
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

/// Limit errors become `None` plus a note; other errors propagate.
fn capped(result: Result<bool>, what: &str, skipped: &mut Vec<String>) -> Result<Option<bool>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::LimitExceeded { .. }) => {
            skipped.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Builds `B_z` and `f`, then decides the permutation property by the
/// criterion, by exhaustive evaluation and by the roots-of-unity reduction.
pub fn verify_spec(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
    opts: &VerifyOptions,
) -> Result<PermutationReport> {
    let mut timing = Timing::default();
    let mut skipped = Vec::new();

    let start = Instant::now();
    let bz = build_bz(spec, ctx, omega)?;
    let f = assemble_f(spec, &bz)?;
    timing.construct_us = micros(start);

    let start = Instant::now();
    let details = criterion(spec);
    timing.criterion_us = micros(start);

    let oracle_verdict = if opts.run_oracle {
        let start = Instant::now();
        let v = brute_force_permutes_with(&f, ctx, opts.oracle_cap, opts.strategy);
        timing.oracle_us = micros(start);
        capped(v, "oracle", &mut skipped)?
    } else {
        None
    };

    let mu_verdict = if opts.run_mu {
        let start = Instant::now();
        let v = mu_reduction_permutes(spec, &bz, ctx, opts.oracle_cap);
        timing.mu_us = micros(start);
        capped(v, "mu reduction", &mut skipped)?
    } else {
        None
    };

    Ok(PermutationReport {
        spec: *spec,
        criterion_verdict: details.holds,
        oracle_verdict,
        mu_verdict,
        e: (spec.theorem == Theorem::T1).then(|| spec.e()),
        gcd_details: details,
        skipped,
        timing,
    })
}
