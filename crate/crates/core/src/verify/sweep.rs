use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::field::{find_omega, ExtFieldCtx, OmegaChoice, PrimeModulus};
use crate::pentanomial::{PentanomialSpec, Theorem};

use super::report::{verify_spec, VerifyOptions};

/// A rectangular grid of specs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub primes: Vec<u64>,
    pub k_max: u32,
    /// Fields with `q^2` above this are left out of the grid entirely.
    pub q2_max: Option<u64>,
    /// Indices `a, b, c` range over `0..=index_max`; negative means empty.
    pub index_max: i64,
    /// `r = Q+R+S + m (q+1)` for each `m` listed.
    pub r_multiples: Vec<u32>,
    pub theorems: Vec<Theorem>,
    pub zs: Vec<u8>,
}

impl SweepGrid {
    /// p, k up to `k_max`, indices up to `index_max`, both theorems, both
    /// `z`, `r` in `{Q+R+S, Q+R+S+(q+1)}`.
    pub fn new(primes: Vec<u64>, k_max: u32, index_max: i64) -> Self {
        Self {
            primes,
            k_max,
            q2_max: None,
            index_max,
            r_multiples: vec![0, 1],
            theorems: vec![Theorem::T1, Theorem::T2],
            zs: vec![1, 2],
        }
    }

    pub fn with_q2_max(mut self, q2_max: u64) -> Self {
        self.q2_max = Some(q2_max);
        self
    }

    /// Rejects characteristic 3 and non-primes before any work is done.
    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            PrimeModulus::new(p)?;
            if p == 3 {
                return Err(Error::UnsupportedCharacteristic);
            }
        }
        if self.zs.iter().any(|&z| z != 1 && z != 2) {
            return Err(Error::InvalidParameter("z must be 1 or 2".into()));
        }
        Ok(())
    }

    /// The fields `(p, k)` of the grid, in order.
    pub fn fields(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for &p in &self.primes {
            for k in 1..=self.k_max {
                let q2 = checked_pow(p, 2 * k);
                if let (Some(max), Some(q2)) = (self.q2_max, q2) {
                    if q2 > max as u128 {
                        break;
                    }
                }
                out.push((p, k));
            }
        }
        out
    }

    /// Index triples `(a, b, c)` in lexicographic order.
    pub fn index_triples(&self) -> Vec<[u32; 3]> {
        if self.index_max < 0 {
            return Vec::new();
        }
        let m = self.index_max as u32;
        (0..=m)
            .flat_map(|a| (0..=m).flat_map(move |b| (0..=m).map(move |c| [a, b, c])))
            .collect()
    }
}

/// One row of a sweep; the columns mirror the CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub p: u64,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    #[serde(with = "crate::pentanomial::u128_string")]
    pub r: u128,
    pub theorem: u8,
    pub z: u8,
    pub criterion: Option<bool>,
    pub oracle: Option<bool>,
    pub mu: Option<bool>,
    pub agree: bool,
    pub elapsed_ms: f64,
    /// Why a check was skipped (resource caps).
    pub skipped: Option<String>,
    /// Construction or invariant failure; counts as a falsification.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub records: u64,
    pub agreements: u64,
    pub disagreements: u64,
    /// Records with at least one check skipped for a cap.
    pub skipped: u64,
    pub errors: u64,
    /// Records whose criterion says "permutes".
    pub permutations: u64,
}

impl SweepSummary {
    pub fn falsified(&self) -> bool {
        self.disagreements > 0 || self.errors > 0
    }
}

struct Point {
    theorem: Theorem,
    z: u8,
    idx: [u32; 3],
    multiple: u32,
}

fn points(grid: &SweepGrid) -> Vec<Point> {
    let mut out = Vec::new();
    for &theorem in &grid.theorems {
        for &z in &grid.zs {
            for idx in grid.index_triples() {
                for &multiple in &grid.r_multiples {
                    out.push(Point {
                        theorem,
                        z,
                        idx,
                        multiple,
                    });
                }
            }
        }
    }
    out
}

fn blank_record(p: u64, k: u32, pt: &Point, r: u128) -> SweepRecord {
    let [a, b, c] = pt.idx;
    SweepRecord {
        p,
        k,
        a,
        b,
        c,
        r,
        theorem: pt.theorem.number(),
        z: pt.z,
        criterion: None,
        oracle: None,
        mu: None,
        agree: false,
        elapsed_ms: 0.0,
        skipped: None,
        error: None,
    }
}

fn run_point(
    p: u64,
    k: u32,
    field: &std::result::Result<(ExtFieldCtx, crate::field::ExtElem), Error>,
    pt: &Point,
    opts: &VerifyOptions,
) -> SweepRecord {
    let start = Instant::now();
    let spec = PentanomialSpec::new(pt.theorem, pt.z, p, k, pt.idx, None).and_then(|s| {
        let step = (s.q() as u128 + 1) * pt.multiple as u128;
        let r = s.r.checked_add(step).ok_or(Error::LimitExceeded {
            what: "r",
            size: u128::MAX,
            cap: u128::MAX,
        })?;
        PentanomialSpec::new(pt.theorem, pt.z, p, k, pt.idx, Some(r))
    });
    let mut rec = blank_record(p, k, pt, spec.as_ref().map_or(0, |s| s.r));
    let outcome = spec.and_then(|spec| {
        let (ctx, omega) = field.as_ref().map_err(Clone::clone)?;
        verify_spec(&spec, ctx, *omega, opts)
    });
    match outcome {
        Ok(report) => {
            rec.criterion = Some(report.criterion_verdict);
            rec.oracle = report.oracle_verdict;
            rec.mu = report.mu_verdict;
            rec.agree = report.agree();
            if !report.skipped.is_empty() {
                rec.skipped = Some(report.skipped.join("; "));
            }
        }
        Err(e) if e.is_limit() || matches!(e, Error::FieldTooLarge { .. }) => {
            rec.agree = true;
            rec.skipped = Some(e.to_string());
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec.elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    rec
}

/// Verifies every spec of the grid. Records come back in grid order:
/// p, k, theorem, z, (a, b, c), r.
pub fn run_sweep(
    grid: &SweepGrid,
    opts: &VerifyOptions,
) -> Result<(Vec<SweepRecord>, SweepSummary)> {
    grid.validate()?;
    let pts = points(grid);
    let mut records = Vec::new();
    for (p, k) in grid.fields() {
        let q2 = checked_pow(p, 2 * k);
        let field = if q2.map_or(true, |v| v > opts.oracle_cap as u128) {
            Err(Error::LimitExceeded {
                what: "field order",
                size: q2.unwrap_or(u128::MAX),
                cap: opts.oracle_cap as u128,
            })
        } else {
            ExtFieldCtx::new(p, k).and_then(|ctx| {
                let w = find_omega(&ctx, OmegaChoice::First)?;
                Ok((ctx, w))
            })
        };
        let batch: Vec<SweepRecord> = pts
            .par_iter()
            .map(|pt| run_point(p, k, &field, pt, opts))
            .collect();
        records.extend(batch);
    }
    let summary = summarize(&records);
    Ok((records, summary))
}

pub fn summarize(records: &[SweepRecord]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for r in records {
        s.records += 1;
        if r.error.is_some() {
            s.errors += 1;
        } else if r.agree {
            s.agreements += 1;
        } else {
            s.disagreements += 1;
        }
        if r.skipped.is_some() {
            s.skipped += 1;
        }
        if r.criterion == Some(true) {
            s.permutations += 1;
        }
    }
    s
}
