//! Exhaustive bijectivity test on F_{q^2}.
//!
//! The domain is split into disjoint ranges, each range records the images
//! it produces in its own occupancy bitset, and the bitsets are merged at
//! the end. The verdict does not depend on the number of workers.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx, ZECH_ZERO};
use crate::pentanomial::SparsePoly;

/// Default bound on `q^2` for exhaustive checks.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 24;

/// Largest field for which the oracle builds its own log tables when the
/// context has none.
const AUTO_TABLE_LIMIT: u64 = 1 << 24;

const MIN_PART: u64 = 1 << 14;
const MAX_PARTS: usize = 16;

/// How the oracle evaluates `f`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Log walk when tables are available or affordable, else direct.
    #[default]
    Auto,
    /// Walks `x = g^L` for a primitive `g`, updating each term's discrete
    /// log by a constant step.
    LogWalk,
    /// Evaluates every term by exponentiation at every field element.
    Direct,
}

/// Fails with a limit error when `size > cap`.
pub fn check_cap(what: &'static str, size: u64, cap: u64) -> Result<()> {
    if size > cap {
        Err(Error::LimitExceeded {
            what,
            size: size as u128,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

/// True iff `f` induces a bijection of F_{q^2}. Fails when `q^2 > cap`.
pub fn brute_force_permutes(f: &SparsePoly, ctx: &ExtFieldCtx, cap: u64) -> Result<bool> {
    brute_force_permutes_with(f, ctx, cap, Strategy::Auto)
}

pub fn brute_force_permutes_with(
    f: &SparsePoly,
    ctx: &ExtFieldCtx,
    cap: u64,
    strategy: Strategy,
) -> Result<bool> {
    check_cap("field order", ctx.q2(), cap)?;
    let terms = ReducedTerms::new(f, ctx);
    match strategy {
        Strategy::Direct => Ok(direct(&terms, ctx)),
        Strategy::LogWalk | Strategy::Auto if ctx.has_tables() => Ok(log_walk(&terms, ctx)),
        Strategy::LogWalk => {
            let tabled = ExtFieldCtx::with_table_cap(ctx.p(), ctx.k(), ctx.q2())?;
            Ok(log_walk(&terms, &tabled))
        }
        Strategy::Auto if ctx.q2() <= AUTO_TABLE_LIMIT => {
            let tabled = ExtFieldCtx::with_table_cap(ctx.p(), ctx.k(), ctx.q2())?;
            Ok(log_walk(&terms, &tabled))
        }
        Strategy::Auto => Ok(direct(&terms, ctx)),
    }
}

/// The terms of `f` with exponents reduced mod `q^2 - 1`, which is exact on
/// nonzero inputs, and the value `f(0)` kept separately.
struct ReducedTerms {
    terms: Vec<(u64, ExtElem)>,
    at_zero: ExtElem,
}

impl ReducedTerms {
    fn new(f: &SparsePoly, ctx: &ExtFieldCtx) -> Self {
        let order = (ctx.q2() - 1) as u128;
        Self {
            terms: f.terms().map(|(e, c)| ((e % order) as u64, c)).collect(),
            at_zero: f.coeff(0),
        }
    }
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(bits: u64) -> Self {
        Self(vec![0; bits.div_ceil(64) as usize])
    }

    /// Sets `i`; false if it was already set.
    #[inline]
    fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    /// Merges `other` in; false if the two overlap.
    fn merge(&mut self, other: &Bitset) -> bool {
        let mut disjoint = true;
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            disjoint &= *a & *b == 0;
            *a |= *b;
        }
        disjoint
    }
}

/// Runs `fill` over disjoint ranges of `0..len`, each with its own bitset
/// over `0..keys`, then merges. `fill` returns false on a local collision
/// and should poll the stop flag.
fn distinct_over<F>(len: u64, keys: u64, extra: Option<u64>, fill: F) -> bool
where
    F: Fn(Range<u64>, &mut Bitset, &AtomicBool) -> bool + Sync,
{
    let parts = rayon::current_num_threads()
        .min(MAX_PARTS)
        .min(len.div_ceil(MIN_PART).max(1) as usize);
    let stop = AtomicBool::new(false);
    let bounds = |i: usize| len * i as u64 / parts as u64;
    let sets: Vec<Option<Bitset>> = (0..parts)
        .into_par_iter()
        .map(|i| {
            let mut set = Bitset::new(keys);
            if fill(bounds(i)..bounds(i + 1), &mut set, &stop) {
                Some(set)
            } else {
                stop.store(true, Ordering::Relaxed);
                None
            }
        })
        .collect();
    let mut sets = sets.into_iter();
    let Some(Some(mut acc)) = sets.next() else {
        return false;
    };
    for set in sets {
        match set {
            Some(set) if acc.merge(&set) => {}
            _ => return false,
        }
    }
    extra.map_or(true, |k| acc.insert(k))
}

const POLL: u64 = 1 << 12;

fn log_walk(terms: &ReducedTerms, ctx: &ExtFieldCtx) -> bool {
    let tables = ctx.tables().expect("caller ensures tables");
    let order = tables.order();
    let exp = &tables.exp;
    let coeff_logs: Vec<(u64, u64)> = terms
        .terms
        .iter()
        .map(|&(e, c)| (tables.log_of(c), e))
        .collect();
    let starts = |lo: u64| -> Vec<u64> {
        coeff_logs
            .iter()
            .map(|&(lc, e)| ((lc as u128 + lo as u128 * e as u128) % order as u128) as u64)
            .collect()
    };
    let step = |acc: &mut [u64]| {
        for (a, &(_, e)) in acc.iter_mut().zip(&coeff_logs) {
            *a += e;
            if *a >= order {
                *a -= order;
            }
        }
    };

    if ctx.p() == 2 {
        // Images keyed by encoding; sums are XORs of encodings.
        let extra = Some(terms.at_zero.encoding());
        distinct_over(order, ctx.q2(), extra, |range, set, stop| {
            let mut acc = starts(range.start);
            for l in range {
                if l % POLL == 0 && stop.load(Ordering::Relaxed) {
                    return false;
                }
                let v = acc.iter().fold(0u32, |s, &a| s ^ exp[a as usize]);
                if !set.insert(v as u64) {
                    return false;
                }
                step(&mut acc);
            }
            true
        })
    } else {
        // Images keyed by discrete log, with `order` standing for zero;
        // sums go through the Zech table.
        let zech = tables.zech();
        let zero_key = |v: ExtElem| if v.is_zero() { order } else { tables.log_of(v) };
        let extra = Some(zero_key(terms.at_zero));
        distinct_over(order, ctx.q2(), extra, |range, set, stop| {
            let mut acc = starts(range.start);
            for l in range {
                if l % POLL == 0 && stop.load(Ordering::Relaxed) {
                    return false;
                }
                let mut sum = order;
                for &a in &acc {
                    if sum == order {
                        sum = a;
                        continue;
                    }
                    let d = if a >= sum { a - sum } else { a + order - sum };
                    let z = zech[d as usize];
                    sum = if z == ZECH_ZERO {
                        order
                    } else {
                        let s = sum + z as u64;
                        if s >= order {
                            s - order
                        } else {
                            s
                        }
                    };
                }
                if !set.insert(sum) {
                    return false;
                }
                step(&mut acc);
            }
            true
        })
    }
}

fn direct(terms: &ReducedTerms, ctx: &ExtFieldCtx) -> bool {
    let extra = Some(terms.at_zero.encoding());
    // Nonzero elements only; zero is the extra key.
    distinct_over(ctx.q2() - 1, ctx.q2(), extra, |range, set, stop| {
        for i in range {
            if i % POLL == 0 && stop.load(Ordering::Relaxed) {
                return false;
            }
            let x = ExtElem::from_encoding(i + 1);
            let v = terms.terms.iter().fold(ExtElem::ZERO, |s, &(e, c)| {
                ctx.add(s, ctx.mul(c, ctx.pow(x, e as u128)))
            });
            if !set.insert(v.encoding()) {
                return false;
            }
        }
        true
    })
}
