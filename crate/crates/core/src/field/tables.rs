use std::sync::OnceLock;

use super::ext::{ExtElem, ExtFieldCtx};
use crate::arith::prime_factors;

/// Marks `1 + gen^i = 0` in the Zech table.
pub(crate) const ZECH_ZERO: u32 = u32::MAX;

/// Discrete-log and antilog tables for a primitive element `gen`.
///
/// `exp[i] = gen^i` for `i < q^2 - 1`, `log[exp[i]] = i`; `log[0]` is unused.
#[derive(Debug, Clone)]
pub(crate) struct LogTables {
    pub gen: ExtElem,
    pub exp: Vec<u32>,
    pub log: Vec<u32>,
    p: u64,
    zech: OnceLock<Vec<u32>>,
}

impl LogTables {
    /// Builds the tables with schoolbook arithmetic, so the fast paths built
    /// on top of them can be checked against the reference routes.
    pub fn build(ctx: &ExtFieldCtx) -> Self {
        let order = ctx.q2() - 1;
        assert!(order < u32::MAX as u64, "tables need q^2 - 1 < 2^32");
        let gen = primitive_element(ctx);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; ctx.q2() as usize];
        let mut cur = ExtElem::ONE;
        for i in 0..order {
            exp.push(cur.encoding() as u32);
            log[cur.encoding() as usize] = i as u32;
            cur = ctx.mul_schoolbook(cur, gen);
        }
        debug_assert_eq!(cur, ExtElem::ONE);
        Self {
            gen,
            exp,
            log,
            p: ctx.p(),
            zech: OnceLock::new(),
        }
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.exp.len() as u64
    }

    #[inline]
    pub fn log_of(&self, x: ExtElem) -> u64 {
        debug_assert!(!x.is_zero());
        self.log[x.encoding() as usize] as u64
    }

    #[inline]
    pub fn exp_of(&self, i: u64) -> ExtElem {
        ExtElem::from_encoding(self.exp[i as usize] as u64)
    }

    /// Zech logarithms: `gen^zech[i] = 1 + gen^i`, or [`ZECH_ZERO`] when the
    /// sum vanishes. Built on first use.
    pub fn zech(&self) -> &[u32] {
        self.zech.get_or_init(|| {
            let p = self.p as u32;
            self.exp
                .iter()
                .map(|&enc| {
                    // Adding 1 only touches the constant digit.
                    let d0 = enc % p;
                    let plus_one = enc - d0 + (d0 + 1) % p;
                    if plus_one == 0 {
                        ZECH_ZERO
                    } else {
                        self.log[plus_one as usize]
                    }
                })
                .collect()
        })
    }
}

/// First element in enumeration order whose multiplicative order is q^2 - 1.
fn primitive_element(ctx: &ExtFieldCtx) -> ExtElem {
    let order = ctx.q2() - 1;
    let factors = prime_factors(order);
    (1..ctx.q2())
        .map(ExtElem::from_encoding)
        .find(|&g| {
            factors
                .iter()
                .all(|&l| ctx.pow_sqmul(g, (order / l) as u128) != ExtElem::ONE)
        })
        .expect("the multiplicative group of a finite field is cyclic")
}
