use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};

/// Sparse polynomial over F_{q^2}: exponent to nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<u128, ExtElem>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, ExtElem::ONE)
    }

    pub fn monomial(exp: u128, coeff: ExtElem) -> Self {
        let mut poly = Self::zero();
        if !coeff.is_zero() {
            poly.terms.insert(exp, coeff);
        }
        poly
    }

    /// Sums the given terms, merging equal exponents and dropping zeros.
    pub fn from_terms<I>(ctx: &ExtFieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (u128, ExtElem)>,
    {
        let mut poly = Self::zero();
        for (e, c) in terms {
            poly.add_term(ctx, e, c);
        }
        poly
    }

    /// Builds from terms whose exponents are pairwise distinct; zero
    /// coefficients are dropped.
    pub fn from_distinct_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u128, ExtElem)>,
    {
        let mut poly = Self::zero();
        for (e, c) in terms {
            if !c.is_zero() {
                let prev = poly.terms.insert(e, c);
                assert!(prev.is_none(), "duplicate exponent {e}");
            }
        }
        poly
    }

    pub fn add_term(&mut self, ctx: &ExtFieldCtx, exp: u128, coeff: ExtElem) {
        let sum = ctx.add(self.coeff(exp), coeff);
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn coeff(&self, exp: u128) -> ExtElem {
        self.terms.get(&exp).copied().unwrap_or(ExtElem::ZERO)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u128, ExtElem)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = u128> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u128> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<ExtElem> {
        self.terms.values().next_back().copied()
    }

    pub fn add(&self, ctx: &ExtFieldCtx, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(ctx, e, c);
        }
        out
    }

    pub fn sub(&self, ctx: &ExtFieldCtx, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(ctx, e, ctx.neg(c));
        }
        out
    }

    pub fn scale(&self, ctx: &ExtFieldCtx, c: ExtElem) -> Self {
        Self::from_terms(ctx, self.terms().map(|(e, a)| (e, ctx.mul(a, c))))
    }

    pub fn mul(&self, ctx: &ExtFieldCtx, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).expect("exponent overflow in product");
                out.add_term(ctx, e, ctx.mul(c1, c2));
            }
        }
        out
    }

    /// `X^deg * self(1/X)`; every exponent must be at most `deg`.
    pub fn reversal(&self, deg: u128) -> Self {
        let terms = self
            .terms()
            .map(|(e, c)| {
                assert!(e <= deg, "reversal degree below polynomial degree");
                (deg - e, c)
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, ctx: &ExtFieldCtx, x: ExtElem) -> ExtElem {
        self.terms().fold(ExtElem::ZERO, |acc, (e, c)| {
            ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
        })
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn to_monic(&self, ctx: &ExtFieldCtx) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(ctx, ctx.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    /// Dense coefficients, low degree first. Fails above `degree_cap`.
    pub fn to_dense(&self, degree_cap: u128) -> Result<Vec<ExtElem>> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        if deg > degree_cap {
            return Err(Error::LimitExceeded {
                what: "dense degree",
                size: deg,
                cap: degree_cap,
            });
        }
        let mut dense = vec![ExtElem::ZERO; deg as usize + 1];
        for (e, c) in self.terms() {
            dense[e as usize] = c;
        }
        Ok(dense)
    }

    pub fn from_dense(dense: &[ExtElem]) -> Self {
        let terms = dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, &c)| (e as u128, c))
            .collect();
        Self { terms }
    }
}

/// Default cap on the dense degree used by [`poly_gcd_ext`].
pub const DEFAULT_GCD_DEGREE_CAP: u128 = 1 << 20;

/// Monic gcd over F_{q^2}[X], computed by the Euclidean algorithm on dense
/// coefficient vectors.
pub fn poly_gcd_ext(
    ctx: &ExtFieldCtx,
    a: &SparsePoly,
    b: &SparsePoly,
    degree_cap: u128,
) -> Result<SparsePoly> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::Precondition("gcd(0, 0) is undefined".into()));
    }
    let mut x = a.to_dense(degree_cap)?;
    let mut y = b.to_dense(degree_cap)?;
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        dense_rem_in_place(ctx, &mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    Ok(SparsePoly::from_dense(&x).to_monic(ctx))
}

/// Replaces `num` by `num mod den`, trimmed. `den` is trimmed and nonzero.
fn dense_rem_in_place(ctx: &ExtFieldCtx, num: &mut Vec<ExtElem>, den: &[ExtElem]) {
    let dd = den.len() - 1;
    let lead_inv = ctx.inv(den[dd]).expect("trimmed divisor");
    while num.len() > dd {
        let top = num.len() - 1;
        let c = num[top];
        if !c.is_zero() {
            let factor = ctx.mul(c, lead_inv);
            let shift = top - dd;
            for (i, &d) in den.iter().enumerate() {
                if !d.is_zero() {
                    num[shift + i] = ctx.sub(num[shift + i], ctx.mul(factor, d));
                }
            }
        }
        num.pop();
    }
    while num.last().is_some_and(|c| c.is_zero()) {
        num.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> ExtFieldCtx {
        ExtFieldCtx::new(2, 2).unwrap()
    }

    #[test]
    fn merging_drops_zeros() {
        let f = ExtFieldCtx::new(5, 1).unwrap();
        let poly = SparsePoly::from_terms(
            &f,
            [
                (3, f.from_int(1)),
                (3, f.from_int(-1)),
                (1, f.from_int(2)),
                (1, f.from_int(2)),
            ],
        );
        assert_eq!(poly.len(), 1);
        assert_eq!(poly.coeff(1), f.from_int(4));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = f16();
        let a = SparsePoly::from_terms(&f, [(3, f.basis(1)), (0, ExtElem::ONE)]);
        let g = poly_gcd_ext(&f, &a, &SparsePoly::zero(), 100).unwrap();
        assert_eq!(g, a.to_monic(&f));
        assert_eq!(g.leading_coeff(), Some(ExtElem::ONE));
        assert!(poly_gcd_ext(&f, &SparsePoly::zero(), &SparsePoly::zero(), 100).is_err());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = ExtFieldCtx::new(7, 1).unwrap();
        let common = SparsePoly::from_terms(&f, [(2, ExtElem::ONE), (0, f.from_int(3))]);
        let u = SparsePoly::from_terms(&f, [(1, ExtElem::ONE), (0, f.from_int(1))]);
        let v = SparsePoly::from_terms(&f, [(1, ExtElem::ONE), (0, f.from_int(2))]);
        let a = common.mul(&f, &u);
        let b = common.mul(&f, &v).scale(&f, f.from_int(5));
        assert_eq!(poly_gcd_ext(&f, &a, &b, 100).unwrap(), common);
    }

    #[test]
    fn gcd_degree_cap() {
        let f = f16();
        let a = SparsePoly::monomial(50, ExtElem::ONE);
        assert!(poly_gcd_ext(&f, &a, &a, 10).unwrap_err().is_limit());
    }

    #[test]
    fn reversal_and_eval() {
        let f = f16();
        let a = SparsePoly::from_terms(&f, [(3, f.basis(1)), (1, ExtElem::ONE)]);
        let r = a.reversal(3);
        assert_eq!(r.coeff(0), f.basis(1));
        assert_eq!(r.coeff(2), ExtElem::ONE);
        for x in f.elements().skip(1) {
            let inv = f.inv(x).unwrap();
            let expected = f.mul(f.pow(x, 3), a.eval(&f, inv));
            assert_eq!(r.eval(&f, x), expected);
        }
    }
}
