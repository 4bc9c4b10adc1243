use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};
use crate::pentanomial::{PentanomialSpec, SparsePoly};

use super::oracle::check_cap;

/// `x^r B(x)^(q-1)` at `x`, or `None` when `B(x) = 0`.
pub fn mu_map(
    spec: &PentanomialSpec,
    bz: &SparsePoly,
    ctx: &ExtFieldCtx,
    x: ExtElem,
) -> Option<ExtElem> {
    let b = bz.eval(ctx, x);
    if b.is_zero() {
        return None;
    }
    Some(ctx.mul(ctx.pow(x, spec.r), ctx.pow(b, ctx.q() as u128 - 1)))
}

/// `f = X^r B(X^(q-1))` permutes F_{q^2} iff `gcd(r, q-1) = 1` and
/// `X^r B(X)^(q-1)` permutes the roots of unity of order `q+1`. A root of
/// `B` on that set makes the verdict false.
pub fn mu_reduction_permutes(
    spec: &PentanomialSpec,
    bz: &SparsePoly,
    ctx: &ExtFieldCtx,
    cap: u64,
) -> Result<bool> {
    let q = ctx.q();
    check_cap("roots of unity", q + 1, cap)?;
    if gcd(spec.r, q as u128 - 1) != 1 {
        return Ok(false);
    }
    let mu = ctx.enumerate_mu()?;
    let mut images = Vec::with_capacity(mu.len());
    for &x in &mu {
        let Some(y) = mu_map(spec, bz, ctx, x) else {
            return Ok(false);
        };
        if !ctx.in_mu(y) {
            return Err(Error::Invariant(format!(
                "x^r B(x)^(q-1) left mu for {spec}"
            )));
        }
        images.push(y);
    }
    images.sort_unstable();
    images.dedup();
    Ok(images.len() == mu.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_omega, OmegaChoice};
    use crate::pentanomial::{build_bz, Theorem};
    use crate::verify::oracle::DEFAULT_ORACLE_CAP;

    #[test]
    fn five_point_example() {
        let ctx = ExtFieldCtx::new(2, 2).unwrap();
        let w = find_omega(&ctx, OmegaChoice::First).unwrap();
        let s = PentanomialSpec::new(Theorem::T1, 1, 2, 2, [0, 1, 2], Some(7)).unwrap();
        let bz = build_bz(&s, &ctx, w).unwrap();
        assert!(mu_reduction_permutes(&s, &bz, &ctx, DEFAULT_ORACLE_CAP).unwrap());
    }

    #[test]
    fn gcd_failure_short_circuits() {
        let ctx = ExtFieldCtx::new(2, 2).unwrap();
        let s = PentanomialSpec::new(Theorem::T1, 1, 2, 2, [0, 0, 0], Some(3)).unwrap();
        // Even B = 1, which would otherwise be fine, gives false.
        assert!(!mu_reduction_permutes(&s, &SparsePoly::one(), &ctx, DEFAULT_ORACLE_CAP).unwrap());
    }

    #[test]
    fn root_on_mu_gives_false() {
        let ctx = ExtFieldCtx::new(2, 2).unwrap();
        let s = PentanomialSpec::new(Theorem::T1, 1, 2, 2, [0, 1, 2], Some(7)).unwrap();
        // X + 1 vanishes at 1, which lies in mu.
        let b = SparsePoly::from_terms(&ctx, [(1, ExtElem::ONE), (0, ExtElem::ONE)]);
        assert_eq!(mu_map(&s, &b, &ctx, ExtElem::ONE), None);
        assert!(!mu_reduction_permutes(&s, &b, &ctx, DEFAULT_ORACLE_CAP).unwrap());
    }

    #[test]
    fn cap_applies_to_mu() {
        let ctx = ExtFieldCtx::new(2, 2).unwrap();
        let s = PentanomialSpec::new(Theorem::T1, 1, 2, 2, [0, 1, 2], Some(7)).unwrap();
        assert!(mu_reduction_permutes(&s, &SparsePoly::one(), &ctx, 4)
            .unwrap_err()
            .is_limit());
    }
}
