use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};
use crate::pentanomial::{
    build_b_pair, poly_gcd_ext, x2_minus_x_plus_1_pow, PentanomialSpec, SparsePoly, Theorem,
};

use super::mu::mu_map;
use super::oracle::check_cap;

/// On the roots of unity, `x^r B_z(x)^(q-1)` equals `B_{3-z}(x) / B_z(x)`
/// wherever `B_z(x) != 0`. Returns the number of points compared and the
/// number of disagreements.
pub fn proof_step_agreement(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
    cap: u64,
) -> Result<(u64, u64)> {
    check_cap("roots of unity", ctx.q() + 1, cap)?;
    let (b1, b2) = build_b_pair(spec, ctx, omega)?;
    let (bz, other) = if spec.z == 1 { (b1, b2) } else { (b2, b1) };
    let (mut compared, mut bad) = (0, 0);
    for x in ctx.enumerate_mu()? {
        let Some(lhs) = mu_map(spec, &bz, ctx, x) else {
            continue;
        };
        let rhs = ctx.div(other.eval(ctx, x), bz.eval(ctx, x))?;
        compared += 1;
        if lhs != rhs {
            bad += 1;
        }
    }
    Ok((compared, bad))
}

/// True iff `bz` has a root among the roots of unity of order `q+1`.
pub fn has_root_on_mu(bz: &SparsePoly, ctx: &ExtFieldCtx, cap: u64) -> Result<bool> {
    check_cap("roots of unity", ctx.q() + 1, cap)?;
    Ok(ctx
        .enumerate_mu()?
        .into_iter()
        .any(|x| bz.eval(ctx, x).is_zero()))
}

/// The computed and predicted `gcd(B_1, B_2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdCheck {
    /// `min(Q+S, R)` for T2, 0 for T1.
    #[serde(with = "crate::pentanomial::u128_string")]
    pub multiplicity: u128,
    pub computed_degree: Option<u128>,
    pub holds: bool,
}

/// Predicted gcd: 1 for T1, `(X^2 - X + 1)^min(Q+S, R)` for T2.
pub fn predicted_gcd(spec: &PentanomialSpec, ctx: &ExtFieldCtx) -> Result<(u128, SparsePoly)> {
    match spec.theorem {
        Theorem::T1 => Ok((0, SparsePoly::one())),
        Theorem::T2 => {
            let m = (spec.big_q() + spec.big_s()).min(spec.big_r());
            let m32 = u32::try_from(m).map_err(|_| Error::LimitExceeded {
                what: "gcd multiplicity",
                size: m,
                cap: u32::MAX as u128,
            })?;
            Ok((m, x2_minus_x_plus_1_pow(ctx, m32)))
        }
    }
}

pub fn gcd_structure(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
    degree_cap: u128,
) -> Result<GcdCheck> {
    let (b1, b2) = build_b_pair(spec, ctx, omega)?;
    let g = poly_gcd_ext(ctx, &b1, &b2, degree_cap)?;
    let (multiplicity, expected) = predicted_gcd(spec, ctx)?;
    Ok(GcdCheck {
        multiplicity,
        computed_degree: g.degree(),
        holds: g == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_omega, OmegaChoice};
    use crate::pentanomial::{build_bz, DEFAULT_GCD_DEGREE_CAP};
    use crate::verify::oracle::DEFAULT_ORACLE_CAP;

    fn setup(p: u64, k: u32) -> (ExtFieldCtx, ExtElem) {
        let ctx = ExtFieldCtx::new(p, k).unwrap();
        let w = find_omega(&ctx, OmegaChoice::First).unwrap();
        (ctx, w)
    }

    #[test]
    fn proof_step_on_small_specs() {
        for (p, k) in [(2, 1), (2, 2), (5, 1)] {
            let (ctx, w) = setup(p, k);
            for t in [Theorem::T1, Theorem::T2] {
                for z in [1, 2] {
                    let s = PentanomialSpec::new(t, z, p, k, [0, 1, 0], None).unwrap();
                    let (_, bad) = proof_step_agreement(&s, &ctx, w, DEFAULT_ORACLE_CAP).unwrap();
                    assert_eq!(bad, 0, "{s}");
                }
            }
        }
    }

    #[test]
    fn t2_roots_track_q_mod_3() {
        for (p, k) in [(2, 1), (2, 2), (5, 1), (7, 1)] {
            let (ctx, w) = setup(p, k);
            let s = PentanomialSpec::new(Theorem::T2, 1, p, k, [0, 0, 1], None).unwrap();
            let bz = build_bz(&s, &ctx, w).unwrap();
            let root = has_root_on_mu(&bz, &ctx, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(root, ctx.q() % 3 == 2, "{s}");
        }
    }

    #[test]
    fn gcd_examples() {
        let (ctx, w) = setup(2, 2);
        let t1 = PentanomialSpec::new(Theorem::T1, 1, 2, 2, [2, 0, 1], None).unwrap();
        let g = gcd_structure(&t1, &ctx, w, DEFAULT_GCD_DEGREE_CAP).unwrap();
        assert!(g.holds);
        assert_eq!(g.computed_degree, Some(0));
        let t2 = PentanomialSpec::new(Theorem::T2, 1, 2, 2, [1, 0, 1], None).unwrap();
        let g = gcd_structure(&t2, &ctx, w, DEFAULT_GCD_DEGREE_CAP).unwrap();
        assert_eq!(
            (g.multiplicity, g.computed_degree, g.holds),
            (1, Some(2), true)
        );
    }
}
