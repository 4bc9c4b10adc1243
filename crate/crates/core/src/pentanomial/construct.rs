use super::sparse::SparsePoly;
use super::spec::{PentanomialSpec, Theorem};
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};

/// Fails unless `omega` has multiplicative order exactly 3.
pub fn check_omega(ctx: &ExtFieldCtx, omega: ExtElem) -> Result<()> {
    if omega != ExtElem::ONE && ctx.pow(omega, 3) == ExtElem::ONE {
        Ok(())
    } else {
        Err(Error::Precondition(
            "omega must have multiplicative order 3".into(),
        ))
    }
}

pub(crate) fn check_ctx(spec: &PentanomialSpec, ctx: &ExtFieldCtx) -> Result<()> {
    if spec.p == ctx.p() && spec.k == ctx.k() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "spec over F_{{{}^{}}} used with field F_{{{}^{}}}",
            spec.p,
            2 * spec.k,
            ctx.p(),
            ctx.n()
        )))
    }
}

/// `omega^e`, reducing the exponent mod 3.
fn wpow(ctx: &ExtFieldCtx, omega: ExtElem, e: u128) -> ExtElem {
    ctx.pow(omega, e % 3)
}

/// `omega^x - omega^y`.
fn wdiff(ctx: &ExtFieldCtx, omega: ExtElem, x: u128, y: u128) -> ExtElem {
    ctx.sub(wpow(ctx, omega, x), wpow(ctx, omega, y))
}

/// `C_1` term by term: each entry is `(x, y, m)` for `(omega^x - omega^y) X^m`.
fn c1_terms(spec: &PentanomialSpec) -> [(u128, u128, u128); 8] {
    let (q, r, s) = (spec.big_q(), spec.big_r(), spec.big_s());
    let t = q + r + s;
    match spec.theorem {
        Theorem::T1 => [
            (t, 1, t),
            (q + r, s + 1, q + r),
            (q + s, r + 1, q + s),
            (r + s, q + 1, r + s),
            (q, r + s + 1, q),
            (r, q + s + 1, r),
            (s, q + r + 1, s),
            (0, t + 1, 0),
        ],
        Theorem::T2 => [
            (q + s, r + 1, t),
            (q, r + s + 1, q + r),
            (t, 1, q + s),
            (s, q + r + 1, r + s),
            (q + r, s + 1, q),
            (0, t + 1, r),
            (r + s, q + 1, s),
            (r, q + s + 1, 0),
        ],
    }
}

/// The factored numerator and denominator `N`, `D` whose combinations
/// `N - omega D` and `-omega N + D` are `C_2` and `C_1`.
pub fn build_nd(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
) -> (SparsePoly, SparsePoly) {
    // (X^e + omega^e) and (omega^e X^e + 1)
    let plus = |e: u128| SparsePoly::from_terms(ctx, [(e, ExtElem::ONE), (0, wpow(ctx, omega, e))]);
    let times =
        |e: u128| SparsePoly::from_terms(ctx, [(e, wpow(ctx, omega, e)), (0, ExtElem::ONE)]);
    let (q, r, s) = (spec.big_q(), spec.big_r(), spec.big_s());
    let (n, d) = match spec.theorem {
        Theorem::T1 => (
            plus(q).mul(ctx, &plus(r)).mul(ctx, &plus(s)),
            times(q).mul(ctx, &times(r)).mul(ctx, &times(s)),
        ),
        Theorem::T2 => (
            plus(q).mul(ctx, &times(r)).mul(ctx, &plus(s)),
            times(q).mul(ctx, &plus(r)).mul(ctx, &times(s)),
        ),
    };
    (n, d)
}

/// `(C_1, C_2)` from the coefficient list, cross-checked against the
/// factored forms `C_1 = -omega N + D` and `C_2 = N - omega D`.
pub fn build_c(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
) -> Result<(SparsePoly, SparsePoly)> {
    check_ctx(spec, ctx)?;
    check_omega(ctx, omega)?;
    let c1 = SparsePoly::from_terms(
        ctx,
        c1_terms(spec)
            .into_iter()
            .map(|(x, y, m)| (m, wdiff(ctx, omega, x, y))),
    );
    let c2 = c1.reversal(spec.degree_sum());

    let (n, d) = build_nd(spec, ctx, omega);
    let v = d.sub(ctx, &n.scale(ctx, omega));
    let u = n.sub(ctx, &d.scale(ctx, omega));
    if c1 != v || c2 != u {
        return Err(Error::Invariant(format!(
            "coefficient list disagrees with factored form for {spec}"
        )));
    }
    Ok((c1, c2))
}

/// The normalising scalar `beta`; never zero for `p != 3`.
pub fn select_beta(spec: &PentanomialSpec, ctx: &ExtFieldCtx, omega: ExtElem) -> Result<ExtElem> {
    check_omega(ctx, omega)?;
    let (q, r, s) = (spec.big_q(), spec.big_r(), spec.big_s());
    let beta = match spec.theorem {
        Theorem::T1 if (q + r + s) % 3 == 1 => wdiff(ctx, omega, q + r, s + 1),
        Theorem::T1 => wdiff(ctx, omega, q + r + s, 1),
        Theorem::T2 if (q + s) % 3 == (r + 1) % 3 => wdiff(ctx, omega, q, r + s + 1),
        Theorem::T2 => wdiff(ctx, omega, q + s, r + 1),
    };
    if beta.is_zero() {
        return Err(Error::Invariant(format!("beta vanished for {spec}")));
    }
    Ok(beta)
}

/// Coefficient facts for a constructed `B_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientProfile {
    pub terms: usize,
    /// Every coefficient is fixed by `x -> x^p`.
    pub prime_field: bool,
    /// Every coefficient is 1 or -1.
    pub plus_minus_one: bool,
}

pub fn coefficient_profile(ctx: &ExtFieldCtx, poly: &SparsePoly) -> CoefficientProfile {
    let one = ExtElem::ONE;
    let minus_one = ctx.neg(one);
    CoefficientProfile {
        terms: poly.len(),
        prime_field: poly.terms().all(|(_, c)| ctx.frobenius(c, 1) == c),
        plus_minus_one: poly.terms().all(|(_, c)| c == one || c == minus_one),
    }
}

/// Checks the three structural claims about `B_z`: at most five terms,
/// prime-field coefficients, and coefficients in {1, -1} when Q, R, S are
/// pairwise distinct.
pub fn check_bz_structure(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    bz: &SparsePoly,
) -> Result<CoefficientProfile> {
    let profile = coefficient_profile(ctx, bz);
    if profile.terms > 5 {
        return Err(Error::Invariant(format!(
            "B_{} has {} terms for {spec}",
            spec.z, profile.terms
        )));
    }
    if !profile.prime_field {
        return Err(Error::Invariant(format!(
            "B_{} has a coefficient outside F_p for {spec}",
            spec.z
        )));
    }
    if spec.distinct() && !profile.plus_minus_one {
        return Err(Error::Invariant(format!(
            "B_{} has a coefficient outside {{1,-1}} for {spec}",
            spec.z
        )));
    }
    Ok(profile)
}

/// `B_z = C_z / beta`, with its structural claims asserted.
pub fn build_bz(spec: &PentanomialSpec, ctx: &ExtFieldCtx, omega: ExtElem) -> Result<SparsePoly> {
    let (c1, c2) = build_c(spec, ctx, omega)?;
    let beta_inv = ctx.inv(select_beta(spec, ctx, omega)?)?;
    let cz = if spec.z == 1 { c1 } else { c2 };
    let bz = cz.scale(ctx, beta_inv);
    check_bz_structure(spec, ctx, &bz)?;
    Ok(bz)
}

/// Both `B_1` and `B_2` for the spec's parameters.
pub fn build_b_pair(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
) -> Result<(SparsePoly, SparsePoly)> {
    Ok((
        build_bz(&spec.with_z(1), ctx, omega)?,
        build_bz(&spec.with_z(2), ctx, omega)?,
    ))
}

/// `f = X^r B_z(X^(q-1))`.
pub fn assemble_f(spec: &PentanomialSpec, bz: &SparsePoly) -> Result<SparsePoly> {
    let step = spec.q() as u128 - 1;
    let terms = bz
        .terms()
        .map(|(e, c)| {
            step.checked_mul(e)
                .and_then(|v| v.checked_add(spec.r))
                .map(|exp| (exp, c))
                .ok_or(Error::LimitExceeded {
                    what: "exponent of f",
                    size: u128::MAX,
                    cap: u128::MAX,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    // Distinct exponents of B_z stay distinct, so no merging happens.
    Ok(SparsePoly::from_distinct_terms(terms))
}
