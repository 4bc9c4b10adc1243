//! Exhaustive checks of the fractional linear maps relating the roots of
//! unity of order `q+1` and the projective line over F_q.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{ExtElem, ExtFieldCtx, MobiusMap, ProjPoint};

use super::oracle::check_cap;

/// Counts from one exhaustive check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCount {
    pub checked: u64,
    pub violations: u64,
}

impl SuiteCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// True iff `m` maps `from` bijectively onto a set satisfying `target`, of
/// the same size.
fn maps_onto(
    ctx: &ExtFieldCtx,
    m: &MobiusMap,
    from: &[ProjPoint],
    target: impl Fn(ProjPoint) -> bool,
) -> bool {
    let mut images = Vec::with_capacity(from.len());
    for &x in from {
        let y = m.eval(ctx, x);
        if !target(y) {
            return false;
        }
        images.push(y);
    }
    images.sort_unstable();
    images.dedup();
    images.len() == from.len()
}

fn mu_points(ctx: &ExtFieldCtx) -> Result<Vec<ProjPoint>> {
    Ok(ctx
        .enumerate_mu()?
        .into_iter()
        .map(ProjPoint::Finite)
        .collect())
}

fn p1_points(ctx: &ExtFieldCtx) -> Result<Vec<ProjPoint>> {
    let mut pts: Vec<ProjPoint> = ctx
        .enumerate_subfield_q()?
        .into_iter()
        .map(ProjPoint::Finite)
        .collect();
    pts.push(ProjPoint::Infinity);
    Ok(pts)
}

/// `(beta^q X + alpha^q) / (alpha X + beta)` for `alpha^(q+1) != beta^(q+1)`,
/// else `None`.
pub fn deg1mu_map(ctx: &ExtFieldCtx, alpha: ExtElem, beta: ExtElem) -> Option<MobiusMap> {
    if ctx.norm(alpha) == ctx.norm(beta) {
        return None;
    }
    let m = MobiusMap::new(ctx, ctx.frob_q(beta), ctx.frob_q(alpha), alpha, beta)
        .expect("unequal norms give a nonzero determinant");
    Some(m)
}

/// Every `deg1mu_map` permutes the roots of unity of order `q+1`; checked
/// for all pairs `(alpha, beta)` in F_{q^2}.
pub fn check_deg1_on_mu(ctx: &ExtFieldCtx, cap: u64) -> Result<SuiteCount> {
    check_cap(
        "pairs of field elements",
        ctx.q2().saturating_mul(ctx.q2()),
        cap,
    )?;
    let mu = mu_points(ctx)?;
    let mut count = SuiteCount::default();
    for alpha in ctx.elements() {
        for beta in ctx.elements() {
            if let Some(m) = deg1mu_map(ctx, alpha, beta) {
                count.record(maps_onto(ctx, &m, &mu, |y| y.in_mu(ctx)));
            }
        }
    }
    Ok(count)
}

/// `(alpha X + beta alpha^q) / (X + beta)` for `alpha` outside F_q and
/// `beta` in the roots of unity, else `None`.
pub fn mu_to_line_map(ctx: &ExtFieldCtx, alpha: ExtElem, beta: ExtElem) -> Option<MobiusMap> {
    if ctx.in_subfield_q(alpha) || !ctx.in_mu(beta) {
        return None;
    }
    let m = MobiusMap::new(
        ctx,
        alpha,
        ctx.mul(beta, ctx.frob_q(alpha)),
        ExtElem::ONE,
        beta,
    )
    .expect("alpha outside F_q gives a nonzero determinant");
    Some(m)
}

/// Every `mu_to_line_map` maps the roots of unity onto P^1(F_q); checked for
/// all admissible pairs.
pub fn check_mu_to_line(ctx: &ExtFieldCtx, cap: u64) -> Result<SuiteCount> {
    check_cap(
        "pairs of field elements",
        ctx.q2().saturating_mul(ctx.q() + 1),
        cap,
    )?;
    let mu = mu_points(ctx)?;
    let mut count = SuiteCount::default();
    for alpha in ctx.elements() {
        for &beta in &mu {
            let beta = beta.finite().expect("roots of unity are finite");
            if let Some(m) = mu_to_line_map(ctx, alpha, beta) {
                count.record(maps_onto(ctx, &m, &mu, |y| y.in_p1_subfield(ctx)));
            }
        }
    }
    Ok(count)
}

/// `rho = (X - omega) / (-omega X + 1)`.
pub fn rho_map(ctx: &ExtFieldCtx, omega: ExtElem) -> MobiusMap {
    MobiusMap::new(
        ctx,
        ExtElem::ONE,
        ctx.neg(omega),
        ctx.neg(omega),
        ExtElem::ONE,
    )
    .expect("1 - omega^2 != 0")
}

/// `eta = (X + omega) / (omega X + 1)`.
pub fn eta_map(ctx: &ExtFieldCtx, omega: ExtElem) -> MobiusMap {
    MobiusMap::new(ctx, ExtElem::ONE, omega, omega, ExtElem::ONE).expect("1 - omega^2 != 0")
}

/// Outcome of the exhaustive check of `rho` and `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicMobiusReport {
    pub q: u64,
    pub q_mod_3: u8,
    /// For `q = 1 mod 3`: both maps permute mu. For `q = 2 mod 3`: both map
    /// mu onto P^1(F_q).
    pub rho_on_mu: bool,
    pub eta_on_mu: bool,
    /// For `q = 2 mod 3`: both map P^1(F_q) onto mu. Always true otherwise.
    pub rho_on_line: bool,
    pub eta_on_line: bool,
    /// `rho(eta(x)) = x` on all of P^1(F_{q^2}).
    pub inverse: bool,
}

impl CubicMobiusReport {
    pub fn holds(&self) -> bool {
        self.rho_on_mu && self.eta_on_mu && self.rho_on_line && self.eta_on_line && self.inverse
    }
}

pub fn check_cubic_mobius(
    ctx: &ExtFieldCtx,
    omega: ExtElem,
    cap: u64,
) -> Result<CubicMobiusReport> {
    check_cap("projective points", ctx.q2() + 1, cap)?;
    let rho = rho_map(ctx, omega);
    let eta = eta_map(ctx, omega);
    let mu = mu_points(ctx)?;
    let line = p1_points(ctx)?;
    let q_mod_3 = (ctx.q() % 3) as u8;
    let (rho_on_mu, eta_on_mu, rho_on_line, eta_on_line) = if q_mod_3 == 1 {
        let permutes_mu = |m: &MobiusMap| maps_onto(ctx, m, &mu, |y| y.in_mu(ctx));
        (permutes_mu(&rho), permutes_mu(&eta), true, true)
    } else {
        let mu_to_line = |m: &MobiusMap| maps_onto(ctx, m, &mu, |y| y.in_p1_subfield(ctx));
        let line_to_mu = |m: &MobiusMap| maps_onto(ctx, m, &line, |y| y.in_mu(ctx));
        (
            mu_to_line(&rho),
            mu_to_line(&eta),
            line_to_mu(&rho),
            line_to_mu(&eta),
        )
    };
    let inverse = ProjPoint::all(ctx).all(|x| rho.eval(ctx, eta.eval(ctx, x)) == x);
    Ok(CubicMobiusReport {
        q: ctx.q(),
        q_mod_3,
        rho_on_mu,
        eta_on_mu,
        rho_on_line,
        eta_on_line,
        inverse,
    })
}
