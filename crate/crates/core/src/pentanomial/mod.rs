//! Construction of `C_1`, `C_2`, `beta`, `B_z` and `f = X^r B_z(X^(q-1))`
//! for both pentanomial families, plus their tabulated closed forms.

mod construct;
mod sparse;
mod spec;
mod tables;

pub(crate) use construct::check_ctx;
pub use construct::{
    assemble_f, build_b_pair, build_bz, build_c, build_nd, check_bz_structure, check_omega,
    coefficient_profile, select_beta, CoefficientProfile,
};
pub use sparse::{poly_gcd_ext, SparsePoly, DEFAULT_GCD_DEGREE_CAP};
pub(crate) use spec::u128_string;
pub use spec::{PentanomialSpec, ResidueTriple, Theorem};
pub use tables::{
    canonicalize_sigma, listed_sigmas, table_closed_form, table_row, Canonical, Mono,
};

use crate::field::{ExtElem, ExtFieldCtx};

/// `(X^2 - X + 1)^m`, monic.
pub fn x2_minus_x_plus_1_pow(ctx: &ExtFieldCtx, m: u32) -> SparsePoly {
    let base = SparsePoly::from_terms(
        ctx,
        [(2, ExtElem::ONE), (1, ctx.from_int(-1)), (0, ExtElem::ONE)],
    );
    (0..m).fold(SparsePoly::one(), |acc, _| acc.mul(ctx, &base))
}

#[cfg(test)]
mod tests;
