//! Closed forms of `B_z` indexed by the residue triple of `(Q, R, S)` mod 3.

use super::construct::{build_c, select_beta};
use super::sparse::SparsePoly;
use super::spec::{PentanomialSpec, ResidueTriple, Theorem};
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};

/// A monomial in the formal exponents Q, R, S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mono {
    Qrs,
    Qr,
    Qs,
    Rs,
    Q,
    R,
    S,
    One,
}

impl Mono {
    pub fn exponent(self, q: u128, r: u128, s: u128) -> u128 {
        match self {
            Mono::Qrs => q + r + s,
            Mono::Qr => q + r,
            Mono::Qs => q + s,
            Mono::Rs => r + s,
            Mono::Q => q,
            Mono::R => r,
            Mono::S => s,
            Mono::One => 0,
        }
    }
}

type Row = ([i8; 3], [(i8, Mono); 5], [(i8, Mono); 5]);

use Mono::*;

const T1_ROWS: [Row; 4] = [
    (
        [1, 1, 1],
        [(1, Qrs), (-1, Q), (-1, R), (-1, S), (1, One)],
        [(1, Qrs), (-1, Qr), (-1, Qs), (-1, Rs), (1, One)],
    ),
    (
        [1, 1, -1],
        [(1, Qr), (-1, Qs), (-1, Rs), (1, S), (-1, One)],
        [(-1, Qrs), (1, Qr), (-1, Q), (-1, R), (1, S)],
    ),
    (
        [1, -1, -1],
        [(1, Qrs), (-1, Rs), (-1, Q), (1, R), (1, S)],
        [(1, Qr), (1, Qs), (-1, Rs), (-1, Q), (1, One)],
    ),
    (
        [-1, -1, -1],
        [(1, Qrs), (-1, Qr), (-1, Qs), (-1, Rs), (1, One)],
        [(1, Qrs), (-1, Q), (-1, R), (-1, S), (1, One)],
    ),
];

const T2_ROWS: [Row; 6] = [
    (
        [1, 1, 1],
        [(1, Qr), (-1, Qs), (1, Rs), (-1, R), (1, One)],
        [(1, Qrs), (-1, Qs), (1, Q), (-1, R), (1, S)],
    ),
    (
        [1, 1, -1],
        [(1, Qrs), (-1, Rs), (-1, Q), (1, R), (1, S)],
        [(1, Qr), (1, Qs), (-1, Rs), (-1, Q), (1, One)],
    ),
    (
        [1, -1, 1],
        [(1, Qrs), (-1, Q), (-1, R), (-1, S), (1, One)],
        [(1, Qrs), (-1, Qr), (-1, Qs), (-1, Rs), (1, One)],
    ),
    (
        [1, -1, -1],
        [(1, Qr), (-1, Qs), (-1, Rs), (1, S), (-1, One)],
        [(-1, Qrs), (1, Qr), (-1, Q), (-1, R), (1, S)],
    ),
    (
        [-1, 1, -1],
        [(1, Qrs), (-1, Qr), (-1, Qs), (-1, Rs), (1, One)],
        [(1, Qrs), (-1, Q), (-1, R), (-1, S), (1, One)],
    ),
    (
        [-1, -1, -1],
        [(1, Qrs), (-1, Qs), (1, Q), (-1, R), (1, S)],
        [(1, Qr), (-1, Qs), (1, Rs), (-1, R), (1, One)],
    ),
];

fn table(theorem: Theorem) -> &'static [Row] {
    match theorem {
        Theorem::T1 => &T1_ROWS,
        Theorem::T2 => &T2_ROWS,
    }
}

/// The residue triples listed for a theorem, in table order.
pub fn listed_sigmas(theorem: Theorem) -> Vec<ResidueTriple> {
    table(theorem)
        .iter()
        .map(|row| ResidueTriple(row.0))
        .collect()
}

/// The signed monomials of the tabulated `B_z` for `sigma`.
pub fn table_row(theorem: Theorem, z: u8, sigma: ResidueTriple) -> Result<[(i8, Mono); 5]> {
    let row = table(theorem)
        .iter()
        .find(|row| row.0 == sigma.0)
        .ok_or(Error::NotListed {
            table: theorem.number(),
            sigma: sigma.0,
        })?;
    match z {
        1 => Ok(row.1),
        2 => Ok(row.2),
        _ => Err(Error::InvalidParameter(format!(
            "z must be 1 or 2, got {z}"
        ))),
    }
}

/// The tabulated `B_z` instantiated at concrete `Q, R, S`, with the integer
/// coefficients mapped into F_p and equal exponents merged.
pub fn table_closed_form(
    ctx: &ExtFieldCtx,
    theorem: Theorem,
    z: u8,
    sigma: ResidueTriple,
    [q, r, s]: [u128; 3],
) -> Result<SparsePoly> {
    let row = table_row(theorem, z, sigma)?;
    Ok(SparsePoly::from_terms(
        ctx,
        row.iter()
            .map(|&(sign, mono)| (mono.exponent(q, r, s), ctx.from_int(sign as i64))),
    ))
}

/// A reordering of `(Q, R, S)` whose residue triple is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canonical {
    pub spec: PentanomialSpec,
    /// `perm[i]` is the original position now in position `i`.
    pub perm: [usize; 3],
    /// `B_z(original) = sign * B_z(reordered)`.
    pub sign: i8,
}

const T1_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];
const T2_PERMS: [[usize; 3]; 2] = [[0, 1, 2], [2, 1, 0]];

/// Reorders `(Q, R, S)` (any order for T1, only `Q <-> S` for T2) so the
/// residue triple appears in the table, and computes the sign relating the
/// two `B_z` as the ratio of the two normalising scalars.
pub fn canonicalize_sigma(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
) -> Result<Canonical> {
    let perms: &[[usize; 3]] = match spec.theorem {
        Theorem::T1 => &T1_PERMS,
        Theorem::T2 => &T2_PERMS,
    };
    let listed = listed_sigmas(spec.theorem);
    let idx = spec.indices();
    let (perm, permuted) = perms
        .iter()
        .map(|&perm| (perm, spec.with_indices(perm.map(|i| idx[i]))))
        .find(|(_, s)| listed.contains(&s.sigma()))
        .ok_or(Error::Invariant(format!(
            "no tabulated reordering of {spec}"
        )))?;

    let ratio = ctx.div(
        select_beta(&permuted, ctx, omega)?,
        select_beta(spec, ctx, omega)?,
    )?;
    let sign = if ratio == ExtElem::ONE {
        1
    } else if ratio == ctx.neg(ExtElem::ONE) {
        -1
    } else {
        return Err(Error::Invariant(format!(
            "beta ratio under reordering is not +-1 for {spec}"
        )));
    };
    // The reordering must leave C_z itself unchanged.
    if build_c(spec, ctx, omega)? != build_c(&permuted, ctx, omega)? {
        return Err(Error::Invariant(format!(
            "reordering changed C_z for {spec}"
        )));
    }
    Ok(Canonical {
        spec: permuted,
        perm,
        sign,
    })
}
