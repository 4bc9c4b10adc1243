//! Finite-field substrate: F_p polynomials, the flat model of F_{q^2} as
//! F_p[X]/(m), subgroup enumeration and Mobius maps on the projective line.

mod ext;
mod fppoly;
mod mobius;
mod tables;

pub use ext::{find_omega, ExtElem, ExtFieldCtx, OmegaChoice, DEFAULT_TABLE_CAP, MAX_ENUMERATION};
pub use fppoly::{find_irreducible, FpPoly};
pub use mobius::{MobiusMap, ProjPoint};
pub(crate) use tables::ZECH_ZERO;

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// A prime modulus `p`. Primality is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Inverse of a nonzero residue mod p.
    pub fn inv(self, a: u64) -> u64 {
        let p = self.0 as u128;
        debug_assert!(a % self.0 != 0);
        pow_mod(a as u128, p - 2, p) as u64
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_signed(self, c: i64) -> u64 {
        c.rem_euclid(self.0 as i64) as u64
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}
