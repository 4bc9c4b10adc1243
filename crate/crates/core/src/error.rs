use thiserror::Error;

/// Errors raised by field construction, pentanomial construction and the
/// verification engine.
///
/// Falsifications found by a verifier are not errors: they are reported as
/// data in the relevant report type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic 3 unsupported")]
    UnsupportedCharacteristic,

    #[error("field of order {p}^{n} exceeds 2^63")]
    FieldTooLarge { p: u64, n: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("degenerate Mobius map: ad - bc = 0")]
    DegenerateMobius,

    #[error("{what} of {size} exceeds cap {cap}")]
    LimitExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("residue triple {sigma:?} has no closed form for family {table}")]
    NotListed { table: u8, sigma: [i8; 3] },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by a configured resource cap.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
