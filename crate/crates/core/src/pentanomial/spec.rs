use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Which of the two pentanomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::T1 => 1,
            Theorem::T2 => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Theorem::T1),
            2 => Ok(Theorem::T2),
            _ => Err(Error::InvalidParameter(format!(
                "theorem must be 1 or 2, got {n}"
            ))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

/// Residues of `(Q, R, S)` mod 3, each written as 1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueTriple(pub [i8; 3]);

impl ResidueTriple {
    pub fn of(q: u128, r: u128, s: u128) -> Self {
        let res = |v: u128| match v % 3 {
            1 => 1,
            2 => -1,
            _ => 0,
        };
        Self([res(q), res(r), res(s)])
    }
}

impl fmt::Display for ResidueTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// One pentanomial `f = X^r B_z(X^(q-1))` over F_{q^2}, `q = p^k`, with
/// `Q = p^a`, `R = p^b`, `S = p^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PentanomialSpec {
    pub theorem: Theorem,
    pub z: u8,
    pub p: u64,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    #[serde(with = "u128_string")]
    pub r: u128,
}

/// Largest allowed `Q + R + S`; keeps every derived exponent in 128 bits.
const MAX_DEGREE_SUM: u128 = 1 << 100;

impl PentanomialSpec {
    /// Validates and builds a spec. `r = None` means `r = Q + R + S`.
    pub fn new(
        theorem: Theorem,
        z: u8,
        p: u64,
        k: u32,
        [a, b, c]: [u32; 3],
        r: Option<u128>,
    ) -> Result<Self> {
        PrimeModulus::new(p)?;
        if p == 3 {
            return Err(Error::UnsupportedCharacteristic);
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        if checked_pow(p, 2 * k).map_or(true, |v| v > 1 << 63) {
            return Err(Error::FieldTooLarge { p, n: 2 * k });
        }
        if z != 1 && z != 2 {
            return Err(Error::InvalidParameter(format!(
                "z must be 1 or 2, got {z}"
            )));
        }
        let pw = |i: u32| {
            checked_pow(p, i)
                .ok_or_else(|| Error::InvalidParameter(format!("p^{i} does not fit in 128 bits")))
        };
        let sum = pw(a)?
            .checked_add(pw(b)?)
            .and_then(|v| v.checked_add(pw(c).ok()?))
            .filter(|&v| v <= MAX_DEGREE_SUM)
            .ok_or_else(|| Error::InvalidParameter("Q + R + S exceeds 2^100".into()))?;
        let r = r.unwrap_or(sum);
        let spec = Self {
            theorem,
            z,
            p,
            k,
            a,
            b,
            c,
            r,
        };
        if r == 0 {
            return Err(Error::Precondition("r must be positive".into()));
        }
        if r % (spec.q() as u128 + 1) != sum % (spec.q() as u128 + 1) {
            return Err(Error::Precondition(format!(
                "r = {r} is not congruent to Q+R+S = {sum} mod q+1 = {}",
                spec.q() + 1
            )));
        }
        Ok(spec)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn q2(&self) -> u64 {
        self.p.pow(2 * self.k)
    }

    pub fn big_q(&self) -> u128 {
        (self.p as u128).pow(self.a)
    }

    pub fn big_r(&self) -> u128 {
        (self.p as u128).pow(self.b)
    }

    pub fn big_s(&self) -> u128 {
        (self.p as u128).pow(self.c)
    }

    /// `Q + R + S`, the degree of `B_z`.
    pub fn degree_sum(&self) -> u128 {
        self.big_q() + self.big_r() + self.big_s()
    }

    /// The unique `e` in {1, -1} with `q = e mod 3`.
    pub fn e(&self) -> i8 {
        if self.q() % 3 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn sigma(&self) -> ResidueTriple {
        ResidueTriple::of(self.big_q(), self.big_r(), self.big_s())
    }

    /// True iff the integers Q, R, S are pairwise distinct.
    pub fn distinct(&self) -> bool {
        self.a != self.b && self.a != self.c && self.b != self.c
    }

    /// Same spec with `(a, b, c)` replaced; `r` is kept since `Q+R+S` is.
    pub fn with_indices(&self, [a, b, c]: [u32; 3]) -> Self {
        Self { a, b, c, ..*self }
    }

    pub fn with_z(&self, z: u8) -> Self {
        assert!(z == 1 || z == 2);
        Self { z, ..*self }
    }

    pub fn indices(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for PentanomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} B_{} p={} k={} (Q,R,S)=({},{},{}) r={}",
            self.theorem,
            self.z,
            self.p,
            self.k,
            self.big_q(),
            self.big_r(),
            self.big_s(),
            self.r
        )
    }
}

/// 128-bit integers travel as decimal strings.
pub(crate) mod u128_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
