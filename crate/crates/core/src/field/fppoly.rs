use std::fmt;

use super::PrimeModulus;
use crate::arith::proper_divisors;

/// A polynomial over F_p with coefficients stored low degree first.
///
/// Canonical form has no zero leading coefficient; the zero polynomial has
/// an empty coefficient vector and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: PrimeModulus,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn zero(p: PrimeModulus) -> Self {
        Self {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::from_coeffs(p, vec![1])
    }

    /// `X^d`.
    pub fn monomial(p: PrimeModulus, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        Self { p, coeffs }
    }

    /// Builds a polynomial from low-to-high coefficients, reducing mod p.
    pub fn from_coeffs(p: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let m = p.get();
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % m).collect(),
        };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    /// Coefficients low degree first, without trailing zeros.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.p.get();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + other.coeff(i)) % m)
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.p.get();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + m - other.coeff(i)) % m)
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let m = self.p.get() as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % m;
            }
        }
        Self::from_coeffs(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale(&self, c: u64) -> Self {
        let m = self.p.get() as u128;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as u128 * c as u128) % m) as u64)
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    /// Scales to a monic polynomial; the zero polynomial is returned as is.
    pub fn to_monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => self.scale(self.p.inv(lead)),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let m = self.p.get();
        let lead_inv = self.p.inv(divisor.coeffs[d]) as u128;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = ((c as u128 * lead_inv) % m as u128) as u64;
            quot[top - d] = factor;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + i;
                let sub = ((factor as u128 * dc as u128) % m as u128) as u64;
                rem[idx] = (rem[idx] + m - sub) % m;
            }
        }
        (
            Self::from_coeffs(self.p, quot),
            Self::from_coeffs(self.p, rem),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_monic()
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Rabin-style test: `X^(p^n) = X mod f` and `gcd(X^(p^d) - X, f) = 1`
    /// for every proper divisor `d` of `n = deg f`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let x = Self::monomial(self.p, 1);
        let p = self.p.get() as u128;
        // frob[d] = X^(p^d) mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(self));
        for d in 1..=n {
            let next = frob[d - 1].pow_mod(p, self);
            frob.push(next);
        }
        if frob[n] != x.rem(self) {
            return false;
        }
        proper_divisors(n as u32)
            .into_iter()
            .all(|d| frob[d as usize].sub(&x).gcd(self).degree() == Some(0))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(p={}, {})", self.p.get(), self)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// The first monic irreducible polynomial of degree `n` over F_p when
/// candidates are ordered lexicographically on `(c_0, c_1, ..., c_{n-1})`,
/// constant term compared first.
pub fn find_irreducible(p: PrimeModulus, n: usize) -> FpPoly {
    assert!(n >= 1, "degree must be positive");
    if n == 1 {
        return FpPoly::monomial(p, 1);
    }
    let m = p.get();
    // For n > 1 a zero constant term means X divides the candidate.
    let mut lower = vec![0u64; n];
    lower[0] = 1;
    loop {
        let mut coeffs = lower.clone();
        coeffs.push(1);
        let cand = FpPoly::from_coeffs(p, coeffs);
        if cand.is_irreducible() {
            return cand;
        }
        // Odometer: the last coefficient varies fastest.
        let mut i = n - 1;
        loop {
            lower[i] += 1;
            if lower[i] < m {
                break;
            }
            lower[i] = 0;
            assert!(i > 0, "irreducible polynomials exist in every degree");
            i -= 1;
        }
    }
}
