use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fppoly::{find_irreducible, FpPoly};
use super::tables::{LogTables, ZECH_ZERO};
use super::PrimeModulus;
use crate::arith::{checked_pow, prime_factors};
use crate::error::{Error, Result};

/// Fields with `q^2` at most this size get discrete-log tables by default.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

/// Largest subgroup or subfield that the enumeration helpers will list.
pub const MAX_ENUMERATION: u64 = 1 << 26;

const MAX_N: usize = 64;

/// An element of F_{q^2}, stored as the base-p integer whose digits are the
/// coefficients of its reduced representative (constant term least
/// significant). Always below `q^2`, so it is reduced by construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtElem(u64);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    /// Wraps an encoding. The caller guarantees `enc < q^2`.
    pub const fn from_encoding(enc: u64) -> Self {
        Self(enc)
    }

    pub const fn encoding(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which of the two order-3 elements `find_omega` returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaChoice {
    /// The one with the smaller encoding.
    #[default]
    First,
    Second,
}

/// F_{q^2} with `q = p^k`, modelled as F_p[X]/(m) where `m` is the first
/// monic irreducible of degree `2k` returned by [`find_irreducible`].
///
/// Immutable after construction and shareable across threads.
#[derive(Clone)]
pub struct ExtFieldCtx {
    p: PrimeModulus,
    k: u32,
    n: usize,
    modulus: FpPoly,
    /// `m_0..m_{n-1}` of the monic modulus.
    modulus_low: Vec<u64>,
    /// Characteristic 2 only: the modulus as a bit mask including `X^n`.
    modulus_mask: u128,
    q: u64,
    q2: u64,
    /// Digits of `(X^i)^p` for each basis power `X^i`.
    frob_basis: Vec<Vec<u64>>,
    tables: Option<LogTables>,
}

impl fmt::Debug for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtFieldCtx")
            .field("p", &self.p.get())
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl ExtFieldCtx {
    /// Builds F_{p^(2k)}, with log tables when `q^2 <= DEFAULT_TABLE_CAP`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_table_cap(p, k, DEFAULT_TABLE_CAP)
    }

    /// As [`ExtFieldCtx::new`] with an explicit table cap; a cap of 0
    /// forces the schoolbook routes everywhere.
    pub fn with_table_cap(p: u64, k: u32, table_cap: u64) -> Result<Self> {
        let pm = PrimeModulus::new(p)?;
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        let n = 2 * k;
        let q2 = checked_pow(p, n)
            .filter(|&v| v <= 1u128 << 63)
            .ok_or(Error::FieldTooLarge { p, n })? as u64;
        let q = checked_pow(p, k).expect("q <= q^2") as u64;
        let n = n as usize;
        let modulus = find_irreducible(pm, n);
        let modulus_low: Vec<u64> = (0..n).map(|i| modulus.coeff(i)).collect();
        let modulus_mask = if p == 2 {
            (0..=n).fold(0u128, |acc, i| acc | ((modulus.coeff(i) as u128) << i))
        } else {
            0
        };
        let mut ctx = Self {
            p: pm,
            k,
            n,
            modulus,
            modulus_low,
            modulus_mask,
            q,
            q2,
            frob_basis: Vec::new(),
            tables: None,
        };
        ctx.frob_basis = (0..n)
            .map(|i| {
                let basis = ctx.basis(i);
                ctx.digits(ctx.pow_sqmul(basis, p as u128))
            })
            .collect();
        if q2 <= table_cap {
            ctx.tables = Some(LogTables::build(&ctx));
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn prime(&self) -> PrimeModulus {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Extension degree over F_p (`2k`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q2(&self) -> u64 {
        self.q2
    }

    /// The defining polynomial of F_{q^2} over F_p.
    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub(crate) fn tables(&self) -> Option<&LogTables> {
        self.tables.as_ref()
    }

    /// The primitive element used by the log tables, if built.
    pub fn primitive_element(&self) -> Option<ExtElem> {
        self.tables.as_ref().map(|t| t.gen)
    }

    /// `X^i` for `i < n`.
    pub fn basis(&self, i: usize) -> ExtElem {
        assert!(i < self.n);
        ExtElem(self.p.get().pow(i as u32))
    }

    /// Embeds a residue mod p.
    pub fn from_fp(&self, c: u64) -> ExtElem {
        ExtElem(c % self.p.get())
    }

    /// Embeds a signed integer through its residue mod p.
    pub fn from_int(&self, c: i64) -> ExtElem {
        ExtElem(self.p.reduce_signed(c))
    }

    /// Builds an element from its low-to-high coefficients (at most `n`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<ExtElem> {
        if coeffs.len() > self.n {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.n
            )));
        }
        let p = self.p.get();
        let mut digits = [0u64; MAX_N];
        for (d, &c) in digits.iter_mut().zip(coeffs) {
            *d = c % p;
        }
        Ok(self.encode(&digits))
    }

    /// Checked wrap of an encoding.
    pub fn elem(&self, enc: u64) -> Result<ExtElem> {
        if enc < self.q2 {
            Ok(ExtElem(enc))
        } else {
            Err(Error::InvalidParameter(format!(
                "encoding {enc} outside F_{}",
                self.q2
            )))
        }
    }

    /// Exactly `n` coefficients, low degree first.
    pub fn coeffs(&self, x: ExtElem) -> Vec<u64> {
        let mut d = [0u64; MAX_N];
        self.decode(x, &mut d);
        d[..self.n].to_vec()
    }

    fn digits(&self, x: ExtElem) -> Vec<u64> {
        self.coeffs(x)
    }

    /// All elements in enumeration order (by encoding).
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + Clone {
        (0..self.q2).map(ExtElem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem(rng.gen_range(0..self.q2))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem(rng.gen_range(1..self.q2))
    }

    #[inline]
    fn decode(&self, x: ExtElem, out: &mut [u64; MAX_N]) {
        let p = self.p.get();
        let mut v = x.0;
        if p == 2 {
            for (i, d) in out.iter_mut().enumerate().take(self.n) {
                *d = (v >> i) & 1;
            }
            return;
        }
        for d in out.iter_mut().take(self.n) {
            *d = v % p;
            v /= p;
        }
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> ExtElem {
        let p = self.p.get();
        let mut v = 0u64;
        for &d in digits[..self.n].iter().rev() {
            v = v * p + d;
        }
        ExtElem(v)
    }

    /// Addition; for odd `p` through Zech logarithms when tables exist.
    #[inline]
    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.p.get() == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        match &self.tables {
            Some(t) => {
                if a.is_zero() {
                    return b;
                }
                if b.is_zero() {
                    return a;
                }
                // a + b = a (1 + b/a)
                let (la, lb, m) = (t.log_of(a), t.log_of(b), t.order());
                let d = if lb >= la { lb - la } else { lb + m - la };
                let z = t.zech()[d as usize];
                if z == ZECH_ZERO {
                    return ExtElem::ZERO;
                }
                let s = la + z as u64;
                t.exp_of(if s >= m { s - m } else { s })
            }
            None => self.add_digits(a, b),
        }
    }

    /// Reference addition, digit by digit in base `p`.
    pub fn add_digits(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p.get();
        if p == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u64, 1u64);
        while x != 0 || y != 0 {
            let s = (x % p + y % p) % p;
            out += s * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        let p = self.p.get();
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
        while x != 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    /// Multiplies by a residue mod p.
    pub fn scale_fp(&self, a: ExtElem, c: u64) -> ExtElem {
        let p = self.p.get();
        let c = c % p;
        match c {
            0 => ExtElem::ZERO,
            1 => a,
            _ => {
                let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
                while x != 0 {
                    let d = ((x % p) as u128 * c as u128 % p as u128) as u64;
                    out += d * place;
                    x /= p;
                    place = place.wrapping_mul(p);
                }
                ExtElem(out)
            }
        }
    }

    /// Multiplication through the log tables when built, else schoolbook.
    #[inline]
    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        match &self.tables {
            Some(t) => {
                if a.is_zero() || b.is_zero() {
                    return ExtElem::ZERO;
                }
                let mut s = t.log_of(a) + t.log_of(b);
                if s >= t.order() {
                    s -= t.order();
                }
                t.exp_of(s)
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Reference multiplication: polynomial product reduced mod the modulus.
    pub fn mul_schoolbook(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.p.get() == 2 {
            return self.mul_char2(a, b);
        }
        let p = self.p.get() as u128;
        let n = self.n;
        let mut da = [0u64; MAX_N];
        let mut db = [0u64; MAX_N];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let mut prod = [0u64; 2 * MAX_N];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                let t = prod[i + j] as u128 + da[i] as u128 * db[j] as u128;
                prod[i + j] = (t % p) as u64;
            }
        }
        // X^n = -(m_0 + ... + m_{n-1} X^{n-1})
        for top in (n..2 * n - 1).rev() {
            let c = prod[top] as u128;
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus_low.iter().enumerate() {
                let idx = top - n + i;
                let sub = c * m as u128 % p;
                prod[idx] = ((prod[idx] as u128 + p - sub) % p) as u64;
            }
        }
        self.encode(&prod[..n])
    }

    fn mul_char2(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let mut prod: u128 = 0;
        let mut bb = b.0;
        let aa = a.0 as u128;
        while bb != 0 {
            let i = bb.trailing_zeros();
            prod ^= aa << i;
            bb &= bb - 1;
        }
        let n = self.n;
        for top in (n..2 * n - 1).rev() {
            if (prod >> top) & 1 == 1 {
                prod ^= self.modulus_mask << (top - n);
            }
        }
        ExtElem(prod as u64)
    }

    pub fn square(&self, a: ExtElem) -> ExtElem {
        self.mul(a, a)
    }

    /// `a^e`, through the log tables when built, else square-and-multiply.
    /// `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: ExtElem, e: u128) -> ExtElem {
        match &self.tables {
            Some(t) => {
                if a.is_zero() {
                    return if e == 0 { ExtElem::ONE } else { ExtElem::ZERO };
                }
                // Tables exist only for q^2 < 2^32, so the product fits u64.
                let m = t.order();
                let e = if e < m as u128 {
                    e as u64
                } else {
                    (e % m as u128) as u64
                };
                t.exp_of(t.log_of(a) * e % m)
            }
            None => self.pow_sqmul(a, e),
        }
    }

    /// Reference exponentiation: square-and-multiply over schoolbook products.
    pub fn pow_sqmul(&self, a: ExtElem, mut e: u128) -> ExtElem {
        let mut acc = ExtElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_schoolbook(base, base);
            }
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log_of(a);
                t.exp_of(if l == 0 { 0 } else { t.order() - l })
            }
            None => self.pow_sqmul(a, self.q2 as u128 - 2),
        })
    }

    pub fn div(&self, a: ExtElem, b: ExtElem) -> Result<ExtElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^(p^j)`.
    pub fn frobenius(&self, x: ExtElem, j: u32) -> ExtElem {
        let j = j as usize % self.n;
        if j == 0 {
            return x;
        }
        match &self.tables {
            // p^j < q^2 since j < 2k.
            Some(_) => self.pow(x, self.p.get().pow(j as u32) as u128),
            None => self.frobenius_linear(x, j as u32),
        }
    }

    /// Reference Frobenius: applies the F_p-linear map `X^i -> (X^i)^p`
    /// `j mod n` times.
    pub fn frobenius_linear(&self, x: ExtElem, j: u32) -> ExtElem {
        let p = self.p.get() as u128;
        let n = self.n;
        let mut cur = [0u64; MAX_N];
        self.decode(x, &mut cur);
        for _ in 0..(j as usize % n) {
            let mut next = [0u64; MAX_N];
            for (i, &c) in cur.iter().enumerate().take(n) {
                if c == 0 {
                    continue;
                }
                for (t, &b) in self.frob_basis[i].iter().enumerate() {
                    next[t] = ((next[t] as u128 + c as u128 * b as u128) % p) as u64;
                }
            }
            cur = next;
        }
        self.encode(&cur)
    }

    /// `x^q`.
    pub fn frob_q(&self, x: ExtElem) -> ExtElem {
        self.frobenius(x, self.k)
    }

    /// True iff `x^q = x`, i.e. `x` lies in the subfield F_q.
    pub fn in_subfield_q(&self, x: ExtElem) -> bool {
        self.frob_q(x) == x
    }

    /// True iff `x^(q+1) = 1`.
    pub fn in_mu(&self, x: ExtElem) -> bool {
        self.pow(x, self.q as u128 + 1) == ExtElem::ONE
    }

    /// The norm `x^(q+1)` to F_q.
    pub fn norm(&self, x: ExtElem) -> ExtElem {
        self.pow(x, self.q as u128 + 1)
    }

    /// The `(q+1)`-th roots of unity, sorted by encoding.
    pub fn enumerate_mu(&self) -> Result<Vec<ExtElem>> {
        self.cyclic_subgroup(self.q + 1, self.q - 1)
    }

    /// The subfield F_q, sorted by encoding.
    pub fn enumerate_subfield_q(&self) -> Result<Vec<ExtElem>> {
        let mut out = self.cyclic_subgroup(self.q - 1, self.q + 1)?;
        out.insert(0, ExtElem::ZERO);
        Ok(out)
    }

    /// The subgroup of order `order` of F_{q^2}^*, where
    /// `order * cofactor = q^2 - 1`. Its generator is found among the
    /// `cofactor`-th powers in enumeration order.
    fn cyclic_subgroup(&self, order: u64, cofactor: u64) -> Result<Vec<ExtElem>> {
        if order > MAX_ENUMERATION {
            return Err(Error::LimitExceeded {
                what: "subgroup order",
                size: order as u128,
                cap: MAX_ENUMERATION as u128,
            });
        }
        let factors = prime_factors(order);
        let gen = (1..self.q2)
            .map(|c| self.pow(ExtElem(c), cofactor as u128))
            .find(|&y| {
                factors
                    .iter()
                    .all(|&l| self.pow(y, (order / l) as u128) != ExtElem::ONE)
            })
            .expect("F_{q^2}^* is cyclic");
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = ExtElem::ONE;
        for _ in 0..order {
            out.push(cur);
            cur = self.mul(cur, gen);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// An element of multiplicative order exactly 3.
///
/// Both order-3 elements are roots of `X^2 + X + 1`; `First` picks the one
/// that comes first in enumeration order and `Second` picks the other.
pub fn find_omega(ctx: &ExtFieldCtx, choice: OmegaChoice) -> Result<ExtElem> {
    if ctx.p() == 3 {
        return Err(Error::UnsupportedCharacteristic);
    }
    let order = ctx.q2() - 1;
    debug_assert_eq!(order % 3, 0);
    let w = (1..ctx.q2())
        .map(|c| ctx.pow(ExtElem(c), (order / 3) as u128))
        .find(|&w| w != ExtElem::ONE)
        .expect("3 divides q^2 - 1 when p != 3");
    let w2 = ctx.mul(w, w);
    let (lo, hi) = if w < w2 { (w, w2) } else { (w2, w) };
    Ok(match choice {
        OmegaChoice::First => lo,
        OmegaChoice::Second => hi,
    })
}
