use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::pentanomial::{PentanomialSpec, Theorem};

/// The gcd values behind a criterion verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionDetails {
    /// `q mod 3`, either 1 or 2.
    pub q_mod_3: u8,
    /// `gcd(r, q - 1)`.
    #[serde(with = "crate::pentanomial::u128_string")]
    pub gcd_r: u128,
    /// The second integer whose gcd is taken: `Q+R+S` for T1 and
    /// `|Q-R+S|` for T2.
    #[serde(with = "crate::pentanomial::u128_string")]
    pub second_arg: u128,
    /// `q + e` for T1, `q + 1` for T2.
    #[serde(with = "crate::pentanomial::u128_string")]
    pub second_modulus: u128,
    #[serde(with = "crate::pentanomial::u128_string")]
    pub gcd_second: u128,
    pub holds: bool,
}

/// `gcd(r, q-1) = 1 = gcd(Q+R+S, q+e)` where `q = e mod 3`, `e = +-1`.
pub fn criterion_t1(spec: &PentanomialSpec) -> Result<CriterionDetails> {
    if spec.theorem != Theorem::T1 {
        return Err(Error::Precondition("criterion_t1 needs a T1 spec".into()));
    }
    let q = spec.q() as u128;
    let gcd_r = gcd(spec.r, q - 1);
    let second_arg = spec.degree_sum();
    let second_modulus = if spec.e() == 1 { q + 1 } else { q - 1 };
    let gcd_second = gcd(second_arg, second_modulus);
    Ok(CriterionDetails {
        q_mod_3: (q % 3) as u8,
        gcd_r,
        second_arg,
        second_modulus,
        gcd_second,
        holds: gcd_r == 1 && gcd_second == 1,
    })
}

/// `q = 1 mod 3` and `gcd(r, q-1) = 1 = gcd(|Q-R+S|, q+1)`, with
/// `gcd(0, n) = n`.
pub fn criterion_t2(spec: &PentanomialSpec) -> Result<CriterionDetails> {
    if spec.theorem != Theorem::T2 {
        return Err(Error::Precondition("criterion_t2 needs a T2 spec".into()));
    }
    let q = spec.q() as u128;
    let gcd_r = gcd(spec.r, q - 1);
    let plus = spec.big_q() + spec.big_s();
    let second_arg = plus.abs_diff(spec.big_r());
    let second_modulus = q + 1;
    let gcd_second = gcd(second_arg, second_modulus);
    Ok(CriterionDetails {
        q_mod_3: (q % 3) as u8,
        gcd_r,
        second_arg,
        second_modulus,
        gcd_second,
        holds: q % 3 == 1 && gcd_r == 1 && gcd_second == 1,
    })
}

/// Dispatches on the spec's theorem.
pub fn criterion(spec: &PentanomialSpec) -> CriterionDetails {
    match spec.theorem {
        Theorem::T1 => criterion_t1(spec),
        Theorem::T2 => criterion_t2(spec),
    }
    .expect("theorem matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(t: Theorem, p: u64, k: u32, idx: [u32; 3], r: u128) -> PentanomialSpec {
        PentanomialSpec::new(t, 1, p, k, idx, Some(r)).unwrap()
    }

    #[test]
    fn t1_examples() {
        let d = criterion_t1(&spec(Theorem::T1, 2, 2, [0, 1, 2], 7)).unwrap();
        assert_eq!((d.gcd_r, d.gcd_second, d.second_modulus), (1, 1, 5));
        assert!(d.holds);
        let d = criterion_t1(&spec(Theorem::T1, 2, 2, [0, 0, 0], 3)).unwrap();
        assert_eq!(d.gcd_r, 3);
        assert!(!d.holds);
        let d = criterion_t1(&spec(Theorem::T1, 2, 1, [0, 0, 0], 3)).unwrap();
        assert_eq!(d.second_modulus, 1);
        assert!(d.holds);
    }

    #[test]
    fn t2_examples() {
        assert!(
            criterion_t2(&spec(Theorem::T2, 2, 2, [1, 0, 1], 5))
                .unwrap()
                .holds
        );
        let d = criterion_t2(&spec(Theorem::T2, 2, 2, [0, 2, 0], 11)).unwrap();
        assert_eq!(d.second_arg, 2);
        assert!(d.holds);
        for idx in [[0, 0, 0], [1, 0, 1], [0, 1, 0]] {
            let s = PentanomialSpec::new(Theorem::T2, 1, 2, 1, idx, None).unwrap();
            assert!(!criterion_t2(&s).unwrap().holds);
        }
    }

    #[test]
    fn zero_difference_never_coprime() {
        // Q - R + S = 0 with Q = S = 1, R = 2.
        let d = criterion_t2(&spec(Theorem::T2, 2, 2, [0, 1, 0], 4)).unwrap();
        assert_eq!(d.second_arg, 0);
        assert_eq!(d.gcd_second, 5);
        assert!(!d.holds);
    }

    #[test]
    fn wrong_theorem_is_rejected() {
        let s = spec(Theorem::T1, 2, 2, [0, 1, 2], 7);
        assert!(criterion_t2(&s).is_err());
        assert_eq!(criterion(&s), criterion_t1(&s).unwrap());
    }
}
