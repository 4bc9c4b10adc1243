use super::*;
use crate::error::Error;
use crate::field::{find_omega, ExtFieldCtx, OmegaChoice};

fn setup(p: u64, k: u32) -> (ExtFieldCtx, ExtElem) {
    let ctx = ExtFieldCtx::new(p, k).unwrap();
    let w = find_omega(&ctx, OmegaChoice::First).unwrap();
    (ctx, w)
}

fn spec(t: Theorem, z: u8, p: u64, k: u32, idx: [u32; 3]) -> PentanomialSpec {
    PentanomialSpec::new(t, z, p, k, idx, None).unwrap()
}

/// Integer-coefficient polynomial over F_p, for expected values.
fn int_poly(ctx: &ExtFieldCtx, terms: &[(u128, i64)]) -> SparsePoly {
    SparsePoly::from_terms(ctx, terms.iter().map(|&(e, c)| (e, ctx.from_int(c))))
}

#[test]
fn t1_all_ones_over_f4() {
    let (ctx, w) = setup(2, 1);
    let s = spec(Theorem::T1, 1, 2, 1, [0, 0, 0]);
    let (c1, c2) = build_c(&s, &ctx, w).unwrap();
    // (1 - w) X^3 + 3 (w - 1) X + (1 - w^4)
    let one_minus_w = ctx.sub(ExtElem::ONE, w);
    assert_eq!(c1.coeff(3), one_minus_w);
    assert_eq!(c1.coeff(2), ExtElem::ZERO);
    assert_eq!(c1.coeff(1), one_minus_w); // char 2
    assert_eq!(c1.coeff(0), one_minus_w);
    assert_eq!(c2, c1.reversal(3));
    assert_eq!(select_beta(&s, &ctx, w).unwrap(), one_minus_w);
    let b1 = build_bz(&s, &ctx, w).unwrap();
    assert_eq!(b1, int_poly(&ctx, &[(3, 1), (1, 1), (0, 1)]));
}

#[test]
fn leading_and_constant_coefficients_follow_the_formulas() {
    for (p, k) in [(2, 2), (5, 1), (7, 1)] {
        let (ctx, w) = setup(p, k);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let s1 = spec(Theorem::T1, 1, p, k, [a, b, c]);
                    let t = s1.degree_sum();
                    let (c1, _) = build_c(&s1, &ctx, w).unwrap();
                    let lead = ctx.sub(ctx.pow(w, t), w);
                    // Merged exponents can only coincide with Q+R+S if another
                    // formal monomial equals it, which never happens.
                    assert_eq!(c1.coeff(t), lead);

                    let s2 = spec(Theorem::T2, 1, p, k, [a, b, c]);
                    let (c1, _) = build_c(&s2, &ctx, w).unwrap();
                    let (q, r, sv) = (s2.big_q(), s2.big_r(), s2.big_s());
                    let constant = ctx.sub(ctx.pow(w, r), ctx.pow(w, q + sv + 1));
                    assert_eq!(c1.coeff(0), constant);
                }
            }
        }
    }
}

#[test]
fn beta_rules() {
    let (ctx, w) = setup(2, 1);
    let w2 = ctx.mul(w, w);
    let s = spec(Theorem::T1, 1, 2, 1, [0, 0, 1]); // 1 + 1 + 2 = 4
    assert_eq!(select_beta(&s, &ctx, w).unwrap(), ctx.sub(w2, ExtElem::ONE));
    let s = spec(Theorem::T2, 1, 2, 1, [1, 0, 1]);
    let beta = select_beta(&s, &ctx, w).unwrap();
    assert_eq!(beta, ctx.sub(w, w2));
    assert!(!beta.is_zero());
    assert!(select_beta(&s, &ctx, ExtElem::ONE).is_err());
}

#[test]
fn table_one_row_with_distinct_parameters() {
    let (ctx, w) = setup(2, 2);
    let s = spec(Theorem::T1, 1, 2, 2, [2, 0, 1]);
    assert_eq!(s.sigma(), ResidueTriple([1, 1, -1]));
    let b1 = build_bz(&s, &ctx, w).unwrap();
    let exps: Vec<u128> = b1.exponents().collect();
    assert_eq!(exps, vec![0, 2, 3, 5, 6]);
    assert!(b1.terms().all(|(_, c)| c == ExtElem::ONE));
}

#[test]
fn collided_parameters_over_f5() {
    let (ctx, w) = setup(5, 1);
    let s = spec(Theorem::T1, 1, 5, 1, [0, 0, 0]);
    let b1 = build_bz(&s, &ctx, w).unwrap();
    assert_eq!(b1, int_poly(&ctx, &[(3, 1), (1, -3), (0, 1)]));
    let profile = coefficient_profile(&ctx, &b1);
    assert!(profile.prime_field);
    assert!(!profile.plus_minus_one);
}

#[test]
fn t2_char2_merging() {
    for k in [1, 2] {
        let (ctx, w) = setup(2, k);
        let s = spec(Theorem::T2, 2, 2, k, [1, 0, 1]);
        assert_eq!(s.sigma(), ResidueTriple([-1, 1, -1]));
        let b2 = build_bz(&s, &ctx, w).unwrap();
        // X^5 - X^2 - X - X^2 + 1: the two X^2 terms cancel mod 2.
        assert_eq!(b2, int_poly(&ctx, &[(5, 1), (1, 1), (0, 1)]));
        let (c1, c2) = build_c(&s, &ctx, w).unwrap();
        let beta_inv = ctx.inv(select_beta(&s, &ctx, w).unwrap()).unwrap();
        assert_eq!(b2, c2.scale(&ctx, beta_inv));
        assert_eq!(
            build_bz(&s.with_z(1), &ctx, w).unwrap(),
            c1.scale(&ctx, beta_inv)
        );
    }
}

#[test]
fn table_lookups() {
    let (ctx, _) = setup(5, 1);
    let qrs = [1u128, 5, 25];
    let t = table_closed_form(&ctx, Theorem::T1, 2, ResidueTriple([1, 1, 1]), qrs).unwrap();
    assert_eq!(
        t,
        int_poly(&ctx, &[(31, 1), (6, -1), (26, -1), (30, -1), (0, 1)])
    );
    let t = table_closed_form(&ctx, Theorem::T2, 2, ResidueTriple([1, -1, -1]), qrs).unwrap();
    assert_eq!(
        t,
        int_poly(&ctx, &[(31, -1), (6, 1), (1, -1), (5, -1), (25, 1)])
    );
    assert_eq!(
        table_closed_form(&ctx, Theorem::T2, 1, ResidueTriple([-1, 1, 1]), qrs),
        Err(Error::NotListed {
            table: 2,
            sigma: [-1, 1, 1]
        })
    );
    assert!(table_closed_form(&ctx, Theorem::T1, 1, ResidueTriple([-1, 1, 1]), qrs).is_err());
    assert_eq!(
        listed_sigmas(Theorem::T1).len() + listed_sigmas(Theorem::T2).len(),
        10
    );
}

#[test]
fn canonicalization_examples() {
    let (ctx, w) = setup(2, 2);
    // (Q,R,S) = (2,1,4): sigma (-1,1,1) for T1.
    let s = spec(Theorem::T1, 1, 2, 2, [1, 0, 2]);
    let canon = canonicalize_sigma(&s, &ctx, w).unwrap();
    assert_eq!(canon.spec.sigma(), ResidueTriple([1, 1, -1]));
    assert!(canon.sign == 1 || canon.sign == -1);

    let sorted = spec(Theorem::T1, 1, 2, 2, [0, 2, 1]);
    let canon = canonicalize_sigma(&sorted, &ctx, w).unwrap();
    assert_eq!(canon.perm, [0, 1, 2]);
    assert_eq!(canon.sign, 1);

    let (ctx, w) = setup(2, 1);
    let t2 = spec(Theorem::T2, 1, 2, 1, [0, 0, 1]);
    let canon = canonicalize_sigma(&t2, &ctx, w).unwrap();
    assert_eq!(canon.perm, [0, 1, 2]);
    assert_eq!(canon.sign, 1);
    for z in [1, 2] {
        let bz = build_bz(&t2.with_z(z), &ctx, w).unwrap();
        let table = table_closed_form(&ctx, Theorem::T2, z, t2.sigma(), [1, 1, 2]).unwrap();
        assert_eq!(bz, table);
    }
}

#[test]
fn table_agreement_on_small_grid() {
    for (p, k) in [(2, 1), (2, 2), (5, 1), (7, 1), (13, 1)] {
        let (ctx, w) = setup(p, k);
        for theorem in [Theorem::T1, Theorem::T2] {
            for idx in grid(3) {
                for z in [1, 2] {
                    let s = spec(theorem, z, p, k, idx);
                    let bz = build_bz(&s, &ctx, w).unwrap();
                    let canon = canonicalize_sigma(&s, &ctx, w).unwrap();
                    let c = canon.spec;
                    let table = table_closed_form(
                        &ctx,
                        theorem,
                        z,
                        c.sigma(),
                        [c.big_q(), c.big_r(), c.big_s()],
                    )
                    .unwrap();
                    let signed = table.scale(&ctx, ctx.from_int(canon.sign as i64));
                    assert_eq!(bz, signed, "{s}");
                }
            }
        }
    }
}

fn grid(max: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..max).flat_map(move |a| (0..max).flat_map(move |b| (0..max).map(move |c| [a, b, c])))
}

#[test]
fn assemble_examples() {
    let (ctx, w) = setup(2, 1);
    let s = spec(Theorem::T1, 1, 2, 1, [0, 0, 0]);
    let b1 = build_bz(&s, &ctx, w).unwrap();
    let f = assemble_f(&s, &b1).unwrap();
    assert_eq!(f, int_poly(&ctx, &[(6, 1), (4, 1), (3, 1)]));
    assert_eq!(
        assemble_f(&s, &SparsePoly::one()).unwrap(),
        int_poly(&ctx, &[(3, 1)])
    );

    let (ctx, w) = setup(5, 2);
    for idx in grid(3) {
        let s = spec(Theorem::T2, 1, 5, 2, idx);
        let bz = build_bz(&s, &ctx, w).unwrap();
        let f = assemble_f(&s, &bz).unwrap();
        assert_eq!(f.len(), bz.len());
        assert_eq!(
            f.degree(),
            Some(s.r + (s.q() as u128 - 1) * bz.degree().unwrap())
        );
    }
}

#[test]
fn assemble_overflow_is_a_limit_error() {
    let s = PentanomialSpec::new(Theorem::T1, 1, 2, 31, [99, 0, 0], None).unwrap();
    let bz = SparsePoly::monomial(1 << 99, ExtElem::ONE);
    assert!(assemble_f(&s, &bz).unwrap_err().is_limit());
}

#[test]
fn gcd_examples_over_f16() {
    let (ctx, w) = setup(2, 2);
    let s = spec(Theorem::T1, 1, 2, 2, [2, 0, 1]);
    let (b1, b2) = build_b_pair(&s, &ctx, w).unwrap();
    assert_eq!(
        poly_gcd_ext(&ctx, &b1, &b2, DEFAULT_GCD_DEGREE_CAP).unwrap(),
        SparsePoly::one()
    );
    let s = spec(Theorem::T2, 1, 2, 2, [1, 0, 1]);
    let (b1, b2) = build_b_pair(&s, &ctx, w).unwrap();
    let g = poly_gcd_ext(&ctx, &b1, &b2, DEFAULT_GCD_DEGREE_CAP).unwrap();
    assert_eq!(g, int_poly(&ctx, &[(2, 1), (1, 1), (0, 1)]));
    assert_eq!(g, x2_minus_x_plus_1_pow(&ctx, 1));
}

#[test]
fn omega_choice_does_not_change_bz() {
    // Both order-3 elements yield the same B_z up to sign.
    for (p, k) in [(2, 2), (5, 1), (7, 1)] {
        let ctx = ExtFieldCtx::new(p, k).unwrap();
        let w1 = find_omega(&ctx, OmegaChoice::First).unwrap();
        let w2 = find_omega(&ctx, OmegaChoice::Second).unwrap();
        let minus_one = ctx.from_int(-1);
        for theorem in [Theorem::T1, Theorem::T2] {
            for idx in grid(3) {
                let s = spec(theorem, 1, p, k, idx);
                let a = build_bz(&s, &ctx, w1).unwrap();
                let b = build_bz(&s, &ctx, w2).unwrap();
                assert!(a == b || a == b.scale(&ctx, minus_one), "{s}");
            }
        }
    }
}
