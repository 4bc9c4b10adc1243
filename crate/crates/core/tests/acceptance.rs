//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use permpenta::field::{find_omega, ExtElem, ExtFieldCtx, OmegaChoice};
use permpenta::pentanomial::assemble_f;
use permpenta::pentanomial::{
    build_b_pair, build_bz, canonicalize_sigma, listed_sigmas, poly_gcd_ext, select_beta,
    table_closed_form, PentanomialSpec, ResidueTriple, SparsePoly, Theorem, DEFAULT_GCD_DEGREE_CAP,
};
use permpenta::verify::{
    brute_force_permutes, check_cubic_mobius, check_deg1_on_mu, check_mu_to_line, criterion,
    mu_reduction_permutes, run_sweep, DecompositionEngine, DecompositionOptions, QClass, SweepGrid,
    VerifyOptions,
};

const PRIMES: [u64; 4] = [2, 5, 7, 13];
const GRID_Q2_MAX: u64 = 1 << 20;
const INDEX_MAX: u32 = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn grid_fields() -> Vec<(u64, u32)> {
    SweepGrid::new(PRIMES.to_vec(), 10, INDEX_MAX as i64)
        .with_q2_max(GRID_Q2_MAX)
        .fields()
}

fn triples() -> impl Iterator<Item = [u32; 3]> {
    (0..=INDEX_MAX)
        .flat_map(|a| (0..=INDEX_MAX).flat_map(move |b| (0..=INDEX_MAX).map(move |c| [a, b, c])))
}

fn field(p: u64, k: u32) -> (ExtFieldCtx, ExtElem) {
    let ctx = ExtFieldCtx::new(p, k).expect("grid field");
    let w = find_omega(&ctx, OmegaChoice::First).expect("p != 3");
    (ctx, w)
}

fn criterion_equivalence() -> Outcome {
    let grid = SweepGrid::new(PRIMES.to_vec(), 10, INDEX_MAX as i64).with_q2_max(GRID_Q2_MAX);
    let expected = grid.fields().len() as u64 * 64 * 2 * 2 * 2;
    let opts = VerifyOptions {
        oracle_cap: GRID_Q2_MAX,
        ..VerifyOptions::default()
    };
    let (records, s) = run_sweep(&grid, &opts).expect("valid grid");
    let complete = records.iter().all(|r| r.oracle.is_some() && r.mu.is_some());
    Outcome {
        pass: s.records == expected && complete && s.skipped == 0 && !s.falsified(),
        detail: format!(
            "{} specs, {} agree, {} disagree, {} errors, {} skipped, {} permutations",
            s.records, s.agreements, s.disagreements, s.errors, s.skipped, s.permutations
        ),
    }
}

fn coefficient_structure() -> Outcome {
    let (mut specs, mut violations) = (0u64, Vec::new());
    for (p, k) in grid_fields() {
        let (ctx, w) = field(p, k);
        let minus_one = ctx.from_int(-1);
        for theorem in [Theorem::T1, Theorem::T2] {
            for z in [1, 2] {
                for idx in triples() {
                    let base = PentanomialSpec::new(theorem, z, p, k, idx, None).unwrap();
                    for m in [0u128, 1] {
                        let r = base.r + m * (ctx.q() as u128 + 1);
                        let spec = PentanomialSpec::new(theorem, z, p, k, idx, Some(r)).unwrap();
                        specs += 1;
                        let beta = select_beta(&spec, &ctx, w);
                        let bz = build_bz(&spec, &ctx, w);
                        let ok = match (beta, bz) {
                            (Ok(beta), Ok(bz)) => {
                                // c^p = c characterises the prime field.
                                let prime_field =
                                    bz.terms().all(|(_, c)| ctx.pow_sqmul(c, p as u128) == c);
                                let signs =
                                    bz.terms().all(|(_, c)| c == ExtElem::ONE || c == minus_one);
                                !beta.is_zero()
                                    && bz.len() <= 5
                                    && prime_field
                                    && (!spec.distinct() || signs)
                            }
                            _ => false,
                        };
                        if !ok {
                            violations.push(spec.to_string());
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: violations.is_empty(),
        detail: format!(
            "{specs} specs, {} violations {:?}",
            violations.len(),
            violations
        ),
    }
}

/// Smallest pairwise-distinct indices in `0..6` realising `sigma` at `p`.
fn instantiate(p: u64, sigma: ResidueTriple) -> Option<[u32; 3]> {
    let res = |i: u32| if p.pow(i) % 3 == 1 { 1i8 } else { -1 };
    let options = |s: i8| (0..6u32).filter(move |&i| res(i) == s);
    for a in options(sigma.0[0]) {
        for b in options(sigma.0[1]) {
            for c in options(sigma.0[2]) {
                if a != b && a != c && b != c {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn table_regression() -> Outcome {
    let (mut compared, mut failures) = (0, Vec::new());
    let mut rows = 0;
    for theorem in [Theorem::T1, Theorem::T2] {
        for sigma in listed_sigmas(theorem) {
            rows += 1;
            for z in [1u8, 2] {
                for (p, k) in [(2, 1), (2, 2), (5, 1), (5, 2)] {
                    let (ctx, w) = field(p, k);
                    let Some(idx) = instantiate(p, sigma) else {
                        failures.push(format!("no instance of {sigma:?} at p={p}"));
                        continue;
                    };
                    let spec = PentanomialSpec::new(theorem, z, p, k, idx, None).unwrap();
                    let bz = build_bz(&spec, &ctx, w).unwrap();
                    let canon = canonicalize_sigma(&spec, &ctx, w).unwrap();
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
                    compared += 1;
                    if bz != signed {
                        failures.push(spec.to_string());
                    }
                }
            }
        }
    }
    Outcome {
        pass: rows == 10 && compared == 80 && failures.is_empty(),
        detail: format!("{rows} rows, {compared} comparisons, failures {failures:?}"),
    }
}

fn mobius_suite() -> Outcome {
    let fields = [(2, 1), (2, 2), (5, 1), (7, 1), (2, 3), (13, 1), (2, 4)];
    let cap = u64::MAX;
    let (mut checks, mut failures) = (0u64, Vec::new());
    for (p, k) in fields {
        let ctx = ExtFieldCtx::new(p, k).unwrap();
        let q = ctx.q();
        for choice in [OmegaChoice::First, OmegaChoice::Second] {
            let w = find_omega(&ctx, choice).unwrap();
            let prop = check_cubic_mobius(&ctx, w, cap).unwrap();
            checks += 1;
            if !prop.holds() {
                failures.push(format!("cubic mobius q={q}: {prop:?}"));
            }
        }
        let a = check_deg1_on_mu(&ctx, cap).unwrap();
        let b = check_mu_to_line(&ctx, cap).unwrap();
        checks += a.checked + b.checked;
        if !a.holds() || a.checked == 0 {
            failures.push(format!("deg1mu q={q}: {a:?}"));
        }
        if !b.holds() || b.checked == 0 {
            failures.push(format!("mu-to-line q={q}: {b:?}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("q in {{2,4,5,7,8,13,16}}, {checks} maps checked, failures {failures:?}"),
    }
}

/// `(X^2 - X + 1)^m` by repeated multiplication.
fn cyclotomic_power(ctx: &ExtFieldCtx, m: u128) -> SparsePoly {
    let base = SparsePoly::from_terms(
        ctx,
        [(2, ExtElem::ONE), (1, ctx.from_int(-1)), (0, ExtElem::ONE)],
    );
    (0..m).fold(SparsePoly::one(), |acc, _| acc.mul(ctx, &base))
}

fn gcd_structure() -> Outcome {
    let fields = grid_fields()
        .into_iter()
        .filter(|&(p, k)| p.pow(k) <= 16)
        .collect::<Vec<_>>();
    let (mut t1, mut t2, mut failures) = (0, 0, Vec::new());
    for (p, k) in fields {
        let (ctx, w) = field(p, k);
        for theorem in [Theorem::T1, Theorem::T2] {
            for idx in triples() {
                let spec = PentanomialSpec::new(theorem, 1, p, k, idx, None).unwrap();
                let expected = match theorem {
                    Theorem::T1 => SparsePoly::one(),
                    Theorem::T2 => {
                        let m = (spec.big_q() + spec.big_s()).min(spec.big_r());
                        if m > 3 {
                            continue;
                        }
                        cyclotomic_power(&ctx, m)
                    }
                };
                let (b1, b2) = build_b_pair(&spec, &ctx, w).unwrap();
                let g = poly_gcd_ext(&ctx, &b1, &b2, DEFAULT_GCD_DEGREE_CAP).unwrap();
                match theorem {
                    Theorem::T1 => t1 += 1,
                    Theorem::T2 => t2 += 1,
                }
                if g != expected {
                    failures.push(spec.to_string());
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && t1 > 0 && t2 > 0,
        detail: format!("{t1} T1 and {t2} T2 specs with q <= 16, failures {failures:?}"),
    }
}

fn decomposition() -> Outcome {
    let (mut specs, mut points, mut failures) = (0u64, 0u64, Vec::new());
    let (mut one, mut two) = (false, false);
    let mut sampled = 0;
    for (p, k) in grid_fields() {
        let (ctx, w) = field(p, k);
        let engine = DecompositionEngine::new(&ctx, w, DecompositionOptions::default());
        for theorem in [Theorem::T1, Theorem::T2] {
            for z in [1, 2] {
                for idx in triples() {
                    let spec = PentanomialSpec::new(theorem, z, p, k, idx, None).unwrap();
                    let report = engine.verify(&spec).unwrap();
                    specs += 1;
                    points += report.points;
                    match report.case {
                        QClass::OneMod3 => one = true,
                        QClass::TwoMod3 => two = true,
                    }
                    if !report.exhaustive {
                        sampled += 1;
                    }
                    let maps_ok = report.eta.is_some_and(|r| r.holds() && r.exhaustive)
                        && report.rho.is_some_and(|r| r.holds() && r.exhaustive);
                    if report.mismatches != 0 || !maps_ok {
                        failures.push(format!("{spec}: {report:?}"));
                    }
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && one && two && sampled == 0,
        detail: format!(
            "{specs} specs, {points} points, both classes {}, failures {failures:?}",
            one && two
        ),
    }
}

/// A known instance: theorem, z, (Q, R, S) as powers of 2, `r` as a
/// function of `q` (None: every admissible `r` tried is `Q+R+S` and
/// `Q+R+S+(q+1)`), and whether the row requires `q = 2 mod 3`.
struct Fixture {
    theorem: Theorem,
    z: u8,
    idx: [u32; 3],
    r: Option<fn(u128) -> u128>,
    needs_q_2_mod_3: bool,
}

const fn fx(
    theorem: Theorem,
    z: u8,
    idx: [u32; 3],
    r: Option<fn(u128) -> u128>,
    needs_q_2_mod_3: bool,
) -> Fixture {
    Fixture {
        theorem,
        z,
        idx,
        r,
        needs_q_2_mod_3,
    }
}

fn fixtures() -> Vec<Fixture> {
    use Theorem::{T1, T2};
    vec![
        // First-family instances not equivalent to simpler known forms.
        fx(T1, 1, [0, 0, 0], Some(|_| 3), false),
        fx(T1, 2, [0, 0, 0], Some(|_| 3), false),
        fx(T1, 1, [0, 0, 0], Some(|q| q + 4), true),
        fx(T1, 2, [0, 0, 0], Some(|q| q * q - q + 1), true),
        fx(T1, 1, [0, 0, 0], Some(|q| q * q - q + 1), false),
        fx(T1, 1, [0, 0, 0], None, false),
        fx(T1, 2, [0, 1, 1], Some(|_| 5), false),
        fx(T1, 2, [0, 1, 1], None, false),
        fx(T2, 1, [1, 0, 1], Some(|_| 5), false),
        fx(T2, 2, [1, 0, 1], Some(|_| 5), false),
        fx(T2, 2, [1, 0, 1], Some(|q| q * q - 2 * q + 2), false),
        fx(T2, 1, [1, 0, 1], None, false),
        fx(T2, 2, [1, 0, 1], None, false),
        fx(T1, 2, [1, 1, 1], Some(|_| 6), false),
        // Second-family instances.
        fx(T1, 1, [2, 0, 1], Some(|_| 7), false),
        fx(T2, 2, [2, 0, 1], Some(|_| 7), false),
        fx(T1, 2, [2, 0, 1], Some(|q| q * q - q + 5), false),
        fx(T2, 2, [2, 0, 2], Some(|q| q * q - q + 7), false),
        fx(T1, 2, [0, 3, 1], Some(|_| 11), false),
        fx(T1, 1, [0, 3, 1], None, false),
        fx(T1, 1, [2, 0, 3], Some(|_| 13), false),
        fx(T2, 2, [2, 0, 3], Some(|_| 13), false),
        fx(T1, 1, [4, 0, 1], Some(|_| 19), false),
        fx(T1, 1, [4, 2, 0], Some(|_| 21), false),
        fx(T1, 1, [4, 0, 3], Some(|_| 25), false),
        fx(T1, 2, [0, 5, 1], Some(|_| 35), false),
        fx(T1, 1, [2, 0, 5], Some(|_| 37), false),
        fx(T2, 1, [0, 3, 5], Some(|_| 41), false),
        fx(T1, 2, [0, 5, 3], Some(|_| 41), false),
        fx(T1, 1, [4, 0, 5], Some(|_| 49), false),
        fx(T1, 1, [6, 0, 1], Some(|_| 67), false),
        fx(T1, 1, [6, 2, 0], Some(|_| 69), false),
        fx(T1, 1, [6, 0, 3], Some(|_| 73), false),
        fx(T1, 1, [6, 4, 0], Some(|_| 81), false),
        fx(T1, 1, [6, 0, 5], Some(|_| 97), false),
    ]
}

fn known_instances() -> Outcome {
    let (mut instances, mut permuting, mut failures) = (0, 0, Vec::new());
    let all = fixtures();
    let mut rows_confirmed = 0;
    for fixture in &all {
        let mut row_positive = false;
        for k in 1..=8u32 {
            let q = 1u128 << k;
            if fixture.needs_q_2_mod_3 && q % 3 != 2 {
                continue;
            }
            let base =
                PentanomialSpec::new(fixture.theorem, fixture.z, 2, k, fixture.idx, None).unwrap();
            let rs = match fixture.r {
                Some(r) => vec![r(q)],
                None => vec![base.r, base.r + q + 1],
            };
            let (ctx, w) = field(2, k);
            for r in rs {
                // Rows with a fixed r only apply where r matches Q+R+S mod q+1.
                let Ok(spec) =
                    PentanomialSpec::new(fixture.theorem, fixture.z, 2, k, fixture.idx, Some(r))
                else {
                    continue;
                };
                instances += 1;
                let verdict = criterion(&spec).holds;
                let bz = build_bz(&spec, &ctx, w).unwrap();
                let f = assemble_f(&spec, &bz).unwrap();
                let oracle = brute_force_permutes(&f, &ctx, u64::MAX).unwrap();
                let mu = mu_reduction_permutes(&spec, &bz, &ctx, u64::MAX).unwrap();
                if verdict != oracle || verdict != mu {
                    failures.push(format!(
                        "{spec}: criterion {verdict}, oracle {oracle}, mu {mu}"
                    ));
                }
                if fixture.needs_q_2_mod_3 && !verdict {
                    failures.push(format!("{spec}: row condition holds but criterion fails"));
                }
                if verdict {
                    permuting += 1;
                    row_positive = true;
                }
            }
        }
        if row_positive {
            rows_confirmed += 1;
        } else {
            failures.push(format!(
                "{:?} B_{} {:?}: no permutation at q <= 256",
                fixture.theorem, fixture.z, fixture.idx
            ));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{} rows, {rows_confirmed} with a confirmed permutation, {instances} instances, \
             {permuting} permutations, failures {failures:?}",
            all.len()
        ),
    }
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 7] = [
        (
            "criterion-oracle equivalence over the sweep grid",
            Some(Duration::from_secs(300)),
            criterion_equivalence,
        ),
        ("coefficient structure of B_z", None, coefficient_structure),
        ("closed-form table regression", None, table_regression),
        (
            "Mobius map checks",
            Some(Duration::from_secs(30)),
            mobius_suite,
        ),
        ("gcd(B_1, B_2) structure", None, gcd_structure),
        (
            "linear-equivalence decomposition",
            Some(Duration::from_secs(120)),
            decomposition,
        ),
        ("known instances", None, known_instances),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget_note = match budget {
            Some(b) if !in_time => format!(", over the {}s budget", b.as_secs()),
            _ => String::new(),
        };
        println!(
            "{} [{}] {name}: {} ({:.1}s{budget_note})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
