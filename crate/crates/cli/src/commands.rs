use std::fmt::Write as _;

use permpenta::field::{find_omega, ExtFieldCtx, OmegaChoice};
use permpenta::pentanomial::{
    assemble_f, build_bz, coefficient_profile, listed_sigmas, select_beta, table_row, Mono,
    PentanomialSpec, Theorem,
};
use permpenta::verify::{
    criterion, gcd_structure, has_root_on_mu, mu_reduction_permutes, proof_step_agreement,
    run_sweep, verify_decomposition, verify_spec, CriterionDetails, DecompositionOptions,
    DecompositionReport, GcdCheck, LinearityReport, PermutationReport, SweepGrid, SweepRecord,
    SweepSummary, VerifyOptions,
};
use permpenta::{Error, Result};
use serde::Serialize;

use crate::output::{
    poly_json, poly_text, report_csv, sweep_csv, yes_no, Output, PolyJson, Status,
};
use crate::GridArgs;

fn field(spec: &PentanomialSpec) -> Result<(ExtFieldCtx, permpenta::field::ExtElem)> {
    let ctx = ExtFieldCtx::new(spec.p, spec.k)?;
    let omega = find_omega(&ctx, OmegaChoice::First)?;
    Ok((ctx, omega))
}

#[derive(Serialize)]
struct Coefficients {
    terms: usize,
    prime_field: bool,
    plus_minus_one: bool,
    distinct_parameters: bool,
}

#[derive(Serialize)]
struct ConstructBody {
    spec: PentanomialSpec,
    q: u64,
    /// `Q, R, S` in decimal.
    parameters: [String; 3],
    sigma: [i8; 3],
    omega: u64,
    beta: u64,
    bz: PolyJson,
    f: PolyJson,
    /// Formal terms of `B_z` lost to merging or cancellation.
    merged_terms: usize,
    coefficients: Coefficients,
}

pub fn construct(spec: &PentanomialSpec) -> Result<Output> {
    let (ctx, omega) = field(spec)?;
    let beta = select_beta(spec, &ctx, omega)?;
    let bz = build_bz(spec, &ctx, omega)?;
    let f = assemble_f(spec, &bz)?;
    let profile = coefficient_profile(&ctx, &bz);
    let body = ConstructBody {
        spec: *spec,
        q: ctx.q(),
        parameters: [spec.big_q(), spec.big_r(), spec.big_s()].map(|v| v.to_string()),
        sigma: spec.sigma().0,
        omega: omega.encoding(),
        beta: beta.encoding(),
        bz: poly_json(&bz),
        f: poly_json(&f),
        merged_terms: 5 - bz.len(),
        coefficients: Coefficients {
            terms: profile.terms,
            prime_field: profile.prime_field,
            plus_minus_one: profile.plus_minus_one,
            distinct_parameters: spec.distinct(),
        },
    };
    let mut human = format!("{spec}\n");
    let _ = writeln!(
        human,
        "sigma {}, omega = {}, beta = {}",
        spec.sigma(),
        omega.encoding(),
        beta.encoding()
    );
    let _ = writeln!(human, "B_{} = {}", spec.z, poly_text(&ctx, &bz));
    let _ = writeln!(human, "f   = {}", poly_text(&ctx, &f));
    let _ = writeln!(
        human,
        "terms {} ({} merged), prime-field coefficients {}, all +-1 {}",
        profile.terms,
        body.merged_terms,
        yes_no(Some(profile.prime_field)),
        yes_no(Some(profile.plus_minus_one)),
    );
    Ok(Output::new("construct", Status::Pass, &body, human))
}

fn criterion_text(d: &CriterionDetails) -> String {
    format!(
        "{} (gcd(r, q-1) = {}, gcd({}, {}) = {})",
        if d.holds {
            "permutes"
        } else {
            "does not permute"
        },
        d.gcd_r,
        d.second_arg,
        d.second_modulus,
        d.gcd_second
    )
}

#[derive(Serialize)]
struct VerifyBody {
    report: PermutationReport,
    agree: bool,
}

pub fn verify(spec: &PentanomialSpec, oracle_cap: u64) -> Result<Output> {
    let (ctx, omega) = field(spec)?;
    let opts = VerifyOptions {
        oracle_cap,
        ..VerifyOptions::default()
    };
    let report = verify_spec(spec, &ctx, omega, &opts)?;
    let agree = report.agree();
    let status = if !agree {
        Status::Falsified
    } else if !report.skipped.is_empty() {
        Status::Capped
    } else {
        Status::Pass
    };
    let mut human = format!("{spec}\n");
    let _ = writeln!(human, "criterion: {}", criterion_text(&report.gcd_details));
    let _ = writeln!(human, "oracle:    {}", yes_no(report.oracle_verdict));
    let _ = writeln!(human, "mu:        {}", yes_no(report.mu_verdict));
    let _ = writeln!(human, "agree:     {}", yes_no(Some(agree)));
    for note in &report.skipped {
        let _ = writeln!(human, "skipped:   {note}");
    }
    let csv = report_csv(&report);
    Ok(Output::new("verify", status, &VerifyBody { report, agree }, human).with_csv(csv))
}

#[derive(Serialize)]
struct SweepBody {
    grid: SweepGrid,
    summary: SweepSummary,
    records: Vec<SweepRecord>,
}

fn record_line(r: &SweepRecord) -> String {
    let mut line = format!(
        "p={} k={} T{} B_{} (a,b,c)=({},{},{}) r={} criterion={} oracle={} mu={} {}",
        r.p,
        r.k,
        r.theorem,
        r.z,
        r.a,
        r.b,
        r.c,
        r.r,
        yes_no(r.criterion),
        yes_no(r.oracle),
        yes_no(r.mu),
        if r.agree { "agree" } else { "DISAGREE" },
    );
    if let Some(e) = &r.error {
        let _ = write!(line, " error: {e}");
    } else if let Some(s) = &r.skipped {
        let _ = write!(line, " skipped: {s}");
    }
    line
}

pub fn sweep(args: &GridArgs, oracle_cap: u64) -> Result<Output> {
    let mut grid = SweepGrid::new(args.p.clone(), args.kmax, args.imax);
    grid.q2_max = args.q2_max;
    if let Some(t) = args.theorem {
        grid.theorems = vec![Theorem::from_number(t)?];
    }
    if let Some(z) = args.z {
        grid.zs = vec![z];
    }
    let opts = VerifyOptions {
        oracle_cap,
        ..VerifyOptions::default()
    };
    let (records, summary) = run_sweep(&grid, &opts)?;
    let mut human = String::new();
    for r in &records {
        let _ = writeln!(human, "{}", record_line(r));
    }
    let _ = writeln!(
        human,
        "records {}, agree {}, disagree {}, errors {}, skipped {}, permutations {}",
        summary.records,
        summary.agreements,
        summary.disagreements,
        summary.errors,
        summary.skipped,
        summary.permutations
    );
    let status = if summary.falsified() {
        Status::Falsified
    } else {
        Status::Pass
    };
    let csv = sweep_csv(&records);
    let body = SweepBody {
        grid,
        summary,
        records,
    };
    Ok(Output::new("sweep", status, &body, human).with_csv(csv))
}

#[derive(Serialize)]
struct ProofStep {
    compared: u64,
    mismatches: u64,
}

#[derive(Serialize)]
struct MuCheckBody {
    spec: PentanomialSpec,
    criterion: CriterionDetails,
    mu: bool,
    root_on_mu: bool,
    proof_step: ProofStep,
    gcd: Option<GcdCheck>,
    skipped: Vec<String>,
    holds: bool,
}

pub fn mu_check(spec: &PentanomialSpec, oracle_cap: u64, gcd_cap: u128) -> Result<Output> {
    let (ctx, omega) = field(spec)?;
    let details = criterion(spec);
    let bz = build_bz(spec, &ctx, omega)?;
    let mu = mu_reduction_permutes(spec, &bz, &ctx, oracle_cap)?;
    let root_on_mu = has_root_on_mu(&bz, &ctx, oracle_cap)?;
    let (compared, mismatches) = proof_step_agreement(spec, &ctx, omega, oracle_cap)?;
    let mut skipped = Vec::new();
    let gcd = match gcd_structure(spec, &ctx, omega, gcd_cap) {
        Ok(g) => Some(g),
        Err(e @ Error::LimitExceeded { .. }) => {
            skipped.push(format!("gcd: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    // A permutation forces B_z to be nonzero on the roots of unity.
    let holds = mu == details.holds
        && mismatches == 0
        && !(details.holds && root_on_mu)
        && gcd.as_ref().map_or(true, |g| g.holds);
    let status = match (holds, skipped.is_empty()) {
        (false, _) => Status::Falsified,
        (true, false) => Status::Capped,
        (true, true) => Status::Pass,
    };
    let mut human = format!("{spec}\n");
    let _ = writeln!(human, "criterion:        {}", criterion_text(&details));
    let _ = writeln!(
        human,
        "mu reduction:     {}",
        if mu {
            "permutes mu"
        } else {
            "does not permute mu"
        }
    );
    let _ = writeln!(
        human,
        "B_{} root on mu:   {}",
        spec.z,
        yes_no(Some(root_on_mu))
    );
    let _ = writeln!(
        human,
        "proof step:       {mismatches} mismatches on {compared} points"
    );
    match &gcd {
        Some(g) => {
            let _ = writeln!(
                human,
                "gcd(B_1, B_2):    degree {}, predicted (X^2-X+1)^{}: {}",
                g.computed_degree.map_or("-".into(), |d| d.to_string()),
                g.multiplicity,
                if g.holds { "matches" } else { "DIFFERS" }
            );
        }
        None => {
            for note in &skipped {
                let _ = writeln!(human, "skipped:          {note}");
            }
        }
    }
    let _ = writeln!(human, "holds:            {}", yes_no(Some(holds)));
    let body = MuCheckBody {
        spec: *spec,
        criterion: details,
        mu,
        root_on_mu,
        proof_step: ProofStep {
            compared,
            mismatches,
        },
        gcd,
        skipped,
        holds,
    };
    Ok(Output::new("mu-check", status, &body, human))
}

#[derive(Serialize)]
struct DecomposeBody {
    #[serde(flatten)]
    report: DecompositionReport,
    holds: bool,
}

fn linearity_text(name: &str, r: &Option<LinearityReport>) -> String {
    match r {
        None => format!("{name}: not checked"),
        Some(r) => {
            format!(
            "{name}: additive {}, homogeneous {}, injective {}, into codomain {} ({} on {} points)",
            yes_no(Some(r.additive)),
            yes_no(Some(r.homogeneous)),
            yes_no(Some(r.injective)),
            yes_no(Some(r.into_codomain)),
            if r.exhaustive { "exhaustive" } else { "sampled" },
            r.points
        )
        }
    }
}

pub fn decompose(spec: &PentanomialSpec, cap: u64, seed: u64, sample: usize) -> Result<Output> {
    let (ctx, omega) = field(spec)?;
    let opts = DecompositionOptions {
        exhaustive_cap: cap,
        sample,
        seed,
        check_maps: true,
    };
    let report = verify_decomposition(spec, &ctx, omega, opts)?;
    let holds = report.holds();
    let agreeing = report.points - report.mismatches;
    let mut human = format!("{spec}\n");
    let verdict = if report.mismatches == 0 {
        "holds"
    } else {
        "FAILS"
    };
    let _ = write!(
        human,
        "{} branch, equality {verdict} on {agreeing}/{} points",
        report.case, report.points
    );
    match report.seed {
        Some(s) => {
            let _ = writeln!(human, " (random sample, seed {s})");
        }
        None => human.push('\n'),
    }
    let _ = writeln!(human, "{}", report.maps);
    let _ = writeln!(human, "{}", linearity_text("eta", &report.eta));
    let _ = writeln!(human, "{}", linearity_text("rho", &report.rho));
    let status = if holds {
        Status::Pass
    } else {
        Status::Falsified
    };
    Ok(Output::new(
        "decompose",
        status,
        &DecomposeBody { report, holds },
        human,
    ))
}

fn mono_name(m: Mono) -> &'static str {
    match m {
        Mono::Qrs => "Q+R+S",
        Mono::Qr => "Q+R",
        Mono::Qs => "Q+S",
        Mono::Rs => "R+S",
        Mono::Q => "Q",
        Mono::R => "R",
        Mono::S => "S",
        Mono::One => "0",
    }
}

fn row_text(row: &[(i8, Mono); 5]) -> String {
    let mut out = String::new();
    for (i, &(sign, mono)) in row.iter().enumerate() {
        let sep = match (i, sign < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let term = match mono {
            Mono::One => "1".to_string(),
            Mono::Q | Mono::R | Mono::S => format!("X^{}", mono_name(mono)),
            _ => format!("X^({})", mono_name(mono)),
        };
        let _ = write!(out, "{sep}{term}");
    }
    out
}

/// A signed term: `(sign, exponent as a sum of Q, R, S)`.
type RowJson = Vec<(i8, &'static str)>;

#[derive(Serialize)]
struct TableRow {
    theorem: Theorem,
    sigma: [i8; 3],
    b1: RowJson,
    b2: RowJson,
}

#[derive(Serialize)]
struct TablesBody {
    rows: Vec<TableRow>,
}

pub fn tables(theorem: Option<u8>) -> Result<Output> {
    let theorems = match theorem {
        Some(t) => vec![Theorem::from_number(t)?],
        None => vec![Theorem::T1, Theorem::T2],
    };
    let mut rows = Vec::new();
    let mut human = String::new();
    for t in theorems {
        for sigma in listed_sigmas(t) {
            let b1 = table_row(t, 1, sigma)?;
            let b2 = table_row(t, 2, sigma)?;
            let label = format!("{t} {sigma}");
            let _ = writeln!(human, "{label:<14} B_1 = {}", row_text(&b1));
            let _ = writeln!(human, "{label:<14} B_2 = {}", row_text(&b2));
            let json = |row: [(i8, Mono); 5]| row.iter().map(|&(s, m)| (s, mono_name(m))).collect();
            rows.push(TableRow {
                theorem: t,
                sigma: sigma.0,
                b1: json(b1),
                b2: json(b2),
            });
        }
    }
    Ok(Output::new(
        "tables",
        Status::Pass,
        &TablesBody { rows },
        human,
    ))
}
