//! Independent checks of the permutation property and of the structural
//! claims behind it.

mod criterion;
mod decomposition;
mod mobius_suite;
mod mu;
mod oracle;
mod report;
mod structure;
mod sweep;

pub use criterion::{criterion, criterion_t1, criterion_t2, CriterionDetails};
pub use decomposition::{
    verify_decomposition, DecompositionEngine, DecompositionOptions, DecompositionReport,
    LinearMapSpec, LinearityReport, QClass, Vector, DEFAULT_SAMPLE,
};
pub use mobius_suite::{
    check_cubic_mobius, check_deg1_on_mu, check_mu_to_line, deg1mu_map, eta_map, mu_to_line_map,
    rho_map, CubicMobiusReport, SuiteCount,
};
pub use mu::{mu_map, mu_reduction_permutes};
pub use oracle::{
    brute_force_permutes, brute_force_permutes_with, check_cap, Strategy, DEFAULT_ORACLE_CAP,
};
pub use report::{verify_spec, PermutationReport, Timing, VerifyOptions};
pub use structure::{gcd_structure, has_root_on_mu, predicted_gcd, proof_step_agreement, GcdCheck};
pub use sweep::{run_sweep, SweepGrid, SweepRecord, SweepSummary};
