//! Numerical verification of the decomposition lemmas and operator-norm
//! growth experiments.

mod chain;
mod experiment;
mod gates;
mod lemmas;
mod norms;
mod overlap;
pub mod pins;

pub use chain::{build_chain, IntervalChain};
pub use experiment::{
    csv_string, run_experiment, write_outputs, ExperimentConfig, ExperimentReport, FamilySpec,
    ReportRow, ScaleSpec,
};
pub use gates::{
    all_passed, chain_gate, deep_chain_family, first_failure, kernels_gate, lemma1_gate,
    lemma1_point_instance, lemma1_suite, lemma2_gate, lemma2_point_instance, lemma2_suite,
    overlap_gate, random_chain_family, GateCheck, Lemma2SuiteStats, LEMMA1_SUITE_SEED,
    LEMMA2_SUITE_SEED,
};
pub use lemmas::{check_lemma1, check_lemma2, Lemma1Report, Lemma2Report, RATIO_FLOOR};
pub use norms::{
    besicovitch_stack, estimate_norm, operator_ratio, witness_library, NormEstimate,
};
pub use overlap::{check_sector_overlap, gap_overlap_multiplicity, OVERLAP_SAMPLES};
