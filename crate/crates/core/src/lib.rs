//! Numerical laboratory for planar directional maximal operators.
//!
//! The crate builds lacunary direction sets with verifiable certificates,
//! evaluates sheared maximal operators and band-limited multiplier operators
//! on periodic grids, checks the pointwise decomposition machinery behind
//! the L2 bounds, and measures operator-norm growth against lacunary order
//! and direction count.

pub mod directions;
pub mod error;
pub mod gridops;
pub mod kernels;
pub mod verify;

pub use directions::{
    build_n_lacunary, certify_log_order, geometric_slopes, is_one_lacunary, verify_certificate,
    BuildSpec, GapEnd, LacunaryCertificate, LacunaryCheck, LevelRule, RunShape, RunWitness, Slope,
    SlopeSet, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use gridops::{
    directional_max, gamma_apply, parallelogram_max, sector_double, sector_project, strong_max,
    GridFunction, ScaleList, Sector, SlopeInterval,
};
pub use kernels::{
    cut_radii, fejer, psi, psi_hat, split_radii, window_phi, window_phi_hat, zeta_majorant,
    CutRadii, KernelParams, SplitPiece, SplitPlan, SymbolProfile, ZetaMajorant,
};
pub use verify::{
    build_chain, check_lemma1, check_lemma2, check_sector_overlap, estimate_norm, run_experiment,
    ExperimentConfig, ExperimentReport, IntervalChain, NormEstimate,
};
