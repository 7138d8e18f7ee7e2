//! Discrete 2D engine: grid functions, sheared maximal operators, Fourier
//! multiplier operators and sector projections.

mod fourier;
mod grid;
mod maximal;
mod sector;

pub use fourier::{
    apply_multiplier, conj_symmetrize, fft2, gamma_apply, gamma_symbol, ifft2_real, signed_index,
};
pub use grid::{GridFunction, DMG1_MAGIC};
pub use maximal::{
    directional_max, parallelogram_max, shear_offset, strong_max, ScaleList,
};
pub use sector::{
    dual_slope, sector_double, sector_project, sector_project_complement, Sector, SlopeInterval,
};
