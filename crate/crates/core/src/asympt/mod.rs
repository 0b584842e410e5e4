//! Lattice constants, theorem right-hand sides and residual sweeps.

mod constants;
mod theorems;

pub use constants::{
    boundary_coeff, boundary_coeff_m1_closed, boundary_verdict_3_1, glasser_boundary_sum, glasser_j, green,
    lattice_constant, lattice_constant_2d_closed, mahler_measure_trapezoid, watson, watson3_closed,
    BoundaryCandidate, BoundaryVerdict,
};
pub use theorems::{
    face_determinant_sum, forest_coefficients, forest_prediction, lattice_log_constant, residual_sweep,
    theorem1_rhs, theorem3_constant_from_grid, theorem3_rhs, ConstantCandidate, SweepOptions, SweepRecord,
    SweepReport, SweepTarget, TheoremRHS,
};
