//! Exact integer ground truth: matrix-tree counts, rooted-forest
//! polynomials, `Z[√2]` arithmetic for Chebyshev products, and the exact
//! torus/grid and QAD identities.

mod algebraic;
mod graph;
mod identities;
mod linalg;

pub use algebraic::{chebyshev_product, chebyshev_product_f64, silver_difference, u_sequence, AlgebraicInt};
pub use graph::{
    build_graph, grid_graph, qad_graph, torus_graph, GraphKind, GraphSpec, QadRule, MAX_EXACT_VERTICES,
};
pub use identities::{
    tau_qad_product, verify_qad_identity, verify_torus_grid_identity, IdentityCheck, LogValue,
    MAX_QAD_PRODUCT_ORDER,
};
pub use linalg::{
    bareiss_determinant, characteristic_polynomial, forest_polynomial, matrix_tree, ForestPolynomial,
    MAX_FOREST_VERTICES,
};
