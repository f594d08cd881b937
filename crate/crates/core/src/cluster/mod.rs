//! Exchange matrices, seed mutation and the alternating mutation sequence of
//! the square-product Y-system.

pub mod fpoly;
pub mod frame;
pub mod matrix;
pub mod mutation;
pub mod system;
pub mod verify;

pub use fpoly::{f_polynomials, FPolyFamily};
pub use frame::{
    build_frame, numeric_frame, step_backward, step_forward, symbolic_frame, tropical_frame,
    CoefficientFrame, ExportValue, SymbolicBudget, BUDGET_ENV,
};
pub use matrix::{mutate_matrix, mutate_matrix_all, ExchangeMatrix};
pub use mutation::{mutate_cluster, mutate_coefficients};
pub use system::{incidence_matrices, parity, parse_pair, square_product, ExchangeRule, YSystem};
pub use verify::{PeriodicityReport, verify_cross_backend, verify_duality, verify_periodicity, verify_periodicity_frame, verify_y_system};
