//! Verification that the profile family satisfies `Ric = -(2n-1) g`.

pub mod oracle;
pub mod residual;
pub mod ricci;

pub use oracle::{convergence_order, FdOracle};
pub use residual::{
    residual_report, residual_structure_ode, residual_tangential, residual_transverse,
    ResidualReport,
};
pub use ricci::{einstein_constant, ricci_diagonal, RicciDiagonal};
