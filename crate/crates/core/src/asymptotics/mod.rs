//! Boundary and center structure of the metric family, and its two
//! parameter limits.
//!
//! Exact statements are proved as identities over `Q(u)` or `Q(w)`; the
//! numeric side produces sup-norm convergence tables on compact grids. The
//! submodules:
//!
//! - [`origin`]: even series at the ball center with flat leading term;
//! - [`boundary`]: regularity at the conformal boundary and the squashed
//!   boundary sphere;
//! - [`limit_inf`]: large-parameter limit onto the complex-hyperbolic
//!   metric after normalization;
//! - [`limit_zero`]: small-parameter collapse of the fiber circles onto a
//!   cone over the base;
//! - [`special`]: the hyperbolic specialization and the four-dimensional
//!   one-parameter family it embeds in.

pub mod boundary;
pub mod limit_inf;
pub mod limit_zero;
pub mod origin;
pub mod special;
pub mod table;

pub use boundary::{boundary_compactification, BoundaryReport};
pub use limit_inf::{
    ch_pullback_triple, convergence_table_infinity, extract_p_leading, g_infinity_triple,
    normalization_identity, profile_limit_at_infinity_matches, NormalizationReport,
    PLeadingReport,
};
pub use limit_zero::{
    collapse_decomposition, convergence_table_zero, fiber_bound_certificates, g_zero_triple,
    profile_collapse_limit_matches, BoundCertificate, CollapseDecomposition,
};
pub use origin::{origin_smoothness, OriginReport};
pub use special::{hyperbolic_identity, pedersen_identity, HyperbolicReport, PedersenReport};
pub use table::{geometric_grid, uniform_grid, ConvergenceRow, ConvergenceTable};

use crate::error::GeomError;
use crate::exact::rational::{rat, rat_i};
use crate::exact::Rat;

/// The dimension-dependent constants of the two limits.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitConstants {
    pub n: u32,
    /// `3(n-1)/(n+1)`: squashing of the reference boundary sphere.
    pub a_n: Rat,
    /// `2n/(2n-3)`: the constant in the collapsed base metric.
    pub b_n: Rat,
    /// `(n+1)/(2n-1)`: normalization factor onto the complex-hyperbolic
    /// metric.
    pub scale: Rat,
}

impl LimitConstants {
    pub fn new(n: u32) -> Result<Self, GeomError> {
        if n < 2 {
            return Err(GeomError::InvalidParams(format!(
                "need n >= 2, got n = {}",
                n
            )));
        }
        let n_i = n as i64;
        Ok(LimitConstants {
            n,
            a_n: rat(3 * (n_i - 1), n_i + 1),
            b_n: rat(2 * n_i, 2 * n_i - 3),
            scale: rat(n_i + 1, 2 * n_i - 1),
        })
    }
}

/// `-(2n-1)`, shared with the curvature checks.
pub fn einstein_constant_rat(n: u32) -> Rat {
    rat_i(-(2 * n as i64 - 1))
}
