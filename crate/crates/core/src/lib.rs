//! Exact construction and verification of the one-parameter family `g_c` of
//! SU(n)-invariant Poincare-Einstein metrics on the ball `B^{2n}`.
//!
//! The family is built from a cohomogeneity-one ansatz
//! `g = alpha^2 dr^2 + beta^2 theta^2 + gamma^2 g_{CP^{n-1}}` over the Hopf
//! fibration `S^{2n-1} -> CP^{n-1}`, with the coefficient profile determined by
//! a structure polynomial `P_n`. Everything symbolic is carried in exact
//! rational arithmetic; floating point appears only at evaluation boundaries.
//!
//! Layers:
//! - [`exact`]: big rationals, Laurent polynomials, rational functions and
//!   formal power series over pluggable coefficient fields.
//! - [`pagepope`]: the structure polynomials `Q_k`, `P_n`, coordinate charts,
//!   metric coefficient profiles and the Sturm positivity gate.
//! - [`einstein`]: exact Einstein residuals, closed-form Ricci diagonal, and
//!   an independent finite-difference curvature oracle for `n = 2`.
//! - [`asymptotics`]: origin/boundary structure, the `c -> infinity` and
//!   `c -> 0` limits, and the Pedersen / hyperbolic special cases.

pub mod asymptotics;
pub mod einstein;
pub mod error;
pub mod exact;
pub mod pagepope;

pub use error::{AlgebraError, GeomError};
