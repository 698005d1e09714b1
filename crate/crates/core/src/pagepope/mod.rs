//! Structure polynomials, charts, and metric coefficient profiles.

pub mod chart;
pub mod profile;
pub mod qpoly;
pub mod sturm;

pub use chart::{
    chart_in_r, from_chart, jacobian_sq, r_in_chart, rho2_in_r, to_chart, CCtx, Chart,
};
pub use profile::{
    build_profile, build_profile_perturbed, CParam, MetricParams, MetricProfile, Perturbation,
};
pub use qpoly::{
    p_factored_string, p_ode_residual, p_poly, q_factored_string, q_poly, q_tilde,
};
pub use sturm::{
    cauchy_bound, count_roots, positivity_gate, positivity_gate_for, sturm_chain, RootGateReport,
};
