//! Exact arithmetic foundation: big rationals, Laurent polynomials, rational
//! functions and truncated power series over pluggable coefficient fields.
//!
//! The coefficient fields are `Q` (big rationals), `Q(u)` and `Q(w)`, where
//! `u` and `w` are formal transcendentals with the semantics `u = 1/c` and
//! `w = sqrt(c)`. The two formal fields are rational functions over `Q` in a
//! reserved variable; the nesting stops there.

mod field;
mod poly;
mod ratfn;
pub mod rational;
mod series;

pub use field::{formal_limit_at_zero, CoeffField, FieldTag, Formal, FormalVar, QU, QW, UParam, WParam};
pub use poly::{LaurentPoly, PolyOp};
pub use ratfn::RatFn;
pub use rational::{rat, rat_i, Rat};
pub use series::{ExpansionCenter, SeriesExpansion};

use std::fmt;

/// A variable symbol. The toolkit only ever needs a fixed set of chart and
/// parameter variables, so symbols are static strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub &'static str);

impl Var {
    pub const R: Var = Var("r");
    pub const S: Var = Var("s");
    pub const RHO: Var = Var("rho");
    pub const T: Var = Var("t");
    pub const X: Var = Var("x");
    pub const U: Var = Var("u");
    pub const W: Var = Var("w");

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}
