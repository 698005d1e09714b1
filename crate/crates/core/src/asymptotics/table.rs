//! Numeric sup-norm convergence tables on compact grids.
//!
//! The exact side of each limit theorem lives in the sibling modules; the
//! tables here sample coefficient deviations (and their first chart
//! derivatives) on a fixed grid for a geometric sequence of parameter
//! values, so the decay rate can be read off row by row.

use serde::Serialize;

use crate::error::GeomError;
use crate::exact::{CoeffField, RatFn};

/// Column header shared by every table in CSV form.
pub const CSV_HEADER: &str = "c,sup_alpha,sup_beta_or_fiber,sup_gamma";

/// One parameter value and the three sup norms sampled for it.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    /// Decimal rendering of the parameter value.
    pub c: String,
    pub sup_alpha: f64,
    pub sup_beta_or_fiber: f64,
    pub sup_gamma: f64,
}

/// Sup norms per parameter value at one fixed derivative order.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    /// Which limit and which columns the table reports.
    pub kind: String,
    /// Chart-derivative order applied to the deviation columns.
    pub derivative_order: u32,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.6e},{:.6e},{:.6e}\n",
                row.c, row.sup_alpha, row.sup_beta_or_fiber, row.sup_gamma
            ));
        }
        out
    }

    /// Ratios of consecutive sups per column, `previous / current`.
    pub fn decay_ratios(&self) -> Vec<[f64; 3]> {
        self.rows
            .windows(2)
            .map(|pair| {
                [
                    pair[0].sup_alpha / pair[1].sup_alpha,
                    pair[0].sup_beta_or_fiber / pair[1].sup_beta_or_fiber,
                    pair[0].sup_gamma / pair[1].sup_gamma,
                ]
            })
            .collect()
    }

    /// True when every column shrinks strictly row over row. A column
    /// that is exactly zero throughout has already converged and passes;
    /// this happens when a deviation is a polynomial killed by the
    /// derivative order, such as the linear base deviation of the
    /// collapse.
    pub fn strictly_decreasing(&self) -> bool {
        fn shrinks(prev: f64, cur: f64) -> bool {
            (prev == 0.0 && cur == 0.0) || prev > cur
        }
        self.rows.windows(2).all(|pair| {
            shrinks(pair[0].sup_alpha, pair[1].sup_alpha)
                && shrinks(pair[0].sup_beta_or_fiber, pair[1].sup_beta_or_fiber)
                && shrinks(pair[0].sup_gamma, pair[1].sup_gamma)
        })
    }
}

/// `count` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, GeomError> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi || count < 2 {
        return Err(GeomError::InvalidParams(format!(
            "uniform grid needs lo < hi and at least two points, got [{}, {}] x {}",
            lo, hi, count
        )));
    }
    let step = (hi - lo) / (count as f64 - 1.0);
    Ok((0..count).map(|i| lo + step * i as f64).collect())
}

/// `count` points `hi, hi/factor, hi/factor², ...` accumulating at zero.
pub fn geometric_grid(hi: f64, factor: f64, count: usize) -> Result<Vec<f64>, GeomError> {
    if !(hi.is_finite() && hi > 0.0) || factor <= 1.0 || count == 0 {
        return Err(GeomError::InvalidParams(format!(
            "geometric grid needs hi > 0 and factor > 1, got {} / {} x {}",
            hi, factor, count
        )));
    }
    let mut pts = Vec::with_capacity(count);
    let mut x = hi;
    for _ in 0..count {
        pts.push(x);
        x /= factor;
    }
    pts.reverse();
    Ok(pts)
}

/// Derivatives of `f` up to order `max`, starting with `f` itself.
pub(crate) fn derivative_ladder<K: CoeffField>(f: &RatFn<K>, max: u32) -> Vec<RatFn<K>> {
    let mut ladder = vec![f.clone()];
    for _ in 0..max {
        ladder.push(ladder.last().expect("nonempty ladder").derivative());
    }
    ladder
}

/// Sup of `|f|` over the grid, with the formal parameter bound to `c`.
pub(crate) fn sup_abs_on_grid<K: CoeffField>(f: &RatFn<K>, grid: &[f64], c: f64) -> f64 {
    grid.iter()
        .map(|&x| f.eval_f64(x, c).abs())
        .fold(0.0_f64, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{LaurentPoly, Rat, Var};

    #[test]
    fn uniform_grid_hits_endpoints() {
        let g = uniform_grid(0.1, 0.9, 5).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 0.1).abs() < 1e-12);
        assert!((g[4] - 0.9).abs() < 1e-12);
        assert!((g[2] - 0.5).abs() < 1e-12);
        assert!(uniform_grid(0.9, 0.1, 5).is_err());
        assert!(uniform_grid(0.1, 0.9, 1).is_err());
    }

    #[test]
    fn geometric_grid_accumulates_at_zero() {
        let g = geometric_grid(5.0, 2.0, 4).unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[3] - 5.0).abs() < 1e-12);
        assert!((g[0] - 0.625).abs() < 1e-12);
        assert!(g.windows(2).all(|p| p[0] < p[1]));
        assert!(geometric_grid(5.0, 1.0, 4).is_err());
    }

    #[test]
    fn sup_and_ladder_on_a_polynomial() {
        let f = RatFn::from_poly(LaurentPoly::<Rat>::from_ints(Var::T, 0, &[0, 0, 1]));
        let grid = [0.5, 1.0, 2.0];
        let ladder = derivative_ladder(&f, 2);
        assert_eq!(ladder.len(), 3);
        assert!((sup_abs_on_grid(&ladder[0], &grid, 1.0) - 4.0).abs() < 1e-12);
        assert!((sup_abs_on_grid(&ladder[1], &grid, 1.0) - 4.0).abs() < 1e-12);
        assert!((sup_abs_on_grid(&ladder[2], &grid, 1.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn table_ratio_and_monotonicity_helpers() {
        let table = ConvergenceTable {
            kind: "test".into(),
            derivative_order: 0,
            rows: vec![
                ConvergenceRow { c: "10".into(), sup_alpha: 1.0, sup_beta_or_fiber: 2.0, sup_gamma: 3.0 },
                ConvergenceRow { c: "100".into(), sup_alpha: 0.1, sup_beta_or_fiber: 0.2, sup_gamma: 0.3 },
            ],
        };
        assert!(table.strictly_decreasing());
        let ratios = table.decay_ratios();
        assert_eq!(ratios.len(), 1);
        assert!((ratios[0][0] - 10.0).abs() < 1e-9);
        let csv = table.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 3);
    }
}
