//! Row-stochastic transition matrices and hop-probability decay.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::non_divergent;
use crate::graph::Graph;
use crate::matrix::{GraphMatrix, ZERO};

/// Allowed deviation of a row sum from 1 on construction.
pub const ROW_SUM_TOL: f64 = 1e-12;
/// Allowed deviation of a row sum of `P^n` from 1.
pub const POWER_ROW_SUM_TOL: f64 = 1e-10;

/// Nonnegative real matrix whose rows sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(GraphMatrix);

impl TransitionMatrix {
    pub fn new(m: GraphMatrix) -> Result<Self> {
        for i in 0..m.n() {
            let row = m.row(i);
            if let Some(j) = row.iter().position(|z| z.im != 0.0 || z.re < 0.0) {
                return Err(Error::NotStochastic(format!("entry ({i}, {j}) is not a nonnegative real")));
            }
            let s: f64 = row.iter().map(|z| z.re).sum();
            if (s - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::NotStochastic(format!("row {i} sums to {s}")));
            }
        }
        Ok(TransitionMatrix(m))
    }

    pub fn matrix(&self) -> &GraphMatrix {
        &self.0
    }

    /// Support contained in `ρ ≤ 1`.
    pub fn nearest_neighbor(&self) -> bool {
        let g = self.0.graph();
        self.0.entries().iter().enumerate().all(|(k, z)| *z == ZERO || g.dist(k / self.0.n(), k % self.0.n()) <= 1)
    }
}

/// Stays put with probability `laziness`, otherwise moves to a uniform neighbour.
pub fn lazy_walk(graph: &Arc<Graph>, laziness: f64) -> Result<TransitionMatrix> {
    if !(0.0..1.0).contains(&laziness) {
        return Err(Error::BadParams(format!("laziness must lie in [0, 1), got {laziness}")));
    }
    let m = GraphMatrix::from_fn(graph, |i, j| {
        if i == j {
            Complex64::new(laziness, 0.0)
        } else if graph.dist(i, j) == 1 {
            Complex64::new((1.0 - laziness) / graph.degree(i) as f64, 0.0)
        } else {
            ZERO
        }
    });
    TransitionMatrix::new(m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovHopReport {
    pub alpha: f64,
    pub d: f64,
    pub n_values: Vec<u32>,
    /// `max (P^n)(λ,λ') ρ(λ,λ')^α / n^{α+1}` per `n`.
    #[serde(rename = "implied_C")]
    pub implied_c: Vec<f64>,
    pub max_entry: f64,
    pub max_row_sum_dev: f64,
    pub nearest_neighbor: bool,
    /// No mass beyond distance `n` (only checked for nearest-neighbour chains).
    pub finite_speed: bool,
    pub implied_c_stable: bool,
}

impl MarkovHopReport {
    pub fn pass(&self) -> bool {
        self.max_entry <= 1.0
            && self.max_row_sum_dev <= POWER_ROW_SUM_TOL
            && self.finite_speed
            && self.implied_c_stable
    }
}

/// Requires `α > d + 1`.
pub fn markov_hop_report(p: &TransitionMatrix, alpha: f64, d: f64, n_max: u32) -> Result<MarkovHopReport> {
    if !(alpha > d + 1.0) {
        return Err(Error::RegimeViolation(format!("need alpha > d + 1 = {}, got {alpha}", d + 1.0)));
    }
    if n_max < 2 {
        return Err(Error::BadParams("n_max must be at least 2".into()));
    }
    let m = p.matrix();
    let g = Arc::clone(m.graph());
    let nn = p.nearest_neighbor();
    let mut r = MarkovHopReport {
        alpha,
        d,
        n_values: Vec::new(),
        implied_c: Vec::new(),
        max_entry: 0.0,
        max_row_sum_dev: 0.0,
        nearest_neighbor: nn,
        finite_speed: true,
        implied_c_stable: false,
    };
    let mut power = m.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.matmul(m)?;
        }
        let mut c = 0.0_f64;
        for i in 0..power.n() {
            let mut row_sum = 0.0;
            for (j, z) in power.row(i).iter().enumerate() {
                let rho = g.dist(i, j);
                row_sum += z.re;
                r.max_entry = r.max_entry.max(z.re);
                if nn && rho > n as usize && *z != ZERO {
                    r.finite_speed = false;
                }
                c = c.max(z.re * (rho as f64).powf(alpha));
            }
            r.max_row_sum_dev = r.max_row_sum_dev.max((row_sum - 1.0).abs());
        }
        r.n_values.push(n);
        r.implied_c.push(c / (n as f64).powf(alpha + 1.0));
    }
    let half = n_max as usize / 2;
    r.implied_c_stable = non_divergent(&r.implied_c[..half], &r.implied_c[half..]);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circulant;
    use crate::powers::matrix_power;

    #[test]
    fn lazy_walk_on_z8() {
        let g = Arc::new(circulant(8).unwrap());
        let p = lazy_walk(&g, 0.5).unwrap();
        let row = p.matrix().row(0);
        assert_eq!((row[0].re, row[1].re, row[7].re), (0.5, 0.25, 0.25));
        assert!(p.nearest_neighbor());
        assert!(lazy_walk(&g, 1.0).is_err());
    }

    #[test]
    fn rejects_non_stochastic() {
        let g = Arc::new(circulant(4).unwrap());
        let half = GraphMatrix::from_fn(&g, |_, _| Complex64::new(0.2, 0.0));
        assert!(matches!(TransitionMatrix::new(half), Err(Error::NotStochastic(_))));
        let neg = GraphMatrix::from_fn(&g, |i, j| Complex64::new(if i == j { 1.5 } else if j == (i + 1) % 4 { -0.5 } else { 0.0 }, 0.0));
        assert!(matches!(TransitionMatrix::new(neg), Err(Error::NotStochastic(_))));
    }

    #[test]
    fn hops_on_z64() {
        let g = Arc::new(circulant(64).unwrap());
        let p = lazy_walk(&g, 0.5).unwrap();
        let p8 = matrix_power(p.matrix(), 8).unwrap();
        for k in 9..56 {
            assert_eq!(p8.get(0, k), ZERO);
        }
        let rep = markov_hop_report(&p, 2.5, 1.0, 16).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.implied_c[0], 0.5 * 0.5);
        assert!(matches!(markov_hop_report(&p, 2.0, 1.0, 4), Err(Error::RegimeViolation(_))));
    }
}
