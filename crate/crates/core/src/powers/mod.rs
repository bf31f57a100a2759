//! Matrix powers: the polynomial power bound, the subexponential
//! comparator, convolution powers and Markov-chain hops.

mod convolution;
mod markov;

pub use convolution::{conv_power, conv_power_growth, symbol_sup, ConvGrowth, ConvPower, ConvSequence, SYMBOL_GRID, SYMBOL_TOL};
pub use markov::{lazy_walk, markov_hop_report, MarkovHopReport, TransitionMatrix, POWER_ROW_SUM_TOL, ROW_SUM_TOL};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::non_divergent;
use crate::graph::GraphMetrics;
use crate::matrix::{check_size_cap, GraphMatrix};
use crate::norms::{beurling_norm, op_norm, BeurlingParams, Lp};

/// `A^n` by binary powering.
pub fn matrix_power(a: &GraphMatrix, n: u32) -> Result<GraphMatrix> {
    check_size_cap(a.n())?;
    let mut result = GraphMatrix::identity(a.graph());
    let mut base = a.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = result.matmul(&base)?;
        }
        k >>= 1;
        if k > 0 {
            base = base.matmul(&base)?;
        }
    }
    Ok(result)
}

/// `n (n‖A‖_B/‖A‖₂)^{(α+d/r)/min(α-d/r',1)} ‖A‖₂^n`, times
/// `ln(n‖A‖_B/‖A‖₂ + 1)^{(d+1)/r'}` when `α = 1 + d/r'`.
pub fn power_bound_factor(n: u32, norm2: f64, norm_b: f64, p: &BeurlingParams) -> Result<f64> {
    p.require_regime()?;
    if !(norm2 > 0.0 && norm_b > 0.0) {
        return Err(Error::BadParams("power bound needs positive norms".into()));
    }
    let n = n as f64;
    let x = n * norm_b / norm2;
    let mut f = n * x.powf(p.control_exponent()) * norm2.powf(n);
    if p.log_case() {
        f *= (x + 1.0).ln().powf((p.d + 1.0) * p.inv_r_conj());
    }
    Ok(f)
}

/// Constant of the Banach algebra inequality,
/// `2^{α+1+d/r} d D1 ((α-(d-1)(1-1/r))/(α-d(1-1/r)))^{1-1/r}`.
pub fn algebra_constant(p: &BeurlingParams, metrics: &GraphMetrics) -> f64 {
    let ratio = (p.alpha - (p.d - 1.0) * p.inv_r_conj()) / (p.alpha - p.d_over_r_conj());
    2f64.powf(p.alpha + 1.0 + p.d_over_r()) * p.d * metrics.d1 * ratio.powf(p.inv_r_conj())
}

/// `‖A‖₂^n (C‖A‖_B/‖A‖₂)^{θ/(1+θ) n^{log2(1+θ)}}` with `C` from
/// [`algebra_constant`] and `θ = 2(α-d+d/r)/(1+2α-2d+2d/r)`.
pub fn subexp_factor(n: u32, norm2: f64, norm_b: f64, p: &BeurlingParams, metrics: &GraphMetrics) -> Result<f64> {
    let theta = p.theta().ok_or_else(|| {
        Error::RegimeViolation(format!("need alpha > d(1 - 1/r) = {}", p.d_over_r_conj()))
    })?;
    let c = algebra_constant(p, metrics);
    let e = theta / (1.0 + theta) * (n as f64).powf((1.0 + theta).log2());
    Ok(norm2.powf(n as f64) * (c * norm_b / norm2).powf(e))
}

/// Power norms against both bound shapes for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerTrajectory {
    pub params: BeurlingParams,
    pub norm2: f64,
    pub norm_b: f64,
    pub n_values: Vec<u32>,
    pub beurling_norms: Vec<f64>,
    pub l2_norms: Vec<f64>,
    pub bound_factors: Vec<f64>,
    pub subexp_factors: Vec<f64>,
    /// First `n` from which the polynomial bound stays below the comparator.
    pub crossover: Option<u32>,
    /// Factor-2 rule on `‖A^n‖_B / bound_factor`.
    pub implied_c_stable: bool,
}

impl PowerTrajectory {
    pub const CSV_HEADER: [&'static str; 6] =
        ["n", "beurling_norm", "l2_pow", "bound_factor", "subexp_factor", "implied_C"];

    pub fn implied_c(&self) -> Vec<f64> {
        self.beurling_norms.iter().zip(&self.bound_factors).map(|(b, f)| b / f).collect()
    }

    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        let c = self.implied_c();
        (0..self.n_values.len())
            .map(|k| {
                vec![
                    self.n_values[k] as f64,
                    self.beurling_norms[k],
                    self.l2_norms[k],
                    self.bound_factors[k],
                    self.subexp_factors[k],
                    c[k],
                ]
            })
            .collect()
    }
}

/// Sequential powers `A^n = A^{n-1} A` for `n = 1..=n_max`.
pub fn power_trajectory(
    a: &GraphMatrix,
    p: &BeurlingParams,
    metrics: &GraphMetrics,
    n_max: u32,
) -> Result<PowerTrajectory> {
    p.require_regime()?;
    if n_max < 1 {
        return Err(Error::BadParams("n_max must be at least 1".into()));
    }
    check_size_cap(a.n())?;
    let norm2 = op_norm(a, Lp::Two)?;
    let norm_b = beurling_norm(a, p);
    let mut t = PowerTrajectory {
        params: *p,
        norm2,
        norm_b,
        n_values: Vec::new(),
        beurling_norms: Vec::new(),
        l2_norms: Vec::new(),
        bound_factors: Vec::new(),
        subexp_factors: Vec::new(),
        crossover: None,
        implied_c_stable: false,
    };
    let mut power = a.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.matmul(a)?;
        }
        t.n_values.push(n);
        t.beurling_norms.push(beurling_norm(&power, p));
        t.l2_norms.push(norm2.powf(n as f64));
        t.bound_factors.push(power_bound_factor(n, norm2, norm_b, p)?);
        t.subexp_factors.push(subexp_factor(n, norm2, norm_b, p, metrics)?);
    }
    let below: Vec<bool> = t.bound_factors.iter().zip(&t.subexp_factors).map(|(b, s)| b < s).collect();
    if below.last() == Some(&true) {
        let start = below.iter().rposition(|&x| !x).map_or(0, |k| k + 1);
        t.crossover = Some(t.n_values[start]);
    }
    let c = t.implied_c();
    let half = (n_max / 2) as usize;
    t.implied_c_stable = non_divergent(&c[..half.max(1)], &c[half.max(1)..]);
    Ok(t)
}
