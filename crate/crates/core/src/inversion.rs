//! Dense inversion, the norm-controlled inversion bound and the `A_γ`
//! scaling study.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{a_gamma_circulant, a_gamma_path};
use crate::fit::{log_log_slope, non_divergent};
use crate::graph::{circulant, path};
use crate::matrix::{check_size_cap, GraphMatrix};
use crate::norms::{beurling_norm, op_norm, BeurlingParams, Lp};

/// Pivot threshold relative to `‖A‖_∞` below which a matrix counts as singular.
pub const PIVOT_TOL: f64 = 1e-14;
/// Allowed `‖A A⁻¹ - I‖_∞` relative to `κ_∞(A)`.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// `A⁻¹` by LU with partial pivoting, with a residual check.
pub fn invert(a: &GraphMatrix) -> Result<GraphMatrix> {
    check_size_cap(a.n())?;
    let norm_inf = op_norm(a, Lp::Inf)?;
    if norm_inf == 0.0 {
        return Err(Error::Singular);
    }
    let (inv, min_pivot) = a.lu_inverse()?;
    if !(min_pivot >= PIVOT_TOL * norm_inf) {
        return Err(Error::Singular);
    }
    let kappa = norm_inf * op_norm(&inv, Lp::Inf)?;
    let residual = op_norm(&a.matmul(&inv)?.sub(&GraphMatrix::identity(a.graph()))?, Lp::Inf)?;
    let limit = RESIDUAL_TOL * kappa;
    if !(residual <= limit) {
        return Err(Error::ResidualTooLarge { residual, limit });
    }
    Ok(inv)
}

/// `‖A⁻¹‖₂ (‖A⁻¹‖₂ ‖A‖_B)^{(α+d/r)/min(α-d/r',1)}`, with the extra factor
/// `ln(‖A⁻¹‖₂‖A‖_B + 1)^{(d+1)/r'}` when `α = 1 + d/r'`. The absolute
/// constant is not included.
pub fn inversion_bound_factor(norm_ainv_l2: f64, norm_a_beurling: f64, p: &BeurlingParams) -> Result<f64> {
    p.require_regime()?;
    if !(norm_ainv_l2 > 0.0 && norm_a_beurling > 0.0) {
        return Err(Error::Singular);
    }
    let k = norm_ainv_l2 * norm_a_beurling;
    let mut f = norm_ainv_l2 * k.powf(p.control_exponent());
    if p.log_case() {
        f *= (k + 1.0).ln().powf((p.d + 1.0) * p.inv_r_conj());
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionReport {
    pub norm_a_beurling: f64,
    pub norm_ainv_l2: f64,
    pub kappa: f64,
    pub norm_ainv_beurling: f64,
    pub bound_factor: f64,
    /// `norm_ainv_beurling / bound_factor`.
    #[serde(rename = "implied_C")]
    pub implied_c: f64,
    pub log_case: bool,
}

impl InversionReport {
    pub fn finite(&self) -> bool {
        [self.norm_a_beurling, self.norm_ainv_l2, self.kappa, self.norm_ainv_beurling, self.bound_factor, self.implied_c]
            .iter()
            .all(|x| x.is_finite() && *x > 0.0)
    }
}

pub fn inversion_verify(a: &GraphMatrix, p: &BeurlingParams) -> Result<InversionReport> {
    p.require_regime()?;
    let inv = invert(a)?;
    let sv = a.singular_values()?;
    let (smax, smin) = (sv[0], *sv.last().expect("nonempty"));
    let norm_ainv_l2 = 1.0 / smin;
    let norm_a_beurling = beurling_norm(a, p);
    let norm_ainv_beurling = beurling_norm(&inv, p);
    let bound_factor = inversion_bound_factor(norm_ainv_l2, norm_a_beurling, p)?;
    Ok(InversionReport {
        norm_a_beurling,
        norm_ainv_l2,
        kappa: smax / smin,
        norm_ainv_beurling,
        bound_factor,
        implied_c: norm_ainv_beurling / bound_factor,
        log_case: p.log_case(),
    })
}

/// One `γ` of the scaling study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgammaRow {
    pub gamma: f64,
    /// `‖A_γ‖_B` on the path.
    pub norm_a: f64,
    /// `‖A_γ⁻¹‖₂` for the circulant variant on `Z_N`, `N = ⌈20/γ⌉`.
    pub norm_ainv_l2: f64,
    /// `‖A_γ⁻¹‖_B` for the bidiagonal variant on the path.
    pub norm_ainv_beurling: f64,
    pub bound_factor: f64,
    #[serde(rename = "implied_C")]
    pub implied_c: f64,
}

/// Fitted exponents of the `A_γ` family as `γ → 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgammaStudy {
    #[serde(rename = "M")]
    pub m: usize,
    pub params: BeurlingParams,
    pub rows: Vec<AgammaRow>,
    /// Slope of `log‖A_γ⁻¹‖_B` against `log(1/γ)`.
    pub inverse_slope: f64,
    /// `α + 1/r`.
    pub predicted_inverse_slope: f64,
    pub bound_factor_slope: f64,
    /// `1 + (α+d/r)/min(α-d/r',1)`, the exponent of `1/γ` in the bound
    /// without the logarithmic factor.
    pub bound_exponent: f64,
    /// `bound_exponent - inverse_slope`.
    pub gap: f64,
    pub l2_slope: f64,
    pub kappa_slope: f64,
    pub epsilon: f64,
    /// Slope of `‖A⁻¹‖₂ (‖A⁻¹‖₂‖A‖_B)^{α+d/r-1-ε}`.
    pub weakened_slope: f64,
    /// The inverse norm grows faster than the weakened bound allows.
    pub weakened_bound_fails: bool,
    /// Factor-2 rule on `implied_C` (three smallest vs three largest `γ`).
    pub implied_c_stable: bool,
}

impl AgammaStudy {
    pub const CSV_HEADER: [&'static str; 6] =
        ["gamma", "norm_A", "norm_Ainv_l2", "norm_Ainv_beurling", "bound_factor", "implied_C"];

    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| vec![r.gamma, r.norm_a, r.norm_ainv_l2, r.norm_ainv_beurling, r.bound_factor, r.implied_c])
            .collect()
    }
}

/// Truncation margin: the host sizes satisfy `M γ ≥ 20`.
pub const AGAMMA_MARGIN: f64 = 20.0;
pub const AGAMMA_EPSILON: f64 = 0.5;

/// Runs the `A_γ` family over `gammas` on a path of `m` vertices.
pub fn agamma_scaling_study(gammas: &[f64], p: &BeurlingParams, m: usize) -> Result<AgammaStudy> {
    if gammas.len() < 4 {
        return Err(Error::GridTooCoarse(gammas.len()));
    }
    p.require_regime()?;
    if let Some(&g) = gammas.iter().find(|&&g| !(g > 0.0 && g.is_finite())) {
        return Err(Error::BadParams(format!("gamma must be positive, got {g}")));
    }
    let mut gs = gammas.to_vec();
    gs.sort_by(|a, b| b.total_cmp(a));
    let gmin = *gs.last().expect("nonempty");
    if (m as f64) * gmin < AGAMMA_MARGIN {
        return Err(Error::BadParams(format!("need M >= {AGAMMA_MARGIN}/gamma_min, got M = {m}")));
    }
    let host = Arc::new(path(m)?);
    let mut rows = Vec::with_capacity(gs.len());
    for &gamma in &gs {
        let a = a_gamma_path(&host, gamma);
        let norm_a = beurling_norm(&a, p);
        let norm_ainv_beurling = beurling_norm(&invert(&a)?, p);
        let n = ((AGAMMA_MARGIN / gamma).ceil() as usize).max(3);
        let cyc = Arc::new(circulant(n)?);
        let sv = a_gamma_circulant(&cyc, gamma).singular_values()?;
        let norm_ainv_l2 = 1.0 / sv.last().expect("nonempty");
        let bound_factor = inversion_bound_factor(norm_ainv_l2, norm_a, p)?;
        rows.push(AgammaRow {
            gamma,
            norm_a,
            norm_ainv_l2,
            norm_ainv_beurling,
            bound_factor,
            implied_c: norm_ainv_beurling / bound_factor,
        });
        log::debug!("agamma gamma={gamma} inverse norm={norm_ainv_beurling}");
    }
    let inv_gamma: Vec<f64> = rows.iter().map(|r| 1.0 / r.gamma).collect();
    let col = |f: fn(&AgammaRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let inverse_slope = log_log_slope(&inv_gamma, &col(|r| r.norm_ainv_beurling));
    let bound_factor_slope = log_log_slope(&inv_gamma, &col(|r| r.bound_factor));
    let l2_slope = log_log_slope(&inv_gamma, &col(|r| r.norm_ainv_l2));
    let kappa_slope = log_log_slope(&inv_gamma, &col(|r| r.norm_ainv_l2 * r.norm_a));
    let bound_exponent = 1.0 + p.control_exponent();
    let weakened_slope = l2_slope + (p.alpha + p.d_over_r() - 1.0 - AGAMMA_EPSILON) * kappa_slope;
    let implied = col(|r| r.implied_c);
    let k = 3.min(implied.len() / 2);
    let implied_c_stable = non_divergent(&implied[..k], &implied[implied.len() - k..]);
    Ok(AgammaStudy {
        m,
        params: *p,
        rows,
        inverse_slope,
        predicted_inverse_slope: p.alpha + p.inv_r(),
        bound_factor_slope,
        bound_exponent,
        gap: bound_exponent - inverse_slope,
        l2_slope,
        kappa_slope,
        epsilon: AGAMMA_EPSILON,
        weakened_slope,
        weakened_bound_fails: inverse_slope > weakened_slope,
        implied_c_stable,
    })
}
