//! Optimal lower ℓp-stability bounds and the transfer of a stability bound
//! from one exponent to another.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inversion::invert;
use crate::matrix::GraphMatrix;
use crate::norms::{beurling_norm, op_norm, BeurlingParams, Lp};
use crate::approx_le;

/// `A_p = 1/‖A⁻¹‖_p`. For `p = 2` this is the smallest singular value,
/// which is also returned (possibly 0) for singular input.
pub fn lower_stability_bound(a: &GraphMatrix, p: Lp) -> Result<f64> {
    match p {
        Lp::Two => Ok(*a.singular_values()?.last().expect("nonempty")),
        _ => Ok(1.0 / op_norm(&invert(a)?, p)?),
    }
}

/// `A_1, A_2, A_∞` from a single inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityBounds {
    pub p1: f64,
    pub p2: f64,
    pub pinf: f64,
}

impl StabilityBounds {
    pub fn compute(a: &GraphMatrix) -> Result<Self> {
        let inv = invert(a)?;
        Ok(StabilityBounds {
            p1: 1.0 / op_norm(&inv, Lp::One)?,
            p2: lower_stability_bound(a, Lp::Two)?,
            pinf: 1.0 / op_norm(&inv, Lp::Inf)?,
        })
    }

    pub fn get(&self, p: Lp) -> f64 {
        match p {
            Lp::One => self.p1,
            Lp::Two => self.p2,
            Lp::Inf => self.pinf,
        }
    }
}

/// Number of random probe vectors used by [`stability_bracket`].
pub const BRACKET_PROBES: usize = 64;

/// Two-sided estimate of `A_p` for `1 < p < ∞`: the interpolation lower
/// bound `A_1^{1/p} A_∞^{1-1/p}` and the smallest `‖Ac‖_p/‖c‖_p` over unit
/// vectors and seeded random probes.
pub fn stability_bracket(a: &GraphMatrix, p: f64, seed: u64) -> Result<(f64, f64)> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::BadParams(format!("bracket exponent must lie in (1, inf), got {p}")));
    }
    let inv = invert(a)?;
    let a1 = 1.0 / op_norm(&inv, Lp::One)?;
    let ainf = 1.0 / op_norm(&inv, Lp::Inf)?;
    let lower = a1.powf(1.0 / p) * ainf.powf(1.0 - 1.0 / p);

    let n = a.n();
    let pnorm = |v: &[Complex64]| v.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p);
    let mut upper = f64::INFINITY;
    let mut probe = |c: &[Complex64]| {
        let r = pnorm(&a.apply(c)) / pnorm(c);
        upper = upper.min(r);
    };
    for k in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        probe(&e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BRACKET_PROBES {
        let c: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        probe(&c);
    }
    // Columns of the inverse are near-minimizers for ℓ1 and often good probes.
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| inv.get(i, j)).collect();
        probe(&col);
    }
    Ok((lower, upper))
}

/// Constants of the exponent transfer between `ℓ^p` and `ℓ^q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityBoundSpec {
    #[serde(with = "crate::norms::exponent_serde")]
    pub p: f64,
    #[serde(with = "crate::norms::exponent_serde")]
    pub q: f64,
    #[serde(rename = "K0")]
    pub k0: u32,
    pub theta: f64,
    /// `(1+θ)^{K0}`.
    pub exponent: f64,
    pub log_case: bool,
}

fn inv_exp(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

impl StabilityBoundSpec {
    /// `K0` is the least integer strictly above `d/min(α-d/r',1)` and
    /// `θ = d|1/p-1/q| / (K0 min(α-d/r',1) - d|1/p-1/q|)`.
    pub fn new(p: f64, q: f64, params: &BeurlingParams) -> Result<Self> {
        params.require_regime()?;
        if !(p >= 1.0 && q >= 1.0) {
            return Err(Error::BadParams(format!("exponents must lie in [1, inf], got {p}, {q}")));
        }
        let m = params.decay_margin();
        let k0 = (params.d / m).floor() as u32 + 1;
        let gap = params.d * (inv_exp(p) - inv_exp(q)).abs();
        let theta = gap / (k0 as f64 * m - gap);
        Ok(StabilityBoundSpec {
            p,
            q,
            k0,
            theta,
            exponent: (1.0 + theta).powi(k0 as i32),
            log_case: params.log_case(),
        })
    }
}

/// `(‖A‖_B/A_p)^{(1+θ)^{K0}}`, or with the extra `ln(1 + ‖A‖_B/A_p)` inside
/// the power when `α = 1 + d/r'`; the absolute constant is not included.
pub fn transfer_bound_factor(
    norm_b: f64,
    a_p: f64,
    spec: &StabilityBoundSpec,
    params: &BeurlingParams,
) -> Result<f64> {
    params.require_regime()?;
    if !(a_p > 0.0) {
        return Err(Error::Singular);
    }
    let x = norm_b / a_p;
    let base = if spec.log_case { x * (1.0 + x).ln() } else { x };
    Ok(base.powf(spec.exponent))
}

/// One ordered exponent pair of a transfer report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferPair {
    pub p: Lp,
    pub q: Lp,
    /// `A_p / A_q`.
    pub ratio: f64,
    /// `M^{|1/p-1/q|}`.
    pub m_bound: f64,
    pub transfer_factor: f64,
    /// `(‖A‖_B / A_q) / transfer_factor`.
    #[serde(rename = "empirical_C")]
    pub empirical_c: f64,
    pub within_m_bound: bool,
    /// `ratio ≤ transfer_factor`, recorded only when the factor is at least 1.
    pub within_factor: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityTransferReport {
    pub matrix_id: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub norm_b: f64,
    pub bounds: StabilityBounds,
    pub pairs: Vec<TransferPair>,
}

impl StabilityTransferReport {
    /// The size-based bracket holds for every pair.
    pub fn pass(&self) -> bool {
        self.pairs.iter().all(|p| p.within_m_bound)
    }

    pub fn max_empirical_c(&self) -> f64 {
        self.pairs.iter().map(|p| p.empirical_c).fold(0.0, f64::max)
    }
}

pub fn stability_transfer_report(
    matrix_id: &str,
    a: &GraphMatrix,
    params: &BeurlingParams,
    exps: &[Lp],
) -> Result<StabilityTransferReport> {
    params.require_regime()?;
    let bounds = StabilityBounds::compute(a)?;
    let norm_b = beurling_norm(a, params);
    let m = a.n();
    let mut pairs = Vec::new();
    for &p in exps {
        for &q in exps {
            if p == q {
                continue;
            }
            let (ap, aq) = (bounds.get(p), bounds.get(q));
            let spec = StabilityBoundSpec::new(lp_value(p), lp_value(q), params)?;
            let transfer_factor = transfer_bound_factor(norm_b, ap, &spec, params)?;
            let ratio = ap / aq;
            let m_bound = (m as f64).powf((p.inv() - q.inv()).abs());
            pairs.push(TransferPair {
                p,
                q,
                ratio,
                m_bound,
                transfer_factor,
                empirical_c: norm_b / aq / transfer_factor,
                within_m_bound: approx_le(ratio, m_bound) && approx_le(1.0 / m_bound, ratio),
                within_factor: (transfer_factor >= 1.0).then(|| approx_le(ratio, transfer_factor)),
            });
        }
    }
    Ok(StabilityTransferReport { matrix_id: matrix_id.to_string(), m, norm_b, bounds, pairs })
}

/// Relative size of the random diagonal perturbation in [`stability_scaling_study`].
pub const SCALING_PERTURBATION: f64 = 0.2;

/// Slope of `log(A_p/A_q)` against `log(‖A‖_B/A_p)` along a family, with
/// the ceiling `(1+θ)^{K0} - 1 + 0.1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityScaling {
    pub p: Lp,
    pub q: Lp,
    pub gammas: Vec<f64>,
    pub log_norm_ratio: Vec<f64>,
    pub log_stability_ratio: Vec<f64>,
    pub slope: f64,
    pub slope_bound: f64,
}

impl StabilityScaling {
    pub fn pass(&self) -> bool {
        self.slope <= self.slope_bound
    }
}

/// Circulant `A_γ` on `Z_n` with its diagonal scaled by `1 + 0.2u_i`,
/// `u_i` uniform in `[-1, 1]` from `seed` and shared by every `γ`.
pub fn stability_scaling_study(
    gammas: &[f64],
    n: usize,
    p: Lp,
    q: Lp,
    params: &BeurlingParams,
    seed: u64,
) -> Result<StabilityScaling> {
    if gammas.len() < 3 {
        return Err(Error::GridTooCoarse(gammas.len()));
    }
    let spec = StabilityBoundSpec::new(lp_value(p), lp_value(q), params)?;
    let g = std::sync::Arc::new(crate::graph::circulant(n)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale: Vec<f64> = (0..n).map(|_| 1.0 + SCALING_PERTURBATION * rng.random_range(-1.0..=1.0)).collect();
    let mut xs = Vec::with_capacity(gammas.len());
    let mut ys = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let a = crate::families::a_gamma_circulant(&g, gamma).map(|i, j, z| if i == j { z * scale[i] } else { z });
        let b = StabilityBounds::compute(&a)?;
        xs.push((beurling_norm(&a, params) / b.get(p)).ln());
        ys.push((b.get(p) / b.get(q)).ln());
    }
    Ok(StabilityScaling {
        p,
        q,
        gammas: gammas.to_vec(),
        slope: crate::fit::least_squares_slope(&xs, &ys),
        slope_bound: spec.exponent - 1.0 + 0.1,
        log_norm_ratio: xs,
        log_stability_ratio: ys,
    })
}

fn lp_value(p: Lp) -> f64 {
    match p {
        Lp::One => 1.0,
        Lp::Two => 2.0,
        Lp::Inf => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{a_gamma_circulant, random_band};
    use crate::graph::{circulant, path};
    use std::sync::Arc;

    #[test]
    fn trivial_bounds() {
        let g = Arc::new(path(5).unwrap());
        let i = GraphMatrix::identity(&g);
        for p in Lp::ALL {
            assert_eq!(lower_stability_bound(&i, p).unwrap(), 1.0);
        }
        let g2 = Arc::new(path(2).unwrap());
        let d = GraphMatrix::diagonal(&g2, &[Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]).unwrap();
        for p in Lp::ALL {
            assert!((lower_stability_bound(&d, p).unwrap() - 2.0).abs() < 1e-15);
        }
        let (lo, hi) = stability_bracket(&d, 1.5, 1).unwrap();
        assert!((lo - 2.0).abs() < 1e-15 && hi >= lo);
        let (lo, hi) = stability_bracket(&i, 3.0, 1).unwrap();
        assert_eq!(lo, 1.0);
        assert!(hi <= 1.0 + 1e-15);
        let zero = GraphMatrix::zeros(&g);
        assert_eq!(lower_stability_bound(&zero, Lp::Two).unwrap(), 0.0);
        assert_eq!(lower_stability_bound(&zero, Lp::One), Err(Error::Singular));
    }

    #[test]
    fn circulant_agamma_bounds() {
        let gamma = 0.3_f64;
        let g = Arc::new(circulant(40).unwrap());
        let a = a_gamma_circulant(&g, gamma);
        let expect = 1.0 - (-gamma).exp();
        let b = StabilityBounds::compute(&a).unwrap();
        for p in Lp::ALL {
            assert!((b.get(p) - expect).abs() <= 1e-10 * expect);
        }
        let (lo, hi) = stability_bracket(&a, 1.5, 2).unwrap();
        assert!((lo - expect).abs() <= 1e-10 * expect && hi >= lo * (1.0 - 1e-12));
        let params = BeurlingParams::new(2.0, 1.5, 1.0).unwrap();
        let rep = stability_transfer_report("agamma", &a, &params, &Lp::ALL).unwrap();
        assert_eq!(rep.pairs.len(), 6);
        assert!(rep.pass());
        for pair in &rep.pairs {
            assert!((pair.ratio - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn transfer_constants() {
        let params = BeurlingParams::new(f64::INFINITY, 2.5, 1.0).unwrap();
        let s = StabilityBoundSpec::new(2.0, f64::INFINITY, &params).unwrap();
        assert_eq!(s.k0, 2);
        assert!((s.theta - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.exponent - 16.0 / 9.0).abs() < 1e-15);
        let same = StabilityBoundSpec::new(2.0, 2.0, &params).unwrap();
        assert_eq!(same.theta, 0.0);
        assert_eq!(transfer_bound_factor(3.0, 1.5, &same, &params).unwrap(), 2.0);
        assert_eq!(transfer_bound_factor(1.5, 1.5, &s, &params).unwrap(), 1.0);
        // K0 jumps past an exact integer ratio d/m.
        let integral = BeurlingParams::new(f64::INFINITY, 3.0, 2.0).unwrap();
        assert_eq!(StabilityBoundSpec::new(1.0, 2.0, &integral).unwrap().k0, 3);
        let bad = BeurlingParams::new(f64::INFINITY, 1.0, 1.0).unwrap();
        assert!(matches!(StabilityBoundSpec::new(1.0, 2.0, &bad), Err(Error::RegimeViolation(_))));
    }

    #[test]
    fn transfer_factor_monotone() {
        let params = BeurlingParams::new(2.0, 2.0, 1.0).unwrap();
        let s1 = StabilityBoundSpec::new(1.0, 2.0, &params).unwrap();
        let s2 = StabilityBoundSpec::new(1.0, f64::INFINITY, &params).unwrap();
        assert!(s2.exponent > s1.exponent);
        let f = |x: f64, s: &StabilityBoundSpec| transfer_bound_factor(x, 1.0, s, &params).unwrap();
        assert!(f(3.0, &s1) < f(4.0, &s1));
        assert!(f(3.0, &s1) < f(3.0, &s2));
    }

    #[test]
    fn random_band_invariants() {
        let g = Arc::new(path(60).unwrap());
        for seed in 0..5 {
            let a = random_band(&g, 3, seed);
            let b = StabilityBounds::compute(&a).unwrap();
            assert!(approx_le((b.p1 * b.pinf).sqrt(), b.p2));
            let (lo, hi) = stability_bracket(&a, 1.7, seed).unwrap();
            assert!(approx_le(lo, hi));
        }
    }

    #[test]
    fn perturbed_agamma_scaling() {
        let params = BeurlingParams::new(f64::INFINITY, 2.5, 1.0).unwrap();
        let gammas: Vec<f64> = (1..=6).map(|k| 0.5f64.powi(k)).collect();
        let s = stability_scaling_study(&gammas, 256, Lp::Two, Lp::Inf, &params, 3).unwrap();
        assert!((s.slope_bound - (16.0 / 9.0 - 0.9)).abs() < 1e-12);
        assert!(s.pass(), "slope {}", s.slope);
        assert!(s.log_norm_ratio.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(stability_scaling_study(&gammas[..2], 64, Lp::Two, Lp::Inf, &params, 3), Err(Error::GridTooCoarse(2)));
    }
}
