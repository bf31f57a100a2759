//! Convolution powers of finitely supported sequences on the integers.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{log_log_slope, non_divergent};

/// Points of the grid on which `sup |â|` is evaluated.
pub const SYMBOL_GRID: usize = 512;
/// Allowed excess of `sup |â|` over 1.
pub const SYMBOL_TOL: f64 = 1e-9;
/// Slack on the growth exponent `α + 1`.
pub const GROWTH_SLACK: f64 = 0.1;
/// Wiener norms are compared against `n^{1+ε}`.
pub const WIENER_EPSILON: f64 = 0.25;

/// `a(k)` for `k = start, start+1, …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvSequence {
    pub start: i64,
    pub coeffs: Vec<Complex64>,
}

impl ConvSequence {
    pub fn new(start: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(ConvSequence { start, coeffs })
    }

    /// The unit mass at 0.
    pub fn delta() -> Self {
        ConvSequence { start: 0, coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn get(&self, k: i64) -> Complex64 {
        usize::try_from(k - self.start)
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or_default()
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.coeffs.len() as i64).map(move |i| self.start + i)
    }

    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ConvSequence { start: self.start + other.start, coeffs: out }
    }

    /// `â(ξ) = Σ a(k) e^{-ikξ}`.
    pub fn symbol(&self, xi: f64) -> Complex64 {
        self.indices()
            .zip(&self.coeffs)
            .map(|(k, a)| a * Complex64::from_polar(1.0, -(k as f64) * xi))
            .sum()
    }

    /// `Σ |a(k)|`.
    pub fn wiener_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).sum()
    }

    /// `max_k |a(k)| (1+|k|)^α`.
    pub fn weighted_sup(&self, alpha: f64) -> f64 {
        self.indices()
            .zip(&self.coeffs)
            .map(|(k, a)| a.norm() * (1.0 + k.unsigned_abs() as f64).powf(alpha))
            .fold(0.0, f64::max)
    }
}

/// `max |â(2πj/512)|` over the symbol grid.
pub fn symbol_sup(a: &ConvSequence) -> f64 {
    (0..SYMBOL_GRID)
        .map(|j| a.symbol(2.0 * PI * j as f64 / SYMBOL_GRID as f64).norm())
        .fold(0.0, f64::max)
}

/// `a_n` with its Wiener norm and weighted sup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvPower {
    pub n: u32,
    pub seq: ConvSequence,
    pub wiener: f64,
    pub weighted_sup: f64,
}

/// `a_n = a * … * a` (`n` factors) by iterated convolution. A symbol
/// exceeding 1 on the grid is logged, not rejected.
pub fn conv_power(a: &ConvSequence, n: u32, alpha: f64) -> ConvPower {
    let sup = symbol_sup(a);
    if sup > 1.0 + SYMBOL_TOL {
        log::warn!("symbol modulus {sup} exceeds 1; powers may grow exponentially");
    }
    let mut seq = ConvSequence::delta();
    for _ in 0..n {
        seq = seq.convolve(a);
    }
    ConvPower { n, wiener: seq.wiener_norm(), weighted_sup: seq.weighted_sup(alpha), seq }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvGrowth {
    pub alpha: f64,
    pub symbol_sup: f64,
    pub n_values: Vec<u32>,
    pub wiener: Vec<f64>,
    pub weighted_sup: Vec<f64>,
    /// Fit of `log weighted_sup` against `log n` over `[n_max/4, n_max]`.
    pub slope: f64,
    /// `α + 1 + 0.1`.
    pub slope_bound: f64,
    /// Factor-2 rule on `wiener / n^{1+ε}`.
    pub wiener_stable: bool,
}

impl ConvGrowth {
    pub fn pass(&self) -> bool {
        self.slope <= self.slope_bound && self.wiener_stable
    }
}

pub fn conv_power_growth(a: &ConvSequence, alpha: f64, n_max: u32) -> Result<ConvGrowth> {
    let sup = symbol_sup(a);
    if sup > 1.0 + SYMBOL_TOL {
        return Err(Error::SymbolTooLarge(sup));
    }
    if n_max < 4 {
        return Err(Error::BadParams(format!("n_max must be at least 4, got {n_max}")));
    }
    let mut g = ConvGrowth {
        alpha,
        symbol_sup: sup,
        n_values: Vec::new(),
        wiener: Vec::new(),
        weighted_sup: Vec::new(),
        slope: f64::NAN,
        slope_bound: alpha + 1.0 + GROWTH_SLACK,
        wiener_stable: false,
    };
    let mut seq = ConvSequence::delta();
    for n in 1..=n_max {
        seq = seq.convolve(a);
        g.n_values.push(n);
        g.wiener.push(seq.wiener_norm());
        g.weighted_sup.push(seq.weighted_sup(alpha));
    }
    let lo = (n_max / 4).max(1) as usize - 1;
    let xs: Vec<f64> = g.n_values[lo..].iter().map(|&n| n as f64).collect();
    g.slope = log_log_slope(&xs, &g.weighted_sup[lo..]);
    let ratio: Vec<f64> = g
        .n_values
        .iter()
        .zip(&g.wiener)
        .map(|(&n, w)| w / (n as f64).powf(1.0 + WIENER_EPSILON))
        .collect();
    let half = n_max as usize / 2;
    g.wiener_stable = non_divergent(&ratio[..half], &ratio[half..]);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn binomial_powers() {
        let a = ConvSequence::new(0, vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        let a2 = conv_power(&a, 2, 0.0);
        assert_eq!(a2.seq.coeffs, vec![c(0.25, 0.0), c(0.5, 0.0), c(0.25, 0.0)]);
        for n in [1, 5, 40] {
            assert!((conv_power(&a, n, 0.0).wiener - 1.0).abs() <= 1e-12);
        }
        assert_eq!(conv_power(&a, 1, 2.0).seq, a);
        assert!((symbol_sup(&a) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotated_binomial_moduli() {
        let a = ConvSequence::new(0, vec![c(0.5, 0.0), c(0.0, 0.5)]).unwrap();
        let n = 30u32;
        let p = conv_power(&a, n, 0.0);
        for (k, z) in p.seq.coeffs.iter().enumerate() {
            let expect = binom(n as u64, k as u64) / 2f64.powi(n as i32);
            assert!((z.norm() - expect).abs() <= 1e-13 * expect.max(1e-300));
        }
        assert!((p.wiener - 1.0).abs() < 1e-12);
    }

    #[test]
    fn growth_fits() {
        let bin = ConvSequence::new(0, vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(conv_power_growth(&bin, 0.0, 128).unwrap().slope <= GROWTH_SLACK);
        let g = conv_power_growth(&bin, 2.0, 128).unwrap();
        assert!(g.pass());
        let big = ConvSequence::new(-1, vec![c(0.6, 0.0), c(0.6, 0.0)]).unwrap();
        assert!(matches!(conv_power_growth(&big, 2.0, 16), Err(Error::SymbolTooLarge(_))));
        assert_eq!(ConvSequence::new(0, vec![]), Err(Error::EmptySequence));
    }

    #[test]
    fn indices_and_symbol() {
        let a = ConvSequence::new(-2, vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(a.get(-2), c(1.0, 0.0));
        assert_eq!(a.get(0), c(0.0, 0.0));
        assert_eq!(a.weighted_sup(1.0), 4.0);
        assert!((a.symbol(0.0) - c(3.0, 0.0)).norm() < 1e-15);
    }
}
