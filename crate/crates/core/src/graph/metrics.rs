use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::fit::least_squares_slope;

/// `μ(B(λ, R))` for integer `R = 0..=diameter`: nondecreasing, starts at 1,
/// ends at the number of vertices.
pub fn ball_counts(g: &Graph, vertex: usize) -> Vec<usize> {
    let mut counts = g.sphere_counts(vertex);
    for k in 1..counts.len() {
        counts[k] += counts[k - 1];
    }
    counts
}

/// Exact doubling constant `sup_{λ, R ≥ 0} μ(B(λ,2R)) / μ(B(λ,R))`.
///
/// Ball sizes only change at integer radii, so on `R ∈ [k/2, (k+1)/2)` the
/// ratio equals `μ(B(λ,k)) / μ(B(λ,⌊k/2⌋))`. Sweeping `k = 0..=2·diam`
/// evaluates every interval; beyond that the ratio is 1.
pub fn doubling_constant(g: &Graph) -> f64 {
    let diam = g.diameter();
    let mut best = 1.0_f64;
    for v in 0..g.num_vertices() {
        let counts = ball_counts(g, v);
        let at = |r: usize| counts[r.min(diam)] as f64;
        for k in 0..=2 * diam {
            best = best.max(at(k) / at(k / 2));
        }
    }
    best
}

/// Density and lower-normality constants for a declared dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthConstants {
    pub d1: f64,
    pub d2: f64,
    pub normal: bool,
}

/// `D1 = max μ(B(λ,R))/(R+1)^d` and `D2 = inf μ(B(λ,R))/(R+1)^d` over
/// `λ ∈ V` and real `R ∈ [0, diam]`.
///
/// The supremum sits at integer radii. The infimum over `[k, k+1)` is the left
/// limit at `k+1`, i.e. `μ(B(λ,k))/(k+2)^d`, except on the last point `R = diam`.
pub fn growth_constants(g: &Graph, d: f64) -> Result<GrowthConstants> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::BadDimension(d));
    }
    let diam = g.diameter();
    let mut d1 = 0.0_f64;
    let mut d2 = f64::INFINITY;
    for v in 0..g.num_vertices() {
        let counts = ball_counts(g, v);
        for (k, &c) in counts.iter().enumerate() {
            let c = c as f64;
            d1 = d1.max(c / ((k + 1) as f64).powf(d));
            let lower = if k < diam {
                c / ((k + 2) as f64).powf(d)
            } else {
                c / ((k + 1) as f64).powf(d)
            };
            d2 = d2.min(lower);
        }
    }
    Ok(GrowthConstants { d1, d2, normal: d2 > 0.0 })
}

/// All metric-measure constants of a graph for one declared dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub num_vertices: usize,
    pub diameter: usize,
    pub d: f64,
    #[serde(rename = "D0")]
    pub d0: f64,
    #[serde(rename = "D1")]
    pub d1: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
    pub normal: bool,
}

impl GraphMetrics {
    pub fn new(g: &Graph, d: f64) -> Result<Self> {
        let growth = growth_constants(g, d)?;
        Ok(GraphMetrics {
            num_vertices: g.num_vertices(),
            diameter: g.diameter(),
            d,
            d0: doubling_constant(g),
            d1: growth.d1,
            d2: growth.d2,
            normal: growth.normal,
        })
    }

    /// Uses the generator's dimension when known, otherwise `log2 D0`, the
    /// dimension every doubling graph admits (at least 1 on any graph with an edge).
    pub fn natural(g: &Graph) -> Self {
        let d = g.natural_dim().unwrap_or_else(|| doubling_constant(g).log2().max(1.0));
        Self::new(g, d).expect("positive dimension")
    }
}

/// Least-squares slope of `log(mean_λ μ(B(λ,R)))` against `log(R+1)` for
/// `R = 1..=⌊diam/2⌋`. A diagnostic for choosing `d`, not a definition.
pub fn estimate_dimension(g: &Graph) -> Result<f64> {
    let diam = g.diameter();
    if diam < 4 {
        return Err(Error::GraphTooSmall(format!("diameter {diam} < 4")));
    }
    let n = g.num_vertices();
    let mut mean = vec![0.0_f64; diam + 1];
    for v in 0..n {
        for (k, c) in ball_counts(g, v).into_iter().enumerate() {
            mean[k] += c as f64;
        }
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = (1..=diam / 2)
        .map(|r| (((r + 1) as f64).ln(), (mean[r] / n as f64).ln()))
        .unzip();
    Ok(least_squares_slope(&xs, &ys))
}

/// Both sides of the two weighted-tail estimates for a nonincreasing envelope:
///
/// * `Σ_{ρ(λ,λ')≤s} ρ h(ρ) ≤ (d+1) D1 Σ_{n≤s} h(n)(n+1)^d`
/// * `Σ_{ρ(λ,λ')≥s} h(ρ) ≤ D1 ((s+1)^d h(s) + d Σ_{n>s} h(n)(n+1)^{d-1})`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailSums {
    pub lhs_i: f64,
    pub rhs_i: f64,
    pub lhs_ii: f64,
    pub rhs_ii: f64,
}

impl TailSums {
    pub fn holds(&self) -> bool {
        crate::approx_le(self.lhs_i, self.rhs_i) && crate::approx_le(self.lhs_ii, self.rhs_ii)
    }
}

pub fn weighted_tail_sums(
    g: &Graph,
    vertex: usize,
    h: &[f64],
    s: usize,
    d: f64,
    d1: f64,
) -> Result<TailSums> {
    g.check_vertex(vertex)?;
    let diam = g.diameter();
    if h.len() < diam + 1 {
        return Err(Error::BadParams(format!(
            "envelope length {} shorter than diameter + 1 = {}",
            h.len(),
            diam + 1
        )));
    }
    if let Some(i) = h.windows(2).position(|w| w[1] > w[0] || w[1] < 0.0) {
        return Err(Error::EnvelopeNotMonotone(i + 1));
    }
    if h.first().is_some_and(|&x| x < 0.0) {
        return Err(Error::EnvelopeNotMonotone(0));
    }
    let hv = |n: usize| h.get(n).copied().unwrap_or(0.0);

    let mut lhs_i = 0.0;
    let mut lhs_ii = 0.0;
    for &rho in g.dist_row(vertex) {
        let rho = rho as usize;
        if rho <= s {
            lhs_i += rho as f64 * hv(rho);
        }
        if rho >= s {
            lhs_ii += hv(rho);
        }
    }
    let rhs_i = (d + 1.0) * d1 * (0..=s).map(|n| hv(n) * ((n + 1) as f64).powf(d)).sum::<f64>();
    let tail: f64 = (s + 1..=diam).map(|n| hv(n) * ((n + 1) as f64).powf(d - 1.0)).sum();
    let rhs_ii = d1 * (((s + 1) as f64).powf(d) * hv(s) + d * tail);
    Ok(TailSums { lhs_i, rhs_i, lhs_ii, rhs_ii })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, lattice_box, path, random_connected};

    /// Independent oracle: sweep a fine grid of real radii directly.
    fn doubling_by_real_grid(g: &Graph) -> f64 {
        let mut best = 1.0_f64;
        for v in 0..g.num_vertices() {
            let mut r = 0.0;
            while r <= g.diameter() as f64 + 0.5 {
                best = best.max(g.ball_size(v, 2.0 * r) as f64 / g.ball_size(v, r) as f64);
                r += 0.125;
            }
        }
        best
    }

    #[test]
    fn ball_counts_examples() {
        let z8 = circulant(8).unwrap();
        for v in 0..8 {
            assert_eq!(ball_counts(&z8, v), vec![1, 3, 5, 7, 8]);
        }
        assert_eq!(ball_counts(&path(7).unwrap(), 0), vec![1, 2, 3, 4, 5, 6, 7]);
        let lat = lattice_box(2, 5).unwrap();
        assert_eq!(&ball_counts(&lat, 12)[..3], &[1, 5, 13]);
    }

    #[test]
    fn doubling_constant_matches_real_radius_sweep() {
        // On Z_8 the interval R in [1/2, 1) gives mu(B(1))/mu(B(0)) = 3.
        let z8 = circulant(8).unwrap();
        assert_eq!(doubling_constant(&z8), 3.0);
        assert_eq!(doubling_constant(&z8), doubling_by_real_grid(&z8));

        let k5 = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        assert_eq!(doubling_constant(&k5), 5.0);

        for g in [path(9).unwrap(), lattice_box(2, 4).unwrap(), random_connected(25, 0.15, 3).unwrap()]
        {
            assert_eq!(doubling_constant(&g), doubling_by_real_grid(&g));
        }
    }

    #[test]
    fn growth_constants_examples() {
        let z8 = circulant(8).unwrap();
        let gc = growth_constants(&z8, 1.0).unwrap();
        assert!((gc.d1 - 7.0 / 4.0).abs() < 1e-15);
        assert!((gc.d2 - 0.5).abs() < 1e-15);
        assert!(gc.normal);
        let p = growth_constants(&path(101).unwrap(), 1.0).unwrap();
        assert!((p.d1 - 101.0 / 51.0).abs() < 1e-15);
        assert_eq!(growth_constants(&z8, 0.0), Err(Error::BadDimension(0.0)));
    }

    #[test]
    fn growth_bounds_hold_at_left_limits() {
        let g = random_connected(30, 0.1, 5).unwrap();
        let d = 1.7;
        let gc = growth_constants(&g, d).unwrap();
        for v in 0..g.num_vertices() {
            let mut r = 0.0;
            while r <= g.diameter() as f64 {
                let mu = g.ball_size(v, r) as f64;
                assert!(mu <= gc.d1 * (r + 1.0).powf(d) * (1.0 + 1e-12));
                assert!(gc.d2 * (r + 1.0).powf(d) <= mu * (1.0 + 1e-12));
                r += 1.0 / 64.0;
            }
        }
    }

    #[test]
    fn dimension_estimates() {
        let lat = estimate_dimension(&lattice_box(2, 21).unwrap()).unwrap();
        assert!((lat - 2.0).abs() <= 0.2, "{lat}");
        let p = estimate_dimension(&path(201).unwrap()).unwrap();
        assert!((p - 1.0).abs() <= 0.1, "{p}");
        let c = estimate_dimension(&circulant(200).unwrap()).unwrap();
        assert!((c - 1.0).abs() <= 0.1, "{c}");
        assert!(matches!(estimate_dimension(&circulant(6).unwrap()), Err(Error::GraphTooSmall(_))));
    }

    #[test]
    fn tail_sums_examples() {
        let z8 = circulant(8).unwrap();
        let h: Vec<f64> = (0..6).map(|n| 0.5_f64.powi(n)).collect();
        let t = weighted_tail_sums(&z8, 0, &h, 4, 1.0, 7.0 / 4.0).unwrap();
        assert!((t.lhs_i - 3.0).abs() < 1e-15);
        assert!(t.holds());

        let zero = vec![0.0; 6];
        let t = weighted_tail_sums(&z8, 3, &zero, 2, 1.0, 7.0 / 4.0).unwrap();
        assert_eq!((t.lhs_i, t.rhs_i, t.lhs_ii, t.rhs_ii), (0.0, 0.0, 0.0, 0.0));

        let t = weighted_tail_sums(&z8, 0, &h, 0, 1.0, 7.0 / 4.0).unwrap();
        let direct: f64 = (0..8).map(|v| h[z8.dist(0, v)]).sum();
        assert_eq!(t.lhs_ii, direct);

        let bad = vec![1.0, 0.5, 0.7, 0.0, 0.0];
        assert_eq!(
            weighted_tail_sums(&z8, 0, &bad, 1, 1.0, 2.0),
            Err(Error::EnvelopeNotMonotone(2))
        );
    }
}
