//! Maximal N-disjoint fusion sets, truncation operators, band approximation,
//! commutator estimates and the coarsened fusion-level norm.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::approx_le;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMetrics};
use crate::matrix::{GraphMatrix, ZERO};
use crate::norms::{decay_envelope, schur_norm, BeurlingParams, DecayEnvelope};

/// A maximal `N`-disjoint vertex set: the `N`-balls around members are
/// pairwise disjoint, every vertex's `N`-ball meets one of them, and the
/// `2N`-balls around members cover the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionSet {
    graph: Arc<Graph>,
    radius: usize,
    vertices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FusionSetRepr {
    #[serde(rename = "N")]
    radius: usize,
    vertices: Vec<usize>,
}

impl Serialize for FusionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FusionSetRepr { radius: self.radius, vertices: self.vertices.clone() }.serialize(s)
    }
}

/// Outcome of the brute-force structural checks on a fusion set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FusionCheck {
    pub disjoint: bool,
    pub maximal: bool,
    pub covering: bool,
}

impl FusionCheck {
    pub fn pass(&self) -> bool {
        self.disjoint && self.maximal && self.covering
    }
}

/// Greedy construction in ascending vertex order: a vertex is selected iff
/// its `N`-ball misses every previously selected `N`-ball, i.e. it lies at
/// distance more than `2N` from all of them.
pub fn maximal_disjoint_set(graph: &Arc<Graph>, radius: usize) -> Result<FusionSet> {
    if radius < 1 || radius > graph.diameter() {
        return Err(Error::BadRadius(format!(
            "need 1 <= N <= diameter = {}, got {radius}",
            graph.diameter()
        )));
    }
    let mut vertices: Vec<usize> = Vec::new();
    for v in 0..graph.num_vertices() {
        let row = graph.dist_row(v);
        if vertices.iter().all(|&m| row[m] as usize > 2 * radius) {
            vertices.push(v);
        }
    }
    Ok(FusionSet { graph: Arc::clone(graph), radius, vertices })
}

impl FusionSet {
    /// Rebuilds a fusion set from serialized parts; the structure is checked.
    pub fn from_parts(graph: &Arc<Graph>, radius: usize, vertices: Vec<usize>) -> Result<Self> {
        for &v in &vertices {
            graph.check_vertex(v)?;
        }
        let f = FusionSet { graph: Arc::clone(graph), radius, vertices };
        if f.verify().pass() {
            Ok(f)
        } else {
            Err(Error::BadParams(format!("not a maximal {radius}-disjoint set")))
        }
    }

    pub fn from_json(graph: &Arc<Graph>, json: &str) -> Result<Self> {
        let repr: FusionSetRepr = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_parts(graph, repr.radius, repr.vertices)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks disjointness, maximality and the `2N`-covering by explicit
    /// ball membership, independently of the distance shortcut used above.
    pub fn verify(&self) -> FusionCheck {
        let g = &self.graph;
        let n = g.num_vertices();
        let ball = |c: usize, r: usize| -> Vec<bool> {
            (0..n).map(|v| g.dist(c, v) <= r).collect()
        };
        let balls: Vec<Vec<bool>> = self.vertices.iter().map(|&m| ball(m, self.radius)).collect();

        let mut disjoint = true;
        for (i, bi) in balls.iter().enumerate() {
            for bj in &balls[i + 1..] {
                if bi.iter().zip(bj).any(|(&x, &y)| x && y) {
                    disjoint = false;
                }
            }
        }
        let union: Vec<bool> = (0..n).map(|v| balls.iter().any(|b| b[v])).collect();
        let maximal = (0..n).all(|v| ball(v, self.radius).iter().zip(&union).any(|(&x, &y)| x && y));
        let mut covered = vec![false; n];
        for &m in &self.vertices {
            for (c, inside) in covered.iter_mut().zip(ball(m, 2 * self.radius)) {
                *c |= inside;
            }
        }
        FusionCheck { disjoint, maximal, covering: covered.into_iter().all(|c| c) }
    }
}

/// Minimum and maximum over vertices of the number of fusion vertices
/// within distance `N'`, for `N' ≥ 2N`.
pub fn covering_multiplicity(f: &FusionSet, n_prime: usize) -> Result<(usize, usize)> {
    if n_prime < 2 * f.radius {
        return Err(Error::RadiusTooSmall { n_prime, min: 2 * f.radius });
    }
    let g = &f.graph;
    let mut lo = usize::MAX;
    let mut hi = 0;
    for v in 0..g.num_vertices() {
        let row = g.dist_row(v);
        let c = f.vertices.iter().filter(|&&m| row[m] as usize <= n_prime).count();
        lo = lo.min(c);
        hi = hi.max(c);
    }
    Ok((lo, hi))
}

/// Upper bound `D0^{⌈log2(2N'/N + 1)⌉}` on the covering multiplicity.
pub fn counting_bound(d0: f64, radius: usize, n_prime: usize) -> f64 {
    let k = (2.0 * n_prime as f64 / radius as f64 + 1.0).log2().ceil();
    d0.powf(k)
}

/// Fusion vertices within distance `NR` of a vertex, with the two-sided
/// bounds that hold on graphs with normal counting measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FusionDensity {
    pub count: usize,
    pub upper: f64,
    /// Present when `R ≥ 3`.
    pub lower: Option<f64>,
}

impl FusionDensity {
    pub fn holds(&self) -> bool {
        approx_le(self.count as f64, self.upper)
            && self.lower.is_none_or(|lo| approx_le(lo, self.count as f64))
    }
}

/// Counts `#{λ_m : ρ(λ_m, λ) ≤ NR}` and evaluates `(D1/D2)(R+1)^d` and,
/// for `R ≥ 3`, `(D2/D1)((R-2)/3)^d`.
pub fn fusion_density(
    f: &FusionSet,
    vertex: usize,
    radius_factor: f64,
    metrics: &GraphMetrics,
) -> Result<FusionDensity> {
    f.graph.check_vertex(vertex)?;
    if !(metrics.d2 > 0.0) {
        return Err(Error::NotNormal(metrics.d2));
    }
    let n = f.radius as f64;
    let max_r = f.graph.diameter() as f64 / n + 1.0;
    if !(radius_factor >= 0.0 && radius_factor <= max_r) {
        return Err(Error::BadRadius(format!("need 0 <= R <= {max_r}, got {radius_factor}")));
    }
    let reach = n * radius_factor;
    let row = f.graph.dist_row(vertex);
    let count = f.vertices.iter().filter(|&&m| row[m] as f64 <= reach).count();
    let ratio = metrics.d1 / metrics.d2;
    let upper = ratio * (radius_factor + 1.0).powf(metrics.d);
    let lower = (radius_factor >= 3.0).then(|| ((radius_factor - 2.0) / 3.0).powf(metrics.d) / ratio);
    Ok(FusionDensity { count, upper, lower })
}

/// Weight profile of a truncation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationKind {
    /// Indicator of `[0, 1]`.
    Sharp,
    /// `ψ0(t)`: 1 on `|t| ≤ 1/2`, `2 - 2|t|` on `1/2 < |t| ≤ 1`, 0 beyond.
    Trapezoid,
}

/// The trapezoid function `ψ0`.
pub fn psi0(t: f64) -> f64 {
    let t = t.abs();
    if t <= 0.5 {
        1.0
    } else if t <= 1.0 {
        2.0 - 2.0 * t
    } else {
        0.0
    }
}

impl TruncationKind {
    pub fn weight(self, t: f64) -> f64 {
        match self {
            TruncationKind::Sharp => {
                if (0.0..=1.0).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
            TruncationKind::Trapezoid => psi0(t),
        }
    }
}

/// Diagonal matrix with entries `w(ρ(λ, λ')/N)`.
pub fn truncation_diag(
    graph: &Arc<Graph>,
    center: usize,
    radius: usize,
    kind: TruncationKind,
) -> Result<GraphMatrix> {
    graph.check_vertex(center)?;
    if radius < 1 {
        return Err(Error::BadRadius("truncation radius must be >= 1".into()));
    }
    let diag: Vec<Complex64> = graph
        .dist_row(center)
        .iter()
        .map(|&rho| Complex64::new(kind.weight(rho as f64 / radius as f64), 0.0))
        .collect();
    GraphMatrix::diagonal(graph, &diag)
}

/// `A_N`: entries with `ρ(λ, λ') > N` set to zero.
pub fn band_truncate(a: &GraphMatrix, radius: usize) -> GraphMatrix {
    let g = Arc::clone(a.graph());
    a.map(|i, j, z| if g.dist(i, j) <= radius { z } else { ZERO })
}

/// A computed quantity next to its explicit upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub exact: f64,
    pub bound: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        approx_le(self.exact, self.bound)
    }
}

/// `‖A - A_N‖_S ≤ D1((N+2)^d h(N+1) + d Σ_{n ≥ N+2} h(n)(n+1)^{d-1})`.
pub fn tail_schur_report(a: &GraphMatrix, radius: usize, metrics: &GraphMetrics) -> BoundCheck {
    let exact = schur_norm(&a.sub(&band_truncate(a, radius)).expect("same shape"));
    let h = decay_envelope(a);
    BoundCheck { exact, bound: band_tail_bound(&h, radius, metrics) }
}

fn band_tail_bound(h: &DecayEnvelope, radius: usize, metrics: &GraphMetrics) -> f64 {
    let d = metrics.d;
    let tail: f64 = (radius + 2..h.len())
        .map(|n| h.h(n) * ((n + 1) as f64).powf(d - 1.0))
        .sum();
    metrics.d1 * (((radius + 2) as f64).powf(d) * h.h(radius + 1) + d * tail)
}

/// `[A, D] = AD - DA` for diagonal `D`, computed entrywise as
/// `a(λ,λ')(d(λ') - d(λ))`.
pub fn commutator(a: &GraphMatrix, diag: &GraphMatrix) -> Result<GraphMatrix> {
    if !diag.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if diag.n() != a.n() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.n(), diag.n())));
    }
    let dv = diag.diag();
    Ok(a.map(|i, j, z| z * (dv[j] - dv[i])))
}

/// Chain `‖[A_N, Ψ_λ^{4N}]‖_S ≤ (2N)^{-1}‖(|a|ρ χ_{ρ≤N})‖_S
/// ≤ (2N)^{-1}(d+1) D1 Σ_{n≤N} h_A(n)(n+1)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub exact: f64,
    pub lipschitz_bound: f64,
    pub envelope_bound: f64,
}

impl CommutatorReport {
    pub fn holds(&self) -> bool {
        approx_le(self.exact, self.lipschitz_bound) && approx_le(self.lipschitz_bound, self.envelope_bound)
    }
}

pub fn commutator_lipschitz_report(
    a: &GraphMatrix,
    center: usize,
    radius: usize,
    metrics: &GraphMetrics,
) -> Result<CommutatorReport> {
    let g = Arc::clone(a.graph());
    let banded = band_truncate(a, radius);
    let psi = truncation_diag(&g, center, 4 * radius, TruncationKind::Trapezoid)?;
    let exact = schur_norm(&commutator(&banded, &psi)?);
    let weighted = banded.map(|i, j, z| Complex64::new(z.norm() * g.dist(i, j) as f64, 0.0));
    let two_n = 2.0 * radius as f64;
    let lipschitz_bound = schur_norm(&weighted) / two_n;
    let h = decay_envelope(a);
    let d = metrics.d;
    let sum: f64 = (0..=radius).map(|n| h.h(n) * ((n + 1) as f64).powf(d)).sum();
    let envelope_bound = (d + 1.0) * metrics.d1 * sum / two_n;
    Ok(CommutatorReport { exact, lipschitz_bound, envelope_bound })
}

/// Matrix indexed by the members of a vertex subset (typically a fusion set).
#[derive(Debug, Clone, PartialEq)]
pub struct FusionMatrix {
    graph: Arc<Graph>,
    vertices: Vec<usize>,
    data: Vec<Complex64>,
}

impl FusionMatrix {
    pub fn from_fn(
        graph: &Arc<Graph>,
        vertices: &[usize],
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        for &v in vertices {
            graph.check_vertex(v)?;
        }
        let m = vertices.len();
        let mut data = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                data.push(f(i, j));
            }
        }
        Ok(FusionMatrix { graph: Arc::clone(graph), vertices: vertices.to_vec(), data })
    }

    pub fn identity(graph: &Arc<Graph>, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(graph, vertices, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { ZERO })
    }

    /// Restriction of a vertex-indexed matrix to the subset.
    pub fn restrict(a: &GraphMatrix, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(a.graph(), vertices, |i, j| a.get(vertices[i], vertices[j]))
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.size() + j]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.vertices != other.vertices {
            return Err(Error::DimensionMismatch("different fusion index sets".into()));
        }
        let m = self.size();
        Self::from_fn(&self.graph, &self.vertices, |i, j| {
            (0..m).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }
}

/// Fusion-level norm: envelope `h_{B,N}(n) = max_{ρ(λ_m,λ_m') ≥ Nn} |b|`
/// weighted exactly as the vertex-level Beurling norm.
pub fn coarsened_norm(b: &FusionMatrix, p: &BeurlingParams, radius: usize) -> Result<f64> {
    if radius < 1 {
        return Err(Error::BadRadius("coarsening radius must be >= 1".into()));
    }
    let g = &b.graph;
    let mut buckets = vec![0.0_f64; g.diameter() + 2];
    let m = b.size();
    for i in 0..m {
        for j in 0..m {
            let rho = g.dist(b.vertices[i], b.vertices[j]);
            buckets[rho] = buckets[rho].max(b.get(i, j).norm());
        }
    }
    let by_distance = DecayEnvelope::from_bucket_maxima(buckets);
    let steps = g.diameter() / radius + 2;
    let coarse: Vec<f64> = (0..steps).map(|n| by_distance.h(n * radius)).collect();
    Ok(DecayEnvelope::from_values(coarse)?.weighted_norm(p))
}
