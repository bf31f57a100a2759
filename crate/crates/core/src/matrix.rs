//! Dense complex matrices indexed by the vertices of a [`Graph`].

use std::fmt;
use std::sync::Arc;

use faer::linalg::solvers::DenseSolveCore;
use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the dimension for spectral and cubic-cost operations.
pub const DEFAULT_SIZE_CAP: usize = 2048;

/// Environment variable that overrides [`DEFAULT_SIZE_CAP`].
pub const SIZE_CAP_ENV: &str = "DECAYNET_SIZE_CAP";

pub fn size_cap() -> usize {
    std::env::var(SIZE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

pub(crate) fn check_size_cap(n: usize) -> Result<()> {
    let cap = size_cap();
    if n > cap {
        Err(Error::SizeCap { size: n, cap })
    } else {
        Ok(())
    }
}

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square matrix `A = (a(λ, λ'))` over the vertex set of a graph, stored
/// row-major.
#[derive(Clone, PartialEq)]
pub struct GraphMatrix {
    graph: Arc<Graph>,
    data: Vec<Complex64>,
}

impl fmt::Debug for GraphMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphMatrix").field("graph", &self.graph.label()).field("n", &self.n()).finish()
    }
}

impl GraphMatrix {
    pub fn zeros(graph: &Arc<Graph>) -> Self {
        let n = graph.num_vertices();
        GraphMatrix { graph: Arc::clone(graph), data: vec![ZERO; n * n] }
    }

    pub fn identity(graph: &Arc<Graph>) -> Self {
        let mut m = Self::zeros(graph);
        for i in 0..m.n() {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(graph: &Arc<Graph>, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = graph.num_vertices();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        GraphMatrix { graph: Arc::clone(graph), data }
    }

    /// Row-major entries; rejects wrong lengths and non-finite values.
    pub fn from_entries(graph: &Arc<Graph>, data: Vec<Complex64>) -> Result<Self> {
        let n = graph.num_vertices();
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(k / n, k % n));
        }
        Ok(GraphMatrix { graph: Arc::clone(graph), data })
    }

    pub fn diagonal(graph: &Arc<Graph>, diag: &[Complex64]) -> Result<Self> {
        let n = graph.num_vertices();
        if diag.len() != n {
            return Err(Error::DimensionMismatch(format!("{} diagonal entries, {n} vertices", diag.len())));
        }
        let mut m = Self::zeros(graph);
        for (i, &z) in diag.iter().enumerate() {
            m.set(i, i, z);
        }
        Ok(m)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.num_vertices()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let n = self.n();
        self.data[i * n + j] = z;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.n();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        self.data.iter().enumerate().all(|(k, z)| k / n == k % n || *z == ZERO)
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    /// Number of structurally nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|z| **z != ZERO).count()
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, Complex64) -> Complex64) -> Self {
        let n = self.n();
        let data = self.data.iter().enumerate().map(|(k, &z)| f(k / n, k % n, z)).collect();
        GraphMatrix { graph: Arc::clone(&self.graph), data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|_, _, z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.map(|i, j, z| z + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.map(|i, j, z| z - other.get(i, j)))
    }

    pub fn adjoint(&self) -> Self {
        self.map(|i, j, _| self.get(j, i).conj())
    }

    /// Dense product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let prod = &self.to_faer() * &other.to_faer();
        Ok(Self::from_faer(&self.graph, &prod))
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n())
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn row_abs_sums(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.row(i).iter().map(|z| z.norm()).sum()).collect()
    }

    pub fn col_abs_sums(&self) -> Vec<f64> {
        let n = self.n();
        let mut sums = vec![0.0; n];
        for (k, z) in self.data.iter().enumerate() {
            sums[k % n] += z.norm();
        }
        sums
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n(), other.n())));
        }
        Ok(())
    }

    pub(crate) fn to_faer(&self) -> Mat<Complex64> {
        let n = self.n();
        Mat::from_fn(n, n, |i, j| self.data[i * n + j])
    }

    pub(crate) fn from_faer(graph: &Arc<Graph>, m: &Mat<Complex64>) -> Self {
        Self::from_fn(graph, |i, j| m[(i, j)])
    }

    /// Singular values in nonincreasing order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        check_size_cap(self.n())?;
        self.to_faer()
            .singular_values()
            .map_err(|e| Error::Io(format!("singular value decomposition failed: {e:?}")))
    }

    /// LU factorization with partial pivoting; returns the inverse and the
    /// smallest pivot modulus.
    pub(crate) fn lu_inverse(&self) -> Result<(Self, f64)> {
        check_size_cap(self.n())?;
        let lu = self.to_faer().partial_piv_lu();
        let u = lu.U();
        let min_pivot = (0..self.n()).map(|i| u[(i, i)].norm()).fold(f64::INFINITY, f64::min);
        let inv = lu.inverse();
        Ok((Self::from_faer(&self.graph, &inv), min_pivot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;

    #[test]
    fn products_and_shapes() {
        let g = Arc::new(path(4).unwrap());
        let a = GraphMatrix::from_fn(&g, |i, j| Complex64::new((i + 2 * j) as f64, i as f64));
        let i = GraphMatrix::identity(&g);
        assert_eq!(a.matmul(&i).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        assert!(i.is_diagonal() && !a.is_diagonal());
        assert_eq!(a.adjoint().get(1, 2), a.get(2, 1).conj());
        let x = vec![ONE; 4];
        assert_eq!(i.apply(&x), x);
    }

    #[test]
    fn from_entries_validates() {
        let g = Arc::new(path(2).unwrap());
        assert!(GraphMatrix::from_entries(&g, vec![ONE; 3]).is_err());
        let mut v = vec![ONE; 4];
        v[3] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(GraphMatrix::from_entries(&g, v), Err(Error::NonFinite(1, 1)));
    }
}
