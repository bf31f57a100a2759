//! Standard matrix families used by the studies and the verification battery.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::matrix::{GraphMatrix, ONE, ZERO};

/// `A_γ`: 1 on the diagonal and `-e^{-γ}` at `(i, i+1)`. On a path this is
/// upper bidiagonal; with `wrap` the corner entry `(n-1, 0)` closes the cycle.
fn a_gamma(graph: &Arc<Graph>, gamma: f64, wrap: bool) -> GraphMatrix {
    let n = graph.num_vertices();
    let off = Complex64::new(-(-gamma).exp(), 0.0);
    GraphMatrix::from_fn(graph, |i, j| {
        if i == j {
            ONE
        } else if j == i + 1 || (wrap && i == n - 1 && j == 0) {
            off
        } else {
            ZERO
        }
    })
}

/// Bidiagonal `A_γ` on a path graph. Its inverse is `e^{-(j-i)γ}` for `j ≥ i`.
pub fn a_gamma_path(graph: &Arc<Graph>, gamma: f64) -> GraphMatrix {
    a_gamma(graph, gamma, false)
}

/// Circulant `A_γ` on `Z_N`, a normal matrix with eigenvalues `1 - e^{-γ}ω^k`.
pub fn a_gamma_circulant(graph: &Arc<Graph>, gamma: f64) -> GraphMatrix {
    a_gamma(graph, gamma, true)
}

/// Cyclic shift `S(i, j) = 1` iff `i ≡ j + 1 (mod n)`.
pub fn shift(graph: &Arc<Graph>) -> GraphMatrix {
    let n = graph.num_vertices();
    GraphMatrix::from_fn(graph, |i, j| if i == (j + 1) % n { ONE } else { ZERO })
}

/// Translation by `step` along the first axis of a `lattice_box(_, side)`
/// (first coordinate varies fastest); rows whose target leaves the box are zero.
pub fn lattice_translation(graph: &Arc<Graph>, side: usize, step: usize) -> GraphMatrix {
    GraphMatrix::from_fn(graph, |i, j| {
        if i % side + step < side && j == i + step {
            ONE
        } else {
            ZERO
        }
    })
}

fn random_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>())
}

/// Random complex matrix supported on `ρ ≤ width` with off-diagonal moduli
/// bounded by `(1+ρ)^{-2}`, made strictly row diagonally dominant (hence
/// invertible) by a positive real diagonal.
pub fn random_band(graph: &Arc<Graph>, width: usize, seed: u64) -> GraphMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = random_off_diagonal(graph, width, &mut rng);
    for i in 0..m.n() {
        let off: f64 = m.row(i).iter().map(|z| z.norm()).sum();
        m.set(i, i, Complex64::new(off + 0.5 + rng.random::<f64>(), 0.0));
    }
    m
}

/// Random complex matrix supported on `ρ ≤ width` with no dominance
/// structure; the diagonal is a random complex number of modulus at most 1.
pub fn random_decaying(graph: &Arc<Graph>, width: usize, seed: u64) -> GraphMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = random_off_diagonal(graph, width, &mut rng);
    for i in 0..m.n() {
        let z = random_phase(&mut rng) * rng.random::<f64>();
        m.set(i, i, z);
    }
    m
}

fn random_off_diagonal(graph: &Arc<Graph>, width: usize, rng: &mut ChaCha8Rng) -> GraphMatrix {
    GraphMatrix::from_fn(graph, |i, j| {
        let rho = graph.dist(i, j);
        if i == j || rho > width {
            ZERO
        } else {
            random_phase(rng) * (rng.random::<f64>() / ((1 + rho) as f64).powi(2))
        }
    })
}

/// Entrywise-dominated companion of `b`: same support, moduli scaled by
/// independent factors in `[0, 1]`, fresh phases.
pub fn random_dominated(b: &GraphMatrix, seed: u64) -> GraphMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    b.map(|_, _, z| random_phase(&mut rng) * (z.norm() * rng.random::<f64>()))
}

/// Same moduli as `b` with fresh random phases.
pub fn random_phases(b: &GraphMatrix, seed: u64) -> GraphMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    b.map(|_, _, z| random_phase(&mut rng) * z.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, path};

    #[test]
    fn a_gamma_structure() {
        let g = Arc::new(path(5).unwrap());
        let a = a_gamma_path(&g, 0.3);
        assert_eq!(a.nnz(), 9);
        assert_eq!(a.get(2, 3), Complex64::new(-(-0.3f64).exp(), 0.0));
        let c = Arc::new(circulant(5).unwrap());
        assert_eq!(a_gamma_circulant(&c, 0.3).get(4, 0), Complex64::new(-(-0.3f64).exp(), 0.0));
    }

    #[test]
    fn random_band_is_supported_and_dominant() {
        let g = Arc::new(path(30).unwrap());
        let a = random_band(&g, 2, 9);
        for i in 0..30 {
            let off: f64 = (0..30).filter(|&j| j != i).map(|j| a.get(i, j).norm()).sum();
            assert!(a.get(i, i).re > off);
            for j in 0..30 {
                if g.dist(i, j) > 2 {
                    assert_eq!(a.get(i, j), ZERO);
                }
            }
        }
        assert_eq!(a, random_band(&g, 2, 9));
        let b = random_dominated(&a, 4);
        for (x, y) in b.entries().iter().zip(a.entries()) {
            assert!(x.norm() <= y.norm());
        }
    }
}
