use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Attempts before `random_connected` gives up on a sparse edge probability.
const MAX_RANDOM_ATTEMPTS: usize = 10_000;

/// Path `0 - 1 - … - (m-1)`.
pub fn path(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::SizeTooSmall(format!("path needs M >= 2, got {m}")));
    }
    let edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edges(m, &edges)?.with_meta(format!("path:{m}"), Some(1.0)))
}

/// Cycle on `Z_n`: `m ~ n` iff `m - n ≡ ±1 (mod n)`.
pub fn circulant(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::SizeTooSmall(format!("circulant needs N >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Ok(Graph::from_edges(n, &edges)?.with_meta(format!("circulant:{n}"), Some(1.0)))
}

/// The box `{0, …, side-1}^dim` of the lattice `Z^dim` with nearest-neighbor
/// edges. Vertex ids are mixed-radix with the first coordinate fastest.
pub fn lattice_box(dim: usize, side: usize) -> Result<Graph> {
    if dim == 0 {
        return Err(Error::SizeTooSmall("lattice box needs d >= 1".into()));
    }
    if side < 2 {
        return Err(Error::SizeTooSmall(format!("lattice box needs L >= 2, got {side}")));
    }
    let n = side
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::SizeTooSmall("lattice box too large".into()))?;
    let mut edges = Vec::with_capacity(dim * n);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..dim {
            let coord = (v / stride) % side;
            if coord + 1 < side {
                edges.push((v, v + stride));
            }
            stride *= side;
        }
    }
    Ok(Graph::from_edges(n, &edges)?.with_meta(format!("lattice:{dim},{side}"), Some(dim as f64)))
}

/// Erdős–Rényi graph `G(n, edge_prob)` conditioned on connectivity by
/// redrawing from the same seeded stream until a connected sample appears.
pub fn random_connected(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::SizeTooSmall(format!("random graph needs n >= 2, got {n}")));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(Error::BadParams(format!("edge probability {edge_prob} not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = Error::EmptyEdgeList;
    for _ in 0..MAX_RANDOM_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < edge_prob {
                    edges.push((u, v));
                }
            }
        }
        match Graph::from_edges(n, &edges) {
            Ok(g) => return Ok(g.with_meta(format!("random:{n},{edge_prob},{seed}"), None)),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shapes() {
        assert_eq!(circulant(8).unwrap().diameter(), 4);
        let lat = lattice_box(2, 5).unwrap();
        assert_eq!(lat.num_vertices(), 25);
        assert_eq!(lat.ball_size(12, 1.0), 5);
        let p = path(101).unwrap();
        assert_eq!(p.ball_size(50, 50.0), 101);
        assert_eq!(lattice_box(3, 3).unwrap().diameter(), 6);
    }

    #[test]
    fn generators_reject_small_sizes() {
        assert!(matches!(path(1), Err(Error::SizeTooSmall(_))));
        assert!(matches!(circulant(2), Err(Error::SizeTooSmall(_))));
        assert!(matches!(lattice_box(2, 1), Err(Error::SizeTooSmall(_))));
        assert!(matches!(random_connected(1, 0.5, 0), Err(Error::SizeTooSmall(_))));
        assert!(random_connected(5, 0.0, 0).is_err());
    }

    #[test]
    fn random_graph_is_reproducible() {
        let a = random_connected(40, 0.1, 42).unwrap();
        let b = random_connected(40, 0.1, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.natural_dim(), None);
    }
}
