//! Maximal N-disjoint vertex sets, their covering multiplicity and local density.

use std::sync::Arc;

use decaynet::covering::{counting_bound, covering_multiplicity, fusion_density, maximal_disjoint_set};
use decaynet::graph::lattice_box;
use decaynet::{GraphMetrics, Result};

fn main() -> Result<()> {
    let g = Arc::new(lattice_box(2, 21)?);
    let m = GraphMetrics::natural(&g);
    for radius in [1, 2, 4] {
        let f = maximal_disjoint_set(&g, radius)?;
        let check = f.verify();
        let (lo, hi) = covering_multiplicity(&f, 2 * radius)?;
        let density = fusion_density(&f, 220, 3.0, &m)?;
        println!(
            "N={radius}: {} centres, structure ok={}, multiplicity [{lo}, {hi}] <= {:.1}, density {} in [{:.2}, {:.2}]",
            f.len(),
            check.pass(),
            counting_bound(m.d0, radius, 2 * radius),
            density.count,
            density.lower.unwrap_or(0.0),
            density.upper
        );
    }
    Ok(())
}
