//! Powers of the cyclic shift: polynomial growth of the decay norm against
//! the sub-exponential comparator.

use std::sync::Arc;

use decaynet::families::shift;
use decaynet::graph::circulant;
use decaynet::powers::power_trajectory;
use decaynet::{BeurlingParams, GraphMetrics, Result};

fn main() -> Result<()> {
    let g = Arc::new(circulant(256)?);
    let m = GraphMetrics::new(&g, 1.0)?;
    let p = BeurlingParams::new(f64::INFINITY, 2.0, 1.0)?;
    let t = power_trajectory(&shift(&g), &p, &m, 32)?;
    for k in [0, 3, 7, 15, 31] {
        println!(
            "n={:>2} ||S^n||={:>8.1} (n+1)^2={:>6} poly bound={:.3e} subexp={:.3e}",
            t.n_values[k],
            t.beurling_norms[k],
            (t.n_values[k] + 1).pow(2),
            t.bound_factors[k],
            t.subexp_factors[k]
        );
    }
    println!("polynomial bound wins from n = {:?}", t.crossover);
    Ok(())
}
