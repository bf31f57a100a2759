//! Hop probabilities of the lazy random walk on a cycle.

use std::sync::Arc;

use decaynet::graph::circulant;
use decaynet::powers::{lazy_walk, markov_hop_report};
use decaynet::Result;

fn main() -> Result<()> {
    let g = Arc::new(circulant(64)?);
    let walk = lazy_walk(&g, 0.5)?;
    let rep = markov_hop_report(&walk, 2.5, 1.0, 64)?;
    for k in [0, 7, 31, 63] {
        println!("n={:>2} implied C={:.4e}", rep.n_values[k], rep.implied_c[k]);
    }
    println!(
        "finite speed={} max entry={:.3} row-sum deviation={:.1e} pass={}",
        rep.finite_speed,
        rep.max_entry,
        rep.max_row_sum_dev,
        rep.pass()
    );
    Ok(())
}
