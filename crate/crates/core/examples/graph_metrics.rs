//! Doubling and growth constants for a few small graphs.

use decaynet::graph::{circulant, estimate_dimension, lattice_box, path, random_connected};
use decaynet::{GraphMetrics, Result};

fn main() -> Result<()> {
    let graphs = [path(101)?, circulant(8)?, lattice_box(2, 11)?, random_connected(48, 0.1, 7)?];
    println!("{:<18} {:>4} {:>5} {:>8} {:>8} {:>8} {:>7}", "graph", "M", "diam", "D0", "D1", "D2", "d_est");
    for g in &graphs {
        let m = GraphMetrics::natural(g);
        let est = estimate_dimension(g).map_or(f64::NAN, |x| x);
        println!(
            "{:<18} {:>4} {:>5} {:>8.4} {:>8.4} {:>8.4} {:>7.3}",
            g.label(),
            g.num_vertices(),
            g.diameter(),
            m.d0,
            m.d1,
            m.d2,
            est
        );
    }
    Ok(())
}
