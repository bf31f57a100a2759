//! Runs the inequality suite on the standard graph battery and prints a
//! per-inequality summary.

use decaynet::verify::{verify_all_with, VerifyOptions};
use decaynet::Result;

fn main() -> Result<()> {
    let opts = VerifyOptions { instances_per_graph: 4, ..VerifyOptions::default() };
    let s = verify_all_with(&opts)?;
    for (anchor, stats) in &s.anchors {
        println!("{anchor:<32} {:>5} checks {:>3} failures", stats.checks, stats.failures);
    }
    println!("{} checks on {} graphs, {} failed", s.total, s.graphs.len(), s.failed);
    Ok(())
}
