//! Lower stability bounds in l^1, l^2, l^inf and how they compare across exponents.

use std::sync::Arc;

use decaynet::families::random_band;
use decaynet::graph::path;
use decaynet::stability::{stability_scaling_study, stability_transfer_report};
use decaynet::{BeurlingParams, Lp, Result};

fn main() -> Result<()> {
    let p = BeurlingParams::new(f64::INFINITY, 2.5, 1.0)?;
    for m in [64, 128, 256] {
        let g = Arc::new(path(m)?);
        let a = random_band(&g, 3, 11);
        let rep = stability_transfer_report("random_band:3", &a, &p, &Lp::ALL)?;
        println!(
            "M={m}: A_1={:.4} A_2={:.4} A_inf={:.4} max implied C={:.3e} bracket ok={}",
            rep.bounds.get(Lp::One),
            rep.bounds.get(Lp::Two),
            rep.bounds.get(Lp::Inf),
            rep.max_empirical_c(),
            rep.pass()
        );
    }

    let gammas: Vec<f64> = (1..=6).map(|k| 0.5f64.powi(k)).collect();
    let s = stability_scaling_study(&gammas, 256, Lp::Two, Lp::Inf, &p, 3)?;
    println!(
        "perturbed A_gamma on Z_256, p=2 -> q=inf: slope {:.4} <= {:.4}: {}",
        s.slope,
        s.slope_bound,
        s.pass()
    );
    Ok(())
}
