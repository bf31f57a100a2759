//! Norms of the two-sided exponential matrix A_γ on a long path, against
//! the closed form (1 + 2^{αr} e^{-γr})^{1/r}.

use std::sync::Arc;

use decaynet::families::{a_gamma_path, random_band};
use decaynet::graph::path;
use decaynet::norms::{beurling_norm, beurling_star_norm, check_submultiplicative, op_norm, schur_norm};
use decaynet::{BeurlingParams, GraphMetrics, Lp, Result};

fn main() -> Result<()> {
    let g = Arc::new(path(400)?);
    let p = BeurlingParams::new(1.0, 2.0, 1.0)?;
    for gamma in [0.5, 0.1] {
        let a = a_gamma_path(&g, gamma);
        let closed = (1.0 + (2f64.powf(p.alpha) * (-gamma).exp()).powf(p.r)).powf(1.0 / p.r);
        println!(
            "gamma={gamma:<4} beurling={:.12} closed_form={closed:.12} star={:.6} schur={:.6} l1={:.6}",
            beurling_norm(&a, &p),
            beurling_star_norm(&a, &p),
            schur_norm(&a),
            op_norm(&a, Lp::One)?
        );
    }

    let metrics = GraphMetrics::natural(&g);
    let (a, b) = (random_band(&g, 3, 1), random_band(&g, 5, 2));
    let rep = check_submultiplicative(&a, &b, &p, &metrics)?;
    println!(
        "||AB||={:.4} <= schur form {:.4} <= algebra form {:.4}: {}",
        rep.lhs,
        rep.schur_bound,
        rep.algebra_bound,
        rep.pass()
    );
    Ok(())
}
