//! How the decay norm of A_γ^{-1} scales as γ → 0, against the inversion bound.

use decaynet::inversion::{agamma_scaling_study, AgammaStudy};
use decaynet::report::to_csv;
use decaynet::{BeurlingParams, Result};

fn main() -> Result<()> {
    let p = BeurlingParams::new(f64::INFINITY, 2.0, 1.0)?;
    let study = agamma_scaling_study(&[0.4, 0.2, 0.1, 0.05], &p, 800)?;
    print!("{}", to_csv(&AgammaStudy::CSV_HEADER, &study.csv_rows()));
    println!(
        "fitted slope {:.3}, bound exponent {:.3}, gap {:.3}, implied constant stable: {}",
        study.inverse_slope, study.bound_exponent, study.gap, study.implied_c_stable
    );
    Ok(())
}
