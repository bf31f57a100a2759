//! Convolution powers of two-point sequences with unimodular symbol.

use decaynet::powers::{conv_power, conv_power_growth, ConvSequence};
use decaynet::Result;
use num_complex::Complex64;

fn main() -> Result<()> {
    let half = Complex64::new(0.5, 0.0);
    let seqs = [
        ("(1/2, 1/2)", ConvSequence::new(0, vec![half, half])?),
        ("(1/2, i/2)", ConvSequence::new(0, vec![half, Complex64::new(0.0, 0.5)])?),
    ];
    for (name, a) in &seqs {
        let p = conv_power(a, 64, 2.0);
        let growth = conv_power_growth(a, 2.0, 256)?;
        println!(
            "{name}: wiener(a^64)={:.12} weighted sup slope={:.3} (bound {:.2}) pass={}",
            p.wiener,
            growth.slope,
            growth.slope_bound,
            growth.pass()
        );
    }
    Ok(())
}
