//! Decomposing q-series over `(8δ2)^{k-2r} ε2^r`: the `b_r, β_r` coefficients, their
//! closed forms, and the zero residual that witnesses modularity.
//!
//! ```bash
//! cargo run --example decomposition
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::bundles::{Geometry, GeometrySpec};
use anomaly_forms::decomp::Coefficients;
use anomaly_forms::verifier::{modularity_witness, WitnessSource};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let g = Geometry::new(GeometrySpec::ab(2, 1, 2, 1)?)?;
    for which in [Coefficients::BR, Coefficients::BetaR] {
        let e = g.extract_br_betar(which, 4)?;
        for (r, h) in e.result.h.iter().enumerate() {
            writeln!(out, "{}_{r} = {}", which.name(), g.describe(h))?;
        }
        for c in &e.checks {
            writeln!(out, "  r={} {}: {}", c.r, c.reading.label(), c.matches)?;
        }
    }

    let corrected = modularity_witness(&g, WitnessSource::Corrected, 4)?;
    let uncorrected = modularity_witness(&g, WitnessSource::Uncorrected, 4)?;
    writeln!(out, "corrected second form: residual zero = {}", corrected.is_exact())?;
    match uncorrected.residual.first_nonzero_location() {
        Some((half, deg)) => writeln!(out, "without the E2 correction: first residual at half-order {half}, degree {deg}")?,
        None => writeln!(out, "without the E2 correction: residual zero")?,
    }
    assert!(corrected.is_exact() && !uncorrected.is_exact());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
