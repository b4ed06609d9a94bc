//! Genus forms and spinor characters rewritten in Pontryagin classes.
//!
//! ```bash
//! cargo run --example pontryagin
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::bundles::{Genus, Geometry, GeometrySpec};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    // dim M = 8, rank V = 4
    let g = Geometry::new(GeometrySpec::ab(2, 2, 1, 0)?)?;
    let ahat = g.genus_form(Genus::AHat)?;
    let lhat = g.genus_form(Genus::LHat)?;
    for d in [4, 8] {
        writeln!(out, "Â^({d})  = {}", g.describe(&ahat.component(d)))?;
        writeln!(out, "L̂^({d})  = {}", g.describe(&lhat.component(d)))?;
    }
    let spinor = g.ch_spinor_pow(1)?;
    writeln!(out, "ch Δ(V) = {}", g.pontryagin(&spinor)?)?;
    // round trip: the Pontryagin form expands back to the root polynomial
    assert_eq!(g.pontryagin(&ahat)?.expand(), ahat);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
