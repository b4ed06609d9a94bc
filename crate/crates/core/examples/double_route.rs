//! The first and the `E2`-corrected second form built twice: from Chern characters of
//! the twisted tensor products, and from products of theta quotients.
//!
//! ```bash
//! cargo run --example double_route
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::bundles::{Geometry, GeometrySpec, QFormId, Route};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let order = 3;
    for spec in [GeometrySpec::ab(1, 2, 2, 1)?, GeometrySpec::ab_xi(2, 1, -1, 1)?, GeometrySpec::two_line(1, 2)?] {
        let g = Geometry::new(spec)?;
        let first = QFormId::first_for(spec.family);
        let bundle = g.q_form(first, Route::Bundle, order)?;
        let theta = g.q_form(first, Route::Theta, order)?;
        let corrected_gap = g.corrected_form(Route::Bundle, order)?.sub(&g.corrected_form(Route::Theta, order)?)?;
        writeln!(out, "{spec}")?;
        writeln!(out, "  {first:?} top degree at q^0: {}", g.describe(&bundle.coeff(0).component(spec.top_degree())))?;
        writeln!(out, "  routes agree: first {}, corrected {}", bundle == theta, corrected_gap.is_zero())?;
        assert!(bundle == theta && corrected_gap.is_zero());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
