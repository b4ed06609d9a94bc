//! Both sides of the `AB` cancellation identity and its dimension-4 and dimension-8 forms.
//!
//! ```bash
//! cargo run --example anomaly_cancellation
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::bundles::{Geometry, GeometrySpec};
use anomaly_forms::verifier::{cancellation_sides, corollary_dim4, corollary_dim8};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let g = Geometry::new(GeometrySpec::ab(2, 2, 2, 1)?)?;
    let s = cancellation_sides(&g, 4, false)?;
    writeln!(out, "{}", g.spec())?;
    writeln!(out, "  lhs = {}", g.describe(&s.lhs))?;
    writeln!(out, "  z   = {}", g.describe(&s.z))?;
    writeln!(out, "  B   = {}", g.describe(&s.correction))?;
    assert_eq!(s.lhs, s.rhs());

    let g4 = Geometry::new(GeometrySpec::ab(1, 1, 1, 0)?)?;
    let c = corollary_dim4(&g4, false)?;
    writeln!(out, "dim 4: {} = {}", g4.describe(&c.lhs), g4.describe(&c.rhs))?;
    assert_eq!(c.lhs, c.rhs);

    let g8 = Geometry::new(GeometrySpec::ab(2, 1, 1, 1)?)?;
    let c = corollary_dim8(&g8, false)?;
    assert_eq!(c.lhs, c.rhs);
    if let Some((lhs, rhs)) = &c.literal {
        writeln!(out, "dim 8, literal statement residual: {}", g8.describe(&lhs.sub(rhs)))?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
