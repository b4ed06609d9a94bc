//! The family twisted by two rank-two bundles: the identity holds only modulo `p1(TM) = p1(V)`.
//!
//! ```bash
//! cargo run --example two_line_bundles
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::algebra::ideal_reduce;
use anomaly_forms::bundles::{Geometry, GeometrySpec};
use anomaly_forms::verifier::cancellation_sides;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    for k in 1..=2 {
        let g = Geometry::new(GeometrySpec::two_line(k, 2)?)?;
        let s = cancellation_sides(&g, k as usize + 2, false)?;
        let diff = s.lhs.sub(&s.rhs());
        let reduced = ideal_reduce(&diff, &g.tm_v_relation())?;
        writeln!(out, "{}", g.spec())?;
        writeln!(out, "  lhs - rhs           = {}", g.describe(&diff))?;
        writeln!(out, "  mod p1(TM) - p1(V)  = {}", g.describe(&reduced))?;
        assert!(reduced.is_zero());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
