//! Floating-point check of the theta, `E2` and `δ/ε` transformation laws at a sample point.
//!
//! ```bash
//! cargo run --example numeric_theta_laws
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::theta::numeric::{theta_eval_numeric, transformation_law_checks, SamplePoint};
use anomaly_forms::theta::ThetaKind;
use num_complex::Complex64;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let p = SamplePoint::default();
    writeln!(out, "tau = {}, v = {}, {} product terms", p.tau, p.v, p.terms)?;
    for kind in ThetaKind::ALL {
        writeln!(out, "{kind:?}(v, tau) = {:.12}", theta_eval_numeric(kind, p.v, p.tau, p.terms)?)?;
    }
    let checks = transformation_law_checks(p)?;
    for c in &checks {
        let mark = if c.passed() { "ok" } else { "FAILED" };
        writeln!(out, "{:<40} {:>10.3e}  {mark}", c.label, c.residual)?;
    }
    assert!(checks.iter().all(|c| c.passed()));
    // the upper half plane is the whole domain
    assert!(theta_eval_numeric(ThetaKind::Theta, p.v, Complex64::new(0.0, -1.0), 10).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
