//! q-expansions of the level-two forms `δ1, ε1, δ2, ε2`, of `E2`, and the Jacobi identity.
//!
//! ```bash
//! cargo run --example modular_forms
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::theta::{jacobi_identity_check, modular_form, ModularFormId};

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    for id in ModularFormId::ALL {
        writeln!(out, "{id:?}: {}", modular_form(id, 3))?;
    }
    // θ'(0) = π θ1(0) θ2(0) θ3(0) as an exact q-series
    let residual = jacobi_identity_check(20);
    writeln!(out, "Jacobi identity residual to q^20: {residual}")?;
    assert!(residual.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
