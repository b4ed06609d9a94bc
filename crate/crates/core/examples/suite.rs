//! Running a suite configuration and emitting JSON reports, including a negative control.
//!
//! ```bash
//! cargo run --example suite
//! ```

use std::error::Error;
use std::io::Write;

use anomaly_forms::verifier::{run_suite, suite_passed, Report, SuiteConfig};

const CONFIG: &str = r#"{
  "cases": [
    {"case": "THM31", "k": 2, "l": 2, "a": 2, "b": 1, "family": "AB", "qOrder": 4},
    {"case": "THM34", "k": 1, "l": 1, "a": 0, "b": 2, "family": "AB_XI"},
    {"case": "THM41", "k": 2, "l": 1, "a": 1, "b": 0, "family": "TWO_LINE"},
    {"case": "COR32", "k": 1, "l": 1, "a": 1, "b": 0, "family": "AB", "perturb": true}
  ],
  "format": "json"
}"#;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let config = SuiteConfig::from_json(CONFIG)?;
    let entries = run_suite(&config);
    let reports: Vec<&Report> = entries.iter().filter_map(|e| e.as_ref().ok()).collect();
    for r in &reports {
        writeln!(out, "{} {:?} {}", r.case, r.verdict, serde_json::to_string(&r.residual)?)?;
    }
    // the perturbed control fails, so the suite does too
    assert!(!suite_passed(&entries));
    assert_eq!(reports.iter().filter(|r| r.passed()).count(), 3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
