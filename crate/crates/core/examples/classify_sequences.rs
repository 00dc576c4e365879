//! Profiles and verdicts for the three canonical collapsing sequences.

use std::f64::consts::PI;

use collapse_lab::collapse::{Family, DEFAULT_FIT_TOLERANCE, DEFAULT_THRESHOLD};
use collapse_lab::{classify, profile, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sequences = [
        ("thin torus (1, 1/i)", Family::Torus, "1,1/i", 50, 100, 0.5),
        ("doubly thin torus (1/i², 1/i)", Family::Torus, "1/i^2,1/i", 10, 100, 1.0),
        ("berger eps = 1/i", Family::Berger, "1/i", 10, 100, PI),
        ("fixed torus (1, 1)", Family::Torus, "1,1", 1, 10, 0.5),
    ];
    for (name, family, rule, a, b, r) in sequences {
        let spec = SequenceSpec::new(family, rule, a, b, r)?;
        let p = profile(&spec)?;
        let v = classify(&p, DEFAULT_THRESHOLD, DEFAULT_FIT_TOLERANCE)?;
        println!("{name}");
        println!("  first ratio {:.6}, last ratio {:.6}", p.rows[0].ratio, p.rows.last().unwrap().ratio);
        println!("  verdict {} (inf {:.4}, decay {:?})", v.kind.as_str(), v.inf_ratio, v.decay_exponent);
    }

    // the same thin torus in Monte-Carlo mode
    let spec = SequenceSpec::new(Family::Torus, "1,1/i", 50, 60, 0.25)?.monte_carlo(100_000, 0);
    let p = profile(&spec)?;
    print!("\nmonte carlo profile\n{}", p.to_csv());
    Ok(())
}
