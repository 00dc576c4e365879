//! Box-counting dimension of the limit space, from ε-nets of a late member.

use std::time::Instant;

use collapse_lab::collapse::Family;
use collapse_lab::{estimate_limit_dimension, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("thin torus, i = 500", Family::Torus, "1,1/i", 500, vec![0.4, 0.2, 0.1, 0.05]),
        ("berger, eps = 1/200", Family::Berger, "1/i", 200, vec![0.2, 0.14, 0.1, 0.07]),
        ("fixed torus (1, 1)", Family::Torus, "1,1", 1, vec![0.8, 0.4, 0.2, 0.1]),
    ];
    for (name, family, rule, i, grid) in cases {
        let spec = SequenceSpec::new(family, rule, i, i, 1.0)?;
        let started = Instant::now();
        let est = estimate_limit_dimension(&spec, &grid, 0)?;
        println!(
            "{name}: dimension {:.3} (rms {:.3}, {:.1?})",
            est.dimension,
            est.fit_rms,
            started.elapsed()
        );
        for (eps, n, cover) in &est.nets {
            println!("  eps {eps:<5} N {n:>5}  covering <= {cover:.4}");
        }
    }
    Ok(())
}
