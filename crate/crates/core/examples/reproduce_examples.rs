//! The worked-example table, as written by `collapse-lab reproduce`.

use collapse_lab::collapse::{reproduce, ModeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::var("COLLAPSE_LAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let table = reproduce(ModeKind::Exact, 0, seed)?;
    print!("{}", table.to_csv());

    let worst = |id: &str| {
        table
            .rows
            .iter()
            .filter(|r| r.example_id == id)
            .map(|r| r.relative_error)
            .fold(0.0, f64::max)
    };
    for id in ["thin_torus", "doubly_thin_torus", "hopf"] {
        println!("# {id}: worst relative error {:.2e}", worst(id));
    }
    Ok(())
}
