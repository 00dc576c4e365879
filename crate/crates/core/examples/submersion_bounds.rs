//! Constants bounding the fiber injectivity radius of a bounded Riemannian
//! submersion, and how they behave as the loop shrinks.

use collapse_lab::submersion::{
    c3_default, fiber_inj_bound, gray_oneill_interval, heintze_karcher_fiber_volume, nullhomotopy_bounds,
    ode_rho_closed_form, tau_profile, Regime,
};
use collapse_lab::{compute_breakdown, SubmersionBoundInput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = SubmersionBoundInput::new(1.0, 1.0, 1, 1.0, 0.1)?;
    let b = compute_breakdown(&input)?;
    println!("{}", serde_json::to_string_pretty(&b)?);
    println!("rho(1) = {:.6e} (ell limit {:.4})", ode_rho_closed_form(b.g1, b.g2, input.ell), input.ell_limit());

    println!("\n{:>8} {:>12} {:>12} {:>12}", "ell", "P", "L-1", "C-1");
    let grid: Vec<f64> = (1..=9).map(|k| 10f64.powi(-k)).collect();
    for row in tau_profile(&input, &grid)? {
        println!("{:>8.0e} {:>12.4e} {:>12.4e} {:>12.4e}", row.ell, row.p, row.l_minus_1, row.c_minus_1);
    }

    let (lo, hi) = gray_oneill_interval(1.0, 1.0);
    println!("\nbase curvature within [{lo}, {hi}]");
    let (dt, ds) = nullhomotopy_bounds(1.0, 2.0, 1.0, Regime::Mixed)?;
    println!("nullhomotopy stretch: |dH/dt| <= {dt:.6}, |dH/ds| <= {ds:.6}");

    let inj_m = 0.05;
    let inj_input = SubmersionBoundInput::for_injectivity(0.5, 0.2, 2, 1.0, inj_m)?;
    println!("\nfiber inj <= {:.6} at inj(M) = {inj_m}", fiber_inj_bound(&inj_input)?);

    // circle fibers: the volume bound is the circumference
    let v = heintze_karcher_fiber_volume(1, 1.0, 0.3, 0.3, c3_default(1))?;
    println!("circle fiber with inj 0.3: volume bound {v}");

    match SubmersionBoundInput::new(1.0, 1.0, 1, 1.0, 4.0) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("\n{e}"),
    }
    Ok(())
}
