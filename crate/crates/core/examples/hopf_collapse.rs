//! Berger spheres collapsing to S²(1/2): closed-form invariants, ball volumes
//! and the constant ratio at r = π.

use std::f64::consts::PI;

use collapse_lab::{BergerSphere, Member, MonteCarlo, VolumeMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for eps in [1.0, 0.5, 0.1] {
        let g = BergerSphere::new(eps)?.geometry();
        println!("eps {eps}: {g:?}");
    }

    let b = BergerSphere::new(0.3)?;
    println!("\nball volumes at eps = 0.3 (diameter {:.6})", b.diameter());
    for r in [0.2, 0.6, 1.0, 1.6] {
        let exact = b.ball_volume_exact(r)?;
        let mc = b.ball_volume_mc(r, &MonteCarlo::new(200_000, 1))?;
        println!("  r {r}: exact {exact:.6}, mc {:.6} ± {:.1e}", mc.value, mc.std_error);
    }

    // once r reaches the diameter the ball is everything: vol/inj = 2π²ε/(πε)
    println!("\nratio at r = π along eps = 1/i");
    for i in [10u32, 20, 50, 100] {
        let m = Member::from(BergerSphere::new(1.0 / f64::from(i))?);
        println!("  i {i:>3}: {:.15}", m.criterion_ratio(PI, &VolumeMode::Exact)?);
    }

    // a geodesic along the fiber closes up after length 2πε
    let x = b.point(vec![1.0, 0.0, 0.0, 0.0])?;
    let half = b.exp(&x, [PI, 0.0, 0.0])?;
    println!("\nhalfway along the fiber: distance {:.6} = inj {:.6}", b.distance(&x, &half)?, b.injectivity_radius());
    println!("hopf image of x: {:?}", b.hopf_projection(&x)?);
    Ok(())
}
