//! Exact and Monte-Carlo ball volumes on flat tori, and the criterion ratio
//! along a thin torus.

use collapse_lab::{FlatTorus, MonteCarlo, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = FlatTorus::new(vec![1.0, 0.05])?;
    println!("torus radii {:?}: inj {:.6}, diam {:.6}, vol {:.6}", t.radii(), t.injectivity_radius(), t.diameter(), t.volume());

    let x = t.point(vec![0.1, 0.2])?;
    let y = t.point(vec![6.2, 0.0])?;
    println!("d(x, y) = {:.6} (wraps around both circles)", t.distance(&x, &y)?);

    println!("{:>6} {:>14} {:>14} {:>10}", "r", "exact", "monte carlo", "sigma");
    for r in [0.02, 0.1, 0.5, 1.0, 3.0] {
        let exact = t.ball_volume_exact(r)?;
        let mc = t.ball_volume_mc(r, &MonteCarlo::new(200_000, 0))?;
        println!("{r:>6} {exact:>14.8} {:>14.8} {:>10.2e}", mc.value, mc.std_error);
    }

    // above dimension 2 only Monte Carlo is available
    let t3 = FlatTorus::new(vec![1.0, 1.0, 1.0])?;
    let mc = t3.ball_volume_mc(0.1, &MonteCarlo::new(1_000_000, 7))?;
    let euclid = 4.0 / 3.0 * std::f64::consts::PI * 0.001;
    println!("T^3 ball r = 0.1: {:.6e} ± {:.1e}, euclidean {euclid:.6e}", mc.value, mc.std_error);

    let origin = Point::new(vec![0.0, 0.0]);
    println!("origin is a valid chart point: {}", t.point(origin.coords().to_vec()).is_ok());
    Ok(())
}
