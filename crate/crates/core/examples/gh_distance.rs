//! Gromov-Hausdorff distances between finite metric spaces, and between
//! ε-nets of a thin torus and of its limit circle.

use collapse_lab::{epsilon_net, gh_distance_exact, gh_lower_bound, FiniteMetricSpace, FlatTorus, Member};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let point = FiniteMetricSpace::single_point();
    let triangle = FiniteMetricSpace::from_matrix(vec![
        vec![0.0, 1.0, 1.0],
        vec![1.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
    ])?;
    let path = FiniteMetricSpace::from_matrix(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 1.0],
        vec![2.0, 1.0, 0.0],
    ])?;
    println!("gh(point, path)     = {}", gh_distance_exact(&point, &path)?);
    println!("gh(triangle, path)  = {}", gh_distance_exact(&triangle, &path)?);
    println!("lower bound         = {}", gh_lower_bound(&triangle, &path));
    println!("json: {}", path.to_json());

    // a thin torus is close to its long circle
    let thin = Member::from(FlatTorus::new(vec![1.0, 0.01])?);
    let circle = Member::from(FlatTorus::new(vec![1.0])?);
    let a = epsilon_net(&thin, 1.2, 0, 6)?;
    let b = epsilon_net(&circle, 1.2, 0, 6)?;
    println!(
        "\nnets: {} points (cover {:.3}) and {} points (cover {:.3})",
        a.points.len(),
        a.covering_radius,
        b.points.len(),
        b.covering_radius
    );
    let d = gh_distance_exact(&a.space, &b.space)?;
    let slack = a.covering_radius + b.covering_radius;
    println!("gh(nets) = {d:.4}, so gh(torus, circle) <= {:.4}", d + slack);
    Ok(())
}
