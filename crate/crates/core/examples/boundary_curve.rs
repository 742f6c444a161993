//! The crossover curve 𝓑_max = ΔS_max and the linear entropy of the states on it.

use landauer::analysis::{boundary_curve, linspace};

fn main() -> landauer::Result<()> {
    for beta in [10.0, 1.0, 0.1] {
        let curve = boundary_curve(beta, &linspace(0.0, 1.0, 21))?;
        println!(
            "β = {beta}: {} points, no crossover at {} α² values",
            curve.points.len(),
            curve.no_root.len()
        );
        println!("{:>8} {:>10} {:>10}", "α²", "δ", "S_L");
        for p in &curve.points {
            println!(
                "{:>8.3} {:>10.6} {:>10.6}",
                p.alpha_sq,
                p.delta,
                p.linear_entropy()
            );
        }
        println!();
    }
    Ok(())
}
