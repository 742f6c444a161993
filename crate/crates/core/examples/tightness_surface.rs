//! ⟨Q⟩_max, 𝓑_max/β and ΔS_max/β for dephased states, showing how the gap
//! to the heat closes at high temperature.

use landauer::analysis::tightness_surface;

fn main() -> landauer::Result<()> {
    let alphas = [0.0, 0.25, 0.5, 0.75];
    let betas = [0.01, 0.1, 1.0, 5.0];
    println!(
        "{:>5} {:>5} {:>10} {:>10} {:>10}",
        "α²", "β", "Q_max", "𝓑_max/β", "ΔS_max/β"
    );
    for p in tightness_surface(&alphas, &betas, 0.0)? {
        println!(
            "{:>5} {:>5} {:>10.5} {:>10.5} {:>10.5}",
            p.alpha_sq, p.beta, p.q_max, p.b_max_over_beta, p.ds_max_over_beta
        );
    }
    Ok(())
}
