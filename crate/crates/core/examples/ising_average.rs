//! Coupling-averaged Ising bounds and the Clausius threshold, closed form
//! against Monte Carlo.

use landauer::analysis::{clausius_threshold, CouplingEnsemble};
use landauer::{EnvironmentParams, InteractionKind, SystemStateParams};

fn main() -> landauer::Result<()> {
    let beta = 1.0;
    let env = EnvironmentParams::new(beta)?;
    let ensemble = CouplingEnsemble::new(InteractionKind::Ising, 1.0, 4000, 1000.0, 0)?;

    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>18}",
        "α²", "βQ̄", "ΔS̄", "𝓑̄", "label"
    );
    for alpha_sq in [0.1, 0.5, 0.9, 0.95] {
        let params = SystemStateParams::from_coherence(
            alpha_sq,
            0.1f64.min(landauer::model::max_coherence(alpha_sq)),
        )?;
        let rec = ensemble.average(&params, &env)?;
        println!(
            "{alpha_sq:>5} {:>10.5} {:>10.5} {:>10.5} {:>18}",
            rec.mean_beta_q,
            rec.mean_ds,
            rec.mean_b,
            rec.label().as_str()
        );
    }

    for j_max in [0.5, 1.0, 2.0] {
        let closed = clausius_threshold(InteractionKind::Ising, beta, Some(j_max))?;
        let sampled = CouplingEnsemble::new(InteractionKind::Ising, j_max, 4000, 1000.0, 1)?
            .heat_sign_change(&env, 51)?;
        println!(
            "J_max = {j_max}: threshold {closed:.4} (closed form), {sampled:.4} (Monte Carlo)"
        );
    }
    Ok(())
}
