//! Bounds for an anisotropic σᵏ⊗σᵏ coupling, and how much the heat and 𝓑
//! move when coherence is added to the initial state.

use landauer::engine::uniform_times;
use landauer::{system_state, Dynamics, EnvironmentParams, InteractionModel, SystemStateParams};

fn main() -> landauer::Result<()> {
    let model = InteractionModel::generic(0.4, 0.9, -0.3)?;
    let dynamics = Dynamics::new(&model)?;
    let env = EnvironmentParams::new(0.8)?;
    let dephased = system_state(&SystemStateParams::new(0.35, 0.0)?);
    let coherent = system_state(&SystemStateParams::new(0.35, 1.0)?);

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>12}",
        "t", "βQ", "ΔS", "𝓑", "ΔS(w=1)"
    );
    let mut spread: f64 = 0.0;
    for t in uniform_times(6.0, 13) {
        let a = dynamics.record(&dephased, &env, t)?;
        let b = dynamics.record(&coherent, &env, t)?;
        spread = spread
            .max((a.beta_q - b.beta_q).abs())
            .max((a.thermo_b - b.thermo_b).abs());
        println!(
            "{t:>6.2} {:>10.5} {:>10.5} {:>10.5} {:>12.5}",
            a.beta_q, a.delta_s, a.thermo_b, b.delta_s
        );
    }
    println!("largest change of βQ or 𝓑 from coherence: {spread:.2e}");
    Ok(())
}
