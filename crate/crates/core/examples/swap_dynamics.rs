//! Heat and both bounds over one period of the XX model, for a pure excited
//! system and for a mixed state with and without coherence.

use landauer::engine::uniform_times;
use landauer::{system_state, Dynamics, EnvironmentParams, InteractionModel, SystemStateParams};

fn main() -> landauer::Result<()> {
    let model = InteractionModel::xx(1.0)?;
    let dynamics = Dynamics::new(&model)?;
    let env = EnvironmentParams::new(1.0)?;
    let times = uniform_times(model.population_period().unwrap(), 9);

    for (alpha_sq, w) in [(0.0, 0.0), (0.6, 0.0), (0.6, 0.5)] {
        println!("α² = {alpha_sq}, w = {w}");
        println!("{:>8} {:>10} {:>10} {:>10}", "t", "βQ", "ΔS", "𝓑");
        let sys0 = system_state(&SystemStateParams::new(alpha_sq, w)?);
        for r in dynamics.series(&sys0, &env, &times)? {
            println!(
                "{:>8.4} {:>10.5} {:>10.5} {:>10.5}",
                r.t, r.beta_q, r.delta_s, r.thermo_b
            );
        }
        println!();
    }
    Ok(())
}
