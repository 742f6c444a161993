//! Closed-form values at the XX swap time next to the time-domain values.

use landauer::analysis::max_point;
use landauer::{system_state, Dynamics, EnvironmentParams, InteractionModel, SystemStateParams};

fn main() -> landauer::Result<()> {
    let model = InteractionModel::xx(1.0)?;
    let dynamics = Dynamics::new(&model)?;
    let t = model.swap_time().unwrap();

    println!(
        "{:>5} {:>5} {:>5} {:>10} {:>10} {:>10} {:>10}",
        "β", "α²", "w", "βQ_max", "ΔS_max", "𝓑_max", "|diff|"
    );
    for beta in [0.1, 1.0, 10.0] {
        for (alpha_sq, w) in [(0.0, 0.0), (0.3, 1.0), (0.5, 0.0), (0.8, 0.5)] {
            let params = SystemStateParams::new(alpha_sq, w)?;
            let closed = max_point(&params, beta)?;
            let timed =
                dynamics.record(&system_state(&params), &EnvironmentParams::new(beta)?, t)?;
            let diff = (closed.b_max - timed.thermo_b)
                .abs()
                .max((closed.ds_max - timed.delta_s).abs());
            println!(
                "{beta:>5} {alpha_sq:>5} {w:>5} {:>10.5} {:>10.5} {:>10.5} {diff:>10.1e}",
                closed.beta_q_max, closed.ds_max, closed.b_max
            );
        }
    }
    Ok(())
}
