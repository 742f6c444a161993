//! Kraus operators of the reduced system dynamics and the operator form of
//! the thermodynamic bound.

use landauer::engine::{fluctuation_operators, thermodynamic_bound};
use landauer::{kraus_set, system_state, InteractionModel, SystemStateParams};

fn main() -> landauer::Result<()> {
    let model = InteractionModel::ising(0.8)?;
    let (beta, t) = (1.0, 1.3);
    let set = kraus_set(&model, beta, t)?;
    for k in set.operators() {
        println!("M[ν={}, μ={}] = {:?}", k.nu, k.mu, k.matrix);
    }
    println!(
        "completeness deviation {:.2e}",
        set.completeness_deviation()
    );

    let sys0 = system_state(&SystemStateParams::new(0.3, 0.6)?);
    println!("ρ_S(t) = {:?}", set.apply(&sys0).matrix());

    let dual = -fluctuation_operators(&model, beta, t)?
        .dual_trace(&sys0)
        .ln();
    let direct = thermodynamic_bound(&model, &sys0, beta, t)?;
    println!("𝓑 from operators {dual:.12}, from measurement statistics {direct:.12}");
    Ok(())
}
