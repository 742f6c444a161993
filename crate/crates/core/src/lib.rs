//! Exact simulation of a qubit coupled to a thermal qubit, comparing the
//! dissipated heat `β⟨Q⟩` with two lower bounds on it: the entropic
//! (Landauer) bound `ΔS` and the thermodynamic bound `𝓑 = −ln⟨e^{−βQ}⟩`.
//!
//! * [`linalg`]: 2×2 / 4×4 complex matrices, Jacobi eigensolver, partial trace.
//! * [`model`]: initial states, interaction Hamiltonians, entropies.
//! * [`engine`]: unitary evolution, the three quantities, Kraus operators.
//! * [`analysis`]: closed-form maxima, thresholds, crossover curve, region
//!   maps and coupling averages.
//! * [`cli`]: the `landauer` command-line front end.
//!
//! ```
//! use landauer::{Dynamics, EnvironmentParams, InteractionModel, SystemStateParams, system_state};
//!
//! let model = InteractionModel::xx(1.0).unwrap();
//! let sys0 = system_state(&SystemStateParams::new(0.0, 0.0).unwrap());
//! let env = EnvironmentParams::new(1.0).unwrap();
//! let r = Dynamics::new(&model).unwrap().record(&sys0, &env, model.swap_time().unwrap()).unwrap();
//! assert!(r.delta_s <= r.beta_q && r.thermo_b <= r.beta_q);
//! ```

pub mod analysis;
pub mod cli;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod model;

pub use analysis::{
    averaged_bounds, b_max, beta_q_max, boundary_curve, clausius_threshold, ds_max, max_point,
    AveragedRecord, BoundaryCurve, CouplingEnsemble, MaxPointResult, RegionLabel, StatePoint,
};
pub use engine::{
    evolve, kraus_set, thermodynamic_bound, BoundsRecord, Dynamics, JointState, KrausSet,
};
pub use error::{Error, Result};
pub use linalg::{hermitian_eig, kron, partial_trace, ComplexMatrix, Subsystem};
pub use model::{
    system_state, thermal_state, von_neumann_entropy, EnvironmentParams, InteractionKind,
    InteractionModel, QubitState, SystemStateParams,
};
