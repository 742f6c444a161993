//! Exact unitary dynamics of the system–environment pair and the three
//! quantities compared throughout the crate:
//!
//! * the dissipated heat `β⟨Q⟩ = β·Tr[H_E(ρ_E(t) − ρ_E(0))]`,
//! * the entropic bound `ΔS = S(ρ_S(0)) − S(ρ_S(t))`,
//! * the thermodynamic bound `𝓑 = −ln⟨e^{−βQ}⟩`, where the average runs over
//!   two-point energy measurements of the environment:
//!
//! ```text
//! ⟨e^{−βQ}⟩ = Σ_{ν,μ} (e^{−βE_ν}/Z) · Tr[⟨ν|U|μ⟩ ρ_S(0) ⟨μ|U†|ν⟩]
//! ```
//!
//! Both bounds are lower bounds on `β⟨Q⟩`; the second one by Jensen's
//! inequality applied to the same measurement statistics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, kron, partial_trace_unchecked, pauli, ComplexMatrix, HermitianEig, Subsystem,
};
use crate::model::{
    thermal_populations, thermal_state, total_hamiltonian, von_neumann_entropy, EnvironmentParams,
    InteractionModel, QubitState,
};

/// Evolved-state eigenvalues in `[−HARD_PSD_TOL, −PSD_TOL)` are clamped.
pub const HARD_PSD_TOL: f64 = 1e-9;
pub const KRAUS_TOL: f64 = 1e-12;

/// A 4×4 density matrix of the system ⊗ environment pair.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState(ComplexMatrix);

impl JointState {
    pub fn product(sys: &QubitState, env: &QubitState) -> Self {
        JointState(kron(sys.matrix(), env.matrix()).expect("2x2 factors"))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn reduced(&self, keep: Subsystem) -> QubitState {
        QubitState::from_matrix_unchecked(partial_trace_unchecked(&self.0, keep))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eig(&self.0)?.eigenvalues[0])
    }

    /// Clamps eigenvalues in `[−1e-9, 0)` to zero and renormalizes; anything
    /// further below zero is an error.
    fn into_psd(self) -> Result<Self> {
        let eig = hermitian_eig(&self.0)?;
        let min = eig.eigenvalues[0];
        if min >= -crate::model::PSD_TOL {
            return Ok(self);
        }
        if min < -HARD_PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: min });
        }
        let clamped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        let norm: f64 = clamped.iter().sum();
        let fixed = HermitianEig {
            eigenvalues: clamped.iter().map(|l| l / norm).collect(),
            eigenvectors: eig.eigenvectors,
        };
        Ok(JointState(fixed.reconstruct()))
    }
}

/// `(β⟨Q⟩, ΔS, 𝓑)` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRecord {
    pub t: f64,
    pub beta_q: f64,
    pub delta_s: f64,
    pub thermo_b: f64,
}

impl BoundsRecord {
    /// ⟨Q⟩ without the β factor.
    pub fn heat(&self, beta: f64) -> f64 {
        self.beta_q / beta
    }
}

/// Total Hamiltonian of a model, diagonalized once so that propagators at
/// many times are cheap.
#[derive(Debug, Clone)]
pub struct Dynamics {
    model: InteractionModel,
    spectrum: HermitianEig,
}

impl Dynamics {
    pub fn new(model: &InteractionModel) -> Result<Self> {
        Ok(Self {
            model: *model,
            spectrum: hermitian_eig(&total_hamiltonian(model))?,
        })
    }

    pub fn model(&self) -> &InteractionModel {
        &self.model
    }

    pub fn energies(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// `exp(−iHt)`; exactly the identity at `t = 0`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        if t == 0.0 {
            return ComplexMatrix::identity(4).expect("4x4");
        }
        self.spectrum.propagator(t)
    }

    pub fn record(
        &self,
        sys0: &QubitState,
        env: &EnvironmentParams,
        t: f64,
    ) -> Result<BoundsRecord> {
        bounds_from_propagator(&self.propagator(t), sys0, env, t)
    }

    pub fn series(
        &self,
        sys0: &QubitState,
        env: &EnvironmentParams,
        times: &[f64],
    ) -> Result<Vec<BoundsRecord>> {
        times.iter().map(|&t| self.record(sys0, env, t)).collect()
    }
}

/// Evaluates all three quantities for a given joint propagator.
pub fn bounds_from_propagator(
    u: &ComplexMatrix,
    sys0: &QubitState,
    env: &EnvironmentParams,
    t: f64,
) -> Result<BoundsRecord> {
    let env0 = thermal_state(env);
    let joint = JointState(u.conjugate(JointState::product(sys0, &env0).matrix()));
    let beta = env.beta();
    Ok(BoundsRecord {
        t,
        beta_q: dissipated_heat(&env0, &joint, beta),
        delta_s: entropic_bound(sys0, &joint)?,
        thermo_b: thermodynamic_bound_from_propagator(u, sys0, beta)?,
    })
}

/// `ρ(t) = U (ρ_S ⊗ ρ_E) U†`
pub fn evolve(
    model: &InteractionModel,
    sys: &QubitState,
    env: &QubitState,
    t: f64,
) -> Result<JointState> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::param("t", t, "must be finite and ≥ 0"));
    }
    let u = Dynamics::new(model)?.propagator(t);
    JointState(u.conjugate(JointState::product(sys, env).matrix())).into_psd()
}

/// `β⟨Q⟩` alone, skipping both bounds.
pub fn heat_from_propagator(u: &ComplexMatrix, sys0: &QubitState, env: &EnvironmentParams) -> f64 {
    let env0 = thermal_state(env);
    let joint = JointState(u.conjugate(JointState::product(sys0, &env0).matrix()));
    dissipated_heat(&env0, &joint, env.beta())
}

/// `β·Tr[σᶻ(ρ_E(t) − ρ_E(0))]`
pub fn dissipated_heat(env0: &QubitState, rho_t: &JointState, beta: f64) -> f64 {
    let env_t = rho_t.reduced(Subsystem::Environment);
    beta * (env_t.energy() - env0.energy())
}

/// `S(ρ_S(0)) − S(ρ_S(t))` in nats.
pub fn entropic_bound(sys0: &QubitState, rho_t: &JointState) -> Result<f64> {
    let sys_t = rho_t.reduced(Subsystem::System);
    Ok(von_neumann_entropy(sys0)? - von_neumann_entropy(&sys_t)?)
}

pub fn thermodynamic_bound(
    model: &InteractionModel,
    sys0: &QubitState,
    beta: f64,
    t: f64,
) -> Result<f64> {
    EnvironmentParams::new(beta)?;
    let u = Dynamics::new(model)?.propagator(t);
    thermodynamic_bound_from_propagator(&u, sys0, beta)
}

/// `⟨ν|U|μ⟩` as an operator on the system.
pub fn environment_block(u: &ComplexMatrix, nu: usize, mu: usize) -> ComplexMatrix {
    let mut block = ComplexMatrix::zeros(2).expect("2x2");
    for s in 0..2 {
        for s2 in 0..2 {
            block.set(s, s2, u.get(2 * s + nu, 2 * s2 + mu));
        }
    }
    block
}

/// Probability of finding the environment in `ν` after starting it in `μ`.
fn transition_probability(u: &ComplexMatrix, sys0: &QubitState, nu: usize, mu: usize) -> f64 {
    let rho = sys0.matrix();
    let mut p = 0.0;
    for s in 0..2 {
        let mut amp = [Complex64::new(0.0, 0.0); 2];
        // (A ρ)[s, ·]
        for (k, slot) in amp.iter_mut().enumerate() {
            for s2 in 0..2 {
                *slot += u.get(2 * s + nu, 2 * s2 + mu) * rho.get(s2, k);
            }
        }
        // (A ρ A†)[s, s]
        for (k, a) in amp.iter().enumerate() {
            p += (a * u.get(2 * s + nu, 2 * k + mu).conj()).re;
        }
    }
    p
}

/// `⟨e^{−βQ}⟩` over the two-point measurement statistics of the environment.
pub fn fluctuation_average(u: &ComplexMatrix, sys0: &QubitState, beta: f64) -> f64 {
    let (p_excited, p_ground) = thermal_populations(beta);
    let weights = [p_excited, p_ground];
    let mut sum = 0.0;
    for (nu, w_nu) in weights.iter().enumerate() {
        for mu in 0..2 {
            sum += w_nu * transition_probability(u, sys0, nu, mu);
        }
    }
    sum
}

pub fn thermodynamic_bound_from_propagator(
    u: &ComplexMatrix,
    sys0: &QubitState,
    beta: f64,
) -> Result<f64> {
    let avg = fluctuation_average(u, sys0, beta);
    if avg > 0.0 && avg.is_finite() {
        Ok(-avg.ln())
    } else {
        Err(Error::NonPositiveLogArgument(avg))
    }
}

/// Kraus operators `M_{νμ} = √p_μ ⟨ν|U|μ⟩` of the reduced system dynamics.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<KrausOperator>,
}

#[derive(Debug, Clone)]
pub struct KrausOperator {
    /// Final environment level (0 → `|1⟩`, 1 → `|0⟩`).
    pub nu: usize,
    /// Initial environment level.
    pub mu: usize,
    pub matrix: ComplexMatrix,
}

impl KrausSet {
    pub fn operators(&self) -> &[KrausOperator] {
        &self.operators
    }

    /// `Σ M†M`
    pub fn completeness(&self) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(2).expect("2x2"), |acc, k| {
                &acc + &(&k.matrix.adjoint() * &k.matrix)
            })
    }

    pub fn completeness_deviation(&self) -> f64 {
        self.completeness().max_abs_diff(&pauli::identity())
    }

    /// `Σ M ρ M†`
    pub fn apply(&self, rho: &QubitState) -> QubitState {
        let out = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(2).expect("2x2"), |acc, k| {
                &acc + &k.matrix.conjugate(rho.matrix())
            });
        QubitState::from_matrix_unchecked(out)
    }

    /// `Tr[Σ K† ρ K]`
    pub fn dual_trace(&self, rho: &QubitState) -> f64 {
        self.operators
            .iter()
            .map(|k| k.matrix.adjoint().conjugate(rho.matrix()).trace().re)
            .sum()
    }
}

pub fn kraus_set(model: &InteractionModel, beta: f64, t: f64) -> Result<KrausSet> {
    let env = EnvironmentParams::new(beta)?;
    let u = Dynamics::new(model)?.propagator(t);
    let set = kraus_set_from_propagator(&u, &env);
    let deviation = set.completeness_deviation();
    if deviation > KRAUS_TOL {
        return Err(Error::KrausCompleteness { deviation });
    }
    Ok(set)
}

pub fn kraus_set_from_propagator(u: &ComplexMatrix, env: &EnvironmentParams) -> KrausSet {
    let (p_excited, p_ground) = env.populations();
    let weights = [p_excited, p_ground];
    let mut operators = Vec::with_capacity(4);
    for nu in 0..2 {
        for (mu, p_mu) in weights.iter().enumerate() {
            operators.push(KrausOperator {
                nu,
                mu,
                matrix: environment_block(u, nu, mu).scale(Complex64::new(p_mu.sqrt(), 0.0)),
            });
        }
    }
    KrausSet { operators }
}

/// Operators `K_{νμ} = √(e^{−βE_ν}/Z) ⟨μ|U†|ν⟩` for which the thermodynamic
/// bound reads `𝓑 = −ln Tr[Σ K† ρ_S(0) K]`.
pub fn fluctuation_operators(model: &InteractionModel, beta: f64, t: f64) -> Result<KrausSet> {
    let env = EnvironmentParams::new(beta)?;
    let u = Dynamics::new(model)?.propagator(t);
    let (p_excited, p_ground) = env.populations();
    let weights = [p_excited, p_ground];
    let mut operators = Vec::with_capacity(4);
    for (nu, q_nu) in weights.iter().enumerate() {
        for mu in 0..2 {
            operators.push(KrausOperator {
                nu,
                mu,
                matrix: environment_block(&u, nu, mu)
                    .adjoint()
                    .scale(Complex64::new(q_nu.sqrt(), 0.0)),
            });
        }
    }
    Ok(KrausSet { operators })
}

/// `steps` uniformly spaced times covering `[0, t_max]`, both ends included.
pub fn uniform_times(t_max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect(),
    }
}
