//! Initial states, Hamiltonians and single-qubit state functionals.
//!
//! Both qubits carry the free Hamiltonian `σᶻ` in the ordered basis
//! `{|1⟩,|0⟩}`: `|1⟩` is the excited level (energy +1) and `|0⟩` the ground
//! level (energy −1). The system is prepared as
//!
//! ```text
//! ρ_S(0) = [[1 − α², δ], [δ, α²]],   δ = w·α·√(1 − α²)
//! ```
//!
//! and the environment in the Gibbs state of `σᶻ` at inverse temperature β.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, ComplexMatrix, HERMITIAN_TOL, TRACE_TOL};

/// Eigenvalues of a state may dip this far below zero from rounding.
pub const PSD_TOL: f64 = 1e-12;

/// A single-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState(ComplexMatrix);

impl QubitState {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: matrix.dim(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let state = QubitState(matrix);
        let min = state.eigenvalues()[0];
        if min < -PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: min });
        }
        Ok(state)
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 2);
        QubitState(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Population of `|1⟩`.
    pub fn excited_population(&self) -> f64 {
        self.0.get(0, 0).re
    }

    /// Population of `|0⟩`.
    pub fn ground_population(&self) -> f64 {
        self.0.get(1, 1).re
    }

    /// `⟨σᶻ⟩`, the energy under the free Hamiltonian.
    pub fn energy(&self) -> f64 {
        self.excited_population() - self.ground_population()
    }

    /// Ascending eigenvalues from the closed-form 2×2 spectrum.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.0.get(0, 0).re;
        let d = self.0.get(1, 1).re;
        let b = self.0.get(0, 1);
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    pub fn purity(&self) -> f64 {
        self.0.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Parameters `(α², w)` of the initial system state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemStateParams {
    alpha_sq: f64,
    w: f64,
}

impl SystemStateParams {
    pub fn new(alpha_sq: f64, w: f64) -> Result<Self> {
        check_unit_interval("alpha_sq", alpha_sq)?;
        check_unit_interval("w", w)?;
        Ok(Self { alpha_sq, w })
    }

    /// Parameterizes by the coherence `δ` instead of the fraction `w`.
    pub fn from_coherence(alpha_sq: f64, delta: f64) -> Result<Self> {
        check_unit_interval("alpha_sq", alpha_sq)?;
        let max = max_coherence(alpha_sq);
        if delta.is_nan() || delta < 0.0 || delta > max + 1e-12 {
            return Err(Error::param("delta", delta, "must lie in [0, α·√(1 − α²)]"));
        }
        let w = if max > 0.0 {
            (delta / max).min(1.0)
        } else {
            0.0
        };
        Ok(Self { alpha_sq, w })
    }

    /// Ground-state population α².
    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// δ = w·α·√(1 − α²).
    pub fn coherence(&self) -> f64 {
        self.w * max_coherence(self.alpha_sq)
    }

    /// `(2δ, 0, 1 − 2α²)`
    pub fn bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.coherence(),
            y: 0.0,
            z: 1.0 - 2.0 * self.alpha_sq,
        }
    }
}

/// Largest admissible coherence `α·√(1 − α²)` at ground population α².
pub fn max_coherence(alpha_sq: f64) -> f64 {
    (alpha_sq * (1.0 - alpha_sq)).max(0.0).sqrt()
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::param(name, value, "must lie in [0, 1]"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentParams {
    beta: f64,
}

impl EnvironmentParams {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta > 0.0 {
            Ok(Self { beta })
        } else {
            Err(Error::param("beta", beta, "must be finite and > 0"))
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Thermal populations `(p₁, p₀) = (e^{−β}, e^{β}) / 2cosh β`.
    pub fn populations(&self) -> (f64, f64) {
        thermal_populations(self.beta)
    }

    /// Z = 2 cosh β.
    pub fn partition_function(&self) -> f64 {
        2.0 * self.beta.cosh()
    }
}

pub(crate) fn thermal_populations(beta: f64) -> (f64, f64) {
    let excited = 1.0 / (1.0 + (2.0 * beta).exp());
    let ground = 1.0 / (1.0 + (-2.0 * beta).exp());
    (excited, ground)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteractionKind {
    /// `J(σˣ⊗σˣ + σʸ⊗σʸ)`, excitation preserving.
    Xx,
    /// `J σˣ⊗σˣ`
    Ising,
    /// `Σₖ Jₖ σᵏ⊗σᵏ`
    Generic,
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InteractionKind::Xx => "xx",
            InteractionKind::Ising => "ising",
            InteractionKind::Generic => "generic",
        })
    }
}

impl FromStr for InteractionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "xx" => Ok(InteractionKind::Xx),
            "ising" => Ok(InteractionKind::Ising),
            "generic" | "xyz" => Ok(InteractionKind::Generic),
            other => Err(format!(
                "unknown model `{other}` (expected xx, ising or generic)"
            )),
        }
    }
}

/// Couplings `(Jx, Jy, Jz)` of the two-body term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionModel {
    kind: InteractionKind,
    couplings: [f64; 3],
}

impl InteractionModel {
    pub fn xx(j: f64) -> Result<Self> {
        check_coupling("j", j)?;
        Ok(Self {
            kind: InteractionKind::Xx,
            couplings: [j, j, 0.0],
        })
    }

    pub fn ising(j: f64) -> Result<Self> {
        check_coupling("j", j)?;
        Ok(Self {
            kind: InteractionKind::Ising,
            couplings: [j, 0.0, 0.0],
        })
    }

    pub fn generic(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        check_coupling("jx", jx)?;
        check_coupling("jy", jy)?;
        check_coupling("jz", jz)?;
        Ok(Self {
            kind: InteractionKind::Generic,
            couplings: [jx, jy, jz],
        })
    }

    /// Single-coupling constructor for the XX and Ising families; for the
    /// generic family all three couplings are set to `j`.
    pub fn with_coupling(kind: InteractionKind, j: f64) -> Result<Self> {
        match kind {
            InteractionKind::Xx => Self::xx(j),
            InteractionKind::Ising => Self::ising(j),
            InteractionKind::Generic => Self::generic(j, j, j),
        }
    }

    pub fn kind(&self) -> InteractionKind {
        self.kind
    }

    pub fn couplings(&self) -> [f64; 3] {
        self.couplings
    }

    /// Time of the first full population swap, `π/(4J)`; XX only.
    pub fn swap_time(&self) -> Option<f64> {
        match self.kind {
            InteractionKind::Xx if self.couplings[0] != 0.0 => {
                Some(std::f64::consts::FRAC_PI_4 / self.couplings[0].abs())
            }
            _ => None,
        }
    }

    /// Period `π/(2J)` of the XX population dynamics.
    pub fn population_period(&self) -> Option<f64> {
        self.swap_time().map(|t| 2.0 * t)
    }

    pub fn interaction_hamiltonian(&self) -> ComplexMatrix {
        let paulis = [pauli::x(), pauli::y(), pauli::z()];
        let mut h = ComplexMatrix::zeros(4).expect("4x4");
        for (j, p) in self.couplings.iter().zip(&paulis) {
            if *j != 0.0 {
                let term = kron(p, p).expect("2x2 factors");
                h = &h + &term.scale(Complex64::new(*j, 0.0));
            }
        }
        h
    }
}

fn check_coupling(name: &'static str, j: f64) -> Result<()> {
    if j.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, j, "must be finite"))
    }
}

pub fn system_state(params: &SystemStateParams) -> QubitState {
    let a2 = params.alpha_sq();
    let delta = params.coherence();
    QubitState::from_matrix_unchecked(
        ComplexMatrix::from_real(2, &[1.0 - a2, delta, delta, a2]).expect("2x2"),
    )
}

pub fn thermal_state(env: &EnvironmentParams) -> QubitState {
    let (excited, ground) = env.populations();
    QubitState::from_matrix_unchecked(
        ComplexMatrix::from_real_diagonal(&[excited, ground]).expect("2x2"),
    )
}

/// The zero-temperature environment `|0⟩⟨0|`.
pub fn ground_state() -> QubitState {
    QubitState::from_matrix_unchecked(ComplexMatrix::from_real_diagonal(&[0.0, 1.0]).expect("2x2"))
}

/// `σᶻ⊗𝟙 + 𝟙⊗σᶻ`
pub fn free_hamiltonian() -> ComplexMatrix {
    let z = pauli::z();
    let id = pauli::identity();
    &kron(&z, &id).expect("2x2") + &kron(&id, &z).expect("2x2")
}

/// `𝟙⊗σᶻ`, the environment energy observable on the joint space.
pub fn environment_energy_observable() -> ComplexMatrix {
    kron(&pauli::identity(), &pauli::z()).expect("2x2")
}

pub fn total_hamiltonian(model: &InteractionModel) -> ComplexMatrix {
    &free_hamiltonian() + &model.interaction_hamiltonian()
}

/// −Σ λ ln λ in nats.
pub fn von_neumann_entropy(rho: &QubitState) -> Result<f64> {
    let mut entropy = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < -PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: lambda });
        }
        entropy -= xlogx(lambda.max(0.0));
    }
    Ok(entropy)
}

/// `x ln x` with `0 ln 0 = 0`.
pub(crate) fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `2(1 − Tr ρ²)`
pub fn linear_entropy(rho: &QubitState) -> f64 {
    2.0 * (1.0 - rho.purity())
}

/// `ρ = ½(𝟙 + σ·v)`
pub fn bloch_vector(rho: &QubitState) -> BlochVector {
    let m = rho.matrix();
    let off = m.get(1, 0);
    BlochVector {
        x: 2.0 * off.re,
        y: 2.0 * off.im,
        z: m.get(0, 0).re - m.get(1, 1).re,
    }
}

pub fn from_bloch(v: BlochVector) -> Result<QubitState> {
    let norm = v.norm();
    if norm.is_nan() || norm > 1.0 + 1e-12 {
        return Err(Error::BlochOutOfRange { norm });
    }
    let half = 0.5;
    let data = vec![
        Complex64::new(half * (1.0 + v.z), 0.0),
        Complex64::new(half * v.x, -half * v.y),
        Complex64::new(half * v.x, half * v.y),
        Complex64::new(half * (1.0 - v.z), 0.0),
    ];
    Ok(QubitState::from_matrix_unchecked(ComplexMatrix::new(
        2, data,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn state(a2: f64, w: f64) -> QubitState {
        system_state(&SystemStateParams::new(a2, w).unwrap())
    }

    #[test]
    fn pure_excited_ignores_w() {
        let rho = state(0.0, 0.7);
        assert_eq!(
            rho.matrix(),
            &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn equal_superposition_is_pure() {
        let rho = state(0.5, 1.0);
        assert_eq!(
            rho.matrix(),
            &ComplexMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
        );
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!((bloch_vector(&rho).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dephased_state_is_diagonal() {
        let rho = state(0.6, 0.0);
        assert!(
            rho.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.4, 0.6]).unwrap())
                < 1e-15
        );
    }

    #[test]
    fn out_of_range_params() {
        assert!(SystemStateParams::new(1.2, 0.0).is_err());
        assert!(SystemStateParams::new(0.5, -0.1).is_err());
        assert!(SystemStateParams::new(f64::NAN, 0.0).is_err());
        assert!(SystemStateParams::from_coherence(0.5, 0.6).is_err());
        assert!(EnvironmentParams::new(0.0).is_err());
        assert!(EnvironmentParams::new(-1.0).is_err());
        assert!(EnvironmentParams::new(f64::INFINITY).is_err());
    }

    #[test]
    fn from_coherence_matches_w() {
        let p = SystemStateParams::from_coherence(0.9, 0.1).unwrap();
        assert!((p.coherence() - 0.1).abs() < 1e-15);
        let p = SystemStateParams::from_coherence(0.0, 0.0).unwrap();
        assert_eq!(p.w(), 0.0);
    }

    #[test]
    fn thermal_limits() {
        let cold = thermal_state(&EnvironmentParams::new(1e3).unwrap());
        assert!(cold.matrix().max_abs_diff(ground_state().matrix()) < 1e-300);
        let hot = thermal_state(&EnvironmentParams::new(1e-12).unwrap());
        let half = ComplexMatrix::from_real_diagonal(&[0.5, 0.5]).unwrap();
        assert!(hot.matrix().max_abs_diff(&half) < 1e-11);
    }

    #[test]
    fn thermal_at_beta_one() {
        let rho = thermal_state(&EnvironmentParams::new(1.0).unwrap());
        let z = 2.0 * 1f64.cosh();
        assert!((rho.excited_population() - (-1f64).exp() / z).abs() < 1e-15);
        assert!((rho.excited_population() - 0.11920).abs() < 1e-5);
        assert!((rho.ground_population() - 0.88080).abs() < 1e-5);
    }

    #[test]
    fn free_part_of_uncoupled_xx() {
        let h = total_hamiltonian(&InteractionModel::xx(0.0).unwrap());
        assert_eq!(
            h,
            ComplexMatrix::from_real_diagonal(&[2.0, 0.0, 0.0, -2.0]).unwrap()
        );
    }

    #[test]
    fn xx_preserves_excitations_ising_does_not() {
        let free = free_hamiltonian();
        let xx = InteractionModel::xx(1.0).unwrap().interaction_hamiltonian();
        assert_eq!(xx.commutator(&free).max_abs(), 0.0);

        let ising = InteractionModel::ising(1.0)
            .unwrap()
            .interaction_hamiltonian();
        assert!(ising.commutator(&free).max_abs() > 1.0);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        for model in [
            InteractionModel::xx(0.3).unwrap(),
            InteractionModel::ising(2.0).unwrap(),
            InteractionModel::generic(0.2, -0.4, 0.9).unwrap(),
        ] {
            assert_eq!(total_hamiltonian(&model).hermitian_deviation(), 0.0);
        }
    }

    #[test]
    fn entropy_values() {
        assert!(von_neumann_entropy(&state(0.5, 1.0)).unwrap().abs() < 1e-15);
        let mixed = from_bloch(BlochVector {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        })
        .unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 2f64.ln()).abs() < 1e-15);
        let th = thermal_state(&EnvironmentParams::new(1.0).unwrap());
        let s = von_neumann_entropy(&th).unwrap();
        // ln 2 − (β tanh β − ln cosh β) at β = 1
        let expected = 2f64.ln() - (1f64.tanh() - 1f64.cosh().ln());
        assert!((s - expected).abs() < 1e-14);
        assert!((s - 0.36532).abs() < 1e-4);
    }

    #[test]
    fn entropy_rejects_negative_eigenvalue() {
        let bad = QubitState::from_matrix_unchecked(
            ComplexMatrix::from_real_diagonal(&[1.1, -0.1]).unwrap(),
        );
        assert!(matches!(
            von_neumann_entropy(&bad),
            Err(Error::NegativeEigenvalue { .. })
        ));
        assert!(QubitState::new(bad.into_matrix()).is_err());
    }

    #[test]
    fn linear_entropy_values() {
        assert!(linear_entropy(&state(0.0, 0.0)).abs() < 1e-15);
        let mixed = from_bloch(BlochVector {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        })
        .unwrap();
        assert!((linear_entropy(&mixed) - 1.0).abs() < 1e-15);
        let (a2, w) = (0.3, 0.4);
        let p = SystemStateParams::new(a2, w).unwrap();
        let d = p.coherence();
        let expected = 2.0 * (1.0 - (1.0 - a2) * (1.0 - a2) - a2 * a2 - 2.0 * d * d);
        assert!((linear_entropy(&system_state(&p)) - expected).abs() < 1e-15);
    }

    #[test]
    fn bloch_examples() {
        let mixed = from_bloch(BlochVector {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        })
        .unwrap();
        assert_eq!(
            bloch_vector(&mixed),
            BlochVector {
                x: 0.0,
                y: 0.0,
                z: 0.0
            }
        );
        assert_eq!(
            bloch_vector(&state(0.0, 0.0)),
            BlochVector {
                x: 0.0,
                y: 0.0,
                z: 1.0
            }
        );
        let v = bloch_vector(&state(0.6, 0.5));
        let delta = 0.5 * 0.6f64.sqrt() * 0.4f64.sqrt();
        assert!((v.x - 2.0 * delta).abs() < 1e-15);
        assert!((delta - 0.24495).abs() < 1e-5);
        assert!((v.x - 0.48990).abs() < 1e-5);
        assert_eq!(v.y, 0.0);
        assert!((v.z + 0.2).abs() < 1e-15);
        assert!(from_bloch(BlochVector {
            x: 0.8,
            y: 0.0,
            z: 0.8
        })
        .is_err());
    }

    #[test]
    fn swap_time_only_for_xx() {
        let xx = InteractionModel::xx(0.5).unwrap();
        assert!((xx.swap_time().unwrap() - std::f64::consts::PI / 2.0).abs() < 1e-15);
        assert!(InteractionModel::ising(1.0).unwrap().swap_time().is_none());
        assert!(InteractionModel::xx(0.0).unwrap().swap_time().is_none());
    }

    #[test]
    fn kind_parses() {
        assert_eq!(
            "XX".parse::<InteractionKind>().unwrap(),
            InteractionKind::Xx
        );
        assert_eq!(
            "ising".parse::<InteractionKind>().unwrap(),
            InteractionKind::Ising
        );
        assert!("heisenberg".parse::<InteractionKind>().is_err());
    }

    #[test]
    fn system_states_are_psd_on_dense_grid() {
        let n = 101;
        for i in 0..n {
            for j in 0..n {
                let a2 = i as f64 / (n - 1) as f64;
                let w = j as f64 / (n - 1) as f64;
                let p = SystemStateParams::new(a2, w).unwrap();
                let rho = system_state(&p);
                assert!(rho.eigenvalues()[0] >= -PSD_TOL, "a2={a2} w={w}");
                assert!(QubitState::new(rho.clone().into_matrix()).is_ok());
                // det ρ = α²(1 − α²) − δ² ≥ 0, zero iff w = 1
                let det = a2 * (1.0 - a2) - p.coherence().powi(2);
                assert!(det >= -1e-15);
                if w == 1.0 {
                    assert!(det.abs() < 1e-15);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bloch_round_trip(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
            let v = BlochVector { x, y, z };
            prop_assume!(v.norm() <= 1.0);
            let back = bloch_vector(&from_bloch(v).unwrap());
            prop_assert!((back.x - x).abs() <= 1e-14);
            prop_assert!((back.y - y).abs() <= 1e-14);
            prop_assert!((back.z - z).abs() <= 1e-14);
        }

        #[test]
        fn system_bloch_matches_params(a2 in 0.0f64..=1.0, w in 0.0f64..=1.0) {
            let p = SystemStateParams::new(a2, w).unwrap();
            let v = bloch_vector(&system_state(&p));
            let expected = p.bloch();
            prop_assert!((v.x - expected.x).abs() <= 1e-14);
            prop_assert_eq!(v.y, 0.0);
            prop_assert!((v.z - expected.z).abs() <= 1e-14);
            prop_assert!(v.norm() <= 1.0 + 1e-12);
        }
    }
}
