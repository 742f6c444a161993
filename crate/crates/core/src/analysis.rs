//! Closed-form values at the XX heat maximum, Clausius thresholds, the
//! crossover boundary between the two bounds, region classification and
//! coupling-averaged experiments.
//!
//! At the XX swap time `t = π/(4J)` the interaction acts as a swap, which
//! gives, with Bloch vector `v = (2δ, 0, 1 − 2α²)`:
//!
//! ```text
//! β⟨Q⟩_max = β (v_z + tanh β)
//! 𝓑_max    = −ln[1 − v_z tanh β]
//! ΔS_max   = ΔS_β − ΔS_v
//! ΔS_β     = β tanh β + ln √(1 − tanh²β)
//! ΔS_v     = ln √(1 − |v|²) + |v| artanh |v|
//! ```

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{bounds_from_propagator, heat_from_propagator, Dynamics};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::{
    max_coherence, system_state, xlogx, EnvironmentParams, InteractionKind, InteractionModel,
    SystemStateParams,
};

/// Tolerance separating a tie from a strict ordering, and a sign from zero.
pub const TIE_TOL: f64 = 1e-9;
/// Boundary points are refined until `|𝓑_max − ΔS_max|` drops below this.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Uniform δ-subintervals scanned for a sign change before bisecting.
pub const BRACKET_INTERVALS: usize = 64;

/// `1 − tanh β` without cancellation.
fn one_minus_tanh(beta: f64) -> f64 {
    2.0 / (1.0 + (2.0 * beta).exp())
}

/// `ln cosh β` without overflow.
fn ln_cosh(beta: f64) -> f64 {
    let b = beta.abs();
    b + (-2.0 * b).exp().ln_1p() - std::f64::consts::LN_2
}

fn check_beta(beta: f64) -> Result<()> {
    EnvironmentParams::new(beta).map(|_| ())
}

/// `𝓑_max = −ln[1 − v_z tanh β]`
pub fn b_max(v_z: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if v_z.is_nan() || v_z.abs() > 1.0 + 1e-12 {
        return Err(Error::param("v_z", v_z, "must satisfy |v_z| ≤ 1"));
    }
    let v_z = v_z.clamp(-1.0, 1.0);
    // 1 − v_z tanh β = (1 − v_z) + v_z (1 − tanh β)
    let arg = (1.0 - v_z) + v_z * one_minus_tanh(beta);
    if arg > 0.0 {
        Ok(-arg.ln())
    } else {
        Err(Error::NonPositiveLogArgument(arg))
    }
}

/// `β⟨Q⟩_max = β (v_z + tanh β)`
pub fn beta_q_max(v_z: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(beta * (v_z + beta.tanh()))
}

/// Environment term `ΔS_β = β tanh β − ln cosh β`, rising from 0 to ln 2.
pub fn ds_beta(beta: f64) -> f64 {
    if beta <= 1.0 {
        beta * beta.tanh() - ln_cosh(beta)
    } else {
        // ln 2 − ln(1 + e^{−2β}) − β(1 − tanh β), free of the β − β cancellation
        std::f64::consts::LN_2 - (-2.0 * beta).exp().ln_1p() - beta * one_minus_tanh(beta)
    }
}

/// State term `ΔS_v = ½[(1+|v|) ln(1+|v|) + (1−|v|) ln(1−|v|)]`, from 0 to ln 2.
pub fn ds_v(v_norm: f64) -> f64 {
    let v = v_norm.clamp(0.0, 1.0);
    0.5 * (xlogx(1.0 + v) + xlogx(1.0 - v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropicMaximum {
    pub ds_max: f64,
    pub ds_beta: f64,
    pub ds_v: f64,
}

pub fn ds_max(v_norm: f64, beta: f64) -> Result<EntropicMaximum> {
    check_beta(beta)?;
    if !(0.0..=1.0 + 1e-12).contains(&v_norm) {
        return Err(Error::param("v_norm", v_norm, "must lie in [0, 1]"));
    }
    let ds_beta = ds_beta(beta);
    let ds_v = ds_v(v_norm);
    Ok(EntropicMaximum {
        ds_max: ds_beta - ds_v,
        ds_beta,
        ds_v,
    })
}

/// All closed-form quantities at the XX swap time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPointResult {
    pub b_max: f64,
    pub ds_max: f64,
    pub ds_beta: f64,
    pub ds_v: f64,
    pub beta_q_max: f64,
}

pub fn max_point(params: &SystemStateParams, beta: f64) -> Result<MaxPointResult> {
    let v = params.bloch();
    let entropic = ds_max(v.norm().min(1.0), beta)?;
    Ok(MaxPointResult {
        b_max: b_max(v.z, beta)?,
        ds_max: entropic.ds_max,
        ds_beta: entropic.ds_beta,
        ds_v: entropic.ds_v,
        beta_q_max: beta_q_max(v.z, beta)?,
    })
}

/// Largest ground population α² for which the heat stays non-negative.
///
/// XX (at the swap time): `½(1 + tanh β)`. Ising (averaged over
/// `J ∈ (0, J_max)` at long times): `½[1 + tanh β (J_max/arctan(J_max/2) − 1)]`,
/// capped at 1.
pub fn clausius_threshold(kind: InteractionKind, beta: f64, j_max: Option<f64>) -> Result<f64> {
    check_beta(beta)?;
    match kind {
        InteractionKind::Xx => Ok(0.5 * (1.0 + beta.tanh())),
        InteractionKind::Ising => {
            let j_max = j_max.ok_or(Error::MissingParameter("j_max"))?;
            if !(j_max.is_finite() && j_max > 0.0) {
                return Err(Error::param("j_max", j_max, "must be finite and > 0"));
            }
            let gain = j_max / (0.5 * j_max).atan() - 1.0;
            Ok((0.5 * (1.0 + beta.tanh() * gain)).min(1.0))
        }
        InteractionKind::Generic => Err(Error::NoClosedForm(kind)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePoint {
    pub alpha_sq: f64,
    pub delta: f64,
}

impl StatePoint {
    pub fn params(&self) -> Result<SystemStateParams> {
        SystemStateParams::from_coherence(self.alpha_sq, self.delta)
    }

    pub fn bloch_norm(&self) -> f64 {
        let z = 1.0 - 2.0 * self.alpha_sq;
        (4.0 * self.delta * self.delta + z * z).sqrt().min(1.0)
    }

    /// `2(1 − Tr ρ²)` of the corresponding system state.
    pub fn linear_entropy(&self) -> f64 {
        1.0 - self.bloch_norm().powi(2)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundaryCurve {
    pub points: Vec<StatePoint>,
    /// Grid values of α² with no crossover in `[0, α√(1−α²)]`.
    pub no_root: Vec<f64>,
}

/// Solves `𝓑_max(α², δ) = ΔS_max(α², δ)` for δ at each α² of the grid.
pub fn boundary_curve(beta: f64, alpha_sq_grid: &[f64]) -> Result<BoundaryCurve> {
    check_beta(beta)?;
    let mut curve = BoundaryCurve::default();
    for &alpha_sq in alpha_sq_grid {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::param("alpha_sq", alpha_sq, "must lie in [0, 1]"));
        }
        match boundary_delta(beta, alpha_sq)? {
            Some(delta) => curve.points.push(StatePoint { alpha_sq, delta }),
            None => curve.no_root.push(alpha_sq),
        }
    }
    Ok(curve)
}

/// `𝓑_max − ΔS_max` along the coherence axis at fixed α².
pub fn bound_gap(beta: f64, alpha_sq: f64, delta: f64) -> Result<f64> {
    let point = StatePoint { alpha_sq, delta };
    let v_z = 1.0 - 2.0 * alpha_sq;
    Ok(b_max(v_z, beta)? - ds_max(point.bloch_norm(), beta)?.ds_max)
}

fn boundary_delta(beta: f64, alpha_sq: f64) -> Result<Option<f64>> {
    let d_max = max_coherence(alpha_sq);
    let f = |delta: f64| bound_gap(beta, alpha_sq, delta);
    let mut lo = 0.0;
    let mut f_lo = f(lo)?;
    if f_lo.abs() < BOUNDARY_TOL {
        return Ok(Some(lo));
    }
    if d_max == 0.0 {
        return Ok(None);
    }
    for k in 1..=BRACKET_INTERVALS {
        let hi = d_max * k as f64 / BRACKET_INTERVALS as f64;
        let f_hi = f(hi)?;
        if f_hi.abs() < BOUNDARY_TOL {
            return Ok(Some(hi));
        }
        if f_lo.signum() != f_hi.signum() {
            return bisect(f, lo, hi, f_lo);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(None)
}

fn bisect(
    f: impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
) -> Result<Option<f64>> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.abs() < BOUNDARY_TOL {
            return Ok(Some(mid));
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// `β⟨Q⟩ < 0`: Landauer's setting does not apply.
    NegativeHeat,
    /// Heat is non-negative but both bounds are negative, so neither says
    /// more than Clausius' statement.
    BothBoundsNegative,
    ThermoTighter,
    EntropicTighter,
    Tie,
}

impl RegionLabel {
    pub fn from_values(beta_q: f64, delta_s: f64, thermo_b: f64) -> Self {
        if beta_q < -TIE_TOL {
            RegionLabel::NegativeHeat
        } else if thermo_b < -TIE_TOL && delta_s < -TIE_TOL {
            RegionLabel::BothBoundsNegative
        } else if (thermo_b - delta_s).abs() <= TIE_TOL {
            RegionLabel::Tie
        } else if thermo_b > delta_s {
            RegionLabel::ThermoTighter
        } else {
            RegionLabel::EntropicTighter
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::NegativeHeat => "NegativeHeat",
            RegionLabel::BothBoundsNegative => "BothBoundsNegative",
            RegionLabel::ThermoTighter => "ThermoTighter",
            RegionLabel::EntropicTighter => "EntropicTighter",
            RegionLabel::Tie => "Tie",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            RegionLabel::NegativeHeat,
            RegionLabel::BothBoundsNegative,
            RegionLabel::ThermoTighter,
            RegionLabel::EntropicTighter,
            RegionLabel::Tie,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
        .ok_or_else(|| format!("unknown region label `{s}`"))
    }
}

/// Label of an initial state from the XX closed forms at the swap time.
pub fn classify_max_point(alpha_sq: f64, w: f64, beta: f64) -> Result<RegionLabel> {
    let m = max_point(&SystemStateParams::new(alpha_sq, w)?, beta)?;
    Ok(RegionLabel::from_values(m.beta_q_max, m.ds_max, m.b_max))
}

/// Label of an initial state from coupling-averaged values.
#[allow(clippy::too_many_arguments)]
pub fn classify_averaged(
    kind: InteractionKind,
    alpha_sq: f64,
    w: f64,
    beta: f64,
    j_max: f64,
    n_samples: usize,
    t_eval: f64,
    seed: u64,
) -> Result<RegionLabel> {
    let rec = averaged_bounds(
        kind,
        &SystemStateParams::new(alpha_sq, w)?,
        beta,
        j_max,
        n_samples,
        t_eval,
        seed,
    )?;
    Ok(rec.label())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedRecord {
    pub mean_beta_q: f64,
    pub mean_ds: f64,
    pub mean_b: f64,
    pub n_samples: usize,
    pub j_max: f64,
    pub t_eval: f64,
    pub seed: u64,
}

impl AveragedRecord {
    pub fn label(&self) -> RegionLabel {
        RegionLabel::from_values(self.mean_beta_q, self.mean_ds, self.mean_b)
    }
}

/// Couplings for sample `index`, drawn uniformly from `(0, j_max)`.
///
/// Each sample reads its own ChaCha stream, so the draw does not depend on
/// how samples are scheduled across workers.
pub fn sample_model(
    kind: InteractionKind,
    j_max: f64,
    seed: u64,
    index: u64,
) -> Result<InteractionModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut draw = || -> f64 { j_max * rng.sample::<f64, _>(Open01) };
    match kind {
        InteractionKind::Xx => InteractionModel::xx(draw()),
        InteractionKind::Ising => InteractionModel::ising(draw()),
        InteractionKind::Generic => {
            let (jx, jy, jz) = (draw(), draw(), draw());
            InteractionModel::generic(jx, jy, jz)
        }
    }
}

/// Random couplings with their propagators at `t_eval`, shared by every
/// initial state evaluated against the ensemble.
#[derive(Debug, Clone)]
pub struct CouplingEnsemble {
    kind: InteractionKind,
    j_max: f64,
    t_eval: f64,
    seed: u64,
    models: Vec<InteractionModel>,
    propagators: Vec<ComplexMatrix>,
}

impl CouplingEnsemble {
    pub fn new(
        kind: InteractionKind,
        j_max: f64,
        n_samples: usize,
        t_eval: f64,
        seed: u64,
    ) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::param("n_samples", 0.0, "must be ≥ 1"));
        }
        if !(j_max.is_finite() && j_max > 0.0) {
            return Err(Error::param("j_max", j_max, "must be finite and > 0"));
        }
        if !(t_eval.is_finite() && t_eval > 0.0) {
            return Err(Error::param("t_eval", t_eval, "must be finite and > 0"));
        }
        let samples: Vec<(InteractionModel, ComplexMatrix)> = (0..n_samples as u64)
            .into_par_iter()
            .map(|i| {
                let model = sample_model(kind, j_max, seed, i)?;
                let u = Dynamics::new(&model)?.propagator(t_eval);
                Ok((model, u))
            })
            .collect::<Result<_>>()?;
        let (models, propagators) = samples.into_iter().unzip();
        Ok(Self {
            kind,
            j_max,
            t_eval,
            seed,
            models,
            propagators,
        })
    }

    pub fn kind(&self) -> InteractionKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn models(&self) -> &[InteractionModel] {
        &self.models
    }

    pub fn average(
        &self,
        params: &SystemStateParams,
        env: &EnvironmentParams,
    ) -> Result<AveragedRecord> {
        let sys0 = system_state(params);
        let records = self
            .propagators
            .par_iter()
            .map(|u| bounds_from_propagator(u, &sys0, env, self.t_eval))
            .collect::<Result<Vec<_>>>()?;
        let n = records.len() as f64;
        let (mut q, mut ds, mut b) = (0.0, 0.0, 0.0);
        for r in &records {
            q += r.beta_q;
            ds += r.delta_s;
            b += r.thermo_b;
        }
        Ok(AveragedRecord {
            mean_beta_q: q / n,
            mean_ds: ds / n,
            mean_b: b / n,
            n_samples: records.len(),
            j_max: self.j_max,
            t_eval: self.t_eval,
            seed: self.seed,
        })
    }

    /// Mean `β⟨Q⟩` only.
    pub fn mean_heat(&self, params: &SystemStateParams, env: &EnvironmentParams) -> f64 {
        let sys0 = system_state(params);
        let heats: Vec<f64> = self
            .propagators
            .par_iter()
            .map(|u| heat_from_propagator(u, &sys0, env))
            .collect();
        heats.iter().sum::<f64>() / heats.len() as f64
    }

    /// First α² at which the averaged heat turns negative (1 if it never
    /// does, 0 if it is already negative for the pure excited state).
    ///
    /// Scans a grid of `scan_points` values and refines the bracketing cell
    /// by bisection to `1e-6`.
    pub fn heat_sign_change(&self, env: &EnvironmentParams, scan_points: usize) -> Result<f64> {
        let heat =
            |a2: f64| -> Result<f64> { Ok(self.mean_heat(&SystemStateParams::new(a2, 0.0)?, env)) };
        let n = scan_points.max(2);
        let mut prev = 0.0;
        if heat(prev)? < 0.0 {
            return Ok(0.0);
        }
        for k in 1..n {
            let a2 = k as f64 / (n - 1) as f64;
            if heat(a2)? < 0.0 {
                let (mut lo, mut hi) = (prev, a2);
                while hi - lo > 1e-6 {
                    let mid = 0.5 * (lo + hi);
                    if heat(mid)? < 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
            prev = a2;
        }
        Ok(1.0)
    }
}

pub fn averaged_bounds(
    kind: InteractionKind,
    params: &SystemStateParams,
    beta: f64,
    j_max: f64,
    n_samples: usize,
    t_eval: f64,
    seed: u64,
) -> Result<AveragedRecord> {
    let env = EnvironmentParams::new(beta)?;
    CouplingEnsemble::new(kind, j_max, n_samples, t_eval, seed)?.average(params, &env)
}

/// Admissible `(α², δ)` points of a `resolution × resolution` grid over
/// `[0,1] × [0,½]`, keeping only `δ ≤ α√(1−α²)`. Ordered by α² then δ.
pub fn admissible_grid(resolution: usize) -> Vec<StatePoint> {
    let n = resolution.max(2);
    let mut points = Vec::new();
    for i in 0..n {
        let alpha_sq = i as f64 / (n - 1) as f64;
        let d_max = max_coherence(alpha_sq);
        for j in 0..n {
            let delta = 0.5 * j as f64 / (n - 1) as f64;
            if delta <= d_max + 1e-15 {
                points.push(StatePoint {
                    alpha_sq,
                    delta: delta.min(d_max),
                });
            }
        }
    }
    points
}

/// Seeded random initial states, uniform in `(α², w)`.
pub fn random_states(count: usize, seed: u64) -> Vec<StatePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = rand::distributions::Uniform::new_inclusive(0.0, 1.0);
    (0..count)
        .map(|_| {
            let alpha_sq = unit.sample(&mut rng);
            let w = unit.sample(&mut rng);
            StatePoint {
                alpha_sq,
                delta: w * max_coherence(alpha_sq),
            }
        })
        .collect()
}

/// XX labels at the heat maximum.
pub fn region_map_max_point(beta: f64, points: &[StatePoint]) -> Result<Vec<RegionLabel>> {
    check_beta(beta)?;
    points
        .par_iter()
        .map(|p| {
            let m = max_point(&p.params()?, beta)?;
            Ok(RegionLabel::from_values(m.beta_q_max, m.ds_max, m.b_max))
        })
        .collect()
}

/// Labels from coupling-averaged values.
pub fn region_map_averaged(
    ensemble: &CouplingEnsemble,
    beta: f64,
    points: &[StatePoint],
) -> Result<Vec<RegionLabel>> {
    let env = EnvironmentParams::new(beta)?;
    points
        .iter()
        .map(|p| Ok(ensemble.average(&p.params()?, &env)?.label()))
        .collect()
}

/// One point of the tightness surface, all quantities divided by β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub alpha_sq: f64,
    pub beta: f64,
    pub q_max: f64,
    pub b_max_over_beta: f64,
    pub ds_max_over_beta: f64,
}

pub fn tightness_surface(
    alpha_sq_grid: &[f64],
    beta_grid: &[f64],
    w: f64,
) -> Result<Vec<SurfacePoint>> {
    let pairs: Vec<(f64, f64)> = alpha_sq_grid
        .iter()
        .flat_map(|&a| beta_grid.iter().map(move |&b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(alpha_sq, beta)| {
            let m = max_point(&SystemStateParams::new(alpha_sq, w)?, beta)?;
            Ok(SurfacePoint {
                alpha_sq,
                beta,
                q_max: m.beta_q_max / beta,
                b_max_over_beta: m.b_max / beta,
                ds_max_over_beta: m.ds_max / beta,
            })
        })
        .collect()
}

/// `n` points spanning `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
