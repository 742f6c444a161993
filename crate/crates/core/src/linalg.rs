//! Dense complex linear algebra for the 2×2 and 4×4 problems of a qubit pair.
//!
//! Matrices are stored row-major. Two-qubit matrices use the product basis
//! `{|1⟩,|0⟩} ⊗ {|1⟩,|0⟩}` with the system as the first factor, so the joint
//! index of `|s⟩_S |e⟩_E` is `2·s + e` where `s, e ∈ {0 → |1⟩, 1 → |0⟩}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when checking that an input matrix is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on the unit trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut m = Self::zeros(dim)?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |m - m†|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `self · rho · self†`
    pub fn conjugate(&self, rho: &Self) -> Self {
        &(self * rho) * &self.adjoint()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product: dimension mismatch");
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        ComplexMatrix { dim: n, data }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// Pauli matrices in the `{|1⟩,|0⟩}` basis, where `σᶻ = diag(1, −1)`.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2).expect("2x2")
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
    }

    pub fn y() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        ComplexMatrix::new(2, vec![ZERO, -i, i, ZERO]).expect("2x2")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("2x2")
    }
}

/// Kronecker product of two 2×2 matrices.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if m.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: m.dim,
            });
        }
    }
    let mut data = vec![ZERO; 16];
    for ar in 0..2 {
        for ac in 0..2 {
            let x = a.get(ar, ac);
            for br in 0..2 {
                for bc in 0..2 {
                    data[(2 * ar + br) * 4 + (2 * ac + bc)] = x * b.get(br, bc);
                }
            }
        }
    }
    ComplexMatrix::new(4, data)
}

/// Spectral decomposition `m = V · diag(λ) · V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::new(l, 0.0))
    }

    /// `V · diag(f(λ)) · V†`
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.eigenvectors.dim;
        let v = &self.eigenvectors;
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for (k, w) in weights.iter().enumerate() {
                    acc += v.get(r, k) * w * v.get(c, k).conj();
                }
                data[r * n + c] = acc;
            }
        }
        ComplexMatrix { dim: n, data }
    }

    /// `exp(−i·h·t)` for the decomposed `h`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::from_polar(1.0, -l * t))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a.get(r, c).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim;
    // symmetrise so rounding in the input cannot leak into the rotations
    let mut a = (m + &m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n)?;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm >= JACOBI_OFF_TOL {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let eigenvalues = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// The rotation is `J = D·R` where `D` removes the phase of `a[p][q]` and `R`
/// is the real symmetric Jacobi rotation; `a ← J† a J`, `v ← v J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim;
    let e_minus = phase.conj();

    // columns: B = A J
    for r in 0..n {
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        a.set(r, p, arp * c - arq * e_minus * s);
        a.set(r, q, arp * s + arq * e_minus * c);
    }
    // rows: A' = J† B
    for col in 0..n {
        let bp = a.get(p, col);
        let bq = a.get(q, col);
        a.set(p, col, bp * c - bq * phase * s);
        a.set(q, col, bp * s + bq * phase * c);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));

    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp * c - vrq * e_minus * s);
        v.set(r, q, vrp * s + vrq * e_minus * c);
    }
}

/// `U = exp(−i h t)` through the eigendecomposition of `h`.
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(h)?.propagator(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    System,
    Environment,
}

/// Reduced 2×2 state of the subsystem `keep`.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim,
        });
    }
    let trace = rho.trace();
    if (trace - ONE).norm() > TRACE_TOL {
        return Err(Error::InvalidTrace { trace: trace.re });
    }
    Ok(partial_trace_unchecked(rho, keep))
}

pub(crate) fn partial_trace_unchecked(rho: &ComplexMatrix, keep: Subsystem) -> ComplexMatrix {
    let mut data = vec![ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            data[i * 2 + j] = (0..2)
                .map(|k| match keep {
                    Subsystem::System => rho.get(2 * i + k, 2 * j + k),
                    Subsystem::Environment => rho.get(2 * k + i, 2 * k + j),
                })
                .sum();
        }
    }
    ComplexMatrix { dim: 2, data }
}
