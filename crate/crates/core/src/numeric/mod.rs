//! Complex-matrix realization of GPMs and numerical checks of the
//! discrimination protocols the exact layer predicts.
//!
//! `U_{m,n} = X^m Z^n` with `X|j⟩ = |j+1⟩` and `Z|j⟩ = ω^j |j⟩`,
//! `ω = e^{2πi/d}`. A set `S` is one-way distinguishable exactly when some
//! unit vector `α` makes the states `U_k α` pairwise orthogonal, i.e.
//! `⟨α|U|α⟩ = 0` for every `U ∈ ΔS`.

mod eigen;
mod search;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{commutes, GbsSet, Gpm};
use crate::zmod::Dimension;

pub use eigen::{common_eigenbasis, normal_eigenvectors, EigenbasisResult, MAX_COEFFICIENT_DRAWS};
pub use search::{feasibility_objective, feasibility_search, FeasibilityOutcome, FeasibilityReport, SearchConfig};

/// Floating-point tiers used across the numeric checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Matrix construction and unitarity.
    pub construction: f64,
    /// Eigenvector residuals and Weyl orthogonality.
    pub eigen: f64,
    /// Protocol Gram residuals.
    pub protocol: f64,
    /// Feasibility search success threshold.
    pub feasibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            construction: 1e-12,
            eigen: 1e-10,
            protocol: 1e-9,
            feasibility: 1e-8,
        }
    }
}

/// Minimum eigenvalue gap accepted by [`common_eigenbasis`].
pub const EIGENVALUE_GAP: f64 = 1e-8;

/// A `d × d` unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    d: Dimension,
    entries: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    /// Wraps `entries`, checking `U U† = I` to `tol` (Frobenius norm).
    pub fn new(entries: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        let n = entries.nrows();
        if n != entries.ncols() || n < 2 {
            return Err(Error::Parse(format!("{}x{} is not a square matrix of size >= 2", n, entries.ncols())));
        }
        let dev = (&entries * entries.adjoint() - DMatrix::identity(n, n)).norm();
        if dev > tol {
            return Err(Error::Parse(format!("matrix is not unitary (deviation {dev:e})")));
        }
        Ok(UnitaryMatrix {
            d: Dimension::new(n as u32)?,
            entries,
        })
    }

    pub fn d(&self) -> Dimension {
        self.d
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector {
            amplitudes: &self.entries * &v.amplitudes,
        }
    }
}

/// A vector in `C^d`, normally of unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on the zero vector.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.len() < 2 || norm == 0.0 || !norm.is_finite() {
            return Err(Error::Parse("state vector must be nonzero with length >= 2".into()));
        }
        Ok(StateVector {
            amplitudes: amplitudes / Complex64::new(norm, 0.0),
        })
    }

    pub(crate) fn from_unit(amplitudes: DVector<Complex64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn basis(d: Dimension, j: u32) -> Self {
        let mut a = DVector::zeros(d.get() as usize);
        a[(j % d.get()) as usize] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes: a }
    }

    /// `(|0⟩ + |1⟩)/√2`.
    pub fn plus_zero_one(d: Dimension) -> Self {
        let mut a = DVector::zeros(d.get() as usize);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        a[0] = Complex64::new(h, 0.0);
        a[1] = Complex64::new(h, 0.0);
        StateVector { amplitudes: a }
    }

    /// Uniform random point on the unit sphere of `C^d`.
    pub fn random<R: Rng + ?Sized>(d: Dimension, rng: &mut R) -> Self {
        loop {
            let a = DVector::from_fn(d.get() as usize, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            if let Ok(v) = StateVector::new(a) {
                return v;
            }
        }
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn scaled(&self, phase: Complex64) -> StateVector {
        StateVector {
            amplitudes: &self.amplitudes * phase,
        }
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        let a = DVector::from_iterator(pairs.len(), pairs.iter().map(|p| Complex64::new(p[0], p[1])));
        StateVector::new(a).map_err(serde::de::Error::custom)
    }
}

/// `ω^k` with `ω = e^{2πi/d}`.
pub fn omega_pow(d: Dimension, k: u64) -> Complex64 {
    let k = k % d.get() as u64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d.get() as f64)
}

/// `X^m Z^n`: entry `(r, c)` is `ω^{cn}` when `r = c + m mod d`.
pub fn gpm_matrix(g: Gpm, d: Dimension) -> UnitaryMatrix {
    let n = d.get() as usize;
    let mut u = DMatrix::zeros(n, n);
    for c in 0..n {
        let r = (c + g.m as usize) % n;
        u[(r, c)] = omega_pow(d, c as u64 * g.n as u64);
    }
    UnitaryMatrix { d, entries: u }
}

/// `‖(I ⊗ U)|Φ⟩ − (Uᵀ ⊗ I)|Φ⟩‖` for the canonical maximally entangled state
/// `|Φ⟩ = Σ_j |jj⟩ / √d`.
pub fn canonical_mes_check(u: &UnitaryMatrix) -> f64 {
    let n = u.d().get() as usize;
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut phi = DVector::<Complex64>::zeros(n * n);
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for j in 0..n {
        phi[j * n + j] = amp;
    }
    let left = id.kronecker(u.entries()) * &phi;
    let right = u.entries().transpose().kronecker(&id) * &phi;
    (left - right).norm()
}

/// Haar-ish random unitary from the QR factorization of a complex Gaussian
/// matrix (with the phase correction on `R`'s diagonal).
pub fn random_unitary<R: Rng + ?Sized>(d: Dimension, rng: &mut R) -> UnitaryMatrix {
    let n = d.get() as usize;
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        let rk = r[(k, k)];
        let phase = if rk.norm() > 0.0 { rk / rk.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    UnitaryMatrix { d, entries: q }
}

/// Largest `|⟨v|U|v⟩|` over an eigenbasis `{v}` of `U_t`, for a pair that
/// does not commute. Every eigenvector of `U_t` should give zero.
pub fn weyl_orthogonality(t: Gpm, u: Gpm, d: Dimension) -> Result<f64> {
    if commutes(t, u, d) {
        return Err(Error::CommutingPair { a: t, b: u });
    }
    let ut = gpm_matrix(t, d);
    let uu = gpm_matrix(u, d);
    let basis = normal_eigenvectors(&ut);
    Ok(basis
        .iter()
        .map(|v| v.inner(&uu.apply(v)).norm())
        .fold(0.0, f64::max))
}

/// Largest off-diagonal Gram entry `|⟨v|U_i† U_j|v⟩|` of the states `U_k v`.
pub fn protocol_verify(s: &GbsSet, v: &StateVector) -> f64 {
    let d = s.d();
    let states: Vec<StateVector> = s
        .elements()
        .iter()
        .map(|&g| gpm_matrix(g, d).apply(v))
        .collect();
    let mut worst = 0.0f64;
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            worst = worst.max(states[i].inner(&states[j]).norm());
        }
    }
    worst
}
