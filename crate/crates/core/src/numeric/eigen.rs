use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gpm_matrix, StateVector, UnitaryMatrix, EIGENVALUE_GAP};
use crate::error::{Error, Result};
use crate::mcs::{materialize, McsId};
use crate::zmod::Dimension;

pub const MAX_COEFFICIENT_DRAWS: usize = 8;

/// An orthonormal basis of simultaneous eigenvectors of an MCS.
#[derive(Debug, Clone)]
pub struct EigenbasisResult {
    pub basis: Vec<StateVector>,
    /// Max over basis vectors `b` and members `U` of `‖U b − ⟨b|U|b⟩ b‖`.
    pub residual: f64,
    /// Coefficient draws used (1 when the first draw had a simple spectrum).
    pub attempts: usize,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `[a (U + U†) + b (U − U†)/i] / 2`, a Hermitian matrix sharing all
/// eigenvectors of the normal matrix `U`.
fn hermitian_part(u: &DMatrix<Complex64>, a: f64, b: f64) -> DMatrix<Complex64> {
    let adj = u.adjoint();
    let sym = (u + &adj) * Complex64::new(a / 2.0, 0.0);
    let anti = (u - &adj) * (Complex64::new(b / 2.0, 0.0) / I);
    sym + anti
}

fn eigh(h: DMatrix<Complex64>) -> (Vec<f64>, Vec<StateVector>) {
    let n = h.nrows();
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| StateVector::from_unit(eig.eigenvectors.column(k).into_owned()))
        .collect();
    (values, vectors)
}

fn min_gap(sorted: &[f64]) -> f64 {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Largest deviation of the basis from being simultaneous eigenvectors.
pub fn eigen_residual(basis: &[StateVector], members: &[UnitaryMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for b in basis {
        for u in members {
            let ub = u.apply(b);
            let lambda = b.inner(&ub);
            let dev = (ub.amplitudes() - b.amplitudes() * lambda).norm();
            worst = worst.max(dev);
        }
    }
    worst
}

/// Diagonalizes a seeded random real combination of the Hermitian and
/// anti-Hermitian parts of all members of `C_{id}`. A nondegenerate
/// combination has exactly the common eigenvectors; degenerate draws are
/// retried with fresh coefficients up to [`MAX_COEFFICIENT_DRAWS`] times.
pub fn common_eigenbasis(id: McsId, d: Dimension, seed: u64) -> Result<EigenbasisResult> {
    let mcs = materialize(id, d)?;
    let members: Vec<UnitaryMatrix> = mcs.members.iter().map(|&g| gpm_matrix(g, d)).collect();
    let n = d.get() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_COEFFICIENT_DRAWS {
        let mut h = DMatrix::<Complex64>::zeros(n, n);
        for u in &members {
            let a: f64 = rng.random_range(-1.0..1.0);
            let b: f64 = rng.random_range(-1.0..1.0);
            h += hermitian_part(u.entries(), a, b);
        }
        let (values, basis) = eigh(h);
        if min_gap(&values) < EIGENVALUE_GAP {
            continue;
        }
        let residual = eigen_residual(&basis, &members);
        return Ok(EigenbasisResult {
            basis,
            residual,
            attempts: attempt,
        });
    }
    Err(Error::DegenerateAfterRetries {
        attempts: MAX_COEFFICIENT_DRAWS,
    })
}

/// An orthonormal eigenbasis of a single unitary. Degenerate eigenspaces are
/// returned in whatever basis the solver picks.
pub fn normal_eigenvectors(u: &UnitaryMatrix) -> Vec<StateVector> {
    // Irrational weight on the anti-Hermitian part keeps distinct unimodular
    // eigenvalues apart after projection onto the real line.
    let h = hermitian_part(u.entries(), 1.0, std::f64::consts::FRAC_1_SQRT_2 - 0.1);
    eigh(h).1
}
