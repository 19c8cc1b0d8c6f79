//! Search for a witness state `α` with `⟨α|U|α⟩ = 0` for all `U ∈ ΔS`.
//!
//! The objective `f(α) = Σ |⟨α|U|α⟩|²` runs over one element of each `±`
//! pair of `ΔS` (`|⟨α|U†|α⟩| = |⟨α|U|α⟩|`). It is a sum of squares of real
//! residuals `Re/Im ⟨α|U|α⟩`, minimized by projected gradient descent on the
//! unit sphere (Barzilai-Borwein trial steps, Armijo backtracking, renormalize
//! after every step) from `restarts` independent random starts. A zero objective is a witness; a positive
//! minimum is evidence, not proof, that none exists.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{omega_pow, StateVector};
use crate::pauli::{diff_set, GbsSet, Gpm};
use crate::zmod::Dimension;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    /// A best residual below this counts as a witness.
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 64,
            iterations: 2000,
            seed: 0,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityOutcome {
    WitnessFound,
    /// Every restart stayed above tolerance. Numerical evidence only.
    NoWitnessEvidence,
}

impl fmt::Display for FeasibilityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeasibilityOutcome::WitnessFound => write!(f, "witness found"),
            FeasibilityOutcome::NoWitnessEvidence => {
                write!(f, "EVIDENCE: no witness found (not a proof of indistinguishability)")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// Objective evaluated on `witness` as reported.
    pub best_residual: f64,
    pub witness: StateVector,
    pub best_restart: usize,
    pub restarts: usize,
    pub iterations_per_restart: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub outcome: FeasibilityOutcome,
}

impl FeasibilityReport {
    pub fn witness_found(&self) -> bool {
        self.outcome == FeasibilityOutcome::WitnessFound
    }
}

/// Precomputed action of `X^m Z^n` on amplitude vectors.
struct ShiftPhase {
    m: usize,
    /// `ω^{c n}` for `c = 0..d`.
    phases: Vec<Complex64>,
}

impl ShiftPhase {
    fn new(g: Gpm, d: Dimension) -> Self {
        let phases = (0..d.get() as u64)
            .map(|c| omega_pow(d, c * g.n as u64))
            .collect();
        ShiftPhase {
            m: g.m as usize,
            phases,
        }
    }

    /// `(U a)[r] = ω^{(r-m) n} a[r-m]`.
    fn apply(&self, a: &[Complex64], out: &mut [Complex64]) {
        let d = a.len();
        for c in 0..d {
            out[(c + self.m) % d] = self.phases[c] * a[c];
        }
    }

    /// `(U† a)[c] = conj(ω^{c n}) a[c+m]`.
    fn apply_adjoint(&self, a: &[Complex64], out: &mut [Complex64]) {
        let d = a.len();
        for c in 0..d {
            out[c] = self.phases[c].conj() * a[(c + self.m) % d];
        }
    }

    fn expectation(&self, a: &[Complex64]) -> Complex64 {
        let d = a.len();
        (0..d)
            .map(|c| a[(c + self.m) % d].conj() * self.phases[c] * a[c])
            .sum()
    }
}

struct Objective {
    ops: Vec<ShiftPhase>,
}

impl Objective {
    fn new(s: &GbsSet) -> Self {
        let d = s.d();
        let ops = diff_set(s)
            .pair_representatives()
            .into_iter()
            .map(|g| ShiftPhase::new(g, d))
            .collect();
        Objective { ops }
    }

    fn value(&self, a: &[Complex64]) -> f64 {
        self.ops.iter().map(|op| op.expectation(a).norm_sqr()).sum()
    }

    /// Real gradient with respect to `[Re a; Im a]`, packed as complex
    /// `∂f/∂Re a_k + i ∂f/∂Im a_k = 2 Σ_p (conj(g_p) (U_p a)_k + g_p (U_p† a)_k)`.
    fn gradient(&self, a: &[Complex64], out: &mut [Complex64]) {
        let d = a.len();
        let mut ua = vec![Complex64::new(0.0, 0.0); d];
        let mut uda = vec![Complex64::new(0.0, 0.0); d];
        out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for op in &self.ops {
            let g = op.expectation(a);
            op.apply(a, &mut ua);
            op.apply_adjoint(a, &mut uda);
            for k in 0..d {
                out[k] += 2.0 * (g.conj() * ua[k] + g * uda[k]);
            }
        }
    }

    /// Gradient projected onto the tangent space of the sphere at `a`.
    fn tangent_gradient(&self, a: &[Complex64], out: &mut [Complex64]) {
        self.gradient(a, out);
        let radial: f64 = a.iter().zip(out.iter()).map(|(x, g)| (x.conj() * g).re).sum();
        for (g, x) in out.iter_mut().zip(a) {
            *g -= x * radial;
        }
    }
}

fn normalize(a: &mut [Complex64]) {
    let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    a.iter_mut().for_each(|z| *z /= n);
}

const ARMIJO: f64 = 1e-4;
const STEP_MIN: f64 = 1e-10;
const STEP_MAX: f64 = 1e6;
const STEP_FLOOR: f64 = 1e-16;

fn real_dot(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a.conj() * b).re).sum()
}

/// One projected-gradient run; returns the final point and its objective.
/// Trial step lengths come from the Barzilai-Borwein formula and are halved
/// until the Armijo condition holds. Stops at an exact zero, a zero gradient,
/// or when backtracking falls below `STEP_FLOOR`.
fn descend(obj: &Objective, start: Vec<Complex64>, iterations: usize) -> (Vec<Complex64>, f64) {
    let d = start.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut a = start;
    let mut f = obj.value(&a);
    let mut g = vec![zero; d];
    obj.tangent_gradient(&a, &mut g);
    let mut trial = vec![zero; d];
    let mut g_trial = vec![zero; d];
    let mut step = 0.5;
    for _ in 0..iterations {
        let gn = real_dot(&g, &g);
        if f == 0.0 || gn == 0.0 {
            break;
        }
        let mut s = step;
        let ft = loop {
            for k in 0..d {
                trial[k] = a[k] - g[k] * s;
            }
            normalize(&mut trial);
            let ft = obj.value(&trial);
            if ft <= f - ARMIJO * s * gn {
                break ft;
            }
            s /= 2.0;
            if s < STEP_FLOOR {
                return (a, f);
            }
        };
        obj.tangent_gradient(&trial, &mut g_trial);
        let mut ss = 0.0;
        let mut sy = 0.0;
        for k in 0..d {
            let dx = trial[k] - a[k];
            let dg = g_trial[k] - g[k];
            ss += dx.norm_sqr();
            sy += (dx.conj() * dg).re;
        }
        step = if sy > 0.0 { (ss / sy).clamp(STEP_MIN, STEP_MAX) } else { 1.0 };
        std::mem::swap(&mut a, &mut trial);
        std::mem::swap(&mut g, &mut g_trial);
        f = ft;
    }
    (a, f)
}

/// `Σ_{U ∈ ΔS, one per ± pair} |⟨α|U|α⟩|²`.
pub fn feasibility_objective(s: &GbsSet, alpha: &StateVector) -> f64 {
    let a: Vec<Complex64> = alpha.amplitudes().iter().copied().collect();
    Objective::new(s).value(&a)
}

/// Multi-start projected gradient search. Restart `k` draws its start from
/// ChaCha8 stream `k` of `seed`, so the report does not depend on how the
/// restarts are scheduled; ties go to the lowest restart index.
pub fn feasibility_search(s: &GbsSet, config: &SearchConfig) -> FeasibilityReport {
    let d = s.d();
    let obj = Objective::new(s);
    let restarts = config.restarts.max(1);
    let runs: Vec<(usize, Vec<Complex64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let start: Vec<Complex64> = StateVector::random(d, &mut rng)
                .amplitudes()
                .iter()
                .copied()
                .collect();
            let (a, f) = descend(&obj, start, config.iterations);
            (k, a, f)
        })
        .collect();
    let (best_restart, best, _) = runs
        .into_iter()
        .min_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)))
        .expect("at least one restart");
    let witness = StateVector::new(DVector::from_vec(best)).expect("descent keeps unit norm");
    let best_residual = feasibility_objective(s, &witness);
    let outcome = if best_residual < config.tolerance {
        FeasibilityOutcome::WitnessFound
    } else {
        FeasibilityOutcome::NoWitnessEvidence
    };
    FeasibilityReport {
        best_residual,
        witness,
        best_restart,
        restarts,
        iterations_per_restart: config.iterations,
        seed: config.seed,
        tolerance: config.tolerance,
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{gpm_matrix, protocol_verify};
    use rand::SeedableRng;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn set(d: u32, pairs: &[(i64, i64)]) -> GbsSet {
        GbsSet::from_pairs(dim(d), pairs).unwrap()
    }

    // Direct matrix evaluation of the objective, summing over all of ΔS.
    fn objective_oracle(s: &GbsSet, v: &StateVector) -> f64 {
        diff_set(s)
            .iter()
            .map(|g| v.inner(&gpm_matrix(g, s.d()).apply(v)).norm_sqr())
            .sum()
    }

    #[test]
    fn objective_matches_matrix_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (d, pairs) in [
            (4, vec![(0, 0), (1, 0), (0, 1), (3, 3)]),
            (6, vec![(0, 0), (0, 1), (0, 3), (3, 0)]),
            (5, vec![(0, 0), (1, 2), (3, 4)]),
        ] {
            let s = set(d, &pairs);
            for _ in 0..20 {
                let v = StateVector::random(dim(d), &mut rng);
                let full = objective_oracle(&s, &v);
                // Each ± pair contributes twice to the full sum, except
                // self-inverse elements which appear once.
                let ds = diff_set(&s);
                let selfinv: f64 = ds
                    .iter()
                    .filter(|g| g.neg(dim(d)) == *g)
                    .map(|g| v.inner(&gpm_matrix(g, dim(d)).apply(&v)).norm_sqr())
                    .sum();
                let half = (full + selfinv) / 2.0;
                assert!((feasibility_objective(&s, &v) - half).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let s = set(6, &[(0, 0), (0, 1), (3, 0), (2, 5)]);
        let obj = Objective::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a: Vec<Complex64> = StateVector::random(dim(6), &mut rng).amplitudes().iter().copied().collect();
        let mut g = vec![Complex64::new(0.0, 0.0); 6];
        obj.gradient(&a, &mut g);
        let h = 1e-6;
        for k in 0..6 {
            for (dir, want) in [(Complex64::new(h, 0.0), g[k].re), (Complex64::new(0.0, h), g[k].im)] {
                let (mut p, mut m) = (a.clone(), a.clone());
                p[k] += dir;
                m[k] -= dir;
                let fd = (obj.value(&p) - obj.value(&m)) / (2.0 * h);
                assert!((fd - want).abs() < 1e-6, "k={k}: fd {fd} analytic {want}");
            }
        }
        let mut t = vec![Complex64::new(0.0, 0.0); 6];
        obj.tangent_gradient(&a, &mut t);
        assert!(real_dot(&a, &t).abs() < 1e-12);
    }

    #[test]
    fn descent_never_increases_objective() {
        let s = set(6, &[(0, 0), (0, 1), (0, 3), (3, 0)]);
        let obj = Objective::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..8 {
            let a: Vec<Complex64> = StateVector::random(dim(6), &mut rng).amplitudes().iter().copied().collect();
            let f0 = obj.value(&a);
            let (b, f1) = descend(&obj, a, 50);
            assert!(f1 <= f0);
            let norm: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn finds_witness_for_k() {
        let k = set(4, &[(0, 0), (0, 2), (2, 0), (2, 2)]);
        let r = feasibility_search(&k, &SearchConfig::default());
        assert!(r.best_residual < 1e-8, "{}", r.best_residual);
        assert!(r.witness_found());
        assert!(protocol_verify(&k, &r.witness) < 1e-4);
        // Known exact witness.
        assert!(feasibility_objective(&k, &StateVector::plus_zero_one(dim(4))) < 1e-30);
    }

    #[test]
    fn single_shift_difference() {
        let s = set(3, &[(0, 0), (1, 0)]);
        let r = feasibility_search(&s, &SearchConfig { restarts: 4, ..Default::default() });
        assert!(r.best_residual < 1e-10);
        assert!(feasibility_objective(&s, &StateVector::basis(dim(3), 1)) < 1e-30);
    }

    #[test]
    fn deterministic_and_reported_exactly() {
        let s = set(6, &[(0, 0), (0, 1), (0, 3), (3, 0)]);
        let cfg = SearchConfig {
            restarts: 8,
            iterations: 300,
            seed: 17,
            tolerance: 1e-8,
        };
        let a = feasibility_search(&s, &cfg);
        let b = feasibility_search(&s, &cfg);
        assert_eq!(a.best_residual.to_bits(), b.best_residual.to_bits());
        assert_eq!(a.best_restart, b.best_restart);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.best_residual, feasibility_objective(&s, &a.witness));
        assert_eq!(a.outcome, FeasibilityOutcome::NoWitnessEvidence);
        assert!(a.outcome.to_string().starts_with("EVIDENCE"));
    }

    #[test]
    fn residual_invariant_under_phase_and_translation() {
        let s = set(6, &[(1, 2), (1, 3), (4, 2), (4, 5)]);
        let std = crate::pauli::standardize(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let v = StateVector::random(dim(6), &mut rng);
            let f = feasibility_objective(&s, &v);
            let phased = v.scaled(Complex64::from_polar(1.0, 0.7));
            assert!((feasibility_objective(&s, &phased) - f).abs() < 1e-12);
            assert!((feasibility_objective(&std, &v) - f).abs() < 1e-12);
        }
        let cfg = SearchConfig { restarts: 4, iterations: 200, ..Default::default() };
        let a = feasibility_search(&s, &cfg).best_residual;
        let b = feasibility_search(&std, &cfg).best_residual;
        assert!((a - b).abs() < 1e-9);
    }
}
