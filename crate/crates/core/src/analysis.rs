//! Detectors, discriminant sets and the one-way distinguishability verdict.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcs::{enumerate_mcs, materialize, mcs_containing, mcs_has_member, McsId};
use crate::pauli::{all_gpms, commutes, diff_set, DiffSet, GbsSet, Gpm};
use crate::zmod::{gcd_d, Dimension};

/// MCS labels whose members avoid the whole difference set.
pub type DetectorSet = BTreeSet<McsId>;

/// Complement of `C_{id}` in `Z_d × Z_d`.
pub fn detection_range(id: McsId, d: Dimension) -> Result<BTreeSet<Gpm>> {
    let c = materialize(id, d)?;
    Ok(all_gpms(d).filter(|g| !c.contains(*g)).collect())
}

/// GPMs that commute with no element of `ΔS`.
pub fn discriminant_set(s: &GbsSet) -> BTreeSet<Gpm> {
    let d = s.d();
    let ds = diff_set(s);
    all_gpms(d)
        .filter(|&g| ds.iter().all(|x| !commutes(g, x, d)))
        .collect()
}

/// `S_{MC,d}` minus every class containing some element of `ΔS`.
pub fn detectors_of(s: &GbsSet) -> DetectorSet {
    detectors_of_diff(&diff_set(s))
}

pub fn detectors_of_diff(ds: &DiffSet) -> DetectorSet {
    let d = ds.d();
    let mut out: DetectorSet = enumerate_mcs(d).into_iter().collect();
    for g in ds.iter() {
        for id in mcs_containing(g, d) {
            out.remove(&id);
        }
    }
    out
}

/// Result of the exhaustive `(α, β)` scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FEquivalenceWitness {
    pub found: bool,
    pub alpha: u32,
    pub beta: u32,
}

/// First `(α, β)` in lexicographic order with `m_i α + n_i β` pairwise
/// distinct mod `d`.
pub fn f_equivalent(s: &GbsSet) -> FEquivalenceWitness {
    let d = s.d();
    let dv = d.get();
    let mut seen = vec![false; dv as usize];
    for alpha in 0..dv {
        for beta in 0..dv {
            seen.iter_mut().for_each(|x| *x = false);
            let distinct = s.elements().iter().all(|g| {
                let v = (g.m as u64 * alpha as u64 + g.n as u64 * beta as u64) % dv as u64;
                !std::mem::replace(&mut seen[v as usize], true)
            });
            if distinct {
                return FEquivalenceWitness {
                    found: true,
                    alpha,
                    beta,
                };
            }
        }
    }
    FEquivalenceWitness {
        found: false,
        alpha: 0,
        beta: 0,
    }
}

/// `true` iff the elements of `ΔS` pairwise commute.
pub fn delta_commutative(s: &GbsSet) -> bool {
    let ds = diff_set(s);
    let d = ds.d();
    let elems: Vec<Gpm> = ds.iter().collect();
    elems
        .iter()
        .enumerate()
        .all(|(k, &a)| elems[k + 1..].iter().all(|&b| commutes(a, b, d)))
}

/// First MCS (in label order) that contains every element of `ΔS`.
pub fn mcs_covering(ds: &DiffSet) -> Option<McsId> {
    let d = ds.d();
    enumerate_mcs(d)
        .into_iter()
        .find(|&id| ds.iter().all(|g| mcs_has_member(id, g, d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentCheck {
    Holds,
    Fails,
    /// Not applicable: the criterion needs composite `d`.
    PrimeDimension,
}

/// For composite `d`: does every `(m, n) ∈ ΔS` have `m` or `n` invertible?
pub fn invertible_components(s: &GbsSet) -> ComponentCheck {
    let d = s.d();
    if d.is_prime() {
        return ComponentCheck::PrimeDimension;
    }
    let unit = |x: u32| gcd_d(d, x) == 1;
    if diff_set(s).iter().all(|g| unit(g.m) || unit(g.n)) {
        ComponentCheck::Holds
    } else {
        ComponentCheck::Fails
    }
}

/// Looks for `i0` with `0 < i0 < d - 1` such that `ΔS` contains
/// `{(d/2, i) : i = 0..=d/2}` and `{(0, i0 + 2k) : k = 0..d/2}`.
/// Returns the smallest such `i0`.
pub fn lemma6_pattern(s: &GbsSet) -> Result<Option<u32>> {
    let d = s.d();
    if !d.is_even() {
        return Err(Error::OddDimension(d.get()));
    }
    let dv = d.get();
    let half = dv / 2;
    let ds = diff_set(s);
    let column = (0..=half).all(|i| ds.contains(Gpm::new(half as i64, i as i64, d)));
    if !column {
        return Ok(None);
    }
    Ok((1..dv - 1).find(|&i0| {
        (0..half).all(|k| ds.contains(Gpm::new(0, (i0 + 2 * k) as i64, d)))
    }))
}

/// `ΔS = {(0, d/2), (d/2, 0), (d/2, d/2)}` for even `d`.
pub fn is_special_diff_set(ds: &DiffSet) -> bool {
    let d = ds.d();
    if !d.is_even() {
        return false;
    }
    let h = d.get() / 2;
    let expect: BTreeSet<Gpm> = [Gpm { m: 0, n: h }, Gpm { m: h, n: 0 }, Gpm { m: h, n: h }]
        .into_iter()
        .collect();
    ds.elements() == &expect
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Distinguishable,
    Indistinguishable,
    Unknown,
}

/// Which rule of the verdict cascade fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    SmallSet,
    DetectorFound,
    DeltaCommutative,
    InvertibleComponents,
    SpecialDiffSet33,
    Lemma6Pattern,
    Theorem2Exhausted,
    Insufficient,
}

/// Named states that serve as explicit protocol witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateHandle {
    /// `(|0⟩ + |1⟩)/√2`.
    PlusZeroOne,
}

impl fmt::Display for StateHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateHandle::PlusZeroOne => write!(f, "(|0>+|1>)/sqrt2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A detector (for `DetectorFound`) or a class containing the relevant
    /// elements (for `DeltaCommutative` / `InvertibleComponents`).
    Mcs(McsId),
    FEquivalence(FEquivalenceWitness),
    State(StateHandle),
    PatternOffset(u32),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mcs(id) => write!(f, "{id}"),
            Witness::FEquivalence(w) => write!(f, "alpha={} beta={}", w.alpha, w.beta),
            Witness::State(h) => write!(f, "{h}"),
            Witness::PatternOffset(i0) => write!(f, "i0={i0}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Treat any set of at most three states as distinguishable.
    pub assume_small_sets: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            assume_small_sets: true,
        }
    }
}

fn verdict_of(status: Status, reason: Reason, witness: Option<Witness>) -> Verdict {
    Verdict {
        status,
        reason,
        witness,
    }
}

/// Smallest nontrivial factorization `d = s·t`, if `d` is composite.
pub fn nontrivial_factorization(d: Dimension) -> Option<(u32, u32)> {
    let dv = d.get();
    (2..dv).find(|k| dv.is_multiple_of(*k)).map(|s| (s, dv / s))
}

/// Rule cascade, first match wins:
///
/// 1. at most three states (if `assume_small_sets`),
/// 2. a detector exists,
/// 3. `ΔS` is commutative,
/// 4. composite `d` and every element of `ΔS` has an invertible component,
/// 5. `ΔS = {(0, d/2), (d/2, 0), (d/2, d/2)}`,
/// 6. the half-column indistinguishability pattern,
/// 7. four states with `d = 6` or `d = 4` (complete classification),
///
/// and `Unknown` otherwise.
pub fn verdict(s: &GbsSet, opts: VerdictOptions) -> Result<Verdict> {
    use Reason::*;
    use Status::*;

    let d = s.d();
    let l = s.len();
    if l < 2 || l > d.get() as usize {
        return Err(Error::SetSizeOutOfRange {
            size: l,
            max: d.get(),
        });
    }
    if opts.assume_small_sets && l <= 3 {
        return Ok(verdict_of(Distinguishable, SmallSet, None));
    }

    let ds = diff_set(s);
    if let Some(&id) = detectors_of_diff(&ds).iter().next() {
        return Ok(verdict_of(Distinguishable, DetectorFound, Some(Witness::Mcs(id))));
    }
    if delta_commutative(s) {
        let cover = mcs_covering(&ds).map(Witness::Mcs);
        return Ok(verdict_of(Distinguishable, DeltaCommutative, cover));
    }
    if invertible_components(s) == ComponentCheck::Holds {
        // X^s and Z^t both lie in C_{s,0}, whose eigenbasis is a common one.
        let witness = nontrivial_factorization(d).map(|(a, _)| Witness::Mcs(McsId::new(a, 0)));
        return Ok(verdict_of(Distinguishable, InvertibleComponents, witness));
    }
    if is_special_diff_set(&ds) {
        return Ok(verdict_of(
            Distinguishable,
            SpecialDiffSet33,
            Some(Witness::State(StateHandle::PlusZeroOne)),
        ));
    }
    if d.is_even() {
        if let Some(i0) = lemma6_pattern(s)? {
            return Ok(verdict_of(
                Indistinguishable,
                Lemma6Pattern,
                Some(Witness::PatternOffset(i0)),
            ));
        }
    }
    if l == 4 && (d.get() == 6 || d.get() == 4) {
        return Ok(verdict_of(Indistinguishable, Theorem2Exhausted, None));
    }
    Ok(verdict_of(Unknown, Insufficient, None))
}
