//! The end-to-end analysis pipeline and its serializable report.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    detectors_of, discriminant_set, f_equivalent, mcs_covering, verdict, FEquivalenceWitness,
    Reason, StateHandle, Status, Verdict, VerdictOptions, Witness,
};
use crate::error::Result;
use crate::mcs::McsId;
use crate::numeric::{
    common_eigenbasis, feasibility_search, protocol_verify, FeasibilityReport, SearchConfig,
    StateVector,
};
use crate::pauli::{diff_set, GbsSet, Gpm};

pub const REPORT_VERSION: u32 = 1;

/// Verdict with its witness rendered as text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub status: Status,
    pub reason: Reason,
    pub witness: Option<String>,
}

impl From<&Verdict> for VerdictSummary {
    fn from(v: &Verdict) -> Self {
        VerdictSummary {
            status: v.status,
            reason: v.reason,
            witness: v.witness.map(|w| w.to_string()),
        }
    }
}

/// Floating-point checks; present only when requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericSection {
    pub seed: u64,
    /// How the protocol states were built, e.g. `eigenbasis of C2,0`.
    pub witness_source: Option<String>,
    pub eigenbasis_residual: Option<f64>,
    pub protocol_residual: Option<f64>,
    pub feasibility: Option<FeasibilityReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub report_version: u32,
    pub version: String,
    pub input_set: Vec<[u32; 2]>,
    pub d: u32,
    pub delta_set: Vec<[u32; 2]>,
    pub discriminant_set: Vec<[u32; 2]>,
    pub detector_set: Vec<String>,
    pub f_equivalence_witness: FEquivalenceWitness,
    pub verdict: VerdictSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AnalyzeOptions {
    pub verdict: VerdictOptions,
    /// Build the witness states implied by the verdict and check them.
    pub verify: bool,
    /// Run the feasibility optimizer with this configuration.
    pub search: Option<SearchConfig>,
    /// Seed for eigenbasis coefficient draws.
    pub seed: u64,
}

/// Witness states for a distinguishable verdict and how well they work.
#[derive(Debug, Clone)]
pub struct ProtocolCheck {
    pub source: String,
    pub states: Vec<StateVector>,
    pub eigenbasis_residual: Option<f64>,
    /// Worst `protocol_verify` value over `states`.
    pub protocol_residual: f64,
}

fn pairs(gpms: impl IntoIterator<Item = Gpm>) -> Vec<[u32; 2]> {
    gpms.into_iter().map(|g| [g.m, g.n]).collect()
}

enum Construction {
    Eigenbasis(McsId),
    Superposition(McsId),
    Named(StateHandle),
}

fn construction(s: &GbsSet, v: &Verdict) -> Option<Construction> {
    match (v.reason, v.witness) {
        (Reason::DetectorFound | Reason::InvertibleComponents, Some(Witness::Mcs(id))) => {
            Some(Construction::Eigenbasis(id))
        }
        (Reason::DeltaCommutative, Some(Witness::Mcs(id))) => Some(Construction::Superposition(id)),
        (_, Some(Witness::State(h))) => Some(Construction::Named(h)),
        (Reason::SmallSet, None) => {
            if let Some(&id) = detectors_of(s).iter().next() {
                Some(Construction::Eigenbasis(id))
            } else {
                mcs_covering(&diff_set(s)).map(Construction::Superposition)
            }
        }
        _ => None,
    }
}

/// Builds the states a one-way protocol would use for `s` and measures how
/// far their translates are from orthogonal. `None` when the verdict carries
/// no constructive witness.
///
/// * detector `C`: every vector of the common eigenbasis of `C`,
/// * `ΔS ⊆ C`: the uniform superposition of that eigenbasis, whose expectation
///   on any non-identity GPM `U ∈ C` is `tr(U)/d = 0`,
/// * named states as given.
pub fn protocol_check(s: &GbsSet, v: &Verdict, seed: u64) -> Result<Option<ProtocolCheck>> {
    let d = s.d();
    let Some(c) = construction(s, v) else {
        return Ok(None);
    };
    let (source, states, eigenbasis_residual) = match c {
        Construction::Eigenbasis(id) => {
            let eig = common_eigenbasis(id, d, seed)?;
            (format!("eigenbasis of {id}"), eig.basis, Some(eig.residual))
        }
        Construction::Superposition(id) => {
            let eig = common_eigenbasis(id, d, seed)?;
            let sum = eig
                .basis
                .iter()
                .fold(nalgebra::DVector::zeros(d.get() as usize), |acc, b| acc + b.amplitudes());
            let v = StateVector::new(sum)?;
            (format!("uniform superposition of eigenbasis of {id}"), vec![v], Some(eig.residual))
        }
        Construction::Named(StateHandle::PlusZeroOne) => {
            (StateHandle::PlusZeroOne.to_string(), vec![StateVector::plus_zero_one(d)], None)
        }
    };
    let protocol_residual = states
        .iter()
        .map(|b| protocol_verify(s, b))
        .fold(0.0, f64::max);
    Ok(Some(ProtocolCheck {
        source,
        states,
        eigenbasis_residual,
        protocol_residual,
    }))
}

/// Runs the exact pipeline, plus the numeric checks selected in `opts`.
pub fn analyze(s: &GbsSet, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let v = verdict(s, opts.verdict)?;
    let numeric = if opts.verify || opts.search.is_some() {
        let check = if opts.verify {
            protocol_check(s, &v, opts.seed)?
        } else {
            None
        };
        Some(NumericSection {
            seed: opts.seed,
            witness_source: check.as_ref().map(|c| c.source.clone()),
            eigenbasis_residual: check.as_ref().and_then(|c| c.eigenbasis_residual),
            protocol_residual: check.as_ref().map(|c| c.protocol_residual),
            feasibility: opts.search.map(|cfg| feasibility_search(s, &cfg)),
        })
    } else {
        None
    };
    Ok(AnalysisReport {
        report_version: REPORT_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_set: pairs(s.elements().iter().copied()),
        d: s.d().get(),
        delta_set: pairs(diff_set(s).iter()),
        discriminant_set: pairs(discriminant_set(s)),
        detector_set: detectors_of(s).iter().map(McsId::to_string).collect(),
        f_equivalence_witness: f_equivalent(s),
        verdict: VerdictSummary::from(&v),
        numeric,
    })
}
