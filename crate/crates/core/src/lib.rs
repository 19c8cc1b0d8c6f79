//! Exact detectors and one-way LOCC verdicts for sets of generalized Bell
//! states on `C^d ⊗ C^d`, with a floating-point layer that checks the
//! resulting discrimination protocols.
//!
//! The exact side works on index pairs `(m, n)` standing for `X^m Z^n`:
//!
//! * [`zmod`]: residue arithmetic and linear congruences,
//! * [`pauli`]: commutation, difference sets, translation,
//! * [`mcs`]: maximally commutative sets and which of them contain a GPM,
//! * [`analysis`]: detectors, discriminant sets, F-equivalence, verdicts.
//!
//! [`numeric`] builds the matrices, common eigenbases and the feasibility
//! search. [`corpus`] embeds reference tables and regenerates them.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod mcs;
pub mod numeric;
pub mod pauli;
pub mod report;
pub mod zmod;

pub use analysis::{
    delta_commutative, detection_range, detectors_of, discriminant_set, f_equivalent,
    invertible_components, lemma6_pattern, verdict, ComponentCheck, DetectorSet,
    FEquivalenceWitness, Reason, Status, Verdict, VerdictOptions, Witness,
};
pub use corpus::{representatives, reproduce_table, RepresentativeCatalog, TableDiff, TableId};
pub use error::{Error, Result};
pub use report::{analyze, AnalysisReport, AnalyzeOptions};
pub use mcs::{enumerate_mcs, materialize, mcs_containing, Mcs, McsId};
pub use pauli::{commutant, commutes, diff_set, standardize, DiffSet, GbsSet, Gpm};
pub use zmod::{gcd_d, sigma_divisors, solve_congruence, CongruenceSolution, Dimension};
