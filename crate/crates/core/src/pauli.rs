//! Index-level algebra of generalized Pauli matrices `X^m Z^n`.
//!
//! Phases are never tracked here: a [`Gpm`] names `X^m Z^n` up to a global
//! phase, which is all the commutation structure depends on.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::Dimension;

/// Index pair `(m, n)` of the generalized Pauli matrix `X^m Z^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gpm {
    pub m: u32,
    pub n: u32,
}

impl Gpm {
    pub const IDENTITY: Gpm = Gpm { m: 0, n: 0 };

    /// Builds the pair with both residues reduced into `[0, d)`.
    pub fn new(m: i64, n: i64, d: Dimension) -> Self {
        Gpm {
            m: d.reduce(m),
            n: d.reduce(n),
        }
    }

    pub fn is_identity(self) -> bool {
        self.m == 0 && self.n == 0
    }

    pub fn neg(self, d: Dimension) -> Self {
        Gpm::new(-(self.m as i64), -(self.n as i64), d)
    }

    pub fn add(self, other: Gpm, d: Dimension) -> Self {
        Gpm::new(
            self.m as i64 + other.m as i64,
            self.n as i64 + other.n as i64,
            d,
        )
    }

    pub fn sub(self, other: Gpm, d: Dimension) -> Self {
        Gpm::new(
            self.m as i64 - other.m as i64,
            self.n as i64 - other.n as i64,
            d,
        )
    }

    /// Symplectic form `n_a m_b - m_a n_b mod d`; zero iff the two commute.
    pub fn symplectic(self, other: Gpm, d: Dimension) -> u32 {
        let v = self.n as i64 * other.m as i64 - self.m as i64 * other.n as i64;
        d.reduce(v)
    }

    fn check(self, d: Dimension) -> Result<Self> {
        if self.m >= d.get() || self.n >= d.get() {
            return Err(Error::Parse(format!("{self} is not canonical for d = {d}")));
        }
        Ok(self)
    }
}

impl fmt::Display for Gpm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.m, self.n)
    }
}

impl FromStr for Gpm {
    type Err = Error;

    /// Parses `"m,n"` (whitespace tolerated, parentheses optional). Residues
    /// are not reduced here; see [`GbsSet::parse`].
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (m, n) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"m,n\", got {s:?}")))?;
        let m = m.trim().parse().map_err(|_| Error::Parse(format!("expected \"m,n\", got {s:?}")))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("expected \"m,n\", got {s:?}")))?;
        Ok(Gpm { m, n })
    }
}

/// `true` iff `X^{m_a}Z^{n_a}` and `X^{m_b}Z^{n_b}` commute.
pub fn commutes(a: Gpm, b: Gpm, d: Dimension) -> bool {
    a.symplectic(b, d) == 0
}

/// All of `Z_d × Z_d` in lexicographic order.
pub fn all_gpms(d: Dimension) -> impl Iterator<Item = Gpm> {
    let n = d.get();
    (0..n).flat_map(move |m| (0..n).map(move |k| Gpm { m, n: k }))
}

/// Elements of `Z_d × Z_d` commuting with `g`.
pub fn commutant(g: Gpm, d: Dimension) -> BTreeSet<Gpm> {
    all_gpms(d).filter(|&h| commutes(g, h, d)).collect()
}

/// An ordered set of distinct GPM labels describing the GBS set
/// `{(I ⊗ X^{m_i} Z^{n_i})|Φ⟩}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbsSet {
    d: Dimension,
    elements: Vec<Gpm>,
}

impl GbsSet {
    /// Validates that all residues are canonical and pairwise distinct.
    pub fn new(d: Dimension, elements: Vec<Gpm>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut seen = BTreeSet::new();
        for &g in &elements {
            g.check(d)?;
            if !seen.insert(g) {
                return Err(Error::DuplicateElement(g));
            }
        }
        Ok(GbsSet { d, elements })
    }

    /// Builds a set from raw integer pairs, reducing them mod `d` first.
    pub fn from_pairs(d: Dimension, pairs: &[(i64, i64)]) -> Result<Self> {
        let elements = pairs.iter().map(|&(m, n)| Gpm::new(m, n, d)).collect();
        GbsSet::new(d, elements)
    }

    /// Parses `"m,n;m,n;..."`. Entries are reduced mod `d`.
    pub fn parse(d: Dimension, spec: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let raw: Gpm = part.parse()?;
            elements.push(Gpm::new(raw.m as i64, raw.n as i64, d));
        }
        GbsSet::new(d, elements)
    }

    pub fn d(&self) -> Dimension {
        self.d
    }

    pub fn elements(&self) -> &[Gpm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: Gpm) -> bool {
        self.elements.contains(&g)
    }

    /// Order-insensitive comparison.
    pub fn same_elements(&self, other: &GbsSet) -> bool {
        self.d == other.d && self.as_set() == other.as_set()
    }

    pub fn as_set(&self) -> BTreeSet<Gpm> {
        self.elements.iter().copied().collect()
    }
}

impl fmt::Display for GbsSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(Gpm::to_string).collect();
        write!(f, "{{{}}}", parts.join(";"))
    }
}

/// The difference set `ΔS = {g_j - g_k : j ≠ k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSet {
    d: Dimension,
    elements: BTreeSet<Gpm>,
}

impl DiffSet {
    pub fn d(&self) -> Dimension {
        self.d
    }

    pub fn elements(&self) -> &BTreeSet<Gpm> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: Gpm) -> bool {
        self.elements.contains(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = Gpm> + '_ {
        self.elements.iter().copied()
    }

    /// One element from each `{g, -g}` pair (the lexicographically smaller one).
    pub fn pair_representatives(&self) -> Vec<Gpm> {
        self.iter().filter(|&g| g <= g.neg(self.d)).collect()
    }
}

pub fn diff_set(s: &GbsSet) -> DiffSet {
    let d = s.d();
    let mut elements = BTreeSet::new();
    for (j, &a) in s.elements().iter().enumerate() {
        for (k, &b) in s.elements().iter().enumerate() {
            if j != k {
                elements.insert(a.sub(b, d));
            }
        }
    }
    DiffSet { d, elements }
}

/// Translates the set so its first element becomes `(0, 0)`. The difference
/// set is unchanged.
pub fn standardize(s: &GbsSet) -> GbsSet {
    let d = s.d();
    let first = s.elements()[0];
    let elements = s.elements().iter().map(|g| g.sub(first, d)).collect();
    GbsSet::new(d, elements).expect("translation preserves distinctness")
}
