//! Maximally commutative sets (MCSs) of generalized Pauli matrices.
//!
//! Every MCS on `C^d` has exactly `d` members and is one of
//!
//! * `C_{0,0} = {(0, y)}`, or
//! * `C_{i,j} = {(x, y) : i y - j x ≡ 0 (mod d), x ∈ i Z_d}` with `i | d`,
//!   `i < d`, `0 <= j < d / i`,
//!
//! giving `σ(d)` classes in total. [`mcs_containing`] lists the classes that
//! contain a given GPM directly from congruence solutions, without scanning
//! members.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{all_gpms, Gpm};
use crate::zmod::{gcd, gcd_d, mod_inverse, sigma_divisors, Dimension};

/// Label `(i, j)` of the maximally commutative set `C_{i,j}`.
///
/// `(0, 0)` is the distinguished class `{(0, y)}`; every other label has
/// `i | d`, `i < d` and `j < d / i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct McsId {
    pub i: u32,
    pub j: u32,
}

impl McsId {
    pub const C00: McsId = McsId { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        McsId { i, j }
    }

    pub fn is_valid(self, d: Dimension) -> bool {
        let d = d.get();
        self == McsId::C00 || (self.i >= 1 && self.i < d && d.is_multiple_of(self.i) && self.j < d / self.i)
    }

    pub fn validate(self, d: Dimension) -> Result<Self> {
        if self.is_valid(d) {
            Ok(self)
        } else {
            Err(Error::InvalidMcsId { id: self, d: d.get() })
        }
    }
}

impl fmt::Display for McsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{},{}", self.i, self.j)
    }
}

impl FromStr for McsId {
    type Err = Error;

    /// Accepts `C1,2`, `C_1,2` or `C_{1,2}`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('C')
            .ok_or_else(|| Error::Parse(format!("expected an MCS label like C1,2, got {s:?}")))?;
        let body = body
            .trim_start_matches('_')
            .trim_start_matches('{')
            .trim_end_matches('}');
        let (i, j) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected an MCS label like C1,2, got {s:?}")))?;
        let i = i.trim().parse().map_err(|_| Error::Parse(format!("expected an MCS label like C1,2, got {s:?}")))?;
        let j = j.trim().parse().map_err(|_| Error::Parse(format!("expected an MCS label like C1,2, got {s:?}")))?;
        Ok(McsId { i, j })
    }
}

/// A materialized MCS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mcs {
    pub id: McsId,
    pub members: BTreeSet<Gpm>,
}

impl Mcs {
    pub fn contains(&self, g: Gpm) -> bool {
        self.members.contains(&g)
    }
}

/// All MCS labels for `d`, `C_{0,0}` first and then lexicographic in `(i, j)`.
pub fn enumerate_mcs(d: Dimension) -> Vec<McsId> {
    let (divisors, _) = sigma_divisors(d);
    let mut out = vec![McsId::C00];
    // i = d would give C_{d,0} = {(0, y)}, which is C_{0,0} again.
    for i in divisors.into_iter().filter(|&i| i < d.get()) {
        out.extend((0..d.get() / i).map(|j| McsId { i, j }));
    }
    out
}

/// Does `C_{id}` contain `g`? Evaluates the defining condition directly.
pub fn mcs_has_member(id: McsId, g: Gpm, d: Dimension) -> bool {
    if id == McsId::C00 {
        return g.m == 0;
    }
    let det = id.i as i64 * g.n as i64 - id.j as i64 * g.m as i64;
    g.m.is_multiple_of(id.i) && d.reduce(det) == 0
}

pub fn materialize(id: McsId, d: Dimension) -> Result<Mcs> {
    id.validate(d)?;
    let members = all_gpms(d).filter(|&g| mcs_has_member(id, g, d)).collect();
    Ok(Mcs { id, members })
}

/// The set `MCS(m, n)` of MCS labels containing `g`, sorted.
///
/// For `m ≠ 0`, with `d_m = gcd(d, m)` and `d_{m,n} = gcd(d, m, n)`, the
/// admissible `i` are the divisors of `d_m` with `(d_m / i) | d_{m,n}`, and
/// for each such `i`
/// `j = (i n / d_m)·(m / d_m)^{-1} mod (d / d_m) + t·(d / d_m)`, `t < d_m / i`.
///
/// For `m = 0` the result is `C_{0,0}` plus every `C_{i,j}` with
/// `(d / i) | d_n`. The identity lies in every class.
pub fn mcs_containing(g: Gpm, d: Dimension) -> Vec<McsId> {
    let dv = d.get();
    let (m, n) = (d.reduce(g.m as i64), d.reduce(g.n as i64));
    if m == 0 && n == 0 {
        return enumerate_mcs(d);
    }
    let (divisors, _) = sigma_divisors(d);
    let mut out = Vec::new();
    if m == 0 {
        let dn = gcd_d(d, n);
        out.push(McsId::C00);
        for &i in divisors.iter().filter(|&&i| i < dv) {
            if dn.is_multiple_of(dv / i) {
                out.extend((0..dv / i).map(|j| McsId { i, j }));
            }
        }
    } else {
        let dm = gcd_d(d, m);
        let dmn = gcd(dm as u64, n as u64) as u32;
        let period = dv / dm;
        let inv = mod_inverse((m / dm) as i64, period).expect("m/d_m is a unit mod d/d_m");
        for &i in divisors.iter().filter(|&&i| dm.is_multiple_of(i)) {
            if !dmn.is_multiple_of(dm / i) {
                continue;
            }
            // i·n/d_m is an integer because (d_m/i) | n.
            let coef = n / (dm / i);
            let j0 = (coef as u64 * inv as u64 % period as u64) as u32;
            out.extend((0..dm / i).map(|t| McsId {
                i,
                j: j0 + t * period,
            }));
        }
    }
    out.sort_unstable();
    out
}
