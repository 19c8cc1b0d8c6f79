//! Residue arithmetic over `Z_d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The local dimension `d` of each party. Always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Canonical representative of `x` in `[0, d)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn is_prime(self) -> bool {
        let d = self.0;
        (2..).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p))
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `d_m = gcd(d, m)`; `m = 0` gives `d`.
pub fn gcd_d(d: Dimension, m: u32) -> u32 {
    gcd(d.get() as u64, d.reduce(m as i64) as u64) as u32
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `modulus`, if `gcd(a, modulus) = 1`.
///
/// Modulus 1 is allowed (the ring is trivial and every element inverts to 0).
pub fn mod_inverse(a: i64, modulus: u32) -> Option<u32> {
    if modulus == 0 {
        return None;
    }
    let n = modulus as i64;
    let (g, x, _) = extended_gcd(a.rem_euclid(n), n);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n) as u32)
}

/// Positive divisors of `d` in ascending order together with their sum `σ(d)`.
pub fn sigma_divisors(d: Dimension) -> (Vec<u32>, u64) {
    let d = d.get();
    let divisors: Vec<u32> = (1..=d).filter(|k| d.is_multiple_of(*k)).collect();
    let sigma = divisors.iter().map(|&k| k as u64).sum();
    (divisors, sigma)
}

/// Solution set of `a x ≡ b (mod d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSolution {
    pub solvable: bool,
    pub x0: u32,
    pub period: u32,
    pub class_count: u32,
}

impl CongruenceSolution {
    /// All solutions in `[0, d)`, ascending. Empty when unsolvable.
    pub fn solutions(&self) -> Vec<u32> {
        if !self.solvable {
            return Vec::new();
        }
        let mut xs: Vec<u32> = (0..self.class_count)
            .map(|t| self.x0 + t * self.period)
            .collect();
        xs.sort_unstable();
        xs
    }
}

/// Solves `a x ≡ b (mod d)`.
///
/// With `c = gcd(a, d)`, the equation is solvable iff `c | b`; then
/// `x0 = (b/c)·(a/c)^{-1} mod (d/c)` and the solutions are `x0 + t·d/c` for
/// `t = 0..c`. `a = 0` gives `c = d`, so `0·x ≡ 0` has all `d` residues as solutions.
pub fn solve_congruence(a: u32, b: u32, d: Dimension) -> CongruenceSolution {
    let a = d.reduce(a as i64);
    let b = d.reduce(b as i64);
    let c = gcd_d(d, a);
    let period = d.get() / c;
    if !b.is_multiple_of(c) {
        return CongruenceSolution {
            solvable: false,
            x0: 0,
            period,
            class_count: c,
        };
    }
    // a/c is a unit modulo d/c by construction.
    let inv = mod_inverse((a / c) as i64, period).expect("a/c is invertible mod d/c");
    let x0 = ((b / c) as u64 * inv as u64 % period as u64) as u32;
    CongruenceSolution {
        solvable: true,
        x0,
        period,
        class_count: c,
    }
}
