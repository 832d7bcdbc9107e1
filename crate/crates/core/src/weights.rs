//! Weight sets `A ⊆ [1, n−1]` tied to a group exponent.

use crate::error::Error;
use crate::Result;

/// A set of weights modulo the group exponent, none of them zero.
///
/// The paper allows arbitrary integers avoiding multiples of `n`; weighted
/// sums depend only on residues because every element order divides `n`, so
/// weights are stored reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    residues: Vec<u64>,
    exponent: u64,
    is_full: bool,
}

impl WeightSet {
    pub fn new(raw: &[i64], exponent: u64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyWeightSet);
        }
        let mut residues = Vec::with_capacity(raw.len());
        for &w in raw {
            let r = w.rem_euclid(exponent as i64) as u64;
            if r == 0 {
                return Err(Error::ZeroWeight(w));
            }
            residues.push(r);
        }
        residues.sort_unstable();
        residues.dedup();
        let is_full = residues.len() as u64 == exponent - 1;
        Ok(WeightSet {
            residues,
            exponent,
            is_full,
        })
    }

    /// The fully weighted set `A = [1, n−1]`.
    pub fn full(exponent: u64) -> Self {
        assert!(exponent >= 2);
        WeightSet {
            residues: (1..exponent).collect(),
            exponent,
            is_full: true,
        }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_full(&self) -> bool {
        self.is_full
    }

    pub fn contains(&self, a: u64) -> bool {
        self.residues.binary_search(&(a % self.exponent)).is_ok()
    }

    /// The scaled set `bA = {b·a mod n}`, rejecting degenerate scalings.
    pub fn scaled(&self, b: u64) -> Result<WeightSet> {
        let raw: Vec<i64> = self.residues.iter().map(|&a| (a * b) as i64).collect();
        Self::new(&raw, self.exponent)
    }

    /// The same residues reinterpreted modulo a smaller exponent (used when
    /// passing `A` down to a scaled group `dG`).
    pub fn reduced_mod(&self, exponent: u64) -> Result<WeightSet> {
        let raw: Vec<i64> = self.residues.iter().map(|&a| a as i64).collect();
        Self::new(&raw, exponent)
    }

    pub fn literal(&self) -> String {
        if self.is_full {
            "full".to_string()
        } else {
            self.residues
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}
