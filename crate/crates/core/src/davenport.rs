//! Exact weighted Davenport constants by pruned DFS over canonical
//! zero-sum-free sequences, the constructive zero-sum family behind the
//! completeness bound, and verification of the scaling identities.

use itertools::Itertools;
use num_integer::Integer;

use crate::error::Error;
use crate::group::{GroupElement, GroupSpec};
use crate::sequence::{Sequence, SubseqIndex};
use crate::subset::GroupSubset;
use crate::sums::{extend_subsums, is_zero_sum_free, reachable_set_index};
use crate::weights::WeightSet;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ExhaustiveSearch,
    PredictedFormula,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ExhaustiveSearch => "exhaustive-search",
            Provenance::PredictedFormula => "predicted-formula",
        }
    }
}

/// `D_A(G)` with a longest zero-sum-free witness sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DavenportResult {
    pub value: usize,
    pub witness: Sequence,
    pub provenance: Provenance,
}

/// A single weighted zero-sum subsequence: positions into the ambient
/// sequence with one weight per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedZeroSumWitness {
    pub positions: Vec<usize>,
    pub weights: Vec<u64>,
}

/// Re-evaluates a witness: `Σ a_i g_i = 0`.
pub fn verify_witness(group: &GroupSpec, seq: &Sequence, w: &WeightedZeroSumWitness) -> bool {
    if w.positions.len() != w.weights.len() {
        return false;
    }
    let sum = w
        .positions
        .iter()
        .zip(&w.weights)
        .fold(0usize, |acc, (&p, &a)| {
            group.add_index(acc, group.scalar_mul_index(a, group.encode(seq.get(p))))
        });
    sum == 0
}

struct ZsfSearch<'a> {
    group: &'a GroupSpec,
    reaches: Vec<GroupSubset>,
    best_len: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl ZsfSearch<'_> {
    fn dfs(&mut self, start: usize, sigma: &GroupSubset) -> Result<()> {
        if self.current.len() > self.best_len {
            self.best_len = self.current.len();
            self.best = self.current.clone();
        }
        if self.current.len() == self.group.order() as usize {
            // Zero-sum-free sequences are strictly shorter than |G|
            // (D_A(G) ≤ D_{{a}}(G) ≤ |G| for any a ∈ A).
            return Err(Error::SearchCapExceeded {
                cap: self.group.order() as usize,
            });
        }
        for g in start..self.group.order() as usize {
            if self.reaches[g].contains_zero() {
                continue;
            }
            let extended = extend_subsums(self.group, sigma, &self.reaches[g]);
            if !extended.contains_zero() {
                self.current.push(g);
                self.dfs(g, &extended)?;
                self.current.pop();
            }
        }
        Ok(())
    }
}

/// The maximum length of an `A`-weighted zero-sum-free sequence over `G`,
/// with the lexicographically smallest witness of that length.
///
/// The DFS runs over canonical multisets (nondecreasing element encodings)
/// carrying `Σ_A` incrementally and pruning as soon as 0 becomes a subsum.
pub fn longest_zero_sum_free(group: &GroupSpec, weights: &WeightSet) -> Result<(usize, Sequence)> {
    let order = group.order() as usize;
    let reaches = (0..order)
        .map(|i| reachable_set_index(group, weights, i))
        .collect();
    let mut search = ZsfSearch {
        group,
        reaches,
        best_len: 0,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.dfs(0, &GroupSubset::empty(group))?;
    Ok((search.best_len, Sequence::from_indices(group, &search.best)))
}

/// `D_A(G)` by exhaustive search: one more than the longest zero-sum-free
/// length.
pub fn davenport(group: &GroupSpec, weights: &WeightSet) -> Result<DavenportResult> {
    let (len, witness) = longest_zero_sum_free(group, weights)?;
    Ok(DavenportResult {
        value: len + 1,
        witness,
        provenance: Provenance::ExhaustiveSearch,
    })
}

/// The closed form `D_A(G) = r + 1` for the fully weighted case.
pub fn predicted_davenport_full(group: &GroupSpec) -> usize {
    group.rank() + 1
}

/// A maximum-cardinality index set whose induced subsequence is
/// zero-sum-free, tie-broken lexicographically smallest. λ always qualifies.
pub fn find_maximal_zsf_subsequence(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
) -> SubseqIndex {
    let m = seq.len();
    for k in (1..=m).rev() {
        for combo in (0..m).combinations(k) {
            let idx = SubseqIndex::from_positions(m, &combo);
            if is_zero_sum_free(group, weights, &seq.induced(&idx)) {
                return idx;
            }
        }
    }
    SubseqIndex::empty(m)
}

/// A weighted representation `a_g·g = Σ_{i∈I} a_i g_i` over a basis
/// sequence `T`; indices are positions within `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub weight: u64,
    pub indices: Vec<usize>,
    pub coeffs: Vec<u64>,
}

fn coeffs_for_target(
    group: &GroupSpec,
    weights: &WeightSet,
    basis: &[usize],
    chosen: &[usize],
    target: usize,
) -> Option<Vec<u64>> {
    fn rec(
        group: &GroupSpec,
        weights: &WeightSet,
        basis: &[usize],
        chosen: &[usize],
        pos: usize,
        acc: usize,
        coeffs: &mut Vec<u64>,
        target: usize,
    ) -> bool {
        if pos == chosen.len() {
            return acc == target;
        }
        for &a in weights.residues() {
            let term = group.scalar_mul_index(a, basis[chosen[pos]]);
            coeffs.push(a);
            if rec(
                group,
                weights,
                basis,
                chosen,
                pos + 1,
                group.add_index(acc, term),
                coeffs,
                target,
            ) {
                return true;
            }
            coeffs.pop();
        }
        false
    }
    let mut coeffs = Vec::with_capacity(chosen.len());
    rec(group, weights, basis, chosen, 0, 0, &mut coeffs, target).then_some(coeffs)
}

fn subsets_lex<R>(
    len: usize,
    visit: &mut impl FnMut(&[usize]) -> Option<R>,
) -> Option<R> {
    fn rec<R>(
        len: usize,
        start: usize,
        current: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> Option<R>,
    ) -> Option<R> {
        for i in start..len {
            current.push(i);
            if let Some(r) = visit(current) {
                return Some(r);
            }
            if let Some(r) = rec(len, i + 1, current, visit) {
                return Some(r);
            }
            current.pop();
        }
        None
    }
    rec(len, 0, &mut Vec::new(), visit)
}

/// Finds weights `a_g ∈ A`, `a_i ∈ A` with `a_g·g = Σ_{i∈I} a_i g_i` for a
/// zero-sum-free basis `T`. Representations with `I = ∅` (some weight kills
/// `g` outright) are preferred; otherwise the smallest `(a_g, I)` in
/// lexicographic order is returned.
pub fn represent_in_basis(
    group: &GroupSpec,
    weights: &WeightSet,
    basis_seq: &Sequence,
    g: &GroupElement,
) -> Result<Representation> {
    let gi = group.encode(g);
    for &a in weights.residues() {
        if group.scalar_mul_index(a, gi) == 0 {
            return Ok(Representation {
                weight: a,
                indices: Vec::new(),
                coeffs: Vec::new(),
            });
        }
    }
    let basis: Vec<usize> = basis_seq.element_indices(group);
    for &a in weights.residues() {
        let target = group.scalar_mul_index(a, gi);
        let found = subsets_lex(basis.len(), &mut |chosen: &[usize]| {
            coeffs_for_target(group, weights, &basis, chosen, target)
                .map(|coeffs| (chosen.to_vec(), coeffs))
        });
        if let Some((indices, coeffs)) = found {
            return Ok(Representation {
                weight: a,
                indices,
                coeffs,
            });
        }
    }
    Err(Error::NotRepresentable)
}

/// All distinct index sets `I` (including ∅) admitting some representation
/// `a_g·g = Σ_{i∈I} a_i g_i`, in lexicographic order.
pub fn representation_index_sets(
    group: &GroupSpec,
    weights: &WeightSet,
    basis_seq: &Sequence,
    g: &GroupElement,
) -> Vec<Vec<usize>> {
    let gi = group.encode(g);
    let basis: Vec<usize> = basis_seq.element_indices(group);
    let mut out: Vec<Vec<usize>> = Vec::new();
    if weights
        .residues()
        .iter()
        .any(|&a| group.scalar_mul_index(a, gi) == 0)
    {
        out.push(Vec::new());
    }
    subsets_lex::<()>(basis.len(), &mut |chosen: &[usize]| {
        let hit = weights.residues().iter().any(|&a| {
            let target = group.scalar_mul_index(a, gi);
            coeffs_for_target(group, weights, &basis, chosen, target).is_some()
        });
        if hit {
            out.push(chosen.to_vec());
        }
        None
    });
    out
}

/// Builds the `2^{|W|}` distinct weighted zero-sum subsequences of `S`
/// obtained from a maximal zero-sum-free part `T` and the representations
/// of the leftover elements `W = S·T^{-1}`.
///
/// For each `U ⊆ W` the combined coefficients `c_i = Σ_{g∈U, i∈I_g} a_i`
/// (mod n) are cancelled by the complementary weights `n − c_i` on `T`;
/// positions whose combined coefficient vanishes drop out of the witness.
/// Every witness is re-verified before being returned.
pub fn construct_zero_sum_family(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
) -> Result<Vec<WeightedZeroSumWitness>> {
    if !weights.is_full() {
        return Err(Error::FullWeightsRequired);
    }
    let n = group.exponent();
    let t_index = find_maximal_zsf_subsequence(group, weights, seq);
    let t_positions = t_index.positions();
    let w_positions = t_index.complement().positions();
    if w_positions.len() > 26 {
        return Err(Error::FamilyTooLarge {
            extras: w_positions.len(),
        });
    }
    let t_seq = seq.induced(&t_index);
    let reps: Vec<Representation> = w_positions
        .iter()
        .map(|&wp| represent_in_basis(group, weights, &t_seq, seq.get(wp)))
        .collect::<Result<_>>()?;

    let mut family = Vec::with_capacity(1 << w_positions.len());
    for mask in 0u64..1 << w_positions.len() {
        let mut combined = vec![0u64; t_positions.len()];
        let mut positions = Vec::new();
        let mut ws = Vec::new();
        for (j, &wp) in w_positions.iter().enumerate() {
            if mask >> j & 1 == 1 {
                positions.push(wp);
                ws.push(reps[j].weight);
                for (&ti, &c) in reps[j].indices.iter().zip(&reps[j].coeffs) {
                    combined[ti] = (combined[ti] + c) % n;
                }
            }
        }
        for (ti, &c) in combined.iter().enumerate() {
            if c != 0 {
                positions.push(t_positions[ti]);
                ws.push(n - c);
            }
        }
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by_key(|&k| positions[k]);
        let witness = WeightedZeroSumWitness {
            positions: order.iter().map(|&k| positions[k]).collect(),
            weights: order.iter().map(|&k| ws[k]).collect(),
        };
        if !verify_witness(group, seq, &witness) {
            return Err(Error::Internal(format!(
                "family witness for U-mask {mask} does not sum to zero"
            )));
        }
        family.push(witness);
    }
    Ok(family)
}

/// Both sides of the scaling identity `D_{bA}(G) = D_A(gcd(b,n)G)`,
/// computed by exhaustive search.
#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub b: u64,
    pub gcd: u64,
    pub scaled_weights: WeightSet,
    pub scaled_group: GroupSpec,
    pub lhs: DavenportResult,
    pub rhs: DavenportResult,
    pub equal: bool,
}

pub fn verify_scaling(group: &GroupSpec, weights: &WeightSet, b: u64) -> Result<ScalingReport> {
    let scaled_weights = weights.scaled(b)?;
    let d = b.gcd(&group.exponent());
    let scaled = group.scaled_group(d)?;
    let rhs_weights = weights.reduced_mod(scaled.group.exponent())?;
    let lhs = davenport(group, &scaled_weights)?;
    let rhs = davenport(&scaled.group, &rhs_weights)?;
    let equal = lhs.value == rhs.value;
    Ok(ScalingReport {
        b,
        gcd: d,
        scaled_weights,
        scaled_group: scaled.group,
        lhs,
        rhs,
        equal,
    })
}

/// The subgroup corollary: when `A ∪ {0}` is a proper subgroup `⟨d⟩` of
/// `Z_n`, `D_A(G) = D_{A'}(dG)` with `A = dA'` and `A'` full for `Z_{n/d}`.
#[derive(Debug, Clone)]
pub struct SubgroupReport {
    pub d: u64,
    pub reduced_weights: WeightSet,
    pub scaled_group: GroupSpec,
    pub lhs: DavenportResult,
    pub rhs: DavenportResult,
    pub equal: bool,
}

pub fn verify_subgroup_corollary(group: &GroupSpec, weights: &WeightSet) -> Result<SubgroupReport> {
    let n = group.exponent();
    let closed = weights.residues().iter().all(|&a| {
        weights.residues().iter().all(|&b| {
            let s = (a + b) % n;
            s == 0 || weights.contains(s)
        })
    });
    let proper = (weights.residues().len() as u64) + 1 < n;
    if !closed || !proper {
        return Err(Error::NotASubgroup);
    }
    let d = weights.residues()[0];
    debug_assert_eq!(n % d, 0);
    debug_assert_eq!(weights.residues().len() as u64, n / d - 1);
    let a_prime: Vec<i64> = weights.residues().iter().map(|&a| (a / d) as i64).collect();
    let scaled = group.scaled_group(d)?;
    let reduced_weights = WeightSet::new(&a_prime, scaled.group.exponent())?;
    let lhs = davenport(group, weights)?;
    let rhs = davenport(&scaled.group, &reduced_weights)?;
    let equal = lhs.value == rhs.value;
    Ok(SubgroupReport {
        d,
        reduced_weights,
        scaled_group: scaled.group,
        lhs,
        rhs,
        equal,
    })
}
