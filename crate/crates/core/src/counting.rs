//! Exact computation of `N_{A,g}(S)`: the number of index subsets whose
//! achievable set contains `g`. A state-compressed dynamic program over
//! achievable sets, cross-checked against naive subset enumeration.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::group::GroupSpec;
use crate::sequence::Sequence;
use crate::subset::GroupSubset;
use crate::sums::reachable_set;
use crate::weights::WeightSet;
use crate::Result;

/// Resource limits for the counting engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountCaps {
    /// Maximum sequence length for naive subset enumeration.
    pub naive_cap: usize,
    /// Maximum number of distinct achievable-set states in the DP ledger.
    pub state_budget: usize,
}

impl Default for CountCaps {
    fn default() -> Self {
        CountCaps {
            naive_cap: 24,
            state_budget: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Dp,
    Naive,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::Naive => "naive",
        }
    }
}

/// Position of `N_{A,0}(S)` relative to the completeness bound
/// `2^{|S|−D_A(G)+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    StrictlyAbove,
    Extremal,
    BelowBound,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::StrictlyAbove => "strictly-above",
            Classification::Extremal => "extremal",
            Classification::BelowBound => "below-bound",
        }
    }
}

/// An exact count together with the completeness bound it is measured
/// against. `bound` is `None` when the bound exponent is negative (the bound
/// is then a fraction below 1 and any count clears it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigUint,
    pub bound_exponent: i64,
    pub bound: Option<BigUint>,
    pub classification: Classification,
}

impl CountResult {
    /// Exact decimal rendering of the bound, `1/2^k` for negative exponents.
    pub fn bound_string(&self) -> String {
        match &self.bound {
            Some(b) => b.to_string(),
            None => format!("1/{}", BigUint::one() << (-self.bound_exponent) as usize),
        }
    }
}

fn reach_sets(group: &GroupSpec, weights: &WeightSet, seq: &Sequence) -> Vec<GroupSubset> {
    seq.iter().map(|g| reachable_set(group, weights, g)).collect()
}

fn naive_rec(
    group: &GroupSpec,
    reaches: &[GroupSubset],
    sigma: &GroupSubset,
    target: usize,
) -> BigUint {
    match reaches.split_first() {
        None => {
            if sigma.contains_index(target) {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        }
        Some((first, rest)) => {
            let with = sigma.sumset(first, group);
            if rest.len() >= 16 {
                let (a, b) = rayon::join(
                    || naive_rec(group, rest, sigma, target),
                    || naive_rec(group, rest, &with, target),
                );
                a + b
            } else {
                naive_rec(group, rest, sigma, target)
                    + naive_rec(group, rest, &with, target)
            }
        }
    }
}

/// `N_{A,g}(S)` by direct enumeration of all `2^{|S|}` index subsets.
///
/// The empty subset contributes exactly when `g = 0`, per the convention
/// that the empty weighted sum is 0.
pub fn count_naive(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    target: usize,
    caps: &CountCaps,
) -> Result<BigUint> {
    if seq.len() > caps.naive_cap {
        return Err(Error::TooLongForNaive {
            len: seq.len(),
            cap: caps.naive_cap,
        });
    }
    let reaches = reach_sets(group, weights, seq);
    Ok(naive_rec(group, &reaches, &GroupSubset::zero_only(group), target))
}

fn dp_ledger(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    caps: &CountCaps,
) -> Result<HashMap<GroupSubset, BigUint>> {
    let mut ledger: HashMap<GroupSubset, BigUint> = HashMap::new();
    ledger.insert(GroupSubset::zero_only(group), BigUint::one());
    for g in seq.iter() {
        let reach = reachable_set(group, weights, g);
        let mut next = HashMap::with_capacity(ledger.len() * 2);
        for (state, count) in &ledger {
            // Exclude this position: the state carries over.
            *next.entry(state.clone()).or_insert_with(BigUint::zero) += count;
            // Include it: the achievable set grows by one sumset.
            let included = state.sumset(&reach, group);
            *next.entry(included).or_insert_with(BigUint::zero) += count;
        }
        if next.len() > caps.state_budget {
            return Err(Error::StateBudgetExceeded {
                budget: caps.state_budget,
            });
        }
        ledger = next;
    }
    Ok(ledger)
}

/// `N_{A,g}(S)` by the achievable-set dynamic program. Exactly equal to
/// [`count_naive`] wherever both apply.
pub fn count_dp(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    target: usize,
    caps: &CountCaps,
) -> Result<BigUint> {
    let ledger = dp_ledger(group, weights, seq, caps)?;
    let mut total = BigUint::zero();
    for (state, count) in &ledger {
        if state.contains_index(target) {
            total += count;
        }
    }
    Ok(total)
}

/// `N_{A,g}(S)` for every `g` in one DP pass, indexed by element encoding.
pub fn count_all(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    caps: &CountCaps,
) -> Result<Vec<BigUint>> {
    let ledger = dp_ledger(group, weights, seq, caps)?;
    let mut totals = vec![BigUint::zero(); group.order() as usize];
    for (state, count) in &ledger {
        for i in state.iter_indices() {
            totals[i] += count;
        }
    }
    Ok(totals)
}

/// Counts with the DP, falling back to naive enumeration when the state
/// budget is exhausted.
pub fn count_auto(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    target: usize,
    caps: &CountCaps,
) -> Result<(BigUint, Engine)> {
    match count_dp(group, weights, seq, target, caps) {
        Ok(c) => Ok((c, Engine::Dp)),
        Err(Error::StateBudgetExceeded { .. }) => {
            count_naive(group, weights, seq, target, caps).map(|c| (c, Engine::Naive))
        }
        Err(e) => Err(e),
    }
}

/// Measures `N_{A,0}(S)` against the completeness bound
/// `2^{|S|−D_A(G)+1}`. A below-bound classification is a falsification
/// certificate for the completeness theorem (full weights) or the closing
/// conjecture (general weights).
pub fn completeness_margin(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    davenport_value: usize,
    caps: &CountCaps,
) -> Result<CountResult> {
    let (count, _) = count_auto(group, weights, seq, 0, caps)?;
    Ok(margin_from_count(count, seq.len(), davenport_value))
}

pub(crate) fn margin_from_count(
    count: BigUint,
    seq_len: usize,
    davenport_value: usize,
) -> CountResult {
    let bound_exponent = seq_len as i64 - davenport_value as i64 + 1;
    let bound = (bound_exponent >= 0).then(|| BigUint::one() << bound_exponent as usize);
    let classification = match &bound {
        None => Classification::StrictlyAbove,
        Some(b) => match count.cmp(b) {
            std::cmp::Ordering::Greater => Classification::StrictlyAbove,
            std::cmp::Ordering::Equal => Classification::Extremal,
            std::cmp::Ordering::Less => Classification::BelowBound,
        },
    };
    CountResult {
        count,
        bound_exponent,
        bound,
        classification,
    }
}
