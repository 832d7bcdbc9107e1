//! Reachable sets, achievable sets, and the weighted subsum sets `Σ_A(S)`.

use crate::group::{GroupElement, GroupSpec};
use crate::sequence::{Sequence, SubseqIndex};
use crate::subset::GroupSubset;
use crate::weights::WeightSet;

/// `R(g) = {a·g : a ∈ A}`, the single-element building block of all
/// achievable sums.
pub fn reachable_set_index(group: &GroupSpec, weights: &WeightSet, index: usize) -> GroupSubset {
    let mut out = GroupSubset::empty(group);
    for &a in weights.residues() {
        out.insert_index(group.scalar_mul_index(a, index));
    }
    out
}

pub fn reachable_set(group: &GroupSpec, weights: &WeightSet, g: &GroupElement) -> GroupSubset {
    reachable_set_index(group, weights, group.encode(g))
}

/// The achievable set of an index set: the iterated sumset of the reachable
/// sets over `i ∈ I`, with `{0}` for `I = λ`.
pub fn achievable_set(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
    index: &SubseqIndex,
) -> GroupSubset {
    let mut acc = GroupSubset::zero_only(group);
    for pos in index.iter_positions() {
        let r = reachable_set(group, weights, seq.get(pos));
        acc = acc.sumset(&r, group);
    }
    acc
}

/// One append step of the subsum recurrence:
/// `Σ_A(S·g) = Σ_A(S) ∪ R(g) ∪ (Σ_A(S) ⊞ R(g))`.
pub fn extend_subsums(
    group: &GroupSpec,
    sigma: &GroupSubset,
    reach: &GroupSubset,
) -> GroupSubset {
    let mut out = sigma.sumset(reach, group);
    out.union_in_place(sigma);
    out.union_in_place(reach);
    out
}

/// `Σ_A(S)`: the set of nonempty `A`-weighted subsums of `S`.
pub fn weighted_subsums(group: &GroupSpec, weights: &WeightSet, seq: &Sequence) -> GroupSubset {
    let mut sigma = GroupSubset::empty(group);
    for g in seq.iter() {
        let r = reachable_set(group, weights, g);
        sigma = extend_subsums(group, &sigma, &r);
    }
    sigma
}

/// `Σ•_A(S) = Σ_A(S) ∪ {0}`.
pub fn weighted_subsums_with_zero(
    group: &GroupSpec,
    weights: &WeightSet,
    seq: &Sequence,
) -> GroupSubset {
    let mut sigma = weighted_subsums(group, weights, seq);
    sigma.insert_index(0);
    sigma
}

/// True iff `0 ∉ Σ_A(S)`.
pub fn is_zero_sum_free(group: &GroupSpec, weights: &WeightSet, seq: &Sequence) -> bool {
    !weighted_subsums(group, weights, seq).contains_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::all_groups_up_to;

    fn seq(group: &GroupSpec, coords: &[&[i64]]) -> Sequence {
        Sequence::from_elements(coords.iter().map(|c| group.element(c).unwrap()).collect())
    }

    #[test]
    fn reachable_examples() {
        let c3 = GroupSpec::new(&[3]).unwrap();
        let full3 = WeightSet::full(3);
        let r = reachable_set(&c3, &full3, &c3.element(&[1]).unwrap());
        assert_eq!(r.iter_indices().collect::<Vec<_>>(), vec![1, 2]);

        // o(3) = 2 < 6, so the weight a = 2 reaches 0.
        let c6 = GroupSpec::new(&[6]).unwrap();
        let full6 = WeightSet::full(6);
        let r = reachable_set(&c6, &full6, &c6.element(&[3]).unwrap());
        assert_eq!(r.iter_indices().collect::<Vec<_>>(), vec![0, 3]);

        let r = reachable_set(&c3, &full3, &c3.identity());
        assert_eq!(r.iter_indices().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn reachable_full_weight_law() {
        // For full A: R(g) = ⟨g⟩ when o(g) < n, and ⟨g⟩ \ {0} when o(g) = n.
        for g in all_groups_up_to(36) {
            let full = WeightSet::full(g.exponent());
            for e in g.elements() {
                let r = reachable_set(&g, &full, &e);
                let sub = g.cyclic_subgroup(&e);
                if g.element_order(&e) < g.exponent() {
                    assert_eq!(r, sub);
                } else {
                    let mut expect: Vec<usize> =
                        sub.iter_indices().filter(|&i| i != 0).collect();
                    expect.sort_unstable();
                    assert_eq!(r.iter_indices().collect::<Vec<_>>(), expect);
                }
            }
        }
    }

    #[test]
    fn achievable_examples() {
        let c3 = GroupSpec::new(&[3]).unwrap();
        let full3 = WeightSet::full(3);
        let s = seq(&c3, &[&[1], &[1]]);
        let lambda = achievable_set(&c3, &full3, &s, &SubseqIndex::empty(2));
        assert_eq!(lambda.iter_indices().collect::<Vec<_>>(), vec![0]);
        let both = achievable_set(&c3, &full3, &s, &SubseqIndex::full(2));
        assert_eq!(both.iter_indices().collect::<Vec<_>>(), vec![0, 1, 2]);

        let g33 = GroupSpec::new(&[3, 3]).unwrap();
        let full = WeightSet::full(3);
        let s = seq(&g33, &[&[1, 0], &[0, 1]]);
        let got = achievable_set(&g33, &full, &s, &SubseqIndex::full(2));
        // {(a,b) : a,b ∈ {1,2}} by brute force over the weight choices.
        let mut expect: Vec<usize> = Vec::new();
        for a in 1..3i64 {
            for b in 1..3i64 {
                expect.push(g33.encode(&g33.element(&[a, b]).unwrap()));
            }
        }
        expect.sort_unstable();
        assert_eq!(got.iter_indices().collect::<Vec<_>>(), expect);
    }

    #[test]
    fn subsum_examples() {
        let c3 = GroupSpec::new(&[3]).unwrap();
        let full3 = WeightSet::full(3);
        let s = seq(&c3, &[&[1]]);
        let sigma = weighted_subsums(&c3, &full3, &s);
        assert_eq!(sigma.iter_indices().collect::<Vec<_>>(), vec![1, 2]);

        // The length-2 zero-sum-free witness over C_3 ⊕ C_3: every nonzero
        // element is a subsum but 0 is not.
        let g33 = GroupSpec::new(&[3, 3]).unwrap();
        let full = WeightSet::full(3);
        let s = seq(&g33, &[&[1, 0], &[0, 1]]);
        let sigma = weighted_subsums(&g33, &full, &s);
        assert_eq!(
            sigma.iter_indices().collect::<Vec<_>>(),
            (1..9).collect::<Vec<_>>()
        );
        assert!(is_zero_sum_free(&g33, &full, &s));

        // Any element of order < n makes 0 a subsum under full weights.
        let c6 = GroupSpec::new(&[6]).unwrap();
        let full6 = WeightSet::full(6);
        let s = seq(&c6, &[&[1], &[3]]);
        assert!(!is_zero_sum_free(&c6, &full6, &s));
    }

    #[test]
    fn zero_sum_free_examples() {
        let c3 = GroupSpec::new(&[3]).unwrap();
        let full3 = WeightSet::full(3);
        assert!(is_zero_sum_free(&c3, &full3, &Sequence::empty()));
        assert!(!is_zero_sum_free(&c3, &full3, &seq(&c3, &[&[1], &[1]])));
    }

    #[test]
    fn subsums_monotone_and_permutation_invariant() {
        let g = GroupSpec::new(&[2, 4]).unwrap();
        let full = WeightSet::full(4);
        let elems: Vec<_> = g.elements().collect();
        // Deterministic sweep over short tuples.
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                let s = seq(&g, &[]).appended(elems[i].clone());
                let extended = s.appended(elems[j].clone());
                let sigma = weighted_subsums(&g, &full, &s);
                let sigma2 = weighted_subsums(&g, &full, &extended);
                for idx in sigma.iter_indices() {
                    assert!(sigma2.contains_index(idx), "Σ must grow under append");
                }
                let swapped = Sequence::from_elements(vec![elems[j].clone(), elems[i].clone()]);
                assert_eq!(sigma2, weighted_subsums(&g, &full, &swapped));
            }
        }
    }

    #[test]
    fn achievable_subset_of_dotted_subsums() {
        let g = GroupSpec::new(&[5]).unwrap();
        let a = crate::weights::WeightSet::new(&[1, 3], 5).unwrap();
        let s = seq(&g, &[&[1], &[2], &[3]]);
        let dotted = weighted_subsums_with_zero(&g, &a, &s);
        for mask in 0u32..8 {
            let idx = SubseqIndex::from_positions(
                3,
                &(0..3).filter(|&p| mask >> p & 1 == 1).collect::<Vec<_>>(),
            );
            let ach = achievable_set(&g, &a, &s, &idx);
            for i in ach.iter_indices() {
                assert!(dotted.contains_index(i));
            }
        }
    }
}
