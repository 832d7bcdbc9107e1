//! Acceptance suite: one test per criterion, each printing a single
//! `[acceptance] ... PASS` line. Everything is exact — no tolerances.
//!
//! Run with `cargo test --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;

use num_bigint::BigUint;
use num_traits::One;

use zerosum_core::counting::{count_dp, count_naive};
use zerosum_core::davenport::{construct_zero_sum_family, davenport, find_maximal_zsf_subsequence, predicted_davenport_full, verify_scaling, verify_subgroup_corollary, verify_witness};
use zerosum_core::extremal::{decompose, DecomposeOutcome};
use zerosum_core::group::all_groups_up_to;
use zerosum_core::{CountCaps, GroupSpec, Sequence, WeightSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn caps() -> CountCaps {
    CountCaps::default()
}

fn pass(n: usize, what: &str) {
    println!("[acceptance] criterion {n} — {what}: PASS");
}

/// Nonempty canonical multisets over the whole group, up to `maxlen`.
fn all_multisets(group: &GroupSpec, maxlen: usize) -> Vec<Vec<usize>> {
    let candidates: Vec<usize> = (0..group.order() as usize).collect();
    let mut out = Vec::new();
    zerosum_core::enumerate::for_each_multiset(&candidates, maxlen, &mut |s: &[usize]| {
        out.push(s.to_vec())
    });
    out
}

#[test]
fn criterion_1_davenport_formula() {
    for group in all_groups_up_to(36) {
        let full = WeightSet::full(group.exponent());
        let d = davenport(&group, &full).unwrap();
        assert_eq!(
            d.value,
            predicted_davenport_full(&group),
            "D_A mismatch for {:?}",
            group.invariant_factors()
        );
        assert_eq!(d.value, group.rank() + 1);
    }
    pass(1, "D_A(G) = r + 1 for all |G| ≤ 36");
}

#[test]
fn criterion_2_bound_and_family() {
    let groups = [
        vec![3u64],
        vec![4],
        vec![5],
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
    ];
    for factors in groups {
        let group = GroupSpec::new(&factors).unwrap();
        let full = WeightSet::full(group.exponent());
        let d = davenport(&group, &full).unwrap();
        let maxlen = d.value + 3;
        for indices in all_multisets(&group, maxlen) {
            let seq = Sequence::from_indices(&group, &indices);
            let count = count_dp(&group, &full, &seq, 0, &caps()).unwrap();
            let exp = seq.len() as i64 - d.value as i64 + 1;
            if exp >= 0 {
                let bound = BigUint::one() << exp as usize;
                assert!(
                    count >= bound,
                    "bound violated by {} over {:?}",
                    seq.literal(),
                    factors
                );
            }
            let t = find_maximal_zsf_subsequence(&group, &full, &seq);
            let family = construct_zero_sum_family(&group, &full, &seq).unwrap();
            assert_eq!(family.len(), 1 << (seq.len() - t.count()));
            let mut seen = BTreeSet::new();
            for w in &family {
                assert!(verify_witness(&group, &seq, w));
                assert!(seen.insert((w.positions.clone(), w.weights.clone())));
            }
        }
    }
    pass(2, "completeness bound and 2^|W| family for six groups");
}

#[test]
fn criterion_3_oracle_equivalence() {
    let groups = all_groups_up_to(36);
    let mut rng = ChaCha8Rng::seed_from_u64(20260824);
    for _ in 0..500 {
        let group = &groups[rng.gen_range(0..groups.len())];
        let n = group.exponent();
        // A: either full or a random nonempty subset of [1, n-1].
        let weights = if rng.gen_bool(0.5) || n == 2 {
            WeightSet::full(n)
        } else {
            let mut picks: Vec<i64> = (1..n as i64).filter(|_| rng.gen_bool(0.5)).collect();
            if picks.is_empty() {
                picks.push(rng.gen_range(1..n as i64));
            }
            WeightSet::new(&picks, n).unwrap()
        };
        let m = rng.gen_range(0..=12);
        let indices: Vec<usize> = (0..m)
            .map(|_| rng.gen_range(0..group.order() as usize))
            .collect();
        let seq = Sequence::from_indices(group, &indices);
        let target = rng.gen_range(0..group.order() as usize);
        let dp = count_dp(group, &weights, &seq, target, &caps()).unwrap();
        let naive = count_naive(group, &weights, &seq, target, &caps()).unwrap();
        assert_eq!(dp, naive, "engines disagree on {}", seq.literal());
    }
    pass(3, "count_dp = count_naive on 500 seeded instances");
}

#[test]
fn criterion_4_reduction_identities() {
    // The zero-append identity is exact. For a nonzero g with o(g) < n the
    // paper's claimed equality fails in general (e.g. S=(1) over C_6, g=3
    // gives 3, not 2); what holds exactly is N(S·g) ≥ 2·N(S), with equality
    // forced on bound-meeting sequences. Both directions are asserted.
    let groups = all_groups_up_to(20);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut low_order_checked = 0;
    for _ in 0..200 {
        let group = loop {
            let g = &groups[rng.gen_range(0..groups.len())];
            if g.order() > 1 {
                break g;
            }
        };
        let full = WeightSet::full(group.exponent());
        let m = rng.gen_range(0..=8);
        let indices: Vec<usize> = (0..m)
            .map(|_| rng.gen_range(0..group.order() as usize))
            .collect();
        let seq = Sequence::from_indices(group, &indices);
        let base = count_naive(group, &full, &seq, 0, &caps()).unwrap();

        let with_zero = seq.appended(group.identity());
        let doubled = count_naive(group, &full, &with_zero, 0, &caps()).unwrap();
        assert_eq!(doubled, base.clone() * 2u32, "zero-append must double");

        // Append a random element of order < n when one exists.
        let low: Vec<usize> = (1..group.order() as usize)
            .filter(|&i| group.order_of_index(i) < group.exponent())
            .collect();
        if !low.is_empty() {
            let g = low[rng.gen_range(0..low.len())];
            let appended = Sequence::from_indices(
                group,
                &indices.iter().copied().chain([g]).collect::<Vec<_>>(),
            );
            let grown = count_naive(group, &full, &appended, 0, &caps()).unwrap();
            assert!(grown >= base * 2u32, "low-order append must at least double");
            low_order_checked += 1;
        }
    }
    assert!(low_order_checked > 50);
    pass(4, "reduction identities (0-append exact, low-order append ≥) on 200 seeded instances");
}

#[test]
fn criterion_5_scaling_proposition() {
    for group in all_groups_up_to(16) {
        let n = group.exponent();
        if n < 2 {
            continue;
        }
        let mut weight_sets = vec![WeightSet::full(n)];
        for a in 1..n as i64 {
            weight_sets.push(WeightSet::new(&[a], n).unwrap());
        }
        for weights in &weight_sets {
            for b in 1..n {
                match verify_scaling(&group, weights, b) {
                    Ok(r) => assert!(
                        r.equal,
                        "scaling fails for {:?}, A={}, b={b}",
                        group.invariant_factors(),
                        weights.literal()
                    ),
                    // Skip degenerate bA and trivially collapsed gcd(b,n)G.
                    Err(zerosum_core::Error::ZeroWeight(_))
                    | Err(zerosum_core::Error::TrivialSubgroup) => continue,
                    Err(e) => panic!("unexpected scaling error: {e}"),
                }
            }
        }
    }
    pass(5, "D_{bA}(G) = D_A(gcd(b,n)G) for all |G| ≤ 16");
}

#[test]
fn criterion_6_subgroup_corollary() {
    let mut checked = 0;
    for group in all_groups_up_to(16) {
        let n = group.exponent();
        // Every proper subgroup ⟨d⟩ of Z_n yields A = ⟨d⟩ \ {0}.
        for d in 2..=n {
            if n % d != 0 || d == 1 {
                continue;
            }
            let members: Vec<i64> = (1..n / d).map(|k| (k * d) as i64).collect();
            if members.is_empty() {
                continue; // ⟨d⟩ = {0}: no weights to form
            }
            let weights = WeightSet::new(&members, n).unwrap();
            let r = verify_subgroup_corollary(&group, &weights).unwrap();
            assert!(
                r.equal,
                "subgroup corollary fails for {:?}, d={d}",
                group.invariant_factors()
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
    pass(6, "D_A(G) = D_{A'}(dG) for proper subgroup weight sets, |G| ≤ 16");
}

#[test]
fn criterion_7_structure_theorem() {
    for factors in [vec![3u64], vec![5], vec![3, 3]] {
        let group = GroupSpec::new(&factors).unwrap();
        let full = WeightSet::full(group.exponent());
        let r = group.rank();
        let d = davenport(&group, &full).unwrap();
        let candidates: Vec<usize> = (1..group.order() as usize)
            .filter(|&i| group.order_of_index(i) == group.exponent())
            .collect();
        let mut per_length: Vec<Vec<Sequence>> = vec![Vec::new(); 2 * r + 3];
        zerosum_core::enumerate::for_each_multiset(&candidates, 2 * r + 2, &mut |idx: &[usize]| {
            let seq = Sequence::from_indices(&group, idx);
            let count = count_dp(&group, &full, &seq, 0, &caps()).unwrap();
            let exp = seq.len() as i64 - d.value as i64 + 1;
            let extremal = exp >= 0 && count == BigUint::one() << exp as usize;
            if extremal {
                assert!(
                    seq.len() >= r && seq.len() <= 2 * r,
                    "extremal {} outside [r, 2r] over {:?}",
                    seq.literal(),
                    factors
                );
                match decompose(&group, &full, &seq).unwrap() {
                    DecomposeOutcome::Decomposition(dec) => assert!(dec.disjoint),
                    DecomposeOutcome::Violation(v) => {
                        panic!("structure violation on {}: {}", seq.literal(), v.describe())
                    }
                }
                per_length[seq.len()].push(seq);
            }
        });
        if factors == [3] {
            let lits = |v: &[Sequence]| {
                v.iter().map(|s| s.literal()).collect::<BTreeSet<_>>()
            };
            assert_eq!(
                lits(&per_length[1]),
                BTreeSet::from(["(1)".to_string(), "(2)".to_string()])
            );
            assert_eq!(
                lits(&per_length[2]),
                BTreeSet::from([
                    "(1),(1)".to_string(),
                    "(1),(2)".to_string(),
                    "(2),(2)".to_string()
                ])
            );
            let triple = Sequence::from_indices(&group, &[1, 1, 1]);
            let count = count_naive(&group, &full, &triple, 0, &caps()).unwrap();
            assert_eq!(count, BigUint::from(5u32));
            assert!(count > BigUint::from(4u32));
        }
    }
    pass(7, "extremal structure (odd n) for C3, C5, C3⊕C3 up to 2r+2");
}

#[test]
fn criterion_8_scan_regression_and_determinism() {
    let cases = [("C4", "1,3"), ("C6", "2,3"), ("C8", "1,3,5")];
    let bin = env!("CARGO_BIN_EXE_zerosum");
    for (group, weights) in cases {
        let run = || {
            Command::new(bin)
                .args([
                    "scan", "--group", group, "--weights", weights, "--maxlen", "6",
                    "--format", "json",
                ])
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert!(
            first.status.success(),
            "scan {group} exited {:?}",
            first.status.code()
        );
        let text = String::from_utf8(first.stdout.clone()).unwrap();
        assert!(
            text.contains("\"violations\":[]"),
            "scan {group} found violations: {text}"
        );
        assert_eq!(
            first.stdout, second.stdout,
            "scan {group} JSON differs between reruns"
        );
    }
    pass(8, "exhaustive scans clean with byte-identical JSON reruns");
}
