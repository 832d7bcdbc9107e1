//! Command execution: parse literals, call into the library, assemble the
//! report, and pick the exit code (0 ok, 2 violation certificate).

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use zerosum_core::counting::{count_auto, count_dp, count_naive, completeness_margin};
use zerosum_core::davenport::{
    construct_zero_sum_family, davenport, find_maximal_zsf_subsequence, predicted_davenport_full,
    verify_scaling, verify_subgroup_corollary,
};
use zerosum_core::extremal::{
    conjecture_scan, decompose, reduce_sequence, verify_structure_theorem, DecomposeOutcome,
    ScanMode, ScanReport,
};
use zerosum_core::group::all_groups_up_to;
use zerosum_core::{Classification, CountCaps, GroupSpec, Sequence, WeightSet};

use crate::parse::{parse_element, parse_group, parse_sequence, parse_weights};
use crate::report::{group_json, group_literal, obj};
use crate::{Cli, Command, EngineArg, VerifyCmd};

pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

pub fn caps_from(cli: &Cli) -> CountCaps {
    let defaults = CountCaps::default();
    CountCaps {
        naive_cap: cli.max_naive.unwrap_or(defaults.naive_cap),
        state_budget: cli.state_budget.unwrap_or(defaults.state_budget),
    }
}

fn manifest(cli: &Cli, command: &str, args: Vec<(&str, Value)>, seed: Option<u64>) -> Value {
    let caps = caps_from(cli);
    let mut pairs = vec![
        ("version", json!(env!("CARGO_PKG_VERSION"))),
        ("command", json!(command)),
        ("args", obj(args)),
        (
            "caps",
            json!({"max_naive": caps.naive_cap, "state_budget": caps.state_budget}),
        ),
    ];
    if let Some(seed) = seed {
        pairs.push(("seed", json!(seed)));
    }
    obj(pairs)
}

fn report(kind: &str, manifest: Value, payload: Value) -> Value {
    obj(vec![
        ("kind", json!(kind)),
        ("manifest", manifest),
        ("payload", payload),
    ])
}

struct Inputs {
    group: GroupSpec,
    weights: WeightSet,
}

fn inputs(group: &str, weights: &str) -> Result<Inputs, String> {
    let group = parse_group(group).map_err(|e| format!("--group {e}"))?;
    let weights =
        parse_weights(weights, group.exponent()).map_err(|e| format!("--weights {e}"))?;
    Ok(Inputs { group, weights })
}

fn core_err(e: zerosum_core::Error) -> String {
    e.to_string()
}

/// The completeness bound `2^{|S|−D+1}` rendered exactly, `1/2^k` below 1.
fn bound_parts(seq_len: usize, dav: usize) -> (i64, Option<BigUint>, String) {
    let exp = seq_len as i64 - dav as i64 + 1;
    let bound = (exp >= 0).then(|| BigUint::one() << exp as usize);
    let s = match &bound {
        Some(b) => b.to_string(),
        None => format!("1/{}", BigUint::one() << (-exp) as usize),
    };
    (exp, bound, s)
}

fn scan_payload(group: &GroupSpec, weights: &WeightSet, r: &ScanReport) -> Value {
    let mode = match r.mode {
        ScanMode::Exhaustive { maxlen } => json!({"kind": "exhaustive", "maxlen": maxlen}),
        ScanMode::Random {
            maxlen,
            budget,
            seed,
        } => json!({"kind": "random", "maxlen": maxlen, "budget": budget, "seed": seed}),
    };
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            obj(vec![
                ("seq", json!(v.seq.literal())),
                ("count", json!(v.count.to_string())),
                ("bound", json!(v.bound.to_string())),
            ])
        })
        .collect();
    obj(vec![
        ("group", group_json(group)),
        ("weights", json!(weights.literal())),
        ("davenport", json!(r.davenport.value)),
        ("davenport_witness", json!(r.davenport.witness.literal())),
        ("mode", mode),
        ("examined", json!(r.examined)),
        ("violations", Value::Array(violations)),
    ])
}

pub fn execute(cli: &Cli) -> Result<Outcome, String> {
    let caps = caps_from(cli);
    match &cli.command {
        Command::Davenport { group, weights } => {
            let inp = inputs(group, weights)?;
            let d = davenport(&inp.group, &inp.weights).map_err(core_err)?;
            let mut pairs = vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("value", json!(d.value)),
                ("witness", json!(d.witness.literal())),
                ("witness_length", json!(d.witness.len())),
                ("provenance", json!(d.provenance.as_str())),
            ];
            let mut exit = 0;
            if inp.weights.is_full() {
                let predicted = predicted_davenport_full(&inp.group);
                pairs.push(("predicted", json!(predicted)));
                pairs.push(("matches_prediction", json!(predicted == d.value)));
                if predicted != d.value {
                    exit = 2;
                }
            }
            let m = manifest(
                cli,
                "davenport",
                vec![("group", json!(group)), ("weights", json!(weights))],
                cli.seed,
            );
            Ok(Outcome {
                report: report("davenport", m, obj(pairs)),
                exit,
            })
        }
        Command::Count {
            group,
            weights,
            seq,
            target,
            engine,
            exclude_empty,
        } => {
            let inp = inputs(group, weights)?;
            let s = parse_sequence(seq, &inp.group).map_err(|e| format!("--seq {e}"))?;
            let t = parse_element(target, &inp.group).map_err(|e| format!("--target {e}"))?;
            let t_index = inp.group.encode(&t);
            let (count, engine_used) = match engine {
                EngineArg::Auto => count_auto(&inp.group, &inp.weights, &s, t_index, &caps)
                    .map_err(core_err)?,
                EngineArg::Dp => (
                    count_dp(&inp.group, &inp.weights, &s, t_index, &caps).map_err(core_err)?,
                    zerosum_core::Engine::Dp,
                ),
                EngineArg::Naive => (
                    count_naive(&inp.group, &inp.weights, &s, t_index, &caps)
                        .map_err(core_err)?,
                    zerosum_core::Engine::Naive,
                ),
            };
            let d = davenport(&inp.group, &inp.weights).map_err(core_err)?;
            let (exp, bound, bound_str) = bound_parts(s.len(), d.value);
            let classification = match &bound {
                None => Classification::StrictlyAbove,
                Some(b) => match count.cmp(b) {
                    std::cmp::Ordering::Greater => Classification::StrictlyAbove,
                    std::cmp::Ordering::Equal => Classification::Extremal,
                    std::cmp::Ordering::Less => Classification::BelowBound,
                },
            };
            let reported = if *exclude_empty && t_index == 0 {
                &count - 1u32
            } else {
                count.clone()
            };
            // The bound is proved only at g = 0 (full A) — certificates are
            // restricted to that case.
            let exit = if t_index == 0
                && !*exclude_empty
                && classification == Classification::BelowBound
                && inp.weights.is_full()
            {
                2
            } else {
                0
            };
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("seq", json!(s.literal())),
                ("target", json!(t.coords())),
                ("count", json!(reported.to_string())),
                ("exclude_empty", json!(*exclude_empty)),
                ("bound", json!(bound_str)),
                ("bound_exponent", json!(exp)),
                ("davenport", json!(d.value)),
                ("classification", json!(classification.as_str())),
                ("engine", json!(engine_used.as_str())),
            ]);
            let m = manifest(
                cli,
                "count",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("seq", json!(seq)),
                    ("target", json!(target)),
                    ("exclude_empty", json!(*exclude_empty)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("count", m, payload),
                exit,
            })
        }
        Command::Classify {
            group,
            weights,
            seq,
        } => {
            let inp = inputs(group, weights)?;
            let s = parse_sequence(seq, &inp.group).map_err(|e| format!("--seq {e}"))?;
            let d = davenport(&inp.group, &inp.weights).map_err(core_err)?;
            let margin = completeness_margin(&inp.group, &inp.weights, &s, d.value, &caps)
                .map_err(core_err)?;
            let exit = if margin.classification == Classification::BelowBound {
                2
            } else {
                0
            };
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("seq", json!(s.literal())),
                ("count", json!(margin.count.to_string())),
                ("bound", json!(margin.bound_string())),
                ("bound_exponent", json!(margin.bound_exponent)),
                ("davenport", json!(d.value)),
                ("classification", json!(margin.classification.as_str())),
            ]);
            let m = manifest(
                cli,
                "classify",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("seq", json!(seq)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("classify", m, payload),
                exit,
            })
        }
        Command::Decompose {
            group,
            weights,
            seq,
        } => {
            let inp = inputs(group, weights)?;
            let s = parse_sequence(seq, &inp.group).map_err(|e| format!("--seq {e}"))?;
            let (reduced, stripped) = reduce_sequence(&inp.group, &s);
            let outcome = decompose(&inp.group, &inp.weights, &reduced).map_err(core_err)?;
            let d = davenport(&inp.group, &inp.weights).map_err(core_err)?;
            let margin = completeness_margin(&inp.group, &inp.weights, &s, d.value, &caps)
                .map_err(core_err)?;
            let asserted = inp.group.exponent() % 2 == 1;
            let mut pairs = vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("seq", json!(s.literal())),
                ("reduced_seq", json!(reduced.literal())),
                ("stripped", json!(stripped)),
                ("classification", json!(margin.classification.as_str())),
                ("asserted", json!(asserted)),
            ];
            let mut certificate = false;
            match &outcome {
                DecomposeOutcome::Decomposition(dec) => {
                    let extras: Vec<Value> = dec
                        .extras
                        .iter()
                        .map(|e| {
                            obj(vec![
                                ("position", json!(e.position)),
                                ("weight", json!(e.weight)),
                                ("basis_positions", json!(e.basis_positions)),
                                ("coeffs", json!(e.coeffs)),
                            ])
                        })
                        .collect();
                    pairs.push(("outcome", json!("decomposition")));
                    pairs.push(("basis_positions", json!(dec.basis_positions)));
                    pairs.push(("extras", Value::Array(extras)));
                    pairs.push(("disjoint", json!(dec.disjoint)));
                    if !dec.disjoint {
                        certificate = true;
                    }
                }
                DecomposeOutcome::Violation(v) => {
                    pairs.push(("outcome", json!("violation")));
                    pairs.push(("violation", json!(v.describe())));
                    certificate = true;
                }
            }
            // Only an extremal reduced sequence over odd exponent contradicts
            // the structure theorem.
            let exit = if certificate
                && asserted
                && margin.classification == Classification::Extremal
            {
                2
            } else {
                0
            };
            let m = manifest(
                cli,
                "decompose",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("seq", json!(seq)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("decompose", m, obj(pairs)),
                exit,
            })
        }
        Command::Family {
            group,
            weights,
            seq,
        } => {
            let inp = inputs(group, weights)?;
            let s = parse_sequence(seq, &inp.group).map_err(|e| format!("--seq {e}"))?;
            let family =
                construct_zero_sum_family(&inp.group, &inp.weights, &s).map_err(core_err)?;
            let t = find_maximal_zsf_subsequence(&inp.group, &inp.weights, &s);
            let expected = 1usize << (s.len() - t.count());
            let witnesses: Vec<Value> = family
                .iter()
                .map(|w| {
                    obj(vec![
                        ("positions", json!(w.positions)),
                        ("weights", json!(w.weights)),
                    ])
                })
                .collect();
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("seq", json!(s.literal())),
                ("basis_positions", json!(t.positions())),
                ("family_size", json!(family.len())),
                ("expected_size", json!(expected)),
                ("witnesses", Value::Array(witnesses)),
            ]);
            let exit = if family.len() == expected { 0 } else { 2 };
            let m = manifest(
                cli,
                "family",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("seq", json!(seq)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("family", m, payload),
                exit,
            })
        }
        Command::Verify { what } => execute_verify(cli, what, &caps),
        Command::Scan {
            group,
            weights,
            maxlen,
            budget,
        } => {
            let inp = inputs(group, weights)?;
            let (mode, seed) = match budget {
                Some(budget) => {
                    let seed = cli.seed.unwrap_or(0);
                    (
                        ScanMode::Random {
                            maxlen: *maxlen,
                            budget: *budget,
                            seed,
                        },
                        Some(seed),
                    )
                }
                None => (ScanMode::Exhaustive { maxlen: *maxlen }, cli.seed),
            };
            let r = conjecture_scan(&inp.group, &inp.weights, mode, &caps).map_err(core_err)?;
            let exit = if r.violations.is_empty() { 0 } else { 2 };
            let mut args = vec![
                ("group", json!(group)),
                ("weights", json!(weights)),
                ("maxlen", json!(*maxlen)),
            ];
            if let Some(budget) = budget {
                args.push(("budget", json!(*budget)));
            }
            let m = manifest(cli, "scan", args, seed);
            Ok(Outcome {
                report: report("scan", m, scan_payload(&inp.group, &inp.weights, &r)),
                exit,
            })
        }
    }
}

fn execute_verify(cli: &Cli, what: &VerifyCmd, caps: &CountCaps) -> Result<Outcome, String> {
    match what {
        VerifyCmd::Lemma { group, max_order } => {
            let groups: Vec<GroupSpec> = match (group, max_order) {
                (Some(literal), _) => vec![parse_group(literal).map_err(|e| format!("--group {e}"))?],
                (None, Some(cap)) => all_groups_up_to(*cap),
                (None, None) => return Err("verify lemma needs --group or --max-order".into()),
            };
            let mut rows = Vec::new();
            let mut all_equal = true;
            for g in &groups {
                let full = WeightSet::full(g.exponent());
                let d = davenport(g, &full).map_err(core_err)?;
                let predicted = predicted_davenport_full(g);
                let equal = d.value == predicted;
                all_equal &= equal;
                rows.push(obj(vec![
                    ("group", json!(group_literal(g))),
                    ("rank", json!(g.rank())),
                    ("search", json!(d.value)),
                    ("predicted", json!(predicted)),
                    ("witness", json!(d.witness.literal())),
                    ("equal", json!(equal)),
                ]));
            }
            let payload = obj(vec![
                ("checked", json!(groups.len())),
                ("all_equal", json!(all_equal)),
                ("groups", Value::Array(rows)),
            ]);
            let mut args = Vec::new();
            if let Some(g) = group {
                args.push(("group", json!(g)));
            }
            if let Some(m) = max_order {
                args.push(("max_order", json!(*m)));
            }
            let m = manifest(cli, "verify lemma", args, cli.seed);
            Ok(Outcome {
                report: report("verify-lemma", m, payload),
                exit: if all_equal { 0 } else { 2 },
            })
        }
        VerifyCmd::Scaling { group, weights, b } => {
            let inp = inputs(group, weights)?;
            let r = verify_scaling(&inp.group, &inp.weights, *b).map_err(core_err)?;
            let rhs_weights = inp
                .weights
                .reduced_mod(r.scaled_group.exponent())
                .map_err(core_err)?;
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("b", json!(r.b)),
                ("gcd", json!(r.gcd)),
                ("scaled_weights", json!(r.scaled_weights.literal())),
                ("scaled_group", json!(group_literal(&r.scaled_group))),
                ("lhs", json!(r.lhs.value)),
                ("lhs_witness", json!(r.lhs.witness.literal())),
                ("rhs", json!(r.rhs.value)),
                ("rhs_weights", json!(rhs_weights.literal())),
                ("rhs_witness", json!(r.rhs.witness.literal())),
                ("equal", json!(r.equal)),
            ]);
            let m = manifest(
                cli,
                "verify scaling",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("b", json!(*b)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("verify-scaling", m, payload),
                exit: if r.equal { 0 } else { 2 },
            })
        }
        VerifyCmd::Subgroup { group, weights } => {
            let inp = inputs(group, weights)?;
            let r = verify_subgroup_corollary(&inp.group, &inp.weights).map_err(core_err)?;
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("d", json!(r.d)),
                ("reduced_weights", json!(r.reduced_weights.literal())),
                ("scaled_group", json!(group_literal(&r.scaled_group))),
                ("lhs", json!(r.lhs.value)),
                ("lhs_witness", json!(r.lhs.witness.literal())),
                ("rhs", json!(r.rhs.value)),
                ("rhs_witness", json!(r.rhs.witness.literal())),
                ("equal", json!(r.equal)),
            ]);
            let m = manifest(
                cli,
                "verify subgroup",
                vec![("group", json!(group)), ("weights", json!(weights))],
                cli.seed,
            );
            Ok(Outcome {
                report: report("verify-subgroup", m, payload),
                exit: if r.equal { 0 } else { 2 },
            })
        }
        VerifyCmd::Bound {
            group,
            weights,
            maxlen,
        } => {
            let inp = inputs(group, weights)?;
            let r = conjecture_scan(
                &inp.group,
                &inp.weights,
                ScanMode::Exhaustive { maxlen: *maxlen },
                caps,
            )
            .map_err(core_err)?;
            // For full weights the constructive family must independently
            // reprove the bound on every sequence.
            let mut family_checked = 0u64;
            let mut family_failures = Vec::new();
            if inp.weights.is_full() {
                let candidates: Vec<usize> = (0..inp.group.order() as usize).collect();
                let mut err = None;
                zerosum_core::enumerate::for_each_multiset(&candidates, *maxlen, &mut |idx: &[usize]| {
                    if err.is_some() {
                        return;
                    }
                    family_checked += 1;
                    let s = Sequence::from_indices(&inp.group, idx);
                    match construct_zero_sum_family(&inp.group, &inp.weights, &s) {
                        Ok(fam) => {
                            let t = find_maximal_zsf_subsequence(&inp.group, &inp.weights, &s);
                            let expected = 1usize << (s.len() - t.count());
                            if fam.len() != expected {
                                family_failures.push(obj(vec![
                                    ("seq", json!(s.literal())),
                                    ("family_size", json!(fam.len())),
                                    ("expected_size", json!(expected)),
                                ]));
                            }
                        }
                        Err(e) => err = Some(e),
                    }
                });
                if let Some(e) = err {
                    return Err(core_err(e));
                }
            }
            let exit = if r.violations.is_empty() && family_failures.is_empty() {
                0
            } else {
                2
            };
            let mut payload = scan_payload(&inp.group, &inp.weights, &r);
            let map = payload.as_object_mut().expect("scan payload is an object");
            map.insert("family_checked".into(), json!(family_checked));
            map.insert("family_failures".into(), Value::Array(family_failures));
            let m = manifest(
                cli,
                "verify bound",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("maxlen", json!(*maxlen)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("verify-bound", m, payload),
                exit,
            })
        }
        VerifyCmd::Extremal {
            group,
            weights,
            maxlen,
            allow_even,
        } => {
            let inp = inputs(group, weights)?;
            let r = verify_structure_theorem(&inp.group, &inp.weights, *maxlen, *allow_even, caps)
                .map_err(core_err)?;
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| {
                    obj(vec![
                        ("seq", json!(v.seq.literal())),
                        ("detail", json!(v.detail)),
                    ])
                })
                .collect();
            let by_length: Vec<(String, Value)> = r
                .extremal_by_length
                .iter()
                .map(|(len, n)| (len.to_string(), json!(*n)))
                .collect();
            let mut lengths = serde_json::Map::new();
            for (k, v) in by_length {
                lengths.insert(k, v);
            }
            let exit = if r.violations.is_empty() { 0 } else { 2 };
            let payload = obj(vec![
                ("group", group_json(&inp.group)),
                ("weights", json!(inp.weights.literal())),
                ("maxlen", json!(r.maxlen)),
                ("davenport", json!(r.davenport.value)),
                ("asserted", json!(r.asserted)),
                ("examined", json!(r.examined)),
                ("extremal_count", json!(r.extremal_count)),
                ("extremal_by_length", Value::Object(lengths)),
                ("shaped_not_extremal", json!(r.shaped_not_extremal)),
                ("violations", Value::Array(violations)),
            ]);
            let m = manifest(
                cli,
                "verify extremal",
                vec![
                    ("group", json!(group)),
                    ("weights", json!(weights)),
                    ("maxlen", json!(*maxlen)),
                    ("allow_even", json!(*allow_even)),
                ],
                cli.seed,
            );
            Ok(Outcome {
                report: report("verify-extremal", m, payload),
                exit,
            })
        }
    }
}
