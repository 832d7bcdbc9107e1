//! Independent re-verification of an emitted report.
//!
//! Reads nothing but the report JSON: literals are re-parsed, witnesses are
//! re-summed, counts are re-derived with the naive engine. A failure here
//! means the report itself is wrong.

use num_bigint::BigUint;
use serde_json::Value;

use zerosum_core::counting::count_naive;
use zerosum_core::davenport::{verify_witness, WeightedZeroSumWitness};
use zerosum_core::sums::is_zero_sum_free;
use zerosum_core::{CountCaps, GroupSpec, Sequence, WeightSet};

use crate::parse::{parse_sequence, parse_weights};

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    match v.get(key) {
        Some(inner) if !inner.is_null() => Ok(inner),
        _ => Err(format!("report is missing field {key:?}")),
    }
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, String> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| format!("field {key:?} is not a string"))
}

fn int_field(v: &Value, key: &str) -> Result<u64, String> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| format!("field {key:?} is not an integer"))
}

fn arr<'a>(v: &'a Value) -> &'a [Value] {
    v.as_array().map(|a| a.as_slice()).unwrap_or(&[])
}

fn group_of(payload: &Value) -> Result<GroupSpec, String> {
    let factors: Vec<u64> = arr(field(field(payload, "group")?, "invariant_factors")?)
        .iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| "invariant factor is not an integer".to_string())
        })
        .collect::<Result<_, _>>()?;
    GroupSpec::new(&factors).map_err(|e| e.to_string())
}

fn weights_of(payload: &Value, group: &GroupSpec) -> Result<WeightSet, String> {
    parse_weights(str_field(payload, "weights")?, group.exponent()).map_err(|e| e.to_string())
}

fn seq_of(literal: &str, group: &GroupSpec) -> Result<Sequence, String> {
    parse_sequence(literal, group).map_err(|e| e.to_string())
}

fn usize_array(v: &Value) -> Result<Vec<usize>, String> {
    arr(v)
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| "expected an integer".to_string())
        })
        .collect()
}

fn witness_of(v: &Value) -> Result<WeightedZeroSumWitness, String> {
    Ok(WeightedZeroSumWitness {
        positions: usize_array(field(v, "positions")?)?,
        weights: usize_array(field(v, "weights")?)?
            .into_iter()
            .map(|w| w as u64)
            .collect(),
    })
}

/// Re-verifies a zero-sum-free witness of length `value - 1` and its
/// unextendability by any single group element.
fn check_davenport_witness(
    group: &GroupSpec,
    weights: &WeightSet,
    witness_literal: &str,
    value: u64,
) -> Result<(), String> {
    let witness = seq_of(witness_literal, group)?;
    if witness.len() as u64 + 1 != value {
        return Err(format!(
            "witness length {} does not match value {value}",
            witness.len()
        ));
    }
    if !is_zero_sum_free(group, weights, &witness) {
        return Err("witness is not zero-sum-free".into());
    }
    for e in group.elements() {
        if is_zero_sum_free(group, weights, &witness.appended(e.clone())) {
            return Err(format!(
                "witness extends by {:?} while staying zero-sum-free",
                e.coords()
            ));
        }
    }
    Ok(())
}

fn check_count(
    payload: &Value,
    target: usize,
    caps: &CountCaps,
) -> Result<(), String> {
    let group = group_of(payload)?;
    let weights = weights_of(payload, &group)?;
    let seq = seq_of(str_field(payload, "seq")?, &group)?;
    if seq.len() > caps.naive_cap {
        return Err(format!(
            "sequence length {} exceeds the naive recheck cap {}",
            seq.len(),
            caps.naive_cap
        ));
    }
    let mut expected = count_naive(&group, &weights, &seq, target, caps).map_err(|e| e.to_string())?;
    if payload
        .get("exclude_empty")
        .and_then(Value::as_bool)
        .unwrap_or(false)
        && target == 0
    {
        expected -= 1u32;
    }
    let reported: BigUint = str_field(payload, "count")?
        .parse()
        .map_err(|_| "count is not a decimal integer".to_string())?;
    if expected != reported {
        return Err(format!("count mismatch: reported {reported}, naive {expected}"));
    }
    Ok(())
}

fn check_scan_violations(payload: &Value, caps: &CountCaps) -> Result<(), String> {
    let group = group_of(payload)?;
    let weights = weights_of(payload, &group)?;
    for v in arr(field(payload, "violations")?) {
        let seq = seq_of(str_field(v, "seq")?, &group)?;
        let count: BigUint = str_field(v, "count")?
            .parse()
            .map_err(|_| "violation count is not a decimal integer".to_string())?;
        let bound: BigUint = str_field(v, "bound")?
            .parse()
            .map_err(|_| "violation bound is not a decimal integer".to_string())?;
        let naive =
            count_naive(&group, &weights, &seq, 0, caps).map_err(|e| e.to_string())?;
        if naive != count {
            return Err(format!(
                "violation {} recounts to {naive}, reported {count}",
                seq.literal()
            ));
        }
        if naive >= bound {
            return Err(format!(
                "claimed violation {} meets its bound {bound}",
                seq.literal()
            ));
        }
    }
    Ok(())
}

pub fn verify(report: &Value, caps: &CountCaps) -> Result<(), String> {
    let kind = str_field(report, "kind")?;
    let payload = field(report, "payload")?;
    match kind {
        "davenport" => {
            let group = group_of(payload)?;
            let weights = weights_of(payload, &group)?;
            check_davenport_witness(
                &group,
                &weights,
                str_field(payload, "witness")?,
                int_field(payload, "value")?,
            )
        }
        "count" => {
            let group = group_of(payload)?;
            let coords: Vec<i64> = usize_array(field(payload, "target")?)?
                .into_iter()
                .map(|c| c as i64)
                .collect();
            let target = group
                .element(&coords)
                .map(|e| group.encode(&e))
                .map_err(|e| e.to_string())?;
            check_count(payload, target, caps)
        }
        "classify" => check_count(payload, 0, caps),
        "decompose" => {
            let group = group_of(payload)?;
            let weights = weights_of(payload, &group)?;
            let reduced = seq_of(str_field(payload, "reduced_seq")?, &group)?;
            if str_field(payload, "outcome")? != "decomposition" {
                return Ok(());
            }
            let basis_positions = usize_array(field(payload, "basis_positions")?)?;
            let basis = Sequence::from_elements(
                basis_positions
                    .iter()
                    .map(|&p| reduced.get(p).clone())
                    .collect(),
            );
            if !is_zero_sum_free(&group, &weights, &basis) {
                return Err("basis is not zero-sum-free".into());
            }
            for extra in arr(field(payload, "extras")?) {
                let position = int_field(extra, "position")? as usize;
                let weight = int_field(extra, "weight")?;
                let idx = usize_array(field(extra, "basis_positions")?)?;
                let coeffs = usize_array(field(extra, "coeffs")?)?;
                // b·h must equal Σ a_i·g_i over the cited basis positions.
                let h = group.encode(reduced.get(position));
                let lhs = group.scalar_mul_index(weight, h);
                let mut rhs = 0usize;
                for (&p, &a) in idx.iter().zip(&coeffs) {
                    let gi = group.encode(reduced.get(p));
                    rhs = group.add_index(rhs, group.scalar_mul_index(a as u64, gi));
                }
                if lhs != rhs {
                    return Err(format!(
                        "extra at position {position} does not re-verify"
                    ));
                }
            }
            Ok(())
        }
        "family" => {
            let group = group_of(payload)?;
            let seq = seq_of(str_field(payload, "seq")?, &group)?;
            let witnesses = field(payload, "witnesses")?
                .as_array()
                .ok_or("witnesses is not an array")?
                .clone();
            if witnesses.len() as u64 != int_field(payload, "family_size")?
                || witnesses.len() as u64 != int_field(payload, "expected_size")?
            {
                return Err("family size fields disagree with the witness list".into());
            }
            for w in &witnesses {
                let witness = witness_of(w)?;
                if !verify_witness(&group, &seq, &witness) {
                    return Err(format!("witness {:?} does not sum to zero", witness.positions));
                }
            }
            Ok(())
        }
        "verify-lemma" => {
            for row in arr(field(payload, "groups")?) {
                let group = crate::parse::parse_group(str_field(row, "group")?)
                    .map_err(|e| e.to_string())?;
                let full = WeightSet::full(group.exponent());
                check_davenport_witness(
                    &group,
                    &full,
                    str_field(row, "witness")?,
                    int_field(row, "search")?,
                )?;
                if int_field(row, "predicted")? != group.rank() as u64 + 1 {
                    return Err("predicted value is not rank + 1".into());
                }
            }
            Ok(())
        }
        "verify-scaling" => {
            let group = group_of(payload)?;
            let scaled_weights =
                parse_weights(str_field(payload, "scaled_weights")?, group.exponent())
                    .map_err(|e| e.to_string())?;
            check_davenport_witness(
                &group,
                &scaled_weights,
                str_field(payload, "lhs_witness")?,
                int_field(payload, "lhs")?,
            )?;
            let scaled_group = crate::parse::parse_group(str_field(payload, "scaled_group")?)
                .map_err(|e| e.to_string())?;
            let rhs_weights =
                parse_weights(str_field(payload, "rhs_weights")?, scaled_group.exponent())
                    .map_err(|e| e.to_string())?;
            check_davenport_witness(
                &scaled_group,
                &rhs_weights,
                str_field(payload, "rhs_witness")?,
                int_field(payload, "rhs")?,
            )
        }
        "verify-subgroup" => {
            let group = group_of(payload)?;
            let weights = weights_of(payload, &group)?;
            check_davenport_witness(
                &group,
                &weights,
                str_field(payload, "lhs_witness")?,
                int_field(payload, "lhs")?,
            )?;
            let scaled_group = crate::parse::parse_group(str_field(payload, "scaled_group")?)
                .map_err(|e| e.to_string())?;
            let reduced =
                parse_weights(str_field(payload, "reduced_weights")?, scaled_group.exponent())
                    .map_err(|e| e.to_string())?;
            check_davenport_witness(
                &scaled_group,
                &reduced,
                str_field(payload, "rhs_witness")?,
                int_field(payload, "rhs")?,
            )
        }
        "scan" | "verify-bound" => check_scan_violations(payload, caps),
        "verify-extremal" => {
            let group = group_of(payload)?;
            let weights = weights_of(payload, &group)?;
            let dav = int_field(payload, "davenport")? as i64;
            for v in arr(field(payload, "violations")?) {
                let seq = seq_of(str_field(v, "seq")?, &group)?;
                let count =
                    count_naive(&group, &weights, &seq, 0, caps).map_err(|e| e.to_string())?;
                let exp = seq.len() as i64 - dav + 1;
                if exp < 0 || count != BigUint::from(1u32) << exp as usize {
                    return Err(format!(
                        "structure violation {} is not an extremal sequence",
                        seq.literal()
                    ));
                }
            }
            Ok(())
        }
        other => Err(format!("unknown report kind {other:?}")),
    }
}
