//! Shared fixtures for the benchmark targets.

use zerosum_core::{GroupSpec, Sequence, WeightSet};

pub fn c3c3() -> (GroupSpec, WeightSet) {
    let g = GroupSpec::new(&[3, 3]).unwrap();
    let w = WeightSet::full(3);
    (g, w)
}

pub fn c8() -> (GroupSpec, WeightSet) {
    let g = GroupSpec::new(&[8]).unwrap();
    let w = WeightSet::new(&[1, 3, 5], 8).unwrap();
    (g, w)
}

/// A deterministic pseudo-random sequence of the given length.
pub fn mixed_sequence(group: &GroupSpec, len: usize) -> Sequence {
    let order = group.order() as usize;
    let indices: Vec<usize> = (0..len).map(|i| (i * 7 + 3) % order).collect();
    Sequence::from_indices(group, &indices)
}
