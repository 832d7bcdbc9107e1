//! Bit-vector subsets of a group, the carrier for reachable sets and
//! weighted subsum sets.

use crate::bits::Bits;
use crate::group::{GroupElement, GroupSpec};

/// A subset of `G` encoded as a fixed-length bit vector indexed by the
/// mixed-radix element encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    bits: Bits,
}

impl GroupSubset {
    pub fn empty(group: &GroupSpec) -> Self {
        GroupSubset {
            bits: Bits::new(group.order() as usize),
        }
    }

    /// The set `{0}`.
    pub fn zero_only(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        s.insert_index(0);
        s
    }

    pub fn singleton(group: &GroupSpec, index: usize) -> Self {
        let mut s = Self::empty(group);
        s.insert_index(index);
        s
    }

    /// Bit-vector length, i.e. `|G|`.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn contains_zero(&self) -> bool {
        self.bits.contains(0)
    }

    pub fn contains(&self, group: &GroupSpec, g: &GroupElement) -> bool {
        self.bits.contains(group.encode(g))
    }

    pub fn insert_index(&mut self, index: usize) {
        self.bits.insert(index);
    }

    pub fn insert(&mut self, group: &GroupSpec, g: &GroupElement) {
        self.bits.insert(group.encode(g));
    }

    pub fn union_in_place(&mut self, other: &GroupSubset) {
        self.bits.union_in_place(&other.bits);
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// The sumset `{a + b : a ∈ self, b ∈ other}`.
    pub fn sumset(&self, other: &GroupSubset, group: &GroupSpec) -> GroupSubset {
        let mut out = GroupSubset::empty(group);
        for i in self.iter_indices() {
            for j in other.iter_indices() {
                out.insert_index(group.add_index(i, j));
            }
        }
        out
    }

    /// The translate `self + g` for a single element index.
    pub fn translate(&self, group: &GroupSpec, index: usize) -> GroupSubset {
        let mut out = GroupSubset::empty(group);
        for i in self.iter_indices() {
            out.insert_index(group.add_index(i, index));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumset_and_translate() {
        let c6 = GroupSpec::new(&[6]).unwrap();
        let mut a = GroupSubset::empty(&c6);
        a.insert_index(1);
        a.insert_index(3);
        let b = GroupSubset::singleton(&c6, 5);
        let s = a.sumset(&b, &c6);
        assert_eq!(s.iter_indices().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s, a.translate(&c6, 5));
        assert_eq!(s.capacity(), 6);
    }

    #[test]
    fn zero_only_contains_identity() {
        let g = GroupSpec::new(&[3, 3]).unwrap();
        let z = GroupSubset::zero_only(&g);
        assert!(z.contains_zero());
        assert_eq!(z.size(), 1);
    }
}
