//! Sequences over a group and subsequence identity by index set.

use crate::bits::Bits;
use crate::group::{GroupElement, GroupSpec};

/// An ordered sequence `g_1 ⋯ g_m`. Positions are the identity of
/// subsequences: equal elements at different positions are distinct atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    elems: Vec<GroupElement>,
}

impl Sequence {
    pub fn empty() -> Self {
        Sequence { elems: Vec::new() }
    }

    pub fn from_elements(elems: Vec<GroupElement>) -> Self {
        Sequence { elems }
    }

    /// Reconstructs a positional sequence from encoded element indices.
    pub fn from_indices(group: &GroupSpec, indices: &[usize]) -> Self {
        Sequence {
            elems: indices.iter().map(|&i| group.decode(i).unwrap()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, pos: usize) -> &GroupElement {
        &self.elems[pos]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elems.iter()
    }

    pub fn appended(&self, g: GroupElement) -> Sequence {
        let mut elems = self.elems.clone();
        elems.push(g);
        Sequence { elems }
    }

    pub fn without(&self, pos: usize) -> Sequence {
        let mut elems = self.elems.clone();
        elems.remove(pos);
        Sequence { elems }
    }

    /// The subsequence identified by an index set, in position order.
    pub fn induced(&self, index: &SubseqIndex) -> Sequence {
        Sequence {
            elems: index
                .iter_positions()
                .map(|p| self.elems[p].clone())
                .collect(),
        }
    }

    pub fn element_indices(&self, group: &GroupSpec) -> Vec<usize> {
        self.elems.iter().map(|g| group.encode(g)).collect()
    }

    /// Canonical literal, e.g. `(1,0),(0,1)`; the empty sequence is `""`.
    pub fn literal(&self) -> String {
        self.elems
            .iter()
            .map(|g| {
                format!(
                    "({})",
                    g.coords()
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// An index set `I ⊆ [1, m]` identifying a subsequence; stored as a bitmask
/// over zero-based positions. The empty mask is the empty subsequence λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubseqIndex {
    mask: Bits,
}

impl SubseqIndex {
    pub fn empty(m: usize) -> Self {
        SubseqIndex { mask: Bits::new(m) }
    }

    pub fn full(m: usize) -> Self {
        let mut mask = Bits::new(m);
        for i in 0..m {
            mask.insert(i);
        }
        SubseqIndex { mask }
    }

    pub fn from_positions(m: usize, positions: &[usize]) -> Self {
        let mut mask = Bits::new(m);
        for &p in positions {
            mask.insert(p);
        }
        SubseqIndex { mask }
    }

    /// Length of the underlying sequence (mask length).
    pub fn sequence_len(&self) -> usize {
        self.mask.len()
    }

    pub fn count(&self) -> usize {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.mask.contains(pos)
    }

    pub fn insert(&mut self, pos: usize) {
        self.mask.insert(pos);
    }

    pub fn iter_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter_ones()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.iter_positions().collect()
    }

    pub fn complement(&self) -> SubseqIndex {
        let m = self.mask.len();
        let mut mask = Bits::new(m);
        for i in 0..m {
            if !self.mask.contains(i) {
                mask.insert(i);
            }
        }
        SubseqIndex { mask }
    }
}
