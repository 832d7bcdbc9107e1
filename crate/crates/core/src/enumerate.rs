//! Canonical multiset enumeration: nondecreasing tuples over a candidate
//! list, the 1-per-orbit representative ordering used by the searches.

/// Calls `f` on every nonempty nondecreasing tuple of candidate positions
/// with length at most `maxlen`; each tuple is passed as the corresponding
/// slice of candidate values.
pub fn for_each_multiset<F>(candidates: &[usize], maxlen: usize, f: &mut F)
where
    F: FnMut(&[usize]),
{
    let mut current = Vec::with_capacity(maxlen);
    rec(candidates, 0, maxlen, &mut current, f);
}

/// Same enumeration restricted to tuples starting at candidate position
/// `first`; lets callers partition the space for parallel scans.
pub fn for_each_multiset_from<F>(candidates: &[usize], first: usize, maxlen: usize, f: &mut F)
where
    F: FnMut(&[usize]),
{
    if maxlen == 0 || first >= candidates.len() {
        return;
    }
    let mut current = vec![candidates[first]];
    f(&current);
    rec(candidates, first, maxlen, &mut current, f);
}

fn rec<F>(candidates: &[usize], start: usize, maxlen: usize, current: &mut Vec<usize>, f: &mut F)
where
    F: FnMut(&[usize]),
{
    if current.len() == maxlen {
        return;
    }
    for pos in start..candidates.len() {
        current.push(candidates[pos]);
        f(current);
        rec(candidates, pos, maxlen, current, f);
        current.pop();
    }
}
