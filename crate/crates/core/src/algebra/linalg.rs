use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::Zero;

use super::rat::Rat;

/// Incremental row-echelon basis of sparse vectors over the rationals.
///
/// Each stored row has a distinct pivot, its smallest key, with coefficient
/// one. The pivots of the basis are exactly the minimal keys realized by
/// nonzero vectors of the span.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Rat>>,
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, mut v: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
        v.retain(|_, c| !c.is_zero());
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(k) => v
                    .range((Bound::Excluded(k.clone()), Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v[&k].clone();
                for (j, a) in row {
                    let e = v.entry(j.clone()).or_insert_with(Rat::zero);
                    *e -= &c * a;
                    if e.is_zero() {
                        v.remove(j);
                    }
                }
            }
            cursor = Some(k);
        }
        v
    }

    /// Adds `v` to the basis; returns false if it was already in the span.
    pub fn insert(&mut self, v: BTreeMap<K, Rat>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        let row: BTreeMap<K, Rat> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, Rat>) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn v(entries: &[(u32, i64)]) -> BTreeMap<u32, Rat> {
        entries.iter().map(|&(k, c)| (k, rat(c, 1))).collect()
    }

    #[test]
    fn rank_and_pivots() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(v(&[(0, 1), (1, 1)])));
        assert!(b.insert(v(&[(0, 1), (2, 1)])));
        assert!(!b.insert(v(&[(1, 2), (2, -2)])));
        assert!(!b.insert(v(&[])));
        assert_eq!(b.rank(), 2);
        assert_eq!(b.pivots().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert!(b.contains(v(&[(0, 2), (1, 1), (2, 1)])));
        assert!(!b.contains(v(&[(2, 1)])));
    }
}
