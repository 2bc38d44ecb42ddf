//! The best-escape priority queue: positions clustered by forfeit.

use std::collections::BTreeMap;

/// Min-queue of positions keyed by forfeit. Each position is present at most
/// once; lowering a key leaves a stale entry behind that `pop_min` skips.
pub(crate) struct ForfeitQueue<K> {
    clusters: BTreeMap<K, Vec<usize>>,
    key: Vec<Option<K>>,
}

impl<K: Ord + Clone> ForfeitQueue<K> {
    pub fn new(n: usize) -> Self {
        ForfeitQueue {
            clusters: BTreeMap::new(),
            key: vec![None; n],
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.key[v].is_some()
    }

    /// Inserts `v`, or lowers its key if `k` is smaller than the current one.
    pub fn push_or_decrease(&mut self, v: usize, k: K) {
        if self.key[v].as_ref().is_some_and(|cur| *cur <= k) {
            return;
        }
        self.key[v] = Some(k.clone());
        self.clusters.entry(k).or_default().push(v);
    }

    /// Removes and returns every position holding the minimal key.
    pub fn pop_min(&mut self) -> Option<(K, Vec<usize>)> {
        while let Some((k, entries)) = self.clusters.pop_first() {
            let live: Vec<usize> = entries
                .into_iter()
                .filter(|&v| self.key[v].as_ref() == Some(&k))
                .collect();
            for &v in &live {
                self.key[v] = None;
            }
            if !live.is_empty() {
                return Some((k, live));
            }
        }
        None
    }
}
