use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::extension::ExtVertex;

/// Finitely supported integer coordinates on parallelism classes; the image
/// of a group element under the ℓ¹ embedding. Zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coordinates {
    values: BTreeMap<ExtVertex, i64>,
}

impl Coordinates {
    pub fn get(&self, key: &ExtVertex) -> i64 {
        self.values.get(key).copied().unwrap_or(0)
    }

    pub(crate) fn add(&mut self, key: ExtVertex, delta: i64) {
        match self.values.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if delta != 0 {
                    e.insert(delta);
                }
            }
        }
    }

    /// Number of nonzero coordinates.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExtVertex, i64)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.values().all(|&v| v >= 0)
    }

    /// `Σ |self_v − other_v|`.
    pub fn l1_distance(&self, other: &Coordinates) -> u64 {
        let mut total: u64 = 0;
        for (k, &v) in &self.values {
            total += (v - other.get(k)).unsigned_abs();
        }
        for (k, &v) in &other.values {
            if !self.values.contains_key(k) {
                total += v.unsigned_abs();
            }
        }
        total
    }

    /// Keys on which the two assignments differ.
    pub fn differing_keys<'a>(&'a self, other: &'a Coordinates) -> Vec<&'a ExtVertex> {
        let mut keys: Vec<&ExtVertex> = self
            .values
            .keys()
            .chain(other.values.keys())
            .filter(|k| self.get(k) != other.get(k))
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }
}
