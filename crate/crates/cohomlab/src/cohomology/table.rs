use std::collections::BTreeMap;
use std::ops::{Deref, DerefMut};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dimension per (bi)degree. Serialized as `[{"at": key, "dim": n}, ...]`
/// so tuple keys survive JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<K: Ord>(pub BTreeMap<K, usize>);

impl<K: Ord> Default for Table<K> {
    fn default() -> Self {
        Table(BTreeMap::new())
    }
}

impl<K: Ord + Copy> Table<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(&self, k: K) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Sums entries along a projection of the key (e.g. p+q or p−q).
    pub fn collapse<J: Ord + Copy>(&self, f: impl Fn(K) -> J) -> Table<J> {
        let mut out = Table::new();
        for (&k, &v) in &self.0 {
            *out.0.entry(f(k)).or_insert(0) += v;
        }
        out
    }

    /// Values over an inclusive key range, zero-filled.
    pub fn values_over(&self, keys: impl IntoIterator<Item = K>) -> Vec<usize> {
        keys.into_iter().map(|k| self.at(k)).collect()
    }
}

impl<K: Ord> Deref for Table<K> {
    type Target = BTreeMap<K, usize>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl<K: Ord> DerefMut for Table<K> {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl<K: Ord> FromIterator<(K, usize)> for Table<K> {
    fn from_iter<I: IntoIterator<Item = (K, usize)>>(iter: I) -> Self {
        Table(iter.into_iter().collect())
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<K> {
    at: K,
    dim: usize,
}

impl<K: Ord + Serialize + Clone> Serialize for Table<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry<K>> = self.0.iter().map(|(k, &d)| Entry { at: k.clone(), dim: d }).collect();
        v.serialize(s)
    }
}

impl<'de, K: Ord + DeserializeOwned> Deserialize<'de> for Table<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<Entry<K>> = Vec::deserialize(d)?;
        Ok(Table(v.into_iter().map(|e| (e.at, e.dim)).collect()))
    }
}
