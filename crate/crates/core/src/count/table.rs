//! Memoized count tables with a persistent JSON cache.
//!
//! A table holds exact counts keyed by `(n, h, a, b, tilde)` for one model.
//! Filling is batched: a single forward DP pass from a start index stores
//! the whole `(h, b)` profile at every requested length, which is what the
//! Schmidt spectra consume. Cache files store one JSON document per model
//! with integers as decimal strings; unreadable caches are discarded and
//! rebuilt.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Family, ModelSpec};

use super::dp;

type Key = (usize, usize, u8, u8, bool);

pub struct CountTable {
    model: ModelSpec,
    entries: BTreeMap<Key, BigUint>,
    /// (a, n) profiles already filled.
    filled: BTreeSet<(u8, usize)>,
}

impl CountTable {
    pub fn new(model: ModelSpec) -> Self {
        Self { model, entries: BTreeMap::new(), filled: BTreeSet::new() }
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Runs the forward DP from `a` once, snapshotting every length in
    /// `lengths`.
    pub fn ensure(&mut self, a: u8, lengths: &[usize]) {
        let missing: Vec<usize> = lengths
            .iter()
            .copied()
            .filter(|&n| !self.filled.contains(&(a, n)))
            .collect();
        if missing.is_empty() {
            return;
        }
        let tilde_dp = self.model.family == Family::S32Case2;
        let profiles = dp::profile(&self.model, a, &missing);
        for (n, grid) in profiles {
            for (h, row) in grid.iter().enumerate() {
                for (bi, v) in row.iter().enumerate() {
                    let b = bi as u8 + 1;
                    if tilde_dp {
                        self.entries.insert((n, h, a, b, true), v.clone());
                        self.entries.insert((n, h, a, b, false), v.clone() << h);
                    } else {
                        self.entries.insert((n, h, a, b, false), v.clone());
                    }
                }
            }
            self.filled.insert((a, n));
        }
    }

    pub fn count(&mut self, n: usize, h: usize, a: u8, b: u8, tilde: bool) -> Result<BigUint> {
        let k = self.model.k();
        if a < 1 || a > k || b < 1 || b > k {
            return Err(Error::InvalidModel(format!(
                "sector indices ({a},{b}) outside 1..={k}"
            )));
        }
        if tilde && self.model.family != Family::S32Case2 {
            return Err(Error::InvalidModel(
                "tilde counts only exist for the balanced 𝒮³₂ case".into(),
            ));
        }
        if !self.filled.contains(&(a, n)) {
            self.ensure(a, &[n]);
        }
        Ok(self
            .entries
            .get(&(n, h, a, b, tilde))
            .cloned()
            .unwrap_or_else(BigUint::zero))
    }

    /// Cache file path for this model under `dir`.
    pub fn cache_path(dir: &Path, model: &ModelSpec) -> PathBuf {
        let mut name = model.to_string();
        name.retain(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.');
        let name = name
            .replace([':', '[', ']'], "_")
            .replace(['=', ','], "-");
        dir.join(format!("counts-{name}.json"))
    }

    /// Loads cached entries for this model, ignoring unreadable or
    /// mismatched files (the cache is derivable).
    pub fn load(&mut self, dir: &Path) {
        let path = Self::cache_path(dir, &self.model);
        let Ok(text) = std::fs::read_to_string(&path) else {
            return;
        };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
            return;
        };
        if file.model != self.model {
            return;
        }
        for e in file.entries {
            let Ok(v) = e.value.parse::<BigUint>() else {
                return;
            };
            self.entries.insert((e.n, e.h, e.a, e.b, e.tilde), v);
        }
        for (a, n) in file.filled {
            self.filled.insert((a, n));
        }
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let path = Self::cache_path(dir, &self.model);
        let file = CacheFile {
            model: self.model.clone(),
            filled: self.filled.iter().cloned().collect(),
            entries: self
                .entries
                .iter()
                .map(|(&(n, h, a, b, tilde), v)| CacheEntry {
                    n,
                    h,
                    a,
                    b,
                    tilde,
                    value: v.to_string(),
                })
                .collect(),
        };
        let text = serde_json::to_string(&file)
            .map_err(|e| Error::Cache(format!("serialize: {e}")))?;
        // Write-once semantics via a temp file then rename.
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    model: ModelSpec,
    #[serde(default)]
    filled: Vec<(u8, usize)>,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    n: usize,
    h: usize,
    a: u8,
    b: u8,
    tilde: bool,
    value: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memoization_matches_direct_dp() {
        let model = ModelSpec::s31_lambda0();
        let mut t = CountTable::new(model.clone());
        t.ensure(1, &[5, 10]);
        for h in 0..=4usize {
            for b in 1..=3 {
                assert_eq!(
                    t.count(10, h, 1, b, false).unwrap(),
                    dp::count(&model, 10, h, 1, b, false).unwrap()
                );
            }
        }
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let model = ModelSpec::s21();
        let mut t = CountTable::new(model.clone());
        let v = t.count(9, 0, 1, 1, false).unwrap();
        t.save(dir.path()).unwrap();

        let mut t2 = CountTable::new(model.clone());
        t2.load(dir.path());
        assert!(t2.filled.contains(&(1, 9)));
        assert_eq!(t2.count(9, 0, 1, 1, false).unwrap(), v);

        // Corrupt the file: the table rebuilds from scratch.
        std::fs::write(CountTable::cache_path(dir.path(), &model), b"{ not json").unwrap();
        let mut t3 = CountTable::new(model.clone());
        t3.load(dir.path());
        assert!(t3.is_empty());
        assert_eq!(t3.count(9, 0, 1, 1, false).unwrap(), v);
    }
}
