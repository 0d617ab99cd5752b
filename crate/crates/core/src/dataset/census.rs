use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_dataset_degree, DatasetEntry, PairFilter};
use crate::error::{Error, Result};
use crate::group::analyze;
use crate::perm::{factorial, Permutation};

/// Number of generator pairs producing one isomorphism type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    pub order: u64,
    pub simple: bool,
    /// Ordered pairs with `r1 ≠ r2`.
    pub filtered: u64,
    /// All ordered pairs.
    pub unfiltered: u64,
}

/// Counts every ordered generator pair of degree `n` by the type it generates.
///
/// Groups missing from the catalog are pooled per order under `unknown`.
/// Rows are sorted by group order, then name.
pub fn census(n: usize) -> Result<Vec<CensusRow>> {
    check_dataset_degree(n)?;
    if n > 6 {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "census enumerates all (n!)^2 pairs; limited to n <= 6".into(),
        });
    }
    let f = factorial(n);
    let perms: Vec<Permutation> = (0..f)
        .map(|k| Permutation::unrank(k, n))
        .collect::<Result<_>>()?;
    let partial: Vec<BTreeMap<(u64, String), CensusRow>> = (0..f)
        .into_par_iter()
        .map(|r1| {
            let mut rows: BTreeMap<(u64, String), CensusRow> = BTreeMap::new();
            for r2 in 0..f {
                let v = analyze(&[perms[r1 as usize], perms[r2 as usize]]).expect("degrees match");
                let name = v.name.unwrap_or_else(|| "unknown".to_string());
                let row = rows
                    .entry((v.order, name.clone()))
                    .or_insert_with(|| CensusRow {
                        name,
                        order: v.order,
                        simple: v.simple,
                        filtered: 0,
                        unfiltered: 0,
                    });
                row.unfiltered += 1;
                if r1 != r2 {
                    row.filtered += 1;
                }
            }
            rows
        })
        .collect();
    let mut merged: BTreeMap<(u64, String), CensusRow> = BTreeMap::new();
    for rows in partial {
        for (key, row) in rows {
            match merged.get_mut(&key) {
                Some(acc) => {
                    acc.filtered += row.filtered;
                    acc.unfiltered += row.unfiltered;
                    // Pooled unknown rows may mix verdicts; report simple only if all are.
                    acc.simple &= row.simple;
                }
                None => {
                    merged.insert(key, row);
                }
            }
        }
    }
    Ok(merged.into_values().collect())
}

pub fn render_census_text(n: usize, rows: &[CensusRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "census of 2-generated subgroups of S{n}");
    let _ = writeln!(
        out,
        "{:<12} {:>7} {:>7} {:>10} {:>12}",
        "name", "order", "simple", "filtered", "unfiltered"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<12} {:>7} {:>7} {:>10} {:>12}",
            r.name,
            r.order,
            if r.simple { "yes" } else { "no" },
            r.filtered,
            r.unfiltered
        );
    }
    let filtered: u64 = rows.iter().map(|r| r.filtered).sum();
    let unfiltered: u64 = rows.iter().map(|r| r.unfiltered).sum();
    let _ = writeln!(
        out,
        "{:<12} {:>7} {:>7} {:>10} {:>12}",
        "total", "", "", filtered, unfiltered
    );
    out
}

pub fn render_census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("name,order,simple,filtered,unfiltered\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.name,
            r.order,
            u8::from(r.simple),
            r.filtered,
            r.unfiltered
        );
    }
    out
}

/// Class counts of a dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub degree: usize,
    pub total: u64,
    pub simple: u64,
    pub simple_fraction: f64,
}

impl DatasetStats {
    pub fn of(degree: usize, entries: &[DatasetEntry]) -> Self {
        let simple = entries.iter().filter(|e| e.simple).count() as u64;
        let total = entries.len() as u64;
        Self {
            degree,
            total,
            simple,
            simple_fraction: if total == 0 {
                0.0
            } else {
                simple as f64 / total as f64
            },
        }
    }

    /// Expected total for a full enumeration under `filter`.
    pub fn full_size(degree: usize, filter: PairFilter) -> u64 {
        filter.pair_count(degree)
    }

    pub fn render_text(&self) -> String {
        format!(
            "degree {}\nentries {}\nsimple {}\nnon-simple {}\nsimple fraction {:.4}\n",
            self.degree,
            self.total,
            self.simple,
            self.total - self.simple,
            self.simple_fraction
        )
    }

    pub fn render_csv(&self) -> String {
        format!(
            "degree,entries,simple,non_simple,simple_fraction\n{},{},{},{},{:.6}\n",
            self.degree,
            self.total,
            self.simple,
            self.total - self.simple,
            self.simple_fraction
        )
    }
}
