//! Labeled datasets of generator pairs.
//!
//! An entry is a pair of ranks `(r1, r2)` in `[0, n!)`, the two permutations
//! they unrank to being the generators. The label records whether the
//! generated group is simple, together with its order and catalog name.

mod census;
mod features;
mod io;
mod split;

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::analyze;
use crate::perm::{factorial, Permutation};
use crate::rng::{self, Purpose};

pub use census::{census, render_census_csv, render_census_text, CensusRow, DatasetStats};
pub use features::{featurize, FeatureMode, FeatureVector, ORDER_PROFILE_LEN};
pub use io::{load, persist, write_atomic, DatasetHeader};
pub use split::{balance, kfold_split, subset_percent, train_test_split, SplitPlan};

/// Largest degree that can be fully enumerated.
pub const MAX_ENUMERATION_DEGREE: usize = 7;
/// Largest degree accepted by the dataset builders.
pub const MAX_DATASET_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub degree: usize,
    pub r1: u64,
    pub r2: u64,
    pub simple: bool,
    pub order: u64,
    pub name: Option<String>,
}

impl DatasetEntry {
    pub fn generators(&self) -> Result<[Permutation; 2]> {
        Ok([
            Permutation::unrank(self.r1, self.degree)?,
            Permutation::unrank(self.r2, self.degree)?,
        ])
    }
}

/// Which generator pairs are admitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairFilter {
    /// `r1 ≠ r2`.
    #[default]
    Distinct,
    /// `r1 ≠ r2` and neither generator is the identity.
    DistinctNonIdentity,
}

impl PairFilter {
    pub fn admits(self, r1: u64, r2: u64) -> bool {
        match self {
            PairFilter::Distinct => r1 != r2,
            PairFilter::DistinctNonIdentity => r1 != r2 && r1 != 0 && r2 != 0,
        }
    }

    /// Number of admitted ordered pairs for degree `n`.
    pub fn pair_count(self, n: usize) -> u64 {
        let f = factorial(n);
        match self {
            PairFilter::Distinct => f * f - f,
            PairFilter::DistinctNonIdentity => (f - 1) * (f - 2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairFilter::Distinct => "distinct",
            PairFilter::DistinctNonIdentity => "distinct-nonid",
        }
    }
}

impl std::str::FromStr for PairFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distinct" => Ok(PairFilter::Distinct),
            "distinct-nonid" => Ok(PairFilter::DistinctNonIdentity),
            _ => Err(Error::domain(format!("unknown filter {s:?}"))),
        }
    }
}

fn check_dataset_degree(n: usize) -> Result<()> {
    if !(2..=MAX_DATASET_DEGREE).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!("datasets support degrees 2..={MAX_DATASET_DEGREE}"),
        });
    }
    Ok(())
}

/// Labels one generator pair.
pub fn label_pair(n: usize, r1: u64, r2: u64) -> Result<DatasetEntry> {
    let gens = [Permutation::unrank(r1, n)?, Permutation::unrank(r2, n)?];
    let v = analyze(&gens)?;
    Ok(DatasetEntry {
        degree: n,
        r1,
        r2,
        simple: v.simple,
        order: v.order,
        name: v.name,
    })
}

fn label_batch(n: usize, pairs: &[(u64, u64)]) -> Vec<DatasetEntry> {
    pairs
        .par_iter()
        .map(|&(r1, r2)| label_pair(n, r1, r2).expect("ranks are in range"))
        .collect()
}

/// Rows of `r1` labeled per parallel batch during enumeration.
const ENUMERATION_BLOCK: u64 = 32;

/// Streams every admitted pair of degree `n`, in lexicographic `(r1, r2)`
/// order, to `sink`. Labeling runs on the current rayon pool; the emitted
/// order does not depend on the number of workers.
pub fn enumerate_labeled_with(
    n: usize,
    filter: PairFilter,
    mut sink: impl FnMut(DatasetEntry),
) -> Result<()> {
    check_dataset_degree(n)?;
    if n > MAX_ENUMERATION_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!(
                "full enumeration is limited to n <= {MAX_ENUMERATION_DEGREE}; sample instead"
            ),
        });
    }
    let f = factorial(n);
    let mut start = 0;
    while start < f {
        let end = (start + ENUMERATION_BLOCK).min(f);
        let rows: Vec<Vec<DatasetEntry>> = (start..end)
            .into_par_iter()
            .map(|r1| {
                (0..f)
                    .filter(|&r2| filter.admits(r1, r2))
                    .map(|r2| label_pair(n, r1, r2).expect("ranks are in range"))
                    .collect()
            })
            .collect();
        rows.into_iter().flatten().for_each(&mut sink);
        start = end;
    }
    Ok(())
}

/// Every admitted pair of degree `n`, labeled, in lexicographic order.
pub fn enumerate_labeled(n: usize, filter: PairFilter) -> Result<Vec<DatasetEntry>> {
    let mut out = Vec::new();
    enumerate_labeled_with(n, filter, |e| out.push(e))?;
    Ok(out)
}

/// Draws admitted pairs uniformly without repetition, in a fixed order for a given seed.
pub(crate) struct PairSampler {
    n: usize,
    filter: PairFilter,
    f: u64,
    rng: rand_chacha::ChaCha8Rng,
    seen: HashSet<(u64, u64)>,
}

impl PairSampler {
    pub(crate) fn new(n: usize, filter: PairFilter, seed: u64) -> Self {
        Self {
            n,
            filter,
            f: factorial(n),
            rng: rng::stream(seed, Purpose::Sampling),
            seen: HashSet::new(),
        }
    }

    fn exhausted(&self) -> bool {
        self.seen.len() as u64 >= self.filter.pair_count(self.n)
    }

    fn next_pair(&mut self) -> Option<(u64, u64)> {
        while !self.exhausted() {
            let r1 = self.rng.gen_range(0..self.f);
            let r2 = self.rng.gen_range(0..self.f);
            if self.filter.admits(r1, r2) && self.seen.insert((r1, r2)) {
                return Some((r1, r2));
            }
        }
        None
    }

    pub(crate) fn next_batch(&mut self, size: usize) -> Vec<(u64, u64)> {
        std::iter::from_fn(|| self.next_pair()).take(size).collect()
    }
}

const SAMPLE_BATCH: usize = 4096;

/// `count` distinct admitted pairs drawn uniformly at random, labeled.
///
/// Pairs with `r1 = r2` (or an identity generator, per the filter) and pairs
/// already drawn are rejected and redrawn.
pub fn sample_labeled(
    n: usize,
    count: usize,
    seed: u64,
    filter: PairFilter,
) -> Result<Vec<DatasetEntry>> {
    check_dataset_degree(n)?;
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    if count as u64 > filter.pair_count(n) {
        return Err(Error::domain(format!(
            "cannot draw {count} distinct pairs; degree {n} has {}",
            filter.pair_count(n)
        )));
    }
    let mut sampler = PairSampler::new(n, filter, seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pairs = sampler.next_batch(SAMPLE_BATCH.min(count - out.len()));
        out.extend(label_batch(n, &pairs));
    }
    Ok(out)
}

/// Draws pairs in the same order as [`sample_labeled`] and keeps the first
/// `per_class` simple and `per_class` non-simple ones: a uniform balanced sample.
pub fn balanced_sample(
    n: usize,
    per_class: usize,
    seed: u64,
    filter: PairFilter,
) -> Result<Vec<DatasetEntry>> {
    check_dataset_degree(n)?;
    if per_class == 0 {
        return Err(Error::domain("per-class count must be at least 1"));
    }
    let mut sampler = PairSampler::new(n, filter, seed);
    let (mut simple, mut other) = (0usize, 0usize);
    let mut out = Vec::with_capacity(2 * per_class);
    while simple < per_class || other < per_class {
        let pairs = sampler.next_batch(SAMPLE_BATCH);
        if pairs.is_empty() {
            return Err(Error::domain(format!(
                "degree {n} has too few pairs for {per_class} entries per class"
            )));
        }
        for e in label_batch(n, &pairs) {
            let slot = if e.simple { &mut simple } else { &mut other };
            if *slot < per_class {
                *slot += 1;
                out.push(e);
            }
        }
    }
    Ok(out)
}
