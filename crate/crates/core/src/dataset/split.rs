use rand::seq::{index, SliceRandom};
use serde::{Deserialize, Serialize};

use super::DatasetEntry;
use crate::error::{Error, Result};
use crate::rng::{self, Purpose};

/// Keeps every simple entry and an equal number of non-simple entries chosen
/// uniformly without replacement. Relative order of kept entries is preserved.
pub fn balance(entries: &[DatasetEntry], seed: u64) -> Result<Vec<DatasetEntry>> {
    let non_simple: Vec<usize> = (0..entries.len()).filter(|&i| !entries[i].simple).collect();
    let simple_count = entries.len() - non_simple.len();
    if simple_count == 0 {
        return Err(Error::domain(
            "cannot balance a dataset with no simple entries",
        ));
    }
    if simple_count > non_simple.len() {
        return Err(Error::domain(format!(
            "{simple_count} simple entries exceed {} non-simple ones",
            non_simple.len()
        )));
    }
    let mut rng = rng::stream(seed, Purpose::Balancing);
    let mut keep = vec![false; entries.len()];
    for (k, e) in keep.iter_mut().zip(entries) {
        *k = e.simple;
    }
    for i in index::sample(&mut rng, non_simple.len(), simple_count) {
        keep[non_simple[i]] = true;
    }
    Ok(entries
        .iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(e, _)| e.clone())
        .collect())
}

/// A seeded `percent` subset of a balanced dataset.
///
/// Each class is shuffled once by the seed and its first
/// `round(len * percent / 100)` entries are kept, so subsets for the same seed
/// are nested as `percent` grows. Original order is preserved in the output.
pub fn subset_percent(
    balanced: &[DatasetEntry],
    percent: f64,
    seed: u64,
) -> Result<Vec<DatasetEntry>> {
    if !(percent > 0.0 && percent <= 100.0) {
        return Err(Error::domain(format!(
            "percent {percent} must be in (0, 100]"
        )));
    }
    let mut rng = rng::stream(seed, Purpose::Subset);
    let mut keep = vec![false; balanced.len()];
    for class in [true, false] {
        let mut idx: Vec<usize> = (0..balanced.len())
            .filter(|&i| balanced[i].simple == class)
            .collect();
        idx.shuffle(&mut rng);
        let take = (idx.len() as f64 * percent / 100.0).round() as usize;
        for &i in &idx[..take.min(idx.len())] {
            keep[i] = true;
        }
    }
    let out: Vec<DatasetEntry> = balanced
        .iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(e, _)| e.clone())
        .collect();
    if out.is_empty() {
        return Err(Error::domain(format!(
            "{percent}% of {} entries is empty",
            balanced.len()
        )));
    }
    Ok(out)
}

/// Assignment of entries to cross-validation folds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub fold_count: usize,
    pub seed: u64,
    /// Fold index of each entry.
    pub fold_assignments: Vec<usize>,
}

impl SplitPlan {
    pub fn validation_indices(&self, fold: usize) -> Vec<usize> {
        self.indices_where(|f| f == fold)
    }

    pub fn training_indices(&self, fold: usize) -> Vec<usize> {
        self.indices_where(|f| f != fold)
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.fold_count];
        for &f in &self.fold_assignments {
            sizes[f] += 1;
        }
        sizes
    }

    fn indices_where(&self, pred: impl Fn(usize) -> bool) -> Vec<usize> {
        self.fold_assignments
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| pred(f).then_some(i))
            .collect()
    }
}

/// Shuffles entry positions and deals them round-robin into `fold_count` folds.
pub fn kfold_split(len: usize, fold_count: usize, seed: u64) -> Result<SplitPlan> {
    if fold_count < 2 {
        return Err(Error::domain("at least two folds are required"));
    }
    if len < fold_count {
        return Err(Error::domain(format!(
            "{len} entries cannot fill {fold_count} folds"
        )));
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut rng::stream(seed, Purpose::Folding));
    let mut fold_assignments = vec![0; len];
    for (pos, &i) in order.iter().enumerate() {
        fold_assignments[i] = pos % fold_count;
    }
    Ok(SplitPlan {
        fold_count,
        seed,
        fold_assignments,
    })
}

/// Seeded split into `train_size` training positions and the remaining test positions.
pub fn train_test_split(
    len: usize,
    train_size: usize,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if train_size == 0 || train_size >= len {
        return Err(Error::domain(format!(
            "training size {train_size} must be in 1..{len}"
        )));
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut rng::stream(seed, Purpose::TrainTestSplit));
    let mut train = order[..train_size].to_vec();
    let mut test = order[train_size..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}
