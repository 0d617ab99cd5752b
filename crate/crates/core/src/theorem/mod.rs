//! Finite checks of the determinant and trace constraints on generating
//! pairs of simple groups.
//!
//! A sweep walks generator pairs `(r1, r2)` with `r1 ≠ r2` and neither
//! generator the identity. Each pair is first tested against the clause
//! cheaply; only pairs that break it have their simplicity decided, using
//! [`simplicity_oracle`], which never looks at generator signs. A simple group
//! reached that way is a counterexample.

mod mathieu;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{enumerate_labeled_with, PairFilter, PairSampler};
use crate::error::{Error, Result};
use crate::group::{is_prime, GeneratedGroup, GroupFingerprint, StabChain};
use crate::perm::{factorial, Permutation, MAX_KEY_DEGREE};

pub use mathieu::{
    load_mathieu_fixtures, mathieu_fixtures, verify_mathieu_fixtures, MathieuCheck, MathieuReport,
    MathieuRow,
};

/// Largest degree for an exhaustive pair sweep.
pub const MAX_EXHAUSTIVE_DEGREE: usize = 7;
/// Largest degree for a sampled pair sweep.
pub const MAX_SWEEP_DEGREE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Every generator is even.
    Determinant,
    /// No generator fixes `n−4`, `n−2`, `n−1` or `n` points.
    Trace,
    /// Two distinct even involutions with `n−4` fixed points generate a group
    /// of order `2·ord(σ₁σ₂)` that is not simple.
    Dihedral,
    /// No generator has fixed-point ratio `(n−1)/n`, `(n−2)/n` or `(n−4)/n`.
    Corollary,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::Determinant => "determinant",
            Clause::Trace => "trace",
            Clause::Dihedral => "dihedral",
            Clause::Corollary => "corollary",
        }
    }

    /// Whether one generator breaks the clause on its own. Always false for
    /// [`Clause::Dihedral`], which concerns the pair.
    pub fn broken_by(self, w: &GeneratorWitness, n: usize) -> bool {
        match self {
            Clause::Determinant => w.sign < 0,
            Clause::Trace => excluded_traces(n).contains(&w.fixed_points),
            Clause::Corollary => corollary_excluded(n).contains(&w.fixed_points),
            Clause::Dihedral => false,
        }
    }
}

/// Fixed-point counts a generator of a simple group cannot have.
pub fn excluded_traces(n: usize) -> Vec<usize> {
    [
        n.checked_sub(4),
        n.checked_sub(2),
        n.checked_sub(1),
        Some(n),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Fixed-point counts `n − 2^k`, `k ∈ {0, 1, 2}`, in increasing order.
pub fn corollary_excluded(n: usize) -> Vec<usize> {
    [4, 2, 1]
        .into_iter()
        .filter_map(|d| n.checked_sub(d))
        .collect()
}

/// Sign, trace and fixed-point ratio of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorWitness {
    pub sign: i8,
    pub fixed_points: usize,
    pub fpr: f64,
}

impl GeneratorWitness {
    pub fn of(p: &Permutation) -> Self {
        Self {
            sign: p.sign(),
            fixed_points: p.fixed_points(),
            fpr: p.fixed_point_ratio(),
        }
    }
}

/// A generating pair whose group violates a clause.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub degree: usize,
    pub r1: u64,
    pub r2: u64,
    pub clause: Clause,
    pub witness: [GeneratorWitness; 2],
    pub order: u64,
    pub simple: bool,
}

impl Counterexample {
    /// Re-derives everything from the ranks; true iff the violation reproduces.
    pub fn recheck(&self) -> Result<bool> {
        let gens = [
            Permutation::unrank(self.r1, self.degree)?,
            Permutation::unrank(self.r2, self.degree)?,
        ];
        let witness = gens.map(|g| GeneratorWitness::of(&g));
        if witness != self.witness {
            return Ok(false);
        }
        let (simple, order) = simplicity_oracle(&gens)?;
        if (simple, order) != (self.simple, self.order) {
            return Ok(false);
        }
        Ok(match self.clause {
            Clause::Dihedral => {
                let product = gens[0].compose_unchecked(&gens[1]);
                simple || order != 2 * product.order()
            }
            clause => simple && witness.iter().any(|w| clause.broken_by(w, self.degree)),
        })
    }
}

/// Which pairs a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    /// `count` distinct pairs drawn uniformly without replacement.
    Sample {
        count: usize,
        seed: u64,
    },
}

/// Simplicity and order of `⟨gens⟩` without sign-based shortcuts.
///
/// Prime order is simple. Otherwise a simple group must be perfect, so a
/// proper derived subgroup (the normal closure of the generator commutators,
/// computed with stabilizer chains) settles non-simplicity. Perfect groups of
/// order `m!/2` on `m` moved points are alternating; anything else is decided
/// by normal closures of class representatives.
pub fn simplicity_oracle(gens: &[Permutation]) -> Result<(bool, u64)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::domain("empty generator list"))?;
    let n = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, bad.degree()));
    }
    let order = StabChain::new(gens).order();
    if order == 1 {
        return Ok((false, 1));
    }
    if is_prime(order) {
        return Ok((true, order));
    }
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a
                .inverse()
                .compose_unchecked(&b.inverse())
                .compose_unchecked(a)
                .compose_unchecked(b);
            commutators.push(c);
        }
    }
    if StabChain::normal_closure(gens, &commutators).order() < order {
        return Ok((false, order));
    }
    let moved = (0..n)
        .filter(|&p| gens.iter().any(|g| g.apply(p) != p))
        .count();
    if moved <= 20 && 2 * order == factorial(moved) {
        return Ok((true, order));
    }
    if n > MAX_KEY_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!("class-based simplicity is limited to degree {MAX_KEY_DEGREE}"),
        });
    }
    Ok((
        GeneratedGroup::generate(gens)?.is_simple_by_classes(),
        order,
    ))
}

fn check_pair(
    n: usize,
    r1: u64,
    r2: u64,
    gens: [Permutation; 2],
    clauses: &[Clause],
) -> Vec<Counterexample> {
    let witness = gens.map(|g| GeneratorWitness::of(&g));
    let broken: Vec<Clause> = clauses
        .iter()
        .copied()
        .filter(|c| witness.iter().any(|w| c.broken_by(w, n)))
        .collect();
    if broken.is_empty() {
        return Vec::new();
    }
    let (simple, order) = simplicity_oracle(&gens).expect("degrees match");
    if !simple {
        return Vec::new();
    }
    broken
        .into_iter()
        .map(|clause| Counterexample {
            degree: n,
            r1,
            r2,
            clause,
            witness,
            order,
            simple,
        })
        .collect()
}

const SAMPLE_BATCH: usize = 8192;

fn sweep(n: usize, mode: SweepMode, clauses: &[Clause]) -> Result<Vec<Counterexample>> {
    if n < 5 {
        return Err(Error::domain(format!("sweeps need n >= 5, got {n}")));
    }
    let filter = PairFilter::DistinctNonIdentity;
    let mut found = match mode {
        SweepMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_DEGREE {
                return Err(Error::UnsupportedDegree {
                    degree: n,
                    reason: format!(
                        "exhaustive sweeps are limited to n <= {MAX_EXHAUSTIVE_DEGREE}"
                    ),
                });
            }
            let f = factorial(n);
            let perms: Vec<Permutation> = (0..f)
                .map(|k| Permutation::unrank(k, n))
                .collect::<Result<_>>()?;
            (1..f)
                .into_par_iter()
                .flat_map_iter(|r1| {
                    let perms = &perms;
                    (1..f).filter(move |&r2| r2 != r1).flat_map(move |r2| {
                        check_pair(n, r1, r2, [perms[r1 as usize], perms[r2 as usize]], clauses)
                    })
                })
                .collect::<Vec<_>>()
        }
        SweepMode::Sample { count, seed } => {
            if n > MAX_SWEEP_DEGREE {
                return Err(Error::UnsupportedDegree {
                    degree: n,
                    reason: format!("sampled sweeps are limited to n <= {MAX_SWEEP_DEGREE}"),
                });
            }
            if count == 0 || count as u64 > filter.pair_count(n) {
                return Err(Error::domain(format!(
                    "sample count {count} must be in 1..={}",
                    filter.pair_count(n)
                )));
            }
            let mut sampler = PairSampler::new(n, filter, seed);
            let mut out = Vec::new();
            let mut drawn = 0;
            while drawn < count {
                let pairs = sampler.next_batch(SAMPLE_BATCH.min(count - drawn));
                drawn += pairs.len();
                let batch: Vec<Vec<Counterexample>> = pairs
                    .par_iter()
                    .map(|&(r1, r2)| {
                        let gens = [
                            Permutation::unrank(r1, n).expect("rank in range"),
                            Permutation::unrank(r2, n).expect("rank in range"),
                        ];
                        check_pair(n, r1, r2, gens, clauses)
                    })
                    .collect();
                out.extend(batch.into_iter().flatten());
            }
            out
        }
    };
    found.sort_by_key(|c| (c.r1, c.r2, c.clause));
    Ok(found)
}

/// Simple groups generated by a pair with an odd generator or an excluded trace.
pub fn verify_proposition(n: usize, mode: SweepMode) -> Result<Vec<Counterexample>> {
    sweep(n, mode, &[Clause::Determinant, Clause::Trace])
}

/// Simple groups generated by a pair with a generator of fixed-point ratio
/// `(n − 2^k)/n`, `k ∈ {0, 1, 2}`.
pub fn verify_corollary(n: usize, mode: SweepMode) -> Result<Vec<Counterexample>> {
    sweep(n, mode, &[Clause::Corollary])
}

/// Largest degree for the exhaustive involution check.
pub const MAX_INVOLUTION_DEGREE: usize = 10;

/// Every even permutation of degree `n` with exactly `n − 4` fixed points is
/// an involution, equivalently has a symmetric permutation matrix.
pub fn verify_involution_lemma(n: usize) -> Result<bool> {
    Ok(involution_lemma_cycle_types(n)?
        .iter()
        .all(|t| t.iter().all(|&c| c <= 2)))
}

/// Cycle types (lengths of non-trivial cycles) of the even permutations of
/// degree `n` with `n − 4` fixed points whose matrices are symmetric, plus
/// those of any that are not, found by exhaustive enumeration.
pub fn involution_lemma_cycle_types(n: usize) -> Result<Vec<Vec<usize>>> {
    if !(4..=MAX_INVOLUTION_DEGREE).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!("the involution check runs for 4 <= n <= {MAX_INVOLUTION_DEGREE}"),
        });
    }
    let types: Vec<Option<Vec<usize>>> = (0..factorial(n))
        .into_par_iter()
        .map(|k| {
            let p = Permutation::unrank(k, n).expect("rank in range");
            if p.sign() < 0 || p.fixed_points() != n - 4 {
                return None;
            }
            let m = p.matrix();
            let symmetric = (0..n).all(|i| (0..n).all(|j| m[i * n + j] == m[j * n + i]));
            let involution = p.compose_unchecked(&p).is_identity();
            let mut t: Vec<usize> = p.cycle_type().into_iter().filter(|&c| c > 1).collect();
            if symmetric != involution {
                // Flag the disagreement with an impossible cycle type.
                t.push(0);
            }
            Some(t)
        })
        .collect();
    let mut out: Vec<Vec<usize>> = types.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Cycle types moving exactly `moved` points (all parts at least 2) whose
/// permutations are even, largest part first.
pub fn even_cycle_types_moving(moved: usize) -> Vec<Vec<usize>> {
    fn partitions(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (2..=max.min(rest)).rev() {
            prefix.push(part);
            partitions(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    partitions(moved, moved, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|t| t.iter().map(|c| c - 1).sum::<usize>() % 2 == 0)
        .collect()
}

/// Largest degree for the exhaustive dihedral check.
pub const MAX_DIHEDRAL_DEGREE: usize = 8;

/// Pairs of distinct even permutations with `n − 4` fixed points whose group
/// is simple or has order other than `2·ord(σ₁σ₂)`.
pub fn dihedral_violations(n: usize) -> Result<Vec<Counterexample>> {
    if !(5..=MAX_DIHEDRAL_DEGREE).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!("the dihedral check runs for 5 <= n <= {MAX_DIHEDRAL_DEGREE}"),
        });
    }
    let candidates: Vec<(u64, Permutation)> = (0..factorial(n))
        .map(|k| (k, Permutation::unrank(k, n).expect("rank in range")))
        .filter(|(_, p)| p.sign() > 0 && p.fixed_points() == n - 4)
        .collect();
    let mut found: Vec<Counterexample> = candidates
        .par_iter()
        .flat_map_iter(|&(r1, a)| {
            let candidates = &candidates;
            candidates
                .iter()
                .filter(move |(r2, _)| *r2 != r1)
                .filter_map(move |&(r2, b)| {
                    let (simple, order) = simplicity_oracle(&[a, b]).expect("degrees match");
                    let product = a.compose_unchecked(&b).order();
                    (simple || order != 2 * product).then(|| Counterexample {
                        degree: n,
                        r1,
                        r2,
                        clause: Clause::Dihedral,
                        witness: [GeneratorWitness::of(&a), GeneratorWitness::of(&b)],
                        order,
                        simple,
                    })
                })
        })
        .collect();
    found.sort_by_key(|c| (c.r1, c.r2));
    Ok(found)
}

pub fn verify_dihedral_consequence(n: usize) -> Result<bool> {
    Ok(dihedral_violations(n)?.is_empty())
}

/// Simple groups of the degree-`n` census sharing one `(|G|, π(G))` key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationClass {
    pub order: u64,
    pub order_set: Vec<u64>,
    /// Distinct full fingerprints seen under this key.
    pub fingerprints: Vec<GroupFingerprint>,
}

/// Groups every simple group generated by a distinct pair of degree `n` by
/// order and element-order set, keeping the distinct fingerprints of each.
pub fn separation_classes(n: usize) -> Result<Vec<SeparationClass>> {
    if !(2..=7).contains(&n) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "the separation check runs for 2 <= n <= 7".into(),
        });
    }
    let mut pairs = Vec::new();
    enumerate_labeled_with(n, PairFilter::Distinct, |e| {
        if e.simple {
            pairs.push((e.r1, e.r2));
        }
    })?;
    // The group generated depends only on the unordered generator set.
    pairs.retain(|&(a, b)| a < b);
    let prints: Vec<GroupFingerprint> = pairs
        .par_iter()
        .map(|&(r1, r2)| {
            let gens = [
                Permutation::unrank(r1, n).expect("rank in range"),
                Permutation::unrank(r2, n).expect("rank in range"),
            ];
            GeneratedGroup::generate(&gens)
                .expect("degrees match")
                .fingerprint()
        })
        .collect();
    let mut classes: BTreeMap<(u64, Vec<u64>), Vec<GroupFingerprint>> = BTreeMap::new();
    for fp in prints {
        let slot = classes.entry((fp.order, fp.order_set())).or_default();
        if !slot.contains(&fp) {
            slot.push(fp);
        }
    }
    Ok(classes
        .into_iter()
        .map(|((order, order_set), fingerprints)| SeparationClass {
            order,
            order_set,
            fingerprints,
        })
        .collect())
}

/// True when simple groups of degree `n` with equal `(|G|, π(G))` always have
/// identical fingerprints.
pub fn verify_theorem1_separation(n: usize) -> Result<bool> {
    Ok(separation_classes(n)?
        .iter()
        .all(|c| c.fingerprints.len() == 1))
}
