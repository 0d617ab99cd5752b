//! Finite permutation groups given by generators.
//!
//! Groups are materialised by breadth-first closure: starting from the
//! identity, every discovered element is right-multiplied by every generator
//! until nothing new appears. Membership is a hash lookup on the packed image
//! key. Everything here is sized for degree ≤ 8 (at most 40 320 elements).

mod catalog;
mod stabchain;

use std::collections::BTreeMap;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, MAX_KEY_DEGREE};

pub use catalog::{Catalog, CatalogEntry};
pub use stabchain::StabChain;

/// A subgroup of `S_n` with all of its elements enumerated.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    keys: FxHashSet<u64>,
}

impl GeneratedGroup {
    /// The trivial subgroup of `S_n`.
    pub fn trivial(degree: usize) -> Result<Self> {
        if degree > MAX_KEY_DEGREE {
            return Err(Error::UnsupportedDegree {
                degree,
                reason: format!("element enumeration supports degrees up to {MAX_KEY_DEGREE}"),
            });
        }
        let e = Permutation::identity(degree)?;
        let mut keys = FxHashSet::default();
        keys.insert(e.key());
        Ok(Self {
            degree,
            generators: Vec::new(),
            elements: vec![e],
            keys,
        })
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(gens: &[Permutation]) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::domain("cannot generate a group from an empty generator list"))?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }
        let mut group = Self::trivial(degree)?;
        for g in gens {
            group.adjoin(*g);
        }
        // Keep the caller's generator list verbatim, duplicates and identity included.
        group.generators = gens.to_vec();
        Ok(group)
    }

    /// Extends the group by one generator. Returns `false` if `g` was already a member.
    fn adjoin(&mut self, g: Permutation) -> bool {
        if self.contains(&g) {
            return false;
        }
        self.generators.push(g);
        let old_len = self.elements.len();
        // Old elements are already closed under the old generators.
        for i in 0..old_len {
            let y = self.elements[i].compose_unchecked(&g);
            if self.keys.insert(y.key()) {
                self.elements.push(y);
            }
        }
        let mut cursor = old_len;
        while cursor < self.elements.len() {
            let x = self.elements[cursor];
            for s in &self.generators {
                let y = x.compose_unchecked(s);
                if self.keys.insert(y.key()) {
                    self.elements.push(y);
                }
            }
            cursor += 1;
        }
        true
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in discovery order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.keys.contains(&p.key())
    }

    /// Generators pairwise commute, which suffices for the whole group.
    pub fn is_abelian(&self) -> bool {
        generators_commute(&self.generators)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for x in &self.elements {
            *counts.entry(x.order()).or_default() += 1;
        }
        GroupFingerprint {
            order: self.order(),
            order_profile: counts.into_iter().collect(),
            abelian: self.is_abelian(),
        }
    }

    /// Smallest normal subgroup containing `x`.
    pub fn normal_closure(&self, x: &Permutation) -> Result<GeneratedGroup> {
        if !self.contains(x) {
            return Err(Error::domain(format!("{x} is not an element of the group")));
        }
        Ok(self
            .normal_closure_of(std::slice::from_ref(x), false)
            .expect("closure without early exit"))
    }

    /// Normal closure of a set of elements of `self`.
    ///
    /// With `stop_when_whole`, returns `None` as soon as the closure exceeds half
    /// the group order; by Lagrange it is then the whole group.
    fn normal_closure_of(
        &self,
        xs: &[Permutation],
        stop_when_whole: bool,
    ) -> Option<GeneratedGroup> {
        let mut closure = GeneratedGroup::trivial(self.degree).expect("degree already validated");
        let mut pending: Vec<Permutation> = xs.to_vec();
        while let Some(c) = pending.pop() {
            if !closure.adjoin(c) {
                continue;
            }
            if stop_when_whole && closure.order() * 2 > self.order() {
                return None;
            }
            for h in &self.generators {
                let conj = c.conjugate_by(h);
                if !closure.contains(&conj) {
                    pending.push(conj);
                }
            }
        }
        Some(closure)
    }

    /// `true` when `sub` is a subgroup of `self` invariant under conjugation.
    pub fn is_normal_subgroup(&self, sub: &GeneratedGroup) -> bool {
        sub.elements.iter().all(|x| self.contains(x))
            && sub.generators.iter().all(|x| {
                self.generators
                    .iter()
                    .all(|h| sub.contains(&x.conjugate_by(h)))
            })
    }

    /// Commutator subgroup, as the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> GeneratedGroup {
        let mut commutators = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a
                    .inverse()
                    .compose_unchecked(&b.inverse())
                    .compose_unchecked(a)
                    .compose_unchecked(b);
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure_of(&commutators, false)
            .expect("closure without early exit")
    }

    /// Simplicity with the trivial group counted as not simple.
    ///
    /// Shortcuts, in order: prime order; abelian of composite order; an odd
    /// generator (the even elements then form an index-2 normal subgroup); the
    /// alternating group `A_n`, `n ≥ 5`; a proper derived subgroup. Anything
    /// left goes to [`GeneratedGroup::is_simple_by_classes`].
    pub fn is_simple(&self) -> bool {
        let order = self.order();
        if order == 1 {
            return false;
        }
        if is_prime(order) {
            return true;
        }
        if self.is_abelian() {
            return false;
        }
        if self.generators.iter().any(|g| g.sign() < 0) {
            return false;
        }
        if self.degree >= 5 && order == factorial(self.degree) / 2 {
            return true;
        }
        if self.derived_subgroup().order() < order {
            return false;
        }
        self.is_simple_by_classes()
    }

    /// Simplicity decided only by normal closures of conjugacy-class representatives.
    pub fn is_simple_by_classes(&self) -> bool {
        let order = self.order();
        if order == 1 {
            return false;
        }
        let mut visited: FxHashSet<u64> = FxHashSet::default();
        for x in &self.elements[1..] {
            if visited.contains(&x.key()) {
                continue;
            }
            self.mark_conjugacy_class(x, &mut visited);
            if self
                .normal_closure_of(std::slice::from_ref(x), true)
                .is_some()
            {
                return false;
            }
        }
        true
    }

    fn mark_conjugacy_class(&self, x: &Permutation, visited: &mut FxHashSet<u64>) {
        let mut stack = vec![*x];
        visited.insert(x.key());
        while let Some(y) = stack.pop() {
            for h in &self.generators {
                let z = y.conjugate_by(h);
                if visited.insert(z.key()) {
                    stack.push(z);
                }
            }
        }
    }

    /// One representative per conjugacy class, identity first.
    pub fn conjugacy_class_representatives(&self) -> Vec<Permutation> {
        let mut visited = FxHashSet::default();
        let mut reps = Vec::new();
        for x in &self.elements {
            if !visited.contains(&x.key()) {
                self.mark_conjugacy_class(x, &mut visited);
                reps.push(*x);
            }
        }
        reps
    }

    /// Catalog name for this group's fingerprint, or `"unknown"`.
    pub fn classify(&self) -> String {
        Catalog::builtin()
            .lookup(&self.fingerprint())
            .unwrap_or("unknown")
            .to_string()
    }
}

pub(crate) fn generators_commute(gens: &[Permutation]) -> bool {
    gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
    })
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Order, element-order multiset and commutativity of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: u64,
    /// Sorted `(element order, count)` pairs; counts sum to `order`.
    pub order_profile: Vec<(u64, u64)>,
    pub abelian: bool,
}

impl GroupFingerprint {
    /// The set of element orders, `π(G)`.
    pub fn order_set(&self) -> Vec<u64> {
        self.order_profile.iter().map(|&(o, _)| o).collect()
    }

    pub fn count_of_order(&self, element_order: u64) -> u64 {
        self.order_profile
            .iter()
            .find(|&&(o, _)| o == element_order)
            .map_or(0, |&(_, c)| c)
    }
}

/// Simplicity verdict and identification for a generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub simple: bool,
    pub order: u64,
    pub name: Option<String>,
}

/// Labels the group generated by `gens` without enumerating it when possible.
///
/// The order comes from a stabilizer chain. Symmetric and alternating groups
/// on the moved points (five or more) are recognised by order alone, odd generators settle non-simplicity, and the closure is built
/// only when simplicity is still open or the order matches a catalog entry.
pub fn analyze(gens: &[Permutation]) -> Result<Verdict> {
    let first = gens
        .first()
        .ok_or_else(|| Error::domain("cannot analyze an empty generator list"))?;
    let n = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, bad.degree()));
    }
    let order = StabChain::new(gens).order();
    // Points moved by some generator; a group of order m! (or m!/2) on m
    // moved points is the full symmetric (or alternating) group on them.
    let moved = (0..n)
        .filter(|&p| gens.iter().any(|g| g.apply(p) != p))
        .count();
    let full = factorial(moved);
    let catalog = Catalog::builtin();

    let mut simple = None;
    let mut name = None;
    if order == 1 {
        simple = Some(false);
        name = Some("1".to_string());
    } else if is_prime(order) {
        simple = Some(true);
    } else if moved >= 5 && order == full {
        simple = Some(false);
        name = Some(format!("S{moved}"));
    } else if moved >= 5 && order * 2 == full {
        simple = Some(true);
        name = Some(format!("A{moved}"));
    } else if gens.iter().any(|g| g.sign() < 0) || generators_commute(gens) {
        simple = Some(false);
    }

    let needs_closure = simple.is_none() || (name.is_none() && catalog.has_order(order));
    if needs_closure {
        let group = GeneratedGroup::generate(gens)?;
        debug_assert_eq!(group.order(), order);
        if simple.is_none() {
            simple = Some(group.is_simple());
        }
        if name.is_none() {
            name = catalog.lookup(&group.fingerprint()).map(str::to_string);
        }
    }
    Ok(Verdict {
        simple: simple.expect("every branch decides simplicity"),
        order,
        name,
    })
}
