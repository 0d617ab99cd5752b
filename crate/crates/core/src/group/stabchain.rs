//! Deterministic Schreier–Sims stabilizer chain.
//!
//! Used to obtain group orders without enumerating elements: the order is the
//! product of the basic orbit lengths. Every Schreier generator of every
//! level is sifted through the levels below it, so the chain is complete on
//! return.

use crate::perm::{factorial, Permutation};

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    /// `transversal[b]` maps `base_point` to `b`, for `b` in the basic orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
    /// Per orbit position, how many generators have had their Schreier
    /// generator sifted. Generators only ever append, so this is a prefix.
    tested: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize, identity: Permutation) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(identity);
        Self {
            base_point,
            generators: Vec::new(),
            transversal,
            orbit: vec![base_point],
            tested: vec![0],
        }
    }

    /// Extends the orbit and transversal with the current generators.
    fn extend_orbit(&mut self) {
        let mut cursor = 0;
        // Previously known orbit points must also be pushed through new generators.
        while cursor < self.orbit.len() {
            let b = self.orbit[cursor];
            let u = self.transversal[b].expect("orbit point has a transversal");
            for s in &self.generators {
                let c = s.apply(b);
                if self.transversal[c].is_none() {
                    self.transversal[c] = Some(s.compose_unchecked(&u));
                    self.orbit.push(c);
                    self.tested.push(0);
                }
            }
            cursor += 1;
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    identity: Permutation,
    levels: Vec<Level>,
    /// An upper bound on the group order; construction stops once it is reached.
    bound: u64,
}

impl StabChain {
    /// Builds a complete chain for `⟨gens⟩`. `gens` must be non-empty and share a degree.
    pub fn new(gens: &[Permutation]) -> Self {
        let degree = gens.first().map_or(1, Permutation::degree);
        let identity = Permutation::identity(degree).expect("generator degree is valid");
        let full = if degree <= 20 {
            factorial(degree)
        } else {
            u64::MAX
        };
        let even = gens.iter().all(|g| g.sign() > 0);
        let mut chain = Self {
            degree,
            identity,
            levels: Vec::new(),
            bound: if even && degree >= 2 { full / 2 } else { full },
        };
        for g in gens {
            let (residue, depth) = chain.sift(*g, 0);
            if !residue.is_identity() {
                chain.add_generator(depth, residue);
            }
        }
        chain
    }

    /// Strips `g` through the levels from `start`; returns the residue and the
    /// level at which sifting stopped.
    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (depth, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(level.base_point);
            match level.transversal[b] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return (g, depth),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g` (which fixes the base points above `depth`) as a strong
    /// generator at `depth` and restores completeness below it.
    fn add_generator(&mut self, depth: usize, g: Permutation) {
        if depth == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&p| g.apply(p) != p)
                .expect("non-identity residue moves a point");
            self.levels
                .push(Level::new(moved, self.degree, self.identity));
        }
        // Deeper generators belong to every level above them.
        for level in &mut self.levels[..=depth] {
            level.generators.push(g);
            level.extend_orbit();
        }
        for d in (0..=depth).rev() {
            self.close_level(d);
        }
    }

    /// Sifts every untested Schreier generator of level `depth` into the levels below.
    fn close_level(&mut self, depth: usize) {
        loop {
            if self.order() >= self.bound {
                return;
            }
            let level = &mut self.levels[depth];
            let gens = level.generators.len();
            let Some(i) = level.tested.iter().position(|&t| t < gens) else {
                return;
            };
            let j = level.tested[i];
            level.tested[i] += 1;
            let b = level.orbit[i];
            let u_b = level.transversal[b].expect("orbit point has a transversal");
            let s = level.generators[j];
            let u_sb = level.transversal[s.apply(b)].expect("orbit is closed");
            let schreier = u_sb.inverse().compose_unchecked(&s.compose_unchecked(&u_b));
            let (residue, at) = self.sift(schreier, depth + 1);
            if !residue.is_identity() {
                self.add_generator(at, residue);
            }
        }
    }

    /// Adds `g` to the generating set, keeping the chain complete.
    pub fn extend(&mut self, g: Permutation) {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        if g.sign() < 0 && self.bound < self.full_order() {
            // Construction may have stopped early against the smaller bound.
            self.bound = self.full_order();
            for d in (0..self.levels.len()).rev() {
                self.close_level(d);
            }
        }
        let (residue, depth) = self.sift(g, 0);
        if !residue.is_identity() {
            self.add_generator(depth, residue);
        }
    }

    /// Chain for the normal closure of `xs` in `⟨gens⟩`.
    pub fn normal_closure(gens: &[Permutation], xs: &[Permutation]) -> Self {
        let degree = gens.first().or(xs.first()).map_or(1, Permutation::degree);
        let identity = Permutation::identity(degree).expect("generator degree is valid");
        let mut chain = Self::new(&[identity]);
        let mut queue: Vec<Permutation> = Vec::new();
        for &x in xs {
            if !chain.contains(&x) {
                chain.extend(x);
                queue.push(x);
            }
        }
        // Every conjugate of a normal generator by a group generator must lie in the closure.
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.conjugate_by(g);
                if !chain.contains(&y) {
                    chain.extend(y);
                    queue.push(y);
                }
            }
        }
        chain
    }

    fn full_order(&self) -> u64 {
        if self.degree <= 20 {
            factorial(self.degree)
        } else {
            u64::MAX
        }
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(*g, 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }
}
