//! Permutations of `{0, …, n-1}` in one-line notation.
//!
//! A [`Permutation`] is a small `Copy` value: the image array is a fixed
//! 32-byte buffer whose unused tail is kept as the identity, so equality and
//! hashing never depend on garbage past the degree.
//!
//! Ranking follows the factorial-base digit extraction used to map integers in
//! `[0, n!)` to permutations: at step `i = n, n-1, …, 1` the digit `k mod i`
//! selects (and removes) an entry of the remaining values, and `k` becomes
//! `k div i`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 32;
/// Largest degree whose images fit the nibble-packed [`Permutation::key`].
pub const MAX_KEY_DEGREE: usize = 16;

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial({n}) overflows u64");
    (1..=n as u64).product()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: format!("degree must be in 1..={MAX_DEGREE}"),
        });
    }
    Ok(())
}

const IDENTITY_IMAGES: [u8; MAX_DEGREE] = {
    let mut a = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self {
            degree: n as u8,
            images: IDENTITY_IMAGES,
        })
    }

    /// Builds a permutation from its one-line images, validating bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        let mut buf = IDENTITY_IMAGES;
        for (i, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[v] = true;
            buf[i] = v as u8;
        }
        Ok(Self {
            degree: n as u8,
            images: buf,
        })
    }

    /// Maps `k` in `[0, n!)` to a permutation by factorial-base digit extraction.
    pub fn unrank(k: u64, n: usize) -> Result<Self> {
        check_degree(n)?;
        if n <= 20 && k >= factorial(n) {
            return Err(Error::RankOutOfRange { rank: k, degree: n });
        }
        let mut remaining: Vec<u8> = (0..n as u8).collect();
        let mut images = IDENTITY_IMAGES;
        let mut k = k;
        for (slot, radix) in (1..=n as u64).rev().enumerate() {
            let digit = (k % radix) as usize;
            k /= radix;
            images[slot] = remaining.remove(digit);
        }
        Ok(Self {
            degree: n as u8,
            images,
        })
    }

    /// Inverse of [`Permutation::unrank`].
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        let img = self.images();
        let mut k = 0u64;
        let mut weight = 1u64;
        for j in 0..n {
            let digit = img[j + 1..].iter().filter(|&&v| v < img[j]).count() as u64;
            k += digit * weight;
            weight *= (n - j) as u64;
        }
        k
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree as usize]
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `(p ∘ q)(i) = p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree != q.degree {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    /// Composition without the degree check; callers guarantee equal degrees.
    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        let mut images = [0u8; MAX_DEGREE];
        for (out, &qi) in images.iter_mut().zip(q.images.iter()) {
            *out = self.images[qi as usize];
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = [0u8; MAX_DEGREE];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    /// `q⁻¹ p q`.
    #[inline]
    pub(crate) fn conjugate_by(&self, q: &Permutation) -> Permutation {
        q.inverse().compose_unchecked(&self.compose_unchecked(q))
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = *self;
        let mut acc = Permutation {
            degree: self.degree,
            images: IDENTITY_IMAGES,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// Nibble-packed images; injective within one degree up to [`MAX_KEY_DEGREE`].
    #[inline]
    pub fn key(&self) -> u64 {
        self.images[..MAX_KEY_DEGREE]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &v)| acc | ((v as u64) << (4 * i)))
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points (sum equals the degree).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// +1 for even permutations, −1 for odd; the permutation-matrix determinant.
    pub fn sign(&self) -> i8 {
        let cycles = self.cycle_type().len();
        if (self.degree() - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of fixed points, i.e. the trace of the permutation matrix.
    pub fn fixed_points(&self) -> usize {
        self.images()
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == v as usize)
            .count()
    }

    /// Fixed-point ratio `fixed_points / n`.
    pub fn fixed_point_ratio(&self) -> f64 {
        self.fixed_points() as f64 / self.degree() as f64
    }

    /// Least `m ≥ 1` with `p^m = e`.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    /// Row-major permutation matrix with `M[i][p(i)] = 1`.
    pub fn matrix(&self) -> Vec<u8> {
        let n = self.degree();
        let mut m = vec![0u8; n * n];
        for i in 0..n {
            m[i * n + self.apply(i)] = 1;
        }
        m
    }

    /// Parses one-based cycle notation such as `(1,2,3)(4,5)`.
    ///
    /// Whitespace is ignored; `()` and the empty string denote the identity.
    pub fn parse_cycles(input: &str, n: usize) -> Result<Self> {
        check_degree(n)?;
        let syntax = |reason: &str| Error::CycleSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| syntax("unclosed cycle"))?;
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax("expected '('"))?;
            let body = &body[..body_end - 1];
            rest = &rest[body_end + 1..];
            if body.is_empty() {
                continue;
            }
            let points = body
                .split(',')
                .map(|tok| {
                    let v: usize = tok.parse().map_err(|_| syntax("expected a point"))?;
                    if v == 0 || v > n {
                        return Err(syntax(&format!("point {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if touched[p] {
                    return Err(syntax(&format!("point {} repeated", p + 1)));
                }
                touched[p] = true;
            }
            for (idx, &p) in points.iter().enumerate() {
                images[p] = points[(idx + 1) % points.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// One-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Concatenated row-major matrices of `p` then `q`: `2n²` entries in `{0,1}`.
pub fn flatten_pair(p: &Permutation, q: &Permutation) -> Result<Vec<u8>> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let mut out = p.matrix();
    out.extend(q.matrix());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn unrank_worked_example() {
        assert_eq!(Permutation::unrank(6, 4).unwrap(), perm(&[2, 1, 0, 3]));
        assert_eq!(Permutation::unrank(19, 4).unwrap(), perm(&[3, 1, 2, 0]));
        for n in 1..=8 {
            assert!(Permutation::unrank(0, n).unwrap().is_identity());
        }
    }

    #[test]
    fn unrank_rejects_out_of_range() {
        assert!(matches!(
            Permutation::unrank(24, 4),
            Err(Error::RankOutOfRange {
                rank: 24,
                degree: 4
            })
        ));
        assert!(Permutation::unrank(0, 0).is_err());
        assert!(Permutation::unrank(0, 33).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(perm(&[2, 1, 0, 3]).rank(), 6);
        assert_eq!(perm(&[3, 1, 2, 0]).rank(), 19);
        assert_eq!(Permutation::identity(7).unwrap().rank(), 0);
    }

    #[test]
    fn unrank_is_a_bijection_up_to_degree_five() {
        for n in 1..=5 {
            let total = factorial(n);
            let mut seen = std::collections::HashSet::new();
            for k in 0..total {
                let p = Permutation::unrank(k, n).unwrap();
                assert_eq!(p.rank(), k);
                assert!(seen.insert(p));
            }
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn compose_examples() {
        let t = perm(&[1, 0, 2]);
        let id = Permutation::identity(3).unwrap();
        assert_eq!(t.compose(&t).unwrap(), id);
        let p = perm(&[2, 0, 1]);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
        // p(q(0)) = p(1) = 0
        let q = perm(&[1, 2, 0]);
        assert_eq!(p.compose(&q).unwrap().apply(0), 0);
        assert!(matches!(
            p.compose(&Permutation::identity(4).unwrap()),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(5).unwrap().sign(), 1);
        assert_eq!(perm(&[1, 0, 2]).sign(), -1);
        assert_eq!(perm(&[1, 0, 3, 2]).sign(), 1);
        assert_eq!(perm(&[1, 2, 3, 0]).sign(), -1);
    }

    #[test]
    fn fixed_point_and_order_examples() {
        assert_eq!(Permutation::identity(6).unwrap().fixed_points(), 6);
        assert_eq!(perm(&[2, 1, 0, 3]).fixed_points(), 2);
        assert_eq!(Permutation::identity(6).unwrap().order(), 1);
        assert_eq!(perm(&[0, 3, 2, 1]).order(), 2);
        assert_eq!(perm(&[1, 2, 3, 4, 0]).order(), 5);
        assert_eq!(perm(&[1, 2, 0, 4, 3]).order(), 6);
    }

    #[test]
    fn flatten_pair_worked_example() {
        let v = flatten_pair(&perm(&[2, 1, 0, 3]), &perm(&[3, 1, 2, 0])).unwrap();
        let expected = [
            0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, //
            0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0,
        ];
        assert_eq!(v, expected);
        let id = Permutation::identity(2).unwrap();
        assert_eq!(
            flatten_pair(&id, &id).unwrap(),
            vec![1, 0, 0, 1, 1, 0, 0, 1]
        );
        assert!(flatten_pair(&id, &Permutation::identity(3).unwrap()).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p, perm(&[1, 2, 0, 4, 3, 5]));
        assert_eq!(p.to_cycle_string(), "(1,2,3)(4,5)");
        let q = Permutation::parse_cycles("( 3, 7,11, 8)( 4,10, 5, 6)", 11).unwrap();
        assert_eq!(q.fixed_points(), 3);
        assert_eq!(
            Permutation::parse_cycles("()", 4)
                .unwrap()
                .to_cycle_string(),
            "()"
        );
        assert!(Permutation::parse_cycles("", 4).unwrap().is_identity());
    }

    #[test]
    fn cycle_notation_errors() {
        assert!(Permutation::parse_cycles("(1,2", 4).is_err());
        assert!(Permutation::parse_cycles("(1,5)", 4).is_err());
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 4).is_err());
        assert!(Permutation::parse_cycles("(0,1)", 4).is_err());
        assert!(Permutation::parse_cycles("1,2", 4).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        (0..factorial(n)).prop_map(move |k| Permutation::unrank(k, n).unwrap())
    }

    proptest! {
        #[test]
        fn rank_inverts_unrank(n in 1usize..=8, seed in any::<u64>()) {
            let k = seed % factorial(n);
            prop_assert_eq!(Permutation::unrank(k, n).unwrap().rank(), k);
        }

        #[test]
        fn sign_is_multiplicative(n in 1usize..=8, a in any::<u64>(), b in any::<u64>()) {
            let p = Permutation::unrank(a % factorial(n), n).unwrap();
            let q = Permutation::unrank(b % factorial(n), n).unwrap();
            prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
        }

        #[test]
        fn fixed_points_count_unmoved(p in arb_perm(7)) {
            let moved = p.cycles().iter().map(Vec::len).sum::<usize>();
            prop_assert_eq!(p.fixed_points(), 7 - moved);
            prop_assert_eq!(p.compose(&p.inverse()).unwrap().fixed_points(), 7);
        }

        #[test]
        fn order_annihilates(p in arb_perm(8)) {
            let m = p.order();
            prop_assert!(p.pow(m).is_identity());
            for d in 1..m {
                prop_assert!(!p.pow(d).is_identity());
            }
        }

        #[test]
        fn flatten_has_one_per_row_and_column(p in arb_perm(6), q in arb_perm(6)) {
            let v = flatten_pair(&p, &q).unwrap();
            prop_assert_eq!(v.len(), 72);
            prop_assert_eq!(v.iter().map(|&b| b as usize).sum::<usize>(), 12);
            for m in v.chunks(36) {
                for i in 0..6 {
                    prop_assert_eq!((0..6).map(|j| m[i * 6 + j] as usize).sum::<usize>(), 1);
                    prop_assert_eq!((0..6).map(|j| m[j * 6 + i] as usize).sum::<usize>(), 1);
                }
            }
        }

        #[test]
        fn cycle_string_parses_back(p in arb_perm(9)) {
            prop_assert_eq!(Permutation::parse_cycles(&p.to_cycle_string(), 9).unwrap(), p);
        }
    }
}
