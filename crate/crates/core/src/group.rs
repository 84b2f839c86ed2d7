//! Generators, words and the permutation morphism of the cactus group `J_n`.
//!
//! `J_n` is generated by involutions `s_{p,q}` (`1 <= p < q <= n`), one per
//! interval of strands, subject to `s^2 = 1`, commutation of disjoint
//! intervals, and the mock commutation
//! `s_{p,q} s_{m,r} = s_{p+q-r, p+q-m} s_{p,q}` for `[m,r] ⊂ [p,q]`.
//!
//! Products compose so that `Σ(gh) = Σ(g) ∘ Σ(h)`: the right factor acts
//! first.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CactusError, Result};

/// Largest supported strand count; strand sets are stored as `u64` masks.
pub const MAX_STRANDS: usize = 64;

/// The ambient strand count `n` of `J_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupContext {
    n: u8,
}

impl GroupContext {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_STRANDS).contains(&n) {
            return Err(CactusError::InvalidContext { n, max: MAX_STRANDS });
        }
        Ok(Self { n: n as u8 })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Interval `[p, q]` checked against this context.
    pub fn interval(self, p: usize, q: usize) -> Result<Interval> {
        if p >= 1 && p < q && q <= self.n() {
            Ok(Interval { p: p as u8, q: q as u8 })
        } else {
            Err(CactusError::InvalidInterval { p, q, n: self.n() })
        }
    }

    /// All generators, ordered by `(p, q)`.
    pub fn generators(self) -> Vec<Interval> {
        let n = self.n;
        (1..n)
            .flat_map(|p| (p + 1..=n).map(move |q| Interval { p, q }))
            .collect()
    }

    /// Generators whose interval size lies in `sizes`.
    pub fn generators_with_sizes(self, sizes: SizeSet) -> Vec<Interval> {
        self.generators()
            .into_iter()
            .filter(|g| sizes.contains(g.size()))
            .collect()
    }

    pub fn identity(self) -> Word {
        Word { ctx: self, letters: Vec::new() }
    }

    pub fn word(self, letters: Vec<Interval>) -> Result<Word> {
        Word::new(self, letters)
    }

    /// Convenience constructor from `(p, q)` pairs.
    pub fn word_from_pairs(self, pairs: &[(usize, usize)]) -> Result<Word> {
        let letters = pairs
            .iter()
            .map(|&(p, q)| self.interval(p, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { ctx: self, letters })
    }

    /// The word `s_{p,q}`.
    pub fn generator(self, p: usize, q: usize) -> Result<Word> {
        self.word_from_pairs(&[(p, q)])
    }

    /// Uniformly random word of length `len`.
    pub fn random_word<R: Rng + ?Sized>(self, len: usize, rng: &mut R) -> Word {
        let gens = self.generators();
        let letters = (0..len).map(|_| *gens.choose(rng).expect("n >= 2")).collect();
        Word { ctx: self, letters }
    }

    /// A word in the adjacent generators `s_{i,i+1}` whose image under `Σ`
    /// is `perm`.
    pub fn permutation_word(self, perm: &Permutation) -> Result<Word> {
        let n = self.n();
        if perm.n() != n {
            return Err(CactusError::InvalidArgument(format!("{perm} is not a permutation of 1..={n}")));
        }
        let mut current = perm.clone();
        let mut letters = Vec::new();
        while let Some(i) = (1..n).find(|&i| current.apply(i) > current.apply(i + 1)) {
            let t = Interval { p: i as u8, q: i as u8 + 1 };
            current = current.compose(&Permutation::inversion(n, t));
            letters.push(t);
        }
        letters.reverse();
        Ok(Word { ctx: self, letters })
    }

    /// `u` followed by a correction in adjacent generators, making the
    /// product pure.
    pub fn random_pure_word<R: Rng + ?Sized>(self, len: usize, rng: &mut R) -> Word {
        let u = self.random_word(len, rng);
        let fix = self.permutation_word(&u.sigma().inverse()).expect("same n");
        u.concat(&fix).expect("same context")
    }
}

/// How two intervals sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Disjoint,
    /// `self ⊊ other`
    Inside,
    /// `other ⊊ self`
    Contains,
    /// Intersecting but neither contains the other.
    Overlap,
}

/// A generator `s_{p,q}`, i.e. an interval of at least two strands.
///
/// Ordered lexicographically by `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    p: u8,
    q: u8,
}

impl Interval {
    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    pub fn size(self) -> usize {
        (self.q - self.p + 1) as usize
    }

    pub fn strands(self) -> StrandSet {
        StrandSet::range(self.p(), self.q())
    }

    pub fn contains_strand(self, i: usize) -> bool {
        self.p() <= i && i <= self.q()
    }

    /// `self ⊆ other`
    pub fn is_within(self, other: Interval) -> bool {
        other.p <= self.p && self.q <= other.q
    }

    pub fn is_disjoint(self, other: Interval) -> bool {
        self.q < other.p || other.q < self.p
    }

    pub fn relation(self, other: Interval) -> Relation {
        if self == other {
            Relation::Equal
        } else if self.is_disjoint(other) {
            Relation::Disjoint
        } else if self.is_within(other) {
            Relation::Inside
        } else if other.is_within(self) {
            Relation::Contains
        } else {
            Relation::Overlap
        }
    }

    /// Distinct and either disjoint or properly nested.
    pub fn is_compatible(self, other: Interval) -> bool {
        matches!(
            self.relation(other),
            Relation::Disjoint | Relation::Inside | Relation::Contains
        )
    }

    /// Image of the strand `i` under the central inversion of this interval.
    pub fn invert_strand(self, i: usize) -> usize {
        if self.contains_strand(i) {
            self.p() + self.q() - i
        } else {
            i
        }
    }

    /// Mirror image of a sub-interval through the centre of `self`.
    ///
    /// This is the interval appearing on the right-hand side of the mock
    /// commutation `s_{p,q} s_{m,r} = s_{p+q-r, p+q-m} s_{p,q}`.
    pub fn reflect(self, inner: Interval) -> Result<Interval> {
        if !inner.is_within(self) {
            return Err(CactusError::NotNested { outer: self, inner });
        }
        Ok(self.reflect_unchecked(inner))
    }

    pub(crate) fn reflect_unchecked(self, inner: Interval) -> Interval {
        debug_assert!(inner.is_within(self));
        let s = self.p + self.q;
        Interval { p: s - inner.q, q: s - inner.p }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.p, self.q)
    }
}

/// `reflect(outer, inner)`: the mirror of `inner` inside `outer`.
pub fn reflect(outer: Interval, inner: Interval) -> Result<Interval> {
    outer.reflect(inner)
}

/// Set of admissible interval sizes (a subset of `{2..n}`), as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SizeSet(u128);

impl SizeSet {
    pub fn all(ctx: GroupContext) -> Self {
        (2..=ctx.n()).collect()
    }

    pub fn contains(self, size: usize) -> bool {
        size < 128 && self.0 & (1u128 << size) != 0
    }

    pub fn insert(&mut self, size: usize) {
        assert!(size < 128);
        self.0 |= 1u128 << size;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&s| self.contains(s))
    }

    pub fn without(self, size: usize) -> Self {
        Self(self.0 & !(1u128.checked_shl(size as u32).unwrap_or(0)))
    }

    /// Rejects sizes outside `{2..n}` and the empty set.
    pub fn validate(self, ctx: GroupContext) -> Result<Self> {
        if self.is_empty() {
            return Err(CactusError::InvalidArgument("empty size set".into()));
        }
        if let Some(bad) = self.iter().find(|&s| s < 2 || s > ctx.n()) {
            return Err(CactusError::InvalidArgument(format!(
                "size {bad} outside 2..={}",
                ctx.n()
            )));
        }
        Ok(self)
    }
}

impl FromIterator<usize> for SizeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SizeSet::default();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Display for SizeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A finite word in the generators of a fixed `J_n`. The empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    ctx: GroupContext,
    letters: Vec<Interval>,
}

impl Word {
    pub fn new(ctx: GroupContext, letters: Vec<Interval>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.q() > ctx.n()) {
            return Err(CactusError::InvalidInterval { p: bad.p(), q: bad.q(), n: ctx.n() });
        }
        Ok(Self { ctx, letters })
    }

    /// Caller guarantees that every letter is valid for `ctx`.
    pub(crate) fn from_parts(ctx: GroupContext, letters: Vec<Interval>) -> Self {
        debug_assert!(letters.iter().all(|l| l.q() <= ctx.n()));
        Self { ctx, letters }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn letters(&self) -> &[Interval] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Interval> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn check_same_context(&self, other: &Word) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(CactusError::ContextMismatch {
                left: self.ctx.n(),
                right: other.ctx.n(),
            });
        }
        Ok(())
    }

    /// The product `self · other` as a concatenated word.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same_context(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { ctx: self.ctx, letters })
    }

    /// Generators are involutions, so the inverse is the reversed word.
    pub fn inverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { ctx: self.ctx, letters }
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Word { ctx: self.ctx, letters }
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Word) -> Result<Word> {
        g.concat(self)?.concat(&g.inverse())
    }

    /// Image under `Σ`.
    pub fn sigma(&self) -> Permutation {
        let mut perm = Permutation::identity(self.ctx.n());
        // Σ(l_1 ⋯ l_k) = ι_1 ∘ ⋯ ∘ ι_k: fold the letters on the right.
        for &l in &self.letters {
            perm = perm.compose(&Permutation::inversion(self.ctx.n(), l));
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.sigma().is_identity()
    }

    /// Strand set of every node: entry `i` is `Σ(l_1 ⋯ l_{i-1})([p_i, q_i])`.
    pub fn node_labels(&self) -> Vec<StrandSet> {
        let n = self.ctx.n();
        let mut perm = Permutation::identity(n);
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.letters {
            out.push(perm.image_of(l.strands()));
            perm = perm.compose(&Permutation::inversion(n, l));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `Σ(w)`.
pub fn sigma(w: &Word) -> Permutation {
    w.sigma()
}

/// `Σ(prefix)([p, q])`: the strands of `prefix` braided by appending `gen`.
pub fn label(prefix: &Word, gen: Interval) -> StrandSet {
    prefix.sigma().image_of(gen.strands())
}

pub fn is_pure(w: &Word) -> bool {
    w.is_pure()
}

pub fn inverse(w: &Word) -> Word {
    w.inverse()
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (1..=n as u8).collect() }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &x in &image {
            if x == 0 || x > n || seen[x] {
                return Err(CactusError::InvalidArgument(format!(
                    "{image:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { image: image.into_iter().map(|x| x as u8).collect() })
    }

    /// Central inversion of `interval`, fixing the complement.
    pub fn inversion(n: usize, interval: Interval) -> Self {
        Self {
            image: (1..=n).map(|i| interval.invert_strand(i) as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            image: other.image.iter().map(|&j| self.image[j as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn image_of(&self, set: StrandSet) -> StrandSet {
        set.iter().map(|i| self.apply(i)).collect()
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        let mut seen = vec![false; self.n()];
        let mut order = 1u64;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i] as usize - 1;
                len += 1;
            }
            order = order / gcd(order, len) * len;
        }
        order
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A subset of `{1..n}`, `n <= 64`. Used as hyperplane label and as a
/// letter of the right-angled Coxeter group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct StrandSet(u64);

impl StrandSet {
    pub fn empty() -> Self {
        Self(0)
    }

    /// `{lo, ..., hi}`
    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_STRANDS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: StrandSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: StrandSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: StrandSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union(self, other: StrandSet) -> StrandSet {
        Self(self.0 | other.0)
    }

    /// Disjoint or nested (the `Γ`-adjacency predicate, ignoring equality).
    pub fn is_disjoint_or_nested(self, other: StrandSet) -> bool {
        self.is_disjoint(other) || self.is_subset(other) || other.is_subset(self)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_STRANDS).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }
}

impl FromIterator<usize> for StrandSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for i in iter {
            assert!((1..=MAX_STRANDS).contains(&i), "strand {i} out of range");
            bits |= 1 << (i - 1);
        }
        Self(bits)
    }
}

impl fmt::Display for StrandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
