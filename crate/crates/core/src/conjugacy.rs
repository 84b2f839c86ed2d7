//! Conjugacy and order problems.
//!
//! Two cyclically irreducible words are conjugate exactly when one can be
//! rewritten into the other by mock commutations, simple conjugations and
//! cyclic shifts, all of which preserve length. Closures track a
//! conjugator for each member, so positive answers come with a witness.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{CactusError, Result};
use crate::geodesic::{make_irreducible, shift_left, shift_right, ShiftOutcome};
use crate::group::{GroupContext, Interval, Relation, Word};
use crate::median::ExploredGraph;
use crate::rewrite::{normalize, NormalWord};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureMove {
    /// Commutation and mock commutation of adjacent letters.
    Mock,
    /// Conjugation by a generator that shifts through the whole word.
    SimpleConj,
    /// Rotation of the letters.
    CyclicShift,
}

/// Length-preserving rewrites of a set of seed words. Each member is
/// stored with a conjugator `c` such that `member = c · seed · c⁻¹`.
#[derive(Debug, Clone)]
pub struct WordClassClosure {
    ctx: GroupContext,
    moves: Vec<ClosureMove>,
    budget: usize,
    members: BTreeMap<Vec<Interval>, Word>,
}

impl WordClassClosure {
    pub fn build(seed: &Word, moves: &[ClosureMove], budget: usize) -> Result<Self> {
        let ctx = seed.ctx();
        let mut moves = moves.to_vec();
        moves.sort();
        moves.dedup();
        let mut members = BTreeMap::new();
        members.insert(seed.letters().to_vec(), ctx.identity());
        let mut queue = VecDeque::from([seed.letters().to_vec()]);
        while let Some(current) = queue.pop_front() {
            let conj = members[&current].clone();
            let word = Word::from_parts(ctx, current);
            for (next, step) in neighbours(&word, &moves) {
                if members.contains_key(next.letters()) {
                    continue;
                }
                if members.len() >= budget {
                    return Err(CactusError::BudgetExceeded { budget });
                }
                let c = normalize(&step.concat(&conj)?).into_word();
                members.insert(next.letters().to_vec(), c);
                queue.push_back(next.into_letters());
            }
        }
        Ok(Self { ctx, moves, budget, members })
    }

    pub fn moves(&self) -> &[ClosureMove] {
        &self.moves
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains_key(w.letters())
    }

    /// Members in lexicographic letter order.
    pub fn members(&self) -> impl Iterator<Item = Word> + '_ {
        self.members.keys().map(|l| Word::from_parts(self.ctx, l.clone()))
    }

    pub fn conjugator(&self, w: &Word) -> Option<&Word> {
        self.members.get(w.letters())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Word, &Word)> + '_ {
        self.members.iter().map(|(l, c)| (Word::from_parts(self.ctx, l.clone()), c))
    }
}

/// One-step neighbours under `moves`, each with the conjugating element of
/// that step.
fn neighbours(w: &Word, moves: &[ClosureMove]) -> Vec<(Word, Word)> {
    let ctx = w.ctx();
    let mut out = Vec::new();
    for m in moves {
        match m {
            ClosureMove::Mock => out.extend(mock_neighbors(w).into_iter().map(|n| (n, ctx.identity()))),
            ClosureMove::SimpleConj => out.extend(
                simple_conjugations_with(w)
                    .into_iter()
                    .map(|(s, n)| (n, Word::from_parts(ctx, vec![s]))),
            ),
            ClosureMove::CyclicShift => {
                for k in 1..w.len() {
                    let (n, c) = rotate(w, k);
                    out.push((n, c));
                }
            }
        }
    }
    out
}

/// Rotates the first `k` letters to the end; returns the rotation and the
/// conjugator (the inverse of the moved prefix).
fn rotate(w: &Word, k: usize) -> (Word, Word) {
    let letters = w.letters();
    let mut rotated = letters[k..].to_vec();
    rotated.extend_from_slice(&letters[..k]);
    let prefix = Word::from_parts(w.ctx(), letters[..k].to_vec());
    (Word::from_parts(w.ctx(), rotated), prefix.inverse())
}

/// Words obtained by one commutation or mock commutation of adjacent
/// letters, excluding `w` itself.
pub fn mock_neighbors(w: &Word) -> Vec<Word> {
    let letters = w.letters();
    let mut out = Vec::new();
    for i in 0..letters.len().saturating_sub(1) {
        let (x, y) = (letters[i], letters[i + 1]);
        let swapped = match x.relation(y) {
            Relation::Disjoint => Some((y, x)),
            Relation::Inside => Some((y, y.reflect_unchecked(x))),
            Relation::Contains => Some((x.reflect_unchecked(y), x)),
            Relation::Equal | Relation::Overlap => None,
        };
        if let Some((a, b)) = swapped {
            let mut next = letters.to_vec();
            next[i] = a;
            next[i + 1] = b;
            out.push(Word::from_parts(w.ctx(), next));
        }
    }
    out.sort_by(|a, b| a.letters().cmp(b.letters()));
    out.dedup();
    out
}

/// `s · w · s` rewritten to a word of the same length, for every generator
/// `s` that shifts through `w` and comes out unchanged.
pub fn simple_conjugations(w: &Word) -> Vec<Word> {
    let mut out: Vec<Word> = simple_conjugations_with(w).into_iter().map(|(_, n)| n).collect();
    out.sort_by(|a, b| a.letters().cmp(b.letters()));
    out.dedup();
    out
}

fn simple_conjugations_with(w: &Word) -> Vec<(Interval, Word)> {
    w.ctx()
        .generators()
        .into_iter()
        .filter_map(|s| match shift_right(s, w.letters()) {
            ShiftOutcome::Shifted { word, moving } if moving == s => Some((s, Word::from_parts(w.ctx(), word))),
            _ => None,
        })
        .collect()
}

/// Deletes one matching front/back pair, trying ordered pairs `(i, j)` in
/// lexicographic order. Returns the shorter word and the conjugating
/// generator.
fn cyclic_cancel_once(letters: &[Interval]) -> Option<(Vec<Interval>, Interval)> {
    let len = letters.len();
    for i in 0..len {
        let ShiftOutcome::Shifted { word: head, moving: front } = shift_left(letters[i], &letters[..i]) else {
            continue;
        };
        let mut rest = head;
        rest.extend_from_slice(&letters[i + 1..]);
        for j in (0..len).filter(|&j| j != i) {
            let pos = if j < i { j } else { j - 1 };
            let ShiftOutcome::Shifted { word: tail, moving: back } = shift_right(rest[pos], &rest[pos + 1..]) else {
                continue;
            };
            if back == front {
                let mut middle = rest[..pos].to_vec();
                middle.extend(tail);
                return Some((middle, front));
            }
        }
    }
    None
}

/// Shortens some rotation of `w` by cancellation, if possible. Returns
/// the shorter word and the conjugator of the rotation.
fn reduce_some_rotation(w: &Word) -> Option<(Word, Word)> {
    (1..w.len()).find_map(|k| {
        let (rotated, c) = rotate(w, k);
        let shorter = make_irreducible(&rotated);
        (shorter.len() < w.len()).then_some((shorter, c))
    })
}

/// A cyclically irreducible conjugate of `w`, with `c` such that the
/// result equals `c · w · c⁻¹`.
///
/// Besides cancelling a front/back pair, this also cancels pairs that meet
/// across the ends of the word, found by reducing its rotations.
pub fn cyclically_reduce_with_conjugator(w: &Word) -> (Word, Word) {
    let ctx = w.ctx();
    let mut conj = ctx.identity();
    let mut current = make_irreducible(w);
    loop {
        let (next, step) = if let Some((middle, s)) = cyclic_cancel_once(current.letters()) {
            (make_irreducible(&Word::from_parts(ctx, middle)), Word::from_parts(ctx, vec![s]))
        } else if let Some(found) = reduce_some_rotation(&current) {
            found
        } else {
            return (current, conj);
        };
        conj = normalize(&step.concat(&conj).expect("same context")).into_word();
        current = next;
    }
}

pub fn cyclically_reduce(w: &Word) -> Word {
    cyclically_reduce_with_conjugator(w).0
}

pub fn is_cyclically_irreducible(w: &Word) -> bool {
    crate::geodesic::is_irreducible(w) && cyclic_cancel_once(w.letters()).is_none() && reduce_some_rotation(w).is_none()
}

const ALL_MOVES: [ClosureMove; 3] = [ClosureMove::Mock, ClosureMove::SimpleConj, ClosureMove::CyclicShift];

/// A conjugate of `w` none of whose length-preserving rewrites is
/// cyclically reducible, the conjugator `c` (result `= c · w · c⁻¹`), and
/// its closure under all length-preserving moves.
///
/// A cyclically irreducible word may still become reducible after a
/// simple conjugation, so reduction alternates with closure until the
/// closure is stable.
pub fn minimal_conjugate(w: &Word, budget: usize) -> Result<(Word, Word, WordClassClosure)> {
    let (mut current, mut conj) = cyclically_reduce_with_conjugator(w);
    loop {
        let closure = WordClassClosure::build(&current, &ALL_MOVES, budget)?;
        let reducible = closure.iter().find(|(m, _)| !is_cyclically_irreducible(m)).map(|(m, c)| (m, c.clone()));
        let Some((member, cm)) = reducible else {
            return Ok((current, conj, closure));
        };
        let (shorter, cr) = cyclically_reduce_with_conjugator(&member);
        conj = normalize(&cr.concat(&cm)?.concat(&conj)?).into_word();
        current = shorter;
    }
}

/// Some `c` with `c · u · c⁻¹ = v`, or `None` if `u` and `v` are not
/// conjugate.
///
/// Both words are brought to minimal conjugates; `v`'s is then looked up
/// in the closure of `u`'s under mock commutations, simple conjugations and
/// rotations. The rotations let mock commutations act across the ends of
/// the word, as they do on the boundary of an annular diagram.
pub fn find_conjugator(u: &Word, v: &Word, budget: usize) -> Result<Option<Word>> {
    u.check_same_context(v)?;
    let (u1, cu, closure) = minimal_conjugate(u, budget)?;
    let (v1, cv) = cyclically_reduce_with_conjugator(v);
    if v1.len() < u1.len() {
        return Ok(None);
    }
    let (v1, cv) = if v1.len() == u1.len() {
        (v1, cv)
    } else {
        let (v2, cv2, _) = minimal_conjugate(v, budget)?;
        if v2.len() != u1.len() {
            return Ok(None);
        }
        (v2, cv2)
    };
    let Some(ca) = closure.conjugator(&v1) else { return Ok(None) };
    let c = cv.inverse().concat(ca)?.concat(&cu)?;
    Ok(Some(normalize(&c).into_word()))
}

pub fn are_conjugate(u: &Word, v: &Word, budget: usize) -> Result<bool> {
    Ok(find_conjugator(u, v, budget)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Exact order. Finite orders in `J_n` are powers of two dividing
/// `2^(n-1)`, so repeated squaring decides the question.
pub fn order(w: &Word) -> Order {
    let n = w.ctx().n();
    let mut power = normalize(w);
    for j in 0..n {
        if power.is_empty() {
            return Order::Finite(1 << j);
        }
        let sq = power.word().concat(power.word()).expect("same context");
        power = normalize(&sq);
    }
    Order::Infinite
}

/// Brute-force search over the ball of the given radius for `g` with
/// `g · u · g⁻¹ = v`, in vertex order.
pub fn find_conjugator_in_ball(u: &Word, v: &Word, radius: usize) -> Result<Option<Word>> {
    u.check_same_context(v)?;
    let ball = crate::median::ball(u.ctx(), radius)?;
    let target = normalize(v);
    for g in ball.vertices() {
        if normalize(&u.conjugate_by(g.word())?) == target {
            return Ok(Some(g.word().clone()));
        }
    }
    Ok(None)
}

/// `g · u · g⁻¹` for every vertex `g` of the ball, keyed by canonical form
/// and keeping the first conjugator found.
pub fn conjugates_in_ball(u: &Word, ball: &ExploredGraph) -> Result<HashMap<NormalWord, Word>> {
    let mut out = HashMap::new();
    for g in ball.vertices() {
        out.entry(normalize(&u.conjugate_by(g.word())?)).or_insert_with(|| g.word().clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::equal;

    fn c(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn word(n: usize, pairs: &[(usize, usize)]) -> Word {
        c(n).word_from_pairs(pairs).unwrap()
    }

    #[test]
    fn mock_neighbor_examples() {
        assert!(mock_neighbors(&word(3, &[(1, 3), (1, 2)])).contains(&word(3, &[(2, 3), (1, 3)])));
        assert_eq!(mock_neighbors(&word(4, &[(1, 2), (3, 4)])), vec![word(4, &[(3, 4), (1, 2)])]);
        assert!(mock_neighbors(&word(3, &[(1, 2)])).is_empty());
        for w in [word(4, &[(1, 4), (2, 3), (1, 2)]), word(4, &[(2, 4), (3, 4), (1, 2)])] {
            for n in mock_neighbors(&w) {
                assert!(equal(&w, &n).unwrap());
            }
        }
    }

    #[test]
    fn simple_conjugation_examples() {
        let s = simple_conjugations(&word(3, &[(1, 2)]));
        assert!(s.contains(&word(3, &[(2, 3)])));
        assert!(!s.contains(&word(3, &[(1, 3)])));
        assert_eq!(s, vec![word(3, &[(1, 2)]), word(3, &[(2, 3)])]);
        assert_eq!(simple_conjugations(&c(3).identity()), vec![c(3).identity()]);
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(cyclically_reduce(&word(3, &[(1, 2), (2, 3), (1, 2)])).len(), 1);
        assert_eq!(cyclically_reduce(&word(3, &[(1, 2)])), word(3, &[(1, 2)]));
        assert!(cyclically_reduce(&word(3, &[(1, 2), (1, 2)])).is_empty());
        let w = word(4, &[(1, 3), (2, 4), (1, 2), (3, 4), (1, 3)]);
        let (r, conj) = cyclically_reduce_with_conjugator(&w);
        assert!(is_cyclically_irreducible(&r));
        assert!(equal(&w.conjugate_by(&conj).unwrap(), &r).unwrap());
    }

    #[test]
    fn cyclically_irreducible_but_not_minimal() {
        let w = word(4, &[(3, 4), (1, 3), (2, 4), (1, 2)]);
        assert!(is_cyclically_irreducible(&w));
        let (m, conj, _) = minimal_conjugate(&w, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.len(), 2);
        assert!(equal(&w.conjugate_by(&conj).unwrap(), &m).unwrap());
        assert!(are_conjugate(&w, &word(4, &[(1, 3), (2, 4)]), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn conjugacy_examples() {
        let b = DEFAULT_BUDGET;
        assert!(are_conjugate(&word(3, &[(1, 2)]), &word(3, &[(2, 3)]), b).unwrap());
        assert!(!are_conjugate(&word(3, &[(1, 2)]), &word(3, &[(1, 3)]), b).unwrap());
        let w = word(4, &[(1, 3), (2, 4), (1, 2)]);
        assert!(are_conjugate(&w, &w, b).unwrap());
        assert!(are_conjugate(&c(4).identity(), &word(4, &[(1, 2), (1, 2)]), b).unwrap());
        assert!(are_conjugate(&word(3, &[(1, 2)]), &word(4, &[(1, 2)]), b).is_err());
    }

    #[test]
    fn conjugator_witness() {
        let u = word(4, &[(1, 2), (2, 4)]);
        let g = word(4, &[(1, 3), (3, 4), (1, 4)]);
        let v = u.conjugate_by(&g).unwrap();
        let found = find_conjugator(&u, &v, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(equal(&u.conjugate_by(&found).unwrap(), &v).unwrap());
    }

    #[test]
    fn closure_invariants() {
        let seed = word(4, &[(1, 4), (2, 3), (1, 2)]);
        let mock = WordClassClosure::build(&seed, &[ClosureMove::Mock], DEFAULT_BUDGET).unwrap();
        assert!(mock.len() > 1);
        for m in mock.members() {
            assert_eq!(normalize(&m), normalize(&seed));
        }
        let both = WordClassClosure::build(&seed, &[ClosureMove::Mock, ClosureMove::SimpleConj], DEFAULT_BUDGET).unwrap();
        for (m, conj) in both.iter() {
            assert_eq!(m.len(), seed.len());
            assert!(equal(&seed.conjugate_by(conj).unwrap(), &m).unwrap());
        }
        let err = WordClassClosure::build(&seed, &[ClosureMove::Mock, ClosureMove::SimpleConj], 2).unwrap_err();
        assert_eq!(err, CactusError::BudgetExceeded { budget: 2 });
        let cyc = WordClassClosure::build(&seed, &[ClosureMove::CyclicShift], DEFAULT_BUDGET).unwrap();
        assert_eq!(cyc.len(), 3);
        for (m, conj) in cyc.iter() {
            assert!(equal(&seed.conjugate_by(conj).unwrap(), &m).unwrap());
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(order(&word(3, &[(1, 2)])), Order::Finite(2));
        assert_eq!(order(&word(4, &[(1, 4), (2, 3)])), Order::Finite(2));
        assert_eq!(order(&word(3, &[(1, 2), (2, 3)])), Order::Infinite);
        assert_eq!(order(&c(3).identity()), Order::Finite(1));
        assert_eq!(Order::Infinite.to_string(), "infinite");
    }

    #[test]
    fn ball_conjugator_examples() {
        assert_eq!(
            find_conjugator_in_ball(&word(3, &[(1, 2)]), &word(3, &[(2, 3)]), 1).unwrap(),
            Some(word(3, &[(1, 3)]))
        );
        let w = word(3, &[(1, 2), (1, 3)]);
        assert_eq!(find_conjugator_in_ball(&w, &w, 0).unwrap(), Some(c(3).identity()));
        assert_eq!(find_conjugator_in_ball(&word(3, &[(1, 2)]), &word(3, &[(1, 3)]), 4).unwrap(), None);
    }
}
