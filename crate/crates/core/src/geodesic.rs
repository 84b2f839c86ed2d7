//! Geodesic representatives by shift-and-cancel.
//!
//! A letter can be transported through a neighbouring letter by the
//! defining relations whenever the two intervals are disjoint or nested;
//! it is blocked by a proper overlap. A word is *irreducible* when no letter
//! can be transported onto another copy of itself and cancelled; irreducible
//! words are exactly the geodesic ones.

use crate::error::Result;
use crate::group::{Interval, Relation, SizeSet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftOutcome {
    Blocked,
    /// The rewritten letters that were passed through, and the interval the
    /// moving letter became.
    Shifted { word: Vec<Interval>, moving: Interval },
}

impl ShiftOutcome {
    pub fn final_interval(&self) -> Option<Interval> {
        match self {
            ShiftOutcome::Blocked => None,
            ShiftOutcome::Shifted { moving, .. } => Some(*moving),
        }
    }
}

/// One transport step: `moving · stationary = stationary' · moving'`.
/// Symmetric in direction because every relation is.
#[inline]
fn transport(moving: Interval, stationary: Interval) -> Option<(Interval, Interval)> {
    match stationary.relation(moving) {
        Relation::Disjoint => Some((stationary, moving)),
        Relation::Equal | Relation::Inside => Some((moving.reflect_unchecked(stationary), moving)),
        Relation::Contains => Some((stationary, stationary.reflect_unchecked(moving))),
        Relation::Overlap => None,
    }
}

/// Moves `moving` from the left end of `through` to its right end.
pub fn shift_right(moving: Interval, through: &[Interval]) -> ShiftOutcome {
    let mut moving = moving;
    let mut word = Vec::with_capacity(through.len());
    for &t in through {
        match transport(moving, t) {
            Some((t2, m2)) => {
                word.push(t2);
                moving = m2;
            }
            None => return ShiftOutcome::Blocked,
        }
    }
    ShiftOutcome::Shifted { word, moving }
}

/// Moves `moving` from the right end of `through` to its left end.
pub fn shift_left(moving: Interval, through: &[Interval]) -> ShiftOutcome {
    let mut moving = moving;
    let mut word = through.to_vec();
    for t in word.iter_mut().rev() {
        match transport(moving, *t) {
            Some((t2, m2)) => {
                *t = t2;
                moving = m2;
            }
            None => return ShiftOutcome::Blocked,
        }
    }
    ShiftOutcome::Shifted { word, moving }
}

/// Finds one cancelling pair, scanning by increasing gap, and returns the
/// shortened letters.
fn cancel_once(letters: &[Interval]) -> Option<Vec<Interval>> {
    let len = letters.len();
    for gap in 1..len {
        for i in 0..len - gap {
            let j = i + gap;
            if let ShiftOutcome::Shifted { word, moving } = shift_left(letters[j], &letters[i + 1..j]) {
                if moving == letters[i] {
                    let mut out = Vec::with_capacity(len - 2);
                    out.extend_from_slice(&letters[..i]);
                    out.extend(word);
                    out.extend_from_slice(&letters[j + 1..]);
                    return Some(out);
                }
            }
        }
    }
    None
}

/// A geodesic word for the element represented by `w`.
pub fn make_irreducible(w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    while let Some(shorter) = cancel_once(&letters) {
        letters = shorter;
    }
    Word::from_parts(w.ctx(), letters)
}

pub fn is_irreducible(w: &Word) -> bool {
    cancel_once(w.letters()).is_none()
}

/// Word length of the element, i.e. its distance from the identity in the
/// Cayley graph.
pub fn length(w: &Word) -> usize {
    make_irreducible(w).len()
}

pub fn distance(u: &Word, v: &Word) -> Result<usize> {
    Ok(length(&u.inverse().concat(v)?))
}

/// Membership in the subgroup generated by the `s_{p,q}` with
/// `q - p + 1 ∈ sizes`.
pub fn in_subgroup(w: &Word, sizes: SizeSet) -> bool {
    make_irreducible(w).letters().iter().all(|l| sizes.contains(l.size()))
}

/// `s_{1,2} s_{2,3} ⋯ s_{n-1,n} · s_{n-2,n-1} ⋯ s_{2,3}`, whose powers
/// trace a convex geodesic line.
pub fn axis_element(ctx: crate::group::GroupContext) -> Word {
    let n = ctx.n();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    pairs.extend((2..n - 1).rev().map(|i| (i, i + 1)));
    ctx.word_from_pairs(&pairs).expect("adjacent intervals are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupContext;
    use crate::rewrite::equal;

    fn c(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn word(n: usize, pairs: &[(usize, usize)]) -> Word {
        c(n).word_from_pairs(pairs).unwrap()
    }

    fn iv(p: usize, q: usize) -> Interval {
        c(8).interval(p, q).unwrap()
    }

    #[test]
    fn shift_right_examples() {
        assert_eq!(
            shift_right(iv(1, 3), &[iv(1, 2)]),
            ShiftOutcome::Shifted { word: vec![iv(2, 3)], moving: iv(1, 3) }
        );
        assert_eq!(
            shift_right(iv(1, 2), &[iv(3, 4)]),
            ShiftOutcome::Shifted { word: vec![iv(3, 4)], moving: iv(1, 2) }
        );
        assert_eq!(shift_right(iv(1, 3), &[iv(2, 4)]), ShiftOutcome::Blocked);
        // moving letter nested in the stationary one gets reflected
        assert_eq!(
            shift_right(iv(1, 2), &[iv(1, 4)]),
            ShiftOutcome::Shifted { word: vec![iv(1, 4)], moving: iv(3, 4) }
        );
    }

    #[test]
    fn shifts_preserve_the_element() {
        let cases = [
            (iv(1, 3), vec![iv(1, 2), iv(4, 5), iv(2, 3)]),
            (iv(2, 3), vec![iv(1, 4), iv(1, 5)]),
            (iv(1, 5), vec![iv(2, 3), iv(1, 2), iv(4, 5)]),
        ];
        let ctx = c(5);
        for (m, through) in cases {
            let mut before = vec![m];
            before.extend(&through);
            if let ShiftOutcome::Shifted { word, moving } = shift_right(m, &through) {
                let mut after = word;
                after.push(moving);
                assert!(equal(&ctx.word(before.clone()).unwrap(), &ctx.word(after).unwrap()).unwrap());
            }
            let mut before = through.clone();
            before.push(m);
            if let ShiftOutcome::Shifted { word, moving } = shift_left(m, &through) {
                let mut after = vec![moving];
                after.extend(word);
                assert!(equal(&ctx.word(before).unwrap(), &ctx.word(after).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn make_irreducible_examples() {
        assert_eq!(make_irreducible(&word(3, &[(1, 3), (1, 2), (1, 3)])), word(3, &[(2, 3)]));
        assert_eq!(make_irreducible(&word(4, &[(1, 2), (3, 4), (1, 2)])), word(4, &[(3, 4)]));
        let w = word(3, &[(1, 3), (1, 2), (2, 3)]);
        assert_eq!(make_irreducible(&w), w);
    }

    #[test]
    fn length_and_distance_examples() {
        assert_eq!(length(&word(3, &[(1, 2), (1, 2)])), 0);
        assert_eq!(length(&word(3, &[(1, 3), (1, 2), (1, 3)])), 1);
        assert_eq!(length(&word(4, &[(1, 2), (3, 4)])), 2);
        let w = word(4, &[(1, 3), (2, 4)]);
        assert_eq!(distance(&w, &w).unwrap(), 0);
        assert_eq!(distance(&c(4).identity(), &word(4, &[(1, 4)])).unwrap(), 1);
        assert_eq!(distance(&word(4, &[(1, 2)]), &word(4, &[(3, 4)])).unwrap(), 2);
        assert!(distance(&word(3, &[(1, 2)]), &word(4, &[(1, 2)])).is_err());
    }

    #[test]
    fn subgroup_examples() {
        let twos: SizeSet = [2].into_iter().collect();
        assert!(in_subgroup(&word(3, &[(1, 2), (2, 3)]), twos));
        assert!(!in_subgroup(&word(3, &[(1, 3)]), twos));
        assert!(in_subgroup(&word(3, &[(1, 3), (1, 2), (1, 3)]), twos));
    }

    #[test]
    fn axis_element_shape() {
        assert_eq!(axis_element(c(4)), word(4, &[(1, 2), (2, 3), (3, 4), (2, 3)]));
        assert_eq!(
            axis_element(c(5)),
            word(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 4), (2, 3)])
        );
    }
}
