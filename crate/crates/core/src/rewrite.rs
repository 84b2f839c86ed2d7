//! Interval-diagram rewriting and the canonical normal form.
//!
//! A word is read as an interval diagram: letters that share a strand are
//! ordered top to bottom, letters on disjoint strands float freely. Two
//! rewrite moves act on vertically adjacent nodes of the diagram:
//!
//! * a *reduction* deletes two equal adjacent intervals;
//! * a *raising flip* replaces a smaller interval sitting directly above a
//!   bigger one, `(x, y)` with `x ⊊ y`, by `(y, reflect(y, x))`.
//!
//! Both strictly decrease [`chi`], and the system is confluent, so every
//! element has a unique terminal diagram. [`normalize`] reaches it and then
//! picks the lexicographically smallest word among its linearizations.

use std::fmt;

use crate::error::Result;
use crate::group::{Interval, Relation, StrandSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Reduction,
    RaiseFlip,
    DisjointSwap,
}

/// A move on the literal word, acting on letters `position` and
/// `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub position: usize,
}

impl RewriteMove {
    /// Applies the move, returning `None` when its side condition fails.
    pub fn apply(&self, w: &Word) -> Option<Word> {
        let letters = w.letters();
        let i = self.position;
        let (&x, &y) = (letters.get(i)?, letters.get(i + 1)?);
        let mut out = letters.to_vec();
        match (self.kind, x.relation(y)) {
            (MoveKind::Reduction, Relation::Equal) => {
                out.drain(i..i + 2);
            }
            (MoveKind::RaiseFlip, Relation::Inside) => {
                out[i] = y;
                out[i + 1] = y.reflect_unchecked(x);
            }
            (MoveKind::DisjointSwap, Relation::Disjoint) => out.swap(i, i + 1),
            _ => return None,
        }
        Some(Word::from_parts(w.ctx(), out))
    }
}

/// Moves applicable at literally adjacent positions of `w`.
pub fn applicable_moves(w: &Word) -> Vec<RewriteMove> {
    w.letters()
        .windows(2)
        .enumerate()
        .filter_map(|(position, pair)| {
            let kind = match pair[0].relation(pair[1]) {
                Relation::Equal => MoveKind::Reduction,
                Relation::Inside => MoveKind::RaiseFlip,
                Relation::Disjoint => MoveKind::DisjointSwap,
                Relation::Contains | Relation::Overlap => return None,
            };
            Some(RewriteMove { kind, position })
        })
        .collect()
}

/// A reduction or raising flip between two letters that become adjacent
/// after some disjoint swaps: `lower` covers `upper` in the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteSite {
    pub kind: MoveKind,
    pub upper: usize,
    pub lower: usize,
}

fn site_kind(upper: Interval, lower: Interval) -> Option<MoveKind> {
    match upper.relation(lower) {
        Relation::Equal => Some(MoveKind::Reduction),
        Relation::Inside => Some(MoveKind::RaiseFlip),
        _ => None,
    }
}

/// Walks the letters below `upper`, calling `f` on every letter that sits
/// directly beneath it in the diagram. Stops early when `f` returns `true`.
fn for_each_cover(letters: &[Interval], upper: usize, mut f: impl FnMut(usize) -> bool) {
    let top = letters[upper].strands();
    // strands of the letters strictly between that already hang below `upper`
    let mut shadow = StrandSet::empty();
    for (j, l) in letters.iter().enumerate().skip(upper + 1) {
        let s = l.strands();
        if s.intersects(top) && s.is_disjoint(shadow) && f(j) {
            return;
        }
        if s.intersects(top.union(shadow)) {
            shadow = shadow.union(s);
        }
    }
}

/// Every reduction or raising flip available in the diagram of `w`.
pub fn exposed_sites(w: &Word) -> Vec<RewriteSite> {
    let letters = w.letters();
    let mut out = Vec::new();
    for upper in 0..letters.len() {
        for_each_cover(letters, upper, |lower| {
            if let Some(kind) = site_kind(letters[upper], letters[lower]) {
                out.push(RewriteSite { kind, upper, lower });
            }
            false
        });
    }
    out
}

fn first_site(letters: &[Interval]) -> Option<RewriteSite> {
    let mut found = None;
    for upper in 0..letters.len() {
        for_each_cover(letters, upper, |lower| {
            if let Some(kind) = site_kind(letters[upper], letters[lower]) {
                found = Some(RewriteSite { kind, upper, lower });
                true
            } else {
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Applies a site. Letters between the pair that hang below `upper` are
/// moved beneath the pair, the rest above it; this only permutes disjoint
/// letters.
fn apply_site(letters: &[Interval], site: RewriteSite) -> Vec<Interval> {
    let (i, j) = (site.upper, site.lower);
    let top = letters[i].strands();
    let mut above = Vec::new();
    let mut below = Vec::new();
    let mut shadow = top;
    for &l in &letters[i + 1..j] {
        let s = l.strands();
        if s.intersects(shadow) {
            shadow = shadow.union(s);
            below.push(l);
        } else {
            above.push(l);
        }
    }
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[..i]);
    out.extend(above);
    if site.kind == MoveKind::RaiseFlip {
        let (x, y) = (letters[i], letters[j]);
        out.push(y);
        out.push(y.reflect_unchecked(x));
    }
    out.extend(below);
    out.extend_from_slice(&letters[j + 1..]);
    out
}

/// The lexicographically smallest word with the same diagram as `letters`.
pub fn canonical_linearization(letters: &[Interval]) -> Vec<Interval> {
    let mut remaining = letters.to_vec();
    let mut out = Vec::with_capacity(letters.len());
    while !remaining.is_empty() {
        let mut blocked = StrandSet::empty();
        let mut best: Option<usize> = None;
        for (k, l) in remaining.iter().enumerate() {
            let s = l.strands();
            if s.is_disjoint(blocked) && best.is_none_or(|b| *l < remaining[b]) {
                best = Some(k);
            }
            blocked = blocked.union(s);
        }
        let k = best.expect("a non-empty word has a topmost letter");
        out.push(remaining.remove(k));
    }
    out
}

/// A word known to be the canonical representative of its element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord(Word);

impl NormalWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Interval] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl AsRef<Word> for NormalWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

/// Canonical form of `w`; equal outputs iff equal group elements.
pub fn normalize(w: &Word) -> NormalWord {
    let mut letters = w.letters().to_vec();
    while let Some(site) = first_site(&letters) {
        letters = apply_site(&letters, site);
    }
    NormalWord(Word::from_parts(w.ctx(), canonical_linearization(&letters)))
}

/// Sequence of words visited when rewriting `w`, letting `choose` pick the
/// site at every step. The first entry is `w` and the last is terminal.
pub fn rewrite_trace(w: &Word, mut choose: impl FnMut(&[RewriteSite]) -> usize) -> Vec<Word> {
    let mut trace = vec![w.clone()];
    let mut letters = w.letters().to_vec();
    loop {
        let current = Word::from_parts(w.ctx(), letters.clone());
        let sites = exposed_sites(&current);
        if sites.is_empty() {
            return trace;
        }
        let pick = choose(&sites).min(sites.len() - 1);
        letters = apply_site(&letters, sites[pick]);
        trace.push(Word::from_parts(w.ctx(), letters.clone()));
    }
}

/// Normal form reached under a caller-chosen move order.
pub fn normalize_with(w: &Word, choose: impl FnMut(&[RewriteSite]) -> usize) -> NormalWord {
    let terminal = rewrite_trace(w, choose).pop().expect("trace is never empty");
    NormalWord(Word::from_parts(w.ctx(), canonical_linearization(terminal.letters())))
}

/// Number of node pairs `(i, j)`, `i` above `j`, such that every strand
/// through node `i` also passes through node `j`.
pub fn chi(w: &Word) -> usize {
    let labels = w.node_labels();
    let mut count = 0;
    for (i, a) in labels.iter().enumerate() {
        count += labels[i + 1..].iter().filter(|b| a.is_subset(**b)).count();
    }
    count
}

/// Word problem: do `u` and `v` represent the same element?
pub fn equal(u: &Word, v: &Word) -> Result<bool> {
    u.check_same_context(v)?;
    Ok(normalize(&u.concat(&v.inverse())?).is_empty())
}
