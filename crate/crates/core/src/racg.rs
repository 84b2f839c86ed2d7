//! The map `Ω` from `J_n` into the right-angled Coxeter group `C(Γ)`.
//!
//! `Γ` has one vertex per strand set of size at least two, with an edge
//! between sets that are disjoint or properly nested. `Ω` sends a word to
//! the strand-set labels of its letters.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{GroupContext, StrandSet, Word};
use crate::median::ball;
use crate::rewrite::equal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaGraph {
    ctx: GroupContext,
}

impl GammaGraph {
    pub fn new(ctx: GroupContext) -> Self {
        Self { ctx }
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn contains(&self, a: StrandSet) -> bool {
        a.len() >= 2 && a.iter().all(|i| i <= self.ctx.n())
    }

    /// `2^n - n - 1`.
    pub fn vertex_count(&self) -> u128 {
        let n = self.ctx.n() as u32;
        (1u128 << n) - n as u128 - 1
    }

    pub fn adjacent(&self, a: StrandSet, b: StrandSet) -> bool {
        a != b && a.is_disjoint_or_nested(b)
    }
}

/// A word in the generators of `C(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LabelWord {
    pub letters: Vec<StrandSet>,
}

impl LabelWord {
    pub fn new(letters: Vec<StrandSet>) -> Self {
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &LabelWord) -> LabelWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        LabelWord { letters }
    }

    /// Inverse in `C(Γ)`: generators are involutions.
    pub fn reverse(&self) -> LabelWord {
        LabelWord { letters: self.letters.iter().rev().copied().collect() }
    }
}

impl fmt::Display for LabelWord {
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

pub fn omega(w: &Word) -> LabelWord {
    LabelWord { letters: w.node_labels() }
}

/// Deletes equal pairs separated only by letters adjacent to them, until
/// none remain. The result is `Γ`-reduced.
pub fn racg_reduce(u: &LabelWord, gamma: &GammaGraph) -> LabelWord {
    let mut out: Vec<StrandSet> = Vec::with_capacity(u.len());
    for &l in &u.letters {
        let mut k = out.len();
        let mut cancelled = false;
        while k > 0 {
            let prev = out[k - 1];
            if prev == l {
                out.remove(k - 1);
                cancelled = true;
                break;
            }
            if !gamma.adjacent(prev, l) {
                break;
            }
            k -= 1;
        }
        if !cancelled {
            out.push(l);
        }
    }
    LabelWord { letters: out }
}

pub fn racg_equal(u: &LabelWord, v: &LabelWord, gamma: &GammaGraph) -> bool {
    racg_reduce(&u.concat(&v.reverse()), gamma).is_empty()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub elements: usize,
    pub pairs_checked: usize,
    pub pure_pairs: usize,
    pub violations: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `Ω` separates the elements of the ball of the given radius
/// and that it is multiplicative on `pure_samples` random pairs of pure
/// elements built from words of length `pure_len`.
pub fn verify_embedding<R: Rng + ?Sized>(
    ctx: GroupContext,
    radius: usize,
    pure_samples: usize,
    pure_len: usize,
    rng: &mut R,
) -> Result<EmbeddingReport> {
    let gamma = GammaGraph::new(ctx);
    let g = ball(ctx, radius)?;
    let images: Vec<LabelWord> = g.vertices().iter().map(|v| racg_reduce(&omega(v.word()), &gamma)).collect();
    let mut report = EmbeddingReport { elements: images.len(), ..Default::default() };
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            report.pairs_checked += 1;
            if racg_equal(&images[i], &images[j], &gamma) {
                report.violations.push(format!(
                    "distinct elements [{}] and [{}] have equal images {}",
                    g.vertex(i),
                    g.vertex(j),
                    images[i]
                ));
            }
        }
    }
    for _ in 0..pure_samples {
        let a = ctx.random_pure_word(pure_len, rng);
        let b = ctx.random_pure_word(pure_len, rng);
        let ab = a.concat(&b)?;
        report.pure_pairs += 1;
        if !racg_equal(&omega(&a).concat(&omega(&b)), &omega(&ab), &gamma) {
            report.violations.push(format!("not multiplicative on [{a}] and [{b}]"));
        }
    }
    Ok(report)
}

/// Spot check that equal words have equal images.
pub fn omega_respects_equality(u: &Word, v: &Word) -> Result<bool> {
    let gamma = GammaGraph::new(u.ctx());
    Ok(!equal(u, v)? || racg_equal(&omega(u), &omega(v), &gamma))
}
