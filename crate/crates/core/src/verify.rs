//! Self-checks of the engine, one per headline property. Each check is
//! deterministic for a given seed and reports a one-line outcome.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::conjugacy::{are_conjugate, conjugates_in_ball, order, Order, DEFAULT_BUDGET};
use crate::error::{CactusError, Result};
use crate::geodesic::{axis_element, in_subgroup, length};
use crate::group::{GroupContext, SizeSet, Word};
use crate::median::{ball, check_all_medians, classify_4cycles, reflection_check, ExploredGraph, DEFAULT_VERTEX_CAP};
use crate::racg::verify_embedding;
use crate::rewrite::{chi, equal, normalize, normalize_with, rewrite_trace, NormalWord};
use crate::topology::{abelianization_rank, check_sphere, link_complex, quotient_counts};

pub const DEFAULT_SEED: u64 = 0x5eed_cac7;

/// `(id, short name)` of every check.
pub const CRITERIA: [(u8, &str); 10] = [
    (1, "normal-form confluence"),
    (2, "word problem soundness"),
    (3, "geodesic length oracle"),
    (4, "median property"),
    (5, "conjugacy oracle"),
    (6, "order solver"),
    (7, "coxeter embedding"),
    (8, "topology exact values"),
    (9, "subgroup convexity"),
    (10, "axis geodesity"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Looks a check up by number or by name.
pub fn find_criterion(key: &str) -> Option<u8> {
    let key = key.trim();
    CRITERIA
        .iter()
        .find(|(id, name)| key == id.to_string() || key.eq_ignore_ascii_case(name) || key.eq_ignore_ascii_case(&name.replace(' ', "-")))
        .map(|(id, _)| *id)
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, seed)).collect()
}

pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    let mut rng = StdRng::seed_from_u64(seed ^ u64::from(id));
    let start = Instant::now();
    let result = match id {
        1 => confluence(&mut rng),
        2 => word_problem(&mut rng),
        3 => geodesic_oracle(),
        4 => median_property(),
        5 => conjugacy_oracle(),
        6 => order_solver(&mut rng),
        7 => embedding(&mut rng),
        8 => topology_values(),
        9 => subgroup_convexity(),
        10 => axis_geodesity(),
        _ => Err(CactusError::InvalidArgument(format!("no check numbered {id}"))),
    };
    let (passed, detail) = match result {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(failure)) => (false, failure),
        Err(e) => (false, e.to_string()),
    };
    CriterionOutcome { id, name, passed, detail, elapsed: start.elapsed() }
}

/// Inner `Ok` is a pass with a summary, inner `Err` a failure description.
type Check = Result<std::result::Result<String, String>>;

fn ctx(n: usize) -> GroupContext {
    GroupContext::new(n).expect("small n")
}

fn random_word<R: Rng>(rng: &mut R, max_n: usize, max_len: usize) -> Word {
    let n = rng.gen_range(2..=max_n);
    let len = rng.gen_range(0..=max_len);
    ctx(n).random_word(len, rng)
}

/// All words of length at most `max_len`.
pub fn all_words(ctx: GroupContext, max_len: usize) -> Vec<Word> {
    let gens = ctx.generators();
    let mut out = vec![ctx.identity()];
    let mut layer = vec![ctx.identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut letters = w.letters().to_vec();
                letters.push(g);
                next.push(ctx.word(letters).expect("generators of ctx"));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn confluence(rng: &mut StdRng) -> Check {
    const SAMPLES: usize = 10_000;
    let mut a = StdRng::seed_from_u64(rng.gen());
    let mut b = StdRng::seed_from_u64(rng.gen());
    let mut steps = 0usize;
    for _ in 0..SAMPLES {
        let w = random_word(rng, 6, 12);
        let uniform = normalize_with(&w, |sites| a.gen_range(0..sites.len()));
        let late = normalize_with(&w, |sites| {
            let back = b.gen_range(0..sites.len().min(3));
            sites.len() - 1 - back
        });
        if uniform != late {
            return Ok(Err(format!("[{w}] rewrites to both [{uniform}] and [{late}]")));
        }
        let trace = rewrite_trace(&w, |sites| a.gen_range(0..sites.len()));
        for pair in trace.windows(2) {
            steps += 1;
            if chi(&pair[1]) >= chi(&pair[0]) {
                return Ok(Err(format!("chi does not drop from [{}] to [{}]", pair[0], pair[1])));
            }
        }
    }
    Ok(Ok(format!("{SAMPLES} words agree under two random strategies; chi drops on all {steps} moves")))
}

fn word_problem(rng: &mut StdRng) -> Check {
    const SAMPLES: usize = 10_000;
    for _ in 0..SAMPLES {
        let w = random_word(rng, 6, 12);
        let prod = w.concat(&w.inverse())?;
        if !normalize(&prod).is_empty() {
            return Ok(Err(format!("[{w}] times its inverse is not trivial")));
        }
    }
    let c = ctx(4);
    let words = all_words(c, 3);
    let forms: Vec<(NormalWord, Vec<usize>)> = words.iter().map(|w| (normalize(w), w.sigma().images())).collect();
    let mut pairs = 0usize;
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            pairs += 1;
            let expected = forms[i] == forms[j];
            if equal(u, v)? != expected {
                return Ok(Err(format!("equal disagrees on [{u}] and [{v}]")));
            }
        }
    }
    Ok(Ok(format!("{SAMPLES} random w·w⁻¹ trivial; {pairs} pairs of short words in J_4 consistent")))
}

fn geodesic_oracle() -> Check {
    let mut checked = 0;
    for n in [3, 4] {
        let g = ball(ctx(n), 4)?;
        for id in 0..g.vertex_count() {
            checked += 1;
            let l = length(g.vertex(id).word());
            if l != g.depth(id) {
                return Ok(Err(format!("[{}] has length {l} but graph distance {}", g.vertex(id), g.depth(id))));
            }
        }
    }
    Ok(Ok(format!("length matches graph distance on all {checked} elements of two radius-4 balls")))
}

fn median_property() -> Check {
    let mut triples = 0;
    let mut cycles = 0;
    for n in [3, 4] {
        let g = ball(ctx(n), 3)?;
        let report = check_all_medians(&g)?;
        if let Some(f) = report.failures.first() {
            return Ok(Err(format!("J_{n}: {f}")));
        }
        triples += report.triples;
        cycles += classify_4cycles(&g)?.total();
    }
    Ok(Ok(format!("{triples} triples with a unique median; {cycles} squares all read as relations")))
}

fn conjugacy_oracle() -> Check {
    let mut pairs = 0;
    let mut positives = 0;
    for (n, max_len) in [(3, 3), (4, 2)] {
        let c = ctx(n);
        let b = ball(c, 6)?;
        let words = all_words(c, max_len);
        for u in &words {
            let oracle = conjugates_in_ball(u, &b)?;
            for v in &words {
                pairs += 1;
                let expected = oracle.contains_key(&normalize(v));
                let got = are_conjugate(u, v, DEFAULT_BUDGET)?;
                if got != expected {
                    return Ok(Err(format!("J_{n}: [{u}] ~ [{v}] decided {got}, ball search says {expected}")));
                }
                positives += usize::from(got);
            }
        }
    }
    let c = ctx(3);
    let (s12, s23, s13) = (c.generator(1, 2)?, c.generator(2, 3)?, c.generator(1, 3)?);
    if !are_conjugate(&s12, &s23, DEFAULT_BUDGET)? || are_conjugate(&s12, &s13, DEFAULT_BUDGET)? {
        return Ok(Err("reference pairs in J_3 decided wrongly".into()));
    }
    Ok(Ok(format!("{pairs} pairs agree with the radius-6 search ({positives} conjugate)")))
}

fn order_solver(rng: &mut StdRng) -> Check {
    for n in 2..=8 {
        for g in ctx(n).generators() {
            let w = Word::new(ctx(n), vec![g])?;
            if order(&w) != Order::Finite(2) {
                return Ok(Err(format!("generator {g} of J_{n} has order {}", order(&w))));
            }
        }
    }
    for _ in 0..100 {
        let c = ctx(rng.gen_range(3..=6));
        let gens = c.generators();
        let s = Word::new(c, vec![gens[rng.gen_range(0..gens.len())]])?;
        let len = rng.gen_range(0..=8);
        let g = c.random_word(len, rng);
        let conj = s.conjugate_by(&g)?;
        if order(&conj) != Order::Finite(2) {
            return Ok(Err(format!("conjugate [{conj}] has order {}", order(&conj))));
        }
    }
    let c3 = ctx(3);
    if order(&c3.word_from_pairs(&[(1, 2), (2, 3)])?) != Order::Infinite {
        return Ok(Err("s_{1,2}s_{2,3} in J_3 is reported to have finite order".into()));
    }
    let mut finite = 0;
    for _ in 0..2_000 {
        let w = random_word(rng, 6, 8);
        if let Order::Finite(k) = order(&w) {
            finite += 1;
            let bound = 1u64 << (w.ctx().n() - 1);
            if !k.is_power_of_two() || bound % k != 0 || !normalize(&w.pow(k as usize)).is_empty() {
                return Ok(Err(format!("[{w}] has order {k}")));
            }
        }
    }
    Ok(Ok(format!("generators and 100 conjugates have order 2; {finite} finite orders among 2000 samples are powers of two")))
}

fn embedding(rng: &mut StdRng) -> Check {
    let mut elements = 0;
    let mut pure = 0;
    for n in [3, 4] {
        let report = verify_embedding(ctx(n), 3, 1_000, 6, rng)?;
        if let Some(v) = report.violations.first() {
            return Ok(Err(format!("J_{n}: {v}")));
        }
        elements += report.elements;
        pure += report.pure_pairs;
    }
    Ok(Ok(format!("injective on {elements} ball elements; multiplicative on {pure} pure pairs")))
}

fn topology_values() -> Check {
    for n in 3..=7 {
        let d = n - 3;
        let report = check_sphere(&link_complex(n)?, d);
        if let Some(f) = report.failure {
            return Ok(Err(format!("link complex for n = {n}: {f}")));
        }
    }
    let q = quotient_counts(4)?;
    if q.f != [24, 72, 60, 15] || q.euler() != -3 {
        return Ok(Err(format!("quotient counts for n = 4 are {:?} with Euler characteristic {}", q.f, q.euler())));
    }
    for n in 2..=8 {
        let r = abelianization_rank(n)?;
        if r != n - 1 {
            return Ok(Err(format!("abelianization rank {r} for n = {n}")));
        }
    }
    Ok(Ok("link complexes n = 3..7 are spheres; f = (24, 72, 60, 15), χ = -3; abelianization ranks n - 1".into()))
}

fn subgroup_convexity() -> Check {
    let c = ctx(4);
    let twos: SizeSet = [2].into_iter().collect();
    let sub = ExploredGraph::build(c, 4, twos, DEFAULT_VERTEX_CAP)?;
    let full = ball(c, 4)?;
    for id in 0..sub.vertex_count() {
        let w = sub.vertex(id).word();
        if !in_subgroup(w, twos) || length(w) != sub.depth(id) {
            return Ok(Err(format!("[{}] has no geodesic in size-2 generators", sub.vertex(id))));
        }
    }
    let inside = (0..full.vertex_count()).filter(|&id| in_subgroup(full.vertex(id).word(), twos)).count();
    if inside != sub.vertex_count() {
        return Ok(Err(format!(
            "{inside} ball elements lie in the subgroup, but {} subgroup elements have length at most 4",
            sub.vertex_count()
        )));
    }
    let mut reflections = 0;
    for sizes in [[2, 3, 4].as_slice(), [3, 4].as_slice()] {
        let s: SizeSet = sizes.iter().copied().collect();
        let g = ExploredGraph::build(c, 2, s, DEFAULT_VERTEX_CAP)?;
        let min = s.min().expect("non-empty");
        for gen in c.generators().into_iter().filter(|i| i.size() == min) {
            reflections += 1;
            if !reflection_check(&g, gen, s)? {
                return Ok(Err(format!("{gen} is not a reflection for sizes {s}")));
            }
        }
    }
    Ok(Ok(format!(
        "{} subgroup elements have size-2 geodesics; {reflections} minimal generators act as reflections",
        sub.vertex_count()
    )))
}

fn axis_geodesity() -> Check {
    for n in [4, 5] {
        let g = axis_element(ctx(n));
        let base = length(&g);
        for k in 1..=6 {
            let l = length(&g.pow(k));
            if l != k * base {
                return Ok(Err(format!("J_{n}: power {k} has length {l}, expected {}", k * base)));
            }
        }
    }
    Ok(Ok("powers 1..6 of the axis element are geodesic for n = 4, 5".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(find_criterion("4"), Some(4));
        assert_eq!(find_criterion("order solver"), Some(6));
        assert_eq!(find_criterion("axis-geodesity"), Some(10));
        assert_eq!(find_criterion("nope"), None);
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(all_words(ctx(3), 3).len(), 40);
        assert_eq!(all_words(ctx(4), 2).len(), 43);
    }

    #[test]
    fn quick_checks_pass() {
        for id in [3, 8, 10] {
            let outcome = run_criterion(id, DEFAULT_SEED);
            assert!(outcome.passed, "{outcome}");
        }
    }
}
