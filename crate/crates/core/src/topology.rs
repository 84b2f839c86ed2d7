//! Finite complexes attached to `J_n`: the link complex of the identity
//! vertex, the quotient cube complex by the pure subgroup, and the
//! abelianization.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::error::{CactusError, Result};
use crate::group::{GroupContext, Interval, Permutation};

pub const COMPLEX_SCHEMA: &str = "cactus.complex/v1";
pub const COUNTS_SCHEMA: &str = "cactus.cube-counts/v1";

/// Largest `n` for which the quotient complex is built cell by cell.
pub const EXPLICIT_QUOTIENT_MAX_N: usize = 6;

/// A simplicial complex on a list of intervals, stored with every simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<Interval>,
    /// `simplices[k]` lists the `k`-simplices as sorted vertex indices.
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Flag complex of the compatibility graph on `vertices`.
    pub fn flag(vertices: Vec<Interval>) -> Self {
        let cliques = compatible_families(&vertices);
        let top = cliques.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for c in &cliques {
            if !c.is_empty() {
                simplices[c.len() - 1].push(c.clone());
            }
        }
        let facets = cliques
            .iter()
            .filter(|c| !c.is_empty())
            .filter(|c| {
                (0..vertices.len()).all(|v| c.contains(&v) || !c.iter().all(|&u| vertices[u].is_compatible(vertices[v])))
            })
            .cloned()
            .collect();
        Self { vertices, simplices, facets }
    }

    /// Dimension of the largest simplex; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler(&self) -> i64 {
        alternating_sum(self.f_vector().iter().map(|&x| x as i128)) as i64
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices.get(1).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": COMPLEX_SCHEMA,
            "vertices": self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "facets": self.facets,
            "dimension": self.dimension(),
            "f_vector": self.f_vector(),
            "euler": self.euler(),
        })
    }
}

/// Every set of pairwise disjoint-or-nested intervals, including the empty
/// set, as sorted index lists.
fn compatible_families(vertices: &[Interval]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(current) = stack.pop() {
        let start = current.last().map_or(0, |&l| l + 1);
        for v in start..vertices.len() {
            if current.iter().all(|&u| vertices[u].is_compatible(vertices[v])) {
                let mut next = current.clone();
                next.push(v);
                out.push(next.clone());
                stack.push(next);
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn alternating_sum(xs: impl Iterator<Item = i128>) -> i128 {
    xs.enumerate().map(|(k, x)| if k % 2 == 0 { x } else { -x }).sum()
}

fn intervals_with_sizes(ctx: GroupContext, lo: usize, hi: usize) -> Vec<Interval> {
    let mut out: Vec<Interval> = ctx.generators().into_iter().filter(|i| (lo..=hi).contains(&i.size())).collect();
    out.sort();
    out
}

/// Flag complex on the intervals of `{1..n}` of size `2..=n-1`.
pub fn link_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(CactusError::InvalidArgument(format!("link complex needs n >= 3, got {n}")));
    }
    let ctx = GroupContext::new(n)?;
    Ok(SimplicialComplex::flag(intervals_with_sizes(ctx, 2, n - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereReport {
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub failure: Option<String>,
}

impl SphereReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Purity, pseudo-manifold condition, connectivity and Euler
/// characteristic of a `d`-sphere.
pub fn check_sphere(c: &SimplicialComplex, d: usize) -> SphereReport {
    let failure = sphere_failure(c, d);
    SphereReport { dimension: d, f_vector: c.f_vector(), euler: c.euler(), failure }
}

fn sphere_failure(c: &SimplicialComplex, d: usize) -> Option<String> {
    if let Some(f) = c.facets.iter().find(|f| f.len() != d + 1) {
        return Some(format!("not pure: facet {} has dimension {}", show(c, f), f.len() as isize - 1));
    }
    let top = c.simplices.get(d).map(Vec::as_slice).unwrap_or(&[]);
    let mut cofaces: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in top {
        for k in 0..s.len() {
            let mut face = s.clone();
            face.remove(k);
            *cofaces.entry(face).or_default() += 1;
        }
    }
    let ridges: Vec<Vec<usize>> = if d == 0 { vec![Vec::new()] } else { c.simplices[d - 1].clone() };
    for r in &ridges {
        let k = cofaces.get(r).copied().unwrap_or(0);
        if k != 2 {
            return Some(format!("ridge {} lies in {k} facets", show(c, r)));
        }
    }
    if d >= 1 {
        let mut uf = UnionFind::<usize>::new(c.vertices.len());
        for e in c.edges() {
            uf.union(e[0], e[1]);
        }
        let roots: std::collections::HashSet<usize> = (0..c.vertices.len()).map(|v| uf.find(v)).collect();
        if roots.len() > 1 {
            return Some(format!("1-skeleton has {} components", roots.len()));
        }
    }
    let want = 1 + if d % 2 == 0 { 1 } else { -1 };
    if c.euler() != want {
        return Some(format!("Euler characteristic {} instead of {want}", c.euler()));
    }
    None
}

fn show(c: &SimplicialComplex, s: &[usize]) -> String {
    let names: Vec<String> = s.iter().map(|&v| c.vertices[v].to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Cube counts `f[k]`, the number of `k`-cubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeComplexCounts {
    pub n: usize,
    pub f: Vec<u128>,
}

impl CubeComplexCounts {
    pub fn euler(&self) -> i128 {
        alternating_sum(self.f.iter().map(|&x| x as i128))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": COUNTS_SCHEMA,
            "n": self.n,
            "f": self.f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "euler": self.euler().to_string(),
        })
    }
}

/// Number of `k`-element families of pairwise compatible intervals of size
/// at least two in `{1..n}`.
pub fn compatible_family_counts(n: usize) -> Result<Vec<u128>> {
    let ctx = GroupContext::new(n)?;
    let families = compatible_families(&intervals_with_sizes(ctx, 2, n));
    let mut c = vec![0u128; families.iter().map(Vec::len).max().unwrap_or(0) + 1];
    for f in families {
        c[f.len()] += 1;
    }
    Ok(c)
}

/// Cell counts of the quotient of the Cayley cube complex by the pure
/// subgroup: `n! · c_k / 2^k`.
pub fn quotient_counts(n: usize) -> Result<CubeComplexCounts> {
    let c = compatible_family_counts(n)?;
    let fact: u128 = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).ok_or(
        CactusError::ResourceLimit { what: "n! overflows 128 bits", limit: 34 },
    )?;
    let f = c
        .iter()
        .enumerate()
        .map(|(k, &ck)| {
            let total = fact
                .checked_mul(ck)
                .ok_or(CactusError::ResourceLimit { what: "cube count overflows 128 bits", limit: n })?;
            let div = 1u128 << k;
            if total % div != 0 {
                return Err(CactusError::Invariant(format!("{total} {k}-cube corners do not divide by {div}")));
            }
            Ok(total / div)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeComplexCounts { n, f })
}

/// Builds the quotient complex cell by cell: a cube is a class of corners
/// `(σ, T)` under moving along one of its edges, and each class must have
/// `2^k` distinct corner permutations.
pub fn quotient_counts_explicit(n: usize) -> Result<CubeComplexCounts> {
    if n > EXPLICIT_QUOTIENT_MAX_N {
        return Err(CactusError::ResourceLimit { what: "explicit quotient strand count", limit: EXPLICIT_QUOTIENT_MAX_N });
    }
    let ctx = GroupContext::new(n)?;
    let intervals = intervals_with_sizes(ctx, 2, n);
    let families = compatible_families(&intervals);
    let perms = all_permutations(n);
    let perm_index: HashMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p.images(), i)).collect();

    let mut corners: Vec<(usize, Vec<Interval>)> = Vec::new();
    let mut corner_index: HashMap<(usize, Vec<Interval>), usize> = HashMap::new();
    for (pi, _) in perms.iter().enumerate() {
        for fam in &families {
            let t: Vec<Interval> = fam.iter().map(|&i| intervals[i]).collect();
            corner_index.insert((pi, t.clone()), corners.len());
            corners.push((pi, t));
        }
    }
    let mut uf = UnionFind::<usize>::new(corners.len());
    for (idx, (pi, t)) in corners.iter().enumerate() {
        for &s in t {
            let moved = perms[*pi].compose(&Permutation::inversion(n, s));
            let mut next: Vec<Interval> = t
                .iter()
                .map(|&u| if u != s && u.is_within(s) { s.reflect(u).expect("nested") } else { u })
                .collect();
            next.sort();
            let key = (perm_index[&moved.images()], next);
            let other = *corner_index
                .get(&key)
                .ok_or_else(|| CactusError::Invariant("moved corner is not a compatible family".into()))?;
            uf.union(idx, other);
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for idx in 0..corners.len() {
        classes.entry(uf.find(idx)).or_default().push(idx);
    }
    let mut f = vec![0u128; families.iter().map(Vec::len).max().unwrap_or(0) + 1];
    for members in classes.values() {
        let k = corners[members[0]].1.len();
        let mut perms_seen: Vec<usize> = members.iter().map(|&m| corners[m].0).collect();
        perms_seen.sort_unstable();
        perms_seen.dedup();
        if members.len() != 1 << k || perms_seen.len() != 1 << k {
            return Err(CactusError::Invariant(format!(
                "a {k}-cube has {} corners on {} permutations",
                members.len(),
                perms_seen.len()
            )));
        }
        f[k] += 1;
    }
    Ok(CubeComplexCounts { n, f })
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    permute(&mut current, 0, &mut out);
    out
}

fn permute(xs: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == xs.len() {
        out.push(Permutation::from_images(xs.clone()).expect("a rearrangement of 1..=n"));
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, out);
        xs.swap(k, i);
    }
}

/// Rank of `J_n` modulo commutators and squares: generators are identified
/// with their mirror images inside any larger interval.
pub fn abelianization_rank(n: usize) -> Result<usize> {
    let ctx = GroupContext::new(n)?;
    let gens = ctx.generators();
    let index: HashMap<Interval, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut uf = UnionFind::<usize>::new(gens.len());
    for &outer in &gens {
        for &inner in &gens {
            if inner != outer && inner.is_within(outer) {
                uf.union(index[&inner], index[&outer.reflect(inner)?]);
            }
        }
    }
    let mut roots: Vec<usize> = (0..gens.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}
