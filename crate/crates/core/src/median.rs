//! Finite balls of the Cayley graph and their median geometry.
//!
//! The Cayley graph of `J_n` with respect to the `s_{p,q}` is a median
//! graph. Everything here works on a finite ball around the identity, so
//! hyperplanes are ball-relative: a hyperplane of the full graph may split
//! into several classes near the boundary. Checks that depend on whole
//! hyperplanes carry a margin precondition.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::error::{CactusError, Result};
use crate::geodesic::{distance, make_irreducible};
use crate::group::{label, GroupContext, Interval, Relation, SizeSet, StrandSet, Word};
use crate::rewrite::{normalize, NormalWord};

/// Default cap on the number of vertices a ball may hold.
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

pub const BALL_SCHEMA: &str = "cactus.ball/v1";

/// Undirected edge `{g, g·s}`. Generators are involutions, so `s` labels
/// the edge in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub generator: Interval,
    pub label: StrandSet,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.source { self.target } else { self.source }
    }
}

/// Ball of radius `radius` around the identity in the Cayley graph of
/// `J_n` (or of the subgroup generated by the intervals whose sizes lie in
/// `sizes`).
#[derive(Debug, Clone)]
pub struct ExploredGraph {
    ctx: GroupContext,
    radius: usize,
    sizes: SizeSet,
    vertices: Vec<NormalWord>,
    depth: Vec<usize>,
    index: HashMap<NormalWord, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

pub fn ball(ctx: GroupContext, radius: usize) -> Result<ExploredGraph> {
    ExploredGraph::build(ctx, radius, SizeSet::all(ctx), DEFAULT_VERTEX_CAP)
}

impl ExploredGraph {
    /// BFS from the identity. Vertices are numbered by distance, then by
    /// canonical word order.
    pub fn build(ctx: GroupContext, radius: usize, sizes: SizeSet, cap: usize) -> Result<Self> {
        let sizes = sizes.validate(ctx)?;
        let gens = ctx.generators_with_sizes(sizes);
        let identity = normalize(&ctx.identity());
        let mut vertices = vec![identity.clone()];
        let mut depth = vec![0];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut layer_start = 0;
        for d in 1..=radius {
            let layer_end = vertices.len();
            let mut fresh = BTreeSet::new();
            for v in &vertices[layer_start..layer_end] {
                for &g in &gens {
                    let w = normalize(&append(v.word(), g));
                    if !index.contains_key(&w) {
                        fresh.insert(w);
                    }
                }
            }
            if vertices.len() + fresh.len() > cap {
                return Err(CactusError::ResourceLimit { what: "ball vertex count", limit: cap });
            }
            for w in fresh {
                index.insert(w.clone(), vertices.len());
                vertices.push(w);
                depth.push(d);
            }
            layer_start = layer_end;
            if layer_start == vertices.len() {
                break;
            }
        }

        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (a, v) in vertices.iter().enumerate() {
            for &g in &gens {
                let w = normalize(&append(v.word(), g));
                if let Some(&b) = index.get(&w) {
                    if a < b {
                        let e = edges.len();
                        edges.push(Edge { source: a, target: b, generator: g, label: label(v.word(), g) });
                        adjacency[a].push((b, e));
                        adjacency[b].push((a, e));
                    }
                }
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Self { ctx, radius, sizes, vertices, depth, index, edges, adjacency })
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn sizes(&self) -> SizeSet {
        self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[NormalWord] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &NormalWord {
        &self.vertices[id]
    }

    /// BFS distance from the identity.
    pub fn depth(&self, id: usize) -> usize {
        self.depth[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, id: usize) -> &[(usize, usize)] {
        &self.adjacency[id]
    }

    pub fn id_of(&self, w: &Word) -> Option<usize> {
        self.index.get(&normalize(w)).copied()
    }

    pub fn id_of_normal(&self, w: &NormalWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let adj = &self.adjacency[a];
        adj.binary_search_by(|&(v, _)| v.cmp(&b)).ok().map(|k| adj[k].1)
    }

    /// Number of vertices at each distance from the identity.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth.iter().copied().max().unwrap_or(0) + 1];
        for &d in &self.depth {
            out[d] += 1;
        }
        out
    }

    /// Common neighbours of `x` and `y` other than `except`.
    fn common_neighbors(&self, x: usize, y: usize, except: usize) -> Vec<usize> {
        let (a, b) = (&self.adjacency[x], &self.adjacency[y]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i].0 != except {
                        out.push(a[i].0);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Every 4-cycle of the ball, listed once as `(v, x, w, y)` with `v`
    /// the smallest vertex id and `x < y` its two cycle neighbours.
    pub fn four_cycles(&self) -> Vec<FourCycle> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            let adj = &self.adjacency[v];
            for (k, &(x, _)) in adj.iter().enumerate() {
                if x < v {
                    continue;
                }
                for &(y, _) in &adj[k + 1..] {
                    if y < v {
                        continue;
                    }
                    for w in self.common_neighbors(x, y, v) {
                        if w > v {
                            out.push(self.cycle(v, x, w, y));
                        }
                    }
                }
            }
        }
        out
    }

    fn cycle(&self, v: usize, x: usize, w: usize, y: usize) -> FourCycle {
        let vertices = [v, x, w, y];
        let edges = [0, 1, 2, 3].map(|k| {
            self.edge_between(vertices[k], vertices[(k + 1) % 4])
                .expect("cycle vertices are adjacent")
        });
        FourCycle {
            vertices,
            edges,
            generators: edges.map(|e| self.edges[e].generator),
        }
    }

    /// Whether the edges `e1`, `e2` at the common vertex `v` span a 4-cycle.
    pub fn edges_span_square(&self, v: usize, e1: usize, e2: usize) -> bool {
        let x = self.edges[e1].other(v);
        let y = self.edges[e2].other(v);
        !self.common_neighbors(x, y, v).is_empty()
    }

    /// Cubes lying entirely in the ball, of dimension `1..=max_dim`.
    ///
    /// At a vertex `v`, generators with pairwise compatible intervals span a
    /// cube whose vertices are `v · x(T)`, with `x(T)` the product of the
    /// chosen generators in increasing size order.
    pub fn cubes(&self, max_dim: usize) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            let gens: Vec<Interval> = self.adjacency[v].iter().map(|&(_, e)| self.edges[e].generator).collect();
            let mut stack: Vec<(Vec<Interval>, usize)> = vec![(Vec::new(), 0)];
            while let Some((chosen, from)) = stack.pop() {
                if !chosen.is_empty() {
                    if let Some(mut verts) = self.cube_vertices(v, &chosen) {
                        verts.sort_unstable();
                        if seen.insert(verts.clone()) {
                            out.push(verts);
                        }
                    } else {
                        continue;
                    }
                }
                if chosen.len() == max_dim {
                    continue;
                }
                for k in from..gens.len() {
                    if chosen.iter().all(|c| c.is_compatible(gens[k])) {
                        let mut next = chosen.clone();
                        next.push(gens[k]);
                        stack.push((next, k + 1));
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    fn cube_vertices(&self, v: usize, gens: &[Interval]) -> Option<Vec<usize>> {
        let mut sorted = gens.to_vec();
        sorted.sort_by_key(|g| g.size());
        let base = self.vertices[v].word();
        (0..1usize << sorted.len())
            .map(|mask| {
                let letters: Vec<Interval> = sorted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, g)| *g)
                    .collect();
                let w = base.concat(&Word::from_parts(self.ctx, letters)).ok()?;
                self.id_of(&w)
            })
            .collect()
    }

    /// Graphviz rendering; edges carry generator and strand-set label.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph cayley_ball {{");
        let _ = writeln!(out, "  // n = {}, radius = {}", self.ctx.n(), self.radius);
        for (i, v) in self.vertices.iter().enumerate() {
            let name = if v.is_empty() { "1".to_string() } else { v.to_string() };
            let _ = writeln!(out, "  v{i} [label=\"{name}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -- v{} [label=\"{} {}\"];",
                e.source, e.target, e.generator, e.label
            );
        }
        let _ = writeln!(out, "}}");
        out
    }

    /// JSON document `{schema, n, radius, sizes, vertices, edges, hyperplanes}`.
    pub fn to_json(&self, hyperplanes: &Hyperplanes) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| json!({ "id": i, "word": v.to_string(), "length": self.depth[i] }))
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                json!({
                    "id": i,
                    "source": e.source,
                    "target": e.target,
                    "generator": e.generator.to_string(),
                    "label": e.label.iter().collect::<Vec<_>>(),
                    "hyperplane": hyperplanes.class_of_edge(i),
                })
            })
            .collect();
        let classes: Vec<Value> = hyperplanes
            .classes
            .iter()
            .map(|h| {
                json!({
                    "id": h.id,
                    "label": h.label.iter().collect::<Vec<_>>(),
                    "edges": h.edges,
                })
            })
            .collect();
        json!({
            "schema": BALL_SCHEMA,
            "n": self.ctx.n(),
            "radius": self.radius,
            "sizes": self.sizes.iter().collect::<Vec<_>>(),
            "vertices": vertices,
            "edges": edges,
            "hyperplanes": classes,
        })
    }
}

fn append(w: &Word, g: Interval) -> Word {
    let mut letters = w.letters().to_vec();
    letters.push(g);
    Word::from_parts(w.ctx(), letters)
}

/// A 4-cycle `v – x – w – y – v` with the generators along its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourCycle {
    pub vertices: [usize; 4],
    pub edges: [usize; 4],
    pub generators: [Interval; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleShape {
    /// `(P, M, P, M)` with `P ∩ M = ∅`.
    Commutation,
    /// `(P, M, P, reflect(P, M))` with `M ⊊ P`.
    MockCommutation,
}

impl FourCycle {
    /// Shape of the relation read around the cycle from some starting edge
    /// in some direction, if any.
    pub fn shape(&self) -> Option<CycleShape> {
        let g = self.generators;
        let readings = (0..4).flat_map(|r| {
            let fwd = [g[r], g[(r + 1) % 4], g[(r + 2) % 4], g[(r + 3) % 4]];
            let bwd = [g[r], g[(r + 3) % 4], g[(r + 2) % 4], g[(r + 1) % 4]];
            [fwd, bwd]
        });
        for [a, b, c, d] in readings {
            if a != c {
                continue;
            }
            match b.relation(a) {
                Relation::Disjoint if b == d => return Some(CycleShape::Commutation),
                Relation::Inside if d == a.reflect_unchecked(b) => {
                    return Some(CycleShape::MockCommutation)
                }
                _ => {}
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CycleReport {
    pub commutations: usize,
    pub mock_commutations: usize,
}

impl CycleReport {
    pub fn total(&self) -> usize {
        self.commutations + self.mock_commutations
    }
}

/// Checks that every 4-cycle of the ball reads as a defining relation.
pub fn classify_4cycles(g: &ExploredGraph) -> Result<CycleReport> {
    let mut report = CycleReport::default();
    for c in g.four_cycles() {
        match c.shape() {
            Some(CycleShape::Commutation) => report.commutations += 1,
            Some(CycleShape::MockCommutation) => report.mock_commutations += 1,
            None => {
                let names: Vec<String> = c.vertices.iter().map(|&v| format!("[{}]", g.vertex(v))).collect();
                return Err(CactusError::Invariant(format!(
                    "4-cycle {} with generators {:?} is not a relation",
                    names.join(" "),
                    c.generators.map(|i| i.to_string())
                )));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneClass {
    pub id: usize,
    pub edges: Vec<usize>,
    pub label: StrandSet,
}

/// Hyperplane classes of a ball together with the edge → class map.
#[derive(Debug, Clone)]
pub struct Hyperplanes {
    pub classes: Vec<HyperplaneClass>,
    edge_class: Vec<usize>,
}

impl Hyperplanes {
    pub fn class_of_edge(&self, edge: usize) -> usize {
        self.edge_class[edge]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Closes the edges of `g` under "opposite sides of a 4-cycle". Fails if a
/// class mixes strand-set labels.
pub fn hyperplane_classes(g: &ExploredGraph) -> Result<Hyperplanes> {
    let mut uf = UnionFind::<usize>::new(g.edges.len());
    for c in g.four_cycles() {
        uf.union(c.edges[0], c.edges[2]);
        uf.union(c.edges[1], c.edges[3]);
    }
    let mut root_to_class: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<HyperplaneClass> = Vec::new();
    let mut edge_class = Vec::with_capacity(g.edges.len());
    for (e, edge) in g.edges.iter().enumerate() {
        let root = uf.find(e);
        let id = *root_to_class.entry(root).or_insert_with(|| {
            classes.push(HyperplaneClass { id: classes.len(), edges: Vec::new(), label: edge.label });
            classes.len() - 1
        });
        let class = &mut classes[id];
        if class.label != edge.label {
            return Err(CactusError::Invariant(format!(
                "hyperplane {id} carries labels {} and {}",
                class.label, edge.label
            )));
        }
        class.edges.push(e);
        edge_class.push(id);
    }
    Ok(Hyperplanes { classes, edge_class })
}

/// All vertices on geodesics from `x` to `y`, as canonical words.
pub fn geodesic_interval(x: &Word, y: &Word) -> Result<Vec<NormalWord>> {
    let d = distance(x, y)?;
    let gens = x.ctx().generators();
    let mut seen: HashSet<NormalWord> = HashSet::new();
    let start = normalize(x);
    seen.insert(start.clone());
    let mut frontier = vec![start];
    for step in 0..d {
        let mut next = Vec::new();
        for a in &frontier {
            for &g in &gens {
                let b = normalize(&append(a.word(), g));
                if !seen.contains(&b) && distance(b.word(), y)? == d - step - 1 {
                    seen.insert(b.clone());
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<NormalWord> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The unique vertex lying on geodesics between each pair of `x, y, z`.
///
/// Candidates are drawn from the geodesic interval of `x` and `y`, which
/// contains every vertex satisfying `d(x,m) + d(m,y) = d(x,y)`; zero or
/// several survivors is reported as an invariant violation.
pub fn median(x: &Word, y: &Word, z: &Word) -> Result<NormalWord> {
    x.check_same_context(y)?;
    x.check_same_context(z)?;
    let dxz = distance(x, z)?;
    let dyz = distance(y, z)?;
    let mut found = Vec::new();
    for m in geodesic_interval(x, y)? {
        let dmz = distance(m.word(), z)?;
        if distance(x, m.word())? + dmz == dxz && distance(y, m.word())? + dmz == dyz {
            found.push(m);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        k => Err(CactusError::Invariant(format!(
            "triple ({x}), ({y}), ({z}) has {k} medians"
        ))),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MedianReport {
    pub triples: usize,
    pub failures: Vec<String>,
}

/// Checks every unordered triple of ball vertices for a unique median.
///
/// Geodesic intervals are computed once per pair with exact distances;
/// the medians of a triple are the common vertices of its three intervals.
pub fn check_all_medians(g: &ExploredGraph) -> Result<MedianReport> {
    let mut ids: HashMap<NormalWord, u32> = HashMap::new();
    let count = g.vertex_count();
    let mut intervals: Vec<Vec<u32>> = Vec::with_capacity(count * count.saturating_sub(1) / 2);
    for a in 0..count {
        for b in a + 1..count {
            let mut iv: Vec<u32> = geodesic_interval(g.vertex(a).word(), g.vertex(b).word())?
                .into_iter()
                .map(|m| {
                    let next = ids.len() as u32;
                    *ids.entry(m).or_insert(next)
                })
                .collect();
            iv.sort_unstable();
            intervals.push(iv);
        }
    }
    let pair = |a: usize, b: usize| -> usize { a * count - a * (a + 1) / 2 + (b - a - 1) };
    let mut report = MedianReport::default();
    for x in 0..count {
        for y in x + 1..count {
            let xy = &intervals[pair(x, y)];
            for z in y + 1..count {
                let (xz, yz) = (&intervals[pair(x, z)], &intervals[pair(y, z)]);
                let common = xy.iter().filter(|m| xz.binary_search(m).is_ok() && yz.binary_search(m).is_ok()).count();
                report.triples += 1;
                if common != 1 {
                    report.failures.push(format!(
                        "triple [{}], [{}], [{}] has {common} medians",
                        g.vertex(x),
                        g.vertex(y),
                        g.vertex(z)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Number of distinct hyperplane classes crossed by one geodesic from `x`
/// to `y`. Requires the geodesic to stay two steps inside the ball.
pub fn separating_count(x: &Word, y: &Word, g: &ExploredGraph, hyperplanes: &Hyperplanes) -> Result<usize> {
    x.check_same_context(y)?;
    let limit = g.radius().saturating_sub(2);
    let path = make_irreducible(&x.inverse().concat(y)?);
    let mut current = x.clone();
    let mut ids = Vec::with_capacity(path.len() + 1);
    for step in 0..=path.len() {
        if step > 0 {
            current = append(&current, path.letters()[step - 1]);
        }
        let id = g
            .id_of(&current)
            .filter(|&id| g.depth(id) <= limit && g.radius() >= 2)
            .ok_or_else(|| {
                CactusError::MarginViolation(format!(
                    "vertex [{}] is not {limit} or fewer steps from the identity",
                    normalize(&current)
                ))
            })?;
        ids.push(id);
    }
    let crossed: BTreeSet<usize> = ids
        .windows(2)
        .map(|w| hyperplanes.class_of_edge(g.edge_between(w[0], w[1]).expect("consecutive path vertices are adjacent")))
        .collect();
    Ok(crossed.len())
}

/// Whether left multiplication by `gen` fixes every edge of the hyperplane
/// class through `(1, gen)` while swapping its endpoints. `g` must be a
/// ball of the subgroup generated by the sizes in `sizes`, and `gen` must
/// have the smallest of those sizes.
pub fn reflection_check(g: &ExploredGraph, gen: Interval, sizes: SizeSet) -> Result<bool> {
    if g.sizes() != sizes {
        return Err(CactusError::InvalidArgument(format!(
            "ball explores sizes {} but {} was requested",
            g.sizes(),
            sizes
        )));
    }
    if sizes.min() != Some(gen.size()) {
        return Err(CactusError::InvalidArgument(format!(
            "generator {gen} does not have the minimal size of {sizes}"
        )));
    }
    let ctx = g.ctx();
    let s = Word::from_parts(ctx, vec![gen]);
    let hyps = hyperplane_classes(g)?;
    let first = g
        .id_of(&s)
        .and_then(|v| g.edge_between(0, v))
        .ok_or_else(|| CactusError::InvalidArgument("ball too small to contain the generator".into()))?;
    let class = &hyps.classes[hyps.class_of_edge(first)];
    for &e in &class.edges {
        let edge = g.edges()[e];
        let a = g.vertex(edge.source).word();
        let b = g.vertex(edge.target).word();
        if normalize(&s.concat(a)?) != *g.vertex(edge.target) || normalize(&s.concat(b)?) != *g.vertex(edge.source) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Geodesic paths (as vertex id sequences) from `from` to `to` within the
/// ball, following edges that strictly decrease BFS distance to `to`.
pub fn geodesic_paths(g: &ExploredGraph, from: usize, to: usize) -> Vec<Vec<usize>> {
    let dist = bfs_distances(g, to);
    let mut out = Vec::new();
    let Some(d0) = dist[from] else { return out };
    let mut stack = vec![vec![from]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == to {
            out.push(path);
            continue;
        }
        let dl = dist[last].unwrap();
        for &(nbr, _) in g.neighbors(last) {
            if dist[nbr] == Some(dl - 1) {
                let mut p = path.clone();
                p.push(nbr);
                stack.push(p);
            }
        }
    }
    debug_assert!(out.iter().all(|p| p.len() == d0 + 1));
    out
}

/// Graph distances inside the ball from `source`.
pub fn bfs_distances(g: &ExploredGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &(w, _) in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn word(n: usize, pairs: &[(usize, usize)]) -> Word {
        c(n).word_from_pairs(pairs).unwrap()
    }

    #[test]
    fn ball_examples() {
        let b = ball(c(2), 1).unwrap();
        assert_eq!(b.vertex_count(), 2);
        assert_eq!(b.edges().len(), 1);
        let b = ball(c(3), 1).unwrap();
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.edges().len(), 3);
        let b = ball(c(3), 2).unwrap();
        assert_eq!(b.sphere_sizes(), vec![1, 3, 4]);
        let layer2: Vec<NormalWord> = (4..8).map(|i| b.vertex(i).clone()).collect();
        for w in [
            word(3, &[(1, 2), (2, 3)]),
            word(3, &[(2, 3), (1, 2)]),
            word(3, &[(1, 2), (1, 3)]),
            word(3, &[(2, 3), (1, 3)]),
        ] {
            assert!(layer2.contains(&normalize(&w)), "{w} missing");
        }
    }

    #[test]
    fn ball_numbering_is_deterministic() {
        let a = ball(c(4), 2).unwrap();
        let b = ball(c(4), 2).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn vertex_cap() {
        let err = ExploredGraph::build(c(4), 3, SizeSet::all(c(4)), 10).unwrap_err();
        assert!(matches!(err, CactusError::ResourceLimit { .. }));
    }

    #[test]
    fn hyperplane_examples() {
        let g = ball(c(4), 2).unwrap();
        let h = hyperplane_classes(&g).unwrap();
        let one = 0;
        let s12 = g.id_of(&word(4, &[(1, 2)])).unwrap();
        let s34 = g.id_of(&word(4, &[(3, 4)])).unwrap();
        let s34s12 = g.id_of(&word(4, &[(3, 4), (1, 2)])).unwrap();
        let e1 = g.edge_between(one, s12).unwrap();
        let e2 = g.edge_between(s34, s34s12).unwrap();
        assert_eq!(h.class_of_edge(e1), h.class_of_edge(e2));
        assert_eq!(h.classes[h.class_of_edge(e1)].label, StrandSet::range(1, 2));

        let g = ball(c(2), 1).unwrap();
        let h = hyperplane_classes(&g).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.classes[0].label, StrandSet::range(1, 2));

        let g = ball(c(3), 2).unwrap();
        let s13 = g.id_of(&word(3, &[(1, 3)])).unwrap();
        assert_eq!(g.edge_between(0, s13), g.edge_between(s13, 0));
    }

    #[test]
    fn four_cycle_examples() {
        assert_eq!(classify_4cycles(&ball(c(2), 1).unwrap()).unwrap().total(), 0);
        let g = ball(c(3), 2).unwrap();
        let report = classify_4cycles(&g).unwrap();
        assert!(report.mock_commutations >= 1);
        let ids = [
            word(3, &[]),
            word(3, &[(1, 3)]),
            word(3, &[(1, 3), (1, 2)]),
            word(3, &[(2, 3)]),
        ]
        .map(|w| g.id_of(&w).unwrap());
        let mut want = ids.to_vec();
        want.sort();
        assert!(g.four_cycles().iter().any(|cy| {
            let mut v = cy.vertices.to_vec();
            v.sort();
            v == want
        }));
        let g = ball(c(4), 2).unwrap();
        let r = classify_4cycles(&g).unwrap();
        assert!(r.commutations > 0 && r.mock_commutations > 0);
    }

    #[test]
    fn median_examples() {
        let one = c(4).identity();
        let s12 = word(4, &[(1, 2)]);
        let s34 = word(4, &[(3, 4)]);
        assert!(median(&one, &s12, &s34).unwrap().is_empty());
        let x = word(4, &[(1, 3), (2, 4)]);
        let y = word(4, &[(1, 4)]);
        assert_eq!(median(&x, &x, &y).unwrap(), normalize(&x));
        let z = word(4, &[(1, 2), (3, 4)]);
        assert_eq!(median(&one, &s12, &z).unwrap(), normalize(&s12));
    }

    #[test]
    fn all_medians_in_small_balls() {
        for (n, r) in [(3, 3), (4, 2)] {
            let report = check_all_medians(&ball(c(n), r).unwrap()).unwrap();
            assert!(report.triples > 0);
            assert!(report.failures.is_empty(), "{:?}", report.failures);
        }
    }

    #[test]
    fn separating_examples() {
        let g = ball(c(4), 4).unwrap();
        let h = hyperplane_classes(&g).unwrap();
        let one = c(4).identity();
        assert_eq!(separating_count(&one, &word(4, &[(1, 2)]), &g, &h).unwrap(), 1);
        assert_eq!(separating_count(&one, &word(4, &[(1, 2), (3, 4)]), &g, &h).unwrap(), 2);
        let x = word(4, &[(2, 4)]);
        assert_eq!(separating_count(&x, &x, &g, &h).unwrap(), 0);
        let far = word(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(matches!(
            separating_count(&one, &far, &g, &h),
            Err(CactusError::MarginViolation(_))
        ));
    }

    #[test]
    fn reflection_examples() {
        let s: SizeSet = [2, 3].into_iter().collect();
        let g = ExploredGraph::build(c(3), 3, s, DEFAULT_VERTEX_CAP).unwrap();
        assert!(reflection_check(&g, c(3).interval(1, 2).unwrap(), s).unwrap());

        let s: SizeSet = [2, 3, 4].into_iter().collect();
        let g = ExploredGraph::build(c(4), 2, s, DEFAULT_VERTEX_CAP).unwrap();
        assert!(reflection_check(&g, c(4).interval(1, 2).unwrap(), s).unwrap());

        let s: SizeSet = [4].into_iter().collect();
        let g = ExploredGraph::build(c(4), 2, s, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(reflection_check(&g, c(4).interval(1, 4).unwrap(), s).unwrap());
    }

    #[test]
    fn non_minimal_generator_is_not_a_reflection() {
        // s_{1,3} inverts edges but is not a reflection of the full graph.
        let all = SizeSet::all(c(3));
        let g = ExploredGraph::build(c(3), 3, all, DEFAULT_VERTEX_CAP).unwrap();
        assert!(reflection_check(&g, c(3).interval(1, 3).unwrap(), all).is_err());
        let only3: SizeSet = [2, 3].into_iter().collect();
        assert!(reflection_check(&g, c(3).interval(1, 2).unwrap(), only3).unwrap());
    }

    #[test]
    fn cubes_in_small_ball() {
        let g = ball(c(3), 2).unwrap();
        let cubes = g.cubes(3);
        assert_eq!(cubes.iter().filter(|c| c.len() == 2).count(), g.edges().len());
        assert!(cubes.iter().all(|c| c.len() <= 4));
    }

    #[test]
    fn exports() {
        let g = ball(c(3), 1).unwrap();
        let h = hyperplane_classes(&g).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph cayley_ball {"));
        assert!(dot.contains("v0 -- v1 [label=\"1-2 {1,2}\"]"));
        let js = g.to_json(&h);
        assert_eq!(js["schema"], BALL_SCHEMA);
        assert_eq!(js["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(js["edges"].as_array().unwrap().len(), 3);
        assert_eq!(js["hyperplanes"].as_array().unwrap().len(), 3);
    }
}
