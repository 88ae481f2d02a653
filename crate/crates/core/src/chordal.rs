//! Chordal underlying graphs: maximum cardinality search, perfect elimination
//! checks with hole certificates, simplicial vertices, clique gluing and unit
//! interval representations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::digraph::{Digraph, GraphError, UndirectedGraph};
use crate::patterns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("graph is not chordal: no simplicial vertex")]
    NotChordal,
    #[error("identified vertices {0:?} do not form a clique")]
    SharedSetNotClique(Vec<(usize, usize)>),
    #[error("identified pair {0:?} is oriented differently in the two digraphs")]
    OrientationMismatch((usize, usize)),
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("invalid unit interval representation: {0}")]
    InvalidRepresentation(String),
    #[error("could not attach vertex {vertex} without creating the forbidden pattern after {attempts} attempts")]
    GenerationBudgetExceeded { vertex: usize, attempts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A vertex permutation; `order[0]` is eliminated first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    pub order: Vec<usize>,
}

impl EliminationOrdering {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Neighbors of `v` that come after it in the ordering.
    pub fn later_neighbors(&self, g: &UndirectedGraph, pos: &[usize], v: usize) -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect()
    }

    /// First vertex whose later neighbors are not a clique, with a
    /// non-adjacent pair among those later neighbors.
    pub fn perfect_elimination_violation(&self, g: &UndirectedGraph) -> Option<(usize, usize, usize)> {
        let pos = self.positions();
        for &v in &self.order {
            let later = self.later_neighbors(g, &pos, v);
            let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) else {
                continue;
            };
            for &w in &later {
                if w != parent && !g.has_edge(parent, w) {
                    return Some((v, parent, w));
                }
            }
        }
        None
    }

    pub fn is_perfect(&self, g: &UndirectedGraph) -> bool {
        self.perfect_elimination_violation(g).is_none()
    }
}

/// Maximum cardinality search. Visits the unvisited vertex with the most
/// visited neighbors (lowest id on ties); the elimination ordering is the
/// reverse visit order.
pub fn maximum_cardinality_search(g: &UndirectedGraph) -> EliminationOrdering {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n).map(|v| (0, Reverse(v))).collect();
    let mut visit = Vec::with_capacity(n);
    while let Some((w, Reverse(v))) = heap.pop() {
        if visited[v] || w != weight[v] {
            continue;
        }
        visited[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
                heap.push((weight[u], Reverse(u)));
            }
        }
    }
    visit.reverse();
    EliminationOrdering { order: visit }
}

/// Outcome of chordality recognition: a perfect elimination ordering or an
/// induced cycle of length at least four.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrdering),
    Hole(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Recognizes chordal graphs, returning a certificate either way.
pub fn is_chordal(g: &UndirectedGraph) -> Chordality {
    let peo = maximum_cardinality_search(g);
    let Some((v, a, b)) = peo.perfect_elimination_violation(g) else {
        return Chordality::Chordal(peo);
    };
    let pos = peo.positions();
    // Residual graph: vertices after v in the ordering.
    let residual = |w: usize| pos[w] > pos[v];
    if let Some(hole) = hole_through(g, v, a, b, residual) {
        return Chordality::Hole(hole);
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    if let Some(hole) = hole_through(g, v, a, b, |_| true) {
                        return Chordality::Hole(hole);
                    }
                }
            }
        }
    }
    unreachable!("MCS ordering failed yet no hole exists")
}

/// Shortest `a`-`b` path avoiding the closed neighborhood of `v` (except `a`
/// and `b`), closed into a cycle through `v`. Such a cycle is always induced.
fn hole_through(
    g: &UndirectedGraph,
    v: usize,
    a: usize,
    b: usize,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &w in g.neighbors(v) {
        blocked[w] = w != a && w != b;
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut y = b;
            while y != a {
                y = prev[y];
                path.push(y);
            }
            path.push(v);
            debug_assert!(is_induced_cycle(g, &path));
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if prev[y] == usize::MAX && !blocked[y] && allowed(y) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// True iff `cycle` (length >= 4) lists an induced cycle of `g` in order.
pub fn is_induced_cycle(g: &UndirectedGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = VertexSet::new(g.n());
    if !cycle.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// An induced path `a - b - c - d` on four vertices, if any.
pub fn find_induced_p4(g: &UndirectedGraph) -> Option<[usize; 4]> {
    for (b, c) in g.edges() {
        for (b, c) in [(b, c), (c, b)] {
            for &a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != b && d != a && !g.has_edge(d, b) && !g.has_edge(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Lowest-id vertex whose neighborhood is a clique.
pub fn find_simplicial(g: &UndirectedGraph) -> Result<usize, ChordalError> {
    (0..g.n())
        .find(|&v| g.is_clique(g.neighbors(v)))
        .ok_or(ChordalError::NotChordal)
}

/// Union of `d1` and `d2` identifying `identify[i].1` in `d2` with
/// `identify[i].0` in `d1`. `d1` keeps its numbering; the remaining vertices of
/// `d2` follow in ascending order.
pub fn clique_glue(
    d1: &Digraph,
    d2: &Digraph,
    identify: &[(usize, usize)],
) -> Result<Digraph, ChordalError> {
    let mut map = vec![usize::MAX; d2.n()];
    let mut used1 = vec![false; d1.n()];
    for &(a, b) in identify {
        if a >= d1.n() || b >= d2.n() {
            return Err(ChordalError::InvalidIdentification(format!("pair ({a}, {b}) out of range")));
        }
        if used1[a] || map[b] != usize::MAX {
            return Err(ChordalError::InvalidIdentification(format!("pair ({a}, {b}) reuses a vertex")));
        }
        used1[a] = true;
        map[b] = a;
    }
    let missing: Vec<_> = identify
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| identify[i + 1..].iter().map(move |&q| (p, q)))
        .filter(|&((a1, b1), (a2, b2))| !d1.adjacent(a1, a2) || !d2.adjacent(b1, b2))
        .map(|((a1, _), (a2, _))| (a1, a2))
        .collect();
    if !missing.is_empty() {
        return Err(ChordalError::SharedSetNotClique(missing));
    }
    for (i, &(a1, b1)) in identify.iter().enumerate() {
        for &(a2, b2) in &identify[i + 1..] {
            if d1.has_arc(a1, a2) != d2.has_arc(b1, b2) {
                return Err(ChordalError::OrientationMismatch((a1, a2)));
            }
        }
    }
    let mut next = d1.n();
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    let mut arcs: Vec<(usize, usize)> = d1.arcs().collect();
    let shared = |u: usize, v: usize| map[u] < d1.n() && map[v] < d1.n();
    arcs.extend(d2.arcs().filter(|&(u, v)| !shared(u, v)).map(|(u, v)| (map[u], map[v])));
    Ok(Digraph::new(next, &arcs)?)
}

/// Fixed-point scale for interval endpoints: 10^-9 resolution.
pub const ENDPOINT_SCALE: i64 = 1_000_000_000;

/// Unit interval per vertex, `[left, left + 1]`, stored in exact fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitIntervalRepresentation {
    left: Vec<i64>,
}

impl UnitIntervalRepresentation {
    /// Left endpoints as decimals, rounded to the 10^-9 grid.
    pub fn from_left_endpoints(left: &[f64]) -> Result<Self, ChordalError> {
        let ticks = left
            .iter()
            .map(|&l| {
                if !l.is_finite() {
                    return Err(ChordalError::InvalidRepresentation(format!("non-finite endpoint {l}")));
                }
                Ok((l * ENDPOINT_SCALE as f64).round() as i64)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_ticks(ticks)
    }

    /// Full intervals `(left, right)`; each must have length exactly 1.
    pub fn from_intervals(intervals: &[(f64, f64)]) -> Result<Self, ChordalError> {
        let mut left = Vec::with_capacity(intervals.len());
        for (v, &(l, r)) in intervals.iter().enumerate() {
            let lt = (l * ENDPOINT_SCALE as f64).round() as i64;
            let rt = (r * ENDPOINT_SCALE as f64).round() as i64;
            if rt - lt != ENDPOINT_SCALE {
                return Err(ChordalError::InvalidRepresentation(format!(
                    "interval of vertex {v} is [{l}, {r}], length must be 1"
                )));
            }
            left.push(l);
        }
        Self::from_left_endpoints(&left)
    }

    /// Left endpoints in units of `1 / ENDPOINT_SCALE`.
    pub fn from_ticks(left: Vec<i64>) -> Result<Self, ChordalError> {
        for (v, &l) in left.iter().enumerate() {
            if l.rem_euclid(ENDPOINT_SCALE) == 0 {
                return Err(ChordalError::InvalidRepresentation(format!(
                    "vertex {v} has integer endpoint {}",
                    l / ENDPOINT_SCALE
                )));
            }
        }
        Ok(UnitIntervalRepresentation { left })
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left_ticks(&self) -> &[i64] {
        &self.left
    }

    pub fn left_endpoint(&self, v: usize) -> f64 {
        self.left[v] as f64 / ENDPOINT_SCALE as f64
    }

    /// The unique integer inside vertex `v`'s interval.
    pub fn layer_of(&self, v: usize) -> i64 {
        self.left[v].div_euclid(ENDPOINT_SCALE) + 1
    }

    pub fn intersects(&self, u: usize, v: usize) -> bool {
        (self.left[u] - self.left[v]).abs() <= ENDPOINT_SCALE
    }

    /// The intersection graph of the intervals.
    pub fn intersection_graph(&self) -> UndirectedGraph {
        let n = self.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&v| (self.left[v], v));
        let mut adj = vec![Vec::new(); n];
        for (i, &u) in idx.iter().enumerate() {
            for &v in &idx[i + 1..] {
                if self.left[v] - self.left[u] > ENDPOINT_SCALE {
                    break;
                }
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj.iter_mut().for_each(|r| r.sort_unstable());
        UndirectedGraph::from_sorted_adj(adj)
    }

    /// Checks bit-exact agreement with `d`'s underlying graph.
    pub fn validate_for(&self, d: &Digraph) -> Result<(), ChordalError> {
        if self.len() != d.n() {
            return Err(ChordalError::InvalidRepresentation(format!(
                "{} intervals for {} vertices",
                self.len(),
                d.n()
            )));
        }
        let ig = self.intersection_graph();
        let ug = d.underlying();
        if ig != ug {
            let (u, v) = ig
                .edges()
                .find(|&(u, v)| !ug.has_edge(u, v))
                .or_else(|| ug.edges().find(|&(u, v)| !ig.has_edge(u, v)))
                .expect("graphs differ");
            return Err(ChordalError::InvalidRepresentation(format!(
                "adjacency mismatch at ({u}, {v}): intervals {} but digraph {}",
                if ig.has_edge(u, v) { "intersect" } else { "are disjoint" },
                if ug.has_edge(u, v) { "has an arc" } else { "has no arc" }
            )));
        }
        Ok(())
    }
}

/// The sets `K_k` of vertices whose interval contains the integer `k`, for
/// every integer from `first` to the largest occupied one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalLayers {
    pub first: i64,
    pub layers: Vec<VertexSet>,
}

impl IntervalLayers {
    pub fn index_of(&self, i: usize) -> i64 {
        self.first + i as i64
    }

    /// Arcs joining layers at distance at least two; empty for valid input.
    pub fn distant_arcs(&self, d: &Digraph) -> Vec<(usize, usize)> {
        let mut layer = vec![0i64; d.n()];
        for (i, s) in self.layers.iter().enumerate() {
            for v in s {
                layer[v] = self.index_of(i);
            }
        }
        d.arcs().filter(|&(u, v)| (layer[u] - layer[v]).abs() >= 2).collect()
    }
}

/// Partitions the vertices into the layers `K_k` after validating `rep`
/// against `d`.
pub fn layers_from_unit_intervals(
    d: &Digraph,
    rep: &UnitIntervalRepresentation,
) -> Result<IntervalLayers, ChordalError> {
    rep.validate_for(d)?;
    Ok(layers_of(rep))
}

/// Layers of a representation without checking it against a digraph.
pub fn layers_of(rep: &UnitIntervalRepresentation) -> IntervalLayers {
    if rep.is_empty() {
        return IntervalLayers { first: 0, layers: Vec::new() };
    }
    let ks: Vec<i64> = (0..rep.len()).map(|v| rep.layer_of(v)).collect();
    let first = *ks.iter().min().unwrap();
    let last = *ks.iter().max().unwrap();
    let mut layers = vec![VertexSet::new(rep.len()); (last - first + 1) as usize];
    for (v, &k) in ks.iter().enumerate() {
        layers[(k - first) as usize].insert(v);
    }
    IntervalLayers { first, layers }
}

/// Per-vertex retry budget for pattern-avoiding generation.
pub const DEFAULT_ATTACH_ATTEMPTS: usize = 2000;

/// Largest clique a new vertex is attached to.
pub const DEFAULT_MAX_ATTACH_CLIQUE: usize = 6;

/// Deterministic random orientation of a chordal graph, grown by attaching
/// each new vertex to a random clique. With `avoid`, every attachment is
/// resampled until no induced copy of the pattern appears; when every attempt
/// fails the vertex is added isolated.
pub fn random_chordal_orientation(
    n: usize,
    seed: u64,
    avoid: Option<&Digraph>,
) -> Result<Digraph, ChordalError> {
    random_chordal_orientation_with(n, seed, avoid, DEFAULT_MAX_ATTACH_CLIQUE, DEFAULT_ATTACH_ATTEMPTS)
}

pub fn random_chordal_orientation_with(
    n: usize,
    seed: u64,
    avoid: Option<&Digraph>,
    max_clique: usize,
    attempts: usize,
) -> Result<Digraph, ChordalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        if v == 0 {
            out.push(Vec::new());
            adj.push(Vec::new());
            continue;
        }
        let mut placed = false;
        for attempt in 0..attempts.max(1) {
            // Later attempts shrink the clique so that avoidance stays feasible.
            let cap = if attempt < attempts / 2 { max_clique } else { 1 + attempt % 2 };
            let clique = random_clique(&adj, &mut rng, cap.max(1));
            let forward: Vec<bool> = clique.iter().map(|_| rng.gen_bool(0.5)).collect();
            let mut trial_out = out.clone();
            trial_out.push(Vec::new());
            for (&c, &fwd) in clique.iter().zip(&forward) {
                if fwd {
                    trial_out[v].push(c);
                } else {
                    trial_out[c].push(v);
                }
            }
            if let Some(p) = avoid {
                for row in trial_out.iter_mut() {
                    row.sort_unstable();
                }
                let d = Digraph::from_sorted_out(trial_out.clone(), crate::digraph::DEFAULT_DENSE_THRESHOLD);
                if patterns::contains_induced_through(&d, p, v).is_some() {
                    continue;
                }
            }
            out = trial_out;
            adj.push(clique.clone());
            for &c in &clique {
                adj[c].push(v);
            }
            placed = true;
            break;
        }
        if !placed {
            // Last resort: start a new component.
            let mut trial_out = out.clone();
            trial_out.push(Vec::new());
            let d = Digraph::from_sorted_out(trial_out.clone(), crate::digraph::DEFAULT_DENSE_THRESHOLD);
            if avoid.is_some_and(|p| patterns::contains_induced_through(&d, p, v).is_some()) {
                return Err(ChordalError::GenerationBudgetExceeded { vertex: v, attempts });
            }
            out = trial_out;
            adj.push(Vec::new());
        }
    }
    for row in out.iter_mut() {
        row.sort_unstable();
    }
    Ok(Digraph::from_sorted_out(out, crate::digraph::DEFAULT_DENSE_THRESHOLD))
}

/// A random clique of size `1..=cap` grown greedily around a random vertex.
fn random_clique(adj: &[Vec<usize>], rng: &mut ChaCha8Rng, cap: usize) -> Vec<usize> {
    let target = rng.gen_range(1..=cap);
    let seed = rng.gen_range(0..adj.len());
    let mut clique = vec![seed];
    let mut cand = adj[seed].clone();
    cand.shuffle(rng);
    for c in cand {
        if clique.len() >= target {
            break;
        }
        if clique.iter().all(|&m| adj[c].contains(&m)) {
            clique.push(c);
        }
    }
    clique
}

/// A random orientation of a random unit interval graph. Left endpoints are
/// drawn on a 1/1000 grid in `[0, span)`, never integral.
pub fn random_unit_interval_orientation(
    n: usize,
    span: f64,
    seed: u64,
) -> (Digraph, UnitIntervalRepresentation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = ((span * 1000.0) as i64).max(2);
    let step = ENDPOINT_SCALE / 1000;
    let left: Vec<i64> = (0..n)
        .map(|_| loop {
            let t = rng.gen_range(0..steps) * step;
            if t % ENDPOINT_SCALE != 0 {
                break t;
            }
        })
        .collect();
    let rep = UnitIntervalRepresentation::from_ticks(left).expect("non-integer endpoints");
    let g = rep.intersection_graph();
    let arcs: Vec<_> = g
        .edges()
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
        .collect();
    (Digraph::from_arcs_unchecked(n, arcs), rep)
}

impl fmt::Display for UnitIntervalRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_unit_intervals(self))
    }
}
