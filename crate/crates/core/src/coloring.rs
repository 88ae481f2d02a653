//! Dicolorings: validation, an exact dichromatic number solver, and the
//! constructive colorings for chordal and unit interval orientations.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::chordal::{self, ChordalError, Chordality, IntervalLayers, UnitIntervalRepresentation};
use crate::digraph::{find_cycle, is_acyclic, Digraph};
use crate::patterns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring covers {got} of {expected} vertices")]
    PartialColoring { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color} outside palette of size {palette}")]
    ColorOutOfPalette { vertex: usize, color: usize, palette: usize },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("underlying graph is not chordal (hole {0:?})")]
    NotChordal(Vec<usize>),
    #[error("no free color for vertex {vertex} among {palette}; the input violates the pattern-freeness precondition")]
    NoFreeColor { vertex: usize, palette: usize },
    #[error("clique of size {clique} exceeds the bound {bound}; the input contains TT_{k}")]
    CliqueTooLarge { clique: usize, bound: usize, k: usize },
    #[error("input contains the forbidden pattern {0}")]
    PatternPresent(String),
    #[error("not a tournament")]
    NotATournament,
    #[error("constructed coloring failed validation: monochromatic cycle {0:?}")]
    InvalidOutput(Vec<usize>),
    #[error(transparent)]
    Chordal(#[from] ChordalError),
}

/// A total vertex coloring with colors in `0..palette`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dicoloring {
    colors: Vec<usize>,
    palette: usize,
}

impl Dicoloring {
    pub fn new(colors: Vec<usize>, palette: usize) -> Result<Self, ColoringError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= palette) {
            return Err(ColoringError::ColorOutOfPalette { vertex, color, palette });
        }
        Ok(Dicoloring { colors, palette })
    }

    /// Palette size is one more than the largest color.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let palette = colors.iter().max().map_or(0, |&c| c + 1);
        Dicoloring { colors, palette }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&b| b).count()
    }

    pub fn class(&self, c: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(
            self.colors.len(),
            self.colors.iter().enumerate().filter(|(_, &x)| x == c).map(|(v, _)| v),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    MonochromaticCycle { color: usize, cycle: Vec<usize> },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

/// Checks that every color class induces an acyclic subdigraph.
pub fn validate_dicoloring(d: &Digraph, c: &Dicoloring) -> Result<Validation, ColoringError> {
    if c.len() != d.n() {
        return Err(ColoringError::PartialColoring { expected: d.n(), got: c.len() });
    }
    for color in 0..c.palette() {
        let class = c.class(color);
        if class.len() < 3 {
            continue;
        }
        if let Some(cycle) = find_cycle(d, Some(&class)) {
            return Ok(Validation::MonochromaticCycle { color, cycle });
        }
    }
    Ok(Validation::Valid)
}

/// Exact solver options.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverConfig {
    /// Cap on search nodes across one decision call.
    pub node_budget: Option<u64>,
    /// Explore disjoint top-level branches concurrently.
    pub parallel: bool,
}

/// Smallest-last (degeneracy) ordering of the underlying graph, reversed so
/// that the densest core is colored first.
fn degeneracy_order(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let mut deg: Vec<usize> = (0..n).map(|v| d.out_degree(v) + d.in_degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for &w in d.out_neighbors(v).iter().chain(d.in_neighbors(v)) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Search state shared by the sequential and parallel drivers. Vertices are
/// relabeled to their position in the coloring order.
struct Solver {
    n: usize,
    k: usize,
    order: Vec<usize>,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

struct Branch {
    colors: Vec<usize>,
    classes: Vec<VertexSet>,
    max_used: usize,
}

impl Solver {
    fn new(d: &Digraph, k: usize) -> Self {
        let order = degeneracy_order(d);
        let n = d.n();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let relabel = |list: &[usize]| VertexSet::from_iter_with_capacity(n, list.iter().map(|&w| pos[w]));
        let out = order.iter().map(|&v| relabel(d.out_neighbors(v))).collect();
        let inn = order.iter().map(|&v| relabel(d.in_neighbors(v))).collect();
        Solver { n, k, order, out, inn }
    }

    fn empty_branch(&self) -> Branch {
        Branch {
            colors: vec![usize::MAX; self.n],
            classes: vec![VertexSet::new(self.n); self.k],
            max_used: 0,
        }
    }

    /// Would adding `v` to `class` close a directed cycle inside the class?
    fn closes_cycle(&self, v: usize, class: &VertexSet) -> bool {
        let mut targets = self.inn[v].clone();
        targets.intersect_with(class);
        if targets.is_empty() {
            return false;
        }
        let mut frontier = self.out[v].clone();
        frontier.intersect_with(class);
        let mut visited = frontier.clone();
        while !frontier.is_empty() {
            if frontier.intersects(&targets) {
                return true;
            }
            let mut next = VertexSet::new(self.n);
            for u in &frontier {
                next.union_with(&self.out[u]);
            }
            next.intersect_with(class);
            next.difference_with(&visited);
            visited.union_with(&next);
            frontier = next;
        }
        false
    }

    /// Colors allowed for position `v` under symmetry breaking.
    fn candidate_colors(&self, v: usize, b: &Branch) -> std::ops::Range<usize> {
        if v == 0 {
            0..1
        } else {
            0..(b.max_used + 2).min(self.k)
        }
    }

    fn assign(&self, v: usize, c: usize, b: &mut Branch) -> usize {
        let prev = b.max_used;
        b.colors[v] = c;
        b.classes[c].insert(v);
        b.max_used = b.max_used.max(c);
        prev
    }

    fn unassign(&self, v: usize, c: usize, prev_max: usize, b: &mut Branch) {
        b.colors[v] = usize::MAX;
        b.classes[c].remove(v);
        b.max_used = prev_max;
    }

    fn search(&self, v: usize, b: &mut Branch, nodes: &AtomicU64, limit: u64, stop: &AtomicBool) -> Result<bool, ()> {
        if v == self.n {
            return Ok(true);
        }
        if stop.load(Ordering::Relaxed) {
            return Ok(false);
        }
        if nodes.fetch_add(1, Ordering::Relaxed) >= limit {
            return Err(());
        }
        for c in self.candidate_colors(v, b) {
            if self.closes_cycle(v, &b.classes[c]) {
                continue;
            }
            let prev = self.assign(v, c, b);
            if self.search(v + 1, b, nodes, limit, stop)? {
                return Ok(true);
            }
            self.unassign(v, c, prev, b);
        }
        Ok(false)
    }

    /// Consistent assignments of the first `depth` positions.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut done = Vec::new();
        let mut b = self.empty_branch();
        self.collect_prefixes(0, depth.min(self.n), &mut b, &mut done);
        done
    }

    fn collect_prefixes(&self, v: usize, depth: usize, b: &mut Branch, done: &mut Vec<Vec<usize>>) {
        if v == depth {
            done.push(b.colors[..depth].to_vec());
            return;
        }
        for c in self.candidate_colors(v, b) {
            if !self.closes_cycle(v, &b.classes[c]) {
                let prev = self.assign(v, c, b);
                self.collect_prefixes(v + 1, depth, b, done);
                self.unassign(v, c, prev, b);
            }
        }
    }

    fn to_coloring(&self, b: &Branch) -> Dicoloring {
        let mut colors = vec![0; self.n];
        for (p, &v) in self.order.iter().enumerate() {
            colors[v] = b.colors[p];
        }
        Dicoloring { colors, palette: self.k }
    }
}

/// An exact `k`-dicoloring of `d`, or `None` if none exists.
pub fn is_k_dicolorable(d: &Digraph, k: usize, config: &SolverConfig) -> Result<Option<Dicoloring>, ColoringError> {
    if d.n() == 0 {
        return Ok(Some(Dicoloring { colors: Vec::new(), palette: k }));
    }
    if k == 0 {
        return Ok(None);
    }
    let solver = Solver::new(d, k);
    let limit = config.node_budget.unwrap_or(u64::MAX);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let exceeded = || ColoringError::BudgetExceeded { budget: limit };

    if !config.parallel {
        let mut b = solver.empty_branch();
        return match solver.search(0, &mut b, &nodes, limit, &stop) {
            Ok(true) => Ok(Some(solver.to_coloring(&b))),
            Ok(false) => Ok(None),
            Err(()) => Err(exceeded()),
        };
    }

    let depth = 6.min(d.n());
    let prefixes = solver.prefixes(depth);
    let over_budget = AtomicBool::new(false);
    let found = prefixes.par_iter().find_map_any(|prefix| {
        let mut b = solver.empty_branch();
        for (v, &c) in prefix.iter().enumerate() {
            solver.assign(v, c, &mut b);
        }
        match solver.search(depth, &mut b, &nodes, limit, &stop) {
            Ok(true) => {
                stop.store(true, Ordering::Relaxed);
                Some(solver.to_coloring(&b))
            }
            Ok(false) => None,
            Err(()) => {
                over_budget.store(true, Ordering::Relaxed);
                stop.store(true, Ordering::Relaxed);
                None
            }
        }
    });
    match found {
        Some(c) => Ok(Some(c)),
        None if over_budget.load(Ordering::Relaxed) => Err(exceeded()),
        None => Ok(None),
    }
}

/// The dichromatic number with a witness coloring, trying `k = 1, 2, ...`.
pub fn dichromatic_number(d: &Digraph, config: &SolverConfig) -> Result<(usize, Dicoloring), ColoringError> {
    if d.n() == 0 {
        return Ok((0, Dicoloring { colors: Vec::new(), palette: 0 }));
    }
    if is_acyclic(d) {
        return Ok((1, Dicoloring { colors: vec![0; d.n()], palette: 1 }));
    }
    for k in 2..=d.n() {
        if let Some(c) = is_k_dicolorable(d, k, config)? {
            return Ok((k, c));
        }
    }
    unreachable!("n colors always suffice")
}

/// Greedy extraction of a transitive subtournament: repeatedly take a vertex
/// of maximum out-degree within the remaining set and keep only its
/// out-neighbors. The result is listed in topological order.
pub fn stearns_transitive(t: &Digraph) -> Result<Vec<usize>, ColoringError> {
    if !t.is_tournament() {
        return Err(ColoringError::NotATournament);
    }
    let mut remaining = VertexSet::full(t.n());
    let mut chosen = Vec::new();
    while !remaining.is_empty() {
        let v = remaining
            .iter()
            .max_by_key(|&v| (t.out_set(v).intersection_len(&remaining), std::cmp::Reverse(v)))
            .unwrap();
        chosen.push(v);
        remaining.intersect_with(&t.out_set(v));
    }
    Ok(chosen)
}

/// `floor(log2 n) + 1` for `n >= 1`.
pub fn stearns_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (usize::BITS - n.leading_zeros()) as usize
    }
}

/// Maximum number of directed triangles through `x` that pairwise share only
/// `x`: a maximum matching between `x⁺` and `x⁻` along arcs `a -> b`.
pub fn triangle_degree(d: &Digraph, x: usize) -> usize {
    let left = d.out_neighbors(x);
    let right = d.in_neighbors(x);
    let mut right_index = vec![usize::MAX; d.n()];
    for (i, &b) in right.iter().enumerate() {
        right_index[b] = i;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&a| d.out_neighbors(a).iter().filter_map(|&b| Some(right_index[b]).filter(|&i| i != usize::MAX)).collect())
        .collect();
    let mut mate_right = vec![usize::MAX; right.len()];

    fn augment(a: usize, adj: &[Vec<usize>], seen: &mut [bool], mate_right: &mut [usize]) -> bool {
        for &b in &adj[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if mate_right[b] == usize::MAX || augment(mate_right[b], adj, seen, mate_right) {
                mate_right[b] = a;
                return true;
            }
        }
        false
    }

    let mut size = 0;
    for a in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if augment(a, &adj, &mut seen, &mut mate_right) {
            size += 1;
        }
    }
    size
}

fn elimination_order(d: &Digraph) -> Result<Vec<usize>, ColoringError> {
    match chordal::is_chordal(&d.underlying()) {
        Chordality::Chordal(peo) => Ok(peo.order),
        Chordality::Hole(h) => Err(ColoringError::NotChordal(h)),
    }
}

fn finish(d: &Digraph, colors: Vec<usize>, palette: usize) -> Result<Dicoloring, ColoringError> {
    let c = Dicoloring::new(colors, palette)?;
    match validate_dicoloring(d, &c)? {
        Validation::Valid => Ok(c),
        Validation::MonochromaticCycle { cycle, .. } => Err(ColoringError::InvalidOutput(cycle)),
    }
}

/// Colors a `Δ(1,1,k)`-free orientation of a chordal graph with at most
/// `2^(2k-2)` colors. Vertices are re-inserted in reverse elimination order,
/// each taking the lowest color that closes no monochromatic directed
/// triangle with its already colored neighbors. With `verify`, the
/// pattern-freeness precondition is checked first.
pub fn color_delta11k_free_chordal(d: &Digraph, k: usize, verify: bool) -> Result<Dicoloring, ColoringError> {
    assert!(k >= 1, "hero parameter k must be positive");
    let palette = 1usize << (2 * k - 2);
    if verify && patterns::contains_induced(d, &patterns::delta_tt(1, k)).is_some() {
        return Err(ColoringError::PatternPresent(format!("D(1,1,{k})")));
    }
    let peo = elimination_order(d)?;
    let mut colors = vec![usize::MAX; d.n()];
    for &x in peo.iter().rev() {
        let mut blocked = vec![false; palette];
        // Colored neighbors form a clique, so every directed triangle x -> a -> b -> x is induced.
        for &a in d.out_neighbors(x) {
            let ca = colors[a];
            if ca == usize::MAX || ca >= palette {
                continue;
            }
            for &b in d.out_neighbors(a) {
                if colors[b] == ca && d.has_arc(b, x) {
                    blocked[ca] = true;
                }
            }
        }
        let free = blocked.iter().position(|&b| !b).ok_or(ColoringError::NoFreeColor { vertex: x, palette })?;
        colors[x] = free;
    }
    finish(d, colors, palette)
}

/// `2^(k-1) - 1`, the largest clique a `TT_k`-free tournament can have.
pub fn ttk_clique_bound(k: usize) -> usize {
    (1usize << (k - 1)) - 1
}

/// Properly colors the underlying graph of a `TT_k`-free chordal orientation
/// with `ω` colors, which is at most `2^(k-1) - 1`.
pub fn color_ttk_free_chordal(d: &Digraph, k: usize, verify: bool) -> Result<Dicoloring, ColoringError> {
    assert!(k >= 1, "hero parameter k must be positive");
    let bound = ttk_clique_bound(k);
    if verify && patterns::contains_induced(d, &patterns::tt(k)).is_some() {
        return Err(ColoringError::PatternPresent(format!("TT_{k}")));
    }
    let peo = elimination_order(d)?;
    let mut colors = vec![usize::MAX; d.n()];
    let mut omega = 0;
    for &x in peo.iter().rev() {
        let neigh: Vec<usize> = d
            .out_neighbors(x)
            .iter()
            .chain(d.in_neighbors(x))
            .map(|&w| colors[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        omega = omega.max(neigh.len() + 1);
        if omega > bound {
            return Err(ColoringError::CliqueTooLarge { clique: omega, bound, k });
        }
        colors[x] = (0..).find(|c| !neigh.contains(c)).unwrap();
    }
    finish(d, colors, bound.max(1))
}

/// Proper coloring of the underlying chordal graph with `ω` colors, greedy in
/// reverse elimination order. Every proper coloring is a dicoloring.
pub fn clique_coloring(d: &Digraph) -> Result<Dicoloring, ColoringError> {
    let peo = elimination_order(d)?;
    let mut colors = vec![usize::MAX; d.n()];
    for &x in peo.iter().rev() {
        let used: Vec<usize> = d
            .out_neighbors(x)
            .iter()
            .chain(d.in_neighbors(x))
            .map(|&w| colors[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        colors[x] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let palette = colors.iter().max().map_or(0, |&c| c + 1);
    finish(d, colors, palette.max(1))
}

/// Result of the layered unit interval coloring.
#[derive(Debug, Clone)]
pub struct LayeredColoring {
    pub coloring: Dicoloring,
    /// Largest number of colors used on a single layer.
    pub layer_colors: usize,
    pub layers: IntervalLayers,
}

/// Colors an orientation of a unit interval graph layer by layer. Each layer
/// `K_k` is a tournament colored by `colorer`; layers with odd `k` use colors
/// `0..C`, even layers `C..2C`, where `C` is the most colors any layer needed.
pub fn color_unit_interval<F>(
    d: &Digraph,
    rep: &UnitIntervalRepresentation,
    colorer: F,
) -> Result<LayeredColoring, ColoringError>
where
    F: Fn(&Digraph) -> Result<Dicoloring, ColoringError> + Sync,
{
    let layers = chordal::layers_from_unit_intervals(d, rep)?;
    let per_layer: Vec<(Vec<usize>, Dicoloring)> = layers
        .layers
        .par_iter()
        .map(|set| {
            let members = set.to_vec();
            let sub = d.induced_by(&members).expect("layer vertices are in range");
            colorer(&sub).map(|c| (members, c))
        })
        .collect::<Result<_, _>>()?;
    let c = per_layer.iter().map(|(_, col)| col.colors_used()).max().unwrap_or(0);
    let mut colors = vec![0; d.n()];
    for (i, (members, col)) in per_layer.iter().enumerate() {
        let offset = if layers.index_of(i).rem_euclid(2) == 1 { 0 } else { c };
        let mut rank = vec![usize::MAX; col.palette().max(1)];
        let mut next = 0;
        for (j, &v) in members.iter().enumerate() {
            let raw = col.color(j);
            if rank[raw] == usize::MAX {
                rank[raw] = next;
                next += 1;
            }
            colors[v] = offset + rank[raw];
        }
    }
    let coloring = finish(d, colors, (2 * c).max(1))?;
    Ok(LayeredColoring { coloring, layer_colors: c, layers })
}

/// Exact layer colorer for [`color_unit_interval`].
pub fn exact_colorer(config: SolverConfig) -> impl Fn(&Digraph) -> Result<Dicoloring, ColoringError> + Sync {
    move |d| dichromatic_number(d, &config).map(|(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::compose_all_arcs;
    use crate::patterns::{c3, delta_tt, tt};

    #[test]
    fn validation() {
        let mono = Dicoloring::from_colors(vec![0, 0, 0]);
        match validate_dicoloring(&c3(), &mono).unwrap() {
            Validation::MonochromaticCycle { color: 0, cycle } => assert_eq!(cycle.len(), 3),
            other => panic!("{other:?}"),
        }
        assert!(validate_dicoloring(&c3(), &Dicoloring::from_colors(vec![0, 0, 1])).unwrap().is_valid());
        assert!(validate_dicoloring(&tt(5), &Dicoloring::from_colors(vec![0; 5])).unwrap().is_valid());
        assert_eq!(
            validate_dicoloring(&c3(), &Dicoloring::from_colors(vec![0, 1])),
            Err(ColoringError::PartialColoring { expected: 3, got: 2 })
        );
    }

    #[test]
    fn decision_solver() {
        let cfg = SolverConfig::default();
        assert!(is_k_dicolorable(&c3(), 1, &cfg).unwrap().is_none());
        let c = is_k_dicolorable(&c3(), 2, &cfg).unwrap().unwrap();
        assert!(validate_dicoloring(&c3(), &c).unwrap().is_valid());
        let tiny = SolverConfig { node_budget: Some(1), parallel: false };
        let big = compose_all_arcs(&c3(), &c3());
        assert!(matches!(is_k_dicolorable(&big, 2, &tiny), Err(ColoringError::BudgetExceeded { .. })));
    }

    #[test]
    fn dichromatic_numbers() {
        let cfg = SolverConfig::default();
        assert_eq!(dichromatic_number(&tt(6), &cfg).unwrap().0, 1);
        assert_eq!(dichromatic_number(&c3(), &cfg).unwrap().0, 2);
        assert_eq!(dichromatic_number(&Digraph::empty(0), &cfg).unwrap().0, 0);
    }

    #[test]
    fn stearns_examples() {
        let got = stearns_transitive(&c3()).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(stearns_transitive(&tt(8)).unwrap(), (0..8).collect::<Vec<_>>());
        assert_eq!(stearns_bound(8), 4);
        assert_eq!(stearns_bound(7), 3);
        assert_eq!(stearns_bound(1), 1);
        assert!(stearns_transitive(&Digraph::empty(2)).is_err());
    }

    #[test]
    fn triangle_degree_examples() {
        assert_eq!(triangle_degree(&c3(), 1), 1);
        assert_eq!(triangle_degree(&delta_tt(1, 2), 0), 1);
        for v in 0..5 {
            assert_eq!(triangle_degree(&tt(5), v), 0);
        }
    }

    #[test]
    fn delta11k_coloring() {
        let c = color_delta11k_free_chordal(&c3(), 2, true).unwrap();
        assert!(c.colors_used() <= 4);
        let c = color_delta11k_free_chordal(&tt(6), 2, true).unwrap();
        assert_eq!(c.colors_used(), 1);
        assert!(matches!(
            color_delta11k_free_chordal(&delta_tt(1, 2), 2, true),
            Err(ColoringError::PatternPresent(_))
        ));
        let c4 = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(color_delta11k_free_chordal(&c4, 2, false), Err(ColoringError::NotChordal(_))));
    }

    #[test]
    fn ttk_coloring() {
        let c = color_ttk_free_chordal(&c3(), 3, true).unwrap();
        assert!(c.colors_used() <= 3);
        for k in 2..6 {
            assert_eq!(color_ttk_free_chordal(&Digraph::empty(1), k, true).unwrap().colors_used(), 1);
        }
        assert!(matches!(
            color_ttk_free_chordal(&Digraph::empty(1), 1, false),
            Err(ColoringError::CliqueTooLarge { .. })
        ));
        assert!(matches!(color_ttk_free_chordal(&tt(4), 3, false), Err(ColoringError::CliqueTooLarge { .. })));
    }

    #[test]
    fn unit_interval_coloring() {
        let rep = UnitIntervalRepresentation::from_left_endpoints(&[0.5, 0.7, 1.6]).unwrap();
        let d = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let out = color_unit_interval(&d, &rep, exact_colorer(SolverConfig::default())).unwrap();
        assert_eq!(out.layer_colors, 1);
        assert!(out.coloring.colors_used() <= 2);

        let rep = UnitIntervalRepresentation::from_left_endpoints(&[0.1, 0.2, 0.3]).unwrap();
        let out = color_unit_interval(&c3(), &rep, exact_colorer(SolverConfig::default())).unwrap();
        assert_eq!(out.coloring.colors_used(), 2);
    }
}
