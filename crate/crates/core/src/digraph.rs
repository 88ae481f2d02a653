//! Simple digraphs over contiguous vertex ids and the structural primitives
//! used throughout the crate.
//!
//! A [`Digraph`] is an oriented simple graph: no loops and no digons. Vertex
//! ids are `0..n`. Adjacency is stored as sorted in/out lists; graphs up to
//! [`DEFAULT_DENSE_THRESHOLD`] vertices additionally keep bit rows so that arc
//! queries are O(1). Both layouts answer every query identically.

use std::fmt;

use thiserror::Error;

use crate::bitset::VertexSet;

/// Largest vertex count for which adjacency bit rows are materialized by default.
pub const DEFAULT_DENSE_THRESHOLD: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop arc ({0}, {0})")]
    LoopArc(usize),
    #[error("arcs ({0}, {1}) and ({1}, {0}) form a digon")]
    DigonArc(usize, usize),
    #[error("arc ({0}, {1}) listed twice")]
    DuplicateArc(usize, usize),
    #[error("pair ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
}

#[derive(Clone)]
struct Dense {
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

/// A simple oriented graph on vertices `0..n`. Immutable once built.
#[derive(Clone)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
    dense: Option<Dense>,
}

impl Digraph {
    /// Validates and builds a digraph.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::with_dense_threshold(n, arcs, DEFAULT_DENSE_THRESHOLD)
    }

    /// Like [`Digraph::new`], materializing bit rows only when `n <= threshold`.
    pub fn with_dense_threshold(
        n: usize,
        arcs: &[(usize, usize)],
        threshold: usize,
    ) -> Result<Self, GraphError> {
        let mut out = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopArc(u));
            }
            out[u].push(v);
        }
        for row in out.iter_mut() {
            row.sort_unstable();
        }
        for (u, row) in out.iter().enumerate() {
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateArc(u, w[0]));
                }
            }
        }
        for (u, row) in out.iter().enumerate() {
            for &v in row {
                if out[v].binary_search(&u).is_ok() {
                    return Err(GraphError::DigonArc(u.min(v), u.max(v)));
                }
            }
        }
        Ok(Self::from_sorted_out(out, threshold))
    }

    /// Builds from out-lists that are already known to be simple and sorted.
    pub(crate) fn from_sorted_out(out: Vec<Vec<usize>>, threshold: usize) -> Self {
        let n = out.len();
        let mut inn = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, row) in out.iter().enumerate() {
            arc_count += row.len();
            for &v in row {
                inn[v].push(u);
            }
        }
        let dense = (n <= threshold).then(|| {
            let mk = |lists: &[Vec<usize>]| {
                lists
                    .iter()
                    .map(|l| VertexSet::from_iter_with_capacity(n, l.iter().copied()))
                    .collect()
            };
            Dense {
                out: mk(&out),
                inn: mk(&inn),
            }
        });
        Digraph {
            n,
            out,
            inn,
            arc_count,
            dense,
        }
    }

    /// Builds from an arc list that the caller guarantees is simple. Only used
    /// by generators whose output is simple by construction.
    pub(crate) fn from_arcs_unchecked(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            debug_assert!(u != v && u < n && v < n);
            out[u].push(v);
        }
        for row in out.iter_mut() {
            row.sort_unstable();
            debug_assert!(row.windows(2).all(|w| w[0] < w[1]));
        }
        Self::from_sorted_out(out, DEFAULT_DENSE_THRESHOLD)
    }

    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_out(vec![Vec::new(); n], DEFAULT_DENSE_THRESHOLD)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Arcs in lexicographic `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&v| (u, v)))
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        match &self.dense {
            Some(d) => d.out[u].contains(v),
            None => self.out[u].binary_search(&v).is_ok(),
        }
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-neighborhood as a bit set (materialized on demand for sparse graphs).
    pub fn out_set(&self, v: usize) -> VertexSet {
        match &self.dense {
            Some(d) => d.out[v].clone(),
            None => VertexSet::from_iter_with_capacity(self.n, self.out[v].iter().copied()),
        }
    }

    pub fn in_set(&self, v: usize) -> VertexSet {
        match &self.dense {
            Some(d) => d.inn[v].clone(),
            None => VertexSet::from_iter_with_capacity(self.n, self.inn[v].iter().copied()),
        }
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub fn is_tournament(&self) -> bool {
        self.n < 2 || self.arc_count == self.n * (self.n - 1) / 2
    }

    pub fn underlying(&self) -> UndirectedGraph {
        let adj = (0..self.n)
            .map(|v| {
                let mut row: Vec<usize> = self.out[v].iter().chain(&self.inn[v]).copied().collect();
                row.sort_unstable();
                row
            })
            .collect();
        UndirectedGraph::from_sorted_adj(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        Digraph::from_arcs_unchecked(self.n, self.arcs().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subdigraph induced by `vertices`, relabeled in the given order.
    pub fn induced_by(&self, vertices: &[usize]) -> Result<Digraph, GraphError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { u: v, v, n: self.n });
            }
            index[v] = i;
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.out[v] {
                if index[w] != usize::MAX {
                    out[i].push(index[w]);
                }
            }
            out[i].sort_unstable();
        }
        Ok(Digraph::from_sorted_out(out, DEFAULT_DENSE_THRESHOLD))
    }

    pub fn to_text(&self) -> String {
        crate::io::write_graph(self)
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::LoopArc(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, row) in adj.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateArc(u.min(w[0]), u.max(w[0])));
                }
            }
        }
        Ok(Self::from_sorted_adj(adj))
    }

    pub(crate) fn from_sorted_adj(adj: Vec<Vec<usize>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        UndirectedGraph { adj, edge_count }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_sorted_adj((0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect())
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path edges are simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UndirectedGraph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// True iff `d` has no directed cycle.
pub fn is_acyclic(d: &Digraph) -> bool {
    let mut indeg: Vec<usize> = (0..d.n()).map(|v| d.in_degree(v)).collect();
    let mut stack: Vec<usize> = (0..d.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in d.out_neighbors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == d.n()
}

/// A directed cycle inside the subdigraph induced by `within` (all vertices
/// when `None`), listed in arc order, or `None` if that subdigraph is acyclic.
pub fn find_cycle(d: &Digraph, within: Option<&VertexSet>) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let member = |v: usize| within.is_none_or(|s| s.contains(v));
    let mut state = vec![WHITE; d.n()];
    let mut parent = vec![usize::MAX; d.n()];
    for root in 0..d.n() {
        if state[root] != WHITE || !member(root) {
            continue;
        }
        // (vertex, next out-neighbor index)
        let mut stack = vec![(root, 0usize)];
        state[root] = GREY;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let outs = d.out_neighbors(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if !member(w) {
                    continue;
                }
                match state[w] {
                    WHITE => {
                        state[w] = GREY;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    GREY => {
                        let mut cycle = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = BLACK;
                stack.pop();
            }
        }
    }
    None
}

/// Subdigraph induced by `s`, relabeled by ascending original id.
pub fn induced(d: &Digraph, s: &VertexSet) -> Result<Digraph, GraphError> {
    if s.capacity() > d.n() {
        if let Some(v) = s.iter().find(|&v| v >= d.n()) {
            return Err(GraphError::VertexOutOfRange { u: v, v, n: d.n() });
        }
    }
    d.induced_by(&s.to_vec())
}

/// Reverses every arc.
pub fn reverse(d: &Digraph) -> Digraph {
    Digraph::from_sorted_out(d.inn.clone(), DEFAULT_DENSE_THRESHOLD)
}

/// The topological ordering of `d` if it is a transitive tournament.
pub fn is_transitive_tournament(d: &Digraph) -> Option<Vec<usize>> {
    if !d.is_tournament() {
        return None;
    }
    // In TT_n the out-degrees are exactly n-1, n-2, ..., 0.
    let n = d.n();
    let mut order = vec![usize::MAX; n];
    for v in 0..n {
        let pos = n - 1 - d.out_degree(v);
        if order[pos] != usize::MAX {
            return None;
        }
        order[pos] = v;
    }
    Some(order)
}

/// Strongly connected components in topological order of the condensation
/// (sources first). Each component is sorted ascending.
pub fn strong_components(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let outs = d.out_neighbors(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    // Tarjan emits sinks first.
    comps.reverse();
    comps
}

/// `d1 => d2`: disjoint union plus every arc from `d1` to `d2`; `d1` is numbered first.
pub fn compose_all_arcs(d1: &Digraph, d2: &Digraph) -> Digraph {
    let (n1, n2) = (d1.n(), d2.n());
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(n1 + n2);
    for v in 0..n1 {
        let mut row = d1.out_neighbors(v).to_vec();
        row.extend(n1..n1 + n2);
        out.push(row);
    }
    for v in 0..n2 {
        out.push(d2.out_neighbors(v).iter().map(|&w| w + n1).collect());
    }
    Digraph::from_sorted_out(out, DEFAULT_DENSE_THRESHOLD)
}

/// Disjoint union, `d1` numbered first.
pub fn disjoint_union(d1: &Digraph, d2: &Digraph) -> Digraph {
    let n1 = d1.n();
    let arcs = d1.arcs().chain(d2.arcs().map(|(u, v)| (u + n1, v + n1)));
    Digraph::from_arcs_unchecked(n1 + d2.n(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn tt(k: usize) -> Digraph {
        let arcs: Vec<_> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        Digraph::new(k, &arcs).unwrap()
    }

    #[test]
    fn construction_errors_name_the_pair() {
        assert_eq!(Digraph::new(2, &[(0, 1), (1, 0)]).unwrap_err(), GraphError::DigonArc(0, 1));
        assert_eq!(Digraph::new(2, &[(1, 1)]).unwrap_err(), GraphError::LoopArc(1));
        assert_eq!(
            Digraph::new(2, &[(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { u: 0, v: 2, n: 2 }
        );
        assert_eq!(Digraph::new(2, &[(0, 1), (0, 1)]).unwrap_err(), GraphError::DuplicateArc(0, 1));
        let k1 = Digraph::new(1, &[]).unwrap();
        assert_eq!((k1.n(), k1.arc_count()), (1, 0));
    }

    #[test]
    fn sparse_and_dense_layouts_agree() {
        let arcs = [(0, 3), (3, 1), (1, 2), (4, 0), (2, 4)];
        let dense = Digraph::with_dense_threshold(5, &arcs, 100).unwrap();
        let sparse = Digraph::with_dense_threshold(5, &arcs, 0).unwrap();
        assert!(dense.is_dense() && !sparse.is_dense());
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(dense.has_arc(u, v), sparse.has_arc(u, v));
            }
            assert_eq!(dense.out_set(u), sparse.out_set(u));
            assert_eq!(dense.in_set(u), sparse.in_set(u));
        }
        assert_eq!(dense, sparse);
    }

    #[test]
    fn acyclicity() {
        assert!(!is_acyclic(&c3()));
        assert!(is_acyclic(&tt(4)));
        assert!(is_acyclic(&Digraph::empty(5)));
        let cyc = find_cycle(&c3(), None).unwrap();
        assert_eq!(cyc.len(), 3);
        for i in 0..3 {
            assert!(c3().has_arc(cyc[i], cyc[(i + 1) % 3]));
        }
        let partial = VertexSet::from_iter_with_capacity(3, [0, 1]);
        assert!(find_cycle(&c3(), Some(&partial)).is_none());
    }

    #[test]
    fn induced_subgraphs() {
        let s = VertexSet::from_iter_with_capacity(3, [0, 1]);
        assert_eq!(induced(&c3(), &s).unwrap(), Digraph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(induced(&c3(), &VertexSet::full(3)).unwrap(), c3());
        let s = VertexSet::from_iter_with_capacity(4, [1, 3]);
        assert_eq!(induced(&tt(4), &s).unwrap(), tt(2));
        let bad = VertexSet::from_iter_with_capacity(9, [7]);
        assert!(matches!(induced(&c3(), &bad), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn reversal() {
        let r = reverse(&c3());
        assert_eq!(r, Digraph::new(3, &[(1, 0), (2, 1), (0, 2)]).unwrap());
        assert_eq!(reverse(&r), c3());
        assert_eq!(is_transitive_tournament(&reverse(&tt(4))), Some(vec![3, 2, 1, 0]));
    }

    #[test]
    fn transitive_tournament_order() {
        assert_eq!(is_transitive_tournament(&tt(3)), Some(vec![0, 1, 2]));
        assert_eq!(is_transitive_tournament(&c3()), None);
        assert_eq!(is_transitive_tournament(&Digraph::new(3, &[(0, 1), (1, 2)]).unwrap()), None);
    }

    #[test]
    fn strong_component_order() {
        assert_eq!(strong_components(&c3()), vec![vec![0, 1, 2]]);
        assert_eq!(strong_components(&tt(4)), vec![vec![0], vec![1], vec![2], vec![3]]);
        let c3k1 = compose_all_arcs(&c3(), &Digraph::empty(1));
        assert_eq!(strong_components(&c3k1), vec![vec![0, 1, 2], vec![3]]);
        let k1c3 = compose_all_arcs(&Digraph::empty(1), &c3());
        assert_eq!(strong_components(&k1c3), vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn composition() {
        let k1 = Digraph::empty(1);
        assert_eq!(compose_all_arcs(&k1, &k1), tt(2));
        assert_eq!(compose_all_arcs(&tt(2), &tt(2)), tt(4));
        let c3k1 = compose_all_arcs(&c3(), &k1);
        assert_eq!(c3k1.in_degree(3), 3);
        assert_eq!(c3k1.arc_count(), 3 + 3);
    }
}
