//! Deterministic generators for the counterexample families, the gluing
//! gadgets they are assembled from, and machine-readable certificates for
//! generated witnesses.
//!
//! Every generator documents its vertex numbering; the numbering is part of
//! the contract so that generated files are reproducible byte for byte.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{self, Chordality};
use crate::coloring::{self, ColoringError, Dicoloring, SolverConfig, Validation};
use crate::digraph::{find_cycle, is_transitive_tournament, Digraph, GraphError};
use crate::patterns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction needs {needed} vertices, above the limit of {limit}")]
    SizeLimitExceeded { needed: u128, limit: usize },
    #[error("transitive set enumeration exceeded its cap of {cap} (found {partial} so far)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("vertices {0:?} do not induce a transitive tournament in the given order")]
    NotTransitive(Vec<usize>),
    #[error("split index {j} outside 1..={n}")]
    SplitOutOfRange { j: usize, n: usize },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Chordal(#[from] chordal::ChordalError),
}

/// Caps that keep super-exponential constructions from running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub vertex_cap: usize,
    pub set_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { vertex_cap: 2_000_000, set_cap: 1_000_000 }
    }
}

fn check_size(needed: u128, limits: &Limits) -> Result<usize, ConstructionError> {
    if needed > limits.vertex_cap as u128 {
        Err(ConstructionError::SizeLimitExceeded { needed, limit: limits.vertex_cap })
    } else {
        Ok(needed as usize)
    }
}

/// Vertex counts of the `Δ(1,2,2)`-free family: `n_1 = 1`,
/// `n_{k+1} = (k+1) + C(k+1, 2) n_k`.
pub fn delta122_size(k: usize) -> u128 {
    let mut n: u128 = 1;
    for j in 2..=k as u128 {
        n = n.saturating_mul(j * (j - 1) / 2).saturating_add(j);
    }
    n
}

/// The `Δ(1,2,2)`-free family. `G_1 = K1`; `G_k` is `TT_k` on vertices
/// `0..k` followed by one copy of `G_{k-1}` per arc `uv` of `TT_k` (arcs in
/// lexicographic order), each copy receiving `v -> y` and `y -> u` for all of
/// its vertices `y`.
pub fn delta122_witness(k: usize, limits: &Limits) -> Result<Digraph, ConstructionError> {
    Ok(delta122_build(k, limits)?.0)
}

/// The witness together with the coloring that gives the top tournament a
/// fresh color and colors every copy recursively.
pub fn delta122_build(k: usize, limits: &Limits) -> Result<(Digraph, Dicoloring), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroLevel);
    }
    check_size(delta122_size(k), limits)?;
    let mut graph = patterns::k1();
    let mut colors = vec![0usize];
    for level in 2..=k {
        let inner = graph.n();
        let arcs_tt: Vec<(usize, usize)> = (0..level).flat_map(|u| (u + 1..level).map(move |v| (u, v))).collect();
        let n = level + arcs_tt.len() * inner;
        let mut arcs: Vec<(usize, usize)> = arcs_tt.clone();
        let mut next_colors = vec![level - 1; level];
        for (i, &(u, v)) in arcs_tt.iter().enumerate() {
            let off = level + i * inner;
            arcs.extend(graph.arcs().map(|(a, b)| (a + off, b + off)));
            for y in off..off + inner {
                arcs.push((v, y));
                arcs.push((y, u));
            }
            next_colors.extend_from_slice(&colors);
        }
        graph = Digraph::from_arcs_unchecked(n, arcs);
        colors = next_colors;
    }
    let palette = k;
    Ok((graph, Dicoloring::new(colors, palette).expect("colors below level")))
}

/// Disjoint union of `g` and `f` plus every arc from `t` (in `g`) to `f`.
/// `g` keeps its ids; `f` is shifted by `g.n()`.
pub fn glue_front(g: &Digraph, f: &Digraph, t: &[usize]) -> Result<Digraph, ConstructionError> {
    require_transitive(g, t, false)?;
    let off = g.n();
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    arcs.extend(f.arcs().map(|(a, b)| (a + off, b + off)));
    for &x in t {
        arcs.extend((off..off + f.n()).map(|y| (x, y)));
    }
    Ok(Digraph::from_arcs_unchecked(off + f.n(), arcs))
}

/// Checks that `t` induces a transitive tournament; with `ordered`, also that
/// `t` lists it in topological order.
fn require_transitive(g: &Digraph, t: &[usize], ordered: bool) -> Result<(), ConstructionError> {
    let sub = g.induced_by(t)?;
    let ok = match is_transitive_tournament(&sub) {
        Some(order) => !ordered || order.iter().enumerate().all(|(i, &v)| i == v),
        None => false,
    };
    if ok && t.iter().collect::<std::collections::BTreeSet<_>>().len() == t.len() {
        Ok(())
    } else {
        Err(ConstructionError::NotTransitive(t.to_vec()))
    }
}

/// Adds vertex `g.n()` with arcs to `t[..j]` and from `t[j..]`, where `t` is
/// the topological ordering of a transitive subtournament. `j` ranges over
/// `1..=t.len()`.
pub fn insert_apex(g: &Digraph, t: &[usize], j: usize) -> Result<Digraph, ConstructionError> {
    require_transitive(g, t, true)?;
    if j == 0 || j > t.len() {
        return Err(ConstructionError::SplitOutOfRange { j, n: t.len() });
    }
    let x = g.n();
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    arcs.extend(t[..j].iter().map(|&v| (x, v)));
    arcs.extend(t[j..].iter().map(|&v| (v, x)));
    Ok(Digraph::from_arcs_unchecked(x + 1, arcs))
}

/// Every nonempty vertex set inducing a transitive tournament, each listed in
/// its topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveSetIndex {
    pub sets: Vec<Vec<usize>>,
    pub cap: usize,
}

impl TransitiveSetIndex {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Lists transitive vertex sets by extending along out-arcs: the next vertex
/// must be an out-neighbor of every member, so each set is found once, via
/// its topological order. Fails when more than `cap` sets qualify.
pub fn enumerate_transitive_sets(
    d: &Digraph,
    size_filter: Option<usize>,
    cap: usize,
) -> Result<TransitiveSetIndex, ConstructionError> {
    struct Dfs<'a> {
        d: &'a Digraph,
        filter: Option<usize>,
        cap: usize,
        current: Vec<usize>,
        sets: Vec<Vec<usize>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, cand: &[usize]) -> Result<(), ConstructionError> {
            if self.filter.is_none_or(|s| s == self.current.len()) {
                if self.sets.len() == self.cap {
                    return Err(ConstructionError::CapExceeded { cap: self.cap, partial: self.sets.len() });
                }
                self.sets.push(self.current.clone());
            }
            if self.filter.is_some_and(|s| self.current.len() >= s) {
                return Ok(());
            }
            for &w in cand {
                let next = intersect_sorted(cand, self.d.out_neighbors(w));
                self.current.push(w);
                self.visit(&next)?;
                self.current.pop();
            }
            Ok(())
        }
    }
    let mut dfs = Dfs { d, filter: size_filter, cap, current: Vec::new(), sets: Vec::new() };
    if size_filter == Some(0) {
        return Ok(TransitiveSetIndex { sets: Vec::new(), cap });
    }
    for v in 0..d.n() {
        dfs.current.push(v);
        dfs.visit(d.out_neighbors(v))?;
        dfs.current.pop();
    }
    Ok(TransitiveSetIndex { sets: dfs.sets, cap })
}

/// One copy of the seed digraph inside an amplifier, hung under `anchor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub anchor: Vec<usize>,
    pub vertices: Range<usize>,
}

/// `F(g)`: the seed `g` (block 0, vertices `0..g.n()`) followed by one copy
/// of `g` per hung set, in creation order.
#[derive(Debug, Clone)]
pub struct Amplifier {
    pub digraph: Digraph,
    pub blocks: Vec<Block>,
}

impl Amplifier {
    /// Each block colored with `seed_coloring`. No directed cycle meets two
    /// blocks, so the result is a dicoloring whenever the seed coloring is.
    pub fn piece_coloring(&self, seed_coloring: &Dicoloring) -> Dicoloring {
        let mut colors = vec![0; self.digraph.n()];
        for b in &self.blocks {
            for (i, v) in b.vertices.clone().enumerate() {
                colors[v] = seed_coloring.color(i);
            }
        }
        Dicoloring::new(colors, seed_coloring.palette()).expect("same palette")
    }
}

/// Builds `F^{(k)}`: `F^{(1)} = g`, and `F^{(i+1)}` hangs a fresh copy of `g`
/// under every `TT_i` vertex set `X` of `F^{(i)}`, adding all arcs from `X`
/// to the copy.
pub fn rainbow_amplifier(g: &Digraph, k: usize, limits: &Limits) -> Result<Amplifier, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroLevel);
    }
    let seed = g.n();
    let mut arcs: Vec<(usize, usize)> = g.arcs().collect();
    let mut digraph = g.clone();
    let mut blocks = vec![Block { anchor: Vec::new(), vertices: 0..seed }];
    for i in 1..k {
        let sets = enumerate_transitive_sets(&digraph, Some(i), limits.set_cap)?;
        let mut n = digraph.n();
        check_size(n as u128 + sets.len() as u128 * seed as u128, limits)?;
        for x in sets.sets {
            arcs.extend(g.arcs().map(|(a, b)| (a + n, b + n)));
            for &a in &x {
                arcs.extend((n..n + seed).map(|y| (a, y)));
            }
            blocks.push(Block { anchor: x, vertices: n..n + seed });
            n += seed;
        }
        digraph = Digraph::from_arcs_unchecked(n, arcs.iter().copied());
    }
    Ok(Amplifier { digraph, blocks })
}

/// Level-by-level record of the `C3 => K1`-free family.
#[derive(Debug, Clone)]
pub struct C3k1Witness {
    pub digraph: Digraph,
    /// Piecing coloring: copies of the amplifier keep its coloring, apexes
    /// take one extra color.
    pub coloring: Dicoloring,
    /// Sizes of the amplifier and of its transitive set index at the last level.
    pub amplifier_size: usize,
    pub transitive_sets: usize,
}

/// The `C3 => K1`-free family. `G_1 = K1`. For `G_{l+1}`, with
/// `F = F(G_l)` on vertices `0..|F|` and `T_0, T_1, ...` its transitive sets:
/// copy `t` of `F` occupies `|F| (1 + t) ..` and receives all arcs from
/// `T_t`; then apex `x_{t,t'}` (numbered after all copies, row-major in
/// `(t, t')`) is seen by the copy of `T_{t'}` inside copy `t` and sees `T_t`.
pub fn c3k1_witness(k: usize, limits: &Limits) -> Result<C3k1Witness, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroLevel);
    }
    let mut g = patterns::k1();
    let mut coloring = Dicoloring::from_colors(vec![0]);
    let mut amplifier_size = 1;
    let mut transitive_sets = 1;
    for level in 1..k {
        let amp = rainbow_amplifier(&g, level, limits)?;
        let f_coloring = amp.piece_coloring(&coloring);
        let f = amp.digraph;
        let nf = f.n();
        let sets = enumerate_transitive_sets(&f, None, limits.set_cap)?.sets;
        let ns = sets.len();
        let total = nf as u128 * (1 + ns as u128) + (ns as u128) * (ns as u128);
        let n = check_size(total, limits)?;
        let mut arcs: Vec<(usize, usize)> = f.arcs().collect();
        for (t, tset) in sets.iter().enumerate() {
            let off = nf * (1 + t);
            arcs.extend(f.arcs().map(|(a, b)| (a + off, b + off)));
            for &x in tset {
                arcs.extend((off..off + nf).map(|y| (x, y)));
            }
        }
        let apex_base = nf * (1 + ns);
        for (t, tset) in sets.iter().enumerate() {
            let off = nf * (1 + t);
            for (tp, tpset) in sets.iter().enumerate() {
                let apex = apex_base + t * ns + tp;
                arcs.extend(tpset.iter().map(|&y| (y + off, apex)));
                arcs.extend(tset.iter().map(|&x| (apex, x)));
            }
        }
        let mut colors = Vec::with_capacity(n);
        for _ in 0..=ns {
            colors.extend_from_slice(f_coloring.colors());
        }
        colors.resize(n, level);
        g = Digraph::from_arcs_unchecked(n, arcs);
        coloring = Dicoloring::new(colors, level + 1).expect("colors below level + 1");
        amplifier_size = nf;
        transitive_sets = ns;
    }
    Ok(C3k1Witness { digraph: g, coloring, amplifier_size, transitive_sets })
}

/// Vertex counts of the cograph family: `n_k = 3 n_{k-1} + 1`.
pub fn cograph_size(k: usize) -> u128 {
    (1..k).fold(1u128, |n, _| n.saturating_mul(3).saturating_add(1))
}

/// The cograph family. `G_1 = K1`; `G_k` is a vertex `x = 0` followed by
/// three copies of `G_{k-1}`, with all arcs `x -> copy 1 -> copy 2 -> copy 3 -> x`.
pub fn cograph_witness(k: usize, limits: &Limits) -> Result<Digraph, ConstructionError> {
    Ok(cograph_build(k, limits)?.0)
}

/// The witness with the coloring that gives `x` a fresh color at each level.
pub fn cograph_build(k: usize, limits: &Limits) -> Result<(Digraph, Dicoloring), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroLevel);
    }
    check_size(cograph_size(k), limits)?;
    let mut g = patterns::k1();
    let mut colors = vec![0usize];
    for level in 2..=k {
        let m = g.n();
        let copy = |i: usize| 1 + i * m..1 + (i + 1) * m;
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for i in 0..3 {
            let off = 1 + i * m;
            arcs.extend(g.arcs().map(|(a, b)| (a + off, b + off)));
        }
        arcs.extend(copy(0).map(|y| (0, y)));
        for (a, b) in [(0, 1), (1, 2)] {
            for u in copy(a) {
                arcs.extend(copy(b).map(|v| (u, v)));
            }
        }
        arcs.extend(copy(2).map(|y| (y, 0)));
        let mut next = vec![level - 1];
        for _ in 0..3 {
            next.extend_from_slice(&colors);
        }
        g = Digraph::from_arcs_unchecked(1 + 3 * m, arcs);
        colors = next;
    }
    Ok((g, Dicoloring::new(colors, k).expect("colors below k")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Delta122,
    C3k1,
    Cograph,
    Amplifier,
    RandomChordal,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Delta122, Family::C3k1, Family::Cograph, Family::Amplifier, Family::RandomChordal];

    pub fn name(self) -> &'static str {
        match self {
            Family::Delta122 => "delta122",
            Family::C3k1 => "c3k1",
            Family::Cograph => "cograph",
            Family::Amplifier => "amplifier",
            Family::RandomChordal => "random-chordal",
        }
    }

    pub fn numbering(self) -> &'static str {
        match self {
            Family::Delta122 => {
                "TT_k on 0..k, then one copy of G_(k-1) per arc uv of TT_k in lexicographic arc order"
            }
            Family::C3k1 => {
                "F = F(G_(k-1)) first, then copy t of F per transitive set T_t of F (enumeration order), \
                 then apexes x_(t,t') row-major"
            }
            Family::Cograph => "x = 0, then copies 1, 2, 3 of G_(k-1) in order",
            Family::Amplifier => "seed G_k first, then hung copies of G_k in creation order per round",
            Family::RandomChordal => "vertex i is the i-th attached vertex",
        }
    }

    /// Structural check applied by [`verify_witness`].
    pub fn structure_check(self) -> &'static str {
        match self {
            Family::Cograph => "p4-free",
            _ => "chordal",
        }
    }

    pub fn forbidden_pattern(self) -> Option<&'static str> {
        match self {
            Family::Delta122 => Some("D122"),
            Family::C3k1 | Family::Amplifier => Some("C3=>K1"),
            Family::Cograph | Family::RandomChordal => None,
        }
    }

    /// Whether the family's construction argument implies `χ = k`.
    pub fn claims_dichromatic_k(self) -> bool {
        !matches!(self, Family::RandomChordal)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ConstructionError::UnknownFamily(s.to_string()))
    }
}

/// A generated digraph together with a coloring certifying its upper bound.
#[derive(Debug, Clone)]
pub struct Witness {
    pub family: Family,
    pub k: usize,
    pub digraph: Digraph,
    pub coloring: Dicoloring,
}

/// Builds a member of `family`. For `random-chordal`, `k` is the vertex count.
pub fn build_family(family: Family, k: usize, seed: u64, limits: &Limits) -> Result<Witness, ConstructionError> {
    let (digraph, coloring) = match family {
        Family::Delta122 => delta122_build(k, limits)?,
        Family::C3k1 => {
            let w = c3k1_witness(k, limits)?;
            (w.digraph, w.coloring)
        }
        Family::Cograph => cograph_build(k, limits)?,
        Family::Amplifier => {
            let w = c3k1_witness(k, limits)?;
            let amp = rainbow_amplifier(&w.digraph, k, limits)?;
            let c = amp.piece_coloring(&w.coloring);
            (amp.digraph, c)
        }
        Family::RandomChordal => {
            let d = chordal::random_chordal_orientation(k.max(1), seed, None)?;
            let c = coloring::clique_coloring(&d).expect("generated graph is chordal");
            (d, c)
        }
    };
    Ok(Witness { family, k, digraph, coloring })
}

/// Outcome of one certificate check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails { certificate: Vec<usize> },
    Skipped { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub check: String,
    pub verdict: Verdict,
}

/// Dichromatic number bounds and how each was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichromaticBounds {
    pub lower: usize,
    pub lower_method: String,
    pub upper: Option<usize>,
    pub upper_method: String,
    pub exact: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBudget {
    pub node_cap: u64,
    /// Witnesses above this size skip the exact solver.
    pub exact_vertex_limit: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget { node_cap: 2_000_000, exact_vertex_limit: 400 }
    }
}

/// Certificate for a generated witness. Verdicts are filled only by checks
/// that actually ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub family: String,
    pub k: usize,
    pub vertices: usize,
    pub arcs: usize,
    pub numbering: String,
    pub structure: NamedCheck,
    pub freeness: Option<NamedCheck>,
    pub reverse_freeness: Option<NamedCheck>,
    pub dichromatic: DichromaticBounds,
    pub budget: VerifyBudget,
}

impl ConstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_checks_hold(&self) -> bool {
        self.structure.verdict.holds()
            && self.freeness.as_ref().is_none_or(|c| c.verdict.holds())
            && self.reverse_freeness.as_ref().is_none_or(|c| c.verdict.holds())
    }
}

impl fmt::Display for ConstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Verdict| match v {
            Verdict::Holds => "holds".to_string(),
            Verdict::Fails { certificate } => format!("FAILS (certificate {certificate:?})"),
            Verdict::Skipped { reason } => format!("skipped ({reason})"),
        };
        writeln!(f, "family: {} k={}", self.family, self.k)?;
        writeln!(f, "size: {} vertices, {} arcs", self.vertices, self.arcs)?;
        writeln!(f, "numbering: {}", self.numbering)?;
        writeln!(f, "{}: {}", self.structure.check, show(&self.structure.verdict))?;
        for c in self.freeness.iter().chain(&self.reverse_freeness) {
            writeln!(f, "{}: {}", c.check, show(&c.verdict))?;
        }
        let d = &self.dichromatic;
        writeln!(f, "dichromatic lower bound: {} ({})", d.lower, d.lower_method)?;
        match d.upper {
            Some(u) => writeln!(f, "dichromatic upper bound: {u} ({})", d.upper_method)?,
            None => writeln!(f, "dichromatic upper bound: none ({})", d.upper_method)?,
        }
        match d.exact {
            Some(e) => writeln!(f, "dichromatic number: {e} (exact)")?,
            None => writeln!(f, "dichromatic number: not determined")?,
        }
        for note in &d.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(
            f,
            "budget: node_cap={} exact_vertex_limit={}",
            self.budget.node_cap, self.budget.exact_vertex_limit
        )
    }
}

fn structure_check(d: &Digraph, family: Family) -> NamedCheck {
    let verdict = match family.structure_check() {
        "p4-free" => match chordal::find_induced_p4(&d.underlying()) {
            None => Verdict::Holds,
            Some(p) => Verdict::Fails { certificate: p.to_vec() },
        },
        _ => match chordal::is_chordal(&d.underlying()) {
            Chordality::Chordal(_) => Verdict::Holds,
            Chordality::Hole(h) => Verdict::Fails { certificate: h },
        },
    };
    NamedCheck { check: family.structure_check().to_string(), verdict }
}

fn freeness_check(d: &Digraph, pattern: &str) -> NamedCheck {
    let found = match pattern {
        "C3=>K1" => patterns::find_c3_to_k1(d),
        "K1=>C3" => patterns::find_k1_to_c3(d),
        other => patterns::contains_induced(d, &patterns::parse_pattern(other).expect("known pattern")),
    };
    NamedCheck {
        check: format!("{pattern}-free"),
        verdict: match found {
            None => Verdict::Holds,
            Some(e) => Verdict::Fails { certificate: e.map },
        },
    }
}

fn dichromatic_bounds(
    d: &Digraph,
    family: Family,
    k: usize,
    coloring: Option<&Dicoloring>,
    budget: &VerifyBudget,
) -> DichromaticBounds {
    let mut notes = Vec::new();
    let (mut upper, mut upper_method) = match coloring.map(|c| (c, coloring::validate_dicoloring(d, c))) {
        Some((c, Ok(Validation::Valid))) => (Some(c.colors_used()), "constructed coloring, validated".to_string()),
        Some((_, Ok(Validation::MonochromaticCycle { cycle, .. }))) => {
            notes.push(format!("constructed coloring rejected: monochromatic cycle {cycle:?}"));
            (None, "none".to_string())
        }
        Some((_, Err(e))) => {
            notes.push(format!("constructed coloring rejected: {e}"));
            (None, "none".to_string())
        }
        None => (None, "none".to_string()),
    };
    let (mut lower, mut lower_method) = if d.n() == 0 {
        (0, "empty digraph".to_string())
    } else if let Some(cycle) = find_cycle(d, None) {
        (2, format!("directed cycle of length {}", cycle.len()))
    } else {
        (1, "acyclic".to_string())
    };
    if lower == 1 || d.n() == 0 {
        upper = Some(lower);
        upper_method = "acyclic".to_string();
    }
    let mut pending = upper.is_none_or(|u| lower < u);
    if pending && d.n() > budget.exact_vertex_limit {
        notes.push(format!(
            "exact solver skipped: {} vertices exceed the exact limit {}",
            d.n(),
            budget.exact_vertex_limit
        ));
    } else {
        let config = SolverConfig { node_budget: Some(budget.node_cap), parallel: false };
        while pending {
            let j = lower;
            match coloring::is_k_dicolorable(d, j, &config) {
                Ok(None) => {
                    lower = j + 1;
                    lower_method = format!("exact solver refuted {j} colors");
                }
                Ok(Some(_)) => {
                    upper = Some(j);
                    upper_method = "exact solver coloring".to_string();
                }
                Err(ColoringError::BudgetExceeded { budget }) => {
                    notes.push(format!(
                        "exact solver attempted {j} colors and exhausted its budget of {budget} nodes"
                    ));
                    break;
                }
                Err(e) => {
                    notes.push(format!("exact solver failed: {e}"));
                    break;
                }
            }
            pending = upper.is_none_or(|u| lower < u);
        }
    }
    let exact = upper.filter(|&u| u == lower);
    if exact.is_none() && family.claims_dichromatic_k() && k > lower {
        notes.push(format!(
            "lower bound {k} not verified (desk-scale limit); implied by the family's inductive argument"
        ));
    }
    DichromaticBounds { lower, lower_method, upper, upper_method, exact, notes }
}

/// Runs the structural check, the family's pattern-freeness detector (and,
/// for `C3 => K1`-free families, the `K1 => C3` check on the reverse), then
/// bounds the dichromatic number. The independent checks run concurrently.
pub fn verify_witness(
    d: &Digraph,
    family: Family,
    k: usize,
    coloring: Option<&Dicoloring>,
    budget: &VerifyBudget,
) -> ConstructionReport {
    let ((structure, (freeness, reverse_freeness)), dichromatic) = rayon::join(
        || {
            rayon::join(
                || structure_check(d, family),
                || {
                    let freeness = family.forbidden_pattern().map(|p| freeness_check(d, p));
                    let reverse = (family.forbidden_pattern() == Some("C3=>K1")).then(|| {
                        let mut c = freeness_check(&crate::digraph::reverse(d), "K1=>C3");
                        c.check = "reverse K1=>C3-free".to_string();
                        c
                    });
                    (freeness, reverse)
                },
            )
        },
        || dichromatic_bounds(d, family, k, coloring, budget),
    );
    ConstructionReport {
        family: family.name().to_string(),
        k,
        vertices: d.n(),
        arcs: d.arc_count(),
        numbering: family.numbering().to_string(),
        structure,
        freeness,
        reverse_freeness,
        dichromatic,
        budget: *budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::strong_components;
    use crate::patterns::{c3, k1, tt};

    #[test]
    fn delta122_small_levels() {
        let lim = Limits::default();
        assert_eq!(delta122_witness(1, &lim).unwrap(), k1());
        assert_eq!(delta122_witness(2, &lim).unwrap(), c3());
        let sizes: Vec<usize> = (1..=5).map(|k| delta122_witness(k, &lim).unwrap().n()).collect();
        assert_eq!(sizes, vec![1, 3, 12, 76, 765]);
        assert_eq!((1..=5).map(delta122_size).collect::<Vec<_>>(), vec![1, 3, 12, 76, 765]);
        let small = Limits { vertex_cap: 50, set_cap: 10 };
        assert!(matches!(delta122_witness(4, &small), Err(ConstructionError::SizeLimitExceeded { needed: 76, .. })));
    }

    #[test]
    fn gadgets() {
        assert_eq!(glue_front(&k1(), &k1(), &[0]).unwrap(), tt(2));
        assert_eq!(insert_apex(&tt(2), &[0, 1], 1).unwrap(), c3());
        assert!(matches!(glue_front(&c3(), &k1(), &[0, 1, 2]), Err(ConstructionError::NotTransitive(_))));
        assert!(matches!(insert_apex(&tt(2), &[1, 0], 1), Err(ConstructionError::NotTransitive(_))));
        assert!(matches!(insert_apex(&tt(2), &[0, 1], 0), Err(ConstructionError::SplitOutOfRange { .. })));
        assert!(matches!(insert_apex(&tt(2), &[0, 1], 3), Err(ConstructionError::SplitOutOfRange { .. })));
    }

    #[test]
    fn transitive_set_counts() {
        assert_eq!(enumerate_transitive_sets(&c3(), None, 100).unwrap().len(), 6);
        assert_eq!(enumerate_transitive_sets(&tt(3), None, 100).unwrap().len(), 7);
        for d in [c3(), tt(4), patterns::delta_tt(2, 2)] {
            assert_eq!(enumerate_transitive_sets(&d, Some(1), 100).unwrap().len(), d.n());
        }
        assert_eq!(
            enumerate_transitive_sets(&tt(4), None, 5),
            Err(ConstructionError::CapExceeded { cap: 5, partial: 5 })
        );
    }

    #[test]
    fn amplifier_of_triangle() {
        let lim = Limits::default();
        assert_eq!(rainbow_amplifier(&k1(), 1, &lim).unwrap().digraph, k1());
        let amp = rainbow_amplifier(&c3(), 2, &lim).unwrap();
        assert_eq!(amp.digraph.n(), 12);
        assert_eq!(amp.blocks.len(), 4);
        let mut block_of = [0; 12];
        for (i, b) in amp.blocks.iter().enumerate() {
            b.vertices.clone().for_each(|v| block_of[v] = i);
        }
        for comp in strong_components(&amp.digraph) {
            assert!(comp.iter().all(|&v| block_of[v] == block_of[comp[0]]));
        }
    }

    #[test]
    fn c3k1_level_two_is_triangle() {
        let w = c3k1_witness(2, &Limits::default()).unwrap();
        assert_eq!(w.digraph, c3());
        assert_eq!(w.coloring.colors_used(), 2);
    }

    #[test]
    fn cograph_sizes() {
        let lim = Limits::default();
        let sizes: Vec<usize> = (1..=4).map(|k| cograph_witness(k, &lim).unwrap().n()).collect();
        assert_eq!(sizes, vec![1, 4, 13, 40]);
        let c4 = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(cograph_witness(2, &lim).unwrap(), c4);
    }

    #[test]
    fn family_names_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
