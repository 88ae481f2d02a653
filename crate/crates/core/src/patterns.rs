//! Hero constructions, induced pattern search and the hero classifiers.
//!
//! Heroes in tournaments are generated by the grammar
//!
//! ```text
//! H ::= K1 | H => H | Δ(1, TT_k, H) | Δ(1, H, TT_k)      (k >= 1)
//! ```
//!
//! [`is_hero_in_tournaments`] recognizes that grammar in polynomial time per
//! subproblem: a strongly connected `Δ(1, H1, H2)` is determined by its apex,
//! since the apex's out- and in-neighborhoods are exactly the two parts.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::digraph::{compose_all_arcs, is_transitive_tournament, strong_components, Digraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("not a tournament ({arcs} arcs on {n} vertices)")]
    NotATournament { n: usize, arcs: usize },
    #[error("not a hero in tournaments")]
    NotAHero,
    #[error("cannot parse pattern {0:?}")]
    Parse(String),
}

fn require_tournament(d: &Digraph) -> Result<(), PatternError> {
    if d.is_tournament() {
        Ok(())
    } else {
        Err(PatternError::NotATournament { n: d.n(), arcs: d.arc_count() })
    }
}

/// Transitive tournament `TT_k`: `i -> j` iff `i < j`.
pub fn tt(k: usize) -> Digraph {
    Digraph::from_arcs_unchecked(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
}

pub fn k1() -> Digraph {
    Digraph::empty(1)
}

/// The directed triangle `0 -> 1 -> 2 -> 0`.
pub fn c3() -> Digraph {
    Digraph::from_arcs_unchecked(3, [(0, 1), (1, 2), (2, 0)])
}

/// `Δ(1, h1, h2)`: apex 0, then `h1`, then `h2`, with apex → h1 → h2 → apex.
pub fn delta(h1: &Digraph, h2: &Digraph) -> Result<Digraph, PatternError> {
    require_tournament(h1)?;
    require_tournament(h2)?;
    let (n1, n2) = (h1.n(), h2.n());
    let mut arcs: Vec<(usize, usize)> = (1..=n1).map(|a| (0, a)).collect();
    arcs.extend(h1.arcs().map(|(u, v)| (u + 1, v + 1)));
    arcs.extend(h2.arcs().map(|(u, v)| (u + 1 + n1, v + 1 + n1)));
    for a in 1..=n1 {
        arcs.extend((1 + n1..1 + n1 + n2).map(|b| (a, b)));
    }
    arcs.extend((1 + n1..1 + n1 + n2).map(|b| (b, 0)));
    Ok(Digraph::from_arcs_unchecked(1 + n1 + n2, arcs))
}

/// `Δ(1, TT_a, TT_b)`.
pub fn delta_tt(a: usize, b: usize) -> Digraph {
    delta(&tt(a), &tt(b)).expect("transitive tournaments")
}

/// `C3 => K1`.
pub fn c3_to_k1() -> Digraph {
    compose_all_arcs(&c3(), &k1())
}

/// `K1 => C3`.
pub fn k1_to_c3() -> Digraph {
    compose_all_arcs(&k1(), &c3())
}

/// Injective map from pattern vertices (by index) to host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks arc exactness against both digraphs.
    pub fn is_induced_copy(&self, host: &Digraph, pattern: &Digraph) -> bool {
        let m = &self.map;
        if m.len() != pattern.n() || m.iter().any(|&v| v >= host.n()) {
            return false;
        }
        for i in 0..m.len() {
            for j in 0..m.len() {
                if i == j {
                    continue;
                }
                if m[i] == m[j] || pattern.has_arc(i, j) != host.has_arc(m[i], m[j]) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Out,
    In,
    None,
}

struct SearchPlan {
    order: Vec<usize>,
    /// For each position: relation to every earlier position.
    constraints: Vec<Vec<(usize, Rel)>>,
    /// For each position > 0: an earlier adjacent position, if any.
    anchor: Vec<Option<(usize, Rel)>>,
}

fn relation(d: &Digraph, u: usize, v: usize) -> Rel {
    if d.has_arc(u, v) {
        Rel::Out
    } else if d.has_arc(v, u) {
        Rel::In
    } else {
        Rel::None
    }
}

/// Orders pattern vertices: `start` (or the highest-degree vertex) first, then
/// repeatedly the vertex with most already-placed neighbors, ties by degree.
fn plan(pattern: &Digraph, start: Option<usize>) -> SearchPlan {
    let k = pattern.n();
    let deg = |v: usize| pattern.out_degree(v) + pattern.in_degree(v);
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let mut links = vec![0usize; k];
    for step in 0..k {
        let next = match (step, start) {
            (0, Some(s)) => s,
            _ => (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], deg(v), std::cmp::Reverse(v)))
                .unwrap(),
        };
        placed[next] = true;
        order.push(next);
        for v in 0..k {
            if !placed[v] && pattern.adjacent(v, next) {
                links[v] += 1;
            }
        }
    }
    let mut constraints = Vec::with_capacity(k);
    let mut anchor = Vec::with_capacity(k);
    for (p, &v) in order.iter().enumerate() {
        let cs: Vec<(usize, Rel)> = (0..p).map(|q| (q, relation(pattern, v, order[q]))).collect();
        anchor.push(cs.iter().copied().find(|&(_, r)| r != Rel::None));
        constraints.push(cs);
    }
    SearchPlan { order, constraints, anchor }
}

struct Matcher<'a> {
    host: &'a Digraph,
    pattern: &'a Digraph,
    plan: SearchPlan,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn feasible(&self, p: usize, h: usize) -> bool {
        let v = self.plan.order[p];
        if self.used[h]
            || self.host.out_degree(h) < self.pattern.out_degree(v)
            || self.host.in_degree(h) < self.pattern.in_degree(v)
        {
            return false;
        }
        self.plan.constraints[p].iter().all(|&(q, rel)| relation(self.host, h, self.image[q]) == rel)
    }

    fn extend(&mut self, p: usize) -> bool {
        if p == self.plan.order.len() {
            return true;
        }
        let candidates: Vec<usize> = match self.plan.anchor[p] {
            // h -> image[q] means h is an in-neighbor of image[q].
            Some((q, Rel::Out)) => self.host.in_neighbors(self.image[q]).to_vec(),
            Some((q, Rel::In)) => self.host.out_neighbors(self.image[q]).to_vec(),
            _ => (0..self.host.n()).collect(),
        };
        for h in candidates {
            if self.feasible(p, h) {
                self.image[p] = h;
                self.used[h] = true;
                if self.extend(p + 1) {
                    return true;
                }
                self.used[h] = false;
            }
        }
        false
    }

    fn embedding(&self) -> Embedding {
        let mut map = vec![0; self.pattern.n()];
        for (p, &v) in self.plan.order.iter().enumerate() {
            map[v] = self.image[p];
        }
        Embedding { map }
    }
}

/// Finds an induced copy of `pattern` in `host`.
pub fn contains_induced(host: &Digraph, pattern: &Digraph) -> Option<Embedding> {
    if pattern.n() > host.n() {
        return None;
    }
    if pattern.n() == 0 {
        return Some(Embedding { map: Vec::new() });
    }
    let mut m = Matcher {
        host,
        pattern,
        plan: plan(pattern, None),
        image: vec![0; pattern.n()],
        used: vec![false; host.n()],
    };
    m.extend(0).then(|| m.embedding())
}

/// Finds an induced copy of `pattern` in `host` that uses host vertex `v`.
pub fn contains_induced_through(host: &Digraph, pattern: &Digraph, v: usize) -> Option<Embedding> {
    if pattern.n() > host.n() || v >= host.n() {
        return None;
    }
    for start in 0..pattern.n() {
        let mut m = Matcher {
            host,
            pattern,
            plan: plan(pattern, Some(start)),
            image: vec![0; pattern.n()],
            used: vec![false; host.n()],
        };
        if m.feasible(0, v) {
            m.image[0] = v;
            m.used[v] = true;
            if m.extend(1) {
                return Some(m.embedding());
            }
        }
    }
    None
}

/// Directed triangle `a -> b -> c -> a` inside `among` (a membership mask).
fn triangle_within(d: &Digraph, among: &[usize], mask: &[bool]) -> Option<[usize; 3]> {
    for &a in among {
        for &b in d.out_neighbors(a) {
            if !mask[b] {
                continue;
            }
            for &c in d.out_neighbors(b) {
                if mask[c] && d.has_arc(c, a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Detects `C3 => K1` by looking for a directed triangle in some vertex's
/// in-neighborhood. The embedding follows [`c3_to_k1`]'s numbering.
pub fn find_c3_to_k1(host: &Digraph) -> Option<Embedding> {
    let mut mask = vec![false; host.n()];
    for z in 0..host.n() {
        let ins = host.in_neighbors(z);
        ins.iter().for_each(|&v| mask[v] = true);
        let found = triangle_within(host, ins, &mask);
        ins.iter().for_each(|&v| mask[v] = false);
        if let Some([a, b, c]) = found {
            return Some(Embedding { map: vec![a, b, c, z] });
        }
    }
    None
}

/// Detects `K1 => C3` via out-neighborhoods; numbering follows [`k1_to_c3`].
pub fn find_k1_to_c3(host: &Digraph) -> Option<Embedding> {
    let mut mask = vec![false; host.n()];
    for z in 0..host.n() {
        let outs = host.out_neighbors(z);
        outs.iter().for_each(|&v| mask[v] = true);
        let found = triangle_within(host, outs, &mask);
        outs.iter().for_each(|&v| mask[v] = false);
        if let Some([a, b, c]) = found {
            return Some(Embedding { map: vec![z, a, b, c] });
        }
    }
    None
}

/// Derivation tree in the hero grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeroExpr {
    Leaf,
    Seq(Rc<HeroExpr>, Rc<HeroExpr>),
    /// `Δ(1, TT_k, h)`
    DeltaLeft(usize, Rc<HeroExpr>),
    /// `Δ(1, h, TT_k)`
    DeltaRight(Rc<HeroExpr>, usize),
}

impl HeroExpr {
    pub fn eval(&self) -> Digraph {
        match self {
            HeroExpr::Leaf => k1(),
            HeroExpr::Seq(a, b) => compose_all_arcs(&a.eval(), &b.eval()),
            HeroExpr::DeltaLeft(k, h) => delta(&tt(*k), &h.eval()).expect("tournaments"),
            HeroExpr::DeltaRight(h, k) => delta(&h.eval(), &tt(*k)).expect("tournaments"),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            HeroExpr::Leaf => 1,
            HeroExpr::Seq(a, b) => a.size() + b.size(),
            HeroExpr::DeltaLeft(k, h) | HeroExpr::DeltaRight(h, k) => 1 + k + h.size(),
        }
    }
}

impl fmt::Display for HeroExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeroExpr::Leaf => write!(f, "K1"),
            HeroExpr::Seq(a, b) => write!(f, "({a} => {b})"),
            HeroExpr::DeltaLeft(k, h) => write!(f, "D(1, {k}, {h})"),
            HeroExpr::DeltaRight(h, k) => write!(f, "D(1, {h}, {k})"),
        }
    }
}

struct HeroRecognizer<'a> {
    d: &'a Digraph,
    memo: HashMap<VertexSet, Option<Rc<HeroExpr>>>,
}

impl HeroRecognizer<'_> {
    fn is_transitive(&self, s: &[usize]) -> bool {
        // A tournament is transitive iff its score sequence is 0..k-1.
        let mut seen = vec![false; s.len()];
        let members = VertexSet::from_iter_with_capacity(self.d.n(), s.iter().copied());
        for &v in s {
            let score = self.d.out_neighbors(v).iter().filter(|&&w| members.contains(w)).count();
            if seen[score] {
                return false;
            }
            seen[score] = true;
        }
        true
    }

    fn recognize(&mut self, s: &[usize]) -> Option<Rc<HeroExpr>> {
        if s.len() == 1 {
            return Some(Rc::new(HeroExpr::Leaf));
        }
        let key = VertexSet::from_iter_with_capacity(self.d.n(), s.iter().copied());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.recognize_uncached(s, &key);
        self.memo.insert(key, result.clone());
        result
    }

    fn recognize_uncached(&mut self, s: &[usize], members: &VertexSet) -> Option<Rc<HeroExpr>> {
        let sub = self.d.induced_by(s).expect("subset of host");
        let comps = strong_components(&sub);
        if comps.len() > 1 {
            let mut parts = Vec::with_capacity(comps.len());
            for c in comps {
                let orig: Vec<usize> = c.iter().map(|&i| s[i]).collect();
                parts.push(self.recognize(&orig)?);
            }
            return parts.into_iter().rev().reduce(|acc, p| Rc::new(HeroExpr::Seq(p, acc)));
        }
        for &x in s {
            let outs: Vec<usize> =
                self.d.out_neighbors(x).iter().copied().filter(|&w| members.contains(w)).collect();
            let ins: Vec<usize> =
                self.d.in_neighbors(x).iter().copied().filter(|&w| members.contains(w)).collect();
            if outs.is_empty() || ins.is_empty() {
                continue;
            }
            if !outs.iter().all(|&a| ins.iter().all(|&b| self.d.has_arc(a, b))) {
                continue;
            }
            if self.is_transitive(&outs) {
                if let Some(h) = self.recognize(&ins) {
                    return Some(Rc::new(HeroExpr::DeltaLeft(outs.len(), h)));
                }
            }
            if self.is_transitive(&ins) {
                if let Some(h) = self.recognize(&outs) {
                    return Some(Rc::new(HeroExpr::DeltaRight(h, ins.len())));
                }
            }
        }
        None
    }
}

/// A derivation of `h` in the hero grammar, or `None` if `h` is not a hero in
/// tournaments.
pub fn is_hero_in_tournaments(h: &Digraph) -> Result<Option<HeroExpr>, PatternError> {
    require_tournament(h)?;
    if h.n() == 0 {
        return Ok(None);
    }
    let mut r = HeroRecognizer { d: h, memo: HashMap::new() };
    let all: Vec<usize> = (0..h.n()).collect();
    Ok(r.recognize(&all).map(|e| (*e).clone()))
}

/// Why a tournament is or is not a hero in orientations of chordal graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChordalHeroReason {
    Transitive { order: Vec<usize> },
    /// Isomorphic to `Δ(1, 1, k)`, witnessed by the apex `x` with `x -> a`.
    Delta11k { k: usize, apex: usize, single: usize },
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordalHeroVerdict {
    pub is_hero: bool,
    pub reason: ChordalHeroReason,
}

impl fmt::Display for ChordalHeroVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            ChordalHeroReason::Transitive { order } => {
                write!(f, "hero: transitive tournament TT_{} with order {order:?}", order.len())
            }
            ChordalHeroReason::Delta11k { k, apex, single } => write!(
                f,
                "hero: isomorphic to D(1, 1, {k}) with apex {apex} and singleton part {{{single}}}"
            ),
            ChordalHeroReason::Neither => {
                write!(f, "not a hero: neither transitive nor isomorphic to D(1, 1, k)")
            }
        }
    }
}

/// `Some((k, x, a))` if `h ≅ Δ(1, 1, k)`.
pub fn as_delta_11k(h: &Digraph) -> Option<(usize, usize, usize)> {
    if !h.is_tournament() || h.n() < 3 {
        return None;
    }
    for x in 0..h.n() {
        let outs = h.out_neighbors(x);
        let ins = h.in_neighbors(x);
        if outs.is_empty() || ins.is_empty() || !outs.iter().all(|&a| ins.iter().all(|&b| h.has_arc(a, b))) {
            continue;
        }
        let transitive = |part: &[usize]| is_transitive_tournament(&h.induced_by(part).unwrap()).is_some();
        if outs.len() == 1 && transitive(ins) {
            return Some((ins.len(), x, outs[0]));
        }
        if ins.len() == 1 && transitive(outs) {
            // Δ(1, TT_k, 1) with apex x is Δ(1, 1, TT_k) with apex ins[0].
            return Some((outs.len(), ins[0], x));
        }
    }
    None
}

/// Hero in orientations of chordal graphs: transitive or `≅ Δ(1, 1, k)`.
pub fn is_hero_in_chordal(h: &Digraph) -> Result<ChordalHeroVerdict, PatternError> {
    require_tournament(h)?;
    if let Some(order) = is_transitive_tournament(h) {
        return Ok(ChordalHeroVerdict { is_hero: true, reason: ChordalHeroReason::Transitive { order } });
    }
    if let Some((k, apex, single)) = as_delta_11k(h) {
        return Ok(ChordalHeroVerdict { is_hero: true, reason: ChordalHeroReason::Delta11k { k, apex, single } });
    }
    Ok(ChordalHeroVerdict { is_hero: false, reason: ChordalHeroReason::Neither })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obstruction {
    Delta122,
    C3ToK1,
    K1ToC3,
}

impl Obstruction {
    pub const ALL: [Obstruction; 3] = [Obstruction::Delta122, Obstruction::C3ToK1, Obstruction::K1ToC3];

    pub fn digraph(self) -> Digraph {
        match self {
            Obstruction::Delta122 => delta_tt(2, 2),
            Obstruction::C3ToK1 => c3_to_k1(),
            Obstruction::K1ToC3 => k1_to_c3(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Obstruction::Delta122 => "D(1,2,2)",
            Obstruction::C3ToK1 => "C3=>K1",
            Obstruction::K1ToC3 => "K1=>C3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeroClass {
    Transitive,
    Delta11k(usize),
    /// Subtournaments found, each with an embedding.
    Contains(Vec<(Obstruction, Embedding)>),
}

/// Places a hero in tournaments into the three-way split: transitive,
/// `Δ(1, 1, k)`, or containing one of the three minimal obstructions.
pub fn minimal_obstruction_check(h: &Digraph) -> Result<HeroClass, PatternError> {
    if is_hero_in_tournaments(h)?.is_none() {
        return Err(PatternError::NotAHero);
    }
    if is_transitive_tournament(h).is_some() {
        return Ok(HeroClass::Transitive);
    }
    if let Some((k, _, _)) = as_delta_11k(h) {
        return Ok(HeroClass::Delta11k(k));
    }
    Ok(HeroClass::Contains(obstructions_in(h)))
}

/// Every obstruction contained in `h`, in [`Obstruction::ALL`] order.
pub fn obstructions_in(h: &Digraph) -> Vec<(Obstruction, Embedding)> {
    Obstruction::ALL
        .iter()
        .filter_map(|&o| contains_induced(h, &o.digraph()).map(|e| (o, e)))
        .collect()
}

/// Parses the pattern mini-language: `TT k`, `D 1 a b`, `C3=>K1`, `K1=>C3`,
/// `C3`, `K1`, and compact forms such as `D122`, `TT3`, `D 1 1 k`.
pub fn parse_pattern(spec: &str) -> Result<Digraph, PatternError> {
    let err = || PatternError::Parse(spec.to_string());
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase();
    match compact.as_str() {
        "C3=>K1" => return Ok(c3_to_k1()),
        "K1=>C3" => return Ok(k1_to_c3()),
        "C3" => return Ok(c3()),
        "K1" => return Ok(k1()),
        _ => {}
    }
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    let number = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 1);
    if let Some(rest) = compact.strip_prefix("TT") {
        let rest = rest.trim_start_matches('_');
        return number(rest).map(tt).ok_or_else(err);
    }
    if let Some(rest) = compact.strip_prefix('D') {
        let parts: Vec<usize> = if tokens.len() == 4 && tokens[0].eq_ignore_ascii_case("D") {
            tokens[1..].iter().map(|t| number(t)).collect::<Option<_>>().ok_or_else(err)?
        } else if rest.len() == 3 && rest.chars().all(|c| c.is_ascii_digit()) {
            rest.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
        } else {
            return Err(err());
        };
        if parts.len() != 3 || parts[0] != 1 || parts[1] == 0 || parts[2] == 0 {
            return Err(err());
        }
        return Ok(delta_tt(parts[1], parts[2]));
    }
    Err(err())
}
