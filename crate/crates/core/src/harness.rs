//! Exhaustive and sampled checks: canonical forms for small digraphs,
//! tournament and hero enumeration, and a registry of named property sweeps.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{self, Chordality, UnitIntervalRepresentation};
use crate::coloring::{self, Dicoloring, SolverConfig, Validation};
use crate::constructions::{self, Limits};
use crate::digraph::{compose_all_arcs, is_transitive_tournament, reverse, Digraph};
use crate::io;
use crate::patterns::{self, HeroClass};

/// Largest order handled by [`CanonicalForm`].
pub const CANONICAL_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("universe too large: order {n} exceeds the limit {limit}")]
    UniverseTooLarge { n: usize, limit: usize },
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Io(String),
}

/// Lexicographically smallest adjacency code over all vertex orders. Pairs
/// are read as `(0,1), (0,2), (1,2), (0,3), ...` with two bits each: 0 for a
/// non-edge, 1 for an arc from the smaller position, 2 for the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u64,
}

fn pair_code(d: &Digraph, u: usize, v: usize) -> u64 {
    if d.has_arc(u, v) {
        1
    } else if d.has_arc(v, u) {
        2
    } else {
        0
    }
}

pub fn canonical_form(d: &Digraph) -> Result<CanonicalForm, HarnessError> {
    let n = d.n();
    if n > CANONICAL_LIMIT {
        return Err(HarnessError::UniverseTooLarge { n, limit: CANONICAL_LIMIT });
    }
    let mut code = [[0u64; CANONICAL_LIMIT]; CANONICAL_LIMIT];
    for (u, row) in code.iter_mut().enumerate().take(n) {
        for (v, c) in row.iter_mut().enumerate().take(n) {
            *c = pair_code(d, u, v);
        }
    }
    let total_digits = n * n.saturating_sub(1) / 2;
    let mut best = u64::MAX;
    let mut placed = Vec::with_capacity(n);
    let mut used = [false; CANONICAL_LIMIT];
    search(&code, n, total_digits, &mut placed, &mut used, 0, false, &mut best);
    Ok(CanonicalForm { n: n as u8, code: if n < 2 { 0 } else { best } })
}

/// Places vertices position by position. `prefix` holds the digits fixed so
/// far; once it is strictly below the best prefix, pruning stops.
#[allow(clippy::too_many_arguments)]
fn search(
    code: &[[u64; CANONICAL_LIMIT]; CANONICAL_LIMIT],
    n: usize,
    total: usize,
    placed: &mut Vec<usize>,
    used: &mut [bool; CANONICAL_LIMIT],
    prefix: u64,
    below: bool,
    best: &mut u64,
) {
    let m = placed.len();
    if m == n {
        if prefix < *best {
            *best = prefix;
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut p = prefix;
        for &u in placed.iter() {
            p = (p << 2) | code[u][v];
        }
        let digits = (m + 1) * m / 2;
        let mut now_below = below;
        if !below && *best != u64::MAX {
            let shift = 2 * (total - digits) as u32;
            let best_prefix = if shift >= 64 { 0 } else { *best >> shift };
            if p > best_prefix {
                continue;
            }
            now_below = p < best_prefix;
        }
        used[v] = true;
        placed.push(v);
        search(code, n, total, placed, used, p, now_below, best);
        placed.pop();
        used[v] = false;
    }
}

impl CanonicalForm {
    /// The digraph whose identity ordering realizes this code.
    pub fn to_digraph(self) -> Digraph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut arcs = Vec::new();
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                let digit = (self.code >> (2 * (total - idx - 1))) & 3;
                match digit {
                    1 => arcs.push((u, v)),
                    2 => arcs.push((v, u)),
                    _ => {}
                }
                idx += 1;
            }
        }
        Digraph::new(n, &arcs).expect("canonical codes encode simple digraphs")
    }
}

/// Tournament on `0..n` with arc `i -> j` (for `i < j`) iff bit `p` of `mask`
/// is set, where `p` indexes pairs in the order `(0,1), (0,2), ..., (1,2), ...`.
pub fn tournament_from_mask(n: usize, mask: u64) -> Digraph {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut p = 0;
    for i in 0..n {
        for j in i + 1..n {
            arcs.push(if mask >> p & 1 == 1 { (i, j) } else { (j, i) });
            p += 1;
        }
    }
    Digraph::from_arcs_unchecked(n, arcs)
}

/// Number of labeled tournaments on `n` vertices.
pub fn labeled_tournament_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// All labeled tournaments on `n` vertices, in mask order.
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Digraph>, HarnessError> {
    if n > CANONICAL_LIMIT {
        return Err(HarnessError::UniverseTooLarge { n, limit: CANONICAL_LIMIT });
    }
    Ok((0..labeled_tournament_count(n)).map(move |m| tournament_from_mask(n, m)))
}

/// One representative per isomorphism class of `n`-vertex tournaments,
/// sorted by canonical form. Classes are grown one vertex at a time.
pub fn tournament_classes(n: usize) -> Result<Vec<(CanonicalForm, Digraph)>, HarnessError> {
    if n > CANONICAL_LIMIT {
        return Err(HarnessError::UniverseTooLarge { n, limit: CANONICAL_LIMIT });
    }
    let mut classes: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
    let empty = Digraph::empty(0);
    classes.insert(canonical_form(&empty)?, empty);
    for m in 1..=n {
        let next: Vec<(CanonicalForm, Digraph)> = classes
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|rep| {
                (0..1u64 << (m - 1)).map(move |mask| {
                    let mut arcs: Vec<(usize, usize)> = rep.arcs().collect();
                    arcs.extend((0..m - 1).map(|i| if mask >> i & 1 == 1 { (i, m - 1) } else { (m - 1, i) }));
                    let d = Digraph::from_arcs_unchecked(m, arcs);
                    let cf = canonical_form(&d).expect("order within limit");
                    (cf, cf.to_digraph())
                })
            })
            .collect();
        classes = next.into_iter().collect();
    }
    Ok(classes.into_iter().collect())
}

/// Closure of `{K1}` under `H1 => H2`, `Δ(1, TT_a, H)` and `Δ(1, H, TT_b)`,
/// up to `n` vertices, one representative per isomorphism class.
pub fn enumerate_heroes(n: usize) -> Result<BTreeMap<CanonicalForm, Digraph>, HarnessError> {
    if n > CANONICAL_LIMIT {
        return Err(HarnessError::UniverseTooLarge { n, limit: CANONICAL_LIMIT });
    }
    let mut by_size: Vec<Vec<Digraph>> = vec![Vec::new(); n + 1];
    let mut all = BTreeMap::new();
    if n == 0 {
        return Ok(all);
    }
    let k1 = patterns::k1();
    all.insert(canonical_form(&k1)?, k1.clone());
    by_size[1].push(k1);
    for s in 2..=n {
        let mut found: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
        for a in 1..s {
            for h1 in &by_size[a] {
                for h2 in &by_size[s - a] {
                    let d = compose_all_arcs(h1, h2);
                    found.insert(canonical_form(&d)?, d);
                }
            }
        }
        for a in 1..s - 1 {
            let t = patterns::tt(a);
            for h in &by_size[s - 1 - a] {
                for d in [patterns::delta(&t, h), patterns::delta(h, &t)] {
                    let d = d.expect("heroes are tournaments");
                    found.insert(canonical_form(&d)?, d);
                }
            }
        }
        for (cf, d) in found {
            by_size[s].push(d.clone());
            all.insert(cf, d);
        }
    }
    Ok(all)
}

/// Parameters shared by all sweeps. Unset fields take each property's default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub time_cap: Option<Duration>,
    pub instance_cap: Option<u64>,
}

/// A violating instance, stored as text so it can be reloaded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: String,
    pub coloring: Option<String>,
    pub intervals: Option<String>,
    pub detail: String,
}

impl Counterexample {
    fn of(d: &Digraph, detail: String) -> Self {
        Counterexample { graph: io::write_graph(d), coloring: None, intervals: None, detail }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Refuted,
    /// A budget cut the sweep short before any counterexample appeared.
    Truncated,
}

/// Outcome of a sweep. Elapsed time is kept out of the serialized form so
/// that reports of identical runs are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    pub universe: String,
    pub instances: u64,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub config: SweepConfig,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyResult {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    /// Writes `result.json` and one file set per counterexample into `dir`.
    pub fn save(&self, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        let err = |e: std::io::Error| HarnessError::Io(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(err)?;
        let mut written = vec![dir.join("result.json")];
        fs::write(&written[0], self.to_json()).map_err(err)?;
        for (i, c) in self.counterexamples.iter().enumerate() {
            let base = dir.join(format!("{}-{i}", self.property));
            let files = [("graph", Some(&c.graph)), ("col", c.coloring.as_ref()), ("intervals", c.intervals.as_ref())];
            for (ext, text) in files {
                if let Some(text) = text {
                    let path = base.with_extension(ext);
                    fs::write(&path, text).map_err(err)?;
                    written.push(path);
                }
            }
        }
        Ok(written)
    }
}

/// Keeps at most this many counterexamples per sweep.
const MAX_COUNTEREXAMPLES: usize = 20;
const CHUNK: u64 = 1 << 14;

struct Sweep {
    deadline: Option<Instant>,
    instance_cap: Option<u64>,
}

struct Outcome {
    checked: u64,
    counterexamples: Vec<Counterexample>,
    truncated: bool,
}

impl Sweep {
    fn new(cfg: &SweepConfig) -> Self {
        Sweep { deadline: cfg.time_cap.map(|t| Instant::now() + t), instance_cap: cfg.instance_cap }
    }

    /// Checks indices `0..total` in parallel chunks; budgets are consulted
    /// between chunks so that the checked prefix is deterministic.
    fn run<F>(&self, total: u64, check: F) -> Outcome
    where
        F: Fn(u64) -> Option<Counterexample> + Sync,
    {
        let limit = self.instance_cap.map_or(total, |c| c.min(total));
        let mut out = Outcome { checked: 0, counterexamples: Vec::new(), truncated: limit < total };
        let mut start = 0;
        while start < limit {
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                out.truncated = true;
                break;
            }
            let end = (start + CHUNK).min(limit);
            let mut found: Vec<(u64, Counterexample)> =
                (start..end).into_par_iter().filter_map(|i| check(i).map(|c| (i, c))).collect();
            found.sort_by_key(|(i, _)| *i);
            for (_, c) in found {
                if out.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    out.counterexamples.push(c);
                }
            }
            out.checked = end;
            start = end;
        }
        out
    }
}

fn finish(name: &str, universe: String, cfg: &SweepConfig, outcomes: Vec<Outcome>, notes: Vec<String>, t0: Instant) -> PropertyResult {
    let instances = outcomes.iter().map(|o| o.checked).sum();
    let truncated = outcomes.iter().any(|o| o.truncated);
    let counterexamples: Vec<Counterexample> =
        outcomes.into_iter().flat_map(|o| o.counterexamples).take(MAX_COUNTEREXAMPLES).collect();
    let status = if !counterexamples.is_empty() {
        Status::Refuted
    } else if truncated {
        Status::Truncated
    } else {
        Status::Holds
    };
    PropertyResult {
        property: name.to_string(),
        universe,
        instances,
        status,
        counterexamples,
        notes,
        config: cfg.clone(),
        elapsed: t0.elapsed(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), HarnessError> {
    if cond {
        Ok(())
    } else {
        Err(HarnessError::InvalidParameter(msg()))
    }
}

/// A registered check: `run` performs the sweep, `violates` re-examines a
/// saved counterexample from scratch.
pub struct Property {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(&SweepConfig) -> Result<PropertyResult, HarnessError>,
    pub violates: fn(&Counterexample) -> bool,
}

pub fn registry() -> &'static [Property] {
    &REGISTRY
}

static REGISTRY: [Property; 9] = [
    Property {
        name: "triangle_degree_bound",
        description: "every D(1,1,k)-free tournament on at most n vertices has triangle degree below 2^(2k-2) at every vertex (exhaustive, default n=7, k=2)",
        run: triangle_degree_bound,
        violates: triangle_degree_violates,
    },
    Property {
        name: "stearns_bound",
        description: "greedy extraction finds a transitive subtournament of size floor(log2 n)+1 (exhaustive up to n, default 6, plus samples at n+1 and n+2)",
        run: stearns_bound,
        violates: stearns_violates,
    },
    Property {
        name: "hero_recognizer_complete",
        description: "the recognizer accepts exactly the grammar closure on tournament classes up to n vertices (default 6)",
        run: hero_recognizer_complete,
        violates: recognizer_violates,
    },
    Property {
        name: "trichotomy",
        description: "every hero on at most n vertices (default 6) is exactly one of: transitive, D(1,1,k), or contains D(1,2,2), C3=>K1 or K1=>C3",
        run: trichotomy,
        violates: trichotomy_violates,
    },
    Property {
        name: "reversal_duality",
        description: "both classifiers agree on every tournament class and its reverse (up to n vertices, default 6)",
        run: reversal_duality,
        violates: reversal_duality_violates,
    },
    Property {
        name: "rainbow_exhaustive",
        description: "every k-dicoloring of the amplifier built on the level-k C3=>K1-free witness contains a rainbow TT_k (all k^n colorings, default k=2)",
        run: rainbow_exhaustive,
        violates: rainbow_violates,
    },
    Property {
        name: "free_coloring_bound",
        description: "on seeded random chordal orientations, D(1,1,k)-free ones get at most 2^(2k-2) colors and TT_(k+1)-free ones at most 2^k-1 (default 100 samples, n=40, k=2)",
        run: free_coloring_bound,
        violates: free_coloring_violates,
    },
    Property {
        name: "unit_interval_bound",
        description: "layered coloring of seeded random unit interval orientations is valid with at most 2C colors and arcs only join equal or consecutive layers (default 50 samples, n<=200)",
        run: unit_interval_bound,
        violates: unit_interval_violates,
    },
    Property {
        name: "reversal_reduction",
        description: "reversing seeded random C3=>K1-free chordal orientations yields K1=>C3-free chordal orientations (default 100 samples, n=30)",
        run: reversal_reduction,
        violates: reversal_reduction_violates,
    },
];

pub fn find_property(name: &str) -> Result<&'static Property, HarnessError> {
    REGISTRY
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| HarnessError::UnknownProperty(name.to_string()))
}

pub fn check_property(name: &str, cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    (find_property(name)?.run)(cfg)
}

/// Reloads a counterexample and reports whether it still violates `name`.
pub fn recheck(name: &str, c: &Counterexample) -> Result<bool, HarnessError> {
    Ok((find_property(name)?.violates)(c))
}

fn load(c: &Counterexample) -> Option<Digraph> {
    io::read_graph(&c.graph).ok()
}

// triangle_degree_bound

fn triangle_degree_failure(t: &Digraph, k: usize) -> Option<String> {
    let bound = 1usize << (2 * k - 2);
    if patterns::contains_induced(t, &patterns::delta_tt(1, k)).is_some() {
        return None;
    }
    (0..t.n())
        .map(|x| (x, coloring::triangle_degree(t, x)))
        .find(|&(_, td)| td >= bound)
        .map(|(x, td)| format!("vertex {x} has triangle degree {td} >= {bound}"))
}

fn triangle_degree_bound(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(7);
    let k = cfg.k.unwrap_or(2);
    ensure(n <= 8, || format!("n={n} above the exhaustive limit 8"))?;
    ensure((1..=16).contains(&k), || format!("k={k} outside 1..=16"))?;
    let sweep = Sweep::new(cfg);
    let outcomes: Vec<Outcome> = (1..=n)
        .map(|m| {
            sweep.run(labeled_tournament_count(m), |mask| {
                let t = tournament_from_mask(m, mask);
                triangle_degree_failure(&t, k).map(|msg| Counterexample::of(&t, format!("k={k}: {msg}")))
            })
        })
        .collect();
    let universe = format!("all labeled tournaments on 1..={n} vertices, k={k}");
    Ok(finish("triangle_degree_bound", universe, cfg, outcomes, Vec::new(), t0))
}

fn triangle_degree_violates(c: &Counterexample) -> bool {
    let k = c.detail.strip_prefix("k=").and_then(|s| s.split(':').next()).and_then(|s| s.parse().ok());
    match (load(c), k) {
        (Some(t), Some(k)) => t.is_tournament() && triangle_degree_failure(&t, k).is_some(),
        _ => false,
    }
}

// stearns_bound

fn stearns_failure(t: &Digraph) -> Option<String> {
    let want = coloring::stearns_bound(t.n());
    match coloring::stearns_transitive(t) {
        Err(e) => Some(format!("extraction failed: {e}")),
        Ok(set) => {
            let transitive = t.induced_by(&set).ok().and_then(|s| is_transitive_tournament(&s)).is_some();
            if !transitive {
                Some(format!("set {set:?} is not transitive"))
            } else if set.len() < want {
                Some(format!("set {set:?} has size {} < {want}", set.len()))
            } else {
                None
            }
        }
    }
}

fn stearns_bound(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(6);
    let samples = cfg.samples.unwrap_or(100_000);
    ensure(n <= 8, || format!("n={n} above the exhaustive limit 8"))?;
    let sweep = Sweep::new(cfg);
    let mut outcomes: Vec<Outcome> = (1..=n)
        .map(|m| {
            sweep.run(labeled_tournament_count(m), |mask| {
                let t = tournament_from_mask(m, mask);
                stearns_failure(&t).map(|msg| Counterexample::of(&t, msg))
            })
        })
        .collect();
    let sampled: Vec<usize> = vec![n + 1, n + 2];
    for &m in &sampled {
        let pairs = m * (m - 1) / 2;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ m as u64);
        let masks: Vec<Vec<bool>> = (0..samples).map(|_| (0..pairs).map(|_| rng.gen_bool(0.5)).collect()).collect();
        outcomes.push(sweep.run(samples, |i| {
            let bits = &masks[i as usize];
            let mut arcs = Vec::with_capacity(pairs);
            let mut p = 0;
            for a in 0..m {
                for b in a + 1..m {
                    arcs.push(if bits[p] { (a, b) } else { (b, a) });
                    p += 1;
                }
            }
            let t = Digraph::from_arcs_unchecked(m, arcs);
            stearns_failure(&t).map(|msg| Counterexample::of(&t, msg))
        }));
    }
    let universe = format!(
        "all labeled tournaments on 1..={n} vertices, plus {samples} seeded samples at each of n={} and n={}",
        sampled[0], sampled[1]
    );
    Ok(finish("stearns_bound", universe, cfg, outcomes, Vec::new(), t0))
}

fn stearns_violates(c: &Counterexample) -> bool {
    load(c).is_some_and(|t| t.is_tournament() && stearns_failure(&t).is_some())
}

// hero_recognizer_complete

fn recognizer_disagreement(t: &Digraph, closure: &BTreeMap<CanonicalForm, Digraph>) -> Option<String> {
    let cf = canonical_form(t).ok()?;
    let member = closure.contains_key(&cf);
    match patterns::is_hero_in_tournaments(t) {
        Err(e) => Some(format!("recognizer failed: {e}")),
        Ok(expr) => {
            let accepted = expr.is_some();
            if accepted != member {
                return Some(format!("recognizer says {accepted}, grammar closure says {member}"));
            }
            if let Some(e) = expr {
                if canonical_form(&e.eval()).ok() != Some(cf) {
                    return Some(format!("derivation {e} does not rebuild the input"));
                }
            }
            None
        }
    }
}

fn classes_up_to(n: usize) -> Result<Vec<Digraph>, HarnessError> {
    let mut all = Vec::new();
    for m in 1..=n {
        all.extend(tournament_classes(m)?.into_iter().map(|(_, d)| d));
    }
    Ok(all)
}

fn hero_recognizer_complete(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(6);
    let closure = enumerate_heroes(n)?;
    let classes = classes_up_to(n)?;
    let sweep = Sweep::new(cfg);
    let out = sweep.run(classes.len() as u64, |i| {
        let t = &classes[i as usize];
        recognizer_disagreement(t, &closure).map(|msg| Counterexample::of(t, msg))
    });
    let notes = vec![format!("{} tournament classes, {} heroes in the closure", classes.len(), closure.len())];
    let universe = format!("tournament isomorphism classes on 1..={n} vertices");
    Ok(finish("hero_recognizer_complete", universe, cfg, vec![out], notes, t0))
}

fn recognizer_violates(c: &Counterexample) -> bool {
    let Some(t) = load(c) else { return false };
    match enumerate_heroes(t.n()) {
        Ok(closure) => t.is_tournament() && recognizer_disagreement(&t, &closure).is_some(),
        Err(_) => false,
    }
}

// trichotomy

fn trichotomy_failure(h: &Digraph) -> Option<String> {
    let transitive = is_transitive_tournament(h).is_some();
    let delta = patterns::as_delta_11k(h).is_some();
    let found = patterns::obstructions_in(h);
    let count = [transitive, delta, !found.is_empty()].iter().filter(|&&b| b).count();
    if count != 1 {
        let names: Vec<&str> = found.iter().map(|(o, _)| o.name()).collect();
        return Some(format!("transitive={transitive} delta11k={delta} obstructions={names:?}"));
    }
    match patterns::minimal_obstruction_check(h) {
        Ok(HeroClass::Transitive) if transitive => None,
        Ok(HeroClass::Delta11k(_)) if delta => None,
        Ok(HeroClass::Contains(list)) if !list.is_empty() && list.iter().all(|(o, e)| e.is_induced_copy(h, &o.digraph())) => {
            None
        }
        other => Some(format!("classification disagrees: {other:?}")),
    }
}

fn trichotomy(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(6);
    let heroes: Vec<Digraph> = enumerate_heroes(n)?.into_values().collect();
    let out = Sweep::new(cfg).run(heroes.len() as u64, |i| {
        let h = &heroes[i as usize];
        trichotomy_failure(h).map(|msg| Counterexample::of(h, msg))
    });
    let universe = format!("heroes in tournaments on 1..={n} vertices, up to isomorphism");
    Ok(finish("trichotomy", universe, cfg, vec![out], Vec::new(), t0))
}

fn trichotomy_violates(c: &Counterexample) -> bool {
    load(c).is_some_and(|h| matches!(patterns::is_hero_in_tournaments(&h), Ok(Some(_))) && trichotomy_failure(&h).is_some())
}

// reversal_duality

fn reversal_failure(t: &Digraph) -> Option<String> {
    let r = reverse(t);
    let chordal = |d: &Digraph| patterns::is_hero_in_chordal(d).map(|v| v.is_hero).ok();
    let tour = |d: &Digraph| patterns::is_hero_in_tournaments(d).map(|e| e.is_some()).ok();
    let (a, b) = (chordal(t), chordal(&r));
    let (c, d) = (tour(t), tour(&r));
    (a != b || c != d || a.is_none() || c.is_none())
        .then(|| format!("chordal hero {a:?} vs reversed {b:?}; tournament hero {c:?} vs reversed {d:?}"))
}

fn reversal_duality(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(6);
    let classes = classes_up_to(n)?;
    let out = Sweep::new(cfg).run(classes.len() as u64, |i| {
        let t = &classes[i as usize];
        reversal_failure(t).map(|msg| Counterexample::of(t, msg))
    });
    let universe = format!("tournament isomorphism classes on 1..={n} vertices");
    Ok(finish("reversal_duality", universe, cfg, vec![out], Vec::new(), t0))
}

fn reversal_duality_violates(c: &Counterexample) -> bool {
    load(c).is_some_and(|t| t.is_tournament() && reversal_failure(&t).is_some())
}

// rainbow_exhaustive

/// The amplifier over the level-`k` witness and its transitive `k`-sets.
pub fn rainbow_universe(k: usize) -> Result<(Digraph, Vec<Vec<usize>>), HarnessError> {
    let limits = Limits::default();
    let bad = |e: constructions::ConstructionError| HarnessError::InvalidParameter(e.to_string());
    let seed = constructions::c3k1_witness(k, &limits).map_err(bad)?.digraph;
    let f = constructions::rainbow_amplifier(&seed, k, &limits).map_err(bad)?.digraph;
    let sets = constructions::enumerate_transitive_sets(&f, Some(k), limits.set_cap).map_err(bad)?.sets;
    Ok((f, sets))
}

/// Colorings beyond this count are refused rather than sampled.
pub const RAINBOW_LIMIT: u128 = 1 << 26;

fn decode_coloring(mut index: u64, k: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let c = (index % k as u64) as usize;
            index /= k as u64;
            c
        })
        .collect()
}

fn rainbow_failure(f: &Digraph, sets: &[Vec<usize>], colors: &[usize], k: usize) -> Option<String> {
    let c = Dicoloring::new(colors.to_vec(), k).ok()?;
    if coloring::validate_dicoloring(f, &c).ok()? != Validation::Valid {
        return None;
    }
    let rainbow = sets.iter().any(|s| {
        let mut seen = vec![false; k];
        s.iter().all(|&v| !std::mem::replace(&mut seen[colors[v]], true))
    });
    (!rainbow).then(|| format!("valid {k}-dicoloring without a rainbow TT_{k}"))
}

fn rainbow_exhaustive(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let k = cfg.k.unwrap_or(2);
    ensure(k >= 1, || "k must be positive".into())?;
    let (f, sets) = rainbow_universe(k)?;
    let total = (k as u128).checked_pow(f.n() as u32).unwrap_or(u128::MAX);
    if total > RAINBOW_LIMIT {
        return Err(HarnessError::InvalidParameter(format!(
            "{k}^{} colorings exceed the exhaustive limit {RAINBOW_LIMIT}",
            f.n()
        )));
    }
    let valid = AtomicBool::new(false);
    let valid_count = std::sync::atomic::AtomicU64::new(0);
    let out = Sweep::new(cfg).run(total as u64, |i| {
        let colors = decode_coloring(i, k, f.n());
        let c = Dicoloring::new(colors.clone(), k).expect("colors below k");
        if coloring::validate_dicoloring(&f, &c).ok() == Some(Validation::Valid) {
            valid.store(true, Ordering::Relaxed);
            valid_count.fetch_add(1, Ordering::Relaxed);
        }
        rainbow_failure(&f, &sets, &colors, k).map(|msg| Counterexample {
            coloring: Some(io::write_coloring(&c)),
            ..Counterexample::of(&f, msg)
        })
    });
    let notes = vec![
        format!("amplifier has {} vertices and {} transitive {k}-sets", f.n(), sets.len()),
        format!("{} of the colorings are valid {k}-dicolorings", valid_count.load(Ordering::Relaxed)),
    ];
    let universe = format!("all {total} maps from the {}-vertex amplifier to {k} colors", f.n());
    Ok(finish("rainbow_exhaustive", universe, cfg, vec![out], notes, t0))
}

fn rainbow_violates(c: &Counterexample) -> bool {
    let (Some(f), Some(col)) = (load(c), c.coloring.as_ref()) else { return false };
    let Ok(col) = io::read_coloring(col, f.n()) else { return false };
    let k = col.palette();
    match constructions::enumerate_transitive_sets(&f, Some(k), Limits::default().set_cap) {
        Ok(idx) => col.colors_used() <= k && rainbow_failure(&f, &idx.sets, col.colors(), k).is_some(),
        Err(_) => false,
    }
}

// free_coloring_bound

fn delta_free_failure(d: &Digraph, k: usize) -> Option<(String, Option<Dicoloring>)> {
    let bound = 1usize << (2 * k - 2);
    match coloring::color_delta11k_free_chordal(d, k, false) {
        Err(e) => Some((format!("D(1,1,{k})-free coloring failed: {e}"), None)),
        Ok(c) if c.colors_used() > bound => Some((format!("used {} > {bound} colors", c.colors_used()), Some(c))),
        Ok(c) if coloring::validate_dicoloring(d, &c).ok() != Some(Validation::Valid) => {
            Some(("coloring invalid".into(), Some(c)))
        }
        Ok(_) => None,
    }
}

fn ttk_free_failure(d: &Digraph, k: usize) -> Option<(String, Option<Dicoloring>)> {
    let bound = coloring::ttk_clique_bound(k);
    match coloring::color_ttk_free_chordal(d, k, false) {
        Err(e) => Some((format!("TT_{k}-free coloring failed: {e}"), None)),
        Ok(c) if c.colors_used() > bound => Some((format!("used {} > {bound} colors", c.colors_used()), Some(c))),
        Ok(c) if coloring::validate_dicoloring(d, &c).ok() != Some(Validation::Valid) => {
            Some(("coloring invalid".into(), Some(c)))
        }
        Ok(_) => None,
    }
}

fn free_counterexample(d: &Digraph, tag: String, failure: Option<(String, Option<Dicoloring>)>) -> Option<Counterexample> {
    failure.map(|(msg, c)| Counterexample {
        coloring: c.as_ref().map(io::write_coloring),
        ..Counterexample::of(d, format!("{tag}: {msg}"))
    })
}

fn free_coloring_bound(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(40);
    let k = cfg.k.unwrap_or(2);
    let samples = cfg.samples.unwrap_or(100);
    ensure((1..=8).contains(&k), || format!("k={k} outside 1..=8"))?;
    let sweep = Sweep::new(cfg);
    let delta = patterns::delta_tt(1, k);
    let tt = patterns::tt(k + 1);
    let generation_failures = AtomicBool::new(false);
    let gen = |avoid: &Digraph, i: u64| {
        let r = chordal::random_chordal_orientation(n, cfg.seed.wrapping_add(i), Some(avoid));
        if r.is_err() {
            generation_failures.store(true, Ordering::Relaxed);
        }
        r.ok()
    };
    let a = sweep.run(samples, |i| {
        let d = gen(&delta, i)?;
        free_counterexample(&d, format!("delta k={k}"), delta_free_failure(&d, k))
    });
    let b = sweep.run(samples, |i| {
        let d = gen(&tt, i)?;
        free_counterexample(&d, format!("tt k={}", k + 1), ttk_free_failure(&d, k + 1))
    });
    let mut notes = Vec::new();
    if generation_failures.load(Ordering::Relaxed) {
        notes.push("some samples could not be generated within the attachment budget".into());
    }
    let universe = format!(
        "{samples} seeded D(1,1,{k})-free and {samples} seeded TT_{}-free random chordal orientations on {n} vertices",
        k + 1
    );
    Ok(finish("free_coloring_bound", universe, cfg, vec![a, b], notes, t0))
}

fn free_coloring_violates(c: &Counterexample) -> bool {
    let Some(d) = load(c) else { return false };
    if !matches!(chordal::is_chordal(&d.underlying()), Chordality::Chordal(_)) {
        return false;
    }
    let parse = |p: &str| c.detail.strip_prefix(p).and_then(|s| s.split(':').next()).and_then(|s| s.parse::<usize>().ok());
    if let Some(k) = parse("delta k=") {
        patterns::contains_induced(&d, &patterns::delta_tt(1, k)).is_none() && delta_free_failure(&d, k).is_some()
    } else if let Some(k) = parse("tt k=") {
        patterns::contains_induced(&d, &patterns::tt(k)).is_none() && ttk_free_failure(&d, k).is_some()
    } else {
        false
    }
}

// unit_interval_bound

fn unit_interval_failure(d: &Digraph, rep: &UnitIntervalRepresentation) -> Option<(String, Option<Dicoloring>)> {
    let config = SolverConfig::default();
    match coloring::color_unit_interval(d, rep, coloring::exact_colorer(config)) {
        Err(e) => Some((format!("layered coloring failed: {e}"), None)),
        Ok(out) => {
            let distant = out.layers.distant_arcs(d);
            if !distant.is_empty() {
                return Some((format!("arcs between distant layers: {distant:?}"), Some(out.coloring)));
            }
            if out.coloring.colors_used() > 2 * out.layer_colors {
                let msg = format!("used {} > 2C = {}", out.coloring.colors_used(), 2 * out.layer_colors);
                return Some((msg, Some(out.coloring)));
            }
            if coloring::validate_dicoloring(d, &out.coloring).ok() != Some(Validation::Valid) {
                return Some(("coloring invalid".into(), Some(out.coloring)));
            }
            None
        }
    }
}

/// Instance `i` of the unit interval suite: size in `20..=max_n`, about ten
/// intervals per unit of span.
pub fn unit_interval_instance(seed: u64, i: u64, max_n: usize) -> (Digraph, UnitIntervalRepresentation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i << 32) ^ 0x5eed);
    let n = rng.gen_range(20.min(max_n)..=max_n.max(1));
    let span = (n as f64 / 10.0).max(2.0);
    chordal::random_unit_interval_orientation(n, span, rng.gen())
}

fn unit_interval_bound(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let max_n = cfg.n.unwrap_or(200);
    let samples = cfg.samples.unwrap_or(50);
    let out = Sweep::new(cfg).run(samples, |i| {
        let (d, rep) = unit_interval_instance(cfg.seed, i, max_n);
        unit_interval_failure(&d, &rep).map(|(msg, c)| Counterexample {
            graph: io::write_graph(&d),
            coloring: c.as_ref().map(io::write_coloring),
            intervals: Some(io::write_unit_intervals(&rep)),
            detail: msg,
        })
    });
    let universe = format!("{samples} seeded random unit interval orientations on at most {max_n} vertices");
    Ok(finish("unit_interval_bound", universe, cfg, vec![out], Vec::new(), t0))
}

fn unit_interval_violates(c: &Counterexample) -> bool {
    let (Some(d), Some(iv)) = (load(c), c.intervals.as_ref()) else { return false };
    match io::read_unit_intervals(iv, d.n()) {
        Ok(rep) => rep.validate_for(&d).is_ok() && unit_interval_failure(&d, &rep).is_some(),
        Err(_) => false,
    }
}

// reversal_reduction

fn reversal_reduction_failure(d: &Digraph) -> Option<String> {
    let r = reverse(d);
    if let Chordality::Hole(h) = chordal::is_chordal(&r.underlying()) {
        return Some(format!("reverse has hole {h:?}"));
    }
    patterns::find_k1_to_c3(&r).map(|e| format!("reverse contains K1=>C3 at {:?}", e.map))
}

fn reversal_reduction(cfg: &SweepConfig) -> Result<PropertyResult, HarnessError> {
    let t0 = Instant::now();
    let n = cfg.n.unwrap_or(30);
    let samples = cfg.samples.unwrap_or(100);
    let avoid = patterns::c3_to_k1();
    let out = Sweep::new(cfg).run(samples, |i| {
        let d = chordal::random_chordal_orientation(n, cfg.seed.wrapping_add(i), Some(&avoid)).ok()?;
        reversal_reduction_failure(&d).map(|msg| Counterexample::of(&d, msg))
    });
    let universe = format!("{samples} seeded C3=>K1-free random chordal orientations on {n} vertices");
    Ok(finish("reversal_reduction", universe, cfg, vec![out], Vec::new(), t0))
}

fn reversal_reduction_violates(c: &Counterexample) -> bool {
    load(c).is_some_and(|d| {
        matches!(chordal::is_chordal(&d.underlying()), Chordality::Chordal(_))
            && patterns::find_c3_to_k1(&d).is_none()
            && reversal_reduction_failure(&d).is_some()
    })
}
