use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chordal_heroes::chordal::{self, find_induced_p4, is_chordal, Chordality};
use chordal_heroes::coloring::{self, ColoringError, Dicoloring, SolverConfig, Validation};
use chordal_heroes::constructions::{self, ConstructionError, Family};
use chordal_heroes::digraph::Digraph;
use chordal_heroes::harness::{self, HarnessError, Status, SweepConfig};
use chordal_heroes::io::{self, IoError};
use chordal_heroes::patterns::{self, HeroClass, PatternError};
use serde_json::{json, Value};

use crate::config::{Format, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Holds = 0,
    Refuted = 1,
    Usage = 2,
    Budget = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub code: Code,
    pub msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: Code::Usage, msg: msg.into() }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        let code = match e {
            ColoringError::BudgetExceeded { .. } => Code::Budget,
            _ => Code::Usage,
        };
        CliError { code, msg: e.to_string() }
    }
}

/// What a command prints: text lines or one JSON document, plus its exit code.
pub struct Report {
    pub code: Code,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn print(&self, format: Format) {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("json serializes")),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Digraph, CliError> {
    io::read_graph(&read_text(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// A pattern spec, or failing that a graph file.
fn pattern_or_file(spec: &str) -> Result<Digraph, CliError> {
    match patterns::parse_pattern(spec) {
        Ok(d) => Ok(d),
        Err(_) if Path::new(spec).is_file() => read_graph(Path::new(spec)),
        Err(e) => Err(e.into()),
    }
}

pub fn generate(
    s: &Settings,
    family: &str,
    k: usize,
    out: Option<PathBuf>,
    avoid: Option<&str>,
) -> Result<Report, CliError> {
    let family: Family = family.parse()?;
    let t0 = Instant::now();
    let witness = match (family, avoid) {
        (Family::RandomChordal, Some(p)) => {
            let pat = pattern_or_file(p)?;
            let d = chordal::random_chordal_orientation(k, s.seed, Some(&pat))
                .map_err(|e| CliError::usage(e.to_string()))?;
            let c = coloring::clique_coloring(&d)?;
            constructions::Witness { family, k, digraph: d, coloring: c }
        }
        (_, Some(_)) => return Err(CliError::usage("--avoid applies to random-chordal only")),
        _ => constructions::build_family(family, k, s.seed, &s.limits())?,
    };
    let out = out.unwrap_or_else(|| PathBuf::from(format!("{}-{k}.graph", family.name())));
    let report = constructions::verify_witness(
        &witness.digraph,
        family,
        k,
        Some(&witness.coloring),
        &s.verify_budget(),
    );
    write_text(&out, &io::write_graph(&witness.digraph))?;
    let col_path = out.with_extension("col");
    write_text(&col_path, &io::write_coloring(&witness.coloring))?;
    let report_path = out.with_extension("report.json");
    write_text(&report_path, &report.to_json())?;
    if s.verbose > 0 {
        eprintln!("generated and verified in {:.3?}", t0.elapsed());
    }
    let mut text = format!("{report}\n");
    writeln!(text, "wrote {}, {}, {}", out.display(), col_path.display(), report_path.display()).unwrap();
    let code = if report.all_checks_hold() { Code::Holds } else { Code::Refuted };
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Report { code, text, json })
}

pub fn check(s: &Settings, input: &Path, what: &str) -> Result<Report, CliError> {
    let d = read_graph(input)?;
    let (kind, arg) = match what.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (what, None),
    };
    let (holds, detail, json): (bool, String, Value) = match (kind, arg) {
        ("chordal", None) => match is_chordal(&d.underlying()) {
            Chordality::Chordal(peo) => {
                (true, format!("elimination ordering {:?}", peo.order), json!({ "elimination_ordering": peo.order }))
            }
            Chordality::Hole(h) => (false, format!("hole {h:?}"), json!({ "hole": h })),
        },
        ("p4-free", None) => match find_induced_p4(&d.underlying()) {
            None => (true, "no induced P4".into(), json!({})),
            Some(p) => (false, format!("induced path {p:?}"), json!({ "path": p })),
        },
        ("free", Some(p)) => {
            let pat = pattern_or_file(p)?;
            match patterns::contains_induced(&d, &pat) {
                None => (true, format!("no induced {p}"), json!({})),
                Some(e) => (false, format!("induced {p} at {:?}", e.map), json!({ "embedding": e.map })),
            }
        }
        ("dicoloring", Some(p)) => {
            let c = io::read_coloring(&read_text(Path::new(p))?, d.n())?;
            match coloring::validate_dicoloring(&d, &c)? {
                Validation::Valid => (
                    true,
                    format!("valid dicoloring with {} colors", c.colors_used()),
                    json!({ "colors": c.colors_used() }),
                ),
                Validation::MonochromaticCycle { color, cycle } => (
                    false,
                    format!("color {color} contains the directed cycle {cycle:?}"),
                    json!({ "color": color, "cycle": cycle }),
                ),
            }
        }
        ("unit-interval", Some(p)) => {
            let rep = io::read_unit_intervals(&read_text(Path::new(p))?, d.n())?;
            match chordal::layers_from_unit_intervals(&d, &rep) {
                Ok(layers) => {
                    let sizes: Vec<usize> = layers.layers.iter().map(|l| l.len()).collect();
                    let distant = layers.distant_arcs(&d);
                    (
                        distant.is_empty(),
                        format!("representation matches; layer sizes {sizes:?}; distant arcs {distant:?}"),
                        json!({ "first_layer": layers.first, "layer_sizes": sizes, "distant_arcs": distant }),
                    )
                }
                Err(e) => (false, e.to_string(), json!({ "mismatch": e.to_string() })),
            }
        }
        _ => {
            return Err(CliError::usage(format!(
                "unknown check {what:?}; expected chordal, p4-free, free:<pattern>, dicoloring:<path> or unit-interval:<path>"
            )))
        }
    };
    if s.verbose > 0 {
        eprintln!("{}: {} vertices, {} arcs", input.display(), d.n(), d.arc_count());
    }
    let verdict = if holds { "holds" } else { "FAILS" };
    Ok(Report {
        code: if holds { Code::Holds } else { Code::Refuted },
        text: format!("{what}: {verdict}\n{detail}\n"),
        json: json!({ "check": what, "holds": holds, "certificate": json }),
    })
}

/// Maps a failed precondition to a refutation that carries its certificate.
fn precondition(d: &Digraph, pattern: &Digraph, name: &str) -> Result<Option<Report>, CliError> {
    if let Chordality::Hole(h) = is_chordal(&d.underlying()) {
        return Ok(Some(Report {
            code: Code::Refuted,
            text: format!("precondition fails: underlying graph is not chordal, hole {h:?}\n"),
            json: json!({ "precondition": "chordal", "hole": h }),
        }));
    }
    Ok(patterns::contains_induced(d, pattern).map(|e| Report {
        code: Code::Refuted,
        text: format!("precondition fails: induced {name} at {:?}\n", e.map),
        json: json!({ "precondition": format!("{name}-free"), "embedding": e.map }),
    }))
}

pub fn color(
    s: &Settings,
    input: &Path,
    method: &str,
    k: Option<usize>,
    rep: Option<&Path>,
    out: Option<PathBuf>,
    parallel: bool,
) -> Result<Report, CliError> {
    let d = read_graph(input)?;
    let solver = SolverConfig { node_budget: Some(s.node_cap), parallel };
    let mut extra = String::new();
    let mut extra_json = json!({});
    let c: Dicoloring = match method {
        "exact" => coloring::dichromatic_number(&d, &solver)?.1,
        "delta-free" => {
            let k = k.unwrap_or(2);
            if k == 0 {
                return Err(CliError::usage("k must be positive"));
            }
            let name = format!("D(1,1,{k})");
            if let Some(r) = precondition(&d, &patterns::delta_tt(1, k), &name)? {
                return Ok(r);
            }
            writeln!(extra, "bound: {} colors", 1usize << (2 * k - 2)).unwrap();
            coloring::color_delta11k_free_chordal(&d, k, false)?
        }
        "ttk-free" => {
            let k = k.unwrap_or(3);
            if k < 2 {
                return Err(CliError::usage("ttk-free needs k >= 2"));
            }
            if let Some(r) = precondition(&d, &patterns::tt(k), &format!("TT_{k}"))? {
                return Ok(r);
            }
            writeln!(extra, "bound: {} colors", coloring::ttk_clique_bound(k)).unwrap();
            coloring::color_ttk_free_chordal(&d, k, false)?
        }
        "unit-interval" => {
            let path = rep.ok_or_else(|| CliError::usage("unit-interval needs --rep <intervals file>"))?;
            let rep = io::read_unit_intervals(&read_text(path)?, d.n())?;
            if let Err(e) = rep.validate_for(&d) {
                return Ok(Report {
                    code: Code::Refuted,
                    text: format!("precondition fails: {e}\n"),
                    json: json!({ "precondition": "unit-interval", "mismatch": e.to_string() }),
                });
            }
            let out = coloring::color_unit_interval(&d, &rep, coloring::exact_colorer(solver))?;
            writeln!(extra, "layers: {}, C = {}, bound 2C = {}", out.layers.layers.len(), out.layer_colors, 2 * out.layer_colors)
                .unwrap();
            extra_json = json!({ "layers": out.layers.layers.len(), "layer_colors": out.layer_colors });
            out.coloring
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown method {other:?}; expected exact, delta-free, ttk-free or unit-interval"
            )))
        }
    };
    // Never report a coloring that has not just been validated.
    if let Validation::MonochromaticCycle { color, cycle } = coloring::validate_dicoloring(&d, &c)? {
        return Err(CliError::usage(format!("internal error: color {color} has cycle {cycle:?}")));
    }
    let out = out.unwrap_or_else(|| input.with_extension("col"));
    write_text(&out, &io::write_coloring(&c))?;
    Ok(Report {
        code: Code::Holds,
        text: format!("method: {method}\ncolors: {}\n{extra}wrote {}\n", c.colors_used(), out.display()),
        json: json!({ "method": method, "colors": c.colors_used(), "output": out, "details": extra_json }),
    })
}

pub fn classify(_s: &Settings, spec: &str) -> Result<Report, CliError> {
    let h = pattern_or_file(spec)?;
    let tour = patterns::is_hero_in_tournaments(&h)?;
    let chord = patterns::is_hero_in_chordal(&h)?;
    let mut text = String::new();
    writeln!(text, "input: {} vertices", h.n()).unwrap();
    match &tour {
        Some(e) => writeln!(text, "hero in tournaments: yes, derivation {e}").unwrap(),
        None => writeln!(text, "hero in tournaments: no").unwrap(),
    }
    writeln!(text, "hero in chordal orientations: {}, {chord}", if chord.is_hero { "yes" } else { "no" }).unwrap();
    let class = match &tour {
        None => json!("not a hero in tournaments"),
        Some(_) => match patterns::minimal_obstruction_check(&h)? {
            HeroClass::Transitive => json!("transitive"),
            HeroClass::Delta11k(k) => json!(format!("D(1,1,{k})")),
            HeroClass::Contains(list) => json!(list
                .iter()
                .map(|(o, e)| json!({ "obstruction": o.name(), "embedding": e.map }))
                .collect::<Vec<_>>()),
        },
    };
    match &class {
        Value::String(s) => writeln!(text, "classification: {s}").unwrap(),
        Value::Array(list) => {
            for item in list {
                writeln!(text, "contains {} at {}", item["obstruction"].as_str().unwrap(), item["embedding"]).unwrap();
            }
        }
        _ => {}
    }
    let json = json!({
        "vertices": h.n(),
        "hero_in_tournaments": tour.is_some(),
        "derivation": tour.as_ref().map(|e| e.to_string()),
        "hero_in_chordal": chord.is_hero,
        "chordal_reason": chord.to_string(),
        "classification": class,
    });
    Ok(Report { code: Code::Holds, text, json })
}

/// Exact name, `-` for `_`, or a unique prefix.
fn resolve_property(name: &str) -> Result<&'static harness::Property, CliError> {
    let norm = name.replace('-', "_");
    let reg = harness::registry();
    if let Some(p) = reg.iter().find(|p| p.name == norm) {
        return Ok(p);
    }
    let matches: Vec<_> = reg.iter().filter(|p| p.name.starts_with(&norm)).collect();
    match matches.as_slice() {
        [p] => Ok(p),
        [] => Err(CliError::usage(format!("unknown property {name:?}; run `verify list`"))),
        _ => Err(CliError::usage(format!("ambiguous property {name:?}"))),
    }
}

pub fn verify(
    s: &Settings,
    property: &str,
    n: Option<usize>,
    k: Option<usize>,
    samples: Option<u64>,
    instance_cap: Option<u64>,
) -> Result<Report, CliError> {
    if property == "list" {
        let mut text = String::new();
        for p in harness::registry() {
            writeln!(text, "{}: {}", p.name, p.description).unwrap();
        }
        let json = json!(harness::registry()
            .iter()
            .map(|p| json!({ "name": p.name, "description": p.description }))
            .collect::<Vec<_>>());
        return Ok(Report { code: Code::Holds, text, json });
    }
    let p = resolve_property(property)?;
    let cfg = SweepConfig { n, k, samples, seed: s.seed, time_cap: s.time_cap(), instance_cap };
    let result = (p.run)(&cfg)?;
    let dir = s.results_dir.join(p.name);
    let files = result.save(&dir)?;
    if s.verbose > 0 {
        eprintln!("{} finished in {:.3?}", p.name, result.elapsed);
    }
    let code = match result.status {
        Status::Holds => Code::Holds,
        Status::Refuted => Code::Refuted,
        Status::Truncated => Code::Budget,
    };
    let mut text = String::new();
    writeln!(text, "property: {}", result.property).unwrap();
    writeln!(text, "universe: {}", result.universe).unwrap();
    writeln!(text, "instances: {}", result.instances).unwrap();
    writeln!(text, "status: {:?}", result.status).unwrap();
    for note in &result.notes {
        writeln!(text, "note: {note}").unwrap();
    }
    for c in &result.counterexamples {
        writeln!(text, "counterexample: {}", c.detail).unwrap();
    }
    writeln!(text, "results: {} ({} files)", dir.display(), files.len()).unwrap();
    let json = serde_json::to_value(&result).expect("result serializes");
    Ok(Report { code, text, json })
}

pub fn export_dot(
    input: &Path,
    coloring: Option<&Path>,
    parts: Option<&Path>,
    out: Option<PathBuf>,
) -> Result<Report, CliError> {
    let d = read_graph(input)?;
    let c = coloring.map(|p| Ok::<_, CliError>(io::read_coloring(&read_text(p)?, d.n())?)).transpose()?;
    let parts = parts.map(|p| Ok::<_, CliError>(io::read_coloring(&read_text(p)?, d.n())?)).transpose()?;
    let dot = io::to_dot(&d, c.as_ref(), parts.as_ref().map(|p| p.colors()));
    let text = match &out {
        Some(path) => {
            write_text(path, &dot)?;
            format!("wrote {}\n", path.display())
        }
        None => dot.clone(),
    };
    Ok(Report { code: Code::Holds, text, json: json!({ "dot": dot }) })
}
