//! Brute-force oracles checked against the fast implementations.

use chordal_heroes::chordal::{self, find_induced_p4, is_chordal, Chordality};
use chordal_heroes::coloring::{self, validate_dicoloring, Dicoloring, SolverConfig, Validation};
use chordal_heroes::constructions::enumerate_transitive_sets;
use chordal_heroes::digraph::{is_acyclic, is_transitive_tournament, Digraph, UndirectedGraph};
use chordal_heroes::harness::{canonical_form, tournament_from_mask};
use chordal_heroes::patterns;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::new(n, &arcs).unwrap()
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    UndirectedGraph::new(n, &edges).unwrap()
}

/// Smallest `k` such that some map to `k` colors has acyclic classes.
fn brute_dichromatic(d: &Digraph) -> usize {
    let n = d.n();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let total = k.pow(n as u32);
        for mut idx in 0..total {
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let c = idx % k;
                    idx /= k;
                    c
                })
                .collect();
            let ok = (0..k).all(|c| {
                let class: Vec<usize> = (0..n).filter(|&v| colors[v] == c).collect();
                is_acyclic(&d.induced_by(&class).unwrap())
            });
            if ok {
                return k;
            }
        }
    }
    unreachable!("n colors always suffice")
}

#[test]
fn dichromatic_number_matches_brute_force_on_tournaments() {
    let cfg = SolverConfig::default();
    for n in 0..=5usize {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let t = tournament_from_mask(n, mask);
            let (k, c) = coloring::dichromatic_number(&t, &cfg).unwrap();
            assert_eq!(k, brute_dichromatic(&t), "n={n} mask={mask}");
            assert_eq!(validate_dicoloring(&t, &c).unwrap(), Validation::Valid);
        }
    }
}

#[test]
fn dichromatic_number_matches_brute_force_on_sampled_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = SolverConfig::default();
    for _ in 0..400 {
        let n = rng.gen_range(1..=6);
        let d = random_digraph(n, rng.gen_range(0.3..1.0), &mut rng);
        assert_eq!(coloring::dichromatic_number(&d, &cfg).unwrap().0, brute_dichromatic(&d), "{}", d.to_text());
    }
}

#[test]
fn parallel_solver_agrees_with_sequential() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let seq = SolverConfig::default();
    let par = SolverConfig { parallel: true, ..seq };
    for _ in 0..40 {
        let d = random_digraph(12, 0.8, &mut rng);
        let (a, _) = coloring::dichromatic_number(&d, &seq).unwrap();
        let (b, c) = coloring::dichromatic_number(&d, &par).unwrap();
        assert_eq!(a, b);
        assert_eq!(validate_dicoloring(&d, &c).unwrap(), Validation::Valid);
    }
}

/// Largest set of directed triangles through `x` that are disjoint apart from `x`.
fn brute_triangle_degree(t: &Digraph, x: usize) -> usize {
    let tri: Vec<(usize, usize)> = t
        .out_neighbors(x)
        .iter()
        .flat_map(|&a| t.out_neighbors(a).iter().filter(|&&b| t.has_arc(b, x)).map(move |&b| (a, b)))
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << tri.len() {
        let mut used = 0u64;
        let mut ok = true;
        for (i, &(a, b)) in tri.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used >> a & 1 == 1 || used >> b & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << a | 1 << b;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

#[test]
fn triangle_degree_matches_packing_brute_force() {
    for mask in 0..1u64 << 15 {
        let t = tournament_from_mask(6, mask);
        for x in 0..6 {
            assert_eq!(coloring::triangle_degree(&t, x), brute_triangle_degree(&t, x), "mask={mask} x={x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let t = tournament_from_mask(7, rng.gen_range(0..1 << 21));
        let x = rng.gen_range(0..7);
        assert_eq!(coloring::triangle_degree(&t, x), brute_triangle_degree(&t, x));
    }
}

/// Some vertex subset of size >= 4 inducing a cycle, checked via degrees and connectivity.
fn brute_has_hole(g: &UndirectedGraph) -> bool {
    let n = g.n();
    (0u32..1 << n).filter(|m| m.count_ones() >= 4).any(|m| {
        let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        let deg2 = vs.iter().all(|&v| vs.iter().filter(|&&w| g.has_edge(v, w)).count() == 2);
        if !deg2 {
            return false;
        }
        let mut seen = vec![vs[0]];
        let mut stack = vec![vs[0]];
        while let Some(v) = stack.pop() {
            for &w in &vs {
                if g.has_edge(v, w) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == vs.len()
    })
}

#[test]
fn chordality_matches_hole_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..3000 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, rng.gen_range(0.2..0.9), &mut rng);
        match is_chordal(&g) {
            Chordality::Chordal(peo) => {
                assert!(!brute_has_hole(&g));
                assert!(peo.is_perfect(&g));
            }
            Chordality::Hole(h) => {
                assert!(brute_has_hole(&g));
                assert!(chordal::is_induced_cycle(&g, &h), "{h:?}");
            }
        }
    }
}

#[test]
fn p4_detection_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, rng.gen_range(0.2..0.9), &mut rng);
        let mut brute = false;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let distinct = [a, b, c, d].iter().collect::<std::collections::HashSet<_>>().len() == 4;
                        if distinct
                            && g.has_edge(a, b)
                            && g.has_edge(b, c)
                            && g.has_edge(c, d)
                            && !g.has_edge(a, c)
                            && !g.has_edge(b, d)
                            && !g.has_edge(a, d)
                        {
                            brute = true;
                        }
                    }
                }
            }
        }
        let found = find_induced_p4(&g);
        assert_eq!(found.is_some(), brute);
        if let Some([a, b, c, d]) = found {
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
            assert!(!g.has_edge(a, c) && !g.has_edge(b, d) && !g.has_edge(a, d));
        }
    }
}

/// Induced copy by trying every injective map.
fn brute_contains(host: &Digraph, pattern: &Digraph) -> bool {
    fn extend(host: &Digraph, pattern: &Digraph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == pattern.n() {
            return true;
        }
        for v in 0..host.n() {
            if map.contains(&v) {
                continue;
            }
            let ok = (0..i).all(|j| {
                host.has_arc(map[j], v) == pattern.has_arc(j, i) && host.has_arc(v, map[j]) == pattern.has_arc(i, j)
            });
            if ok {
                map.push(v);
                if extend(host, pattern, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    extend(host, pattern, &mut Vec::new())
}

#[test]
fn induced_search_matches_brute_force() {
    let pats = [patterns::c3(), patterns::tt(3), patterns::delta_tt(1, 2), patterns::c3_to_k1(), patterns::k1_to_c3()];
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..600 {
        let n = rng.gen_range(3..=7);
        let d = random_digraph(n, rng.gen_range(0.5..1.0), &mut rng);
        for p in &pats {
            let fast = patterns::contains_induced(&d, p);
            assert_eq!(fast.is_some(), brute_contains(&d, p));
            if let Some(e) = fast {
                assert!(e.is_induced_copy(&d, p));
            }
        }
        assert_eq!(patterns::find_c3_to_k1(&d).is_some(), brute_contains(&d, &patterns::c3_to_k1()));
        assert_eq!(patterns::find_k1_to_c3(&d).is_some(), brute_contains(&d, &patterns::k1_to_c3()));
    }
}

#[test]
fn transitive_sets_match_subset_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let d = random_digraph(n, rng.gen_range(0.4..1.0), &mut rng);
        let brute: usize = (1u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                is_transitive_tournament(&d.induced_by(&vs).unwrap()).is_some()
            })
            .count();
        let idx = enumerate_transitive_sets(&d, None, usize::MAX).unwrap();
        assert_eq!(idx.len(), brute);
        for s in &idx.sets {
            let order = is_transitive_tournament(&d.induced_by(s).unwrap()).unwrap();
            assert!(order.iter().enumerate().all(|(i, &v)| i == v), "listed in topological order");
        }
    }
}

#[test]
fn canonical_form_matches_isomorphism_brute_force() {
    fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            perms(n - 1)
                .into_iter()
                .flat_map(|p| (0..n).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    q
                }))
                .collect()
        }
        a.n() == b.n() && perms(a.n()).into_iter().any(|p| &a.permute(&p) == b)
    }
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..300 {
        let n = rng.gen_range(1..=5);
        let a = random_digraph(n, 0.7, &mut rng);
        let b = random_digraph(n, 0.7, &mut rng);
        let same = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        assert_eq!(same, isomorphic(&a, &b));
    }
}

#[test]
fn stearns_extraction_on_all_small_tournaments() {
    for n in 1..=6 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let t = tournament_from_mask(n, mask);
            let s = coloring::stearns_transitive(&t).unwrap();
            assert!(s.len() >= coloring::stearns_bound(n));
            assert!(is_transitive_tournament(&t.induced_by(&s).unwrap()).is_some());
        }
    }
}

#[test]
fn exact_coloring_of_classic_examples() {
    let cfg = SolverConfig::default();
    assert_eq!(coloring::dichromatic_number(&patterns::c3(), &cfg).unwrap().0, 2);
    assert_eq!(coloring::dichromatic_number(&patterns::tt(6), &cfg).unwrap().0, 1);
    let mono = Dicoloring::new(vec![0, 0, 0], 1).unwrap();
    assert!(matches!(
        validate_dicoloring(&patterns::c3(), &mono).unwrap(),
        Validation::MonochromaticCycle { color: 0, .. }
    ));
}
