use chordal_heroes::chordal::{self, clique_glue, is_chordal, Chordality};
use chordal_heroes::coloring::{self, validate_dicoloring, SolverConfig, Validation};
use chordal_heroes::digraph::{is_acyclic, reverse, strong_components, Digraph};
use chordal_heroes::harness::{canonical_form, tournament_from_mask};
use chordal_heroes::{io, patterns};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn digraph_from_seed(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.2..1.0);
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

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_format_roundtrips(n in 0usize..30, seed in any::<u64>()) {
        let d = digraph_from_seed(n, seed);
        prop_assert_eq!(io::read_graph(&io::write_graph(&d)).unwrap(), d);
    }

    #[test]
    fn reverse_is_an_involution(n in 0usize..30, seed in any::<u64>()) {
        let d = digraph_from_seed(n, seed);
        prop_assert_eq!(reverse(&reverse(&d)), d.clone());
        prop_assert_eq!(is_acyclic(&reverse(&d)), is_acyclic(&d));
    }

    #[test]
    fn canonical_form_is_permutation_invariant(n in 0usize..=8, seed in any::<u64>(), pseed in any::<u64>()) {
        let d = digraph_from_seed(n, seed);
        let p = permutation(n, pseed);
        prop_assert_eq!(canonical_form(&d).unwrap(), canonical_form(&d.permute(&p)).unwrap());
        let cf = canonical_form(&d).unwrap();
        prop_assert_eq!(canonical_form(&cf.to_digraph()).unwrap(), cf);
    }

    #[test]
    fn strong_components_partition_and_condense_acyclically(n in 1usize..25, seed in any::<u64>()) {
        let d = digraph_from_seed(n, seed);
        let comps = strong_components(&d);
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                prop_assert_eq!(comp_of[v], usize::MAX);
                comp_of[v] = i;
            }
        }
        // Components come in topological order of the condensation.
        for (u, v) in d.arcs() {
            prop_assert!(comp_of[u] <= comp_of[v]);
        }
    }

    #[test]
    fn dichromatic_number_is_invariant(n in 1usize..=7, seed in any::<u64>(), pseed in any::<u64>()) {
        let cfg = SolverConfig::default();
        let d = digraph_from_seed(n, seed);
        let (k, c) = coloring::dichromatic_number(&d, &cfg).unwrap();
        prop_assert_eq!(validate_dicoloring(&d, &c).unwrap(), Validation::Valid);
        prop_assert_eq!(coloring::dichromatic_number(&reverse(&d), &cfg).unwrap().0, k);
        prop_assert_eq!(coloring::dichromatic_number(&d.permute(&permutation(n, pseed)), &cfg).unwrap().0, k);
        if k > 1 {
            prop_assert!(coloring::is_k_dicolorable(&d, k - 1, &cfg).unwrap().is_none());
        }
    }

    #[test]
    fn random_chordal_orientations_have_perfect_orderings(n in 1usize..60, seed in any::<u64>()) {
        let d = chordal::random_chordal_orientation(n, seed, None).unwrap();
        let g = d.underlying();
        match is_chordal(&g) {
            Chordality::Chordal(peo) => prop_assert!(peo.is_perfect(&g)),
            Chordality::Hole(h) => prop_assert!(false, "hole {:?}", h),
        }
    }

    #[test]
    fn generators_honor_avoidance(n in 1usize..40, seed in any::<u64>()) {
        for p in [patterns::delta_tt(1, 2), patterns::c3_to_k1(), patterns::tt(3)] {
            let d = chordal::random_chordal_orientation(n, seed, Some(&p)).unwrap();
            prop_assert!(patterns::contains_induced(&d, &p).is_none());
        }
    }

    #[test]
    fn constructive_colorings_validate(n in 1usize..50, seed in any::<u64>(), k in 1usize..=3) {
        let d = chordal::random_chordal_orientation(n, seed, Some(&patterns::delta_tt(1, k))).unwrap();
        let c = coloring::color_delta11k_free_chordal(&d, k, true).unwrap();
        prop_assert!(c.colors_used() <= 1 << (2 * k - 2));
        prop_assert_eq!(validate_dicoloring(&d, &c).unwrap(), Validation::Valid);
        let t = chordal::random_chordal_orientation(n, seed, Some(&patterns::tt(k + 1))).unwrap();
        let c = coloring::color_ttk_free_chordal(&t, k + 1, true).unwrap();
        prop_assert!(c.colors_used() <= coloring::ttk_clique_bound(k + 1));
        prop_assert_eq!(validate_dicoloring(&t, &c).unwrap(), Validation::Valid);
    }

    #[test]
    fn clique_glue_stays_chordal(n1 in 1usize..20, n2 in 1usize..20, seed in any::<u64>()) {
        let d1 = chordal::random_chordal_orientation(n1, seed, None).unwrap();
        let d2 = chordal::random_chordal_orientation(n2, seed ^ 1, None).unwrap();
        let glued = clique_glue(&d1, &d2, &[(0, 0)]).unwrap();
        prop_assert_eq!(glued.n(), n1 + n2 - 1);
        prop_assert!(is_chordal(&glued.underlying()).is_chordal());
    }

    #[test]
    fn unit_interval_arcs_stay_local(n in 1usize..150, seed in any::<u64>()) {
        let (d, rep) = chordal::random_unit_interval_orientation(n, (n as f64 / 8.0).max(2.0), seed);
        let layers = chordal::layers_from_unit_intervals(&d, &rep).unwrap();
        prop_assert!(layers.distant_arcs(&d).is_empty());
        let total: usize = layers.layers.iter().map(|l| l.len()).sum();
        prop_assert_eq!(total, n);
        for l in &layers.layers {
            prop_assert!(d.underlying().is_clique(&l.to_vec()));
        }
    }

    #[test]
    fn recognizer_derivations_rebuild_the_input(n in 1usize..=7, mask in any::<u64>()) {
        let t = tournament_from_mask(n, mask & ((1 << (n * (n - 1) / 2)) - 1));
        if let Some(e) = patterns::is_hero_in_tournaments(&t).unwrap() {
            prop_assert_eq!(canonical_form(&e.eval()).unwrap(), canonical_form(&t).unwrap());
        }
    }

    #[test]
    fn c3_to_k1_detector_matches_generic_search(n in 1usize..12, seed in any::<u64>()) {
        let d = digraph_from_seed(n, seed);
        prop_assert_eq!(
            patterns::find_c3_to_k1(&d).is_some(),
            patterns::contains_induced(&d, &patterns::c3_to_k1()).is_some()
        );
        prop_assert_eq!(
            patterns::find_k1_to_c3(&d).is_some(),
            patterns::contains_induced(&d, &patterns::k1_to_c3()).is_some()
        );
    }
}
