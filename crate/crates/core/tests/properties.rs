use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use marketnet_core::{
    arcsine_map, degree_distribution, fixtures, market_graph, max_clique, max_independent_set, maximum_spanning_tree,
    pearson_sample, pearson_true, sign_sample, sign_true, tree_topology, DependenceMatrix, MarketGraph, MeasureKind,
    MixtureModel, SampleMatrix, SetKind, SquareMatrix, VertexSet,
};

fn weights_from(n: usize, upper: &[f64]) -> DependenceMatrix {
    let mut m = SquareMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            m.set(i, j, upper[k]);
            m.set(j, i, upper[k]);
            k += 1;
        }
    }
    DependenceMatrix::new(MeasureKind::Pearson, m, None).unwrap()
}

fn arb_weights() -> impl Strategy<Value = DependenceMatrix> {
    (2usize..9)
        .prop_flat_map(|n| prop::collection::vec(-1.0f64..=1.0, n * (n - 1) / 2).prop_map(move |u| weights_from(n, &u)))
}

fn arb_graph() -> impl Strategy<Value = MarketGraph> {
    (1usize..14).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            MarketGraph::from_edges(n, 0.0, &pairs)
        })
    })
}

fn arb_sample() -> impl Strategy<Value = SampleMatrix> {
    (2usize..5, 3usize..30).prop_flat_map(|(vars, n)| {
        prop::collection::vec(prop::collection::vec(-5.0f64..5.0, n), vars)
            .prop_map(|rows| SampleMatrix::from_rows(&rows).unwrap())
    })
}

proptest! {
    #[test]
    fn arcsine_is_monotone_and_odd(a in -1.0f64..=1.0, b in -1.0f64..=1.0) {
        if a < b {
            prop_assert!(arcsine_map(a) < arcsine_map(b));
        }
        prop_assert!((arcsine_map(-a) - (1.0 - arcsine_map(a))).abs() < 1e-15);
    }

    #[test]
    fn sign_true_stays_in_unit_interval(w in arb_weights()) {
        let p = sign_true(&w).unwrap();
        prop_assert_eq!(p.kind(), MeasureKind::SignProbability);
        for (_, _, v) in p.values().upper_triangle() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn pearson_sample_affine_invariant(
        s in arb_sample(),
        scale in prop::collection::vec(0.1f64..10.0, 4),
        shift in prop::collection::vec(-100.0f64..100.0, 4),
    ) {
        if let Ok(base) = pearson_sample(&s) {
            let moved = s.map(|i, v| scale[i] * v + shift[i]).unwrap();
            let after = pearson_sample(&moved).unwrap();
            prop_assert!(base.values().max_abs_diff(after.values()) < 1e-12);
        }
    }

    #[test]
    fn sign_sample_invariant_under_cubing(s in arb_sample()) {
        let center = vec![0.0; s.vars()];
        let base = sign_sample(&s, &center).unwrap();
        let cubed = sign_sample(&s.map(|_, v| v * v * v).unwrap(), &center).unwrap();
        prop_assert_eq!(base, cubed);
    }

    #[test]
    fn market_graph_threshold_monotone(w in arb_weights(), t in -1.0f64..1.0, dt in 0.0f64..1.0) {
        let lo = market_graph(&w, t);
        let hi = market_graph(&w, t + dt);
        for &(i, j) in hi.edges() {
            prop_assert!(lo.has_edge(i, j));
        }
    }

    #[test]
    fn true_graphs_coincide_under_mapped_thresholds(w in arb_weights(), t in -1.0f64..=1.0) {
        let p = sign_true(&w).unwrap();
        let (gp, gs) = (market_graph(&w, t), market_graph(&p, arcsine_map(t)));
        prop_assert_eq!(gp.edges(), gs.edges());
    }

    #[test]
    fn degree_distribution_invariants(g in arb_graph()) {
        let d = degree_distribution(&g);
        prop_assert_eq!(d.n_vertices(), g.n_vertices());
        prop_assert_eq!(d.degree_sum(), 2 * g.edge_count());
    }

    #[test]
    fn clique_and_independent_set_duality(g in arb_graph()) {
        let s = max_independent_set(&g);
        let c = max_clique(&g.complement());
        prop_assert_eq!(s.members(), c.members());
        prop_assert!(s.is_valid_for(&g));
        prop_assert!(max_clique(&g).is_valid_for(&g));
    }

    #[test]
    fn clique_is_lexicographically_smallest(g in arb_graph()) {
        let n = g.n_vertices();
        prop_assume!(n <= 10);
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..(1 << n) {
            let m: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !VertexSet::new(m.clone(), SetKind::Clique).is_valid_for(&g) {
                continue;
            }
            best = match best {
                Some(b) if b.len() > m.len() || (b.len() == m.len() && b <= m) => Some(b),
                _ => Some(m),
            };
        }
        prop_assert_eq!(max_clique(&g).members().to_vec(), best.unwrap());
    }

    #[test]
    fn mst_shape_and_topology(w in arb_weights()) {
        let t = maximum_spanning_tree(&w);
        let n = w.dim();
        prop_assert_eq!(t.edges().len(), n - 1);
        let topo = tree_topology(&t);
        prop_assert_eq!(topo.degrees().iter().sum::<usize>(), 2 * (n - 1));
        prop_assert!(topo.degrees()[0] >= 1);
        prop_assert!(topo.degrees().windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn mst_invariant_under_increasing_transform(w in arb_weights()) {
        // the arcsine map is strictly increasing on [-1, 1]
        let p = sign_true(&w).unwrap();
        prop_assert_eq!(maximum_spanning_tree(&w).edge_pairs(), maximum_spanning_tree(&p).edge_pairs());
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>(), gamma in 0.0f64..=1.0) {
        let model = MixtureModel::centered(fixtures::uk2010(), 3, gamma).unwrap();
        let a = model.draw_mixture(20, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let b = model.draw_mixture(20, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn correlation_invariant_across_mixture_weights() {
    let lambda = fixtures::uk2010();
    let rho = pearson_true(&lambda).unwrap();
    // Gaussian-dominated weights keep the sample correlation error well bounded
    for (gamma, seed) in [(0.8, 1u64), (0.9, 2), (1.0, 3)] {
        let model = MixtureModel::centered(lambda.clone(), 4, gamma).unwrap();
        let s = model
            .draw_mixture(100_000, &mut ChaCha8Rng::seed_from_u64(seed))
            .unwrap();
        let err = pearson_sample(&s).unwrap().values().max_abs_diff(rho.values());
        assert!(err < 0.03, "gamma {gamma}: {err}");
    }
}

#[test]
fn sample_estimates_near_fixture_entries() {
    let lambda = fixtures::uk2010();
    let model = MixtureModel::centered(lambda, 3, 0.3).unwrap();
    let s = model.draw_mixture(100_000, &mut ChaCha8Rng::seed_from_u64(30)).unwrap();
    let r = pearson_sample(&s).unwrap();
    assert!((r.get(5, 7) - 0.48).abs() < 0.03, "{}", r.get(5, 7));
    let p = sign_sample(&s, model.mu()).unwrap();
    let want = arcsine_map(0.49);
    assert!((want - 0.663).abs() < 1e-3);
    assert!((p.get(4, 5) - want).abs() < 0.01, "{}", p.get(4, 5));
}
