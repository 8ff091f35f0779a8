use dqw_core::arcs::{
    build_arc_space, check_skew_commuting, digraph_intersection_numbers, distance_digraphs_bfs,
    distance_digraphs_formula, ld_distance_formula, line_digraph_distances, verify_incidence_identities,
};
use dqw_core::factor::{factorize, grover_walk};
use dqw_core::graph::{build_family, check_distance_regular, distance_matrices, verify_scheme_product, Family, Graph};
use dqw_core::linalg::IntMatrix;
use proptest::prelude::*;

fn any_family_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        (2i64..8).prop_map(|n| build_family(Family::Complete, &[n]).unwrap()),
        (3i64..10).prop_map(|n| build_family(Family::Cycle, &[n]).unwrap()),
        (1i64..5).prop_map(|d| build_family(Family::Hypercube, &[d]).unwrap()),
        (1i64..5).prop_map(|a| build_family(Family::CompleteBipartite, &[a]).unwrap()),
        (3i64..7).prop_map(|n| build_family(Family::Prism, &[n]).unwrap()),
        Just(build_family(Family::Petersen, &[]).unwrap()),
    ]
}

/// Distance-regular graphs with no zero adjacency eigenvalue.
fn factorizable_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        (3i64..8).prop_map(|n| build_family(Family::Complete, &[n]).unwrap()),
        (3i64..10)
            .prop_filter("C_n is singular for 4 | n", |n| n % 4 != 0)
            .prop_map(|n| build_family(Family::Cycle, &[n]).unwrap()),
        Just(build_family(Family::Hypercube, &[3]).unwrap()),
        Just(build_family(Family::Petersen, &[]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn incidence_identities_hold(g in any_family_graph()) {
        let s = build_arc_space(&g);
        prop_assert!(verify_incidence_identities(&s).all());
        prop_assert_eq!(s.len(), 2 * g.edge_count());
        let r = s.reversal();
        prop_assert_eq!(&(r * r), &IntMatrix::identity(s.len()));
    }

    #[test]
    fn line_digraph_distance_formula_matches_bfs(g in any_family_graph()) {
        let s = build_arc_space(&g);
        let dist = g.distances();
        let bfs = line_digraph_distances(&s).unwrap();
        for (e, &a) in s.arcs().iter().enumerate() {
            for (f, &b) in s.arcs().iter().enumerate() {
                prop_assert_eq!(ld_distance_formula(&s, &dist, a, b).unwrap(), bfs[(e, f)]);
            }
        }
    }

    #[test]
    fn distance_digraphs_partition_all_pairs(g in any_family_graph()) {
        let fam = distance_digraphs_bfs(&build_arc_space(&g)).unwrap();
        prop_assert!(fam.sums_to_all_ones());
        prop_assert!(fam.skews_dependent());
        prop_assert_eq!(fam.graph_diameter(), g.diameter());
    }

    #[test]
    fn intersection_numbers_are_consistent(g in any_family_graph()) {
        let verdict = check_distance_regular(&g);
        let Some(p) = verdict.numbers() else {
            return Ok(());
        };
        let d = p.diameter();
        let dm = distance_matrices(&g);
        prop_assert!(verify_scheme_product(&dm, p));
        for i in 0..=d {
            for j in 0..=d {
                for l in 0..=d {
                    prop_assert_eq!(p.get(i, j, l), p.get(j, i, l));
                }
            }
            // Σ_j p_ij^l = k_i for every l.
            let valency = p.get(i, i, 0);
            for l in 0..=d {
                prop_assert_eq!((0..=d).map(|j| p.get(i, j, l)).sum::<i64>(), valency);
            }
        }
        let s = build_arc_space(&g);
        let bfs = distance_digraphs_bfs(&s).unwrap();
        prop_assert_eq!(&distance_digraphs_formula(&dm, &s, &verdict).unwrap(), &bfs);
        prop_assert!(check_skew_commuting(&bfs));
        prop_assert!(digraph_intersection_numbers(&bfs).unwrap().is_symmetric());
    }

    #[test]
    fn factor_order_does_not_matter(g in factorizable_graph()) {
        let res = factorize(&g).unwrap();
        let forward = res.product();
        let backward = res.factors.iter().rev().skip(1).fold(res.factors.last().unwrap().clone(), |acc, f| &acc * f);
        prop_assert!(forward.distance(&backward) < 1e-10);
        let u2 = grover_walk(&build_arc_space(&g)).unwrap().squared();
        prop_assert!(backward.distance(&u2) < 1e-8);
    }
}

#[test]
fn prism_is_not_distance_regular_but_passes_structural_checks() {
    let g = build_family(Family::Prism, &[]).unwrap();
    assert!(!check_distance_regular(&g).is_drg());
    let s = build_arc_space(&g);
    assert!(verify_incidence_identities(&s).all());
    assert!(distance_digraphs_bfs(&s).unwrap().sums_to_all_ones());
}
