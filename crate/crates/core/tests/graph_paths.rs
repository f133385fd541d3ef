mod common;

use common::*;
use proptest::prelude::*;
use tgraph_core::random::RandomGraphParams;
use tgraph_core::{
    cycles_without_entrances, find_non_returning_path, is_topologically_free, path_space, Correspondence, Graph,
};

#[test]
fn compose_identity_and_associativity() {
    let params = RandomGraphParams {
        max_vertices: 4,
        max_edges: 6,
        max_mult: 3,
        omega_prob: 0.0,
    };
    for seed in 0..40 {
        let g = seeded_graph(seed, &params);
        let c = g.as_correspondence();
        let id = Correspondence::identity(g.vertices().to_vec()).unwrap();
        assert_eq!(shape(&c.compose(&id).unwrap()), shape(c));
        assert_eq!(shape(&id.compose(c).unwrap()), shape(c));
        let left = c.compose(c).unwrap().compose(c).unwrap();
        let right = c.compose(&c.compose(c).unwrap()).unwrap();
        assert_eq!(shape(&left), shape(&right));
    }
}

#[test]
fn composed_path_spaces_count_longer_paths() {
    let params = RandomGraphParams {
        max_vertices: 4,
        max_edges: 7,
        max_mult: 2,
        omega_prob: 0.0,
    };
    for seed in 0..30 {
        let g = seeded_graph(seed, &params);
        for (n, m) in [(1, 1), (1, 2), (2, 1), (0, 2)] {
            let en = tgraph_core::paths::PathSpace::new(&g, n).unwrap();
            let em = tgraph_core::paths::PathSpace::new(&g, m).unwrap();
            let joined = en.as_correspondence().unwrap().compose(&em.as_correspondence().unwrap()).unwrap();
            let count = joined.edge_count().finite().unwrap() as usize;
            assert_eq!(count, path_space(&g, n + m).unwrap().len(), "seed {seed} n {n} m {m}");
        }
    }
}

#[test]
fn path_counts_match_adjacency_powers() {
    let params = RandomGraphParams {
        max_vertices: 5,
        max_edges: 8,
        max_mult: 2,
        omega_prob: 0.0,
    };
    for seed in 0..40 {
        let g = seeded_graph(seed, &params);
        for n in 0..=4 {
            assert_eq!(path_space(&g, n).unwrap().len() as u128, path_count_oracle(&g, n));
        }
    }
}

#[test]
fn condition_l_matches_enumeration() {
    let params = RandomGraphParams {
        max_vertices: 6,
        max_edges: 8,
        max_mult: 2,
        omega_prob: 0.1,
    };
    for seed in 0..300 {
        let g = seeded_graph(seed, &params);
        assert_eq!(
            is_topologically_free(&g),
            !has_loop_without_entrance_oracle(&g),
            "seed {seed}: {g:?}"
        );
    }
}

#[test]
fn loops_without_entrances_are_genuine() {
    let params = RandomGraphParams {
        max_vertices: 6,
        max_edges: 7,
        max_mult: 1,
        omega_prob: 0.0,
    };
    for seed in 0..200 {
        let g = seeded_graph(seed, &params);
        let indeg = g.in_degrees();
        for l in cycles_without_entrances(&g) {
            let p = l.path();
            assert_eq!(p.dom(), p.ran());
            assert_eq!(l.base_point(), p.dom());
            for &e in p.edges() {
                let v = g.edges()[e].ran;
                assert_eq!(indeg[v], tgraph_core::Multiplicity::Finite(1));
            }
        }
    }
}

fn is_non_returning(p: &[usize]) -> bool {
    !p[1..].contains(&p[0])
}

#[test]
fn non_returning_paths_match_brute_force() {
    let params = RandomGraphParams {
        max_vertices: 3,
        max_edges: 4,
        max_mult: 1,
        omega_prob: 0.0,
    };
    let mut found = 0;
    for seed in 0..150 {
        let g = seeded_graph(seed, &params);
        let targets: Vec<usize> = (0..g.vertex_count()).filter(|v| (seed as usize + v) % 2 == 0).collect();
        for n in 1..=2 {
            let bound = n + g.edges().len() + g.vertex_count();
            let shortest = (n..=bound).find(|&m| {
                walks(&g, m)
                    .iter()
                    .any(|w| is_non_returning(w) && targets.contains(&g.edges()[*w.last().unwrap()].ran))
            });
            let got = find_non_returning_path(&g, &targets, n).unwrap();
            match (shortest, got) {
                (None, None) => {}
                (Some(m), Some(p)) => {
                    found += 1;
                    assert_eq!(p.level(), m, "seed {seed}");
                    assert!(!p.is_returning());
                    assert!(targets.contains(&p.ran()));
                }
                (s, p) => panic!("seed {seed} n {n}: oracle {s:?}, search {p:?}"),
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn topologically_free_graphs_have_non_returning_paths_into_cycles() {
    // every vertex of a cycle of a free graph is reached by a non-returning path of each length
    let g = Graph::new(
        ids(&["a", "b"]),
        vec![
            tgraph_core::EdgeSpec::new("e", "a", "b"),
            tgraph_core::EdgeSpec::new("f", "b", "a"),
            tgraph_core::EdgeSpec::new("g", "a", "a"),
        ],
    )
    .unwrap();
    assert!(is_topologically_free(&g));
    for n in 1..6 {
        let p = find_non_returning_path(&g, &[0], n).unwrap().expect("witness");
        assert!(p.level() >= n && !p.is_returning());
    }
    assert!(find_non_returning_path(&cycle(3), &[0], 4).unwrap().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opposite_is_an_involution(g in graph_strategy(5, 8, 3, true)) {
        prop_assert_eq!(g.opposite().opposite(), g.clone());
        let a = g.opposite();
        prop_assert_eq!(a.vertices(), g.vertices());
        prop_assert_eq!(a.in_degrees(), g.out_degrees());
    }

    #[test]
    fn classification_partitions_vertices(g in graph_strategy(6, 10, 3, true)) {
        let c = g.classify_vertices();
        let n = g.vertex_count();
        let mut rg_sg: Vec<usize> = c.rg.iter().chain(&c.sg).copied().collect();
        rg_sg.sort();
        prop_assert_eq!(rg_sg, (0..n).collect::<Vec<_>>());
        let mut fin_inf: Vec<usize> = c.fin.iter().chain(&c.inf).copied().collect();
        fin_inf.sort();
        prop_assert_eq!(fin_inf, (0..n).collect::<Vec<_>>());
        for v in &c.sce {
            prop_assert!(c.fin.contains(v));
        }
        let rg: Vec<usize> = c.fin.iter().filter(|v| !c.sce.contains(v)).copied().collect();
        prop_assert_eq!(&rg, &c.rg);
    }

    #[test]
    fn path_space_levels_compose(g in graph_strategy(4, 6, 2, false), n in 0usize..4) {
        prop_assert_eq!(path_space(&g, n).unwrap().len() as u128, path_count_oracle(&g, n));
        for p in path_space(&g, n + 1).unwrap() {
            prop_assert_eq!(p.level(), n + 1);
        }
    }

    #[test]
    fn condition_l_oracle(g in graph_strategy(5, 7, 2, true)) {
        prop_assert_eq!(is_topologically_free(&g), !has_loop_without_entrance_oracle(&g));
    }
}
