//! Standalone property suites over the generated families.

mod common;

use common::{
    complex, cycles_bordering_edge, family, remove_trivalent_edge, sigma2_orbit_count,
    RemovalOutcome,
};
use fatghom::perm::Perm;
use fatghom::{
    are_isomorphic, automorphisms, compare_orientations, first_isomorphism, index_and_aut,
    is_orientable, isomorphisms, mgn_trivalent_graphs,
};

const SMALL: &[(usize, usize)] = &[(0, 3), (1, 1), (0, 4), (1, 2)];

#[test]
fn brute_force_equivalence_up_to_four_edges() {
    common::suite_brute_force_equivalence(SMALL, 4);
}

#[test]
fn automorphism_groups_closed() {
    common::suite_automorphism_closure(SMALL, usize::MAX);
}

#[test]
fn contraction_preserves_signature_across_families() {
    common::suite_contraction_preservation(SMALL);
}

#[test]
fn betti_invariant_under_reencoding() {
    common::suite_betti_invariance_under_reencoding();
}

#[test]
fn family_members_satisfy_core_invariants() {
    for &(g, n) in SMALL {
        let fam = family(g, n);
        for (&m, graphs) in &fam.by_edge_count {
            for graph in graphs {
                assert_eq!(graph.num_edges(), m);
                assert_eq!(graph.genus(), g);
                assert_eq!(graph.num_boundary_cycles(), n);
                // Euler relation and the independent sigma2 orbit count.
                assert_eq!(
                    graph.num_vertices() as isize - m as isize + n as isize,
                    2 - 2 * g as isize
                );
                assert_eq!(sigma2_orbit_count(graph), n);
                // Corner partition.
                let corners: usize = graph.boundary_cycles().iter().map(|b| b.len()).sum();
                assert_eq!(corners, 2 * m);
            }
        }
    }
}

#[test]
fn buckets_are_isomorph_free() {
    for &(g, n) in SMALL {
        let fam = family(g, n);
        for graphs in fam.by_edge_count.values() {
            for (i, a) in graphs.iter().enumerate() {
                for b in &graphs[i + 1..] {
                    assert!(isomorphisms(a, b).is_empty());
                }
            }
        }
    }
}

#[test]
fn isomorphism_cardinality_symmetric_within_buckets() {
    let fam = family(0, 4);
    for graphs in fam.by_edge_count.values() {
        for a in graphs {
            for b in graphs {
                assert_eq!(isomorphisms(a, b).len(), isomorphisms(b, a).len());
            }
        }
    }
}

#[test]
fn round_trip_through_combinatorial_form_is_isomorphic() {
    for &(g, n) in SMALL {
        for graph in family(g, n).all_graphs() {
            let back = fatghom::Fatgraph::from_combinatorial(&graph.to_combinatorial()).unwrap();
            assert!(are_isomorphic(graph, &back));
        }
    }
}

#[test]
fn single_cycle_graphs_orientability_matches_marked_orientability() {
    // With one boundary cycle the marking is trivial, so pool orientability
    // must coincide with plain orientability.
    for (g, n) in [(1usize, 1usize), (2, 1)] {
        let fam = family(g, n);
        let cx = complex(g, n);
        for (m, graphs) in &fam.by_edge_count {
            for (i, graph) in graphs.iter().enumerate() {
                let pool = &cx.pools[m][i];
                assert_eq!(pool.orientable, is_orientable(graph));
            }
        }
    }
}

#[test]
fn orientation_comparison_multiplicative_across_family() {
    for graph in family(1, 2).all_graphs() {
        let autos = automorphisms(graph);
        for a in &autos {
            for b in &autos {
                let ab = a.then(b, graph);
                assert_eq!(
                    compare_orientations(&ab, graph, graph),
                    compare_orientations(a, graph, graph) * compare_orientations(b, graph, graph)
                );
            }
        }
    }
}

/// Removing any edge of a trivalent graph lands in the expected family:
/// loops and two-cycle edges drop a boundary cycle, one-cycle edges either
/// raise the genus step down or disconnect.
#[test]
fn edge_removal_trichotomy() {
    for (g, n) in [(0usize, 4usize), (1, 2), (0, 3), (1, 1)] {
        for graph in &mgn_trivalent_graphs(g, n) {
            for x in 0..graph.num_edges() {
                let outcome = remove_trivalent_edge(graph, x);
                if graph.is_loop(x) {
                    assert_eq!(
                        outcome,
                        RemovalOutcome::Connected { g, n: n - 1 },
                        "loop removal from ({g},{n})"
                    );
                    continue;
                }
                match cycles_bordering_edge(graph, x) {
                    2 => assert_eq!(
                        outcome,
                        RemovalOutcome::Connected { g, n: n - 1 },
                        "two-cycle edge removal from ({g},{n})"
                    ),
                    1 => assert!(
                        outcome == RemovalOutcome::Disconnected
                            || outcome == RemovalOutcome::Connected { g: g - 1, n: n + 1 },
                        "one-cycle edge removal from ({g},{n}) gave {outcome:?}"
                    ),
                    k => panic!("edge borders {k} cycles"),
                }
            }
        }
    }
}

#[test]
fn pool_coset_partition_and_index_lookup() {
    for &(g, n) in SMALL {
        let cx = complex(g, n);
        let n_fact: usize = (2..=n).product::<usize>().max(1);
        for pool in cx.pools.values().flatten() {
            assert_eq!(pool.markings.len() * pool.p_group.len(), n_fact);
            let mut hits = vec![0usize; pool.markings.len()];
            for sigma in Perm::all(n) {
                let (k, witness) = index_and_aut(pool, &sigma);
                hits[k] += 1;
                // The witness really identifies the two markings.
                assert!(pool
                    .p_group
                    .iter()
                    .any(|pi| &sigma.compose(pi) == &pool.markings[k]));
                let _ = witness;
            }
            assert!(hits.iter().all(|&h| h == pool.p_group.len()));
        }
    }
}

#[test]
fn boundary_blocks_hit_each_source_marking_once() {
    let cx = complex(1, 2);
    for m in cx.m_min + 1..=cx.m_max {
        let sources = &cx.pools[&m];
        let targets = &cx.pools[&(m - 1)];
        for p1 in sources.iter().filter(|p| p.orientable) {
            for e in 0..p1.graph.num_edges() {
                if p1.graph.is_loop(e) {
                    continue;
                }
                let contracted = p1.graph.contract(e).unwrap();
                for p2 in targets.iter().filter(|p| p.orientable) {
                    let block = fatghom::compute_block(p1, e, p2).unwrap();
                    if first_isomorphism(&contracted, &p2.graph).is_none() {
                        assert!(block.is_empty());
                        continue;
                    }
                    assert_eq!(block.len(), p1.markings.len());
                    let mut seen = vec![false; p1.markings.len()];
                    for (j, k, s) in block {
                        assert!(!seen[j]);
                        seen[j] = true;
                        assert!(k < p2.markings.len());
                        assert!(s == 1 || s == -1);
                    }
                }
            }
        }
    }
}

#[test]
fn column_support_bounded_by_nonloop_edges() {
    let cx = complex(0, 4);
    for (m, matrix) in &cx.matrices {
        let mut per_column: std::collections::HashMap<u32, usize> = Default::default();
        for &(_, c, v) in matrix.entries() {
            *per_column.entry(c).or_default() += 1;
            assert!(v.unsigned_abs() <= 2 * *m as u64, "entry too large");
        }
        // Column offsets per orientable source pool.
        let mut col = 0usize;
        for pool in cx.pools[m].iter().filter(|p| p.orientable) {
            let non_loop = (0..pool.graph.num_edges())
                .filter(|&e| !pool.graph.is_loop(e))
                .count();
            for _ in 0..pool.markings.len() {
                let support = per_column.get(&(col as u32)).copied().unwrap_or(0);
                assert!(
                    support <= non_loop,
                    "column {col} of D^{m} has support {support} > {non_loop}"
                );
                col += 1;
            }
        }
    }
}
