//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line.  Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use std::collections::BTreeMap;

use common::{betti_and_ranks, complex, criterion_line, family};
use fatghom::counting::{binary_tree_count, count_disjoint_cycle_products, double_factorial};
use fatghom::perm::Perm;
use fatghom::{
    are_isomorphic, counting_report, euler_characteristics, mgn_trivalent_graphs,
    oracle_generate_from_permutations, verify_chain_property,
};
use num_bigint::BigUint;
use num_rational::BigRational;

/// Criterion 1: abstract fatgraph counts per edge count and in total.
///
/// The reference totals are (0,3)=3, (1,1)=2, (0,4)=25, (1,2)=26, (0,5)=313,
/// (2,1)=165, (1,3)=780 with the per-edge-count rows of the source table.
/// The generated families reproduce (0,3) and (1,1) exactly but disagree
/// with the other five rows, and the disagreement is provably on the
/// reference side: see `reference_counts_defect_pattern` below, which pins
/// the exact corruption shape of those rows.  This test states the criterion
/// faithfully and is expected to fail on the five defective rows.
#[test]
fn criterion_1_abstract_fatgraph_counts() {
    // (edge count, count) rows exactly as printed in the reference table,
    // largest edge count first.
    let reference: &[((usize, usize), &[(usize, usize)], usize)] = &[
        ((0, 3), &[(3, 2), (2, 1)], 3),
        ((1, 1), &[(3, 1), (2, 1)], 2),
        ((0, 4), &[(6, 6), (5, 6), (4, 7), (3, 6)], 25),
        ((1, 2), &[(6, 5), (5, 5), (4, 8), (3, 8)], 26),
        (
            (0, 5),
            &[(9, 26), (8, 26), (7, 72), (6, 103), (5, 65), (4, 21)],
            313,
        ),
        (
            (2, 1),
            &[(9, 9), (8, 9), (7, 29), (6, 52), (5, 45), (4, 21)],
            165,
        ),
        (
            (1, 3),
            &[(9, 46), (8, 46), (7, 162), (6, 256), (5, 198), (4, 72)],
            780,
        ),
    ];
    let mut failures = Vec::new();
    for ((g, n), rows, total) in reference {
        let fam = family(*g, *n);
        let got = fam.counts();
        if got != *rows || fam.total() != *total {
            failures.push(format!(
                "({g},{n}): computed per-m {got:?} total {}, reference per-m {rows:?} total {total}",
                fam.total()
            ));
        }
    }
    if failures.is_empty() {
        criterion_line(1, "abstract fatgraph counts");
    } else {
        println!("criterion 1 (abstract fatgraph counts): FAIL");
        for f in &failures {
            println!("  {f}");
        }
        println!(
            "  the computed families are validated independently by the defect-pattern check,\n  \
             by brute-force enumeration from permutation pairs (criterion 5 and the properties\n  \
             suite), by the marked counts of criterion 2, and by the exact orbifold Euler\n  \
             characteristics of criterion 6"
        );
        panic!(
            "reference per-edge-count rows are internally corrupted for {} of 7 signatures; \
             see test output and the defect-pattern check",
            failures.len()
        );
    }
}

/// The five defective reference rows all follow one corruption pattern: the
/// trivalent count is printed twice, every later entry is shifted one
/// column, the bottom (minimal edge count) entry is dropped, and the printed
/// total equals computed_total + trivalent_count - bottom_count.
#[test]
fn reference_counts_defect_pattern() {
    let reference_totals: &[((usize, usize), usize)] = &[
        ((0, 4), 25),
        ((1, 2), 26),
        ((0, 5), 313),
        ((2, 1), 165),
        ((1, 3), 780),
    ];
    for &((g, n), printed_total) in reference_totals {
        let fam = family(g, n);
        let counts = fam.counts();
        let top = counts.first().unwrap().1;
        let bottom = counts.last().unwrap().1;
        assert_eq!(
            printed_total,
            fam.total() + top - bottom,
            "({g},{n}): printed total should equal computed {} + top {top} - bottom {bottom}",
            fam.total()
        );
    }
    criterion_line(1, "reference-count defect pattern pinned");
}

/// The trivalent (maximal edge count) entries of the reference table are
/// not touched by the corruption and must match exactly.
#[test]
fn trivalent_counts_match_reference() {
    for (g, n, count) in [
        (0, 3, 2),
        (1, 1, 1),
        (0, 4, 6),
        (1, 2, 5),
        (2, 1, 9),
        (0, 5, 26),
        (1, 3, 46),
    ] {
        assert_eq!(
            mgn_trivalent_graphs(g, n).len(),
            count,
            "trivalent count for ({g},{n})"
        );
    }
    criterion_line(1, "trivalent counts at maximal edge count");
}

/// Boundary operator shapes and ranks for (0,4) and (0,3), pinned by
/// rank-nullity against the Betti and dimension tables.
#[test]
fn boundary_operator_shapes_and_ranks() {
    let cx = complex(0, 4);
    let shape = |m: usize| {
        let d = &cx.matrices[&m];
        (d.rows(), d.cols())
    };
    assert_eq!(shape(4), (20, 99));
    assert_eq!(shape(5), (99, 144));
    assert_eq!(shape(6), (144, 64));
    let ranks = &betti_and_ranks(0, 4).1;
    assert_eq!(ranks[&4], 20);
    assert_eq!(ranks[&5], 79);
    assert_eq!(ranks[&6], 63);

    let cx03 = complex(0, 3);
    let d3 = &cx03.matrices[&3];
    assert_eq!((d3.rows(), d3.cols()), (3, 4));
    assert_eq!(betti_and_ranks(0, 3).1[&3], 3);
}

/// Criterion 2: orientable marked fatgraph counts per edge count, with the
/// (1,1) two-edge discrepancy confined to that single entry.
#[test]
fn criterion_2_orientable_marked_counts() {
    let expected: &[((usize, usize), &[(usize, usize)], usize)] = &[
        ((0, 3), &[(3, 4), (2, 3)], 7),
        ((0, 4), &[(6, 64), (5, 144), (4, 99), (3, 20)], 327),
        ((1, 2), &[(6, 9), (5, 15), (4, 10), (3, 3)], 37),
        (
            (2, 1),
            &[(9, 9), (8, 28), (7, 43), (6, 39), (5, 20), (4, 3)],
            142,
        ),
        (
            (0, 5),
            &[
                (9, 2240),
                (8, 8160),
                (7, 11280),
                (6, 7260),
                (5, 2112),
                (4, 210),
            ],
            31262,
        ),
    ];
    for ((g, n), rows, total) in expected {
        let cx = complex(*g, *n);
        let got: Vec<(usize, usize)> = cx.dims.iter().rev().map(|(&m, &d)| (m, d)).collect();
        assert_eq!(&got, rows, "marked dims for ({g},{n})");
        assert_eq!(cx.total_dim(), *total, "marked total for ({g},{n})");
    }

    // The (1,1) column: the reference prints {3: 1, 2: 1}; the two-edge
    // graph has an orientation-reversing automorphism fixing its single
    // boundary cycle, so the computation must report {3: 1, 2: 0} and the
    // discrepancy must be confined to the two-edge entry.
    let cx = complex(1, 1);
    let computed = cx.dims.clone();
    assert_eq!(computed, BTreeMap::from([(3, 1), (2, 0)]));
    let reference = BTreeMap::from([(3usize, 1usize), (2, 1)]);
    let differing: Vec<usize> = reference
        .iter()
        .filter(|(m, v)| computed.get(m) != Some(v))
        .map(|(&m, _)| m)
        .collect();
    assert_eq!(
        differing,
        vec![2],
        "discrepancy confined to the 2-edge entry"
    );

    criterion_line(2, "orientable marked fatgraph counts");
}

/// Criterion 3: Betti numbers, exact, zero tolerance.
#[test]
fn criterion_3_betti_numbers() {
    let expected: &[((usize, usize), &[u64])] = &[
        ((0, 3), &[1]),
        ((1, 1), &[1]),
        ((0, 4), &[1, 2]),
        ((1, 2), &[1]),
        ((2, 1), &[1, 0, 1]),
        ((0, 5), &[1, 5, 6]),
        // Stretch target.
        ((1, 3), &[1, 0, 0, 1]),
    ];
    for ((g, n), betti) in expected {
        let got = betti_and_ranks(*g, *n);
        assert_eq!(
            got.0.trimmed(),
            betti.to_vec(),
            "Betti numbers of M_{{{g},{n}}}"
        );
    }
    criterion_line(3, "Betti numbers of M_g,n");
}

/// Criterion 4: the chain property holds for every complex of criterion 3.
#[test]
fn criterion_4_chain_property() {
    for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1), (0, 5), (1, 3)] {
        assert!(
            verify_chain_property(&complex(g, n)),
            "D.D != 0 for ({g},{n})"
        );
    }
    criterion_line(4, "chain property D.D = 0");
}

/// Criterion 5: brute-force generation from permutation pairs matches the
/// recursive generator up to isomorphism.
#[test]
fn criterion_5_oracle_equivalence() {
    for (g, n, m) in [(0, 3, 3), (1, 1, 3), (0, 4, 6), (1, 2, 6)] {
        let reference = oracle_generate_from_permutations(g, n, m, 12).unwrap();
        let recursive = mgn_trivalent_graphs(g, n);
        assert_eq!(
            reference.len(),
            recursive.len(),
            "class counts for ({g},{n})"
        );
        for a in &reference {
            assert!(
                recursive.iter().any(|b| are_isomorphic(a, b)),
                "oracle class missing from recursive output for ({g},{n})"
            );
        }
        for b in &recursive {
            assert!(
                reference.iter().any(|a| are_isomorphic(a, b)),
                "recursive class missing from oracle output for ({g},{n})"
            );
        }
    }
    criterion_line(5, "permutation-pair oracle equivalence");
}

/// Criterion 6: Euler characteristics.
#[test]
fn criterion_6_euler_characteristics() {
    let e04 = euler_characteristics(&complex(0, 4), &family(0, 4), &betti_and_ranks(0, 4).0);
    assert_eq!(e04.classical, -1);
    let e05 = euler_characteristics(&complex(0, 5), &family(0, 5), &betti_and_ranks(0, 5).0);
    assert_eq!(e05.classical, 2);
    let e11 = euler_characteristics(&complex(1, 1), &family(1, 1), &betti_and_ranks(1, 1).0);
    assert_eq!(
        e11.virtual_magnitude,
        BigRational::new(1.into(), 12.into()),
        "virtual Euler characteristic magnitude of (1,1)"
    );
    criterion_line(6, "Euler characteristics");
}

/// Criterion 7: counting formulas against brute force and reference values.
#[test]
fn criterion_7_counting_formulas() {
    // Permutations of six points that are two disjoint 3-cycles, by formula
    // and by scanning all 720 permutations.
    assert_eq!(count_disjoint_cycle_products(3, 2), BigUint::from(40u32));
    let mut scanned = 0usize;
    for p in Perm::all(6) {
        let mut seen = [false; 6];
        let mut all_three = true;
        for s in 0..6 {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p.apply(x);
                len += 1;
            }
            all_three &= len == 3;
        }
        if all_three {
            scanned += 1;
        }
    }
    assert_eq!(scanned, 40);

    assert_eq!(counting_report(0, 3).unwrap().n2_plus, BigUint::from(15u32));
    assert_eq!(
        counting_report(0, 4).unwrap().n2_plus,
        BigUint::from(630u32)
    );
    assert_eq!(binary_tree_count(4), BigUint::from(5u32));
    assert_eq!(double_factorial(5), BigUint::from(15u32));
    criterion_line(7, "counting formulas");
}

/// Criterion 8: the property suites (also runnable standalone through the
/// `properties` test target) all pass.
#[test]
fn criterion_8_property_suites() {
    common::suite_brute_force_equivalence(&[(0, 3), (1, 1), (0, 4), (1, 2)], 4);
    common::suite_automorphism_closure(&[(0, 3), (1, 1), (0, 4), (1, 2)], usize::MAX);
    common::suite_contraction_preservation(&[(0, 3), (1, 1), (0, 4), (1, 2)]);
    common::suite_betti_invariance_under_reencoding();
    criterion_line(8, "property suites");
}
