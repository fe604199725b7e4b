//! Exact counting formulas for fatgraph generation: edge-count bounds,
//! cycle-type counts, and upper/lower bounds on the candidate sets produced
//! by the different generation strategies.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::generation::{max_edges, min_edges};
use crate::{Error, Result};

/// Counting data for the `(g, n)` family.
#[derive(Clone, Debug)]
pub struct CountingReport {
    pub g: usize,
    pub n: usize,
    /// `2g + n`.
    pub xi: usize,
    pub m_max: usize,
    pub m_min: usize,
    /// Permutations of `2 * m_max` points that are products of disjoint
    /// 3-cycles: the rotation-system count for trivalent graphs.
    pub trivalent_rotations: BigUint,
    /// Fixed-point free involutions on `2 * m_min` points: `(2m-1)!!`,
    /// bounding the number of distinct one-vertex graphs.
    pub clover_pairings: BigUint,
    /// Full binary trees on `2 * m_min` leaves (a Catalan number).
    pub binary_trees: BigUint,
    /// Bounds on the candidate count for the tree-insertion strategy.
    pub n2_minus: BigRational,
    pub n2_plus: BigUint,
    /// Candidate count for naive generation from permutation pairs.
    pub n3: BigUint,
}

/// Number of permutations of `p * q` points that are products of `q`
/// disjoint `p`-cycles.
pub fn count_disjoint_cycle_products(p: usize, q: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 1..=q {
        for j in 1..p {
            out *= BigUint::from(p * i - j);
        }
    }
    out
}

/// `k!! = k (k-2) (k-4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(k: usize) -> BigUint {
    let mut out = BigUint::one();
    let mut x = k;
    while x > 1 {
        out *= BigUint::from(x);
        x -= 2;
    }
    out
}

pub fn factorial(k: usize) -> BigUint {
    let mut out = BigUint::one();
    for x in 2..=k {
        out *= BigUint::from(x);
    }
    out
}

/// Number of full binary trees with `l` leaves: the `(l-1)`-th Catalan
/// number `(2l-2)! / ((l-1)! l!)`.
pub fn binary_tree_count(l: usize) -> BigUint {
    if l < 2 {
        return BigUint::one();
    }
    factorial(2 * l - 2) / (factorial(l - 1) * factorial(l))
}

pub fn counting_report(g: usize, n: usize) -> Result<CountingReport> {
    if n == 0 || (2isize - 2 * g as isize - n as isize) >= 0 {
        return Err(Error::InvalidSignature { g, n });
    }
    let m_max = max_edges(g, n);
    let m_min = min_edges(g, n);
    let xi = 2 * g + n;

    let trivalent_rotations = count_disjoint_cycle_products(3, 2 * m_max / 3);
    let clover_pairings = double_factorial(2 * m_min - 1);
    let binary_trees = binary_tree_count(2 * m_min);

    // N2 bounds: (4m-2)! / ((2m-2)!! (2m)!) at m = m_min, divided by 2m for
    // the lower bound.
    let n2_plus =
        factorial(4 * m_min - 2) / (double_factorial(2 * m_min - 2) * factorial(2 * m_min));
    let n2_minus = BigRational::new(n2_plus.clone().into(), BigUint::from(2 * m_min).into());

    let n3 = double_factorial(2 * m_max - 1) * &trivalent_rotations;

    Ok(CountingReport {
        g,
        n,
        xi,
        m_max,
        m_min,
        trivalent_rotations,
        clover_pairings,
        binary_trees,
        n2_minus,
        n2_plus,
        n3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn disjoint_cycle_count_matches_brute_force_scan() {
        // Count the permutations of six points that are two disjoint
        // 3-cycles by scanning all 720.
        let mut count = 0usize;
        for p in Perm::all(6) {
            let mut seen = [false; 6];
            let mut ok = true;
            for start in 0..6 {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = p.apply(x);
                    len += 1;
                }
                if len != 3 {
                    ok = false;
                    break;
                }
            }
            if ok {
                count += 1;
            }
        }
        assert_eq!(count, 40);
        assert_eq!(count_disjoint_cycle_products(3, 2), BigUint::from(40u32));
    }

    #[test]
    fn small_formula_values() {
        assert_eq!(double_factorial(5), BigUint::from(15u32));
        assert_eq!(binary_tree_count(4), BigUint::from(5u32));
        assert_eq!(double_factorial(0), BigUint::one());
    }

    #[test]
    fn n2_plus_reference_values() {
        // m_min(0,3) = 2: 6!/(2!! 4!) = 15; m_min(0,4) = 3: 10!/(4!! 6!) = 630.
        let r = counting_report(0, 3).unwrap();
        assert_eq!(r.n2_plus, BigUint::from(15u32));
        let r = counting_report(0, 4).unwrap();
        assert_eq!(r.n2_plus, BigUint::from(630u32));
    }

    #[test]
    fn report_bounds_and_ranges() {
        let r = counting_report(0, 3).unwrap();
        assert_eq!((r.xi, r.m_max, r.m_min), (3, 3, 2));
        // Product formula at the top edge count: 15 * 40.
        assert_eq!(r.n3, BigUint::from(600u32));
        assert_eq!(r.clover_pairings, BigUint::from(3u32));
        // Same ranges for (1,1).
        let r11 = counting_report(1, 1).unwrap();
        assert_eq!((r11.xi, r11.m_max, r11.m_min), (3, 3, 2));
        assert_eq!(r11.n3, r.n3);
        assert!(counting_report(0, 2).is_err());
    }

    #[test]
    fn clover_count_within_bounds() {
        // The two-edge one-vertex graphs are exactly [0,1,0,1] and
        // [0,0,1,1]: two clovers, inside the bounds [3/4, 3] at m = 2.
        let r = counting_report(0, 3).unwrap();
        let clovers = BigRational::new(2.into(), 1.into());
        let lower = BigRational::new(
            r.clover_pairings.clone().into(),
            BigUint::from(2 * r.m_min).into(),
        );
        let upper = BigRational::new(r.clover_pairings.clone().into(), 1.into());
        assert_eq!(lower, BigRational::new(3.into(), 4.into()));
        assert!(lower <= clovers && clovers <= upper);
    }
}
