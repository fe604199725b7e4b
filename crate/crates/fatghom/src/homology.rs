//! The chain complex of orientable marked fatgraphs: inequivalent markings
//! as cosets of the boundary-permutation group, boundary-operator blocks
//! from edge contractions, Betti numbers, and Euler characteristics.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::counting::factorial;
use crate::fatgraph::{EdgeLabel, Fatgraph, TopologicalSignature};
use crate::generation::{max_edges, mgn_graphs, min_edges, GraphFamily};
use crate::iso::{
    automorphisms, compare_orientations, first_isomorphism, is_orientation_reversing,
    transform_boundary_cycle, Isomorphism,
};
use crate::matrix::{
    product_is_zero, rank_with_config, MatrixBuilder, RankConfig, SparseIntMatrix,
};
use crate::perm::Perm;
use crate::{Error, Result};

/// The permutation a graph automorphism induces on the boundary cycles, in
/// the graph's canonical cycle numbering.
pub fn phi(a: &Isomorphism, g: &Fatgraph) -> Result<Perm> {
    let n = g.num_boundary_cycles();
    let mut images = Vec::with_capacity(n);
    for b in g.boundary_cycles() {
        let image = transform_boundary_cycle(a, b, g, g);
        match g.boundary_cycle_index(&image) {
            Some(idx) => images.push(idx),
            None => return Err(Error::CycleNotFound),
        }
    }
    Perm::from_images(images)
}

/// The isomorphism classes of markings over one topological fatgraph.
///
/// `p_group` is the image of the automorphism group on boundary-cycle
/// indices; `witnesses[i]` is an automorphism inducing `p_group[i]`.  The
/// `markings` list holds one representative permutation per left coset of
/// `p_group`, in lexicographic first-seen order, so
/// `markings.len() * p_group.len() == n!`.
#[derive(Clone, Debug)]
pub struct MarkedFatgraphPool {
    pub graph: Fatgraph,
    pub p_group: Vec<Perm>,
    pub witnesses: Vec<Isomorphism>,
    pub markings: Vec<Perm>,
    pub orientable: bool,
    marking_index: HashMap<Perm, usize>,
}

impl MarkedFatgraphPool {
    /// Dimension this pool contributes to the chain space: the number of
    /// inequivalent markings when orientable, zero otherwise.
    pub fn dimension(&self) -> usize {
        if self.orientable {
            self.markings.len()
        } else {
            0
        }
    }

    pub fn marking_position(&self, sigma: &Perm) -> Option<usize> {
        self.marking_index.get(sigma).copied()
    }
}

/// Compute the distinct markings of `g`.
///
/// Step one collects the boundary permutations of all automorphisms,
/// flagging the pool non-orientable when an automorphism that fixes every
/// boundary cycle reverses orientation.  Step two enumerates the symmetric
/// group in lexicographic order, keeping each permutation whose coset has no
/// representative yet.
pub fn marked_fatgraph_pool(g: &Fatgraph) -> MarkedFatgraphPool {
    let n = g.num_boundary_cycles();
    let mut p_group = vec![Perm::identity(n)];
    let mut witnesses = vec![Isomorphism::identity(g)];
    let mut orientable = true;
    for a in automorphisms(g) {
        let pi = match phi(&a, g) {
            Ok(pi) => pi,
            // Rejected as a marked automorphism.
            Err(_) => continue,
        };
        if pi.is_identity() && is_orientation_reversing(g, &a) {
            orientable = false;
        }
        if !p_group.contains(&pi) {
            p_group.push(pi);
            witnesses.push(a);
        }
    }
    let mut markings = Vec::new();
    let mut marking_index: HashMap<Perm, usize> = HashMap::new();
    for sigma in Perm::all(n) {
        let seen = p_group
            .iter()
            .any(|pi| marking_index.contains_key(&sigma.compose(pi)));
        if !seen {
            marking_index.insert(sigma.clone(), markings.len());
            markings.push(sigma);
        }
    }
    debug_assert_eq!(
        markings.len() * p_group.len(),
        factorial_usize(n),
        "cosets partition the symmetric group"
    );
    MarkedFatgraphPool {
        graph: g.clone(),
        p_group,
        witnesses,
        markings,
        orientable,
        marking_index,
    }
}

fn factorial_usize(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

/// Locate the marking class of `sigma`: the index `j` with
/// `sigma ∘ p_group[i] == markings[j]` for some `i`, together with the
/// witness automorphism realizing the identification.
pub fn index_and_aut<'p>(pool: &'p MarkedFatgraphPool, sigma: &Perm) -> (usize, &'p Isomorphism) {
    for (i, pi) in pool.p_group.iter().enumerate() {
        if let Some(j) = pool.marking_position(&sigma.compose(pi)) {
            return (j, &pool.witnesses[i]);
        }
    }
    unreachable!("cosets of p_group partition the symmetric group");
}

/// The `(source marking, target marking, sign)` triples of the boundary
/// block sending `p1`'s marked graphs through contraction of `e` onto
/// `p2`'s marked graphs.  Empty when the contraction is not isomorphic to
/// `p2`'s graph.
pub fn compute_block(
    p1: &MarkedFatgraphPool,
    e: EdgeLabel,
    p2: &MarkedFatgraphPool,
) -> Result<Vec<(usize, usize, i8)>> {
    let contracted = p1.graph.contract(e)?;
    match first_isomorphism(&contracted, &p2.graph) {
        None => Ok(Vec::new()),
        Some(f2) => block_with_iso(p1, e, &contracted, &f2, p2),
    }
}

fn block_with_iso(
    p1: &MarkedFatgraphPool,
    e: EdgeLabel,
    contracted: &Fatgraph,
    f2: &Isomorphism,
    p2: &MarkedFatgraphPool,
) -> Result<Vec<(usize, usize, i8)>> {
    let n = p1.graph.num_boundary_cycles();
    // phi1: cycle index of the source graph -> cycle index of the
    // contraction, through the contraction map itself.
    let mut phi1 = Vec::with_capacity(n);
    for b in p1.graph.boundary_cycles() {
        let image = p1.graph.contract_boundary_cycle(b, e)?;
        phi1.push(
            contracted
                .boundary_cycle_index(&image)
                .ok_or(Error::CycleNotFound)?,
        );
    }
    let phi1_inv = Perm::from_images(phi1)?.inverse();
    // phi2: cycle index of the contraction -> cycle index of the target,
    // through the chosen isomorphism.
    let mut phi2 = Vec::with_capacity(n);
    for b in contracted.boundary_cycles() {
        let image = transform_boundary_cycle(f2, b, contracted, &p2.graph);
        phi2.push(
            p2.graph
                .boundary_cycle_index(&image)
                .ok_or(Error::CycleNotFound)?,
        );
    }
    let phi2_inv = Perm::from_images(phi2)?.inverse();

    let p = p1.graph.orientation().position(e);
    let base_sign =
        if p % 2 == 0 { 1i8 } else { -1 } * compare_orientations(f2, contracted, &p2.graph);
    let mut out = Vec::with_capacity(p1.markings.len());
    for (j, sigma) in p1.markings.iter().enumerate() {
        let pushed = sigma.compose(&phi1_inv).compose(&phi2_inv);
        let (k, witness) = index_and_aut(p2, &pushed);
        let s = base_sign * compare_orientations(witness, &p2.graph, &p2.graph);
        out.push((j, k, s));
    }
    Ok(out)
}

/// Assemble the boundary operator from the `m`-edge chain space to the
/// `(m-1)`-edge chain space, block by block.  `sources` and `targets` are
/// the orientable pools at the respective edge counts, in family order;
/// coordinates are assigned contiguously in that order.
pub fn compute_boundary_operator(
    sources: &[&MarkedFatgraphPool],
    targets: &[&MarkedFatgraphPool],
) -> SparseIntMatrix {
    let col_offsets: Vec<usize> = sources
        .iter()
        .scan(0usize, |acc, p| {
            let here = *acc;
            *acc += p.dimension();
            Some(here)
        })
        .collect();
    let row_offsets: Vec<usize> = targets
        .iter()
        .scan(0usize, |acc, p| {
            let here = *acc;
            *acc += p.dimension();
            Some(here)
        })
        .collect();
    let num_rows: usize = targets.iter().map(|p| p.dimension()).sum();
    let num_cols: usize = sources.iter().map(|p| p.dimension()).sum();

    let mut targets_by_sig: HashMap<TopologicalSignature, Vec<usize>> = HashMap::new();
    for (t, pool) in targets.iter().enumerate() {
        targets_by_sig
            .entry(pool.graph.signature())
            .or_default()
            .push(t);
    }

    let triples: Vec<(usize, usize, i8)> = sources
        .par_iter()
        .enumerate()
        .flat_map_iter(|(s, p1)| {
            let mut local = Vec::new();
            for e in 0..p1.graph.num_edges() {
                if p1.graph.is_loop(e) {
                    continue;
                }
                let contracted = p1.graph.contract(e).expect("non-loop edge");
                let Some(candidates) = targets_by_sig.get(&contracted.signature()) else {
                    continue;
                };
                for &t in candidates {
                    let p2 = targets[t];
                    let Some(f2) = first_isomorphism(&contracted, &p2.graph) else {
                        continue;
                    };
                    let block = block_with_iso(p1, e, &contracted, &f2, p2)
                        .expect("cycle transport within a built family");
                    for (j, k, sign) in block {
                        local.push((row_offsets[t] + k, col_offsets[s] + j, sign));
                    }
                    // Families are isomorph-free: only one target matches.
                    break;
                }
            }
            local
        })
        .collect();

    let mut builder = MatrixBuilder::new(num_rows, num_cols);
    for (r, c, s) in triples {
        builder.add(r, c, s as i64);
    }
    builder.finish()
}

/// The chain complex of a `(g, n)` family: per-edge-count dimensions,
/// boundary matrices, and the pools backing them.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub g: usize,
    pub n: usize,
    pub m_min: usize,
    pub m_max: usize,
    /// Orientable marked dimension per edge count, for every edge count in
    /// `[m_min, m_max]` (zero entries included).
    pub dims: BTreeMap<usize, usize>,
    /// `matrices[m]` maps the `m`-edge space into the `(m-1)`-edge space.
    pub matrices: BTreeMap<usize, SparseIntMatrix>,
    /// Every pool (orientable or not), bucketed by edge count in family
    /// order.
    pub pools: BTreeMap<usize, Vec<MarkedFatgraphPool>>,
}

impl ChainComplex {
    pub fn dim(&self, m: usize) -> usize {
        self.dims.get(&m).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Build the chain complex for `(g, n)` from scratch.
pub fn build_chain_complex(g: usize, n: usize) -> Result<ChainComplex> {
    let family = mgn_graphs(g, n)?;
    Ok(build_chain_complex_from_family(&family))
}

/// Build the chain complex over an already-generated family.
pub fn build_chain_complex_from_family(family: &GraphFamily) -> ChainComplex {
    let g = family.g;
    let n = family.n;
    let m_min = min_edges(g, n);
    let m_max = max_edges(g, n);

    let pools: BTreeMap<usize, Vec<MarkedFatgraphPool>> = family
        .by_edge_count
        .iter()
        .map(|(&m, graphs)| {
            let pools: Vec<MarkedFatgraphPool> =
                graphs.par_iter().map(marked_fatgraph_pool).collect();
            (m, pools)
        })
        .collect();

    let mut dims = BTreeMap::new();
    for m in m_min..=m_max {
        let dim = pools
            .get(&m)
            .map(|ps| ps.iter().map(MarkedFatgraphPool::dimension).sum())
            .unwrap_or(0);
        dims.insert(m, dim);
    }

    let mut matrices = BTreeMap::new();
    for m in m_min + 1..=m_max {
        let sources: Vec<&MarkedFatgraphPool> = pools
            .get(&m)
            .map(|ps| ps.iter().filter(|p| p.orientable).collect())
            .unwrap_or_default();
        let targets: Vec<&MarkedFatgraphPool> = pools
            .get(&(m - 1))
            .map(|ps| ps.iter().filter(|p| p.orientable).collect())
            .unwrap_or_default();
        matrices.insert(m, compute_boundary_operator(&sources, &targets));
    }

    ChainComplex {
        g,
        n,
        m_min,
        m_max,
        dims,
        matrices,
        pools,
    }
}

/// Betti numbers by homological degree `k`, which sits at edge count
/// `m_max - k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub b: Vec<u64>,
}

impl BettiTable {
    /// The table with trailing zeros removed (at least one entry kept).
    pub fn trimmed(&self) -> Vec<u64> {
        let mut out = self.b.clone();
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn alternating_sum(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Ranks of all boundary matrices, keyed by source edge count.
pub fn compute_ranks(complex: &ChainComplex, cfg: &RankConfig) -> BTreeMap<usize, usize> {
    complex
        .matrices
        .par_iter()
        .map(|(&m, mat)| (m, rank_with_config(mat, cfg)))
        .collect()
}

pub fn betti_numbers(complex: &ChainComplex) -> BettiTable {
    betti_numbers_with(complex, &RankConfig::default()).0
}

/// Betti numbers via rank-nullity: degree `k` lives at edge count
/// `m = m_max - k` and `b_k = dim(m) - rank D^(m) - rank D^(m+1)`.
pub fn betti_numbers_with(
    complex: &ChainComplex,
    cfg: &RankConfig,
) -> (BettiTable, BTreeMap<usize, usize>) {
    let ranks = compute_ranks(complex, cfg);
    let rank_at = |m: usize| ranks.get(&m).copied().unwrap_or(0);
    let mut b = Vec::with_capacity(complex.m_max - complex.m_min + 1);
    for k in 0..=(complex.m_max - complex.m_min) {
        let m = complex.m_max - k;
        let dim = complex.dim(m) as i64;
        let value = dim - rank_at(m) as i64 - rank_at(m + 1) as i64;
        assert!(
            value >= 0,
            "negative Betti number at degree {k}: dim {dim}, ranks {} {}",
            rank_at(m),
            rank_at(m + 1)
        );
        b.push(value as u64);
    }
    (BettiTable { b }, ranks)
}

/// Exact-integer check that consecutive boundary operators compose to zero.
pub fn verify_chain_property(complex: &ChainComplex) -> bool {
    for m in complex.m_min + 1..complex.m_max {
        let lower = &complex.matrices[&m];
        let upper = &complex.matrices[&(m + 1)];
        if !product_is_zero(lower, upper) {
            return false;
        }
    }
    true
}

/// Classical and virtual Euler characteristics of a `(g, n)` family.
#[derive(Clone, Debug)]
pub struct EulerCharacteristics {
    /// Alternating sum of Betti numbers; always equals the alternating sum
    /// of chain-space dimensions.
    pub classical: i64,
    /// `sum over all abstract fatgraphs of (-1)^m n! / |Aut G|`, exact.
    pub virtual_signed: BigRational,
    pub virtual_magnitude: BigRational,
}

pub fn euler_characteristics(
    complex: &ChainComplex,
    family: &GraphFamily,
    betti: &BettiTable,
) -> EulerCharacteristics {
    let classical = betti.alternating_sum();
    let dim_sum: i64 = complex
        .dims
        .iter()
        .map(|(&m, &d)| {
            let sign = if (complex.m_max - m) % 2 == 0 { 1 } else { -1 };
            sign * d as i64
        })
        .sum();
    debug_assert_eq!(classical, dim_sum);

    let n_fact = BigInt::from(factorial(family.n));
    let mut virtual_signed = BigRational::zero();
    for (&m, graphs) in &family.by_edge_count {
        let aut_sizes: Vec<usize> = graphs.par_iter().map(|g| automorphisms(g).len()).collect();
        for aut in aut_sizes {
            let term = BigRational::new(n_fact.clone(), BigInt::from(aut));
            if m % 2 == 0 {
                virtual_signed += term;
            } else {
                virtual_signed -= term;
            }
        }
    }
    EulerCharacteristics {
        classical,
        virtual_magnitude: virtual_signed.abs(),
        virtual_signed,
    }
}
