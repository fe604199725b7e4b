//! Brute-force generation of trivalent fatgraphs from permutation pairs,
//! used as an independent cross-check of the recursive generator.
//!
//! A trivalent fatgraph on `2m` half-edges is a pair `(sigma0, sigma1)` with
//! `sigma0` a product of disjoint 3-cycles and `sigma1` a fixed-point free
//! involution.  Conjugating both permutations by the same element does not
//! change the isomorphism class, so `sigma0` can be fixed to the canonical
//! product `(0 1 2)(3 4 5)...` and only `sigma1` enumerated; every class is
//! still reached.  The full product over all `sigma0` choices is enumerated
//! in tests at the smallest size to validate that reduction.
//!
//! Involutions are enumerated in a streaming fashion and duplicates are
//! rejected before insertion, so memory stays proportional to the number of
//! isomorphism classes rather than the `(2m-1)!!` candidate count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::combinatorial::CombinatorialForm;
use crate::fatgraph::{Fatgraph, TopologicalSignature};
use crate::generation::dedup_isomorphs;
use crate::iso::are_isomorphic;
use crate::perm::Perm;
use crate::{Error, Result};

/// The canonical product of disjoint 3-cycles on `0..len`.
pub(crate) fn canonical_three_cycles(len: usize) -> Perm {
    debug_assert_eq!(len % 3, 0);
    let images: Vec<usize> = (0..len)
        .map(|h| if h % 3 == 2 { h - 2 } else { h + 1 })
        .collect();
    Perm::from_images(images).unwrap()
}

/// Complete a partially-filled pairing (slots equal to `usize::MAX` are
/// free), invoking the callback on every completion.
fn for_each_completion(images: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let first = match images.iter().position(|&x| x == usize::MAX) {
        Some(i) => i,
        None => {
            f(images);
            return;
        }
    };
    for partner in first + 1..images.len() {
        if images[partner] == usize::MAX {
            images[first] = partner;
            images[partner] = first;
            for_each_completion(images, f);
            images[first] = usize::MAX;
            images[partner] = usize::MAX;
        }
    }
}

/// All fixed-point free involutions on `0..len`, materialized (small sizes
/// only; the oracle itself streams).
#[cfg(test)]
pub(crate) fn fixed_point_free_involutions(len: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    if len % 2 == 0 {
        let mut images = vec![usize::MAX; len];
        for_each_completion(&mut images, &mut |done| {
            out.push(Perm::from_images(done.to_vec()).unwrap());
        });
    }
    out
}

/// Orbit count of `sigma0^{-1} ∘ sigma1` on raw image arrays.
fn boundary_orbits_raw(sigma0_inv: &[usize], sigma1: &[usize], seen: &mut [bool]) -> usize {
    seen.fill(false);
    let mut orbits = 0;
    for start in 0..sigma1.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = sigma0_inv[sigma1[x]];
        }
    }
    orbits
}

fn connected_raw(sigma0: &[usize], sigma1: &[usize], seen: &mut [bool]) -> bool {
    seen.fill(false);
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(h) = stack.pop() {
        for next in [sigma0[h], sigma1[h]] {
            if !seen[next] {
                seen[next] = true;
                visited += 1;
                stack.push(next);
            }
        }
    }
    visited == sigma1.len()
}

/// Generate all trivalent `(g, n)`-fatgraphs with `m` edges by exhausting
/// involutions against the canonical 3-cycle rotation, keeping connected
/// graphs of the requested signature, one per isomorphism class.
///
/// Refuses to enumerate above `max_half_edges` half-edges (`2m`), since the
/// candidate count grows as `(2m-1)!!`.
pub fn oracle_generate_from_permutations(
    g: usize,
    n: usize,
    m: usize,
    max_half_edges: usize,
) -> Result<Vec<Fatgraph>> {
    let half_edges = 2 * m;
    if half_edges % 3 != 0 {
        return Err(Error::InvalidPermutations(format!(
            "{half_edges} half-edges cannot form a trivalent graph"
        )));
    }
    if half_edges > max_half_edges {
        return Err(Error::InfeasibleSize {
            half_edges,
            max: max_half_edges,
        });
    }
    let sigma0 = canonical_three_cycles(half_edges);
    let sigma0_raw = sigma0.images().to_vec();
    let sigma0_inv = sigma0.inverse().images().to_vec();

    // Parallelize over the partner chosen for half-edge 0; each branch
    // deduplicates incrementally against its own class list.
    let per_branch: Vec<Vec<Fatgraph>> = (1..half_edges)
        .into_par_iter()
        .map(|partner| {
            let mut images = vec![usize::MAX; half_edges];
            images[0] = partner;
            images[partner] = 0;
            let mut kept: Vec<Fatgraph> = Vec::new();
            let mut buckets: HashMap<TopologicalSignature, Vec<usize>> = HashMap::new();
            let mut seen = vec![false; half_edges];
            for_each_completion(&mut images, &mut |sigma1| {
                if boundary_orbits_raw(&sigma0_inv, sigma1, &mut seen) != n
                    || !connected_raw(&sigma0_raw, sigma1, &mut seen)
                {
                    return;
                }
                let Some(graph) = realize(&sigma0, Perm::from_images(sigma1.to_vec()).unwrap(), g, n)
                else {
                    return;
                };
                let bucket = buckets.entry(graph.signature()).or_default();
                if !bucket.iter().any(|&i| are_isomorphic(&kept[i], &graph)) {
                    bucket.push(kept.len());
                    kept.push(graph);
                }
            });
            kept
        })
        .collect();

    Ok(dedup_isomorphs(per_branch.concat()))
}

/// Build the fatgraph of `(sigma0, sigma1)` when it is connected and has the
/// requested signature.
pub(crate) fn realize(sigma0: &Perm, sigma1: Perm, g: usize, n: usize) -> Option<Fatgraph> {
    let form = CombinatorialForm::new(sigma0.clone(), sigma1).ok()?;
    if !form.is_connected() || form.num_boundary_cycles() != n {
        return None;
    }
    let graph = Fatgraph::from_combinatorial(&form).ok()?;
    if graph.genus() == g && graph.num_boundary_cycles() == n {
        Some(graph)
    } else {
        None
    }
}
