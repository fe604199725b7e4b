//! Generation of the family of `(g, n)`-fatgraphs: all trivalent graphs by
//! recursive edge addition, all lower graphs by edge contraction, with
//! isomorph rejection throughout.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::fatgraph::{EdgeLabel, Fatgraph, TopologicalSignature, Vertex};
use crate::iso::{self, are_isomorphic, automorphisms};
use crate::{Error, Result};

/// An edge together with a chosen orientation, encoded as a side `s` in
/// `{+1, -1}`: the side selects which of the two inequivalent cyclic orders
/// a trivalent vertex created on the edge's midpoint receives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    pub edge: EdgeLabel,
    pub side: i8,
}

impl OrientedEdge {
    pub fn plus(edge: EdgeLabel) -> OrientedEdge {
        OrientedEdge { edge, side: 1 }
    }

    pub fn minus(edge: EdgeLabel) -> OrientedEdge {
        OrientedEdge { edge, side: -1 }
    }
}

/// All `(g, n)`-fatgraphs, bucketed by edge count.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    pub g: usize,
    pub n: usize,
    pub by_edge_count: BTreeMap<usize, Vec<Fatgraph>>,
}

impl GraphFamily {
    pub fn total(&self) -> usize {
        self.by_edge_count.values().map(Vec::len).sum()
    }

    /// `(edge count, number of graphs)` rows, largest edge count first.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.by_edge_count
            .iter()
            .rev()
            .map(|(&m, graphs)| (m, graphs.len()))
            .collect()
    }

    pub fn all_graphs(&self) -> impl Iterator<Item = &Fatgraph> {
        self.by_edge_count.values().flatten()
    }
}

/// Maximum edge count of a `(g, n)`-fatgraph.
pub fn max_edges(g: usize, n: usize) -> usize {
    6 * g + 3 * n - 6
}

/// Minimum edge count of a `(g, n)`-fatgraph (realized by one-vertex graphs).
pub fn min_edges(g: usize, n: usize) -> usize {
    2 * g + n - 1
}

fn signature_ok(g: usize, n: usize) -> bool {
    n > 0 && (2isize - 2 * g as isize - n as isize) < 0
}

/// Split edge `x` of `g` at a midpoint vertex, returning the rebuilt vertex
/// lists plus the labels of the two halves and the index the midpoint vertex
/// will take.  The first half keeps the old label and stays attached to the
/// canonical first endpoint; the second half gets label `m`.
fn split_edge(g: &Fatgraph, x: EdgeLabel) -> (Vec<Vec<EdgeLabel>>, EdgeLabel, EdgeLabel) {
    let [_, p2] = g.edges()[x].ends();
    let second_half = g.num_edges();
    let mut lists: Vec<Vec<EdgeLabel>> = g.vertices().iter().map(|v| v.labels().to_vec()).collect();
    lists[p2.vertex][p2.attachment] = second_half;
    (lists, x, second_half)
}

fn midpoint_vertex(
    first: EdgeLabel,
    second: EdgeLabel,
    tail: EdgeLabel,
    side: i8,
) -> Vec<EdgeLabel> {
    if side >= 0 {
        vec![first, second, tail]
    } else {
        vec![second, first, tail]
    }
}

/// Map `p`: attach the loose end of a slipknot (a trivalent vertex carrying
/// one loop, plus a stem) to the midpoint of the oriented edge `x`.
pub fn attach_slipknot(g: &Fatgraph, x: OrientedEdge) -> Fatgraph {
    let m = g.num_edges();
    let stem = m + 1;
    let loop_edge = m + 2;
    let (mut lists, first, second) = split_edge(g, x.edge);
    lists.push(midpoint_vertex(first, second, stem, x.side));
    lists.push(vec![stem, loop_edge, loop_edge]);
    Fatgraph::from_vertex_lists(&lists).expect("slipknot attachment preserves well-formedness")
}

/// Map `q`: bridge the midpoints of two oriented edges with a new edge.
///
/// When both arguments orient the same underlying edge, the edge is split
/// twice: the first midpoint subdivides the edge, the second subdivides the
/// half selected as first by the second argument's orientation, and the
/// bridge joins the two new vertices.
pub fn bridge_edges(g: &Fatgraph, x: OrientedEdge, y: OrientedEdge) -> Fatgraph {
    let m = g.num_edges();
    if x.edge != y.edge {
        let bridge = m + 2;
        let (mut lists, x1, _) = split_edge(g, x.edge);
        let x2 = m;
        let y1 = y.edge;
        let y2 = m + 1;
        let [_, py2] = g.edges()[y.edge].ends();
        lists[py2.vertex][py2.attachment] = y2;
        lists.push(midpoint_vertex(x1, x2, bridge, x.side));
        lists.push(midpoint_vertex(y1, y2, bridge, y.side));
        Fatgraph::from_vertex_lists(&lists).expect("bridge preserves well-formedness")
    } else {
        // Same-edge bridge: segments seg1 (keeps the label), seg2, seg3 run
        // from the canonical first endpoint to the second.
        let seg1 = x.edge;
        let seg2 = m;
        let seg3 = m + 1;
        let bridge = m + 2;
        let [_, p2] = g.edges()[x.edge].ends();
        let mut lists: Vec<Vec<EdgeLabel>> =
            g.vertices().iter().map(|v| v.labels().to_vec()).collect();
        lists[p2.vertex][p2.attachment] = seg3;
        lists.push(midpoint_vertex(seg1, seg2, bridge, x.side));
        lists.push(midpoint_vertex(seg2, seg3, bridge, y.side));
        Fatgraph::from_vertex_lists(&lists).expect("bridge preserves well-formedness")
    }
}

/// Keep one representative per isomorphism class, in first-seen order.
pub fn dedup_isomorphs(graphs: Vec<Fatgraph>) -> Vec<Fatgraph> {
    let mut kept: Vec<Fatgraph> = Vec::new();
    let mut buckets: HashMap<TopologicalSignature, Vec<usize>> = HashMap::new();
    for g in graphs {
        let sig = g.signature();
        let bucket = buckets.entry(sig).or_default();
        if !bucket.iter().any(|&i| are_isomorphic(&kept[i], &g)) {
            bucket.push(kept.len());
            kept.push(g);
        }
    }
    kept
}

/// All connected trivalent `(g, n)`-fatgraphs, one per isomorphism class.
pub fn mgn_trivalent_graphs(g: usize, n: usize) -> Vec<Fatgraph> {
    // Guards against infinite recursion on invalid arguments.
    if n == 0 || (g, n) < (0, 3) {
        return Vec::new();
    }
    if (g, n) == (0, 3) {
        // The two classes with three boundary cycles on two trivalent
        // vertices: the triple edge and the dumbbell.
        return vec![
            Fatgraph::from_vertex_lists(&[vec![0, 1, 2], vec![2, 1, 0]]).unwrap(),
            Fatgraph::from_vertex_lists(&[vec![0, 0, 1], vec![1, 2, 2]]).unwrap(),
        ];
    }
    if (g, n) == (1, 1) {
        return vec![Fatgraph::from_vertex_lists(&[vec![0, 1, 2], vec![0, 1, 2]]).unwrap()];
    }

    let admissible = |cand: &Fatgraph| cand.genus() == g && cand.num_boundary_cycles() == n;
    let mut candidates: Vec<Fatgraph> = Vec::new();

    // Hang a slipknot on every edge orbit of the (g, n-1) graphs.
    let lower = mgn_trivalent_graphs(g, n - 1);
    for base in &lower {
        let autos = automorphisms(base);
        for x in iso::oriented_edge_orbits(base, &autos) {
            let cand = attach_slipknot(base, x);
            if admissible(&cand) {
                candidates.push(cand);
            }
        }
    }

    // Bridge pairs of oriented edges of a single (g, n-1) graph.
    for base in &lower {
        for (x, y) in iso::oriented_edge_pair_orbits(base) {
            let cand = bridge_edges(base, x, y);
            if admissible(&cand) {
                candidates.push(cand);
            }
        }
    }

    // Bridge pairs of oriented edges of a (g-1, n+1) graph.
    if g >= 1 {
        for base in &mgn_trivalent_graphs(g - 1, n + 1) {
            for (x, y) in iso::oriented_edge_pair_orbits(base) {
                let cand = bridge_edges(base, x, y);
                if admissible(&cand) {
                    candidates.push(cand);
                }
            }
        }
    }

    dedup_isomorphs(candidates)
}

/// The full family of connected `(g, n)`-fatgraphs: trivalent graphs at the
/// top edge count, everything below by contraction of one representative
/// edge per automorphism orbit.
pub fn mgn_graphs(g: usize, n: usize) -> Result<GraphFamily> {
    if !signature_ok(g, n) {
        return Err(Error::InvalidSignature { g, n });
    }
    let m_max = max_edges(g, n);
    let m_min = min_edges(g, n);
    let mut by_edge_count = BTreeMap::new();
    by_edge_count.insert(m_max, mgn_trivalent_graphs(g, n));
    for m in (m_min..m_max).rev() {
        let parents = &by_edge_count[&(m + 1)];
        let candidates: Vec<Fatgraph> = parents
            .par_iter()
            .flat_map_iter(|parent| {
                let autos = automorphisms(parent);
                iso::edge_orbits_from(parent, &autos)
                    .into_iter()
                    .filter(|&e| !parent.is_loop(e))
                    .map(|e| parent.contract(e).expect("non-loop contraction"))
                    .collect::<Vec<_>>()
            })
            .collect();
        by_edge_count.insert(m, dedup_isomorphs(candidates));
    }
    Ok(GraphFamily {
        g,
        n,
        by_edge_count,
    })
}

/// Test-aid: rebuild a graph from re-encoded vertex lists (rotated cilia and
/// renumbered edge labels) without changing its isomorphism class.
pub fn reencode(
    g: &Fatgraph,
    rotate_by: usize,
    relabel: impl Fn(EdgeLabel) -> EdgeLabel,
) -> Fatgraph {
    let lists: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|v| {
            let z = v.valence();
            Vertex::new(v.rotated(rotate_by % z).into_iter().map(&relabel).collect())
        })
        .collect();
    Fatgraph::build(lists, None).expect("re-encoding preserves well-formedness")
}
