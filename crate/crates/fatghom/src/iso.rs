//! Isomorphisms between fatgraphs: rigidity-seeded breadth-first
//! enumeration, orientation comparison, orbit computation, and transport of
//! boundary cycles.

use std::collections::VecDeque;

use crate::fatgraph::{BoundaryCycle, Corner, EdgeLabel, Fatgraph};
use crate::perm::Perm;
use crate::{Error, Result};

/// An isomorphism of fatgraphs, recorded as a vertex bijection, a
/// per-source-vertex rotation, and an edge-label bijection.
///
/// The defining compatibility relation is
/// `target.vertices[pv[v]][(j + rot[v]) % z] == pe[source.vertices[v][j]]`
/// for every source vertex `v` and position `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub pv: Vec<usize>,
    pub rot: Vec<usize>,
    pub pe: Vec<EdgeLabel>,
}

impl Isomorphism {
    pub fn identity(g: &Fatgraph) -> Isomorphism {
        Isomorphism {
            pv: (0..g.num_vertices()).collect(),
            rot: vec![0; g.num_vertices()],
            pe: (0..g.num_edges()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.pv.iter().enumerate().all(|(i, &x)| i == x)
            && self.rot.iter().all(|&r| r == 0)
            && self.pe.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Compose with another isomorphism, applying `self` first:
    /// the result maps the source of `self` to the target of `next`.
    pub fn then(&self, next: &Isomorphism, mid: &Fatgraph) -> Isomorphism {
        let pv = self.pv.iter().map(|&v| next.pv[v]).collect();
        let rot: Vec<usize> = self
            .pv
            .iter()
            .enumerate()
            .map(|(v, &w)| (self.rot[v] + next.rot[w]) % mid.valence(w))
            .collect();
        let pe = self.pe.iter().map(|&e| next.pe[e]).collect();
        Isomorphism { pv, rot, pe }
    }

    /// The inverse isomorphism from the target graph back to the source.
    pub fn inverse(&self, source: &Fatgraph) -> Isomorphism {
        let l = self.pv.len();
        let mut pv = vec![0; l];
        let mut rot = vec![0; l];
        for (v, &w) in self.pv.iter().enumerate() {
            pv[w] = v;
            let z = source.valence(v);
            rot[w] = (z - self.rot[v] % z) % z;
        }
        let mut pe = vec![0; self.pe.len()];
        for (e, &f) in self.pe.iter().enumerate() {
            pe[f] = e;
        }
        Isomorphism { pv, rot, pe }
    }

    /// Check the compatibility relation at every vertex and position.
    pub fn is_valid(&self, g1: &Fatgraph, g2: &Fatgraph) -> bool {
        if self.pv.len() != g1.num_vertices() || self.pe.len() != g1.num_edges() {
            return false;
        }
        g1.vertices().iter().enumerate().all(|(v, vert)| {
            let w = self.pv[v];
            let z = vert.valence();
            g2.valence(w) == z
                && (0..z).all(|j| {
                    g2.vertices()[w].labels()[(j + self.rot[v]) % z] == self.pe[vert.labels()[j]]
                })
        })
    }
}

/// Enumerate all isomorphisms from `g1` to `g2`, in deterministic
/// `(target vertex index, rotation)` seed order.  The empty list means the
/// graphs are not isomorphic.
pub fn isomorphisms(g1: &Fatgraph, g2: &Fatgraph) -> Vec<Isomorphism> {
    enumerate(g1, g2, usize::MAX)
}

/// The first isomorphism in enumeration order, if any.
pub fn first_isomorphism(g1: &Fatgraph, g2: &Fatgraph) -> Option<Isomorphism> {
    enumerate(g1, g2, 1).into_iter().next()
}

pub fn are_isomorphic(g1: &Fatgraph, g2: &Fatgraph) -> bool {
    first_isomorphism(g1, g2).is_some()
}

/// All automorphisms of `g`; always contains the identity.
pub fn automorphisms(g: &Fatgraph) -> Vec<Isomorphism> {
    isomorphisms(g, g)
}

fn enumerate(g1: &Fatgraph, g2: &Fatgraph, limit: usize) -> Vec<Isomorphism> {
    let mut result = Vec::new();
    if limit == 0 || g1.signature() != g2.signature() {
        return result;
    }
    // Pick the seed valence minimizing (valence * count) on g2, preferring
    // larger valences on ties; seed source vertex is the first of that
    // valence in g1.
    let mut best: Option<(usize, usize)> = None; // (intensity, valence)
    {
        let mut by_valence = std::collections::BTreeMap::new();
        for v in g2.vertices() {
            *by_valence.entry(v.valence()).or_insert(0usize) += 1;
        }
        for (&z, &c) in &by_valence {
            let intensity = z * c;
            match best {
                None => best = Some((intensity, z)),
                Some((bi, bz)) => {
                    if intensity < bi || (intensity == bi && z > bz) {
                        best = Some((intensity, z));
                    }
                }
            }
        }
    }
    let valence = match best {
        Some((_, z)) => z,
        None => return result,
    };
    let v1 = g1
        .vertices()
        .iter()
        .position(|v| v.valence() == valence)
        .expect("signatures agree, so g1 has a vertex of the chosen valence");
    let v1_loops = g1.vertices()[v1].num_loops();

    for v2 in 0..g2.num_vertices() {
        let cand = &g2.vertices()[v2];
        if cand.valence() != valence || cand.num_loops() != v1_loops {
            continue;
        }
        for rot in 0..valence {
            if let Some(iso) = try_seed(g1, g2, v1, v2, rot) {
                result.push(iso);
                if result.len() >= limit {
                    return result;
                }
            }
        }
    }
    result
}

struct PartialMap {
    pv: Vec<Option<usize>>,
    pv_taken: Vec<bool>,
    rot: Vec<usize>,
    pe: Vec<Option<EdgeLabel>>,
    pe_taken: Vec<bool>,
    mapped_vertices: usize,
}

impl PartialMap {
    fn new(l: usize, m: usize) -> PartialMap {
        PartialMap {
            pv: vec![None; l],
            pv_taken: vec![false; l],
            rot: vec![0; l],
            pe: vec![None; m],
            pe_taken: vec![false; m],
            mapped_vertices: 0,
        }
    }

    /// Map vertex `w1` onto `w2` rotated by `r`, extending the edge map
    /// positionally.  Fails on any conflict.
    fn extend_vertex(
        &mut self,
        g1: &Fatgraph,
        g2: &Fatgraph,
        w1: usize,
        w2: usize,
        r: usize,
    ) -> bool {
        let a = g1.vertices()[w1].labels();
        let b = g2.vertices()[w2].labels();
        if a.len() != b.len() || self.pv_taken[w2] {
            return false;
        }
        let z = a.len();
        for j in 0..z {
            let e1 = a[j];
            let e2 = b[(j + r) % z];
            match self.pe[e1] {
                Some(x) if x != e2 => return false,
                Some(_) => {}
                None => {
                    if self.pe_taken[e2] {
                        return false;
                    }
                    self.pe[e1] = Some(e2);
                    self.pe_taken[e2] = true;
                }
            }
        }
        self.pv[w1] = Some(w2);
        self.pv_taken[w2] = true;
        self.rot[w1] = r;
        self.mapped_vertices += 1;
        true
    }
}

/// Candidate extensions across all non-loop edges at `w1`: the forced
/// `(source neighbor, target neighbor, rotation)` triples.
fn neighbors(
    g1: &Fatgraph,
    g2: &Fatgraph,
    map: &PartialMap,
    w1: usize,
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (j, &e) in g1.vertices()[w1].labels().iter().enumerate() {
        if g1.is_loop(e) {
            continue;
        }
        let end1 = g1.edges()[e].other_end(w1, j);
        if map.pv[end1.vertex].is_some() {
            continue;
        }
        let e2 = map.pe[e].expect("edges at a mapped vertex are mapped");
        debug_assert!(!g2.is_loop(e2));
        let w2 = map.pv[w1].expect("w1 is mapped");
        let [q1, q2] = g2.edges()[e2].ends();
        let end2 = if q1.vertex == w2 { q2 } else { q1 };
        if map.pv_taken[end2.vertex] {
            continue;
        }
        let z = g2.valence(end2.vertex);
        let r = (end2.attachment + z - end1.attachment % z) % z;
        out.push((end1.vertex, end2.vertex, r));
    }
    out
}

fn try_seed(g1: &Fatgraph, g2: &Fatgraph, v1: usize, v2: usize, rot: usize) -> Option<Isomorphism> {
    let mut map = PartialMap::new(g1.num_vertices(), g1.num_edges());
    if !map.extend_vertex(g1, g2, v1, v2, rot) {
        return None;
    }
    let mut queue: VecDeque<(usize, usize, usize)> = neighbors(g1, g2, &map, v1).into();
    while let Some((w1, w2, r)) = queue.pop_front() {
        match map.pv[w1] {
            Some(cur) => {
                // A second forced image for the same vertex must agree.
                if cur != w2 || map.rot[w1] != r {
                    return None;
                }
            }
            None => {
                if !map.extend_vertex(g1, g2, w1, w2, r) {
                    return None;
                }
                queue.extend(neighbors(g1, g2, &map, w1));
            }
        }
    }
    if map.mapped_vertices != g1.num_vertices() {
        return None;
    }
    let iso = Isomorphism {
        pv: map.pv.into_iter().map(Option::unwrap).collect(),
        rot: map.rot,
        pe: map.pe.into_iter().map(Option::unwrap).collect(),
    };
    debug_assert!(iso.is_valid(g1, g2));
    Some(iso)
}

/// Compare the orientation of `g1` with the pull-back of `g2`'s orientation
/// along `f`: `+1` when they agree, `-1` when they differ by an odd
/// permutation.
pub fn compare_orientations(f: &Isomorphism, g1: &Fatgraph, g2: &Fatgraph) -> i8 {
    let m = g1.num_edges();
    let mut images = vec![0usize; m];
    for e in 0..m {
        images[g1.orientation().position(e)] = g2.orientation().position(f.pe[e]);
    }
    Perm::from_images(images)
        .expect("orientation transport of a bijection is a bijection")
        .sign()
}

pub fn is_orientation_reversing(g: &Fatgraph, a: &Isomorphism) -> bool {
    compare_orientations(a, g, g) == -1
}

/// A fatgraph is orientable when no automorphism reverses its orientation.
pub fn is_orientable(g: &Fatgraph) -> bool {
    automorphisms(g)
        .iter()
        .all(|a| !is_orientation_reversing(g, a))
}

/// Transport a boundary cycle of the source graph to the target graph along
/// `f`, corner by corner.
pub fn transform_boundary_cycle(
    f: &Isomorphism,
    b: &BoundaryCycle,
    g1: &Fatgraph,
    g2: &Fatgraph,
) -> BoundaryCycle {
    let corners = b
        .corners()
        .iter()
        .map(|c| {
            let w = f.pv[c.vertex];
            let z = g2.valence(w);
            debug_assert_eq!(z, g1.valence(c.vertex));
            Corner {
                vertex: w,
                incoming: (c.incoming + f.rot[c.vertex]) % z,
                outgoing: (c.outgoing + f.rot[c.vertex]) % z,
            }
        })
        .collect();
    BoundaryCycle::new(corners)
}

/// One representative edge per orbit of `Aut(G)` acting on edge labels,
/// listed by smallest member.
pub fn edge_orbits(g: &Fatgraph) -> Vec<EdgeLabel> {
    let autos = automorphisms(g);
    edge_orbits_from(g, &autos)
}

pub(crate) fn edge_orbits_from(g: &Fatgraph, autos: &[Isomorphism]) -> Vec<EdgeLabel> {
    let m = g.num_edges();
    let mut uf = UnionFind::new(m);
    for a in autos {
        for e in 0..m {
            uf.union(e, a.pe[e]);
        }
    }
    let mut reps = Vec::new();
    for e in 0..m {
        if uf.find(e) == e {
            reps.push(e);
        }
    }
    reps
}

/// An edge together with one of its two orientations.  The side selects
/// which of the two inequivalent cyclic orders a vertex created on the
/// edge's midpoint receives.
pub use crate::generation::OrientedEdge;

/// Whether automorphism `a` exchanges the two half-edges of `e` relative to
/// the canonical endpoint order of `e` and its image.
fn flips_side(a: &Isomorphism, g: &Fatgraph, e: EdgeLabel) -> bool {
    let [p, _q] = g.edges()[e].ends();
    let image = crate::fatgraph::Endpoint {
        vertex: a.pv[p.vertex],
        attachment: (p.attachment + a.rot[p.vertex]) % g.valence(p.vertex),
    };
    let [p2, q2] = g.edges()[a.pe[e]].ends();
    if image == p2 {
        false
    } else {
        debug_assert_eq!(image, q2);
        true
    }
}

/// One representative per `Aut(G)`-orbit of ordered pairs of oriented edges,
/// in lexicographic order of `(edge, side)` codes.
pub fn oriented_edge_pair_orbits(g: &Fatgraph) -> Vec<(OrientedEdge, OrientedEdge)> {
    let autos = automorphisms(g);
    let m = g.num_edges();
    let decode = |c: usize| OrientedEdge {
        edge: c / 2,
        side: if c % 2 == 0 { 1 } else { -1 },
    };
    // Image codes of every oriented edge under every automorphism.
    let mut action: Vec<Vec<usize>> = Vec::with_capacity(autos.len());
    for a in &autos {
        let mut row = vec![0usize; 2 * m];
        for e in 0..m {
            let flip = flips_side(a, g, e) as usize;
            row[2 * e] = 2 * a.pe[e] + flip;
            row[2 * e + 1] = 2 * a.pe[e] + 1 - flip;
        }
        action.push(row);
    }
    let total = (2 * m) * (2 * m);
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for first in 0..2 * m {
        for second in 0..2 * m {
            let id = first * 2 * m + second;
            if seen[id] {
                continue;
            }
            reps.push((decode(first), decode(second)));
            // Close the orbit.
            let mut stack = vec![(first, second)];
            seen[id] = true;
            while let Some((x, y)) = stack.pop() {
                for row in &action {
                    let nx = row[x];
                    let ny = row[y];
                    let nid = nx * 2 * m + ny;
                    if !seen[nid] {
                        seen[nid] = true;
                        stack.push((nx, ny));
                    }
                }
            }
        }
    }
    reps
}

/// Orbits of `Aut(G)` on single oriented edges, one representative each.
pub(crate) fn oriented_edge_orbits(g: &Fatgraph, autos: &[Isomorphism]) -> Vec<OrientedEdge> {
    let m = g.num_edges();
    let mut uf = UnionFind::new(2 * m);
    for a in autos {
        for e in 0..m {
            let flip = flips_side(a, g, e) as usize;
            uf.union(2 * e, 2 * a.pe[e] + flip);
            uf.union(2 * e + 1, 2 * a.pe[e] + 1 - flip);
        }
    }
    let mut reps = Vec::new();
    for c in 0..2 * m {
        if uf.find(c) == c {
            reps.push(OrientedEdge {
                edge: c / 2,
                side: if c % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    reps
}

/// Extend an incidence-preserving edge bijection to a full isomorphism.
///
/// The extension is found by locating, for each source vertex, the unique
/// target vertex and rotation under which the mapped labels agree cyclically;
/// when several target vertices match (graphs on two vertices sharing all
/// edges), the first unused one is taken.
pub fn iso_from_edge_map(g1: &Fatgraph, g2: &Fatgraph, eta: &[EdgeLabel]) -> Result<Isomorphism> {
    if g1.num_edges() != g2.num_edges()
        || eta.len() != g1.num_edges()
        || g1.num_vertices() != g2.num_vertices()
    {
        return Err(Error::NotIncidencePreserving);
    }
    {
        let mut seen = vec![false; g2.num_edges()];
        for &e in eta {
            if e >= g2.num_edges() || seen[e] {
                return Err(Error::NotIncidencePreserving);
            }
            seen[e] = true;
        }
    }
    let l = g1.num_vertices();
    let mut pv = vec![0usize; l];
    let mut rot = vec![0usize; l];
    let mut taken = vec![false; l];
    for v in 0..l {
        let labels = g1.vertices()[v].labels();
        let z = labels.len();
        let mapped: Vec<EdgeLabel> = labels.iter().map(|&e| eta[e]).collect();
        let mut found = false;
        'candidates: for w in 0..l {
            if taken[w] || g2.valence(w) != z {
                continue;
            }
            let target = g2.vertices()[w].labels();
            for r in 0..z {
                if (0..z).all(|j| target[(j + r) % z] == mapped[j]) {
                    pv[v] = w;
                    rot[v] = r;
                    taken[w] = true;
                    found = true;
                    break 'candidates;
                }
            }
        }
        if !found {
            return Err(Error::NotIncidencePreserving);
        }
    }
    let iso = Isomorphism {
        pv,
        rot,
        pe: eta.to_vec(),
    };
    if iso.is_valid(g1, g2) {
        Ok(iso)
    } else {
        Err(Error::NotIncidencePreserving)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Union keeping the smaller element as representative.
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}
