//! The fatgraph data model: ciliated vertices, derived edges, boundary
//! cycles, orientation, and the purely topological operations on them.

use crate::{Error, Result};

/// Edge labels are integers in `[0, m)` where `m` is the edge count of the
/// owning graph; each label occurs exactly twice across all vertex lists.
pub type EdgeLabel = usize;

/// A ciliated vertex: the linear representation of a cyclic word of edge
/// labels.  Position 0 is the cilium.
///
/// Two vertices are considered equal when one is a rotation of the other;
/// equality and hashing go through the lexicographically least rotation.
#[derive(Clone, Debug)]
pub struct Vertex {
    labels: Vec<EdgeLabel>,
}

impl Vertex {
    pub fn new(labels: Vec<EdgeLabel>) -> Vertex {
        Vertex { labels }
    }

    pub fn valence(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    /// Number of loops attached to this vertex, i.e. labels occurring twice
    /// in the list.
    pub fn num_loops(&self) -> usize {
        let mut sorted = self.labels.clone();
        sorted.sort_unstable();
        sorted.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// The least rotation amount producing the lexicographically smallest
    /// rotation of the label list.
    pub fn canonical_shift(&self) -> usize {
        let z = self.labels.len();
        let mut best = 0;
        for k in 1..z {
            for j in 0..z {
                let a = self.labels[(k + j) % z];
                let b = self.labels[(best + j) % z];
                if a != b {
                    if a < b {
                        best = k;
                    }
                    break;
                }
            }
        }
        best
    }

    /// The label list rotated into canonical (lexicographically least) form.
    pub fn canonical_labels(&self) -> Vec<EdgeLabel> {
        self.rotated(self.canonical_shift())
    }

    /// A copy of the label list shifted leftwards by `k` places.
    pub fn rotated(&self, k: usize) -> Vec<EdgeLabel> {
        let z = self.labels.len();
        (0..z).map(|j| self.labels[(j + k) % z]).collect()
    }

    /// Cyclic equality, ignoring the cilium.
    pub fn cyclic_eq(&self, other: &Vertex) -> bool {
        self.valence() == other.valence() && self.canonical_labels() == other.canonical_labels()
    }
}

impl PartialEq for Vertex {
    fn eq(&self, other: &Self) -> bool {
        self.cyclic_eq(other)
    }
}
impl Eq for Vertex {}

impl std::hash::Hash for Vertex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical_labels().hash(state);
    }
}

/// One end of an edge: a vertex index plus the attachment index of the edge
/// occurrence relative to the cilium of that vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub vertex: usize,
    pub attachment: usize,
}

/// An unordered pair of endpoints; stored sorted so the pair has a canonical
/// first element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    ends: [Endpoint; 2],
}

impl Edge {
    fn new(a: Endpoint, b: Endpoint) -> Edge {
        if a <= b {
            Edge { ends: [a, b] }
        } else {
            Edge { ends: [b, a] }
        }
    }

    pub fn ends(&self) -> [Endpoint; 2] {
        self.ends
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0].vertex == self.ends[1].vertex
    }

    /// The endpoint opposite to `(vertex, attachment)`.
    pub fn other_end(&self, vertex: usize, attachment: usize) -> Endpoint {
        let here = Endpoint { vertex, attachment };
        if self.ends[0] == here {
            self.ends[1]
        } else {
            debug_assert_eq!(self.ends[1], here);
            self.ends[0]
        }
    }
}

/// A corner: two consecutive attachment indices around a vertex, with
/// `outgoing = incoming + 1 (mod valence)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertex: usize,
    pub incoming: usize,
    pub outgoing: usize,
}

/// A boundary cycle, stored as its set of corners.
///
/// Corners are kept sorted by `(vertex, incoming)`, so two cycles of the same
/// graph are equal exactly when they contain the same corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryCycle {
    corners: Vec<Corner>,
}

impl BoundaryCycle {
    pub fn new(mut corners: Vec<Corner>) -> BoundaryCycle {
        corners.sort_unstable();
        corners.dedup();
        BoundaryCycle { corners }
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

/// An orientation: the position of every edge in a total order on the edges,
/// i.e. a permutation of `[0, m)`.  Two orientations define the same oriented
/// graph when they differ by an even permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    position: Vec<usize>,
}

impl Orientation {
    /// The default ordering: edges in the order they are listed.
    pub fn default_for(num_edges: usize) -> Orientation {
        Orientation {
            position: (0..num_edges).collect(),
        }
    }

    pub fn from_positions(position: Vec<usize>) -> Result<Orientation> {
        let m = position.len();
        let mut seen = vec![false; m];
        for &p in &position {
            if p >= m || seen[p] {
                return Err(Error::InvalidOrientation(format!(
                    "{position:?} is not a permutation of 0..{m}"
                )));
            }
            seen[p] = true;
        }
        Ok(Orientation { position })
    }

    pub fn position(&self, e: EdgeLabel) -> usize {
        self.position[e]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn is_default(&self) -> bool {
        self.position.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Cheap isomorphism invariants of a fatgraph; equal signatures are necessary
/// (not sufficient) for two graphs to be isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TopologicalSignature {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_boundary_cycles: usize,
    pub genus: usize,
    pub num_loops: usize,
    /// Sorted vertex valences.
    pub valences: Vec<usize>,
    /// Sorted `(valence, loops)` pairs, one per vertex.
    pub valence_loops: Vec<(usize, usize)>,
}

/// A fatgraph: a list of ciliated vertices together with the data derived
/// from it (edges, boundary cycles) and an orientation.
///
/// Values are immutable once built; every operation returns a new graph.
#[derive(Clone, Debug)]
pub struct Fatgraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    boundary_cycles: Vec<BoundaryCycle>,
    orient: Orientation,
}

impl Fatgraph {
    /// Build a fatgraph from its vertex list.
    ///
    /// Labels must form the set `[0, m)` with each label occurring exactly
    /// twice, every vertex must have valence at least 3, and the graph must
    /// be connected.  When no orientation is given, edges are ordered the way
    /// they are listed.
    pub fn build(vertices: Vec<Vertex>, orient: Option<Orientation>) -> Result<Fatgraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.valence() < 3 {
                return Err(Error::LowValence {
                    vertex: i,
                    valence: v.valence(),
                });
            }
        }
        let edges = compute_edge_list(&vertices)?;
        let orient = match orient {
            Some(o) => {
                if o.positions().len() != edges.len() {
                    return Err(Error::InvalidOrientation(format!(
                        "orientation covers {} edges, graph has {}",
                        o.positions().len(),
                        edges.len()
                    )));
                }
                o
            }
            None => Orientation::default_for(edges.len()),
        };
        if !is_connected(&vertices, &edges) {
            return Err(Error::Disconnected);
        }
        let boundary_cycles = walk_boundary_cycles(&vertices, &edges);
        let g = Fatgraph {
            vertices,
            edges,
            boundary_cycles,
            orient,
        };
        g.genus(); // parity checked in debug builds
        Ok(g)
    }

    /// Convenience constructor from raw label lists.
    pub fn from_vertex_lists(lists: &[Vec<EdgeLabel>]) -> Result<Fatgraph> {
        Fatgraph::build(lists.iter().cloned().map(Vertex::new).collect(), None)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Boundary cycles in the deterministic order produced by the
    /// first-unused-corner walk; this order numbers the cycles for marking
    /// purposes.
    pub fn boundary_cycles(&self) -> &[BoundaryCycle] {
        &self.boundary_cycles
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orient
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_boundary_cycles(&self) -> usize {
        self.boundary_cycles.len()
    }

    /// Genus from `l - m + n = 2 - 2g`.
    pub fn genus(&self) -> usize {
        let chi = self.num_vertices() as isize - self.num_edges() as isize
            + self.num_boundary_cycles() as isize;
        debug_assert!((2 - chi) % 2 == 0 && chi <= 2);
        ((2 - chi) / 2) as usize
    }

    pub fn num_loops(&self) -> usize {
        self.vertices.iter().map(Vertex::num_loops).sum()
    }

    pub fn is_loop(&self, e: EdgeLabel) -> bool {
        self.edges[e].is_loop()
    }

    pub fn valence(&self, vertex: usize) -> usize {
        self.vertices[vertex].valence()
    }

    pub fn signature(&self) -> TopologicalSignature {
        let mut valences: Vec<usize> = self.vertices.iter().map(Vertex::valence).collect();
        let mut valence_loops: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .map(|v| (v.valence(), v.num_loops()))
            .collect();
        valences.sort_unstable();
        valence_loops.sort_unstable();
        TopologicalSignature {
            num_vertices: self.num_vertices(),
            num_edges: self.num_edges(),
            num_boundary_cycles: self.num_boundary_cycles(),
            genus: self.genus(),
            num_loops: self.num_loops(),
            valences,
            valence_loops,
        }
    }

    /// Index of a boundary cycle in this graph's numbering.
    pub fn boundary_cycle_index(&self, b: &BoundaryCycle) -> Option<usize> {
        self.boundary_cycles.iter().position(|c| c == b)
    }

    /// Contract the non-loop edge `e`, fusing its endpoints.
    ///
    /// The fused vertex reads the successors of `e` around the first endpoint
    /// followed by the successors around the second, and is appended at the
    /// end of the vertex list.  Remaining labels above `e` shift down by one
    /// so that labels stay in `[0, m-1)`, and the inherited orientation drops
    /// the contracted edge's slot.
    pub fn contract(&self, e: EdgeLabel) -> Result<Fatgraph> {
        if self.edges[e].is_loop() {
            return Err(Error::LoopContraction { edge: e });
        }
        let [p1, p2] = self.edges[e].ends();
        let (v1, a1) = (p1.vertex, p1.attachment);
        let (v2, a2) = (p2.vertex, p2.attachment);

        let relabel = |x: EdgeLabel| if x > e { x - 1 } else { x };

        let mut vertices: Vec<Vertex> = Vec::with_capacity(self.num_vertices() - 1);
        for (i, v) in self.vertices.iter().enumerate() {
            if i != v1 && i != v2 {
                vertices.push(Vertex::new(
                    v.labels().iter().map(|&x| relabel(x)).collect(),
                ));
            }
        }
        let mut fused: Vec<EdgeLabel> = Vec::with_capacity(self.valence(v1) + self.valence(v2) - 2);
        fused.extend(
            self.vertices[v1]
                .rotated(a1)
                .into_iter()
                .skip(1)
                .map(relabel),
        );
        fused.extend(
            self.vertices[v2]
                .rotated(a2)
                .into_iter()
                .skip(1)
                .map(relabel),
        );
        vertices.push(Vertex::new(fused));

        // Inherited orientation: close the gap left by the contracted edge.
        let h = self.orient.position(e);
        let mut position = vec![0usize; self.num_edges() - 1];
        for x in 0..self.num_edges() {
            if x == e {
                continue;
            }
            let p = self.orient.position(x);
            position[relabel(x)] = if p > h { p - 1 } else { p };
        }

        let orient = Orientation::from_positions(position)?;
        let g = Fatgraph::build(vertices, Some(orient))
            .expect("contraction of a non-loop edge preserves well-formedness");
        debug_assert_eq!(g.genus(), self.genus());
        debug_assert_eq!(g.num_boundary_cycles(), self.num_boundary_cycles());
        Ok(g)
    }

    /// Image of the boundary cycle `b` under contraction of the non-loop
    /// edge `e`, expressed in the contracted graph's vertex numbering.
    ///
    /// Corners whose incoming edge is the contracted one are dropped (each is
    /// fused with the corner on the same side that keeps the contracted edge
    /// at its outgoing slot); all other corners are reindexed into the fused
    /// vertex.
    pub fn contract_boundary_cycle(
        &self,
        b: &BoundaryCycle,
        e: EdgeLabel,
    ) -> Result<BoundaryCycle> {
        if self.edges[e].is_loop() {
            return Err(Error::LoopContraction { edge: e });
        }
        let [p1, p2] = self.edges[e].ends();
        let (v1, a1) = (p1.vertex, p1.attachment);
        let (v2, a2) = (p2.vertex, p2.attachment);
        let z1 = self.valence(v1);
        let z2 = self.valence(v2);
        // Vertices keep their relative order minus the two fused ones, with
        // the fused vertex appended at the end.
        let fused_index = self.num_vertices() - 2;
        let new_vertex = |w: usize| w - (v1 < w) as usize - (v2 < w) as usize;
        let zf = z1 + z2 - 2;

        let mut corners = Vec::with_capacity(b.len());
        for c in b.corners() {
            if c.vertex == v1 {
                if c.incoming == a1 {
                    continue;
                }
                let i1 = (c.incoming + z1 - a1 - 1) % z1;
                let i2 = (i1 + 1) % zf;
                corners.push(Corner {
                    vertex: fused_index,
                    incoming: i1,
                    outgoing: i2,
                });
            } else if c.vertex == v2 {
                if c.incoming == a2 {
                    continue;
                }
                if c.outgoing == a2 {
                    corners.push(Corner {
                        vertex: fused_index,
                        incoming: z1 + z2 - 3,
                        outgoing: 0,
                    });
                } else {
                    let i1 = z1 - 1 + (c.incoming + z2 - a2 - 1) % z2;
                    let i2 = (i1 + 1) % zf;
                    corners.push(Corner {
                        vertex: fused_index,
                        incoming: i1,
                        outgoing: i2,
                    });
                }
            } else {
                corners.push(Corner {
                    vertex: new_vertex(c.vertex),
                    ..*c
                });
            }
        }
        Ok(BoundaryCycle::new(corners))
    }
}

/// Edge list computed by the positional scan: edge `k`'s endpoints are
/// exactly the two `(vertex, attachment)` positions where label `k` occurs.
pub fn compute_edge_list(vertices: &[Vertex]) -> Result<Vec<Edge>> {
    let total: usize = vertices.iter().map(Vertex::valence).sum();
    if total % 2 != 0 {
        return Err(Error::MalformedLabels(format!("odd total valence {total}")));
    }
    let m = total / 2;
    let mut occurrences: Vec<Vec<Endpoint>> = vec![Vec::new(); m];
    for (vi, v) in vertices.iter().enumerate() {
        for (a, &e) in v.labels().iter().enumerate() {
            if e >= m {
                return Err(Error::MalformedLabels(format!(
                    "label {e} out of range for {m} edges"
                )));
            }
            if occurrences[e].len() == 2 {
                return Err(Error::MalformedLabels(format!(
                    "label {e} occurs more than twice"
                )));
            }
            occurrences[e].push(Endpoint {
                vertex: vi,
                attachment: a,
            });
        }
    }
    let mut edges = Vec::with_capacity(m);
    for (e, occ) in occurrences.into_iter().enumerate() {
        if occ.len() != 2 {
            return Err(Error::MalformedLabels(format!(
                "label {e} occurs {} times, expected 2",
                occ.len()
            )));
        }
        edges.push(Edge::new(occ[0], occ[1]));
    }
    Ok(edges)
}

fn is_connected(vertices: &[Vertex], edges: &[Edge]) -> bool {
    let l = vertices.len();
    if l == 0 {
        return false;
    }
    let mut seen = vec![false; l];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &e in vertices[v].labels() {
            for end in edges[e].ends() {
                if !seen[end.vertex] {
                    seen[end.vertex] = true;
                    stack.push(end.vertex);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Walk all boundary cycles, starting each walk at the first unused corner in
/// `(vertex, attachment)` order.  The output order is the graph's canonical
/// cycle numbering.
fn walk_boundary_cycles(vertices: &[Vertex], edges: &[Edge]) -> Vec<BoundaryCycle> {
    let mut used: Vec<Vec<bool>> = vertices.iter().map(|v| vec![false; v.valence()]).collect();
    let mut cycles = Vec::new();
    for start_v in 0..vertices.len() {
        for start_i in 0..vertices[start_v].valence() {
            if used[start_v][start_i] {
                continue;
            }
            let mut corners = Vec::new();
            let (mut v, mut i) = (start_v, start_i);
            loop {
                debug_assert!(!used[v][i]);
                used[v][i] = true;
                let z = vertices[v].valence();
                let j = (i + 1) % z;
                corners.push(Corner {
                    vertex: v,
                    incoming: i,
                    outgoing: j,
                });
                let e = vertices[v].labels()[j];
                let next = edges[e].other_end(v, j);
                v = next.vertex;
                i = next.attachment;
                if v == start_v && i == start_i {
                    break;
                }
            }
            cycles.push(BoundaryCycle::new(corners));
        }
    }
    cycles
}
