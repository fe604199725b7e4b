//! The combinatorial presentation of a fatgraph: a finite set of half-edges
//! acted on by three permutations `sigma0` (vertex rotations), `sigma1`
//! (half-edge pairing) and `sigma2` (boundary walks), subject to
//! `sigma0 ∘ sigma2 = sigma1`.

use crate::fatgraph::{Fatgraph, Vertex};
use crate::perm::Perm;
use crate::{Error, Result};

/// A fatgraph as a permutation triple on half-edge identifiers `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialForm {
    pub sigma0: Perm,
    pub sigma1: Perm,
    pub sigma2: Perm,
}

impl CombinatorialForm {
    /// Build from vertex rotations and the pairing involution; `sigma2` is
    /// determined by the defining relation.
    pub fn new(sigma0: Perm, sigma1: Perm) -> Result<CombinatorialForm> {
        if sigma0.degree() != sigma1.degree() {
            return Err(Error::InvalidPermutations(
                "sigma0 and sigma1 act on different sets".into(),
            ));
        }
        for h in 0..sigma1.degree() {
            if sigma1.apply(h) == h {
                return Err(Error::InvalidPermutations(format!(
                    "sigma1 fixes half-edge {h}; it must be a fixed-point free involution"
                )));
            }
            if sigma1.apply(sigma1.apply(h)) != h {
                return Err(Error::InvalidPermutations(
                    "sigma1 is not an involution".into(),
                ));
            }
        }
        let sigma2 = sigma0.inverse().compose(&sigma1);
        Ok(CombinatorialForm {
            sigma0,
            sigma1,
            sigma2,
        })
    }

    pub fn size(&self) -> usize {
        self.sigma0.degree()
    }

    /// Checks `sigma0 ∘ sigma2 = sigma1` and the involution condition.
    pub fn is_valid(&self) -> bool {
        self.sigma0.degree() == self.sigma1.degree()
            && self.sigma1.degree() == self.sigma2.degree()
            && (0..self.size()).all(|h| {
                self.sigma1.apply(h) != h
                    && self.sigma1.apply(self.sigma1.apply(h)) == h
                    && self.sigma0.apply(self.sigma2.apply(h)) == self.sigma1.apply(h)
            })
    }

    pub fn num_vertices(&self) -> usize {
        orbits(&self.sigma0).len()
    }

    pub fn num_edges(&self) -> usize {
        orbits(&self.sigma1).len()
    }

    pub fn num_boundary_cycles(&self) -> usize {
        orbits(&self.sigma2).len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(h) = stack.pop() {
            for next in [self.sigma0.apply(h), self.sigma1.apply(h)] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Orbits of a permutation, each listed from its smallest element in
/// application order, ordered by smallest element.
pub(crate) fn orbits(p: &Perm) -> Vec<Vec<usize>> {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = p.apply(x);
        }
        out.push(orbit);
    }
    out
}

impl Fatgraph {
    /// The permutation-triple presentation of this graph.  Half-edge `k` is
    /// the `k`-th `(vertex, attachment)` slot in listing order.
    pub fn to_combinatorial(&self) -> CombinatorialForm {
        let mut offset = Vec::with_capacity(self.num_vertices());
        let mut total = 0;
        for v in self.vertices() {
            offset.push(total);
            total += v.valence();
        }
        let mut sigma0 = vec![0usize; total];
        let mut sigma1 = vec![0usize; total];
        for (vi, v) in self.vertices().iter().enumerate() {
            let z = v.valence();
            for a in 0..z {
                sigma0[offset[vi] + a] = offset[vi] + (a + 1) % z;
            }
        }
        for e in self.edges() {
            let [p, q] = e.ends();
            let hp = offset[p.vertex] + p.attachment;
            let hq = offset[q.vertex] + q.attachment;
            sigma1[hp] = hq;
            sigma1[hq] = hp;
        }
        CombinatorialForm::new(
            Perm::from_images(sigma0).expect("sigma0 is a bijection by construction"),
            Perm::from_images(sigma1).expect("sigma1 is a bijection by construction"),
        )
        .expect("well-formed fatgraphs yield valid permutation triples")
    }

    /// Rebuild a fatgraph from a permutation triple.
    ///
    /// Vertices are the `sigma0`-orbits read in application order starting at
    /// their smallest half-edge; edge labels are assigned in order of each
    /// pair's first half-edge.
    pub fn from_combinatorial(c: &CombinatorialForm) -> Result<Fatgraph> {
        if !c.is_valid() {
            return Err(Error::InvalidPermutations(
                "defining relation sigma0 ∘ sigma2 = sigma1 violated".into(),
            ));
        }
        if c.size() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !c.is_connected() {
            return Err(Error::Disconnected);
        }
        let total = c.size();
        let mut label = vec![usize::MAX; total];
        let mut next_label = 0;
        for h in 0..total {
            if label[h] == usize::MAX {
                label[h] = next_label;
                label[c.sigma1.apply(h)] = next_label;
                next_label += 1;
            }
        }
        let mut vertices = Vec::new();
        for orbit in orbits(&c.sigma0) {
            if orbit.len() < 3 {
                return Err(Error::LowValence {
                    vertex: vertices.len(),
                    valence: orbit.len(),
                });
            }
            vertices.push(Vertex::new(orbit.into_iter().map(|h| label[h]).collect()));
        }
        Fatgraph::build(vertices, None)
    }
}
