//! Permutations of `{0, .., n-1}` in one-line (image array) notation.

use crate::{Error, Result};

/// A permutation stored as its image array: `perm[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Build from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutations(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Functional composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Sign of the permutation: `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut sign = 1i8;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All permutations of degree `n` in lexicographic order of their image
    /// arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}
