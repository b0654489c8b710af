//! Exact maximum independent set and maximum clique for small object sets.
//!
//! Graphs are stored as one `u64` neighbour mask per vertex, which caps the
//! oracle at 64 objects. The solver is a branch and bound: vertices of degree
//! at most one are always taken, otherwise it branches on a maximum-degree
//! vertex, and a greedy clique cover of the remaining candidates bounds what
//! can still be gained.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GeomObject, ObjectKind};

/// Hard limit imposed by the bitset representation.
pub const MAX_OBJECTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} objects exceed the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("object {position} has kind {found} but object 0 has kind {expected}")]
    MixedKinds { position: usize, expected: ObjectKind, found: ObjectKind },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    rows: Vec<u64>,
    kind: Option<ObjectKind>,
}

/// A maximum solution: its size and the lexicographically smallest index set
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub size: usize,
    pub witness: Vec<usize>,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask of all vertices with index greater than `v`.
fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

fn vertices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

impl AdjacencyMatrix {
    /// Builds a graph from an edge predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self, OracleError> {
        if n > MAX_OBJECTS {
            return Err(OracleError::TooLarge { n, cap: MAX_OBJECTS });
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    rows[u] |= bit(v);
                    rows[v] |= bit(u);
                }
            }
        }
        Ok(AdjacencyMatrix { n, rows, kind: None })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> Option<ObjectKind> {
        self.kind
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    /// Same vertex count and edge set, ignoring the object kind.
    pub fn same_edges(&self, other: &AdjacencyMatrix) -> bool {
        self.rows == other.rows
    }

    /// Neighbour mask of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn complement(&self) -> AdjacencyMatrix {
        let all = self.all();
        let rows = self.rows.iter().enumerate().map(|(v, r)| !r & all & !bit(v)).collect();
        AdjacencyMatrix { n: self.n, rows, kind: self.kind }
    }

    /// Subgraph on the first `k` vertices.
    pub fn induced_prefix(&self, k: usize) -> AdjacencyMatrix {
        let k = k.min(self.n);
        let keep = if k == 64 { u64::MAX } else { bit(k) - 1 };
        AdjacencyMatrix { n: k, rows: self.rows[..k].iter().map(|r| r & keep).collect(), kind: self.kind }
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mask = set.iter().fold(0, |m, &v| m | bit(v));
        set.iter().all(|&v| self.rows[v] & mask == 0)
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        self.complement().is_independent(set)
    }

    /// Size of a maximum independent set among the vertices in `cand`.
    fn alpha_of(&self, cand: u64) -> usize {
        let mut best = 0;
        self.search(cand, 0, &mut best);
        best
    }

    fn search(&self, mut cand: u64, mut size: usize, best: &mut usize) {
        loop {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + self.clique_cover_bound(cand) <= *best {
                return;
            }
            let mut min = (usize::MAX, 0);
            let mut max = (0, 0);
            for v in vertices(cand) {
                let d = (self.rows[v] & cand).count_ones() as usize;
                if d < min.0 {
                    min = (d, v);
                }
                if d > max.0 {
                    max = (d, v);
                }
            }
            if min.0 <= 1 {
                // A vertex of degree ≤ 1 belongs to some maximum solution.
                cand &= !(bit(min.1) | self.rows[min.1]);
                size += 1;
                continue;
            }
            let u = max.1;
            self.search(cand & !(bit(u) | self.rows[u]), size + 1, best);
            cand &= !bit(u);
        }
    }

    /// Number of cliques in a greedy cover of `cand`, an upper bound on α.
    fn clique_cover_bound(&self, mut cand: u64) -> usize {
        let mut cliques = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let mut common = self.rows[v] & cand;
            cand &= !bit(v);
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                cand &= !bit(w);
                common &= self.rows[w];
            }
            cliques += 1;
        }
        cliques
    }

    /// α without a witness.
    pub fn independence_number(&self) -> usize {
        self.alpha_of(self.all())
    }

    /// ω without a witness.
    pub fn clique_number(&self) -> usize {
        self.complement().independence_number()
    }

    pub fn max_independent_set(&self) -> Solution {
        let all = self.all();
        let size = self.alpha_of(all);
        // Scan vertices in order and keep each one whose inclusion still
        // allows a solution of the full size among later vertices.
        let mut witness = Vec::with_capacity(size);
        let mut cand = all;
        let mut need = size;
        for v in 0..self.n {
            if need == 0 {
                break;
            }
            if cand & bit(v) == 0 {
                continue;
            }
            let later = cand & !(bit(v) | self.rows[v]) & above(v);
            if 1 + self.alpha_of(later) == need {
                witness.push(v);
                cand = later;
                need -= 1;
            } else {
                cand &= !bit(v);
            }
        }
        debug_assert_eq!(witness.len(), size);
        Solution { size, witness }
    }

    pub fn max_clique(&self) -> Solution {
        self.complement().max_independent_set()
    }
}

pub fn intersection_graph(objects: &[GeomObject]) -> Result<AdjacencyMatrix, OracleError> {
    intersection_graph_with_cap(objects, MAX_OBJECTS)
}

/// As [`intersection_graph`] with a lower cap; caps above 64 are clamped.
pub fn intersection_graph_with_cap(objects: &[GeomObject], cap: usize) -> Result<AdjacencyMatrix, OracleError> {
    let cap = cap.min(MAX_OBJECTS);
    if objects.len() > cap {
        return Err(OracleError::TooLarge { n: objects.len(), cap });
    }
    let kind = objects.first().map(GeomObject::kind);
    if let Some(expected) = kind {
        if let Some((position, o)) = objects.iter().enumerate().find(|(_, o)| o.kind() != expected) {
            return Err(OracleError::MixedKinds { position, expected, found: o.kind() });
        }
    }
    let mut g = AdjacencyMatrix::from_fn(objects.len(), |u, v| {
        objects[u].intersects(&objects[v]).expect("kinds checked above")
    })?;
    g.kind = kind;
    Ok(g)
}

pub fn max_independent_set(objects: &[GeomObject]) -> Result<Solution, OracleError> {
    Ok(intersection_graph(objects)?.max_independent_set())
}

pub fn max_clique(objects: &[GeomObject]) -> Result<Solution, OracleError> {
    Ok(intersection_graph(objects)?.max_clique())
}
