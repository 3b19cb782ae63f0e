//! Undirected simple-graph storage and the neighborhood queries used by the
//! utility functions, the engine, and the metrics.
//!
//! `NetworkState` is a value: queries never mutate, and an iteration step
//! produces a successor state via [`NetworkState::apply_changes`]. Neighbor
//! lists are kept sorted so candidate enumeration is deterministic, and a
//! dense adjacency bitmap backs O(1) edge tests (networks here are at most a
//! few hundred nodes, so the bitmap is a few KiB).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense agent identifier, `0..n-1`, stable for the lifetime of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub u32);

impl AgentId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for AgentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for AgentId {
    fn from(v: u32) -> Self {
        AgentId(v)
    }
}

/// Undirected simple graph over agents `0..n-1` plus the iteration counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkState {
    n: usize,
    /// Sorted neighbor list per vertex.
    neighbors: Vec<Vec<u32>>,
    /// Row-major adjacency bitmap, `row_words` words per vertex.
    bits: Vec<u64>,
    row_words: usize,
    edge_count: usize,
    iteration: u32,
}

impl NetworkState {
    /// The trivial network on `n` agents: no edges, iteration 0.
    pub fn empty(n: usize) -> Self {
        let row_words = n.div_ceil(64);
        NetworkState {
            n,
            neighbors: vec![Vec::new(); n],
            bits: vec![0u64; n * row_words],
            row_words,
            edge_count: 0,
            iteration: 0,
        }
    }

    /// Build a graph from an edge list. Rejects self-loops, duplicate edges,
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(AgentId, AgentId)]) -> Result<Self> {
        let mut g = NetworkState::empty(n);
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::data(format!("self-loop at agent {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::data(format!("duplicate edge ({u}, {v})")));
            }
            g.insert_edge(u.0, v.0);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn iteration(&self) -> u32 {
        self.iteration
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All agent ids, ascending.
    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.n as u32).map(AgentId)
    }

    fn check(&self, v: AgentId) -> Result<()> {
        if v.index() < self.n {
            Ok(())
        } else {
            Err(Error::InvalidAgent { id: v.0, n: self.n })
        }
    }

    #[inline]
    fn bit(&self, u: u32, v: u32) -> bool {
        let idx = u as usize * self.row_words + (v as usize >> 6);
        self.bits[idx] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn has_edge(&self, u: AgentId, v: AgentId) -> bool {
        debug_assert!(u.index() < self.n && v.index() < self.n);
        self.bit(u.0, v.0)
    }

    /// δ(v), the number of active connections of `v`.
    pub fn degree(&self, v: AgentId) -> Result<usize> {
        self.check(v)?;
        Ok(self.neighbors[v.index()].len())
    }

    /// Sorted neighbor ids of `v`. Callers in hot paths index directly.
    #[inline]
    pub fn neighbors(&self, v: AgentId) -> &[u32] {
        &self.neighbors[v.index()]
    }

    /// All undirected edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(AgentId, AgentId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n as u32 {
            for &v in &self.neighbors[u as usize] {
                if u < v {
                    out.push((AgentId(u), AgentId(v)));
                }
            }
        }
        out
    }

    /// `{ w : d_G(v, w) = 2 }`: union of neighbors' neighbors minus
    /// `N(v) ∪ {v}`. Sorted ascending.
    pub fn distance_two_candidates(&self, v: AgentId) -> Result<Vec<AgentId>> {
        self.check(v)?;
        let mut out: Vec<u32> = Vec::new();
        for &x in &self.neighbors[v.index()] {
            for &w in &self.neighbors[x as usize] {
                if w != v.0 && !self.bit(v.0, w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out.into_iter().map(AgentId).collect())
    }

    /// Δ_v: unordered pairs of neighbors of `v` that are themselves adjacent,
    /// i.e. the number of triangles `v` is part of.
    pub fn triangles_at(&self, v: AgentId) -> Result<usize> {
        self.check(v)?;
        let nbrs = &self.neighbors[v.index()];
        let mut count = 0;
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if self.bit(x, y) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// I_v: neighbors of `v` with no edge to any other neighbor of `v`
    /// (size-1 components of the subgraph induced by N(v)).
    pub fn isolated_neighbors(&self, v: AgentId) -> Result<usize> {
        self.check(v)?;
        let nbrs = &self.neighbors[v.index()];
        let mut count = 0;
        for &x in nbrs {
            if nbrs.iter().all(|&y| y == x || !self.bit(x, y)) {
                count += 1;
            }
        }
        Ok(count)
    }

    fn insert_edge(&mut self, u: u32, v: u32) {
        let set = |bits: &mut [u64], row_words: usize, a: u32, b: u32| {
            bits[a as usize * row_words + (b as usize >> 6)] |= 1u64 << (b & 63);
        };
        set(&mut self.bits, self.row_words, u, v);
        set(&mut self.bits, self.row_words, v, u);
        let nu = &mut self.neighbors[u as usize];
        nu.insert(nu.partition_point(|&x| x < v), v);
        let nv = &mut self.neighbors[v as usize];
        nv.insert(nv.partition_point(|&x| x < u), u);
        self.edge_count += 1;
    }

    fn remove_edge(&mut self, u: u32, v: u32) {
        let clear = |bits: &mut [u64], row_words: usize, a: u32, b: u32| {
            bits[a as usize * row_words + (b as usize >> 6)] &= !(1u64 << (b & 63));
        };
        clear(&mut self.bits, self.row_words, u, v);
        clear(&mut self.bits, self.row_words, v, u);
        let nu = &mut self.neighbors[u as usize];
        nu.remove(nu.binary_search(&v).expect("edge present"));
        let nv = &mut self.neighbors[v as usize];
        nv.remove(nv.binary_search(&u).expect("edge present"));
        self.edge_count -= 1;
    }

    /// Pure transition: returns the successor state with `deletions` removed
    /// and `additions` inserted, iteration incremented.
    ///
    /// Preconditions (violations are engine bugs, reported as contract
    /// errors): deletions are current edges, additions are not, and the two
    /// sets are disjoint. Deletions are applied first; the preconditions make
    /// the order unobservable.
    pub fn apply_changes(
        &self,
        deletions: &[(AgentId, AgentId)],
        additions: &[(AgentId, AgentId)],
    ) -> Result<NetworkState> {
        let mut next = self.clone();
        for &(u, v) in deletions {
            self.check(u)?;
            self.check(v)?;
            if !next.has_edge(u, v) {
                return Err(Error::contract(format!(
                    "deletion of absent edge ({u}, {v})"
                )));
            }
            next.remove_edge(u.0, v.0);
        }
        for &(u, v) in additions {
            self.check(u)?;
            self.check(v)?;
            if u == v {
                return Err(Error::contract(format!("self-loop addition at {u}")));
            }
            if self.has_edge(u, v) {
                return Err(Error::contract(format!(
                    "addition of existing edge ({u}, {v})"
                )));
            }
            if next.has_edge(u, v) {
                return Err(Error::contract(format!(
                    "duplicate addition of edge ({u}, {v})"
                )));
            }
            next.insert_edge(u.0, v.0);
        }
        next.iteration = self.iteration + 1;
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(v: u32) -> AgentId {
        AgentId(v)
    }

    fn triangle() -> NetworkState {
        NetworkState::from_edges(3, &[(id(0), id(1)), (id(1), id(2)), (id(0), id(2))]).unwrap()
    }

    #[test]
    fn degree_basic() {
        let g = NetworkState::empty(4);
        assert_eq!(g.degree(id(2)).unwrap(), 0);
        assert_eq!(triangle().degree(id(0)).unwrap(), 2);
        // star center with 5 leaves
        let star = NetworkState::from_edges(
            6,
            &[
                (id(0), id(1)),
                (id(0), id(2)),
                (id(0), id(3)),
                (id(0), id(4)),
                (id(0), id(5)),
            ],
        )
        .unwrap();
        assert_eq!(star.degree(id(0)).unwrap(), 5);
    }

    #[test]
    fn degree_out_of_range() {
        let g = NetworkState::empty(3);
        assert!(matches!(
            g.degree(id(3)),
            Err(Error::InvalidAgent { id: 3, n: 3 })
        ));
    }

    #[test]
    fn distance_two_on_paths() {
        let path3 = NetworkState::from_edges(3, &[(id(0), id(1)), (id(1), id(2))]).unwrap();
        assert_eq!(path3.distance_two_candidates(id(0)).unwrap(), vec![id(2)]);

        assert!(triangle().distance_two_candidates(id(0)).unwrap().is_empty());

        let path4 =
            NetworkState::from_edges(4, &[(id(0), id(1)), (id(1), id(2)), (id(2), id(3))]).unwrap();
        // d is at distance 3, not a candidate
        assert_eq!(path4.distance_two_candidates(id(0)).unwrap(), vec![id(2)]);
    }

    #[test]
    fn triangles_at_examples() {
        assert_eq!(triangle().triangles_at(id(0)).unwrap(), 1);
        let k4 = NetworkState::from_edges(
            4,
            &[
                (id(0), id(1)),
                (id(0), id(2)),
                (id(0), id(3)),
                (id(1), id(2)),
                (id(1), id(3)),
                (id(2), id(3)),
            ],
        )
        .unwrap();
        for v in 0..4 {
            assert_eq!(k4.triangles_at(id(v)).unwrap(), 3);
        }
        let path3 = NetworkState::from_edges(3, &[(id(0), id(1)), (id(1), id(2))]).unwrap();
        assert_eq!(path3.triangles_at(id(1)).unwrap(), 0);
    }

    #[test]
    fn isolated_neighbors_examples() {
        let star = NetworkState::from_edges(4, &[(id(0), id(1)), (id(0), id(2)), (id(0), id(3))])
            .unwrap();
        assert_eq!(star.isolated_neighbors(id(0)).unwrap(), 3);
        assert_eq!(triangle().isolated_neighbors(id(0)).unwrap(), 0);
        // v adjacent to x,y,z with a single edge (x,y): only z isolated
        let g = NetworkState::from_edges(
            4,
            &[(id(0), id(1)), (id(0), id(2)), (id(0), id(3)), (id(1), id(2))],
        )
        .unwrap();
        assert_eq!(g.isolated_neighbors(id(0)).unwrap(), 1);
    }

    #[test]
    fn apply_changes_identity_and_transitions() {
        let g = triangle();
        let same = g.apply_changes(&[], &[]).unwrap();
        assert_eq!(same.edges(), g.edges());
        assert_eq!(same.iteration(), 1);

        let path = g.apply_changes(&[(id(0), id(1))], &[]).unwrap();
        assert_eq!(path.edge_count(), 2);
        assert!(!path.has_edge(id(0), id(1)));
        // input state unmodified
        assert!(g.has_edge(id(0), id(1)));

        let two = NetworkState::empty(2);
        let joined = two.apply_changes(&[], &[(id(0), id(1))]).unwrap();
        assert_eq!(joined.edges(), vec![(id(0), id(1))]);
    }

    #[test]
    fn apply_changes_contract_errors() {
        let g = triangle();
        assert!(matches!(
            g.apply_changes(&[], &[(id(0), id(1))]),
            Err(Error::Contract(_))
        ));
        let two = NetworkState::empty(2);
        assert!(matches!(
            two.apply_changes(&[(id(0), id(1))], &[]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn adjacency_stays_symmetric() {
        let g = NetworkState::from_edges(5, &[(id(0), id(3)), (id(3), id(4)), (id(1), id(2))])
            .unwrap();
        let g = g
            .apply_changes(&[(id(3), id(4))], &[(id(0), id(4)), (id(2), id(4))])
            .unwrap();
        for u in g.agents() {
            for &w in g.neighbors(u) {
                assert!(g.neighbors(AgentId(w)).contains(&u.0));
                assert!(g.has_edge(u, AgentId(w)) && g.has_edge(AgentId(w), u));
            }
        }
    }
}
