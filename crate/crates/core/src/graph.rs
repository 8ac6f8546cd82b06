//! Simple undirected graphs and deterministic generators.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Range;

use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted and symmetric; there are no self-loops or
/// parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adjacency,
            edge_count: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Star with hub `0` and leaves `1..=k`.
pub fn build_star(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("star needs k >= 1 leaves".into()));
    }
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &edges)
}

/// Complete graph on `n` vertices.
pub fn build_complete(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Petal count and stem length of a Fiedler rose.
///
/// Vertex layout (0-based): a path `0..=3+s` whose first four vertices form
/// the leaf and the remaining `s` the stem, a hub `4+s` attached to the
/// junction `3`, and `p` petals `5+s..5+s+p` hanging off the hub. The
/// 1-based vertex `k` of the original MATLAB listing is vertex `k-1` here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoseParams {
    petals: usize,
    stem: usize,
}

impl RoseParams {
    pub fn new(petals: usize, stem: usize) -> Result<Self> {
        if petals < 1 || stem < 1 {
            return Err(Error::InvalidParameter(format!(
                "rose needs p >= 1 and s >= 1 (got p={petals}, s={stem})"
            )));
        }
        Ok(Self { petals, stem })
    }

    pub fn petals(&self) -> usize {
        self.petals
    }

    pub fn stem(&self) -> usize {
        self.stem
    }

    pub fn vertex_count(&self) -> usize {
        5 + self.petals + self.stem
    }

    pub fn leaf_tip(&self) -> usize {
        0
    }

    pub fn junction(&self) -> usize {
        3
    }

    pub fn stem_tip(&self) -> usize {
        3 + self.stem
    }

    pub fn hub(&self) -> usize {
        4 + self.stem
    }

    pub fn petal_range(&self) -> Range<usize> {
        5 + self.stem..5 + self.stem + self.petals
    }

    /// Leaf and stem vertices in path order, leaf tip first.
    pub fn path_vertices(&self) -> Range<usize> {
        0..4 + self.stem
    }
}

pub fn build_rose(params: RoseParams) -> Graph {
    let hub = params.hub();
    let mut edges: Vec<_> = (1..hub).map(|i| (i - 1, i)).collect();
    edges.push((params.junction(), hub));
    edges.extend(params.petal_range().map(|petal| (hub, petal)));
    Graph::from_edges(params.vertex_count(), &edges).expect("rose construction is a simple graph")
}

/// Uniform random labeled tree on `n` vertices, decoded from a Prüfer
/// sequence drawn with [`SplitMix64`] seeded by `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("tree needs n >= 1".into()));
    }
    if n <= 2 {
        return build_path(n);
    }
    let mut rng = SplitMix64::new(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
    Graph::from_edges(n, &prufer_decode(n, &code))
}

/// Decodes a Prüfer sequence of length `n - 2` into the tree's edges.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf.min(c), leaf.max(c)));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a.min(b), a.max(b)));
    edges
}
