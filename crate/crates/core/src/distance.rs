//! Hop distances, connectivity and exact diameters by breadth-first search.

use std::collections::VecDeque;

use crate::{Error, Graph, Result};

/// Hop counts from one source. Unreachable vertices hold `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceReport {
    pub fn to(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    /// Largest finite distance from the source.
    pub fn eccentricity(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Diameter and every unordered pair `(u, v)`, `u < v`, attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterResult {
    pub diameter: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Hop counts from `source` to every vertex.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<DistanceReport> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: source,
            n: g.n(),
        });
    }
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u].map(|d| d + 1);
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    Ok(DistanceReport { source, dist })
}

pub fn is_connected(g: &Graph) -> bool {
    bfs_distances(g, 0)
        .map(|r| r.dist.iter().all(Option::is_some))
        .unwrap_or(false)
}

pub fn is_tree(g: &Graph) -> bool {
    g.edge_count() + 1 == g.n() && is_connected(g)
}

/// Component index per vertex, numbered in order of lowest vertex.
pub fn components(g: &Graph) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for start in 0..g.n() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// All-pairs distance matrix, row `u` = distances from `u`.
pub fn all_pairs(g: &Graph) -> Result<Vec<Vec<usize>>> {
    (0..g.n())
        .map(|s| {
            let report = bfs_distances(g, s)?;
            report
                .dist
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::Disconnected)
        })
        .collect()
}

/// Exact diameter with all attaining pairs (one BFS per vertex).
pub fn diameter(g: &Graph) -> Result<DiameterResult> {
    let table = all_pairs(g)?;
    let diameter = table.iter().flatten().copied().max().unwrap_or(0);
    let pairs = if g.n() < 2 {
        Vec::new()
    } else {
        table
            .iter()
            .enumerate()
            .flat_map(|(u, row)| {
                row.iter()
                    .enumerate()
                    .skip(u + 1)
                    .filter(move |&(_, &d)| d == diameter)
                    .map(move |(v, _)| (u, v))
            })
            .collect()
    };
    Ok(DiameterResult { diameter, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_path, build_rose, build_star, RoseParams};

    #[test]
    fn rose_distances_to_stem_tip() {
        let params = RoseParams::new(11, 5).unwrap();
        let g = build_rose(params);
        let from_leaf = bfs_distances(&g, params.leaf_tip()).unwrap();
        assert_eq!(from_leaf.to(params.stem_tip()), Some(8));
        for petal in params.petal_range() {
            let r = bfs_distances(&g, petal).unwrap();
            assert_eq!(r.to(params.stem_tip()), Some(7));
        }
    }

    #[test]
    fn path_distances() {
        let g = build_path(5).unwrap();
        let r = bfs_distances(&g, 0).unwrap();
        assert_eq!(r.dist, vec![Some(0), Some(1), Some(2), Some(3), Some(4)]);
        assert!(bfs_distances(&g, 5).is_err());
    }

    #[test]
    fn rose_diameters() {
        let p = RoseParams::new(11, 5).unwrap();
        let d = diameter(&build_rose(p)).unwrap();
        assert_eq!(d.diameter, 8);
        assert_eq!(d.pairs, vec![(p.leaf_tip(), p.stem_tip())]);

        let p = RoseParams::new(1, 1).unwrap();
        let d = diameter(&build_rose(p)).unwrap();
        assert_eq!(d.diameter, 5);
        assert_eq!(d.pairs, vec![(0, 6)]);
    }

    #[test]
    fn path_and_star_diameters() {
        for n in 2..10 {
            let d = diameter(&build_path(n).unwrap()).unwrap();
            assert_eq!(d.diameter, n - 1);
            assert_eq!(d.pairs, vec![(0, n - 1)]);
        }
        assert_eq!(diameter(&build_star(4).unwrap()).unwrap().diameter, 2);
        let single = diameter(&build_path(1).unwrap()).unwrap();
        assert_eq!((single.diameter, single.pairs.len()), (0, 0));
    }

    #[test]
    fn connectivity_and_trees() {
        assert!(is_tree(&build_rose(RoseParams::new(3, 5).unwrap())));
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_connected(&cycle));
        assert!(!is_tree(&cycle));
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_connected(&split));
        assert_eq!(components(&split), vec![0, 0, 1, 1]);
        assert_eq!(diameter(&split), Err(Error::Disconnected));
        assert!(is_connected(&build_path(1).unwrap()));
    }
}
