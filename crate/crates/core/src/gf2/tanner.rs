use std::collections::VecDeque;

use super::BinaryMatrix;

/// Bipartite check/variable adjacency of a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    check_neighbors: Vec<Vec<usize>>,
    var_neighbors: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &BinaryMatrix) -> Self {
        let check_neighbors: Vec<Vec<usize>> = (0..h.rows()).map(|i| h.row_support(i)).collect();
        let mut var_neighbors = vec![Vec::new(); h.cols()];
        for (i, row) in check_neighbors.iter().enumerate() {
            for &j in row {
                var_neighbors[j].push(i);
            }
        }
        Self {
            check_neighbors,
            var_neighbors,
        }
    }

    pub fn num_checks(&self) -> usize {
        self.check_neighbors.len()
    }

    pub fn num_vars(&self) -> usize {
        self.var_neighbors.len()
    }

    /// `N_i`: variables attached to check `i`.
    pub fn check_neighbors(&self, i: usize) -> &[usize] {
        &self.check_neighbors[i]
    }

    /// `N_j`: checks attached to variable `j`.
    pub fn var_neighbors(&self, j: usize) -> &[usize] {
        &self.var_neighbors[j]
    }

    pub fn check_degree(&self, i: usize) -> usize {
        self.check_neighbors[i].len()
    }

    pub fn var_degree(&self, j: usize) -> usize {
        self.var_neighbors[j].len()
    }

    /// Length of the shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.num_vars();
        let total = n + self.num_checks();
        // node ids: variables 0..n, checks n..
        let neighbors = |v: usize| -> Box<dyn Iterator<Item = usize> + '_> {
            if v < n {
                Box::new(self.var_neighbors[v].iter().map(move |&c| c + n))
            } else {
                Box::new(self.check_neighbors[v - n].iter().copied())
            }
        };
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        for s in 0..total {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for v in neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                        break 'bfs;
                    }
                }
            }
        }
        best
    }
}
