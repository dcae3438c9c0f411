//! Finite loopless connected multigraphs and their Laplacians.
//!
//! Vertices are always `0..n` and every matrix or vector in the crate is
//! indexed in that order. Parallel edges are stored as a multiplicity per
//! unordered vertex pair.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;

/// A connected multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edge_count: usize,
    /// Sorted `(neighbor, multiplicity)` lists.
    adj: Vec<Vec<(usize, u64)>>,
    degree: Vec<u64>,
}

impl MultiGraph {
    /// Builds a graph from an explicit edge list; a repeated pair is a
    /// parallel edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &(u, v) in edges {
            *counts.entry((u, v)).or_insert(0u64) += 1;
        }
        Self::from_multiplicities(n, counts.into_iter().map(|((u, v), c)| (u, v, c)))
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Triples with the
    /// same unordered pair accumulate.
    pub fn from_multiplicities<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut pairs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (u, v, c) in triples {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if c == 0 {
                continue;
            }
            *pairs.entry((u.min(v), u.max(v))).or_insert(0) += c;
        }

        let mut adj = vec![Vec::new(); n];
        let mut degree = vec![0u64; n];
        let mut edge_count = 0usize;
        for (&(u, v), &c) in &pairs {
            adj[u].push((v, c));
            adj[v].push((u, c));
            degree[u] += c;
            degree[v] += c;
            edge_count += c as usize;
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let g = MultiGraph {
            n,
            edge_count,
            adj,
            degree,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.degree[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.adj[u][i].1)
            .unwrap_or(0)
    }

    /// Unordered vertex pairs `u < v` with their multiplicities.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, c)| (u, v, c))
        })
    }

    /// Every edge listed once per unit of multiplicity.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .flat_map(|(u, v, c)| std::iter::repeat_n((u, v), c as usize))
            .collect()
    }

    /// Breadth-first distances from `root`.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The Laplacian `Q`: degrees on the diagonal, minus edge multiplicities
    /// off it.
    pub fn laplacian(&self) -> IntegerMatrix {
        let mut q = IntegerMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            q[(v, v)] = BigInt::from(self.degree[v]);
            for &(w, c) in &self.adj[v] {
                q[(v, w)] = -BigInt::from(c);
            }
        }
        q
    }

    /// Computes `Q·x` from the adjacency lists without forming `Q`.
    pub fn laplacian_apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|v| {
                let mut acc = BigInt::from(self.degree[v]) * &x[v];
                for &(w, c) in &self.adj[v] {
                    acc -= &x[w] * c;
                }
                acc
            })
            .collect()
    }

    /// Parses the text format: a header `n m`, then `m` lines `u v`.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let [n, m] = parse_pair(header_line, header)?;

        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(line, text)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, &edges)
    }

    /// Writes the graph in the format read by [`MultiGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edge_list() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0usize; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid integer {field:?}"),
        })?;
    }
    Ok(out)
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Convenience wrapper around [`MultiGraph::new`].
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<MultiGraph> {
    MultiGraph::new(n, edges)
}

/// Named graph families used throughout tests, the corpus and the CLI.
pub mod families {
    use super::MultiGraph;

    /// Cycle `C_n` (`n >= 2`; `C_2` is a doubled edge).
    pub fn cycle(n: usize) -> MultiGraph {
        assert!(n >= 2, "cycle needs at least two vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::new(n, &edges).expect("cycles are connected")
    }

    pub fn path(n: usize) -> MultiGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        MultiGraph::new(n, &edges).expect("paths are connected")
    }

    pub fn complete(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        MultiGraph::new(n, &edges).expect("complete graphs are connected")
    }

    /// Two vertices joined by `m >= 1` parallel edges.
    pub fn banana(m: u64) -> MultiGraph {
        assert!(m >= 1, "banana graph needs at least one edge");
        MultiGraph::from_multiplicities(2, [(0, 1, m)]).expect("banana graphs are connected")
    }

    /// Wheel with hub `0` and rim `1..=k` (`k >= 3`).
    pub fn wheel(k: usize) -> MultiGraph {
        assert!(k >= 3, "wheel needs a rim of at least three vertices");
        let mut edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        edges.extend((1..=k).map(|i| (i, i % k + 1)));
        MultiGraph::new(k + 1, &edges).expect("wheels are connected")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(q: &IntegerMatrix) -> Vec<Vec<i64>> {
        (0..q.rows())
            .map(|i| {
                (0..q.cols())
                    .map(|j| i64::try_from(&q[(i, j)]).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn banana_and_triangle_build() {
        let b3 = build_graph(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(b3.edge_count(), 3);
        assert_eq!(b3.multiplicity(0, 1), 3);
        let c3 = build_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert_eq!(c3.degree(2), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_graph(2, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert_eq!(build_graph(3, &[(0, 1)]), Err(Error::Disconnected));
        assert_eq!(
            build_graph(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(build_graph(0, &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn single_vertex_is_connected() {
        let g = build_graph(1, &[]).unwrap();
        assert_eq!(int_rows(&g.laplacian()), vec![vec![0]]);
    }

    #[test]
    fn laplacian_examples() {
        let c3 = families::cycle(3);
        assert_eq!(
            int_rows(&c3.laplacian()),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        assert_eq!(
            int_rows(&families::banana(3).laplacian()),
            vec![vec![3, -3], vec![-3, 3]]
        );
        let k4 = int_rows(&families::complete(4).laplacian());
        for (i, row) in k4.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { 3 } else { -1 });
            }
        }
    }

    #[test]
    fn laplacian_apply_matches_matrix() {
        let g = families::wheel(5);
        let x: Vec<BigInt> = (0..6).map(|i| BigInt::from(i * i - 7)).collect();
        assert_eq!(g.laplacian_apply(&x), g.laplacian().mul_vec(&x));
    }

    #[test]
    fn parse_round_trip_with_comments() {
        let text = "# triangle with a doubled edge\n3 4\n\n0 1\n0 1\n# rim\n1 2\n2 0\n";
        let g = MultiGraph::parse(text).unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(MultiGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(MultiGraph::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            MultiGraph::parse("2 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MultiGraph::parse("2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            MultiGraph::parse("2 1\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(MultiGraph::parse("2 1\n1 1\n"), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn wheel_shape() {
        let w = families::wheel(4);
        assert_eq!(w.vertex_count(), 5);
        assert_eq!(w.edge_count(), 8);
        assert_eq!(w.degree(0), 4);
        assert_eq!(w.degree(1), 3);
    }
}
