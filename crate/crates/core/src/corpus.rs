//! Built-in test corpus: every connected loopless multigraph with at most
//! four vertices and six edges (one per isomorphism class), followed by
//! the cycles `C3..C8`, `K4`, `K5` and the banana graphs `B2..B6`.

use std::collections::BTreeSet;

use crate::graph::{families, MultiGraph};

const MAX_VERTICES: usize = 4;
const MAX_EDGES: u64 = 6;

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: MultiGraph,
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                q
            })
        })
        .collect()
}

/// Lexicographically smallest multiplicity vector over all relabelings.
fn canonical(n: usize, mult: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    let pairs = pair_list(n);
    let slot = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    perms
        .iter()
        .map(|p| {
            let mut out = vec![0; mult.len()];
            for (k, &(u, v)) in pairs.iter().enumerate() {
                out[slot(p[u], p[v])] = mult[k];
            }
            out
        })
        .min()
        .unwrap_or_default()
}

fn name_for(n: usize, mult: &[u64]) -> String {
    let edges: Vec<String> = pair_list(n)
        .iter()
        .zip(mult)
        .filter(|(_, &c)| c > 0)
        .map(|(&(u, v), &c)| if c == 1 { format!("{u}{v}") } else { format!("{u}{v}x{c}") })
        .collect();
    format!("n{n}[{}]", edges.join(","))
}

/// One representative per isomorphism class of connected multigraphs
/// with `n <= 4` vertices and `m <= 6` edges.
pub fn small_multigraphs() -> Vec<CorpusGraph> {
    let mut out = Vec::new();
    for n in 1..=MAX_VERTICES {
        let pairs = pair_list(n);
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut mult = vec![0u64; pairs.len()];
        loop {
            let total: u64 = mult.iter().sum();
            if total <= MAX_EDGES {
                let triples = pairs.iter().zip(&mult).map(|(&(u, v), &c)| (u, v, c));
                if let Ok(graph) = MultiGraph::from_multiplicities(n, triples) {
                    let key = canonical(n, &mult, &perms);
                    if seen.insert(key.clone()) {
                        out.push(CorpusGraph {
                            name: name_for(n, &key),
                            graph,
                        });
                    }
                }
            }
            // odometer with digits in 0..=MAX_EDGES
            let Some(k) = mult.iter().position(|&c| c < MAX_EDGES) else {
                break;
            };
            mult[k] += 1;
            mult[..k].iter_mut().for_each(|c| *c = 0);
        }
    }
    out
}

pub fn named_families() -> Vec<CorpusGraph> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push(CorpusGraph {
            name: format!("C{n}"),
            graph: families::cycle(n),
        });
    }
    for n in [4, 5] {
        out.push(CorpusGraph {
            name: format!("K{n}"),
            graph: families::complete(n),
        });
    }
    for m in 2..=6 {
        out.push(CorpusGraph {
            name: format!("B{m}"),
            graph: families::banana(m),
        });
    }
    out
}

/// The full corpus. Named graphs also appear among the small ones when
/// they fit, and are kept under both names.
pub fn corpus() -> Vec<CorpusGraph> {
    let mut all = small_multigraphs();
    all.extend(named_families());
    all
}
