//! Deliberately naive reference computations for small graphs.
//!
//! Nothing here uses the Laplacian inverse, the Smith form, or the
//! pairing. Group elements are found by listing candidate divisors and
//! testing every vertex subset for a legal firing.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::divisor::{dhar_reduce, Divisor};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::jacobian::{spanning_tree_count, BASE_VERTEX};

pub const DEFAULT_BOUND: u64 = 2000;
const MAX_SUBSET_VERTICES: usize = 20;
const MAX_TREE_EDGES: usize = 24;

/// The whole of `Jac(G)` as explicit reduced representatives.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<Divisor>,
    index: HashMap<Divisor, usize>,
    add: Vec<Vec<usize>>,
    orders: Vec<u64>,
    zero: usize,
    graph: MultiGraph,
}

/// True when some nonempty `A ⊆ V \ {q}` can fire without any vertex of
/// `A` going negative, checked over every subset.
fn some_set_can_fire(g: &MultiGraph, d: &[i64], q: usize) -> bool {
    let others: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != q).collect();
    let mut member = vec![false; g.vertex_count()];
    (1u32..1 << others.len()).any(|mask| {
        for (bit, &v) in others.iter().enumerate() {
            member[v] = mask >> bit & 1 == 1;
        }
        others.iter().filter(|&&v| member[v]).all(|&v| {
            let out: u64 = g.neighbors(v).iter().filter(|(w, _)| !member[*w]).map(|&(_, c)| c).sum();
            d[v] >= out as i64
        })
    })
}

/// Enumerates `Jac(G)` when `κ(G) <= bound`.
pub fn enumerate_group(g: &MultiGraph, bound: u64) -> Result<GroupTable> {
    let kappa = spanning_tree_count(g);
    let n = g.vertex_count();
    if kappa > BigInt::from(bound) {
        return Err(Error::TooLarge { what: "group order", limit: bound });
    }
    if n > MAX_SUBSET_VERTICES + 1 {
        return Err(Error::TooLarge {
            what: "vertex count",
            limit: MAX_SUBSET_VERTICES as u64 + 1,
        });
    }
    let q = BASE_VERTEX;
    let mut elements = Vec::new();
    let mut current = vec![0i64; n];
    // odometer over off-q coefficients in [0, deg(v) - 1]
    loop {
        let rest: i64 = current.iter().sum::<i64>() - current[q];
        current[q] = -rest;
        if !some_set_can_fire(g, &current, q) {
            elements.push(Divisor::from_i64s(&current));
        }
        let mut v = 0;
        loop {
            if v == n {
                return finish(g, elements);
            }
            if v != q {
                current[v] += 1;
                if (current[v] as u64) < g.degree(v) {
                    break;
                }
                current[v] = 0;
            }
            v += 1;
        }
    }
}

fn finish(g: &MultiGraph, elements: Vec<Divisor>) -> Result<GroupTable> {
    let index: HashMap<Divisor, usize> = elements.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let k = elements.len();
    let mut add = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in i..k {
            let sum = dhar_reduce(g, &(&elements[i] + &elements[j]), BASE_VERTEX)?;
            let idx = *index.get(&sum).expect("sum of reduced divisors reduces to a listed element");
            add[i][j] = idx;
            add[j][i] = idx;
        }
    }
    let zero = index[&Divisor::zero(g.vertex_count())];
    let orders = (0..k)
        .map(|i| {
            let (mut acc, mut ord) = (i, 1u64);
            while acc != zero {
                acc = add[acc][i];
                ord += 1;
            }
            ord
        })
        .collect();
    Ok(GroupTable {
        elements,
        index,
        add,
        orders,
        zero,
        graph: g.clone(),
    })
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Divisor] {
        &self.elements
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    pub fn neg(&self, i: usize) -> usize {
        (0..self.len()).find(|&j| self.add[i][j] == self.zero).expect("group has inverses")
    }

    pub fn scale(&self, i: usize, k: u64) -> usize {
        let k = k % self.orders[i];
        (0..k).fold(self.zero, |acc, _| self.add[acc][i])
    }

    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// Index of the class of any degree-zero divisor.
    pub fn class_of(&self, d: &Divisor) -> Result<usize> {
        d.check_len(self.graph.vertex_count())?;
        d.require_degree_zero()?;
        let reduced = dhar_reduce(&self.graph, d, BASE_VERTEX)?;
        Ok(self.index[&reduced])
    }

    /// Identity, inverses, commutativity, and associativity (exhaustive for
    /// up to 60 elements, on a fixed sample of triples beyond that).
    pub fn is_abelian_group(&self) -> bool {
        let k = self.len();
        let ident = (0..k).all(|i| self.add[i][self.zero] == i);
        let inverses = (0..k).all(|i| self.add[i].contains(&self.zero));
        let comm = (0..k).all(|i| (0..k).all(|j| self.add[i][j] == self.add[j][i]));
        let step = if k <= 60 { 1 } else { k / 37 + 1 };
        let assoc = (0..k).step_by(step).all(|a| {
            (0..k).step_by(step).all(|b| {
                (0..k)
                    .step_by(step)
                    .all(|c| self.add[self.add[a][b]][c] == self.add[a][self.add[b][c]])
            })
        });
        ident && inverses && comm && assoc
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_census(&self) -> Vec<(u64, usize)> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_default() += 1;
        }
        let mut out: Vec<_> = counts.into_iter().collect();
        out.sort();
        out
    }
}

/// Smallest `k >= 0` with `k·base ~ target`, by scanning multiples.
pub fn brute_force_dlp(table: &GroupTable, base: &Divisor, target: &Divisor) -> Result<BigInt> {
    let b = table.class_of(base)?;
    let t = table.class_of(target)?;
    let mut acc = table.zero;
    for k in 0..table.order(b) {
        if acc == t {
            return Ok(BigInt::from(k));
        }
        acc = table.add[acc][b];
    }
    Err(Error::NoSolution)
}

/// Counts spanning trees by trying every set of edges, with parallel edges
/// counted separately.
pub fn spanning_trees_by_enumeration(g: &MultiGraph) -> Result<BigInt> {
    let edges = g.edge_list();
    if edges.len() > MAX_TREE_EDGES {
        return Err(Error::TooLarge {
            what: "edge count",
            limit: MAX_TREE_EDGES as u64,
        });
    }
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let count = forests(&edges, 0, n - 1, &mut parent);
    Ok(BigInt::from(count))
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

/// Ways to extend the current forest by `need` more edges from
/// `edges[from..]` without closing a cycle.
fn forests(edges: &[(usize, usize)], from: usize, need: usize, parent: &mut Vec<usize>) -> u64 {
    if need == 0 {
        return 1;
    }
    if edges.len() - from < need {
        return 0;
    }
    let (u, v) = edges[from];
    let mut total = forests(edges, from + 1, need, parent);
    let (ru, rv) = (find(parent, u), find(parent, v));
    if ru != rv {
        parent[ru] = rv;
        total += forests(edges, from + 1, need - 1, parent);
        parent[ru] = ru;
    }
    total
}
