//! Divisors, principal divisors and q-reduced representatives.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::linalg::solve_integer;

/// An integer combination of vertices, stored as one coefficient per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<BigInt>);

/// An integer-valued function on the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexFunction(Vec<BigInt>);

impl Divisor {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Divisor(coefficients)
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Divisor(coefficients.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![BigInt::zero(); n])
    }

    /// The divisor `(v)`.
    pub fn vertex(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.0[v] = BigInt::from(1);
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.0
    }

    pub fn degree(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Divisor {
        Divisor(self.0.iter().map(|x| x * k).collect())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }

    pub(crate) fn require_degree_zero(&self) -> Result<()> {
        let deg = self.degree();
        if deg.is_zero() {
            Ok(())
        } else {
            Err(Error::NonZeroDegree(deg))
        }
    }
}

impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Comma-separated integers, e.g. `"1,-1,0"`.
impl FromStr for Divisor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty divisor".into(),
            });
        }
        s.split(',')
            .map(|field| {
                field.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("invalid divisor coefficient {:?}", field.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Divisor)
    }
}

impl VertexFunction {
    pub fn new(values: Vec<BigInt>) -> Self {
        VertexFunction(values)
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        VertexFunction(values.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn degree(d: &Divisor) -> BigInt {
    d.degree()
}

/// `div(f)`, evaluated edge by edge: `ord_v(f) = Σ_{vw ∈ E} (f(v) - f(w))`.
pub fn div_of_function(g: &MultiGraph, f: &VertexFunction) -> Result<Divisor> {
    let n = g.vertex_count();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let mut out = vec![BigInt::zero(); n];
    for (u, v, c) in g.pairs() {
        let diff = (&f.0[u] - &f.0[v]) * c;
        out[v] -= &diff;
        out[u] += diff;
    }
    Ok(Divisor(out))
}

/// Returns `f` with `div(f) = D` (normalized to `f(0) = 0`), or `None` if `D`
/// is not principal.
pub fn is_principal(g: &MultiGraph, d: &Divisor) -> Result<Option<VertexFunction>> {
    d.check_len(g.vertex_count())?;
    if !d.degree().is_zero() {
        return Ok(None);
    }
    Ok(solve_integer(&g.laplacian(), &d.0)?.map(|mut f| {
        let base = f[0].clone();
        for x in f.iter_mut() {
            *x -= &base;
        }
        VertexFunction(f)
    }))
}

/// Applies the firing script `h`: every vertex `v` fires `h(v)` times.
pub(crate) fn fire_script(g: &MultiGraph, d: &mut [BigInt], h: &[BigInt]) {
    for (x, qh) in d.iter_mut().zip(g.laplacian_apply(h)) {
        *x -= qh;
    }
}

/// Coefficient type for the burning loop: `i64` when everything fits,
/// `BigInt` otherwise.
trait Chips: Clone + Ord + Integer + Signed + FromPrimitive + AddAssign + SubAssign {}

impl<T: Clone + Ord + Integer + Signed + FromPrimitive + AddAssign + SubAssign> Chips for T {}

/// Scratch space for repeated burning tests.
struct Burner<T> {
    burnt: Vec<bool>,
    heat: Vec<T>,
    stack: Vec<usize>,
}

impl<T: Chips> Burner<T> {
    fn new(n: usize) -> Self {
        Burner {
            burnt: vec![false; n],
            heat: vec![T::zero(); n],
            stack: Vec::new(),
        }
    }

    /// Dhar's burning test. Fills `set` with the vertices that did not
    /// burn; it stays empty when `d` (nonnegative off `q`) is q-reduced.
    fn unburnt(&mut self, g: &MultiGraph, d: &[T], q: usize, set: &mut Vec<usize>) {
        self.burnt.fill(false);
        self.heat.fill(T::zero());
        self.stack.push(q);
        self.burnt[q] = true;
        while let Some(v) = self.stack.pop() {
            for &(w, c) in g.neighbors(v) {
                if self.burnt[w] {
                    continue;
                }
                self.heat[w] += T::from_u64(c).expect("multiplicity fits");
                if self.heat[w] > d[w] {
                    self.burnt[w] = true;
                    self.stack.push(w);
                }
            }
        }
        set.clear();
        set.extend((0..d.len()).filter(|&v| !self.burnt[v]));
    }
}

fn unburnt<T: Chips>(g: &MultiGraph, d: &[T], q: usize) -> Vec<usize> {
    let mut set = Vec::new();
    Burner::new(g.vertex_count()).unburnt(g, d, q, &mut set);
    set
}

fn burn_loop<T: Chips>(g: &MultiGraph, d: &mut [T], q: usize) {
    let n = g.vertex_count();
    let mut burner = Burner::new(n);
    let mut in_set = vec![false; n];
    let mut set = Vec::new();
    let mut outflow = Vec::new();
    loop {
        burner.unburnt(g, d, q, &mut set);
        if set.is_empty() {
            return;
        }
        for &v in &set {
            in_set[v] = true;
        }
        outflow.clear();
        outflow.extend(set.iter().map(|&v| {
            let out: u64 = g.neighbors(v).iter().filter(|&&(w, _)| !in_set[w]).map(|&(_, c)| c).sum();
            T::from_u64(out).expect("degree fits")
        }));
        let times = set
            .iter()
            .zip(&outflow)
            .filter(|(_, out)| !out.is_zero())
            .map(|(&v, out)| d[v].div_floor(out))
            .min()
            .expect("the unburnt set has an edge to q's side");
        debug_assert!(times.is_positive());
        for (&v, out) in set.iter().zip(&outflow) {
            if out.is_zero() {
                continue;
            }
            d[v] -= times.clone() * out.clone();
            for &(w, c) in g.neighbors(v) {
                if !in_set[w] {
                    d[w] += times.clone() * T::from_u64(c).expect("multiplicity fits");
                }
            }
        }
        for &v in &set {
            in_set[v] = false;
        }
    }
}

/// Runs the burning loop on a divisor that is already nonnegative off `q`:
/// each round fires the unburnt set as many times as stays legal.
pub(crate) fn burn_to_reduced(g: &MultiGraph, d: &mut [BigInt], q: usize) {
    // Chips only move, so every coefficient stays within the total
    // absolute mass.
    let mass: BigInt = d.iter().map(Signed::abs).sum();
    let fits = mass < BigInt::from(i64::MAX / 4) && g.edge_count() < (i64::MAX / 4) as usize;
    if fits {
        let mut small: Vec<i64> = d.iter().map(|x| x.to_i64().expect("bounded by mass")).collect();
        burn_loop(g, &mut small, q);
        for (x, s) in d.iter_mut().zip(small) {
            *x = BigInt::from(s);
        }
    } else {
        burn_loop(g, d, q);
    }
}

/// Makes every coefficient off `q` nonnegative by firing the nested balls
/// around `q`, outermost shell first.
fn lift_off_q(g: &MultiGraph, d: &mut [BigInt], q: usize) {
    let n = g.vertex_count();
    let dist = g.distances_from(q);
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for v in 0..n {
        layers[dist[v]].push(v);
    }

    // shell_fires[k]: how often the ball of radius k-1 fires.
    let mut shell_fires = vec![BigInt::zero(); depth + 2];
    for k in (1..=depth).rev() {
        let mut need = BigInt::zero();
        for &v in &layers[k] {
            let (mut inward, mut outward) = (0u64, 0u64);
            for &(w, c) in g.neighbors(v) {
                if dist[w] + 1 == k {
                    inward += c;
                } else if dist[w] == k + 1 {
                    outward += c;
                }
            }
            let deficit = &shell_fires[k + 1] * outward - &d[v];
            if deficit.is_positive() {
                need = need.max(deficit.div_ceil(&BigInt::from(inward)));
            }
        }
        shell_fires[k] = need;
    }

    let mut script = vec![BigInt::zero(); n];
    for v in 0..n {
        for t in &shell_fires[dist[v] + 1..=depth] {
            script[v] += t;
        }
    }
    fire_script(g, d, &script);
}

/// The unique q-reduced divisor equivalent to `d`, by chip-firing alone.
pub fn dhar_reduce(g: &MultiGraph, d: &Divisor, q: usize) -> Result<Divisor> {
    let n = g.vertex_count();
    d.check_len(n)?;
    if q >= n {
        return Err(Error::VertexOutOfRange { vertex: q, n });
    }
    let mut work = d.0.clone();
    lift_off_q(g, &mut work, q);
    burn_to_reduced(g, &mut work, q);
    Ok(Divisor(work))
}

/// Whether `d` is q-reduced: nonnegative off `q` and everything burns.
pub fn is_q_reduced(g: &MultiGraph, d: &Divisor, q: usize) -> bool {
    d.len() == g.vertex_count()
        && d.0.iter().enumerate().all(|(v, x)| v == q || !x.is_negative())
        && unburnt(g, &d.0, q).is_empty()
}

/// `D1 ~ D2`, decided by q-reduction and by integer solving; the two must
/// agree.
pub fn equivalent(g: &MultiGraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    let n = g.vertex_count();
    d1.check_len(n)?;
    d2.check_len(n)?;
    let diff = d1 - d2;
    let by_reduction = dhar_reduce(g, &diff, 0)?.is_zero();
    let by_solving = is_principal(g, &diff)?.is_some();
    assert_eq!(
        by_reduction, by_solving,
        "q-reduction and integer solving disagree on {diff}"
    );
    Ok(by_reduction)
}
