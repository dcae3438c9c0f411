//! Generalized inverses of the Laplacian and the monodromy pairing
//! `Jac(G) × Jac(G) → Q/Z`.
//!
//! Any `L` with `Q·L·Q = Q` computes the pairing as `[D1]ᵀ·L·[D2] mod Z`.
//! Two constructions are provided: the padded inverse of a principal
//! `(n-1)`-minor, and the Moore–Penrose pseudoinverse
//! `(Q + J/n)⁻¹ - J/n`. [`pairing_by_definition`] evaluates the pairing
//! from its potential-theoretic definition instead and serves as the
//! independent cross-check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisor::{Divisor, VertexFunction};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::linalg::{inverse_parts, smith_normal_form, solve_with, IntegerMatrix, RationalMatrix, SmithDecomposition};

/// Which construction produced a [`GeneralizedInverse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InverseKind {
    /// Inverse of `Q` with row and column `i` deleted, padded with zeros.
    Minor(usize),
    MoorePenrose,
    /// Transpose of another generalized inverse.
    Transposed,
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseKind::Minor(i) => write!(f, "minor:{i}"),
            InverseKind::MoorePenrose => f.write_str("mp"),
            InverseKind::Transposed => f.write_str("transposed"),
        }
    }
}

/// A matrix `L` with `Q·L·Q = Q`, stored as an integer matrix over one
/// positive common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedInverse {
    kind: InverseKind,
    numer: IntegerMatrix,
    denom: BigInt,
}

impl GeneralizedInverse {
    fn checked(g: &MultiGraph, kind: InverseKind, numer: IntegerMatrix, denom: BigInt) -> Self {
        let l = GeneralizedInverse { kind, numer, denom };
        assert!(l.satisfies(g), "{kind} inverse fails Q·L·Q = Q");
        l
    }

    pub fn kind(&self) -> InverseKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.numer.rows()
    }

    /// Integer numerator matrix; `L = numerator / denominator`.
    pub fn numerator(&self) -> &IntegerMatrix {
        &self.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.numer[(i, j)].clone(), self.denom.clone())
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.numer.map(|x| BigRational::new(x.clone(), self.denom.clone()))
    }

    pub fn transpose(&self) -> GeneralizedInverse {
        GeneralizedInverse {
            kind: InverseKind::Transposed,
            numer: self.numer.transpose(),
            denom: self.denom.clone(),
        }
    }

    /// Exact check of `Q·L·Q = Q`, using the adjacency lists for both
    /// products with `Q`.
    pub fn satisfies(&self, g: &MultiGraph) -> bool {
        let n = g.vertex_count();
        if self.size() != n || !self.denom.is_positive() {
            return false;
        }
        // Q·X column by column, then (Q·X)·Q = (Q·(Q·X)ᵀ)ᵀ since Q is symmetric.
        let qx = apply_left(g, &self.numer);
        let qxq = apply_left(g, &qx.transpose()).transpose();
        let target = g.laplacian();
        (0..n).all(|i| (0..n).all(|j| qxq[(i, j)] == &target[(i, j)] * &self.denom))
    }

    /// `L·x` as `(numerator vector, denominator)`.
    pub fn apply(&self, x: &[BigInt]) -> (Vec<BigInt>, BigInt) {
        (self.numer.mul_vec(x), self.denom.clone())
    }
}

fn apply_left(g: &MultiGraph, x: &IntegerMatrix) -> IntegerMatrix {
    let n = g.vertex_count();
    let mut out = IntegerMatrix::zeros(n, x.cols());
    for v in 0..n {
        let deg = BigInt::from(g.degree(v));
        for j in 0..x.cols() {
            let mut acc = &deg * &x[(v, j)];
            for &(w, c) in g.neighbors(v) {
                acc -= &x[(w, j)] * c;
            }
            out[(v, j)] = acc;
        }
    }
    out
}

/// Padded inverse of the Laplacian with row and column `i` removed.
pub fn gen_inverse_minor(g: &MultiGraph, i: usize) -> Result<GeneralizedInverse> {
    let n = g.vertex_count();
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    let minor = g.laplacian().delete_row_col(i, i);
    let (x, d) = inverse_parts(&minor).expect("principal minors of a connected Laplacian are nonsingular");
    let mut padded = IntegerMatrix::zeros(n, n);
    let skip = |k: usize| if k < i { k } else { k + 1 };
    for r in 0..n - 1 {
        for c in 0..n - 1 {
            padded[(skip(r), skip(c))] = x[(r, c)].clone();
        }
    }
    Ok(GeneralizedInverse::checked(g, InverseKind::Minor(i), padded, d))
}

/// The Moore–Penrose pseudoinverse `Q⁺ = (Q + J/n)⁻¹ - J/n`.
pub fn moore_penrose(g: &MultiGraph) -> GeneralizedInverse {
    let n = g.vertex_count();
    let nb = BigInt::from(n);
    // n·Q + J is integral and (Q + J/n)⁻¹ = n·(n·Q + J)⁻¹.
    let shifted = g.laplacian().map(|x| x * &nb + 1);
    let (x, d) = inverse_parts(&shifted).expect("Q + J/n is nonsingular");
    // Q⁺ = n·X/d - 1/n = (n²·X - d) / (n·d)
    let n2 = &nb * &nb;
    let mut numer = x.map(|v| v * &n2 - &d);
    let mut denom = &nb * &d;
    let common = numer.iter_rows().flatten().fold(denom.clone(), |acc, v| acc.gcd(v));
    if !common.is_one() {
        numer = numer.map(|v| v / &common);
        denom /= &common;
    }
    GeneralizedInverse::checked(g, InverseKind::MoorePenrose, numer, denom)
}

/// An element of `Q/Z`, kept as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingValue(BigRational);

impl PairingValue {
    pub fn new(value: BigRational) -> Self {
        let (n, d) = (value.numer(), value.denom());
        PairingValue(BigRational::new(n.mod_floor(d), d.clone()))
    }

    pub fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        Self::new(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        PairingValue(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn add(&self, other: &PairingValue) -> PairingValue {
        Self::new(&self.0 + &other.0)
    }

    pub fn scale(&self, k: &BigInt) -> PairingValue {
        Self::new(&self.0 * BigRational::from_integer(k.clone()))
    }
}

/// Serialized as `p/q` in lowest terms with `0 <= p < q`.
impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for PairingValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            message: format!("invalid pairing value {s:?}"),
        };
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if !q.is_positive() {
            return Err(bad());
        }
        Ok(PairingValue::from_ratio(p, q))
    }
}

/// `⟨D1, D2⟩ = [D1]ᵀ·L·[D2] mod Z`.
pub fn monodromy_pairing(d1: &Divisor, d2: &Divisor, l: &GeneralizedInverse) -> Result<PairingValue> {
    d1.check_len(l.size())?;
    d2.check_len(l.size())?;
    d1.require_degree_zero()?;
    d2.require_degree_zero()?;
    let (ld2, den) = l.apply(d2.coefficients());
    let num: BigInt = d1
        .coefficients()
        .iter()
        .zip(&ld2)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| a * b)
        .sum();
    Ok(PairingValue::from_ratio(num, den))
}

/// Evaluates the pairing straight from its definition: find the least
/// `m ≥ 1` with `m·D2 = div(f)`, then return `(1/m)·Σ D1(v)·f(v) mod Z`.
///
/// Keeps a Smith decomposition of the Laplacian so many pairs on one graph
/// can be evaluated cheaply. Uses no generalized inverse.
#[derive(Clone, Debug)]
pub struct DefinitionalPairing {
    n: usize,
    snf: SmithDecomposition,
}

/// `m` and `f` with `m·D = div(f)`, `m` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub order: BigInt,
    pub function: VertexFunction,
}

impl DefinitionalPairing {
    pub fn new(g: &MultiGraph) -> Self {
        DefinitionalPairing {
            n: g.vertex_count(),
            snf: smith_normal_form(&g.laplacian()),
        }
    }

    /// Exact order of the class of `d`, read off its coordinates in
    /// `⊕ Z/d_i`: the lcm of `d_i / gcd(d_i, c_i)`.
    pub fn order(&self, d: &Divisor) -> Result<BigInt> {
        d.check_len(self.n)?;
        d.require_degree_zero()?;
        let coords = self.snf.u.mul_vec(d.coefficients());
        Ok(self
            .snf
            .diagonal()
            .iter()
            .zip(&coords)
            .filter(|(di, _)| !di.is_zero())
            .fold(BigInt::one(), |acc, (di, ci)| acc.lcm(&(di / di.gcd(ci)))))
    }

    pub fn potential(&self, d: &Divisor) -> Result<Potential> {
        let order = self.order(d)?;
        let f = solve_with(&self.snf, d.scale(&order).coefficients())
            .expect("order·D is principal by construction");
        Ok(Potential {
            order,
            function: VertexFunction::new(f),
        })
    }

    pub fn evaluate(&self, d1: &Divisor, potential: &Potential) -> Result<PairingValue> {
        d1.check_len(self.n)?;
        d1.require_degree_zero()?;
        let sum: BigInt = d1
            .coefficients()
            .iter()
            .zip(potential.function.values())
            .map(|(a, b)| a * b)
            .sum();
        Ok(PairingValue::from_ratio(sum, potential.order.clone()))
    }

    pub fn pair(&self, d1: &Divisor, d2: &Divisor) -> Result<PairingValue> {
        d1.check_len(self.n)?;
        d1.require_degree_zero()?;
        let p = self.potential(d2)?;
        self.evaluate(d1, &p)
    }
}

/// One-shot form of [`DefinitionalPairing::pair`].
pub fn pairing_by_definition(g: &MultiGraph, d1: &Divisor, d2: &Divisor) -> Result<PairingValue> {
    DefinitionalPairing::new(g).pair(d1, d2)
}
