//! Structure of `Jac(G) = Div⁰(G) / Prin(G)` and arithmetic on its classes.
//!
//! [`analyze`] computes the Smith normal form of the Laplacian, keeps the
//! invariant factors above one, and reads a generator for each of them off
//! `U⁻¹`. The group order is computed twice, as the product of invariant
//! factors and as a Laplacian minor determinant, and the two must agree.
//! A generalized inverse `L_(q)` for the base vertex `q = 0` is cached; it
//! drives both the pairing and a fast q-reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::divisor::{burn_to_reduced, fire_script, Divisor};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::linalg::{determinant, smith_parts, Track};
use crate::pairing::{gen_inverse_minor, monodromy_pairing, GeneralizedInverse, PairingValue};

/// Base vertex for canonical q-reduced representatives.
pub const BASE_VERTEX: usize = 0;

/// The computational handle on `Jac(G)`.
#[derive(Clone, Debug)]
pub struct JacobianStructure {
    graph: MultiGraph,
    invariant_factors: Vec<BigInt>,
    generators: Vec<Divisor>,
    /// Rows of `U` for the nontrivial factors: coordinates in `⊕ Z/d_i`.
    coordinate_rows: Vec<Vec<BigInt>>,
    group_order: BigInt,
    inverse: GeneralizedInverse,
}

/// Number of spanning trees, as the determinant of a principal minor of
/// the Laplacian.
pub fn spanning_tree_count(g: &MultiGraph) -> BigInt {
    let minor = g.laplacian().delete_row_col(BASE_VERTEX, BASE_VERTEX);
    determinant(&minor).expect("square minor")
}

pub fn analyze(g: &MultiGraph) -> JacobianStructure {
    let n = g.vertex_count();
    let q = g.laplacian();
    let parts = smith_parts(
        &q,
        Track {
            u: true,
            u_inv: true,
            v: false,
        },
    );
    let (u, u_inv) = (parts.u.expect("tracked"), parts.u_inv.expect("tracked"));
    let nonzero = parts.diagonal.iter().filter(|d| !d.is_zero()).count();
    assert_eq!(nonzero, n - 1, "a connected Laplacian has rank n - 1");

    let snf_order: BigInt = parts.diagonal.iter().filter(|d| !d.is_zero()).product();
    let kappa = spanning_tree_count(g);
    assert_eq!(snf_order, kappa, "invariant factor product disagrees with the matrix-tree count");

    let inverse = gen_inverse_minor(g, BASE_VERTEX).expect("base vertex exists");

    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut coordinate_rows = Vec::new();
    for (i, d) in parts.diagonal.iter().enumerate() {
        if d.is_zero() || d.is_one() {
            continue;
        }
        invariant_factors.push(d.clone());
        generators.push(Divisor::new(u_inv.iter().map(|row| row[i].clone()).collect()));
        coordinate_rows.push(u[i].clone());
    }

    let mut s = JacobianStructure {
        graph: g.clone(),
        invariant_factors,
        generators,
        coordinate_rows,
        group_order: kappa,
        inverse,
    };
    s.generators = s
        .generators
        .iter()
        .map(|gen| {
            assert!(gen.degree().is_zero(), "torsion classes have degree zero");
            s.reduce(gen)
        })
        .collect();
    for (gen, d) in s.generators.iter().zip(&s.invariant_factors) {
        let by_pairing = s.order_from_pairings(gen);
        assert_eq!(&by_pairing, d, "generator order differs from its invariant factor");
    }
    s
}

/// `Q·⌈L_(q)·w⌉`, balanced at `q`. Off `q` this is `w + Q·δ` with
/// `δ ∈ [0, 1)^n`, so it exceeds `w(v) - deg(v)` everywhere.
fn principal_lift(g: &MultiGraph, l: &GeneralizedInverse, mut w: Vec<BigInt>) -> Vec<BigInt> {
    w[BASE_VERTEX] = BigInt::zero();
    let total: BigInt = w.iter().sum();
    w[BASE_VERTEX] = -total;
    let (num, den) = l.apply(&w);
    let ceil: Vec<BigInt> = num.iter().map(|x| x.div_ceil(&den)).collect();
    g.laplacian_apply(&ceil)
}

impl JacobianStructure {
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Invariant factors `d₁ | d₂ | …`, all greater than one.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// One degree-zero, q-reduced generator per invariant factor.
    pub fn generators(&self) -> &[Divisor] {
        &self.generators
    }

    pub fn group_order(&self) -> &BigInt {
        &self.group_order
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn inverse(&self) -> &GeneralizedInverse {
        &self.inverse
    }

    /// Generator of a cyclic Jacobian (the zero divisor for the trivial
    /// group).
    pub fn generator(&self) -> Result<Divisor> {
        match self.generators.as_slice() {
            [] => Ok(Divisor::zero(self.vertex_count())),
            [g] => Ok(g.clone()),
            _ => Err(Error::NotCyclic(self.invariant_factors.clone())),
        }
    }

    fn check(&self, d: &Divisor) -> Result<()> {
        d.check_len(self.vertex_count())?;
        d.require_degree_zero()
    }

    pub fn pairing(&self, d1: &Divisor, d2: &Divisor) -> Result<PairingValue> {
        monodromy_pairing(d1, d2, &self.inverse)
    }

    /// Order of the class of `d` in a cyclic Jacobian: the denominator of
    /// its pairing with the generator.
    pub fn element_order(&self, d: &Divisor) -> Result<BigInt> {
        self.check(d)?;
        let g = self.generator()?;
        Ok(self.pairing(d, &g)?.denom().clone())
    }

    fn order_from_pairings(&self, d: &Divisor) -> BigInt {
        self.generators.iter().fold(BigInt::one(), |acc, g| {
            acc.lcm(self.pairing(d, g).expect("degree-zero inputs").denom())
        })
    }

    /// Order of the class of `d` in any Jacobian: the lcm of the pairing
    /// denominators against all generators. Cross-checked against the
    /// Smith coordinates and a principality test.
    pub fn order_general(&self, d: &Divisor) -> Result<BigInt> {
        self.check(d)?;
        let order = self.order_from_pairings(d);
        assert_eq!(order, self.order_from_coordinates(d), "pairing and Smith orders disagree for {d}");
        assert!(self.is_principal(&d.scale(&order)), "order·D is not principal for {d}");
        if let Some(primes) = small_prime_factors(&order) {
            for p in primes {
                let smaller = &order / p;
                assert!(!self.is_principal(&d.scale(&smaller)), "order of {d} is not minimal");
            }
        }
        Ok(order)
    }

    /// Coordinates of the class of `d` in `⊕ Z/d_i`, each reduced into
    /// `[0, d_i)`.
    pub fn coordinates(&self, d: &Divisor) -> Result<Vec<BigInt>> {
        self.check(d)?;
        Ok(self
            .coordinate_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, m)| {
                let c: BigInt = row
                    .iter()
                    .zip(d.coefficients())
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(a, b)| a * b)
                    .sum();
                c.mod_floor(m)
            })
            .collect())
    }

    fn order_from_coordinates(&self, d: &Divisor) -> BigInt {
        self.coordinates(d)
            .expect("checked by caller")
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (c, m)| acc.lcm(&(m / m.gcd(c))))
    }

    /// Principality of a degree-zero divisor: `L_(q)·D` must be integral.
    ///
    /// For degree zero `Q·L_(q)·D = D`, and every solution of `Q·f = D` is
    /// `L_(q)·D + c·1`; the `q` entry of `L_(q)·D` is zero, so an integral
    /// solution exists exactly when `L_(q)·D` is integral.
    pub fn is_principal(&self, d: &Divisor) -> bool {
        if d.len() != self.vertex_count() || !d.degree().is_zero() {
            return false;
        }
        let (num, den) = self.inverse.apply(d.coefficients());
        num.iter().all(|x| x.is_multiple_of(&den))
    }

    pub fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        d1.check_len(self.vertex_count())?;
        d2.check_len(self.vertex_count())?;
        Ok(self.is_principal(&(d1 - d2)))
    }

    /// The q-reduced representative (`q = 0`) of any divisor.
    ///
    /// `D - Q·⌊L_(q)·D⌋` has every coefficient off `q` strictly between
    /// `-deg(v)` and `deg(v)`. A principal lift that tops up only the
    /// coefficients below `deg(v) - 1` makes them nonnegative, and the
    /// burning loop finishes from there.
    pub fn reduce(&self, d: &Divisor) -> Divisor {
        assert_eq!(d.len(), self.vertex_count(), "divisor length");
        let mut work = self.bounded_representative(d).into_coefficients();
        let need: Vec<BigInt> = work
            .iter()
            .enumerate()
            .map(|(v, x)| (BigInt::from(self.graph.degree(v)) - 1u32 - x).max(BigInt::zero()))
            .collect();
        if need.iter().enumerate().any(|(v, x)| v != BASE_VERTEX && !x.is_zero()) {
            let lift = principal_lift(&self.graph, &self.inverse, need);
            for (x, p) in work.iter_mut().zip(&lift) {
                *x += p;
            }
        }
        debug_assert!(work
            .iter()
            .enumerate()
            .all(|(v, x)| v == BASE_VERTEX || !x.is_negative()));
        burn_to_reduced(&self.graph, &mut work, BASE_VERTEX);
        Divisor::new(work)
    }

    /// `D - Q·⌊L_(q)·D⌋`: an equivalent divisor with `|E(v)| < deg(v)` off
    /// `q`, in `O(n²)`.
    pub fn bounded_representative(&self, d: &Divisor) -> Divisor {
        let (num, den) = self.inverse.apply(d.coefficients());
        let floor: Vec<BigInt> = num.iter().map(|x| x.div_floor(&den)).collect();
        let mut work = d.coefficients().to_vec();
        fire_script(&self.graph, &mut work, &floor);
        Divisor::new(work)
    }

    pub fn class_add(&self, d1: &Divisor, d2: &Divisor) -> Result<Divisor> {
        self.check(d1)?;
        self.check(d2)?;
        Ok(self.reduce(&(d1 + d2)))
    }

    pub fn class_scale(&self, d: &Divisor, k: &BigInt) -> Result<Divisor> {
        self.check(d)?;
        Ok(self.reduce(&d.scale(k)))
    }

    pub fn class_neg(&self, d: &Divisor) -> Result<Divisor> {
        self.check(d)?;
        Ok(self.reduce(&-d))
    }

    pub fn zero_class(&self) -> Divisor {
        Divisor::zero(self.vertex_count())
    }
}

/// Distinct prime factors by trial division, or `None` when that would
/// take more than about a million steps.
fn small_prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let mut m: u64 = n.try_into().ok()?;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if p > 1_000_000 {
            return None;
        }
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    Some(primes)
}

/// Free-function form of [`JacobianStructure::element_order`].
pub fn element_order(s: &JacobianStructure, d: &Divisor) -> Result<BigInt> {
    s.element_order(d)
}

/// Free-function form of [`JacobianStructure::order_general`].
pub fn order_general(s: &JacobianStructure, d: &Divisor) -> Result<BigInt> {
    s.order_general(d)
}
