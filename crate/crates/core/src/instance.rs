//! Seeded DLP instances on standard graph families.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{families, MultiGraph};
use crate::jacobian::{analyze, JacobianStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle,
    Complete,
    Banana,
    Wheel,
    /// Random multigraph, resampled until its Jacobian is cyclic.
    Random,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Cycle, Family::Complete, Family::Banana, Family::Wheel, Family::Random];

    /// The graph of the given size. `Random` uses `rng`; the others ignore it.
    pub fn graph(self, size: usize, rng: &mut ChaCha8Rng) -> Result<MultiGraph> {
        let min = match self {
            Family::Cycle => 2,
            Family::Wheel => 3,
            _ => 1,
        };
        if size < min {
            return Err(Error::InvalidArgument(format!("{self} needs size >= {min}, got {size}")));
        }
        Ok(match self {
            Family::Cycle => families::cycle(size),
            Family::Complete => families::complete(size),
            Family::Banana => families::banana(size as u64),
            Family::Wheel => families::wheel(size),
            Family::Random => random_cyclic(size, rng),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Banana => "banana",
            Family::Wheel => "wheel",
            Family::Random => "random",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// Random spanning tree plus about `n` extra edges, some of them parallel.
fn random_multigraph(n: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    if n >= 2 {
        for _ in 0..n {
            let u = rng.random_range(0..n);
            let v = (u + rng.random_range(1..n)) % n;
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, &edges).expect("contains a spanning tree")
}

fn random_cyclic(n: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    loop {
        let g = random_multigraph(n, rng);
        if analyze(&g).is_cyclic() {
            return g;
        }
    }
}

/// Uniform-enough integer in `[0, bound)`: 64 spare bits, reduced.
pub fn random_below(bound: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let mut bytes = vec![0u8; (bound.bits() as usize).div_ceil(8) + 8];
    rng.fill(bytes.as_mut_slice());
    BigInt::from_bytes_le(Sign::Plus, &bytes).mod_floor(bound)
}

/// A random degree-zero divisor with small coefficients.
pub fn random_divisor(n: usize, spread: i64, rng: &mut ChaCha8Rng) -> Divisor {
    let mut c: Vec<i64> = (0..n).map(|_| rng.random_range(-spread..=spread)).collect();
    let sum: i64 = c.iter().sum();
    c[0] -= sum;
    Divisor::from_i64s(&c)
}

/// A generated DLP instance: `target` is the reduced form of
/// `secret·base`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: Family,
    pub size: usize,
    pub seed: u64,
    pub graph: MultiGraph,
    pub structure: JacobianStructure,
    pub base: Divisor,
    pub target: Divisor,
    pub secret: BigInt,
}

/// Deterministic in `(family, size, seed)`.
pub fn gen_instance(family: Family, size: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = family.graph(size, &mut rng)?;
    let structure = analyze(&graph);
    Ok(draw_instance(family, size, seed, graph, structure, &mut rng))
}

/// Draws `(base, target, secret)` on a known structure.
pub fn draw_triple(structure: &JacobianStructure, rng: &mut ChaCha8Rng) -> (Divisor, Divisor, BigInt) {
    let n = structure.vertex_count();
    let mut base = structure.reduce(&random_divisor(n, 3, rng));
    // a zero base makes the instance trivial; redraw a bounded number of times
    for _ in 0..64 {
        if !base.is_zero() || structure.group_order().is_one() {
            break;
        }
        base = structure.reduce(&random_divisor(n, 3, rng));
    }
    let bound = structure.group_order().max(&BigInt::one()).clone();
    let secret = random_below(&bound, rng);
    let target = structure.reduce(&base.scale(&secret));
    (base, target, secret)
}

/// Draws base and secret on a graph whose structure is already known.
pub fn draw_instance(
    family: Family,
    size: usize,
    seed: u64,
    graph: MultiGraph,
    structure: JacobianStructure,
    rng: &mut ChaCha8Rng,
) -> Instance {
    let (base, target, secret) = draw_triple(&structure, rng);
    Instance {
        family,
        size,
        seed,
        graph,
        structure,
        base,
        target,
        secret,
    }
}
