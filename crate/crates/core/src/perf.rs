//! Timing of the DLP solver on cycle graphs of growing size.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dlp::{dlp_cyclic, DlpInstance};
use crate::error::Result;
use crate::graph::families;
use crate::instance::{random_below, random_divisor};
use crate::jacobian::analyze;

#[derive(Clone, Debug)]
pub struct ScalingPoint {
    pub n: usize,
    pub instances: usize,
    /// `analyze` for the graph, including the generalized inverse.
    pub precompute: Duration,
    /// Mean `dlp_cyclic` time, verification included.
    pub mean_solve: Duration,
}

/// Precomputes `C_n` once per size and times `instances` seeded solves.
/// Targets are bounded lifts of `secret·base`, not reduced divisors.
/// Every recovered exponent is checked against the planted secret.
pub fn cycle_scaling(sizes: &[usize], instances: usize, seed: u64) -> Result<Vec<ScalingPoint>> {
    let mut out = Vec::new();
    for &n in sizes {
        let g = families::cycle(n);
        let start = Instant::now();
        let s = analyze(&g);
        let precompute = start.elapsed();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let triples: Vec<_> = (0..instances)
            .map(|_| {
                let base = random_divisor(n, 3, &mut rng);
                let secret = random_below(s.group_order(), &mut rng);
                let target = s.bounded_representative(&base.scale(&secret));
                (base, target, secret)
            })
            .collect();
        let mut total = Duration::ZERO;
        for (base, target, secret) in triples {
            let inst = DlpInstance::new(&s, base, target)?;
            let start = Instant::now();
            let sol = dlp_cyclic(&inst)?;
            total += start.elapsed();
            assert_eq!(sol.x, secret.mod_floor(&sol.modulus), "wrong logarithm on C_{n}");
        }
        out.push(ScalingPoint {
            n,
            instances,
            precompute,
            mean_solve: total / instances.max(1) as u32,
        });
    }
    Ok(out)
}
