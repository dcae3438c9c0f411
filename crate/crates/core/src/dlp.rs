//! Discrete logarithms on `Jac(G)` through the monodromy pairing.
//!
//! With `g` a generator, `x·D ~ D'` turns into `x·⟨D,g⟩ ≡ ⟨D',g⟩` in
//! `Q/Z`, one linear congruence modulo the order of `D`. Several
//! generators give several congruences, merged by a generalized CRT.
//! Every answer is checked (x·D - D' must be principal) before it is
//! returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::jacobian::JacobianStructure;
use crate::pairing::PairingValue;

/// Find `x` with `x·base ~ target`.
#[derive(Clone, Debug)]
pub struct DlpInstance<'a> {
    pub structure: &'a JacobianStructure,
    pub base: Divisor,
    pub target: Divisor,
}

impl<'a> DlpInstance<'a> {
    pub fn new(structure: &'a JacobianStructure, base: Divisor, target: Divisor) -> Result<Self> {
        let n = structure.vertex_count();
        for d in [&base, &target] {
            d.check_len(n)?;
            d.require_degree_zero()?;
        }
        Ok(DlpInstance {
            structure,
            base,
            target,
        })
    }
}

/// `x` modulo the order of the base class, with `0 <= x < modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlpSolution {
    pub x: BigInt,
    pub modulus: BigInt,
}

/// All `x` with `a·x ≡ c (mod m)`, as `x ≡ r (mod m / gcd(a, m))`.
pub fn solve_linear_congruence(a: &BigInt, c: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !c.is_multiple_of(&e.gcd) {
        return None;
    }
    let modulus = m / &e.gcd;
    let x = (&e.x * (c / &e.gcd)).mod_floor(&modulus);
    Some((x, modulus))
}

/// Merge `x ≡ r1 (mod m1)` with `x ≡ r2 (mod m2)` for arbitrary moduli.
pub fn crt_merge(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    // r1 + m1·t ≡ r2 (mod m2)
    let (t, step) = solve_linear_congruence(m1, &(r2 - r1), m2)?;
    let lcm = m1 * &step;
    Some(((r1 + m1 * t).mod_floor(&lcm), lcm))
}

/// One congruence from the pairings of `base` and `target` with a fixed
/// class: `x ≡ r (mod b)` where `b` is the denominator of the base pairing.
fn congruence(r: &PairingValue, r_prime: &PairingValue) -> Option<(BigInt, BigInt)> {
    let (a, b) = (r.numer(), r.denom());
    // b·r' must be integral when target lies in <base>
    let (c, rem) = (r_prime.numer() * b).div_rem(r_prime.denom());
    if !rem.is_zero() {
        return None;
    }
    solve_linear_congruence(a, &c, b)
}

fn checked(inst: &DlpInstance, x: BigInt, modulus: BigInt) -> Result<DlpSolution> {
    let s = inst.structure;
    if s.is_principal(&(&inst.base.scale(&x) - &inst.target)) {
        Ok(DlpSolution { x, modulus })
    } else {
        Err(Error::NoSolution)
    }
}

/// The single-generator algorithm. Needs a cyclic Jacobian.
pub fn dlp_cyclic(inst: &DlpInstance) -> Result<DlpSolution> {
    let s = inst.structure;
    let g = s.generator()?;
    let r = s.pairing(&inst.base, &g)?;
    let r_prime = s.pairing(&inst.target, &g)?;
    let (x, modulus) = congruence(&r, &r_prime).ok_or(Error::NoSolution)?;
    debug_assert_eq!(&modulus, r.denom());
    checked(inst, x, modulus)
}

/// One congruence per invariant factor generator, merged. Works for any
/// Jacobian and agrees with [`dlp_cyclic`] when that applies.
pub fn dlp_general(inst: &DlpInstance) -> Result<DlpSolution> {
    let s = inst.structure;
    let (mut x, mut modulus) = (BigInt::zero(), BigInt::one());
    for g in s.generators() {
        let r = s.pairing(&inst.base, g)?;
        let r_prime = s.pairing(&inst.target, g)?;
        let (xi, mi) = congruence(&r, &r_prime).ok_or(Error::NoSolution)?;
        (x, modulus) = crt_merge(&x, &modulus, &xi, &mi).ok_or(Error::NoSolution)?;
    }
    checked(inst, x, modulus)
}

/// `x·base - target` reduces to zero, `0 <= x < modulus`, and `modulus`
/// is the order of the base class.
pub fn verify_solution(inst: &DlpInstance, sol: &DlpSolution) -> bool {
    let s = inst.structure;
    if sol.x < BigInt::zero() || sol.x >= sol.modulus {
        return false;
    }
    let Ok(order) = s.order_general(&inst.base) else {
        return false;
    };
    order == sol.modulus && s.reduce(&(&inst.base.scale(&sol.x) - &inst.target)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::jacobian::analyze;

    fn dv(v: &[i64]) -> Divisor {
        Divisor::from_i64s(v)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn linear_congruences() {
        assert_eq!(solve_linear_congruence(&big(2), &big(1), &big(3)), Some((big(2), big(3))));
        assert_eq!(solve_linear_congruence(&big(4), &big(2), &big(6)), Some((big(2), big(3))));
        assert_eq!(solve_linear_congruence(&big(4), &big(3), &big(6)), None);
        assert_eq!(solve_linear_congruence(&big(0), &big(0), &big(1)), Some((big(0), big(1))));
        assert_eq!(solve_linear_congruence(&big(-1), &big(1), &big(5)), Some((big(4), big(5))));
    }

    #[test]
    fn crt() {
        assert_eq!(crt_merge(&big(2), &big(3), &big(3), &big(4)), Some((big(11), big(12))));
        assert_eq!(crt_merge(&big(1), &big(4), &big(3), &big(6)), Some((big(9), big(12))));
        assert_eq!(crt_merge(&big(0), &big(4), &big(1), &big(6)), None);
        assert_eq!(crt_merge(&big(0), &big(1), &big(5), &big(7)), Some((big(5), big(7))));
    }

    #[test]
    fn triangle_golden_instance() {
        let s = analyze(&families::cycle(3));
        let d = dv(&[1, -1, 0]);
        let target = s.reduce(&d.scale(&big(2)));
        let inst = DlpInstance::new(&s, d.clone(), target).unwrap();
        let sol = dlp_cyclic(&inst).unwrap();
        assert_eq!(sol, DlpSolution { x: big(2), modulus: big(3) });
        assert!(verify_solution(&inst, &sol));
        assert_eq!(dlp_general(&inst).unwrap(), sol);
    }

    #[test]
    fn trivial_targets() {
        let s = analyze(&families::cycle(5));
        let d = dv(&[1, 0, -1, 0, 0]);
        let zero = DlpInstance::new(&s, d.clone(), Divisor::zero(5)).unwrap();
        assert_eq!(dlp_cyclic(&zero).unwrap(), DlpSolution { x: big(0), modulus: big(5) });
        let same = DlpInstance::new(&s, d.clone(), d).unwrap();
        assert_eq!(dlp_cyclic(&same).unwrap().x, big(1));
    }

    #[test]
    fn verification_rejects_tampering() {
        let s = analyze(&families::cycle(7));
        let d = dv(&[1, -1, 0, 0, 0, 0, 0]);
        let inst = DlpInstance::new(&s, d.clone(), s.reduce(&d.scale(&big(5)))).unwrap();
        let sol = dlp_cyclic(&inst).unwrap();
        assert!(verify_solution(&inst, &sol));
        let bumped = DlpSolution { x: (&sol.x + 1u32) % &sol.modulus, ..sol.clone() };
        assert!(!verify_solution(&inst, &bumped));
        let multiple = DlpSolution { modulus: &sol.modulus * 2u32, ..sol };
        assert!(!verify_solution(&inst, &multiple));
    }

    #[test]
    fn order_one_base() {
        let s = analyze(&families::cycle(4));
        let inst = DlpInstance::new(&s, Divisor::zero(4), Divisor::zero(4)).unwrap();
        assert_eq!(dlp_general(&inst).unwrap(), DlpSolution { x: big(0), modulus: big(1) });
        assert_eq!(dlp_cyclic(&inst).unwrap(), DlpSolution { x: big(0), modulus: big(1) });
    }

    #[test]
    fn target_outside_subgroup() {
        // C6: (v0)-(v1) has order 6, (v0)-(v2) order 3; the reverse DLP has no answer
        let s = analyze(&families::cycle(6));
        let small = dv(&[1, 0, -1, 0, 0, 0]);
        let big_gen = dv(&[1, -1, 0, 0, 0, 0]);
        let inst = DlpInstance::new(&s, small, big_gen).unwrap();
        assert!(matches!(dlp_cyclic(&inst), Err(Error::NoSolution)));
        assert!(matches!(dlp_general(&inst), Err(Error::NoSolution)));
    }

    #[test]
    fn non_cyclic_k4() {
        let s = analyze(&families::complete(4));
        let d = dv(&[1, -1, 0, 0]);
        let inst = DlpInstance::new(&s, d.clone(), s.reduce(&d.scale(&big(3)))).unwrap();
        assert!(matches!(dlp_cyclic(&inst), Err(Error::NotCyclic(_))));
        let sol = dlp_general(&inst).unwrap();
        assert_eq!(sol, DlpSolution { x: big(3), modulus: big(4) });
        // an independent class: (v0)-(v2) is not a multiple of (v0)-(v1) in Z/4 ⊕ Z/4
        let other = DlpInstance::new(&s, d, dv(&[1, 0, -1, 0])).unwrap();
        assert!(matches!(dlp_general(&other), Err(Error::NoSolution)));
    }

    #[test]
    fn rejects_nonzero_degree() {
        let s = analyze(&families::cycle(3));
        assert!(matches!(
            DlpInstance::new(&s, dv(&[1, 0, 0]), dv(&[0, 0, 0])),
            Err(Error::NonZeroDegree(_))
        ));
        assert!(matches!(
            DlpInstance::new(&s, dv(&[1, -1]), dv(&[0, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
