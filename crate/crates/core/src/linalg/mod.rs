//! Exact dense linear algebra over arbitrary-precision integers and
//! rationals. Nothing in here touches floating point.

mod bareiss;
mod matrix;
mod smith;

pub use bareiss::{determinant, invert, invert_rational, inverse_parts, rank};
pub use matrix::{IntegerMatrix, Matrix, RationalMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};
pub(crate) use smith::{smith_parts, Track};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Some integer `x` with `A·x = b`, or `None` when no integer solution
/// exists.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(solve_with(&smith_normal_form(a), b))
}

/// Solves `A·x = b` given a precomputed decomposition of `A`:
/// `D·y = U·b`, then `x = V·y`.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ if !ci.is_zero() => return None,
            _ => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}
