//! Fraction-free (Bareiss) elimination.
//!
//! Rows are kept sparse and rows that do not take part in a step are
//! rescaled lazily: an untouched row after `t` steps equals its value after
//! `s` steps times `p_t / p_s`, where `p_k` is the k-th pivot. For sparse
//! inputs such as graph Laplacian minors this keeps elimination close to
//! linear in the number of nonzeros plus fill.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix};
use crate::error::{Error, Result};

type SparseRow = Vec<(usize, BigInt)>;

struct Eliminated {
    rows: Vec<SparseRow>,
    /// `pivots[0] = 1`, `pivots[k + 1]` is the pivot chosen at step `k`.
    pivots: Vec<BigInt>,
    negated: bool,
}

fn to_sparse(a: &IntegerMatrix, augment_identity: bool) -> Vec<SparseRow> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            let mut row: SparseRow = a
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect();
            if augment_identity {
                row.push((a.cols() + i, BigInt::one()));
            }
            row
        })
        .collect()
}

fn rescale(row: &mut SparseRow, pivots: &[BigInt], from: usize, to: usize) {
    if from == to {
        return;
    }
    let (num, den) = (&pivots[to], &pivots[from]);
    for (_, x) in row.iter_mut() {
        *x = &*x * num / den;
    }
}

/// Forward elimination of the leading `n x n` block; returns `None` when it
/// is singular.
fn forward(mut rows: Vec<SparseRow>) -> Option<Eliminated> {
    let n = rows.len();
    let mut state = vec![0usize; n];
    let mut pivots = vec![BigInt::one()];
    let mut negated = false;

    for k in 0..n {
        // Rows below k have no entries left of column k, so a nonzero at k
        // is the first entry. Prefer the sparsest candidate.
        let pick = (k..n)
            .filter(|&i| rows[i].first().is_some_and(|&(c, _)| c == k))
            .min_by_key(|&i| rows[i].len())?;
        if pick != k {
            rows.swap(pick, k);
            state.swap(pick, k);
            negated = !negated;
        }
        rescale(&mut rows[k], &pivots, state[k], k);
        state[k] = k;

        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let p = pivot_row[0].1.clone();
        let prev = &pivots[k];
        for (offset, row) in tail.iter_mut().enumerate() {
            let i = k + 1 + offset;
            if !row.first().is_some_and(|&(c, _)| c == k) {
                continue;
            }
            rescale(row, &pivots, state[i], k);
            state[i] = k + 1;
            let factor = row[0].1.clone();
            *row = merge_step(&row[1..], &pivot_row[1..], &p, &factor, prev);
        }
        pivots.push(p);
    }

    Some(Eliminated {
        rows,
        pivots,
        negated,
    })
}

/// `(p·a - f·b) / prev` over the union of both supports.
fn merge_step(a: &[(usize, BigInt)], b: &[(usize, BigInt)], p: &BigInt, f: &BigInt, prev: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let (col, value) = if ca < cb {
            i += 1;
            (ca, p * &a[i - 1].1)
        } else if cb < ca {
            j += 1;
            (cb, -(f * &b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ca, p * &a[i - 1].1 - f * &b[j - 1].1)
        };
        if !value.is_zero() {
            debug_assert!(value.is_multiple_of(prev));
            out.push((col, value / prev));
        }
    }
    out
}

/// Exact determinant of a square integer matrix.
pub fn determinant(a: &IntegerMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(match forward(to_sparse(a, false)) {
        None => BigInt::zero(),
        Some(e) => {
            let det = e.pivots[n].clone();
            if e.negated {
                -det
            } else {
                det
            }
        }
    })
}

/// Integer matrix `X` and positive integer `d` with `A⁻¹ = X / d`.
///
/// `d` is `|det A|`, so `X` is the adjugate up to sign.
pub fn inverse_parts(a: &IntegerMatrix) -> Result<(IntegerMatrix, BigInt)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok((IntegerMatrix::zeros(0, 0), BigInt::one()));
    }
    let e = forward(to_sparse(a, true)).ok_or(Error::Singular)?;
    let d = e.pivots[n].clone();

    // Fraction-free back substitution: U·X = d·B, every X entry integral.
    let mut x: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let row = &e.rows[i];
        let mut acc = vec![BigInt::zero(); n];
        let mut diag = None;
        for (col, value) in row {
            if *col >= n {
                acc[col - n] = value * &d;
            }
        }
        for (col, value) in row {
            match (*col).cmp(&i) {
                std::cmp::Ordering::Less => unreachable!("eliminated below the diagonal"),
                std::cmp::Ordering::Equal => diag = Some(value),
                std::cmp::Ordering::Greater if *col < n => {
                    for (slot, xj) in acc.iter_mut().zip(&x[*col]) {
                        if !xj.is_zero() {
                            *slot -= value * xj;
                        }
                    }
                }
                std::cmp::Ordering::Greater => {}
            }
        }
        let diag = diag.expect("pivot present on the diagonal");
        for slot in acc.iter_mut() {
            if !slot.is_zero() {
                debug_assert!(slot.is_multiple_of(diag));
                *slot = &*slot / diag;
            }
        }
        x[i] = acc;
    }

    let mut xm = IntegerMatrix::from_rows(x).expect("rows have equal length");
    let d = if d.is_negative() {
        xm = xm.map(|v| -v);
        -d
    } else {
        d
    };
    Ok((xm, d))
}

/// Exact inverse of an integer matrix.
pub fn invert(a: &IntegerMatrix) -> Result<RationalMatrix> {
    let (x, d) = inverse_parts(a)?;
    Ok(x.map(|v| BigRational::new(v.clone(), d.clone())))
}

/// Exact inverse of a rational matrix, via the integer matrix obtained by
/// clearing all denominators.
pub fn invert_rational(a: &RationalMatrix) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let scale = a
        .iter_rows()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = a.map(|x| (x * BigRational::from_integer(scale.clone())).to_integer());
    // (s·A)⁻¹ = X/d, so A⁻¹ = s·X/d.
    let (x, d) = inverse_parts(&scaled)?;
    Ok(x.map(|v| BigRational::new(v * &scale, d.clone())))
}

/// Rank by fraction-free elimination with column skipping.
pub fn rank(a: &IntegerMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = a.iter_rows().map(<[BigInt]>::to_vec).collect();
    let (m, n) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let (top, below) = rows.split_at_mut(r + 1);
        for row in below {
            let f = row[c].clone();
            for (x, above) in row[c..].iter_mut().zip(&top[r][c..]) {
                *x = (&pivot * &*x - &f * above) / &prev;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}
