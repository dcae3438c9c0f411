//! Smith normal form over the integers.
//!
//! Classical elimination: pivot on the smallest nonzero entry, clear its row
//! and column with Euclidean steps, then repair the divisibility chain with
//! 2x2 gcd moves. Every elementary operation is mirrored into the tracked
//! transforms, so `U·A·V = D` holds exactly. `U⁻¹` can be tracked as well;
//! its columns map the invariant-factor basis back to the original
//! coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D`, `min(rows, cols)` entries, zeros last.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct SmithParts {
    pub diagonal: Vec<BigInt>,
    pub u: Option<Vec<Vec<BigInt>>>,
    pub u_inv: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    debug_assert_ne!(target, source);
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn col_axpy(rows: &mut [Vec<BigInt>], target: usize, source: usize, c: &BigInt) {
    for row in rows.iter_mut() {
        if !row[source].is_zero() {
            let delta = c * &row[source];
            row[target] += delta;
        }
    }
}

fn swap_cols(rows: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in rows.iter_mut() {
        row.swap(i, j);
    }
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
    }

    /// row_target += c · row_source
    fn row_axpy(&mut self, target: usize, source: usize, c: &BigInt) {
        row_axpy(&mut self.a, target, source, c);
        if let Some(u) = &mut self.u {
            row_axpy(u, target, source, c);
        }
        if let Some(ui) = &mut self.u_inv {
            // (I + cE_ts)⁻¹ = I - cE_ts acting on the right.
            col_axpy(ui, source, target, &-c);
        }
    }

    /// col_target += c · col_source
    fn col_axpy(&mut self, target: usize, source: usize, c: &BigInt) {
        col_axpy(&mut self.a, target, source, c);
        if let Some(v) = &mut self.v {
            col_axpy(v, target, source, c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Columns `(i, j)` ← `(i, j) · [[m00, m01], [m10, m11]]`, determinant 1.
    fn col_combine(&mut self, i: usize, j: usize, m: [[&BigInt; 2]; 2]) {
        fn apply(rows: &mut [Vec<BigInt>], i: usize, j: usize, m: [[&BigInt; 2]; 2]) {
            for row in rows.iter_mut() {
                let (x, y) = (&row[i], &row[j]);
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let ni = m[0][0] * x + m[1][0] * y;
                let nj = m[0][1] * x + m[1][1] * y;
                row[i] = ni;
                row[j] = nj;
            }
        }
        apply(&mut self.a, i, j, m);
        if let Some(v) = &mut self.v {
            apply(v, i, j, m);
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing block; stops early
    /// at a unit.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.len() {
            for (j, x) in self.a[i].iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.magnitude() < self.a[bi][bj].magnitude()) {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn clear_cross(&mut self, k: usize) {
        let (m, n) = (self.a.len(), self.a[0].len());
        loop {
            let p = self.a[k][k].clone();
            let mut dirty = false;
            for i in k + 1..m {
                if self.a[i][k].is_zero() {
                    continue;
                }
                let q = &self.a[i][k] / &p;
                if !q.is_zero() {
                    self.row_axpy(i, k, &-q);
                }
                dirty |= !self.a[i][k].is_zero();
            }
            for j in k + 1..n {
                if self.a[k][j].is_zero() {
                    continue;
                }
                let q = &self.a[k][j] / &p;
                if !q.is_zero() {
                    self.col_axpy(j, k, &-q);
                }
                dirty |= !self.a[k][j].is_zero();
            }
            if !dirty {
                return;
            }
            // Remainders are strictly smaller than the pivot; promote the
            // smallest one.
            let mut best: Option<(usize, bool)> = None;
            let mut best_mag = p.magnitude().clone();
            for i in k + 1..m {
                let x = &self.a[i][k];
                if !x.is_zero() && x.magnitude() < &best_mag {
                    best_mag = x.magnitude().clone();
                    best = Some((i, true));
                }
            }
            for j in k + 1..n {
                let x = &self.a[k][j];
                if !x.is_zero() && x.magnitude() < &best_mag {
                    best_mag = x.magnitude().clone();
                    best = Some((j, false));
                }
            }
            match best.expect("a nonzero remainder exists") {
                (i, true) => self.swap_rows(k, i),
                (j, false) => self.swap_cols(k, j),
            }
        }
    }

    fn fix_divisibility(&mut self, r: usize) {
        for i in 0..r {
            for j in i + 1..r {
                let a = self.a[i][i].clone();
                let b = self.a[j][j].clone();
                if b.is_multiple_of(&a) {
                    continue;
                }
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let (a_g, b_g) = (&a / &g, &b / &g);
                self.row_axpy(i, j, &BigInt::one());
                self.col_combine(i, j, [[&s, &-&b_g], [&t, &a_g]]);
                let c = -(&b * &t / &g);
                self.row_axpy(j, i, &c);
                debug_assert!(self.a[j][i].is_zero() && self.a[i][j].is_zero());
            }
        }
    }
}

pub(crate) fn smith_parts(a: &IntegerMatrix, track: Track) -> SmithParts {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.iter_rows().map(<[BigInt]>::to_vec).collect(),
        u: track.u.then(|| identity_rows(m)),
        u_inv: track.u_inv.then(|| identity_rows(m)),
        v: track.v.then(|| identity_rows(n)),
    };

    let mut r = 0;
    if m > 0 && n > 0 {
        for k in 0..m.min(n) {
            let Some((pi, pj)) = w.find_pivot(k) else {
                break;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            w.clear_cross(k);
            if w.a[k][k].is_negative() {
                w.negate_row(k);
            }
            r += 1;
        }
        w.fix_divisibility(r);
    }

    let diagonal = (0..m.min(n)).map(|i| w.a[i][i].clone()).collect();
    SmithParts {
        diagonal,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
    }
}

/// Smith normal form with both unimodular transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let parts = smith_parts(
        a,
        Track {
            u: true,
            v: true,
            u_inv: false,
        },
    );
    let mut d = IntegerMatrix::zeros(m, n);
    for (i, x) in parts.diagonal.into_iter().enumerate() {
        d[(i, i)] = x;
    }
    let u = parts.u.expect("tracked");
    let v = parts.v.expect("tracked");
    SmithDecomposition {
        u: if m == 0 {
            IntegerMatrix::zeros(0, 0)
        } else {
            IntegerMatrix::from_rows(u).expect("square")
        },
        v: if n == 0 {
            IntegerMatrix::zeros(0, 0)
        } else {
            IntegerMatrix::from_rows(v).expect("square")
        },
        d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows).unwrap()
    }

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(determinant(&s.u).unwrap().magnitude(), &One::one());
        assert_eq!(determinant(&s.v).unwrap().magnitude(), &One::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "{diag:?}");
            }
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn coprime_diagonal() {
        let s = check(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), ints(&[1, 6]));
    }

    #[test]
    fn triangle_laplacian() {
        let s = check(&m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]));
        assert_eq!(s.diagonal(), ints(&[1, 3, 0]));
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntegerMatrix::zeros(2, 3));
        assert_eq!(s.diagonal(), ints(&[0, 0]));
        let e = smith_normal_form(&IntegerMatrix::zeros(0, 0));
        assert!(e.diagonal().is_empty());
    }

    #[test]
    fn rectangular_and_non_unit_pivots() {
        let s = check(&m(&[&[4, 6, 8], &[6, 9, 12]]));
        assert_eq!(s.diagonal(), ints(&[1, 0]));
        let s = check(&m(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]));
        assert_eq!(s.diagonal(), ints(&[1, 30, 30]));
        let s = check(&m(&[&[4, 6], &[6, 4]]));
        assert_eq!(s.diagonal(), ints(&[2, 10]));
    }

    #[test]
    fn u_inverse_tracking() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let parts = smith_parts(
            &a,
            Track {
                u: true,
                u_inv: true,
                v: false,
            },
        );
        let u = IntegerMatrix::from_rows(parts.u.unwrap()).unwrap();
        let ui = IntegerMatrix::from_rows(parts.u_inv.unwrap()).unwrap();
        assert_eq!(u.mul(&ui).unwrap(), IntegerMatrix::identity(3));
    }
}
