//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Diagonalization data `L * M * R = diag(d_1, ..., d_k)` with `k = min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNFResult {
    /// Nonnegative, each nonzero factor dividing the next, zeros last.
    pub invariant_factors: Vec<BigInt>,
    pub left_transform: IntMatrix,
    pub right_transform: IntMatrix,
}

impl SNFResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `L * M * R` should equal, shaped like the input.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left_transform.rows(), self.right_transform.rows());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SNFResult {
    let mut w = Work::new(m, true);
    let factors = w.run();
    SNFResult {
        invariant_factors: factors,
        left_transform: IntMatrix::from_big_rows_shaped(w.left.unwrap(), m.rows()),
        right_transform: IntMatrix::from_big_rows_shaped(w.right.unwrap(), m.cols()),
    }
}

/// Invariant factors only, skipping transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    Work::new(m, false).run()
}

/// Structure of `coker(M) = Z^rows / M Z^cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl Cokernel {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    cokernel_from_factors(m.rows(), &invariant_factors(m))
}

pub fn cokernel_from_factors(rows: usize, factors: &[BigInt]) -> Cokernel {
    let rank = factors.iter().filter(|d| !d.is_zero()).count();
    Cokernel {
        free_rank: rows - rank,
        torsion: factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect(),
    }
}

impl IntMatrix {
    fn from_big_rows_shaped(rows: Vec<Vec<BigInt>>, n: usize) -> IntMatrix {
        if rows.is_empty() {
            return IntMatrix::zeros(0, n);
        }
        IntMatrix::from_big_rows(rows)
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Quotient of `a / b` rounded to the nearest integer.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r * 2u32).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
    left: Option<Vec<Vec<BigInt>>>,
    // stored transposed so column operations become row operations
    right: Option<Vec<Vec<BigInt>>>,
}

impl Work {
    fn new(m: &IntMatrix, track: bool) -> Self {
        Work {
            a: m.to_rows(),
            m: m.rows(),
            n: m.cols(),
            left: track.then(|| identity_rows(m.rows())),
            right: track.then(|| identity_rows(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(l) = &mut self.left {
                l.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in &mut self.a {
                row.swap(j, k);
            }
            if let Some(r) = &mut self.right {
                r.swap(j, k);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt, from: usize) {
        let (src, dst) = pair_mut(&mut self.a, t, i);
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if !s.is_zero() {
                *d -= q * s;
            }
        }
        if let Some(l) = &mut self.left {
            let (src, dst) = pair_mut(l, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt, from: usize) {
        for row in &mut self.a[from..] {
            if !row[t].is_zero() {
                let v = q * &row[t];
                row[j] -= v;
            }
        }
        if let Some(r) = &mut self.right {
            let (src, dst) = pair_mut(r, t, j);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -std::mem::take(x);
        }
        if let Some(l) = &mut self.left {
            for x in &mut l[t] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= v.abs() => {}
                    _ => {
                        if v.abs().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let k = self.m.min(self.n);
        for t in 0..k {
            'pivot: loop {
                let Some((pi, pj)) = self.min_in_block(t) else {
                    break 'pivot;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                loop {
                    let mut clean = true;
                    for i in t + 1..self.m {
                        if self.a[i][t].is_zero() {
                            continue;
                        }
                        let q = nearest_quotient(&self.a[i][t], &self.a[t][t]);
                        self.row_axpy(i, t, &q, t);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                    for j in t + 1..self.n {
                        if self.a[t][j].is_zero() {
                            continue;
                        }
                        let q = nearest_quotient(&self.a[t][j], &self.a[t][t]);
                        self.col_axpy(j, t, &q, t);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                    if clean {
                        break;
                    }
                    // bring the smallest entry of the pivot row/column into place
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let v = &self.a[i][t];
                        if !v.is_zero() && v.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let v = &self.a[t][j];
                        if !v.is_zero() && v.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                }
                let p = self.a[t][t].clone();
                if !p.abs().is_one() {
                    let bad = (t + 1..self.m)
                        .find(|&i| (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                    if let Some(i) = bad {
                        self.row_axpy(t, i, &-BigInt::one(), t);
                        continue 'pivot;
                    }
                }
                break 'pivot;
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        if let Some(r) = &mut self.right {
            let rows = std::mem::take(r);
            *r = IntMatrix::from_big_rows_shaped(rows, self.n).transpose().to_rows();
        }
        (0..k).map(|i| self.a[i][i].clone()).collect()
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[[i64; 2]]) -> Vec<BigInt> {
        invariant_factors(&IntMatrix::from_i64_rows(rows))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&[[-1, -2], [-2, -1]]), ints(&[1, 3]));
        assert_eq!(factors(&[[-1, -1], [-1, -1]]), ints(&[1, 0]));
        assert_eq!(invariant_factors(&IntMatrix::identity(4)), ints(&[1, 1, 1, 1]));
        assert_eq!(factors(&[[2, 0], [0, 3]]), ints(&[1, 6]));
        assert_eq!(factors(&[[0, 0], [0, 0]]), ints(&[0, 0]));
        let c = cokernel(&IntMatrix::from_i64_rows(&[[-2]]));
        assert_eq!((c.free_rank, c.torsion_order()), (0, BigInt::from(2)));
    }

    #[test]
    fn transforms_diagonalize() {
        let m = IntMatrix::from_i64_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[2, 6, 12]));
        assert_eq!(&(&s.left_transform * &m) * &s.right_transform, s.diagonal());
        assert_eq!(s.left_transform.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.right_transform.det().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn rectangular_and_empty() {
        let m = IntMatrix::from_i64_rows(&[[4, 6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[2]));
        assert_eq!(&(&s.left_transform * &m) * &s.right_transform, s.diagonal());
        let e = IntMatrix::zeros(0, 0);
        assert!(smith_normal_form(&e).invariant_factors.is_empty());
    }
}
