//! Dense integer matrices and their reversed characteristic polynomials.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Crt};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_big_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("subtraction of differently shaped matrices".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_det(self.to_rows()))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            for i in r + 1..m {
                for j in c + 1..n {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// `det(I - A u)` as a polynomial in `u`.
    ///
    /// Small matrices use the division-free Berkowitz recursion, medium ones
    /// evaluation at `n + 1` points followed by exact Newton interpolation, and
    /// large ones a multi-modular Hessenberg computation with a proven
    /// coefficient bound.
    pub fn reversed_char_poly(&self) -> Result<IntPoly> {
        self.require_square()?;
        Ok(match self.rows {
            0..=8 => reversed_char_poly_berkowitz(self),
            9..=24 => reversed_char_poly_interpolation(self),
            _ => reversed_char_poly_multimodular(self),
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )))
        }
    }

    /// Nested JSON arrays with exact integer entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(self.row(i).iter().map(crate::json::big).collect())
                })
                .collect(),
        )
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Berkowitz's division-free recursion.
pub fn reversed_char_poly_berkowitz(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows;
    // p holds det(xI - A_k) in descending order, equivalently det(I - A_k u) ascending.
    let mut p = vec![BigInt::one()];
    for k in (0..n).rev() {
        let m = n - k - 1;
        let mut t = vec![BigInt::zero(); m + 2];
        t[0] = BigInt::one();
        t[1] = -a.get(k, k);
        let mut v: Vec<BigInt> = (k + 1..n).map(|i| a.get(i, k).clone()).collect();
        for ti in t.iter_mut().skip(2) {
            let rv = (0..m).fold(BigInt::zero(), |acc, j| acc + a.get(k, k + 1 + j) * &v[j]);
            *ti = -rv;
            v = (0..m)
                .map(|i| {
                    (0..m).fold(BigInt::zero(), |acc, j| {
                        acc + a.get(k + 1 + i, k + 1 + j) * &v[j]
                    })
                })
                .collect();
        }
        let mut next = vec![BigInt::zero(); m + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(m) {
                *slot += &t[i - j] * &p[j];
            }
        }
        p = next;
    }
    IntPoly::new(p)
}

/// Evaluate `det(I - u0 A)` at `u0 = 0..=n` and interpolate exactly.
pub fn reversed_char_poly_interpolation(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows;
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|u0| {
            let u = BigInt::from(u0);
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let id = if i == j { BigInt::one() } else { BigInt::zero() };
                            id - &u * a.get(i, j)
                        })
                        .collect()
                })
                .collect();
            bareiss_det(rows)
        })
        .collect();
    // forward differences in place: diffs[k] = Delta^k y_0
    for k in 1..=n {
        for i in (k..=n).rev() {
            let d = &diffs[i] - &diffs[i - 1];
            diffs[i] = d;
        }
    }
    let mut result = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
            falling = &falling * &IntPoly::new(vec![BigInt::from(-(k as i64 - 1)), BigInt::one()]);
        }
        let (q, r) = d.div_rem(&fact);
        assert!(r.is_zero(), "Newton coefficient must be integral");
        result = &result + &falling.scale(&q);
    }
    result
}

/// Multi-modular computation via Hessenberg reduction over word-sized prime fields.
pub fn reversed_char_poly_multimodular(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows;
    if n == 0 {
        return IntPoly::one();
    }
    // Sum of |coefficients| of det(I - A u) is at most the permanent of |I| + |A|,
    // which is bounded by the product of its row sums.
    let mut bound = BigInt::one();
    for i in 0..n {
        let s = a
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc + x.abs());
        bound *= s;
    }
    let bits = bound.bits() + 2;
    let count = (bits as usize).div_ceil(61) + 1;
    let mut crts = vec![Crt::default(); n + 1];
    for q in arith::large_primes(count) {
        let red: Vec<Vec<u64>> = (0..n)
            .map(|i| a.row(i).iter().map(|x| arith::reduce_big(x, q)).collect())
            .collect();
        let cp = charpoly_mod(red, q);
        for (crt, c) in crts.iter_mut().zip(cp) {
            crt.add(c, q);
        }
    }
    IntPoly::new(crts.iter().map(Crt::symmetric).collect())
}

/// Characteristic polynomial `det(xI - A)` modulo the prime `q`, descending coefficients.
fn charpoly_mod(mut h: Vec<Vec<u64>>, q: u64) -> Vec<u64> {
    let n = h.len();
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + q - b };
    // upper Hessenberg form by similarity transformations
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = arith::inv_mod(h[j + 1][j], q).unwrap();
        for k in j + 2..n {
            if h[k][j] == 0 {
                continue;
            }
            let u = arith::mul_mod(h[k][j], inv, q);
            for c in 0..n {
                let t = arith::mul_mod(u, h[j + 1][c], q);
                h[k][c] = sub(h[k][c], t);
            }
            for row in h.iter_mut() {
                let t = arith::mul_mod(u, row[k], q);
                row[j + 1] = (row[j + 1] + t) % q;
            }
        }
    }
    // p[m] = charpoly of the leading m x m block, ascending coefficients
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        let prev = &p[m - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % q;
            next[i] = sub(next[i], arith::mul_mod(h[m - 1][m - 1], c, q));
        }
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = arith::mul_mod(prod, h[i][i - 1], q);
            let coef = arith::mul_mod(h[i - 1][m - 1], prod, q);
            if coef == 0 {
                continue;
            }
            for (k, &c) in p[i - 1].iter().enumerate() {
                next[k] = sub(next[k], arith::mul_mod(coef, c, q));
            }
        }
        p.push(next);
    }
    let mut out = p.pop().unwrap();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_example_polynomials() {
        let y = IntMatrix::from_i64_rows(&[[2, 1], [1, 2]]);
        assert_eq!(y.reversed_char_poly().unwrap(), IntPoly::from_i64s(&[1, -4, 3]));
        let x = IntMatrix::from_i64_rows(&[[3]]);
        assert_eq!(x.reversed_char_poly().unwrap(), IntPoly::from_i64s(&[1, -3]));
        let s = IntMatrix::from_i64_rows(&[[2, 2], [2, 2]]);
        assert_eq!(s.reversed_char_poly().unwrap(), IntPoly::from_i64s(&[1, -4]));
        let r = IntMatrix::zeros(2, 3);
        assert!(matches!(r.reversed_char_poly(), Err(Error::Dimension(_))));
        assert_eq!(IntMatrix::zeros(0, 0).reversed_char_poly().unwrap(), IntPoly::one());
    }

    #[test]
    fn determinant_and_rank() {
        let m = IntMatrix::from_i64_rows(&[[0, 2, 1], [1, 1, 1], [2, 0, 3]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-4));
        let s = IntMatrix::from_i64_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(s.rank(), 2);
        assert!(s.det().unwrap().is_zero());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
            .collect();
        IntMatrix::from_i64_rows(&rows)
    }

    #[test]
    fn all_char_poly_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=14 {
            for _ in 0..3 {
                let a = random_matrix(&mut rng, n, -6, 6);
                let interp = reversed_char_poly_interpolation(&a);
                let modular = reversed_char_poly_multimodular(&a);
                assert_eq!(interp, modular, "n = {n}");
                if n <= 10 {
                    assert_eq!(reversed_char_poly_berkowitz(&a), interp, "n = {n}");
                }
            }
        }
    }

    #[test]
    fn evaluation_matches_bareiss() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 9, 30] {
            let a = random_matrix(&mut rng, n, -4, 4);
            let g = a.reversed_char_poly().unwrap();
            for u0 in -2i64..=2 {
                let u = BigInt::from(u0);
                let direct = IntMatrix::identity(n).checked_sub(&a.scale(&u)).unwrap().det().unwrap();
                assert_eq!(g.eval(&u), direct, "n = {n}, u = {u0}");
            }
        }
    }
}
