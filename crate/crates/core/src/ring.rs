//! Commutative rings used as matrix and polynomial coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative ring whose zero and one may depend on context carried by a value
/// (a group for group rings, a modulus for cyclotomic fields).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn rzero(&self) -> Self;
    fn rone(&self) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn is_rzero(&self) -> bool;
    fn rneg(&self) -> Self {
        self.rzero().rsub(self)
    }
    fn rint(&self, n: &BigInt) -> Self;
}

impl Ring for BigInt {
    fn rzero(&self) -> Self {
        BigInt::zero()
    }
    fn rone(&self) -> Self {
        BigInt::one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_rzero(&self) -> bool {
        self.is_zero()
    }
    fn rint(&self, n: &BigInt) -> Self {
        n.clone()
    }
}

/// Dense polynomial over a [`Ring`], ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().is_some_and(Ring::is_rzero) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.rzero();
        Self::new(vec![c], zero)
    }

    /// `c * u^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.rzero();
        let mut coeffs = vec![zero.clone(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.rmul(x).radd(c))
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    /// `p(1 + t)`.
    pub fn shift_by_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].radd(&c[j + 1]);
            }
        }
        Self::new(c, self.zero.clone())
    }

    /// Order of vanishing at `u = 1`; `None` for the zero polynomial.
    pub fn order_at_one(&self) -> Option<usize> {
        self.shift_by_one().coeffs.iter().position(|c| !c.is_rzero())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn rzero(&self) -> Self {
        Poly::new(Vec::new(), self.zero.clone())
    }
    fn rone(&self) -> Self {
        Poly::constant(self.zero.rone())
    }
    fn radd(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).radd(&o.coeff(i))).collect(),
            self.zero.clone(),
        )
    }
    fn rsub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).rsub(&o.coeff(i))).collect(),
            self.zero.clone(),
        )
    }
    fn rmul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.rzero();
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_rzero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_rzero() {
                    out[i + j] = out[i + j].radd(&a.rmul(b));
                }
            }
        }
        Poly::new(out, self.zero.clone())
    }
    fn is_rzero(&self) -> bool {
        self.is_zero()
    }
    fn rint(&self, n: &BigInt) -> Self {
        Poly::constant(self.zero.rint(n))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// Characteristic polynomial `det(xI - A)` over a commutative ring by Berkowitz's
/// division-free recursion, returned in descending powers of `x`.
/// Read ascending, the same list is `det(I - A u)`.
pub fn berkowitz<R: Ring>(a: &[Vec<R>], one: &R) -> Vec<R> {
    let n = a.len();
    let zero = one.rzero();
    let mut p = vec![one.clone()];
    for k in (0..n).rev() {
        let m = n - k - 1;
        let mut t = vec![zero.clone(); m + 2];
        t[0] = one.clone();
        t[1] = a[k][k].rneg();
        let mut v: Vec<R> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        for ti in t.iter_mut().skip(2) {
            let rv = (0..m).fold(zero.clone(), |acc, j| acc.radd(&a[k][k + 1 + j].rmul(&v[j])));
            *ti = rv.rneg();
            v = (0..m)
                .map(|i| {
                    (0..m).fold(zero.clone(), |acc, j| {
                        acc.radd(&a[k + 1 + i][k + 1 + j].rmul(&v[j]))
                    })
                })
                .collect();
        }
        let mut next = vec![zero.clone(); m + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(m) {
                *slot = slot.radd(&t[i - j].rmul(&p[j]));
            }
        }
        p = next;
    }
    p
}

/// Determinant over a commutative ring.
pub fn determinant<R: Ring>(a: &[Vec<R>], one: &R) -> R {
    let n = a.len();
    let c = berkowitz(a, one).pop().unwrap();
    if n % 2 == 1 {
        c.rneg()
    } else {
        c
    }
}

/// `det(I - A u)` over a commutative ring.
pub fn reversed_char_poly<R: Ring>(a: &[Vec<R>], one: &R) -> Poly<R> {
    Poly::new(berkowitz(a, one), one.rzero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    #[test]
    fn generic_determinant_matches_bareiss() {
        let m = IntMatrix::from_i64_rows(&[[0, 2, 1, 5], [1, 1, 1, -2], [2, 0, 3, 7], [1, 1, 0, 4]]);
        let rows = m.to_rows();
        assert_eq!(determinant(&rows, &BigInt::one()), m.det().unwrap());
    }

    #[test]
    fn determinant_over_polynomials() {
        // det [[1 - u, -u], [-u, 1 - u]] = 1 - 2u
        let one = Poly::constant(BigInt::one());
        let p = |c: &[i64]| Poly::new(c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::zero());
        let a = vec![vec![p(&[1, -1]), p(&[0, -1])], vec![p(&[0, -1]), p(&[1, -1])]];
        assert_eq!(determinant(&a, &one), p(&[1, -2]));
    }

    #[test]
    fn order_at_one() {
        let p = Poly::new(
            [1i64, -3, 3, -1].iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::zero(),
        );
        assert_eq!(p.order_at_one(), Some(3));
    }
}
