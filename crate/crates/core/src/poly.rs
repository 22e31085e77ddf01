//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `Z[u]`, coefficients stored in ascending degree.
///
/// The representation is normalized: the last stored coefficient is nonzero,
/// and the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, failing if any division is inexact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::Internal(format!("inexact scalar division by {c}")));
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c).expect("content divides every coefficient")
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Division by a monic polynomial: returns `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs[..dd].iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (IntPoly::new(q), IntPoly::new(r))
    }

    pub fn rem_monic(&self, d: &IntPoly) -> IntPoly {
        self.div_rem_monic(d).1
    }

    /// Exact division in `Z[x]`; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Internal("division by the zero polynomial".into()))?;
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Err(Error::Internal("polynomial division is inexact".into()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(&lead);
            if !rem.is_zero() {
                return Err(Error::Internal("polynomial division is inexact".into()));
            }
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("polynomial division is inexact".into()));
        }
        Ok(IntPoly::new(q))
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < dd {
            return self.clone();
        }
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut steps = da - dd + 1;
        for k in (0..=da - dd).rev() {
            let c = r[k + dd].clone();
            for x in r.iter_mut() {
                *x *= &lead;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            steps -= 1;
        }
        debug_assert_eq!(steps, 0);
        r.truncate(dd);
        IntPoly::new(r)
    }

    /// Greatest common divisor in `Z[x]`, normalized to positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &BigInt) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Resultant `Res(self, other)` by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut sign = BigInt::one();
        let (mut da, mut db) = (da, db);
        if da < db {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut da, &mut db);
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
        }
        if db == 0 {
            return sign * b.leading().pow(da as u32);
        }
        let ca = a.content();
        let cb = b.content();
        a = a.div_scalar_exact(&ca).unwrap();
        b = b.div_scalar_exact(&cb).unwrap();
        let t = ca.pow(db as u32) * cb.pow(da as u32);
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            if r.is_zero() {
                return BigInt::zero();
            }
            let denom = &g * h.pow(delta);
            b = r.div_scalar_exact(&denom).expect("subresultant division is exact");
            g = a.leading();
            // h <- g^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                let num = g.pow(delta);
                let den = h.pow(delta - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                q
            };
            let db = b.degree().unwrap();
            if db == 0 {
                let da = a.degree().unwrap() as u32;
                let num = b.leading().pow(da);
                let hval = if da == 0 {
                    num * &h
                } else {
                    let den = h.pow(da - 1);
                    let (q, rem) = num.div_rem(&den);
                    debug_assert!(rem.is_zero());
                    q
                };
                return sign * t * hval;
            }
        }
    }

    /// Human-readable rendering in the given variable, e.g. `1 - 4u + 3u^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.display_in("x"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("u"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Order of vanishing at `u = 1`, the first nonvanishing Taylor coefficient there,
/// and the full shifted polynomial `p(1 + t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorAtOne {
    pub order: usize,
    pub special_value: BigInt,
    pub shifted: IntPoly,
}

pub fn taylor_at_one(p: &IntPoly) -> Result<TaylorAtOne> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shifted = p.taylor_shift(&BigInt::one());
    let order = shifted
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial has a nonzero shifted coefficient");
    Ok(TaylorAtOne {
        order,
        special_value: shifted.coeffs()[order].clone(),
        shifted,
    })
}

/// `(x^n - 1) / prod_{d | n, d < n} Phi_d`, the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n > 0);
    let mut p = IntPoly::monomial(BigInt::one(), n as usize) - IntPoly::one();
    for d in 1..n {
        if n % d == 0 {
            p = p
                .div_exact(&cyclotomic_polynomial(d))
                .expect("cyclotomic factors divide x^n - 1");
        }
    }
    p
}
