//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{cyclotomic_polynomial, IntPoly};
use crate::ring::Ring;

/// `Q(zeta_n) = Q[x] / Phi_n(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicField {
    n: u64,
    modulus: IntPoly,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Arc<Self> {
        Arc::new(CyclotomicField {
            n,
            modulus: cyclotomic_polynomial(n),
        })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    /// `[Q(zeta_n) : Q] = phi(n)`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

/// `numerator(zeta) / denominator` with the numerator reduced modulo `Phi_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    numerator: IntPoly,
    denominator: BigInt,
}

impl CyclotomicNumber {
    pub fn new(field: &Arc<CyclotomicField>, numerator: IntPoly, denominator: BigInt) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let mut x = CyclotomicNumber {
            numerator: numerator.rem_monic(field.modulus()),
            denominator,
            field: field.clone(),
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.denominator.is_negative() {
            self.denominator = -std::mem::take(&mut self.denominator);
            self.numerator = -&self.numerator;
        }
        if self.numerator.is_zero() {
            self.denominator = BigInt::one();
            return;
        }
        let g = self.numerator.content().gcd(&self.denominator);
        if !g.is_one() {
            self.numerator = self.numerator.div_scalar_exact(&g).unwrap();
            self.denominator /= g;
        }
    }

    pub fn integer(field: &Arc<CyclotomicField>, n: BigInt) -> Self {
        Self::new(field, IntPoly::constant(n), BigInt::one())
    }

    pub fn rational(field: &Arc<CyclotomicField>, num: BigInt, den: BigInt) -> Self {
        Self::new(field, IntPoly::constant(num), den)
    }

    /// `zeta_n^k`, for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order() as i64) as usize;
        Self::new(field, IntPoly::monomial(BigInt::one(), e), BigInt::one())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `Some((num, den))` when the number is rational.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        match self.numerator.degree() {
            None => Some((BigInt::zero(), BigInt::one())),
            Some(0) => Some((self.numerator.coeff(0), self.denominator.clone())),
            _ => None,
        }
    }

    /// The rational integer this number equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|(_, d)| d.is_one())
            .map(|(n, _)| n)
    }

    pub fn scale(&self, num: &BigInt, den: &BigInt) -> Self {
        Self::new(
            &self.field,
            self.numerator.scale(num),
            &self.denominator * den,
        )
    }

    /// Absolute norm `N_{Q(zeta_n)/Q}` as a reduced fraction.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let num = self.field.modulus().resultant(&self.numerator);
        let den = self.denominator.pow(self.field.degree() as u32);
        let g = num.gcd(&den);
        if g.is_zero() {
            return (num, BigInt::one());
        }
        (num / &g, den / g)
    }

    /// Image under the automorphism `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn conjugate(&self, k: u64) -> Self {
        let n = self.field.order();
        let mut coeffs = vec![BigInt::zero(); n as usize];
        for (i, c) in self.numerator.coeffs().iter().enumerate() {
            coeffs[((i as u64 * k) % n) as usize] += c;
        }
        Self::new(&self.field, IntPoly::new(coeffs), self.denominator.clone())
    }
}

impl Ring for CyclotomicNumber {
    fn rzero(&self) -> Self {
        Self::integer(&self.field, BigInt::zero())
    }
    fn rone(&self) -> Self {
        Self::integer(&self.field, BigInt::one())
    }
    fn radd(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        if self.denominator == o.denominator {
            return Self::new(&self.field, &self.numerator + &o.numerator, self.denominator.clone());
        }
        Self::new(
            &self.field,
            &self.numerator.scale(&o.denominator) + &o.numerator.scale(&self.denominator),
            &self.denominator * &o.denominator,
        )
    }
    fn rsub(&self, o: &Self) -> Self {
        self.radd(&o.rneg())
    }
    fn rneg(&self) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
    fn rmul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        Self::new(
            &self.field,
            &self.numerator * &o.numerator,
            &self.denominator * &o.denominator,
        )
    }
    fn is_rzero(&self) -> bool {
        self.numerator.is_zero()
    }
    fn rint(&self, n: &BigInt) -> Self {
        Self::integer(&self.field, n.clone())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = format!("z{}", self.field.order());
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator.display_in(&var))
        } else {
            write!(f, "({}) / {}", self.numerator.display_in(&var), self.denominator)
        }
    }
}
