//! Finite-precision arithmetic in the unramified extension `Z_ell[mu_n]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{is_prime, multiplicative_order, valuation};
use crate::error::{Error, Result};
use crate::fp_poly::{berlekamp, FpPoly};
use crate::poly::{cyclotomic_polynomial, IntPoly};

pub const DEFAULT_PRECISION: u32 = 8;
pub const PRECISION_CAP: u32 = 512;

/// `Z[x] / (ell^k, q(x))` where `q` is a Hensel lift of an irreducible factor of
/// `Phi_n` mod `ell`; the class of `x` is the chosen primitive `n`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    ell: u64,
    n: u64,
    f: u32,
    residue_factor: FpPoly,
    modulus: IntPoly,
    precision: u32,
    ell_power: BigInt,
}

fn to_int(p: &FpPoly) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

fn to_fp(p: &IntPoly, ell: u64) -> FpPoly {
    let l = BigInt::from(ell);
    FpPoly::new(
        ell,
        p.coeffs()
            .iter()
            .map(|c| {
                let r: BigInt = ((c % &l) + &l) % &l;
                u64::try_from(r).unwrap()
            })
            .collect(),
    )
}

/// Lifts `Phi = q m (mod ell)` to a factorization modulo `ell^k`, returning the lift of `q`.
fn hensel_lift(phi: &IntPoly, q0: &FpPoly, ell: u64, k: u32) -> IntPoly {
    let phi_bar = to_fp(phi, ell);
    let (m0, r) = phi_bar.div_rem(q0);
    debug_assert!(r.is_zero());
    let (g, s, _) = m0.ext_gcd(q0);
    debug_assert_eq!(g.degree(), Some(0));
    let mut q = to_int(q0);
    let mut m = to_int(&m0);
    let l = BigInt::from(ell);
    let mut power = l.clone();
    for _ in 1..k {
        let diff = phi - &(&q * &m);
        let e = to_fp(&diff.div_scalar_exact(&power).expect("congruence holds"), ell);
        let dq = e.mul(&s).rem(q0);
        let (dm, rest) = e.sub(&m0.mul(&dq)).div_rem(q0);
        debug_assert!(rest.is_zero());
        q = &q + &to_int(&dq).scale(&power);
        m = &m + &to_int(&dm).scale(&power);
        power *= &l;
    }
    q.reduce_mod(&power)
}

/// Builds the context, selecting the least irreducible factor of `Phi_n` mod `ell`
/// in the order of [`FpPoly::lex_cmp`].
pub fn unramified_context(ell: u64, n: u64, k: u32) -> Result<PadicContext> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if n == 0 || n % ell == 0 {
        return Err(Error::EllDividesOrder { ell, n });
    }
    let phi = cyclotomic_polynomial(n);
    let factors = berlekamp(&to_fp(&phi, ell));
    let q0 = factors.into_iter().next().expect("nonempty factorization");
    PadicContext::from_factor(ell, n, q0, k.max(1))
}

impl PadicContext {
    /// Context attached to a given monic irreducible factor of `Phi_n` mod `ell`.
    pub fn from_factor(ell: u64, n: u64, residue_factor: FpPoly, k: u32) -> Result<Self> {
        let f = multiplicative_order(ell % n.max(1), n).unwrap_or(1) as u32;
        let f = if n == 1 { 1 } else { f };
        let phi = cyclotomic_polynomial(n);
        let factor = residue_factor.monic();
        if factor.degree() != Some(f as usize) || !to_fp(&phi, ell).rem(&factor).is_zero() {
            return Err(Error::Internal(format!(
                "{factor:?} is not a degree-{f} factor of Phi_{n} mod {ell}"
            )));
        }
        let modulus = hensel_lift(&phi, &factor, ell, k);
        Ok(PadicContext {
            ell,
            n,
            f,
            residue_factor: factor,
            modulus,
            precision: k,
            ell_power: BigInt::from(ell).pow(k),
        })
    }

    /// The same root of unity at another precision.
    pub fn with_precision(&self, k: u32) -> Self {
        Self::from_factor(self.ell, self.n, self.residue_factor.clone(), k).expect("factor already checked")
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Residue degree `f = ord_n(ell)`.
    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn residue_factor(&self) -> &FpPoly {
        &self.residue_factor
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Reduces `sum_e c_e zeta^e` (exponents mod `n`) into the context.
    pub fn reduce_exponent_sum(&self, coeffs_by_exponent: &[BigInt]) -> IntPoly {
        assert_eq!(coeffs_by_exponent.len() as u64, self.n);
        IntPoly::new(coeffs_by_exponent.to_vec())
            .reduce_mod(&self.ell_power)
            .rem_monic(&self.modulus)
            .reduce_mod(&self.ell_power)
    }

    /// `ell`-adic valuation of an element, `None` if it vanishes at this precision.
    pub fn valuation(&self, x: &IntPoly) -> Option<u32> {
        x.coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| valuation(c, self.ell))
            .min()
    }

    /// `zeta^k` reduced into the context.
    pub fn zeta_pow(&self, k: u64) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.n as usize];
        c[(k % self.n) as usize] = BigInt::one();
        self.reduce_exponent_sum(&c)
    }

    pub fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        (a * b)
            .reduce_mod(&self.ell_power)
            .rem_monic(&self.modulus)
            .reduce_mod(&self.ell_power)
    }
}

/// Valuation of `sum_e c_e zeta^e`, raising the precision from `ctx` by doubling
/// until the value is nonzero or `cap` is exceeded. Returns `(valuation, precision)`.
pub fn adaptive_valuation(ctx: &PadicContext, coeffs_by_exponent: &[BigInt], cap: u32) -> Result<(u32, u32)> {
    let mut k = ctx.precision().max(1);
    let mut cur = ctx.clone();
    loop {
        if k > cap {
            return Err(Error::PrecisionCapExhausted { cap });
        }
        if cur.precision() != k {
            cur = ctx.with_precision(k);
        }
        if let Some(v) = cur.valuation(&cur.reduce_exponent_sum(coeffs_by_exponent)) {
            if v < k {
                return Ok((v, k));
            }
        }
        k = k.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contexts() {
        let c = unramified_context(3, 4, 8).unwrap();
        assert_eq!(c.residue_degree(), 2);
        assert_eq!(c.residue_factor(), &FpPoly::new(3, vec![1, 0, 1]));
        let phi = cyclotomic_polynomial(4);
        assert!(phi.rem_monic(c.modulus()).reduce_mod(&BigInt::from(3u32.pow(8))).is_zero());
        let c = unramified_context(2, 1, 4).unwrap();
        assert_eq!(c.residue_degree(), 1);
        assert_eq!(unramified_context(3, 22, 4).unwrap().residue_degree(), 5);
        assert_eq!(unramified_context(2, 4, 4), Err(Error::EllDividesOrder { ell: 2, n: 4 }));
        assert_eq!(unramified_context(4, 5, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn zeta_has_order_n() {
        for (ell, n) in [(3u64, 4u64), (5, 4), (3, 22), (11, 6), (7, 10)] {
            let c = unramified_context(ell, n, 6).unwrap();
            let one = c.zeta_pow(0);
            let z = c.zeta_pow(1);
            let mut acc = one.clone();
            for k in 1..=n {
                acc = c.mul(&acc, &z);
                assert_eq!(acc == one, k == n, "ell {ell}, n {n}, k {k}");
            }
        }
    }

    #[test]
    fn valuations_and_precision() {
        let c = unramified_context(5, 4, 2).unwrap();
        // 5^3 needs precision 4
        let mut v = vec![BigInt::zero(); 4];
        v[0] = BigInt::from(125);
        assert_eq!(adaptive_valuation(&c, &v, 512).unwrap(), (3, 4));
        let zero = vec![BigInt::zero(); 4];
        assert_eq!(adaptive_valuation(&c, &zero, 16), Err(Error::PrecisionCapExhausted { cap: 16 }));
    }
}
