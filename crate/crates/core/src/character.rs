//! One-dimensional characters of finite abelian groups.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::group_ring::{GroupRingElement, GroupRingPolynomial};
use crate::ring::{Poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `psi(a) = zeta_e^{sum_i x_i a_i (e / n_i)}` where `e` is the group exponent,
/// `n_i` the cyclic orders and `x` the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    group: FiniteAbelianGroup,
    exponents: Vec<u64>,
    parity: Option<Parity>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.cyclic_orders().len() {
            return Err(Error::CharacterMismatch(format!(
                "{} exponents for {} cyclic factors",
                exponents.len(),
                group.cyclic_orders().len()
            )));
        }
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(group.cyclic_orders())
            .map(|(x, n)| x % n)
            .collect();
        let mut c = Character {
            group: group.clone(),
            exponents,
            parity: None,
        };
        // parity is read off at the unique element of order two, when there is one
        if let [j] = group.involutions()[..] {
            let e = group.exponent();
            c.parity = Some(if c.value_exponent(j) == e / 2 {
                Parity::Odd
            } else {
                Parity::Even
            });
        }
        Ok(c)
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::new(group, vec![0; group.cyclic_orders().len()]).unwrap()
    }

    /// All characters, in the index order of their exponent vectors.
    pub fn all(group: &FiniteAbelianGroup) -> Vec<Character> {
        (0..group.order())
            .map(|i| Self::new(group, group.to_vec(i)).unwrap())
            .collect()
    }

    /// For a cyclic group of order `n`, the character `psi_j(generator) = zeta_n^j`.
    pub fn cyclic(group: &FiniteAbelianGroup, j: u64) -> Result<Self> {
        if group.cyclic_orders().len() != 1 {
            return Err(Error::CharacterMismatch("group is not presented as cyclic".into()));
        }
        Self::new(group, vec![j])
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Position in [`Character::all`].
    pub fn index(&self) -> usize {
        let v: Vec<i64> = self.exponents.iter().map(|&x| x as i64).collect();
        self.group.from_vec(&v).unwrap()
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Some(Parity::Odd)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> Self {
        let neg: Vec<u64> = self
            .exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Self::new(&self.group, neg).unwrap()
    }

    /// Order of the character as a group element of the dual.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    /// `k` with `psi(a) = zeta_e^k`.
    pub fn value_exponent(&self, a: usize) -> u64 {
        let e = self.group.exponent();
        let coords = self.group.to_vec(a);
        coords
            .iter()
            .zip(&self.exponents)
            .zip(self.group.cyclic_orders())
            .fold(0u64, |acc, ((&ai, &xi), &ni)| {
                (acc + (ai * xi % ni) * (e / ni)) % e
            })
    }

    /// The field `Q(zeta_e)` where values live.
    pub fn value_field(&self) -> Arc<CyclotomicField> {
        CyclotomicField::new(self.group.exponent())
    }

    fn check_field(&self, field: &Arc<CyclotomicField>) -> Result<()> {
        if field.order() != self.group.exponent() {
            return Err(Error::CharacterMismatch(format!(
                "values live in Q(zeta_{}), not Q(zeta_{})",
                self.group.exponent(),
                field.order()
            )));
        }
        Ok(())
    }

    pub fn value(&self, field: &Arc<CyclotomicField>, a: usize) -> Result<CyclotomicNumber> {
        self.check_field(field)?;
        Ok(CyclotomicNumber::zeta_pow(field, self.value_exponent(a) as i64))
    }

    /// `psi(sum a_g g) = sum a_g psi(g)`.
    pub fn apply(&self, field: &Arc<CyclotomicField>, x: &GroupRingElement) -> Result<CyclotomicNumber> {
        self.check_field(field)?;
        if **x.group() != self.group {
            return Err(Error::CharacterMismatch(
                "group ring element lives over a different group".into(),
            ));
        }
        let e = field.order() as usize;
        let mut acc = vec![num_bigint::BigInt::zero(); e];
        for (a, c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc[self.value_exponent(a) as usize] += c;
            }
        }
        Ok(CyclotomicNumber::new(
            field,
            crate::poly::IntPoly::new(acc),
            num_bigint::BigInt::from(1),
        ))
    }
}

/// `g(u, psi) = psi(gamma(u))`, applied coefficientwise.
pub fn character_l(gamma: &GroupRingPolynomial, psi: &Character) -> Result<Poly<CyclotomicNumber>> {
    let field = psi.value_field();
    let zero = CyclotomicNumber::integer(&field, num_bigint::BigInt::zero());
    let mut coeffs = Vec::with_capacity(gamma.coeffs().len());
    for c in gamma.coeffs() {
        coeffs.push(psi.apply(&field, c)?);
    }
    if gamma.is_zero() && **gamma.zero_coeff().group() != psi.group {
        return Err(Error::CharacterMismatch("polynomial lives over a different group".into()));
    }
    Ok(Poly::new(coeffs, zero.rzero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_inverse() {
        let g = FiniteAbelianGroup::cyclic(6);
        let chars = Character::all(&g);
        let odd: Vec<u64> = chars
            .iter()
            .filter(|c| c.is_odd())
            .map(|c| c.exponents()[0])
            .collect();
        assert_eq!(odd, vec![1, 3, 5]);
        assert_eq!(chars[1].inverse().exponents(), &[5]);
        assert_eq!(chars[2].order(), 3);
        let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(Character::trivial(&klein).parity(), None);
    }

    #[test]
    fn values_multiply() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let field = CyclotomicField::new(g.exponent());
        for psi in Character::all(&g) {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let lhs = psi.value(&field, g.add(a, b)).unwrap();
                    let rhs = psi.value(&field, a).unwrap().rmul(&psi.value(&field, b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let wrong = CyclotomicField::new(3);
        assert!(matches!(Character::all(&g)[1].value(&wrong, 0), Err(Error::CharacterMismatch(_))));
    }

    #[test]
    fn orthogonality() {
        let g = Arc::new(FiniteAbelianGroup::cyclic(5));
        let field = CyclotomicField::new(5);
        let norm = GroupRingElement::sum_of(&g, &[0, 1, 2, 3, 4]);
        for psi in Character::all(&g) {
            let v = psi.apply(&field, &norm).unwrap();
            let expected = if psi.is_trivial() { 5 } else { 0 };
            assert_eq!(v.as_integer(), Some(num_bigint::BigInt::from(expected)));
        }
    }
}
