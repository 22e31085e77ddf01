//! The integral group ring `Z[G]` of a finite abelian group.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::group::{FiniteAbelianGroup, QuotientMap, Subgroup};
use crate::ring::{Poly, Ring};

/// An element `sum a_g g` of `Z[G]`, stored densely by group index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: Arc<FiniteAbelianGroup>,
    coeffs: Vec<BigInt>,
}

/// A polynomial in `u` with coefficients in `Z[G]`.
pub type GroupRingPolynomial = Poly<GroupRingElement>;

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteAbelianGroup>) -> Self {
        GroupRingElement {
            coeffs: vec![BigInt::zero(); group.order()],
            group: group.clone(),
        }
    }

    pub fn one(group: &Arc<FiniteAbelianGroup>) -> Self {
        Self::basis(group, group.identity())
    }

    /// The group element `a` itself.
    pub fn basis(group: &Arc<FiniteAbelianGroup>, a: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[a] = BigInt::one();
        x
    }

    pub fn from_coeffs(group: &Arc<FiniteAbelianGroup>, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), group.order(), "one coefficient per group element");
        GroupRingElement {
            group: group.clone(),
            coeffs,
        }
    }

    /// `sum_{g in S} g`, e.g. the norm element of a subgroup.
    pub fn sum_of(group: &Arc<FiniteAbelianGroup>, elements: &[usize]) -> Self {
        let mut x = Self::zero(group);
        for &a in elements {
            x.coeffs[a] += 1;
        }
        x
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &BigInt {
        &self.coeffs[a]
    }

    pub fn add_term(&mut self, a: usize, c: &BigInt) {
        self.coeffs[a] += c;
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Image under `Z[G] -> Z[G/H]` induced by a quotient map.
    pub fn project(&self, q: &QuotientMap, target: &Arc<FiniteAbelianGroup>) -> Self {
        assert_eq!(**target, q.quotient);
        let mut out = Self::zero(target);
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[q.map[a]] += c;
            }
        }
        out
    }

    /// True iff every group element with nonzero coefficient lies in `h`.
    pub fn supported_in(&self, h: &Subgroup) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(a, c)| c.is_zero() || h.contains(a))
    }

    /// The image under the automorphism `g -> k g`.
    pub fn twist(&self, k: i64) -> Self {
        let mut out = Self::zero(&self.group);
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[self.group.scalar(k, a)] += c;
            }
        }
        out
    }
}

impl Ring for GroupRingElement {
    fn rzero(&self) -> Self {
        Self::zero(&self.group)
    }
    fn rone(&self) -> Self {
        Self::one(&self.group)
    }
    fn radd(&self, o: &Self) -> Self {
        debug_assert_eq!(self.group, o.group);
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    fn rsub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.group, o.group);
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
    fn rmul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.group, o.group);
        let mut out = Self::zero(&self.group);
        let g = &*self.group;
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[g.add(a, b)] += x * y;
                }
            }
        }
        out
    }
    fn is_rzero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn rint(&self, n: &BigInt) -> Self {
        Self::one(&self.group).scale(n)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = self
                .group
                .to_vec(a)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            if first {
                write!(f, "{c}[{label}]")?;
            } else if c < &BigInt::zero() {
                write!(f, " - {}[{label}]", -c)?;
            } else {
                write!(f, " + {c}[{label}]")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_axioms_on_samples() {
        let g = Arc::new(FiniteAbelianGroup::new(vec![2, 3]).unwrap());
        let x = GroupRingElement::from_coeffs(&g, [1, -2, 0, 3, 1, 1].map(BigInt::from).to_vec());
        let y = GroupRingElement::from_coeffs(&g, [0, 1, 4, -1, 0, 2].map(BigInt::from).to_vec());
        assert_eq!(x.rmul(&y), y.rmul(&x));
        assert_eq!(x.rmul(&y).augmentation(), x.augmentation() * y.augmentation());
        assert_eq!(x.rmul(&x.rone()), x);
        let n = GroupRingElement::sum_of(&g, &(0..6).collect::<Vec<_>>());
        assert_eq!(x.rmul(&n), n.scale(&x.augmentation()));
    }

    #[test]
    fn projection_is_a_ring_map() {
        let g = Arc::new(FiniteAbelianGroup::cyclic(6));
        let h = Subgroup::generated_by(&g, &[3]);
        let q = h.quotient();
        let target = Arc::new(q.quotient.clone());
        let x = GroupRingElement::from_coeffs(&g, [1, 2, 3, 4, 5, 6].map(BigInt::from).to_vec());
        let y = GroupRingElement::from_coeffs(&g, [0, -1, 0, 2, 0, 1].map(BigInt::from).to_vec());
        assert_eq!(
            x.rmul(&y).project(&q, &target),
            x.project(&q, &target).rmul(&y.project(&q, &target))
        );
    }
}
