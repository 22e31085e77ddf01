//! Finite abelian groups given as products of cyclic groups.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

/// `Z/n_0 x Z/n_1 x ...`. Elements are dense indices in mixed radix with
/// component 0 most significant, so index order is lexicographic order of
/// the reduced coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(Error::Dimension("cyclic factor of order zero".into()));
        }
        Ok(FiniteAbelianGroup { cyclic_orders })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            cyclic_orders: Vec::new(),
        }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().product::<u64>() as usize
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.cyclic_orders.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn to_vec(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.cyclic_orders.len()];
        for (slot, &n) in v.iter_mut().zip(&self.cyclic_orders).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        v
    }

    /// Index of the element with the given coordinates, reduced componentwise.
    pub fn from_vec(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.cyclic_orders.len() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has {} cyclic factors",
                coords.len(),
                self.cyclic_orders.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.cyclic_orders)
            .fold(0usize, |acc, (&c, &n)| {
                acc * n as usize + c.rem_euclid(n as i64) as usize
            }))
    }

    fn combine(&self, a: usize, b: usize, sign: i64) -> usize {
        let (va, vb) = (self.to_vec(a), self.to_vec(b));
        let mut idx = 0usize;
        for ((x, y), &n) in va.iter().zip(&vb).zip(&self.cyclic_orders) {
            let s = (*x as i64 + sign * *y as i64).rem_euclid(n as i64);
            idx = idx * n as usize + s as usize;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.cyclic_orders.len() == 1 {
            return (a + b) % self.order();
        }
        self.combine(a, b, 1)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        if self.cyclic_orders.len() == 1 {
            let n = self.order();
            return (a + n - b) % n;
        }
        self.combine(a, b, -1)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    pub fn scalar(&self, k: i64, a: usize) -> usize {
        let v = self.to_vec(a);
        let scaled: Vec<i64> = v.iter().map(|&x| x as i64 * k).collect();
        self.from_vec(&scaled).unwrap()
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.to_vec(a)
            .iter()
            .zip(&self.cyclic_orders)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    /// Elements of order exactly two.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| self.element_order(a) == 2)
            .collect()
    }

    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = Subgroup::trivial(self);
        seen.insert(trivial.elements.clone());
        let mut out = vec![trivial];
        let mut k = 0;
        while k < out.len() {
            for g in 0..self.order() {
                if out[k].contains(g) {
                    continue;
                }
                let mut gens = out[k].elements.clone();
                gens.push(g);
                let s = Subgroup::generated_by(self, &gens);
                if seen.insert(s.elements.clone()) {
                    out.push(s);
                }
            }
            k += 1;
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        out
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: FiniteAbelianGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteAbelianGroup) -> Self {
        Subgroup {
            group: g.clone(),
            elements: vec![0],
        }
    }

    pub fn whole(g: &FiniteAbelianGroup) -> Self {
        Subgroup {
            group: g.clone(),
            elements: (0..g.order()).collect(),
        }
    }

    pub fn generated_by(g: &FiniteAbelianGroup, gens: &[usize]) -> Self {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.add(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            group: g.clone(),
            elements: set.into_iter().collect(),
        }
    }

    /// Validates that the given elements form a subgroup.
    pub fn from_elements(g: &FiniteAbelianGroup, elements: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotASubgroup(format!("{bad} is not a group element")));
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&g.sub(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: {:?} - {:?}",
                        g.to_vec(a),
                        g.to_vec(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            group: g.clone(),
            elements: set.into_iter().collect(),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Lexicographically minimal coset representatives, in increasing order.
    pub fn coset_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.group.order()];
        let mut reps = Vec::with_capacity(self.index());
        for a in 0..self.group.order() {
            if seen[a] {
                continue;
            }
            reps.push(a);
            for &h in &self.elements {
                seen[self.group.add(a, h)] = true;
            }
        }
        reps
    }

    /// For each group element, the position of its coset in `coset_representatives`.
    pub fn coset_index(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.group.order()];
        for (k, a) in self.coset_representatives().into_iter().enumerate() {
            for &h in &self.elements {
                out[self.group.add(a, h)] = k;
            }
        }
        out
    }

    /// The quotient `G/H` as an abstract group, with the projection on indices.
    pub fn quotient(&self) -> QuotientMap {
        let g = &self.group;
        let k = g.cyclic_orders.len();
        let mut rel: Vec<Vec<BigInt>> = Vec::new();
        for (i, &n) in g.cyclic_orders.iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(n);
            rel.push(r);
        }
        for &h in &self.elements {
            rel.push(g.to_vec(h).into_iter().map(BigInt::from).collect());
        }
        if k == 0 {
            return QuotientMap {
                quotient: FiniteAbelianGroup::trivial(),
                map: vec![0; g.order()],
            };
        }
        let snf = smith_normal_form(&IntMatrix::from_big_rows(rel));
        let keep: Vec<usize> = (0..k)
            .filter(|&i| snf.invariant_factors[i] != BigInt::from(1))
            .collect();
        let orders: Vec<u64> = keep
            .iter()
            .map(|&i| snf.invariant_factors[i].to_u64().expect("finite quotient"))
            .collect();
        let quotient = FiniteAbelianGroup::new(orders).unwrap();
        let r = &snf.right_transform;
        let map = (0..g.order())
            .map(|a| {
                let v = g.to_vec(a);
                let coords: Vec<i64> = keep
                    .iter()
                    .map(|&c| {
                        let s = (0..k).fold(BigInt::zero(), |acc, i| acc + BigInt::from(v[i]) * r.get(i, c));
                        s.mod_floor(&snf.invariant_factors[c]).to_i64().unwrap()
                    })
                    .collect();
                quotient.from_vec(&coords).unwrap()
            })
            .collect();
        QuotientMap { quotient, map }
    }
}

/// A surjection `G -> G/H` onto an abstract finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub quotient: FiniteAbelianGroup,
    pub map: Vec<usize>,
}
