//! Dense polynomials over a prime field and Berlekamp factorization.

use crate::arith::{inv_mod, mul_mod};

/// A polynomial over `F_ell`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    ell: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(ell: u64, coeffs: Vec<u64>) -> Self {
        let mut p = FpPoly {
            ell,
            coeffs: coeffs.into_iter().map(|c| c % ell).collect(),
        };
        p.trim();
        p
    }

    pub fn zero(ell: u64) -> Self {
        Self::new(ell, vec![])
    }

    pub fn constant(ell: u64, c: u64) -> Self {
        Self::new(ell, vec![c])
    }

    pub fn x(ell: u64) -> Self {
        Self::new(ell, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.ell
            })
            .collect();
        Self::new(self.ell, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&a| (self.ell - a) % self.ell).collect();
        Self::new(self.ell, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        let c = self.coeffs.iter().map(|&a| mul_mod(a, k, self.ell)).collect();
        Self::new(self.ell, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ell);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.ell)) % self.ell;
            }
        }
        Self::new(self.ell, c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.ell).expect("field"))
    }

    /// `(q, r)` with `self = q d + r`; `d` nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.leading(), self.ell).expect("field");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.ell), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, self.ell);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &b) in d.coeffs.iter().enumerate() {
                let t = mul_mod(c, b, self.ell);
                r[k + i] = (r[k + i] + self.ell - t) % self.ell;
            }
        }
        (Self::new(self.ell, q), Self::new(self.ell, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s self + t o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let ell = self.ell;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(ell, 1), Self::zero(ell));
        let (mut t0, mut t1) = (Self::zero(ell), Self::constant(ell, 1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.leading(), ell).expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::constant(self.ell, 1).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.ell) + c) % self.ell)
    }

    /// Order on monic polynomials of equal degree: compare coefficients from the
    /// top degree down.
    pub fn lex_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

/// Kernel of a `rows x cols` matrix over `F_ell` (right kernel, column vectors).
fn kernel_mod(mut m: Vec<Vec<u64>>, cols: usize, ell: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], ell).unwrap();
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, ell);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let t = mul_mod(k, m[r][j], ell);
                    m[i][j] = (m[i][j] + ell - t) % ell;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (ell - m[i][f]) % ell;
            }
            v
        })
        .collect()
}

/// Monic irreducible factors of a squarefree polynomial of positive degree, sorted
/// by degree and then by [`FpPoly::lex_cmp`].
pub fn berlekamp(q: &FpPoly) -> Vec<FpPoly> {
    let ell = q.ell;
    let q = q.monic();
    let d = q.degree().expect("nonzero polynomial");
    if d <= 1 {
        return vec![q];
    }
    // row i holds x^{ell i} mod q
    let xl = FpPoly::x(ell).pow_mod(ell, &q);
    let mut rows = Vec::with_capacity(d);
    let mut cur = FpPoly::constant(ell, 1);
    for _ in 0..d {
        let mut row = cur.coeffs.clone();
        row.resize(d, 0);
        rows.push(row);
        cur = cur.mul(&xl).rem(&q);
    }
    // h(x)^ell = h(x) iff v (Q - I) = 0, i.e. (Q - I)^T v = 0
    let mut t = vec![vec![0u64; d]; d];
    for (i, row) in rows.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            t[j][i] = a;
        }
    }
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = (row[i] + ell - 1) % ell;
    }
    let basis = kernel_mod(t, d, ell);
    let r = basis.len();
    let mut factors = vec![q.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let h = FpPoly::new(ell, v.clone());
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            let mut pending = vec![u];
            for s in 0..ell {
                if pending.len() + next.len() >= r {
                    break;
                }
                let mut still = Vec::new();
                for w in pending {
                    if w.degree() == Some(1) {
                        still.push(w);
                        continue;
                    }
                    let g = w.gcd(&h.sub(&FpPoly::constant(ell, s)));
                    let dg = g.degree().unwrap_or(0);
                    if dg > 0 && dg < w.degree().unwrap() {
                        let (other, _) = w.div_rem(&g);
                        still.push(g);
                        still.push(other.monic());
                    } else {
                        still.push(w);
                    }
                }
                pending = still;
            }
            next.extend(pending);
        }
        factors = next;
    }
    factors.sort_by(|a, b| a.lex_cmp(b));
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ell: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(ell, c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = p(7, &[1, 2, 3]);
        let b = p(7, &[6, 1]);
        let (q, r) = a.mul(&b).add(&p(7, &[4])).div_rem(&b);
        assert_eq!(q, a);
        assert_eq!(r, p(7, &[4]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn factor_cyclotomic() {
        // x^4 + 1 over F_3 splits into two quadratics
        let f = berlekamp(&p(3, &[1, 0, 0, 0, 1]));
        assert_eq!(f.len(), 2);
        let prod = f.iter().fold(p(3, &[1]), |acc, g| acc.mul(g));
        assert_eq!(prod, p(3, &[1, 0, 0, 0, 1]));
        assert_eq!(f[0], p(3, &[2, 1, 1]));
        // x^2 + 1 over F_5 = (x - 2)(x - 3)
        let f = berlekamp(&p(5, &[1, 0, 1]));
        assert_eq!(f, vec![p(5, &[2, 1]), p(5, &[3, 1])]);
    }
}
