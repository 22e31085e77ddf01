//! Integer lattices in canonical Hermite form: kernels, images, saturation and indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A sublattice of `Z^ambient_rank`, stored as linearly independent basis rows
/// in row-echelon form with positive pivots and reduced entries above pivots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// The lattice spanned by arbitrary generators.
    pub fn from_generators(ambient_rank: usize, gens: Vec<Vec<BigInt>>) -> Self {
        assert!(gens.iter().all(|g| g.len() == ambient_rank), "generator length mismatch");
        let (h, _) = hermite(gens, ambient_rank, false);
        let basis = h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        Lattice { ambient_rank, basis }
    }

    pub fn full(n: usize) -> Self {
        let gens = IntMatrix::identity(n).to_rows();
        Lattice { ambient_rank: n, basis: gens }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: Vec::new() }
    }

    /// Span of the columns of `m`.
    pub fn column_image(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), m.transpose().to_rows())
    }

    /// Span of the rows of `m`.
    pub fn row_image(m: &IntMatrix) -> Self {
        Self::from_generators(m.cols(), m.to_rows())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis(&self) -> IntMatrix {
        if self.basis.is_empty() {
            IntMatrix::zeros(0, self.ambient_rank)
        } else {
            IntMatrix::from_big_rows(self.basis.clone())
        }
    }

    /// Image under `x -> M x`.
    pub fn image_under(&self, m: &IntMatrix) -> Self {
        assert_eq!(m.cols(), self.ambient_rank);
        Self::from_generators(m.rows(), self.basis.iter().map(|b| m.apply(b)).collect())
    }

    pub fn sum(&self, other: &Lattice) -> Self {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_generators(self.ambient_rank, gens)
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let piv = b.iter().position(|x| !x.is_zero()).unwrap();
            if rest[..piv].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[piv].div_rem(&b[piv]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// The smallest saturated lattice containing this one.
    pub fn saturation(&self) -> Self {
        if self.basis.is_empty() {
            return Self::zero(self.ambient_rank);
        }
        // {y : y . b = 0 for every basis row b}, then the lattice annihilated by those y
        let annihilator = integer_kernel(&self.basis(), self.ambient_rank);
        if annihilator.is_empty() {
            return Self::full(self.ambient_rank);
        }
        let a = IntMatrix::from_big_rows(annihilator);
        Self::from_generators(self.ambient_rank, integer_kernel(&a, self.ambient_rank))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }
}

/// `[outer : inner]` for lattices of equal rank with `inner` contained in `outer`.
pub fn lattice_index(outer: &Lattice, inner: &Lattice) -> Result<BigInt> {
    if outer.ambient_rank != inner.ambient_rank {
        return Err(Error::Dimension(format!(
            "ambient ranks {} and {} differ",
            outer.ambient_rank, inner.ambient_rank
        )));
    }
    if outer.rank() != inner.rank() {
        return Err(Error::Dimension(format!(
            "outer rank {} differs from inner rank {}",
            outer.rank(),
            inner.rank()
        )));
    }
    let mut coords = Vec::with_capacity(inner.rank());
    for (k, b) in inner.basis.iter().enumerate() {
        match outer.coordinates(b) {
            Some(c) => coords.push(c),
            None => {
                return Err(Error::NotContained(format!(
                    "inner basis vector {k} ({}) is not in the outer lattice",
                    b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )))
            }
        }
    }
    if coords.is_empty() {
        return Ok(BigInt::one());
    }
    Ok(IntMatrix::from_big_rows(coords).det()?.abs())
}

/// Basis rows of `{x in Z^n : M x = 0}`, where `n = cols(M)`.
pub fn integer_kernel(m: &IntMatrix, n: usize) -> Vec<Vec<BigInt>> {
    assert_eq!(m.cols(), n);
    let (h, u) = hermite(m.transpose().to_rows(), m.rows(), true);
    let u = u.unwrap();
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect()
}

/// Integer kernel and saturated column image of the operator `x -> M x`.
pub fn kernel_and_image_saturation(m: &IntMatrix) -> (Lattice, Lattice) {
    let kernel = Lattice::from_generators(m.cols(), integer_kernel(m, m.cols()));
    let image = Lattice::column_image(m).saturation();
    (kernel, image)
}

/// Row-style Hermite normal form `U * A = H` with `U` unimodular.
/// Zero rows of `H` sit at the bottom.
fn hermite(
    mut a: Vec<Vec<BigInt>>,
    ncols: usize,
    track: bool,
) -> (Vec<Vec<BigInt>>, Option<Vec<Vec<BigInt>>>) {
    let m = a.len();
    let mut u: Option<Vec<Vec<BigInt>>> = track.then(|| IntMatrix::identity(m).to_rows());
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !a[i][c].is_zero()
                    && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            if let Some(u) = &mut u {
                u.swap(r, b);
            }
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_row(&mut a, i, r, &q);
                if let Some(u) = &mut u {
                    sub_row(u, i, r, &q);
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate(&mut a[r]);
            if let Some(u) = &mut u {
                negate(&mut u[r]);
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_row(&mut a, i, r, &q);
                if let Some(u) = &mut u {
                    sub_row(u, i, r, &q);
                }
            }
        }
        r += 1;
    }
    (a, u)
}

fn sub_row(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let s = a[src].clone();
    for (d, x) in a[dst].iter_mut().zip(&s) {
        if !x.is_zero() {
            *d -= q * x;
        }
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row {
        *x = -std::mem::take(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_one_example() {
        let m = IntMatrix::from_i64_rows(&[[-1, -1], [-1, -1]]);
        let (k, s) = kernel_and_image_saturation(&m);
        assert_eq!(k.basis_rows(), &[v(&[1, -1])]);
        assert_eq!(s.basis_rows(), &[v(&[1, 1])]);
    }

    #[test]
    fn invertible_and_zero() {
        let m = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]);
        let (k, s) = kernel_and_image_saturation(&m);
        assert_eq!(k.rank(), 0);
        assert_eq!(s, Lattice::full(2));
        let z = IntMatrix::zeros(3, 3);
        let (k, s) = kernel_and_image_saturation(&z);
        assert_eq!(k, Lattice::full(3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn indices() {
        let z2 = Lattice::full(2);
        let two = Lattice::from_generators(2, vec![v(&[2, 0]), v(&[0, 2])]);
        assert_eq!(lattice_index(&z2, &two).unwrap(), BigInt::from(4));
        let a = Lattice::from_generators(2, vec![v(&[1, 1])]);
        let b = Lattice::from_generators(2, vec![v(&[3, 3])]);
        assert_eq!(lattice_index(&a, &b).unwrap(), BigInt::from(3));
        assert!(matches!(lattice_index(&b, &a), Err(Error::NotContained(_))));
        assert!(matches!(lattice_index(&z2, &a), Err(Error::Dimension(_))));
        assert_eq!(lattice_index(&Lattice::zero(3), &Lattice::zero(3)).unwrap(), BigInt::one());
    }

    #[test]
    fn saturation_removes_torsion() {
        let l = Lattice::from_generators(3, vec![v(&[2, 4, 6]), v(&[0, 3, 3])]);
        let s = l.saturation();
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[1, 2, 3])));
        assert!(s.contains(&v(&[0, 1, 1])));
        assert!(s.is_saturated());
        assert_eq!(lattice_index(&s, &l).unwrap(), BigInt::from(6));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Lattice::from_generators(3, vec![v(&[1, 2, 3]), v(&[4, 5, 6])]);
        let b = Lattice::from_generators(3, vec![v(&[5, 7, 9]), v(&[-1, -2, -3]), v(&[3, 3, 3])]);
        assert_eq!(a, b);
    }
}
