//! Bowen-Franks groups, zeta special values and the invariant `m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::digraph::{check_cover, Digraph, DigraphMorphism};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{lattice_index, Lattice};
use crate::matrix::IntMatrix;
use crate::poly::{taylor_at_one, IntPoly};
use crate::snf::{cokernel_from_factors, invariant_factors};

/// `coker(I - A) = Z^free_rank + torsion`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BFGroupStructure {
    pub free_rank: usize,
    #[serde(with = "json::vec_bigint")]
    pub torsion_factors: Vec<BigInt>,
    #[serde(with = "json::bigint")]
    pub torsion_order: BigInt,
}

/// `I - A` in vertex construction order.
pub fn bf_operator(d: &Digraph) -> IntMatrix {
    let a = d.adjacency_matrix();
    IntMatrix::identity(d.vertex_count())
        .checked_sub(&a)
        .expect("square")
}

pub fn bf_group_of_operator(b: &IntMatrix) -> BFGroupStructure {
    let c = cokernel_from_factors(b.rows(), &invariant_factors(b));
    BFGroupStructure {
        free_rank: c.free_rank,
        torsion_order: c.torsion_order(),
        torsion_factors: c.torsion,
    }
}

pub fn bf_group(d: &Digraph) -> BFGroupStructure {
    bf_group_of_operator(&bf_operator(d))
}

/// Zeta polynomial data of a strongly connected digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub g: IntPoly,
    pub r: usize,
    pub special_value: BigInt,
    pub delta: usize,
    pub m: Option<BigInt>,
    pub bf: BFGroupStructure,
}

impl ZetaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "g_coeffs": json::bigs(self.g.coeffs()),
            "r": self.r,
            "special_value": json::big(&self.special_value),
            "delta": self.delta,
            "m": self.m.as_ref().map(json::big),
            "bf_rank": self.bf.free_rank,
            "bf_torsion_factors": json::bigs(&self.bf.torsion_factors),
        })
    }
}

pub fn zeta_report(d: &Digraph) -> Result<ZetaReport> {
    if !d.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let g = d.adjacency_matrix().reversed_char_poly()?;
    zeta_report_from_parts(g, bf_group(d))
}

/// Assembles a report from a zeta polynomial and the matching BF structure.
pub fn zeta_report_from_parts(g: IntPoly, bf: BFGroupStructure) -> Result<ZetaReport> {
    let t = taylor_at_one(&g)?;
    if t.order < bf.free_rank {
        return Err(Error::Internal(format!(
            "vanishing order {} is below the free rank {}",
            t.order, bf.free_rank
        )));
    }
    let delta = t.order - bf.free_rank;
    let m = if delta == 0 {
        let (q, rem) = t.special_value.div_rem(&bf.torsion_order);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "special value {} is not divisible by the torsion order {}",
                t.special_value, bf.torsion_order
            )));
        }
        Some(q)
    } else {
        None
    };
    Ok(ZetaReport {
        g,
        r: t.order,
        special_value: t.special_value,
        delta,
        m,
        bf,
    })
}

/// `#R(X) = [BF(ZV) : BF(L)]` where `L` saturates the image of the BF operator.
pub fn r_invariant_m(d: &Digraph) -> Result<BigInt> {
    let report = zeta_report(d)?;
    if report.delta != 0 {
        return Err(Error::NonzeroDelta(report.delta as u64));
    }
    r_invariant_of_operator(&bf_operator(d))
}

/// Lattice index `[B(Z^n) : B(L)]` for an operator `B`, without checking `delta`.
pub fn r_invariant_of_operator(b: &IntMatrix) -> Result<BigInt> {
    let image = Lattice::column_image(b);
    let l = image.saturation();
    let image_of_l = l.image_under(b);
    lattice_index(&image, &image_of_l)
}

/// Divisibility data attached to a cover `f: Y -> X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverDivisibility {
    #[serde(with = "json::bigint")]
    pub g_star_x: BigInt,
    #[serde(with = "json::bigint")]
    pub g_star_y: BigInt,
    pub g_star_divides: bool,
    #[serde(with = "json::opt_bigint")]
    pub g_star_ratio: Option<BigInt>,
    pub r_x: usize,
    pub r_y: usize,
    #[serde(with = "json::opt_bigint")]
    pub m_x: Option<BigInt>,
    #[serde(with = "json::opt_bigint")]
    pub m_y: Option<BigInt>,
    /// Present when both deltas vanish.
    pub m_divides: Option<bool>,
    #[serde(with = "json::opt_bigint")]
    pub m_ratio: Option<BigInt>,
    #[serde(with = "json::bigint")]
    pub torsion_x: BigInt,
    #[serde(with = "json::bigint")]
    pub torsion_y: BigInt,
    /// Present when both deltas vanish and `r_X = r_Y`.
    pub torsion_divides: Option<bool>,
    /// `[L_X : f(L_Y) + B_X(ZV_X)]`; the induced torsion map is onto iff this is 1.
    #[serde(with = "json::bigint")]
    pub torsion_image_index: BigInt,
    pub torsion_surjective: Option<bool>,
}

fn ratio(big: &BigInt, small: &BigInt) -> Option<BigInt> {
    if small.is_zero() {
        return big.is_zero().then(BigInt::one);
    }
    let (q, r) = big.div_rem(small);
    r.is_zero().then_some(q)
}

pub fn cover_divisibility_report(f: &DigraphMorphism) -> Result<CoverDivisibility> {
    if !check_cover(f) {
        return Err(Error::NotACover("morphism is not locally bijective".into()));
    }
    let (y, x) = (f.source(), f.target());
    let zy = zeta_report(y)?;
    let zx = zeta_report(x)?;
    let g_star_ratio = ratio(&zy.special_value, &zx.special_value);
    let both_delta_zero = zx.delta == 0 && zy.delta == 0;
    let m_ratio = match (&zy.m, &zx.m) {
        (Some(my), Some(mx)) => ratio(my, mx),
        _ => None,
    };
    let torsion_applies = both_delta_zero && zx.r == zy.r;
    let torsion_image_index = torsion_image_index(f)?;
    let torsion_divides = torsion_applies.then(|| {
        // divisibility read off the invariant factors: each factor of X divides the matching factor of Y
        let fx = &zx.bf.torsion_factors;
        let fy = &zy.bf.torsion_factors;
        fx.len() <= fy.len()
            && fx
                .iter()
                .rev()
                .zip(fy.iter().rev())
                .all(|(a, b)| b.is_multiple_of(a))
            && zy.bf.torsion_order.is_multiple_of(&zx.bf.torsion_order)
    });
    Ok(CoverDivisibility {
        g_star_divides: g_star_ratio.is_some(),
        g_star_ratio,
        g_star_x: zx.special_value,
        g_star_y: zy.special_value,
        r_x: zx.r,
        r_y: zy.r,
        m_divides: both_delta_zero.then(|| m_ratio.is_some()),
        m_ratio,
        m_x: zx.m,
        m_y: zy.m,
        torsion_x: zx.bf.torsion_order,
        torsion_y: zy.bf.torsion_order,
        torsion_divides,
        torsion_surjective: torsion_applies.then(|| torsion_image_index.is_one()),
        torsion_image_index,
    })
}

/// Index of the image of `BF(Y)_tors` in `BF(X)_tors`, via lattices:
/// `BF(X)_tors = L_X / B_X(ZV_X)` and the image is `(f_* L_Y + B_X(ZV_X)) / B_X(ZV_X)`.
fn torsion_image_index(f: &DigraphMorphism) -> Result<BigInt> {
    let (y, x) = (f.source(), f.target());
    let bx = bf_operator(x);
    let by = bf_operator(y);
    let mut push = IntMatrix::zeros(x.vertex_count(), y.vertex_count());
    for (w, &v) in f.vertex_map().iter().enumerate() {
        push.set(v, w, BigInt::one());
    }
    // the square commutes: B_X f_* = f_* B_Y
    if &bx * &push != &push * &by {
        return Err(Error::Internal("pushforward does not intertwine the BF operators".into()));
    }
    let image_x = Lattice::column_image(&bx);
    let l_x = image_x.saturation();
    let l_y = Lattice::column_image(&by).saturation();
    let generated = l_y.image_under(&push).sum(&image_x);
    lattice_index(&l_x, &generated).map(|i| i.abs())
}
