mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use stickelgraph::arith::smallest_primitive_root;
use stickelgraph::bowen_franks::bf_group;
use stickelgraph::character::Character;
use stickelgraph::fp_poly::{berlekamp, FpPoly};
use stickelgraph::group::FiniteAbelianGroup;
use stickelgraph::isotypic::{isotypic_cardinality_with, verify_theorem_b};
use stickelgraph::padic::{unramified_context, PadicContext, PRECISION_CAP};
use stickelgraph::stickelberger::{stickelberger_cover, stickelberger_element, verify_theorem_a_with, DEFAULT_PRIME_CAP};
use stickelgraph::IntPoly;

const PAIRS: [(u64, u64); 8] = [(5, 3), (7, 5), (11, 3), (13, 5), (23, 3), (23, 23), (29, 3), (31, 7)];

/// Phi_n by repeated exact division of x^n - 1, independent of the library's version.
fn phi(n: u64) -> IntPoly {
    let mut p = IntPoly::monomial(BigInt::one(), n as usize) - IntPoly::one();
    for d in 1..n {
        if n % d == 0 {
            p = p.div_exact(&phi(d)).unwrap();
        }
    }
    p
}

fn ell_part(x: &BigInt, ell: u64) -> BigInt {
    let l = BigInt::from(ell);
    let mut x = x.abs();
    let mut out = BigInt::one();
    while !x.is_zero() && x.is_multiple_of(&l) {
        x /= &l;
        out *= &l;
    }
    out
}

/// |N(psi_j(p theta))| as an integer resultant against Phi of the character's order.
fn norm_of_value(p: u64, j: u64) -> BigInt {
    let n = p - 1;
    let order = n / j.gcd(&n);
    let theta = stickelberger_element(p).unwrap();
    let mut coeffs = vec![BigInt::zero(); n as usize];
    for (k, c) in theta.coeffs().iter().enumerate() {
        coeffs[((j * k as u64) % n) as usize] += c;
    }
    let value = IntPoly::new(coeffs);
    common::sylvester_resultant(&phi(order), &value).abs()
}

fn character_order(n: u64, j: u64) -> u64 {
    n / j.gcd(&n)
}

#[test]
fn orbit_norm_consistency() {
    for (p, ell) in PAIRS {
        let rec = verify_theorem_b(p, ell).unwrap();
        assert!(rec.holds, "p={p} ell={ell}: {rec:?}");
        let n = p - 1;
        let mut by_order: BTreeMap<u64, (BigInt, u64)> = BTreeMap::new();
        for row in &rec.per_psi {
            let e = by_order.entry(character_order(n, row.psi_index as u64)).or_insert((BigInt::one(), row.psi_index as u64));
            e.0 *= &row.bf_card;
        }
        for (order, (product, j)) in by_order {
            let norm = norm_of_value(p, j);
            assert!(!norm.is_zero());
            assert_eq!(product, ell_part(&norm, ell).pow(rec.f), "p={p} ell={ell} order={order}");
        }
    }
}

#[test]
fn frobenius_orbits_partition_odd_characters() {
    for (p, ell) in PAIRS {
        let rec = verify_theorem_b(p, ell).unwrap();
        let mut members: Vec<usize> = rec.orbits.iter().flat_map(|o| o.members.clone()).collect();
        members.sort_unstable();
        let mut odd: Vec<usize> = rec.per_psi.iter().map(|r| r.psi_index).collect();
        odd.sort_unstable();
        assert_eq!(members, odd);
        for o in &rec.orbits {
            assert_eq!(rec.f as usize % o.members.len(), 0);
            // Frobenius preserves the valuation under a fixed embedding
            assert!(o.bf_cards.windows(2).all(|w| w[0] == w[1]), "{o:?}");
        }
    }
}

fn cards_by_order(p: u64, ell: u64, ctx: &PadicContext) -> BTreeMap<u64, Vec<BigInt>> {
    let group = FiniteAbelianGroup::cyclic(p - 1);
    let mut out: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for psi in Character::all(&group).into_iter().filter(Character::is_odd) {
        let (c, _) = isotypic_cardinality_with(p, ell, &psi, ctx, PRECISION_CAP).unwrap();
        out.entry(character_order(p - 1, psi.exponents()[0])).or_default().push(c);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

#[test]
fn cardinalities_do_not_depend_on_the_factor_or_precision() {
    for (p, ell) in PAIRS {
        let n = p - 1;
        let base = unramified_context(ell, n, 8).unwrap();
        let reference = cards_by_order(p, ell, &base);
        let phi_mod: Vec<u64> = phi(n)
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(ell)).try_into().unwrap())
            .collect();
        for factor in berlekamp(&FpPoly::new(ell, phi_mod)) {
            let ctx = PadicContext::from_factor(ell, n, factor, 8).unwrap();
            assert_eq!(cards_by_order(p, ell, &ctx), reference, "p={p} ell={ell}");
        }
        let group = FiniteAbelianGroup::cyclic(n);
        let fine = base.with_precision(64);
        for psi in Character::all(&group).into_iter().filter(Character::is_odd) {
            let a = isotypic_cardinality_with(p, ell, &psi, &base, PRECISION_CAP).unwrap();
            let b = isotypic_cardinality_with(p, ell, &psi, &fine, PRECISION_CAP).unwrap();
            assert_eq!(a.0, b.0);
        }
    }
}

#[test]
fn generator_choice_does_not_change_theorem_a() {
    for p in [7u64, 11, 13, 23] {
        let canonical = verify_theorem_a_with(p, None, DEFAULT_PRIME_CAP).unwrap();
        let g0 = smallest_primitive_root(p);
        for g in 2..p {
            if g == g0 || !stickelgraph::arith::is_primitive_root(g, p) {
                continue;
            }
            let other = verify_theorem_a_with(p, Some(g), DEFAULT_PRIME_CAP).unwrap();
            assert!(other.theorem_a_holds && other.three_way_m_agreement);
            assert_eq!(other.bf_torsion_factors, canonical.bf_torsion_factors);
            assert_eq!(other.m_y, canonical.m_y);
            assert_eq!(other.g_star_y, canonical.g_star_y);
        }
    }
}

#[test]
fn p23_torsion_carries_the_class_number() {
    let bf = bf_group(stickelberger_cover(23).unwrap().digraph());
    assert_eq!(bf.torsion_order, BigInt::from(23u32).pow(11) * 3);
    assert_eq!(bf.free_rank, 10);
    assert_eq!(common::minus_class_number_oracle(23), BigInt::from(3));
}
