//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use stickelgraph::digraph::Digraph;
use stickelgraph::{IntMatrix, IntPoly};

/// Resultant as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    if m + n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            s.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            s.set(n + i, i + k, c.clone());
        }
    }
    s.det().unwrap()
}

/// `h^-` from the Bernoulli product, with `prod_{j odd} f(zeta^j)` taken as a
/// Sylvester determinant.
pub fn minus_class_number_oracle(p: u64) -> BigInt {
    let g = (2..p).find(|&g| (1..p - 1).all(|k| pow(g, k, p) != 1)).unwrap();
    let n = p - 1;
    let f = IntPoly::new((0..n).map(|k| BigInt::from(pow(g, (n - k) % n, p))).collect());
    let h = (n / 2) as usize;
    let a = IntPoly::new({
        let mut c = vec![BigInt::zero(); h + 1];
        c[0] = BigInt::one();
        c[h] = BigInt::one();
        c
    });
    let prod = sylvester_resultant(&a, &f);
    // h^- = 2p (-1/2)^h prod / p^h
    let num: BigInt = BigInt::from(2 * p) * prod * BigInt::from(if h % 2 == 1 { -1 } else { 1 });
    let den = BigInt::from(2 * p).pow(h as u32);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "h^- oracle is not integral for p = {p}");
    q
}

pub fn pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn odd_primes_up_to(n: u64) -> Vec<u64> {
    (3..=n)
        .step_by(2)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

fn minors(m: &IntMatrix, k: usize, rows: &mut Vec<usize>, start: usize, out: &mut BigInt) {
    if rows.len() == k {
        let mut cols = Vec::new();
        col_minors(m, rows, k, &mut cols, 0, out);
        return;
    }
    for r in start..m.rows() {
        rows.push(r);
        minors(m, k, rows, r + 1, out);
        rows.pop();
    }
}

fn col_minors(m: &IntMatrix, rows: &[usize], k: usize, cols: &mut Vec<usize>, start: usize, out: &mut BigInt) {
    if cols.len() == k {
        let sub = IntMatrix::from_big_rows(
            rows.iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect(),
        );
        *out = out.gcd(&sub.det().unwrap());
        return;
    }
    for c in start..m.cols() {
        cols.push(c);
        col_minors(m, rows, k, cols, c + 1, out);
        cols.pop();
    }
}

/// `d_k`: gcd of all `k x k` minors.
pub fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut out = BigInt::zero();
    minors(m, k, &mut Vec::new(), 0, &mut out);
    out.abs()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_big_rows(
        (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .collect(),
    )
}

/// Random digraph on `n` vertices with every adjacency entry at most `max_mult`;
/// a directed cycle through all vertices is added when `connected` is set.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, max_mult: usize, connected: bool) -> Digraph {
    let mut ends = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lo = usize::from(connected && j == (i + 1) % n);
            for _ in 0..rng.gen_range(lo..=max_mult) {
                ends.push((i, j));
            }
        }
    }
    Digraph::from_edges(n, ends).unwrap()
}

/// Reachability-closure test of strong connectivity.
pub fn strongly_connected_oracle(d: &Digraph) -> bool {
    let n = d.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
    }
    for &(o, t) in d.ends() {
        reach[o][t] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach.iter().all(|r| r.iter().all(|&x| x))
}
