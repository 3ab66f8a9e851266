//! Independent valuation oracle: `v_λ(a) = v_l(|N(a)|)`, with the norm taken
//! as the determinant of multiplication by `a` on the power basis.

#![allow(dead_code)]

use cyclosum::{CycInt, CycRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Norm from `Q(ζ_{l²})` to `Q`.
pub fn norm(ring: &CycRing, a: &CycInt) -> BigInt {
    let d = ring.degree();
    let mut cols = Vec::with_capacity(d);
    let mut cur = a.clone();
    let zeta = ring.zeta_pow(1);
    for _ in 0..d {
        cols.push(cur.coeffs().to_vec());
        cur = ring.mul(&cur, &zeta);
    }
    let matrix = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
    bareiss_det(matrix)
}

/// `v_l(|N(a)|)`, or `None` for zero.
pub fn norm_valuation(ring: &CycRing, a: &CycInt) -> Option<u32> {
    let mut n = norm(ring, a).abs();
    if n.is_zero() {
        return None;
    }
    let l = BigInt::from(ring.l());
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Random element with small coefficients, times `λ^k` for a random `k`.
pub fn random_element<R: rand::Rng>(ring: &CycRing, rng: &mut R, max_shift: u32) -> CycInt {
    loop {
        let base = ring.from_coeffs((0..ring.degree()).map(|_| rng.gen_range(-9i64..=9)));
        if base.is_zero() {
            continue;
        }
        let shift = rng.gen_range(0..=max_shift);
        return ring.mul(&base, &ring.pow(&ring.lambda(), shift));
    }
}
