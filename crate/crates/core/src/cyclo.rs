//! Exact arithmetic in `Z[ζ]`, `ζ = ζ_{l²}`, in the power basis
//! `1, ζ, ..., ζ^{l(l-1)-1}`.
//!
//! Since `ζ_{2l²} = -ζ_{l²}^{(l²+1)/2}`, the same ring holds every Jacobi
//! sum of order dividing `2l²`. The prime above `l` is principal, generated
//! by `λ = 1 - ζ`, and totally ramified: `Z[ζ]/(λ) = F_l` via `ζ ↦ 1`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ff::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("l = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("NotAUnit: automorphism exponent {0} is not coprime to l")]
    NotAUnit(i64),
    #[error("NotDivisible: element is not divisible by lambda")]
    NotDivisible,
}

/// An element of `Z[ζ_{l²}]`: exactly `l(l-1)` integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Image under `ζ ↦ 1`, as an integer.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `Some(c)` when the element is the rational integer `c`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        &self - &rhs
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// Renders `c0 + c1*z + c2*z^2 + ...`, skipping zero terms; `z` is `ζ_{l²}`.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Result of a capped `λ`-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(u32),
    /// `λ^cap` divides the element (always the case for 0).
    AtLeast(u32),
}

impl Valuation {
    /// True when the valuation is known to be at least `required`.
    pub fn meets(self, required: u32) -> bool {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v >= required,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// `input = Σ_t digits[t]·λ^t + λ^m·remainder` with digits in `0..l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaDigits {
    pub digits: Vec<u32>,
    pub remainder: CycInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycRing {
    l: u64,
    order: u64,
    degree: usize,
    /// `M = ∏_{k ∈ (Z/l²)^*, k ≠ 1} (1 - ζ^k)`, so that `λ·M = l`.
    lambda_cofactor: CycInt,
}

impl CycRing {
    pub fn new(l: u64) -> Result<Self, CycError> {
        if l < 3 || !is_prime(l) {
            return Err(CycError::NotOddPrime(l));
        }
        let order = l * l;
        let mut ring = CycRing {
            l,
            order,
            degree: (l * (l - 1)) as usize,
            lambda_cofactor: CycInt { coeffs: Vec::new() },
        };
        let one = ring.one();
        let cofactor = (2..order)
            .filter(|k| k % l != 0)
            .fold(ring.one(), |acc, k| ring.mul(&acc, &(&one - &ring.zeta_pow(k as i64))));
        ring.lambda_cofactor = cofactor;
        Ok(ring)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `φ(l²) = l(l-1)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The cofactor `M` with `λ·M = l`.
    pub fn lambda_cofactor(&self) -> &CycInt {
        &self.lambda_cofactor
    }

    pub fn zero(&self) -> CycInt {
        CycInt { coeffs: vec![BigInt::zero(); self.degree] }
    }

    pub fn one(&self) -> CycInt {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> CycInt {
        self.from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(&self, c: BigInt) -> CycInt {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// Element from power-basis coordinates; missing trailing entries are zero,
    /// entries past the degree are folded with the cyclotomic relation.
    pub fn from_coeffs<I: Into<BigInt>>(&self, coeffs: impl IntoIterator<Item = I>) -> CycInt {
        let mut v: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if v.len() < self.degree {
            v.resize(self.degree, BigInt::zero());
        }
        self.reduce(v)
    }

    /// `λ = 1 - ζ`.
    pub fn lambda(&self) -> CycInt {
        &self.one() - &self.zeta_pow(1)
    }

    fn exponent(&self, k: i64) -> usize {
        k.rem_euclid(self.order as i64) as usize
    }

    /// Folds coordinates of index `>= l(l-1)` using
    /// `ζ^{l(l-1)} = -(1 + ζ^l + ... + ζ^{l(l-2)})`.
    fn reduce(&self, mut v: Vec<BigInt>) -> CycInt {
        let l = self.l as usize;
        for k in (self.degree..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            let base = k - self.degree;
            for j in 0..l - 1 {
                v[base + j * l] -= &c;
            }
        }
        v.truncate(self.degree);
        CycInt { coeffs: v }
    }

    /// Same folding over machine integers, used where inputs are small counts.
    fn reduce_small(&self, mut v: Vec<i64>) -> CycInt {
        let l = self.l as usize;
        for k in (self.degree..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c == 0 {
                continue;
            }
            let base = k - self.degree;
            for j in 0..l - 1 {
                v[base + j * l] -= c;
            }
        }
        v.truncate(self.degree);
        CycInt { coeffs: v.into_iter().map(BigInt::from).collect() }
    }

    /// `Σ_k counts[k]·ζ^k` for exponents `k` in `0..l²`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> CycInt {
        let mut v = vec![0i64; self.order as usize];
        for (k, &c) in counts.iter().enumerate() {
            v[k % self.order as usize] += c;
        }
        self.reduce_small(v)
    }

    /// `ζ_{l²}^k`.
    pub fn zeta_pow(&self, k: i64) -> CycInt {
        let mut v = vec![0i64; self.order as usize];
        v[self.exponent(k)] = 1;
        self.reduce_small(v)
    }

    /// Exponent `e` and sign `s` with `ζ_{2l²}^t = s·ζ_{l²}^e`.
    pub fn zeta_2l2_exponent(&self, t: i64) -> (usize, i64) {
        let half = (self.order as i64 + 1) / 2;
        let t = t.rem_euclid(2 * self.order as i64);
        let sign = if t % 2 == 0 { 1 } else { -1 };
        (((t % self.order as i64) * half % self.order as i64) as usize, sign)
    }

    /// `ζ_{2l²}^t = (-1)^t ζ_{l²}^{t(l²+1)/2}`.
    pub fn zeta_2l2_pow(&self, t: i64) -> CycInt {
        let (e, s) = self.zeta_2l2_exponent(t);
        let mut v = vec![0i64; self.order as usize];
        v[e] = s;
        self.reduce_small(v)
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a + b
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a - b
    }

    pub fn neg(&self, a: &CycInt) -> CycInt {
        -a
    }

    /// Schoolbook product followed by folding. Runs in `i128` when the
    /// coefficient sizes bound every intermediate below `2^126`.
    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let d = self.degree;
        let bits = |x: &CycInt| x.coeffs.iter().map(BigInt::bits).max().unwrap_or(0);
        let slack = 2 * (64 - (2 * d as u64).leading_zeros() as u64);
        if bits(a) + bits(b) + slack <= 125 {
            return self.mul_small(a, b);
        }
        let mut v = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        self.reduce(v)
    }

    fn mul_small(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let to_i128 = |x: &CycInt| -> Vec<i128> {
            x.coeffs.iter().map(|c| i128::try_from(c).expect("bounded by caller")).collect()
        };
        let (a, b) = (to_i128(a), to_i128(b));
        let d = self.degree;
        let l = self.l as usize;
        let mut v = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c != 0 {
                for j in 0..l - 1 {
                    v[k - d + j * l] -= c;
                }
            }
        }
        v.truncate(d);
        CycInt { coeffs: v.into_iter().map(BigInt::from).collect() }
    }

    pub fn pow(&self, a: &CycInt, mut e: u32) -> CycInt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `σ_k : ζ ↦ ζ^k`, for `k` coprime to `l`.
    pub fn apply_automorphism(&self, a: &CycInt, k: i64) -> Result<CycInt, CycError> {
        if k.rem_euclid(self.l as i64) == 0 {
            return Err(CycError::NotAUnit(k));
        }
        let k = self.exponent(k);
        let n = self.order as usize;
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[i * k % n] += c;
            }
        }
        Ok(self.reduce(v))
    }

    /// Complex conjugation, `σ_{-1}`.
    pub fn conjugate(&self, a: &CycInt) -> CycInt {
        self.apply_automorphism(a, -1).expect("-1 is a unit")
    }

    /// Membership in `(λ)`: the coefficient sum vanishes mod `l`.
    pub fn lambda_divisible(&self, a: &CycInt) -> bool {
        a.coefficient_sum().is_multiple_of(&BigInt::from(self.l))
    }

    /// `b` with `λ·b = a`, computed as `a·M / l`.
    pub fn exact_div_lambda(&self, a: &CycInt) -> Result<CycInt, CycError> {
        let l = BigInt::from(self.l);
        let prod = self.mul(a, &self.lambda_cofactor);
        let mut out = Vec::with_capacity(self.degree);
        for c in prod.coeffs {
            let (q, r) = c.div_rem(&l);
            if !r.is_zero() {
                return Err(CycError::NotDivisible);
            }
            out.push(q);
        }
        Ok(CycInt { coeffs: out })
    }

    /// Largest `v < cap` with `λ^v | a`, or `AtLeast(cap)`.
    pub fn lambda_valuation(&self, a: &CycInt, cap: u32) -> Valuation {
        let mut cur = a.clone();
        for v in 0..cap {
            if cur.is_zero() {
                return Valuation::AtLeast(cap);
            }
            if !self.lambda_divisible(&cur) {
                return Valuation::Exact(v);
            }
            cur = self.exact_div_lambda(&cur).expect("divisibility was checked");
        }
        Valuation::AtLeast(cap)
    }

    /// `m` base-`λ` digits of `a`, each in `0..l`, plus the remainder.
    pub fn lambda_digit_expand(&self, a: &CycInt, m: usize) -> LambdaDigits {
        let l = BigInt::from(self.l);
        let mut cur = a.clone();
        let mut digits = Vec::with_capacity(m);
        for _ in 0..m {
            let d = cur.coefficient_sum().mod_floor(&l);
            cur.coeffs[0] -= &d;
            cur = self.exact_div_lambda(&cur).expect("digit makes the value divisible");
            digits.push(u32::try_from(d).expect("digit below l"));
        }
        LambdaDigits { digits, remainder: cur }
    }

    /// `Σ_t digits[t]·λ^t + λ^m·remainder`.
    pub fn reconstruct(&self, d: &LambdaDigits) -> CycInt {
        let lambda = self.lambda();
        let init = d.remainder.clone();
        d.digits.iter().rev().fold(init, |acc, &digit| &self.mul(&acc, &lambda) + &self.from_int(digit as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring3() -> CycRing {
        CycRing::new(3).unwrap()
    }

    #[test]
    fn zeta_powers() {
        let r = ring3();
        assert_eq!(r.zeta_pow(0), r.one());
        assert_eq!(r.zeta_pow(9), r.one());
        assert_eq!(r.zeta_pow(6), r.from_coeffs([-1, 0, 0, -1, 0, 0]));
        assert_eq!(r.zeta_pow(-3), r.zeta_pow(6));
        for l in [3, 5, 7] {
            let r = CycRing::new(l).unwrap();
            let n = (l * l) as i64;
            for k in 0..n {
                assert_eq!(r.mul(&r.zeta_pow(k), &r.zeta_pow(n - k)), r.one());
            }
            // 1 + ζ^l + ... + ζ^{l(l-1)} = 0
            let s = (0..l as i64).fold(r.zero(), |acc, j| &acc + &r.zeta_pow(j * l as i64));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn zeta_2l2_embedding() {
        for l in [3u64, 5] {
            let r = CycRing::new(l).unwrap();
            let n = (l * l) as i64;
            assert_eq!(r.zeta_2l2_pow(0), r.one());
            assert_eq!(r.zeta_2l2_pow(2), r.zeta_pow(1));
            assert_eq!(r.zeta_2l2_pow(n), r.from_int(-1));
            assert_eq!(r.zeta_2l2_pow(2 * n), r.one());
            let z = r.zeta_2l2_pow(1);
            assert_eq!(r.pow(&z, 2 * n as u32), r.one());
            assert_ne!(r.pow(&z, n as u32), r.one());
        }
    }

    #[test]
    fn lambda_cofactor_identity() {
        for l in [3, 5, 7] {
            let r = CycRing::new(l).unwrap();
            assert_eq!(r.mul(&r.lambda(), r.lambda_cofactor()), r.from_int(l as i64));
        }
    }

    #[test]
    fn arithmetic_examples() {
        let r = CycRing::new(5).unwrap();
        let a = r.from_coeffs([3, -1, 4, 1, -5]);
        assert_eq!(&a + &r.zero(), a);
        assert_eq!(r.mul(&r.zeta_pow(1), &r.zeta_pow(24)), r.one());
        assert_eq!(r.neg(&r.neg(&a)), a);
    }

    #[test]
    fn automorphisms() {
        let r = ring3();
        let a = r.from_coeffs([1, 2, 0, -3, 5, 7]);
        assert_eq!(r.apply_automorphism(&a, 1).unwrap(), a);
        assert_eq!(r.apply_automorphism(&a, 3), Err(CycError::NotAUnit(3)));
        let lhs = r.apply_automorphism(&r.apply_automorphism(&a, 2).unwrap(), 4).unwrap();
        assert_eq!(lhs, r.apply_automorphism(&a, 8).unwrap());
        assert_eq!(r.mul(&r.conjugate(&r.zeta_pow(1)), &r.zeta_pow(1)), r.one());
        assert_eq!(r.conjugate(&r.one()), r.one());
        for k in 0..9 {
            assert_eq!(r.conjugate(&r.zeta_pow(k)), r.zeta_pow(9 - k));
        }
        assert_eq!(r.conjugate(&r.conjugate(&a)), a);
    }

    #[test]
    fn divisibility_and_division() {
        let r = CycRing::new(5).unwrap();
        let lam = r.lambda();
        assert!(r.lambda_divisible(&lam));
        assert!(!r.lambda_divisible(&r.one()));
        assert!(r.lambda_divisible(&r.from_int(5)));
        assert_eq!(r.exact_div_lambda(&lam), Ok(r.one()));
        assert_eq!(r.exact_div_lambda(&r.from_int(5)).unwrap(), *r.lambda_cofactor());
        assert_eq!(r.exact_div_lambda(&r.mul(&lam, &lam)), Ok(lam));
        assert_eq!(r.exact_div_lambda(&r.one()), Err(CycError::NotDivisible));
    }

    #[test]
    fn valuation_examples() {
        for l in [3u64, 5] {
            let r = CycRing::new(l).unwrap();
            assert_eq!(r.lambda_valuation(&r.one(), 4), Valuation::Exact(0));
            assert_eq!(r.lambda_valuation(&r.zero(), 4), Valuation::AtLeast(4));
            let cap = (2 * l * l) as u32;
            assert_eq!(r.lambda_valuation(&r.from_int(l as i64), cap), Valuation::Exact((l * (l - 1)) as u32));
            assert_eq!(r.lambda_valuation(&r.pow(&r.lambda(), 3), 3), Valuation::AtLeast(3));
        }
    }

    #[test]
    fn digit_examples() {
        let r = CycRing::new(5).unwrap();
        let lam = r.lambda();
        let d = r.lambda_digit_expand(&(&r.from_int(2) + &lam), 2);
        assert_eq!(d.digits, vec![2, 1]);
        assert!(d.remainder.is_zero());

        let d = r.lambda_digit_expand(&r.pow(&lam, 3), 3);
        assert_eq!(d.digits, vec![0, 0, 0]);
        assert_eq!(d.remainder, r.one());

        // -1 = (l-1) + λ·rem with rem = -l/λ = -M
        let d = r.lambda_digit_expand(&r.from_int(-1), 1);
        assert_eq!(d.digits, vec![4]);
        assert_eq!(d.remainder, -r.lambda_cofactor());
        assert_eq!(r.reconstruct(&d), r.from_int(-1));
    }

    #[test]
    fn display() {
        let r = ring3();
        assert_eq!(r.from_int(17).to_string(), "17");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.from_coeffs([-1, 2, 0, -1, 0, 3]).to_string(), "-1 + 2*z - 1*z^3 + 3*z^5");
    }

    fn elem(l: u64) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, (l * (l - 1)) as usize)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in elem(3), b in elem(3), c in elem(3)) {
            let r = ring3();
            let (a, b, c) = (r.from_coeffs(a), r.from_coeffs(b), r.from_coeffs(c));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &(&b + &c)), &r.mul(&a, &b) + &r.mul(&a, &c));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        }

        #[test]
        fn automorphism_group_law(a in elem(5), k in 1i64..25, k2 in 1i64..25) {
            prop_assume!(k % 5 != 0 && k2 % 5 != 0);
            let r = CycRing::new(5).unwrap();
            let a = r.from_coeffs(a);
            let lhs = r.apply_automorphism(&r.apply_automorphism(&a, k2).unwrap(), k).unwrap();
            prop_assert_eq!(lhs, r.apply_automorphism(&a, k * k2).unwrap());
        }

        #[test]
        fn automorphisms_are_ring_maps_and_keep_valuation(a in elem(3), b in elem(3), k in 1i64..9) {
            prop_assume!(k % 3 != 0);
            let r = ring3();
            let (a, b) = (r.from_coeffs(a), r.from_coeffs(b));
            let s = |x: &CycInt| r.apply_automorphism(x, k).unwrap();
            prop_assert_eq!(s(&r.mul(&a, &b)), r.mul(&s(&a), &s(&b)));
            prop_assert_eq!(r.lambda_valuation(&s(&a), 12), r.lambda_valuation(&a, 12));
        }

        #[test]
        fn valuation_is_additive(a in elem(3), b in elem(3)) {
            let r = ring3();
            let (a, b) = (r.from_coeffs(a), r.from_coeffs(b));
            if let (Valuation::Exact(va), Valuation::Exact(vb)) =
                (r.lambda_valuation(&a, 20), r.lambda_valuation(&b, 20))
            {
                prop_assert_eq!(r.lambda_valuation(&r.mul(&a, &b), 60), Valuation::Exact(va + vb));
            }
        }

        #[test]
        fn digits_reconstruct(a in elem(5), m in 1usize..8) {
            let r = CycRing::new(5).unwrap();
            let a = r.from_coeffs(a);
            let d = r.lambda_digit_expand(&a, m);
            prop_assert!(d.digits.iter().all(|&x| x < 5));
            prop_assert_eq!(r.reconstruct(&d), a);
        }
    }
}
