//! Exhaustive exact-identity checks for Jacobi sums of every order `e | 2l²`
//! with `e ∈ {l, 2l, l², 2l²}`.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::VerificationContext;
use crate::cyclo::CycInt;

/// Outcome for one identity over one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub order: u64,
    pub checked: u64,
    pub violations: u64,
    /// First failing tuple, if any.
    pub witness: Option<String>,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionReport {
    pub l: u64,
    pub p: u64,
    pub r: u32,
    pub q: u64,
    pub gamma: u64,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

/// Identity names, in report order.
pub const IDENTITIES: [&str; 8] = [
    "exponent-permutation",
    "trivial-character",
    "opposite-exponents",
    "galois-action",
    "order-doubling",
    "product-relation",
    "absolute-value",
    "equal-exponents",
];

/// All `J_e(m, n)` for one order.
struct SumTable {
    e: u64,
    values: Vec<CycInt>,
    chi_minus_one: CycInt,
}

impl SumTable {
    fn new(ctx: &VerificationContext, e: u64) -> Self {
        let sums = ctx.sums();
        let values = (0..e * e)
            .into_par_iter()
            .map(|k| sums.jacobi_sum(e, (k / e) as i64, (k % e) as i64).expect("valid order").value)
            .collect();
        SumTable { e, values, chi_minus_one: sums.chi_minus_one(e).expect("valid order") }
    }

    fn get(&self, m: i64, n: i64) -> &CycInt {
        let e = self.e as i64;
        &self.values[(m.rem_euclid(e) * e + n.rem_euclid(e)) as usize]
    }

    /// `χ_e^s(-1)` as `±1`.
    fn sign(&self, ctx: &VerificationContext, s: i64) -> CycInt {
        if s.rem_euclid(2) == 0 {
            ctx.ring().one()
        } else {
            self.chi_minus_one.clone()
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: u64,
    witness: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        self.witness = self.witness.or(other.witness);
        self
    }

    fn finish(self, identity: &'static str, order: u64) -> IdentityCheck {
        IdentityCheck { identity, order, checked: self.checked, violations: self.violations, witness: self.witness }
    }
}

/// Runs every identity over every exponent tuple for the context's field.
pub fn verify_propositions(ctx: &VerificationContext) -> PropositionReport {
    let l = ctx.l();
    let orders = [l, 2 * l, l * l, 2 * l * l];
    let tables: HashMap<u64, SumTable> = orders.iter().map(|&e| (e, SumTable::new(ctx, e))).collect();
    let ring = ctx.ring();
    let q = ctx.field().q() as i64;
    let mut checks = Vec::new();

    // J(m,n) = J(s,n) = χ^s(-1)J(s,m) = χ^s(-1)J(n,m) = χ^m(-1)J(m,s) = χ^m(-1)J(n,s), s = -m-n
    for &e in &orders {
        let t = &tables[&e];
        let mut tally = Tally::default();
        for m in 0..e as i64 {
            for n in 0..e as i64 {
                let s = -m - n;
                let (cs, cm) = (t.sign(ctx, s), t.sign(ctx, m));
                let base = t.get(m, n);
                let ok = *t.get(s, n) == *base
                    && ring.mul(&cs, t.get(s, m)) == *base
                    && ring.mul(&cs, t.get(n, m)) == *base
                    && ring.mul(&cm, t.get(m, s)) == *base
                    && ring.mul(&cm, t.get(n, s)) == *base;
                tally.record(ok, || format!("e={e} m={m} n={n}"));
            }
        }
        checks.push(tally.finish(IDENTITIES[0], e));
    }

    // J(0,j) = -1 or q-2; J(i,0) = -χ^i(-1)
    for &e in &orders {
        let t = &tables[&e];
        let mut tally = Tally::default();
        for j in 0..e as i64 {
            let expected = ring.from_int(if j == 0 { q - 2 } else { -1 });
            tally.record(*t.get(0, j) == expected, || format!("e={e} i=0 j={j}"));
        }
        for i in 1..e as i64 {
            tally.record(*t.get(i, 0) == -t.sign(ctx, i), || format!("e={e} i={i} j=0"));
        }
        checks.push(tally.finish(IDENTITIES[1], e));
    }

    // m + n ≡ 0, not both zero: J(m,n) = -1
    for &e in &orders {
        let t = &tables[&e];
        let mut tally = Tally::default();
        for m in 1..e as i64 {
            tally.record(*t.get(m, -m) == ring.from_int(-1), || format!("e={e} m={m} n={}", e as i64 - m));
        }
        checks.push(tally.finish(IDENTITIES[2], e));
    }

    // σ_k J(m,n) = J(mk, nk) for k coprime to e
    for &e in &orders {
        let t = &tables[&e];
        let tally = (1..e as i64)
            .into_par_iter()
            .filter(|k| k.gcd(&(e as i64)) == 1 && k % l as i64 != 0)
            .map(|k| {
                let mut tally = Tally::default();
                for m in 0..e as i64 {
                    for n in 0..e as i64 {
                        let lhs = ring.apply_automorphism(t.get(m, n), k).expect("k is a unit");
                        tally.record(lhs == *t.get(m * k, n * k), || format!("e={e} k={k} m={m} n={n}"));
                    }
                }
                tally
            })
            .reduce(Tally::default, Tally::merge);
        checks.push(tally.finish(IDENTITIES[3], e));
    }

    // J_{2e}(2m, 2n) = J_e(m, n) for e ∈ {l, l²}
    for &e in &[l, l * l] {
        let (small, big) = (&tables[&e], &tables[&(2 * e)]);
        let mut tally = Tally::default();
        for m in 0..e as i64 {
            for n in 0..e as i64 {
                tally.record(big.get(2 * m, 2 * n) == small.get(m, n), || format!("e={e} m={m} n={n}"));
            }
        }
        checks.push(tally.finish(IDENTITIES[4], e));
    }

    // J(m,n)J(m+n,s) = χ^m(-1)J(m,s)J(n,s+m), m+n ≢ 0, m+s ≢ 0 (mod 2l²)
    {
        let e = 2 * l * l;
        let t = &tables[&e];
        let ei = e as i64;
        let tally = (0..ei)
            .into_par_iter()
            .map(|m| {
                let mut tally = Tally::default();
                let sign = t.sign(ctx, m);
                for n in 0..ei {
                    if (m + n) % ei == 0 {
                        continue;
                    }
                    for s in 0..ei {
                        if (m + s) % ei == 0 {
                            continue;
                        }
                        let lhs = ring.mul(t.get(m, n), t.get(m + n, s));
                        let rhs = ring.mul(&sign, &ring.mul(t.get(m, s), t.get(n, s + m)));
                        tally.record(lhs == rhs, || format!("e={e} m={m} n={n} s={s}"));
                    }
                }
                tally
            })
            .reduce(Tally::default, Tally::merge);
        checks.push(tally.finish(IDENTITIES[5], e));
    }

    // J(1,n)·conj(J(1,n)) = 1 if n ≡ 0, -1, else q
    for &e in &orders {
        let t = &tables[&e];
        let mut tally = Tally::default();
        for n in 0..e as i64 {
            let j = t.get(1, n);
            let expected = if n == 0 || n == e as i64 - 1 { 1 } else { q };
            tally.record(ring.mul(j, &ring.conjugate(j)) == ring.from_int(expected), || format!("e={e} n={n}"));
        }
        checks.push(tally.finish(IDENTITIES[6], e));
    }

    // J(a,a) = χ^{-a}(4) J(a, l²) for nontrivial χ^a
    {
        let e = 2 * l * l;
        let t = &tables[&e];
        let sums = ctx.sums();
        let four = ctx.field().from_int(4);
        let mut tally = Tally::default();
        for a in 1..e as i64 {
            let factor = sums.chi_eval(e, -a, four).expect("valid order");
            let ok = *t.get(a, a) == ring.mul(&factor, t.get(a, (l * l) as i64));
            tally.record(ok, || format!("e={e} a={a}"));
        }
        checks.push(tally.finish(IDENTITIES[7], e));
    }

    let f = ctx.field();
    let all_pass = checks.iter().all(IdentityCheck::pass);
    PropositionReport { l, p: f.p(), r: f.r(), q: f.q(), gamma: f.gamma().encoding(), checks, all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold_q19() {
        let ctx = VerificationContext::new(19, 1, 3).unwrap();
        let report = verify_propositions(&ctx);
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass()).collect();
        assert!(report.all_pass, "{failing:?}");
        let names: std::collections::BTreeSet<_> = report.checks.iter().map(|c| c.identity).collect();
        assert_eq!(names.len(), IDENTITIES.len());
        assert!(report.checks.iter().all(|c| c.checked > 0));
    }

    #[test]
    fn equal_exponents_fails_for_trivial_character() {
        // a = 0: J(0,0) = q - 2, while χ^0(4) J(0, l²) = -1
        let ctx = VerificationContext::new(19, 1, 3).unwrap();
        let sums = ctx.sums();
        let lhs = sums.jacobi_sum(18, 0, 0).unwrap().value;
        let rhs = sums.jacobi_sum(18, 0, 9).unwrap().value;
        assert_eq!(lhs, ctx.ring().from_int(17));
        assert_eq!(rhs, ctx.ring().from_int(-1));
    }
}
