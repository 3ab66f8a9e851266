//! Congruences for `J_{l²}(1,n)` and `J_{2l²}(1,n)` modulo `λ^{l+1}`.
//!
//! The order-`l²` coefficients `c_{i,n}` are read off numerically: expand
//! `J_{l²}(1,n) + 1` in base `λ` and convert digits to the `(ζ - 1)` base,
//! `c_i = (-1)^i d_i mod l`. The order-`2l²` right-hand sides are then built
//! from those coefficients case by case and compared to directly summed
//! values by capped `λ`-adic valuation.
//!
//! The order-`2l²` derivations carry a factor `q` on one side. Since
//! `v_λ(q - 1) >= v_λ(l²) = 2l(l-1) > l + 1`, `q` is replaced by `1`.

mod propositions;
mod report;

use std::path::Path;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclo::{CycError, CycInt, CycRing, Valuation};
use crate::ff::{FieldError, FieldSpec, IndexTable};
use crate::jacobi::{JacobiError, SumContext};

pub use propositions::{verify_propositions, IdentityCheck, PropositionReport};
pub use report::{CaseRecord, OutputFormat, CSV_HEADER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ring(#[from] CycError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error("BadIndex: n = {n}: {reason}")]
    BadIndex { n: i64, reason: &'static str },
    #[error("BadD: d = {0} must be odd, in [1, 2l-1] and different from l")]
    BadD(u64),
    #[error("BadN: n = {n}: {reason}")]
    BadN { n: u64, reason: &'static str },
    #[error("TheoremViolation: J_l2(1,{n}) + 1 has low lambda-digits {digits:?}, expected zeros")]
    TheoremViolation { n: u64, digits: Vec<u32> },
}

/// Everything a verification run over one field needs, immutable once built.
#[derive(Debug, Clone)]
pub struct VerificationContext {
    field: FieldSpec,
    table: IndexTable,
    ring: CycRing,
    /// `ind_γ 2`
    w: u64,
}

impl VerificationContext {
    pub fn new(p: u64, r: u32, l: u64) -> Result<Self, CongruenceError> {
        Self::with_cache(p, r, l, None)
    }

    /// Like [`VerificationContext::new`], reading or writing the index table under `cache_dir`.
    pub fn with_cache(p: u64, r: u32, l: u64, cache_dir: Option<&Path>) -> Result<Self, CongruenceError> {
        let field = FieldSpec::new(p, r, l)?;
        let table = match cache_dir {
            Some(dir) => IndexTable::load_or_build(&field, dir),
            None => IndexTable::build(&field),
        };
        Self::from_parts(field, table)
    }

    pub fn from_parts(field: FieldSpec, table: IndexTable) -> Result<Self, CongruenceError> {
        let ring = CycRing::new(field.l())?;
        let w = table.ind(field.from_int(2))?;
        Ok(VerificationContext { field, table, ring, w })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn table(&self) -> &IndexTable {
        &self.table
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn l(&self) -> u64 {
        self.field.l()
    }

    pub fn sums(&self) -> SumContext<'_> {
        SumContext::new(&self.field, &self.table, &self.ring)
    }

    /// `l + 1`.
    pub fn required_valuation(&self) -> u32 {
        self.l() as u32 + 1
    }

    /// One above the requirement, so reports separate "exactly l+1" from "more".
    pub fn valuation_cap(&self) -> u32 {
        self.l() as u32 + 2
    }

    fn l2(&self) -> u64 {
        self.l() * self.l()
    }

    fn e_max(&self) -> u64 {
        2 * self.l2()
    }

    /// `J_e(1, n)` by direct summation.
    pub fn jacobi(&self, e: u64, n: i64) -> CycInt {
        self.sums().jacobi_sum(e, 1, n).expect("orders dividing 2l^2 are valid for the context").value
    }

    fn zeta(&self, k: i64) -> CycInt {
        self.ring.zeta_pow(k)
    }

    fn valuation(&self, a: &CycInt) -> Valuation {
        self.ring.lambda_valuation(a, self.valuation_cap())
    }
}

/// `c_{3,n}, ..., c_{l,n}`, each in `0..l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CCoeffs {
    pub n: u64,
    coeffs: Vec<u32>,
}

impl CCoeffs {
    /// `c_{i,n}` for `3 <= i <= l`.
    pub fn get(&self, i: usize) -> u32 {
        self.coeffs[i - 3]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.coeffs
    }

    /// `-1 + Σ_{i=3}^{l} c_i (base - 1)^i`.
    pub fn expansion(&self, ring: &CycRing, base: &CycInt) -> CycInt {
        let step = base - &ring.one();
        let mut power = ring.pow(&step, 3);
        let mut acc = ring.from_int(-1);
        for &c in &self.coeffs {
            if c != 0 {
                acc = &acc + &power.scale(&c.into());
            }
            power = ring.mul(&power, &step);
        }
        acc
    }
}

/// Digits of `J_{l²}(1,n) + 1` in base `λ`, converted to the `(ζ - 1)` base.
pub fn extract_c_coeffs(ctx: &VerificationContext, n: u64) -> Result<CCoeffs, CongruenceError> {
    let l = ctx.l();
    if n == 0 || n >= ctx.l2() {
        return Err(CongruenceError::BadIndex { n: n as i64, reason: "must lie in [1, l^2 - 1]" });
    }
    if n % l == 0 {
        return Err(CongruenceError::BadIndex { n: n as i64, reason: "must be coprime to l" });
    }
    let ring = ctx.ring();
    let delta = &ctx.jacobi(ctx.l2(), n as i64) + &ring.one();
    let expansion = ring.lambda_digit_expand(&delta, l as usize + 1);
    let d = &expansion.digits;
    if d[..3].iter().any(|&x| x != 0) {
        return Err(CongruenceError::TheoremViolation { n, digits: d[..3].to_vec() });
    }
    let coeffs = (3..=l as usize)
        .map(|i| if i % 2 == 0 { d[i] } else { (l as u32 - d[i]) % l as u32 })
        .collect();
    Ok(CCoeffs { n, coeffs })
}

/// `-1 + Σ c_{i,idx} (base - 1)^i` with `idx` reduced mod `l²`; the factor
/// is `-1` when the reduced index is a multiple of `l`.
fn factor_for_index(ctx: &VerificationContext, idx: i64, base: &CycInt) -> Result<CycInt, CongruenceError> {
    let reduced = idx.rem_euclid(ctx.l2() as i64) as u64;
    if reduced == 0 {
        return Err(CongruenceError::BadIndex { n: idx, reason: "index vanishes mod l^2" });
    }
    if reduced % ctx.l() == 0 {
        return Ok(ctx.ring.from_int(-1));
    }
    Ok(extract_c_coeffs(ctx, reduced)?.expansion(&ctx.ring, base))
}

/// `-1 + Σ c_{i,(l²-1)/2} (ζ^k - 1)^i`.
fn half_index_factor(ctx: &VerificationContext, k: i64) -> Result<CycInt, CongruenceError> {
    factor_for_index(ctx, (ctx.l2() as i64 - 1) / 2, &ctx.zeta(k))
}

/// Which right-hand side a given `n` is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseKind {
    /// `n = l²`
    NEqL2,
    /// `n = dl`, `d` odd, `d ≠ l`
    NEqDl,
    /// `gcd(n, 2l²) = 1`, `n < 2l² - 1`
    Coprime,
    /// `n = 2l² - 1`
    NMax,
    /// even `n`, reduced to `2l² - n - 1`
    EvenReduction,
    /// order `l²`, `gcd(n, l) = 1`
    OrderL2Coprime,
    /// order `l²`, `l | n`
    OrderL2Multiple,
}

impl CaseKind {
    pub fn label(self) -> &'static str {
        match self {
            CaseKind::NEqL2 => "n=l^2",
            CaseKind::NEqDl => "n=dl",
            CaseKind::Coprime => "coprime",
            CaseKind::NMax => "n=2l^2-1",
            CaseKind::EvenReduction => "even-reduction",
            CaseKind::OrderL2Coprime => "l2-coprime",
            CaseKind::OrderL2Multiple => "l2-multiple",
        }
    }
}

/// Routes odd `n` in `[1, 2l² - 1]`: `n = l²`, then `l | n`, then coprime, then `2l² - 1`.
pub fn classify_odd(l: u64, n: u64) -> Result<CaseKind, CongruenceError> {
    let l2 = l * l;
    if n == 0 || n >= 2 * l2 {
        return Err(CongruenceError::BadN { n, reason: "must lie in [1, 2l^2 - 1]" });
    }
    if n % 2 == 0 {
        return Err(CongruenceError::BadN { n, reason: "must be odd" });
    }
    Ok(if n == l2 {
        CaseKind::NEqL2
    } else if n % l == 0 {
        CaseKind::NEqDl
    } else if n < 2 * l2 - 1 {
        CaseKind::Coprime
    } else {
        CaseKind::NMax
    })
}

/// `ζ^{-w}(-1 + Σ c_{i,(l²-1)/2}(ζ - 1)^i)`.
pub fn rhs_n_eq_l2(ctx: &VerificationContext) -> Result<CycInt, CongruenceError> {
    let w = ctx.w as i64;
    Ok(ctx.ring.mul(&ctx.zeta(-w), &half_index_factor(ctx, 1)?))
}

/// `-ζ^{-w(dl+1)}(-1 + Σ c_{i,(l²-1)/2}(ζ - 1)^i)(-1 + Σ c_{i,dl-1}(ζ^{(-1-dl)/2} - 1)^i)`.
pub fn rhs_n_eq_dl(ctx: &VerificationContext, d: u64) -> Result<CycInt, CongruenceError> {
    let l = ctx.l();
    if d % 2 == 0 || d == 0 || d > 2 * l - 1 || d == l {
        return Err(CongruenceError::BadD(d));
    }
    let (w, dl) = (ctx.w as i64, (d * l) as i64);
    let ring = &ctx.ring;
    let lead = -ctx.zeta(-w * (dl + 1));
    let base = ctx.zeta((-1 - dl) / 2);
    let second = factor_for_index(ctx, dl - 1, &base)?;
    Ok(ring.mul(&ring.mul(&lead, &half_index_factor(ctx, 1)?), &second))
}

/// `ζ^{-w(n+1)}(-1 + Σ c_{i,(l²-1)/2}(ζ - 1)^i)(-1 + Σ c_{i,(l²-1)/2}(ζ^n - 1)^i)
///  (-1 + Σ c_{i,-1-n}(ζ^{(1-l²)/2} - 1)^i)`.
pub fn rhs_coprime(ctx: &VerificationContext, n: u64) -> Result<CycInt, CongruenceError> {
    let e_max = ctx.e_max();
    if n % 2 == 0 || n == 0 || n >= e_max - 1 || n.gcd(&e_max) != 1 {
        return Err(CongruenceError::BadN { n, reason: "must be odd, coprime to 2l^2 and below 2l^2 - 1" });
    }
    let (w, n) = (ctx.w as i64, n as i64);
    let ring = &ctx.ring;
    let l2 = ctx.l2() as i64;
    let lead = ctx.zeta(-w * (n + 1));
    let third = factor_for_index(ctx, -1 - n, &ctx.zeta((1 - l2) / 2))?;
    let prod = ring.mul(&half_index_factor(ctx, 1)?, &half_index_factor(ctx, n)?);
    Ok(ring.mul(&ring.mul(&lead, &prod), &third))
}

/// `-1`; here `J_{2l²}(1, 2l² - 1) = -1` holds exactly.
pub fn rhs_n_max(ctx: &VerificationContext) -> CycInt {
    ctx.ring.from_int(-1)
}

/// `n' = 2l² - n - 1` and `χ(-1)`, with `J(1,n) = χ(-1)·J(1,n')`.
pub fn reduce_even_n(ctx: &VerificationContext, n: u64) -> Result<(u64, CycInt), CongruenceError> {
    let e_max = ctx.e_max();
    if n % 2 != 0 || n < 2 || n > e_max - 2 {
        return Err(CongruenceError::BadN { n, reason: "must be even in [2, 2l^2 - 2]" });
    }
    let sign = ctx.sums().chi_minus_one(e_max)?;
    Ok((e_max - n - 1, sign))
}

/// Right-hand side for an odd `n`, chosen by [`classify_odd`].
pub fn rhs_for_odd(ctx: &VerificationContext, n: u64) -> Result<CycInt, CongruenceError> {
    match classify_odd(ctx.l(), n)? {
        CaseKind::NEqL2 => rhs_n_eq_l2(ctx),
        CaseKind::NEqDl => rhs_n_eq_dl(ctx, n / ctx.l()),
        CaseKind::Coprime => rhs_coprime(ctx, n),
        _ => Ok(rhs_n_max(ctx)),
    }
}

/// One verified case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub n: u64,
    pub case: CaseKind,
    pub required: u32,
    /// `None` when the right-hand side could not be formed; see `error`.
    pub achieved: Option<Valuation>,
    pub pass: bool,
    pub error: Option<String>,
}

impl CaseResult {
    fn checked(ctx: &VerificationContext, n: u64, case: CaseKind, diff: &CycInt, exact_ok: bool) -> Self {
        let required = ctx.required_valuation();
        let achieved = ctx.valuation(diff);
        CaseResult { n, case, required, achieved: Some(achieved), pass: exact_ok && achieved.meets(required), error: None }
    }

    fn failed(ctx: &VerificationContext, n: u64, case: CaseKind, err: CongruenceError) -> Self {
        CaseResult {
            n,
            case,
            required: ctx.required_valuation(),
            achieved: None,
            pass: false,
            error: Some(err.to_string()),
        }
    }
}

/// Checks `J_{l²}(1,n)` against its congruence for `1 <= n <= l² - 1`.
pub fn verify_order_l2(ctx: &VerificationContext, n: u64) -> Result<CaseResult, CongruenceError> {
    if n == 0 || n >= ctx.l2() {
        return Err(CongruenceError::BadN { n, reason: "must lie in [1, l^2 - 1]" });
    }
    let ring = ctx.ring();
    let value = ctx.jacobi(ctx.l2(), n as i64);
    if n % ctx.l() == 0 {
        let diff = &value + &ring.one();
        return Ok(CaseResult::checked(ctx, n, CaseKind::OrderL2Multiple, &diff, true));
    }
    Ok(match extract_c_coeffs(ctx, n) {
        Ok(c) => {
            let diff = &value - &c.expansion(ring, &ctx.zeta(1));
            CaseResult::checked(ctx, n, CaseKind::OrderL2Coprime, &diff, true)
        }
        Err(e) => CaseResult::failed(ctx, n, CaseKind::OrderL2Coprime, e),
    })
}

/// Checks `J_{2l²}(1,n)` for one `n` in `[1, 2l² - 1]`.
pub fn verify_main_case(ctx: &VerificationContext, n: u64) -> Result<CaseResult, CongruenceError> {
    let e_max = ctx.e_max();
    if n == 0 || n >= e_max {
        return Err(CongruenceError::BadN { n, reason: "must lie in [1, 2l^2 - 1]" });
    }
    let ring = ctx.ring();
    let lhs = ctx.jacobi(e_max, n as i64);
    if n % 2 == 0 {
        let (odd, sign) = reduce_even_n(ctx, n)?;
        let exact = lhs == ring.mul(&sign, &ctx.jacobi(e_max, odd as i64));
        return Ok(match rhs_for_odd(ctx, odd) {
            Ok(rhs) => {
                let diff = &lhs - &ring.mul(&sign, &rhs);
                CaseResult::checked(ctx, n, CaseKind::EvenReduction, &diff, exact)
            }
            Err(e) => CaseResult::failed(ctx, n, CaseKind::EvenReduction, e),
        });
    }
    let case = classify_odd(ctx.l(), n)?;
    Ok(match rhs_for_odd(ctx, n) {
        Ok(rhs) => {
            let diff = &lhs - &rhs;
            let exact_ok = case != CaseKind::NMax || diff.is_zero();
            CaseResult::checked(ctx, n, case, &diff, exact_ok)
        }
        Err(e) => CaseResult::failed(ctx, n, case, e),
    })
}

/// Outcome of a verification run over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub l: u64,
    pub p: u64,
    pub r: u32,
    pub q: u64,
    /// Canonical encoding of the generator.
    pub gamma: u64,
    pub w: u64,
    /// Order `2l²`, `n = 1, ..., 2l² - 1`.
    pub cases: Vec<CaseResult>,
    /// Order `l²`, `n = 1, ..., l² - 1`; empty when only the main theorem ran.
    pub order_l2: Vec<CaseResult>,
    pub all_pass: bool,
    /// Wall time, recorded only on request so default output stays reproducible.
    pub elapsed_ms: Option<u64>,
}

impl CongruenceReport {
    fn new(ctx: &VerificationContext, cases: Vec<CaseResult>, order_l2: Vec<CaseResult>) -> Self {
        let f = ctx.field();
        let all_pass = cases.iter().chain(&order_l2).all(|c| c.pass);
        CongruenceReport {
            l: f.l(),
            p: f.p(),
            r: f.r(),
            q: f.q(),
            gamma: f.gamma().encoding(),
            w: ctx.w(),
            cases,
            order_l2,
            all_pass,
            elapsed_ms: None,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().chain(&self.order_l2).filter(|c| !c.pass)
    }
}

/// Every `n` in `[1, 2l² - 1]`, evaluated in parallel and reported in order of `n`.
pub fn verify_main_theorem(ctx: &VerificationContext) -> CongruenceReport {
    let cases = (1..ctx.e_max())
        .into_par_iter()
        .map(|n| verify_main_case(ctx, n).expect("n is in range"))
        .collect();
    CongruenceReport::new(ctx, cases, Vec::new())
}

/// Every `n` in `[1, l² - 1]` at order `l²`.
pub fn verify_order_l2_all(ctx: &VerificationContext) -> Vec<CaseResult> {
    (1..ctx.l2()).into_par_iter().map(|n| verify_order_l2(ctx, n).expect("n is in range")).collect()
}

/// Main theorem plus the order-`l²` congruences.
pub fn verify_field(ctx: &VerificationContext) -> CongruenceReport {
    let mut report = verify_main_theorem(ctx);
    report.order_l2 = verify_order_l2_all(ctx);
    report.all_pass = report.all_pass && report.order_l2.iter().all(|c| c.pass);
    report
}
