//! Jacobi sums of order `e | 2l²` over `F_q`, as exact elements of `Z[ζ_{l²}]`.
//!
//! `χ_e(γ) = ζ_e`, `χ_e(0) = 0`. The trivial character follows the same rule
//! inside a sum: `χ^0(0) = 0` and `χ^0(x) = 1` otherwise, which gives
//! `J_e(0,0) = q - 2` and `J_e(0,j) = -1` for `j ≢ 0`.
//!
//! Every `ζ_e` is embedded as a power of `ζ_{2l²}`, `ζ_e = ζ_{2l²}^{2l²/e}`.

use thiserror::Error;

use crate::cyclo::{CycInt, CycRing};
use crate::ff::{FieldElement, FieldSpec, IndexTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobiError {
    #[error("BadOrder: {e} does not divide 2l^2 = {e_max}")]
    BadOrder { e: u64, e_max: u64 },
    #[error("BadField: q = {q} is not 1 mod {e}")]
    BadField { q: u64, e: u64 },
}

/// Which kernel the sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `Σ χ^i(v) χ^j(v+1)`
    Shifted,
    /// `Σ χ^i(v) χ^j(1-v)`
    Reflected,
}

/// A character order `e | 2l²` with an exponent pair reduced mod `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterParams {
    order: u64,
    i: u64,
    j: u64,
    /// `2l² / e`
    embedding_scale: u64,
}

impl CharacterParams {
    pub fn new(f: &FieldSpec, e: u64, i: i64, j: i64) -> Result<Self, JacobiError> {
        let e_max = f.e_max();
        if e == 0 || e_max % e != 0 {
            return Err(JacobiError::BadOrder { e, e_max });
        }
        if (f.q() - 1) % e != 0 {
            return Err(JacobiError::BadField { q: f.q(), e });
        }
        Ok(CharacterParams {
            order: e,
            i: i.rem_euclid(e as i64) as u64,
            j: j.rem_euclid(e as i64) as u64,
            embedding_scale: e_max / e,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn embedding_scale(&self) -> u64 {
        self.embedding_scale
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiValue {
    pub value: CycInt,
    pub convention: Convention,
    pub params: CharacterParams,
    pub q: u64,
}

/// Shared read-only state for character sums over one field.
#[derive(Debug, Clone, Copy)]
pub struct SumContext<'a> {
    pub field: &'a FieldSpec,
    pub table: &'a IndexTable,
    pub ring: &'a CycRing,
}

impl<'a> SumContext<'a> {
    pub fn new(field: &'a FieldSpec, table: &'a IndexTable, ring: &'a CycRing) -> Self {
        debug_assert_eq!(field.l(), ring.l());
        debug_assert_eq!(field.q(), table.q());
        SumContext { field, table, ring }
    }

    /// `J_e(i,j) = Σ_v χ_e^i(v) χ_e^j(v+1)`.
    pub fn jacobi_sum(&self, e: u64, i: i64, j: i64) -> Result<JacobiValue, JacobiError> {
        let params = CharacterParams::new(self.field, e, i, j)?;
        let f = self.field;
        let value = self.sum_kernel(&params, |v| f.succ(v));
        Ok(JacobiValue { value, convention: Convention::Shifted, params, q: f.q() })
    }

    /// `J_e(χ^i, χ^j) = Σ_v χ_e^i(v) χ_e^j(1-v)`.
    pub fn jacobi_sum_reflected(&self, e: u64, i: i64, j: i64) -> Result<JacobiValue, JacobiError> {
        let params = CharacterParams::new(self.field, e, i, j)?;
        let f = self.field;
        let value = self.sum_kernel(&params, |v| f.sub(f.one(), v));
        Ok(JacobiValue { value, convention: Convention::Reflected, params, q: f.q() })
    }

    /// Tallies `ind(v)·i + ind(partner(v))·j` over `Z/2l²` and maps the tally into the ring.
    fn sum_kernel(&self, params: &CharacterParams, partner: impl Fn(FieldElement) -> FieldElement) -> CycInt {
        let e_max = self.field.e_max();
        let (i, j, scale) = (params.i, params.j, params.embedding_scale);
        let mut counts = vec![0i64; e_max as usize];
        for v in self.field.elements().skip(1) {
            let w = partner(v);
            let (Some(a), Some(b)) = (self.table.raw(v.encoding()), self.table.raw(w.encoding())) else {
                continue;
            };
            let t = ((a % e_max) * i + (b % e_max) * j) % e_max * scale % e_max;
            counts[t as usize] += 1;
        }
        self.from_2l2_counts(&counts)
    }

    /// `Σ_t counts[t]·ζ_{2l²}^t`.
    fn from_2l2_counts(&self, counts: &[i64]) -> CycInt {
        let mut by_exponent = vec![0i64; (self.ring.l() * self.ring.l()) as usize];
        for (t, &c) in counts.iter().enumerate() {
            if c != 0 {
                let (k, s) = self.ring.zeta_2l2_exponent(t as i64);
                by_exponent[k] += s * c;
            }
        }
        self.ring.from_exponent_counts(&by_exponent)
    }

    /// `χ_e^i(x)`; zero at `x = 0` for every `i`.
    pub fn chi_eval(&self, e: u64, i: i64, x: FieldElement) -> Result<CycInt, JacobiError> {
        let params = CharacterParams::new(self.field, e, i, 0)?;
        Ok(match self.table.raw(x.encoding()) {
            None => self.ring.zero(),
            Some(t) => {
                let e_max = self.field.e_max();
                let exp = (t % e_max) * params.i % e_max * params.embedding_scale % e_max;
                self.ring.zeta_2l2_pow(exp as i64)
            }
        })
    }

    /// `χ_e(-1)`, always `±1`.
    pub fn chi_minus_one(&self, e: u64) -> Result<CycInt, JacobiError> {
        let minus_one = self.field.from_int(-1);
        self.chi_eval(e, 1, minus_one)
    }

    /// `ind_γ 2`, with `2 = 1 + 1` in the prime subfield.
    pub fn ind_two(&self) -> u64 {
        self.table.ind(self.field.from_int(2)).expect("2 is nonzero in odd characteristic")
    }
}
