//! Prime and prime-power finite fields with a fixed generator, plus the
//! discrete index table `ind_γ` used to evaluate multiplicative characters.
//!
//! Elements of `F_{p^r}` are stored through their canonical encoding: the
//! base-`p` integer whose digit `i` is the coefficient of `x^i` in the
//! polynomial representative modulo the defining polynomial. For `r = 1`
//! the encoding is the residue itself.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Largest field size accepted. Index tables are dense arrays of size `q`.
pub const MAX_Q: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("NotOddPrime: l = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("CongruenceFailed: q = {q} is {residue} mod {modulus}, expected 1")]
    CongruenceFailed { q: u64, modulus: u64, residue: u64 },
    #[error("DegenerateField: {0}")]
    DegenerateField(String),
    #[error("FieldTooLarge: q = {p}^{r} exceeds the supported bound {max}")]
    FieldTooLarge { p: u64, r: u32, max: u64 },
    #[error("ZeroArgument: the index of 0 is undefined")]
    ZeroArgument,
    #[error("element encoding {0} is outside the field")]
    BadElement(u64),
    #[error("dlog cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
}

/// Deterministic trial-division primality test; inputs stay below `MAX_Q`-ish sizes.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of `F_q`, held as its canonical encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn encoding(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `F_q` with `q = p^r ≡ 1 (mod 2l²)` and a fixed generator `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    r: u32,
    q: u64,
    l: u64,
    k: u64,
    /// Monic defining polynomial, coefficients low degree first (length `r + 1`); `None` for prime fields.
    modulus: Option<Vec<u64>>,
    gamma: FieldElement,
}

impl FieldSpec {
    /// Builds `F_{p^r}` for the odd prime `l`, choosing the modulus and generator deterministically.
    pub fn new(p: u64, r: u32, l: u64) -> Result<Self, FieldError> {
        if l < 3 || !is_prime(l) {
            return Err(FieldError::NotOddPrime(l));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::DegenerateField("extension degree must be at least 1".into()));
        }
        if p == 2 || p == l {
            return Err(FieldError::DegenerateField(format!(
                "characteristic {p} must differ from 2 and l = {l}"
            )));
        }
        let q = checked_pow(p, r).filter(|&q| q <= MAX_Q).ok_or(FieldError::FieldTooLarge {
            p,
            r,
            max: MAX_Q,
        })?;
        let e_max = 2 * l * l;
        if q % e_max != 1 {
            return Err(FieldError::CongruenceFailed { q, modulus: e_max, residue: q % e_max });
        }
        let modulus = if r > 1 { Some(smallest_irreducible(p, r as usize)) } else { None };
        let mut field = FieldSpec { p, r, q, l, k: (q - 1) / e_max, modulus, gamma: FieldElement(0) };
        let start = if r == 1 { 2 } else { p };
        let gamma = (start..q)
            .map(FieldElement)
            .find(|&g| field.is_generator(g))
            .ok_or_else(|| FieldError::DegenerateField("no generator found".into()))?;
        field.gamma = gamma;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `(q - 1) / 2l²`.
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn e_max(&self) -> u64 {
        2 * self.l * self.l
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn element(&self, encoding: u64) -> Result<FieldElement, FieldError> {
        if encoding < self.q {
            Ok(FieldElement(encoding))
        } else {
            Err(FieldError::BadElement(encoding))
        }
    }

    /// Element from its coefficient vector (low degree first, at most `r` entries).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::DegenerateField(format!("non-canonical coefficients {coeffs:?}")));
        }
        Ok(FieldElement(self.encode(coeffs)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.0;
        (0..self.r)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Image of an integer in the prime subfield, so `from_int(2)` is `1 + 1`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.r == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        FieldElement(self.encode(&sum))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.r == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let x: Vec<u64> = self.coeffs(a).iter().map(|c| (self.p - c) % self.p).collect();
        FieldElement(self.encode(&x))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.modulus {
            None => FieldElement(a.0 * b.0 % self.p),
            Some(m) => {
                let prod = poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
                FieldElement(self.encode(&poly::rem(prod, m, self.p)))
            }
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Encoding of `x + 1`; touches only the constant coefficient.
    pub fn succ(&self, x: FieldElement) -> FieldElement {
        if x.0 % self.p == self.p - 1 {
            FieldElement(x.0 + 1 - self.p)
        } else {
            FieldElement(x.0 + 1)
        }
    }

    pub fn is_generator(&self, g: FieldElement) -> bool {
        if g.is_zero() {
            return false;
        }
        let n = self.q - 1;
        prime_divisors(n).into_iter().all(|f| self.pow(g, n / f) != self.one())
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

/// Monic irreducible of degree `r` over `F_p`, smallest when the coefficient
/// tuples `(c_0, ..., c_{r-1})` are compared from the constant term upward.
fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    let total = p.pow(r as u32);
    for idx in 0..total {
        // c_0 is the most significant digit of idx, c_{r-1} the least.
        let mut f = vec![0u64; r + 1];
        let mut v = idx;
        for i in (0..r).rev() {
            f[i] = v % p;
            v /= p;
        }
        f[r] = 1;
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense polynomial arithmetic over `F_p`, coefficients low degree first.
pub(crate) mod poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    /// Remainder modulo a nonzero `m`; the result has length `deg m`.
    pub fn rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let top = a.pop().unwrap();
            if top == 0 {
                continue;
            }
            let c = top * lead_inv % p;
            let shift = a.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
            }
        }
        a.resize(dm, 0);
        a
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = trim(rem(a, &b, p));
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let inv = inv_mod(lead, p);
            a.iter_mut().for_each(|c| *c = *c * inv % p);
        }
        a
    }

    /// `x^(p^k) mod m`.
    fn frobenius_power(k: usize, m: &[u64], p: u64) -> Vec<u64> {
        let mut x = rem(vec![0, 1], m, p);
        for _ in 0..k {
            let mut acc = rem(vec![1], m, p);
            let mut base = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(mul(&acc, &base, p), m, p);
                }
                base = rem(mul(&base, &base, p), m, p);
                e >>= 1;
            }
            x = acc;
        }
        x
    }

    /// Rabin's test for a monic `f` of degree `r`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let r = f.len() - 1;
        if r == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = rem(vec![0, 1], f, p);
        if frobenius_power(r, f, p) != x {
            return false;
        }
        super::prime_divisors(r as u64).into_iter().all(|t| {
            let mut h = frobenius_power(r / t as usize, f, p);
            h[1] = (h[1] + p - 1) % p;
            gcd(&h, f, p).len() == 1
        })
    }
}

/// `ind_γ` as a dense array over element encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTable {
    q: u64,
    table: Vec<u32>,
}

const NO_INDEX: u32 = u32::MAX;

impl IndexTable {
    /// Enumerates `γ^0, γ^1, ..., γ^(q-2)`.
    pub fn build(f: &FieldSpec) -> Self {
        let mut table = vec![NO_INDEX; f.q() as usize];
        let mut x = f.one();
        for t in 0..f.q() - 1 {
            debug_assert_eq!(table[x.0 as usize], NO_INDEX, "generator repeats a power");
            table[x.0 as usize] = t as u32;
            x = f.mul(x, f.gamma());
        }
        IndexTable { q: f.q(), table }
    }

    /// Number of entries, `q - 1`.
    pub fn len(&self) -> usize {
        self.table.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ind(&self, x: FieldElement) -> Result<u64, FieldError> {
        match self.table.get(x.0 as usize) {
            Some(&NO_INDEX) => Err(FieldError::ZeroArgument),
            Some(&t) => Ok(t as u64),
            None => Err(FieldError::BadElement(x.0)),
        }
    }

    /// Raw lookup by encoding; `None` for zero.
    #[inline]
    pub(crate) fn raw(&self, encoding: u64) -> Option<u64> {
        match self.table[encoding as usize] {
            NO_INDEX => None,
            t => Some(t as u64),
        }
    }

    pub fn cache_file_name(f: &FieldSpec) -> String {
        format!("dlog_p{}_r{}_l{}_g{}.txt", f.p(), f.r(), f.l(), f.gamma().encoding())
    }

    /// Writes the cache format: header `p r q gamma l`, then `<encoding> <index>` per nonzero element.
    pub fn write_cache(&self, f: &FieldSpec, path: &Path) -> Result<(), FieldError> {
        let io_err = |e: std::io::Error| FieldError::Cache { path: path.to_owned(), reason: e.to_string() };
        let mut out = BufWriter::new(fs::File::create(path).map_err(io_err)?);
        writeln!(out, "{} {} {} {} {}", f.p(), f.r(), f.q(), f.gamma().encoding(), f.l()).map_err(io_err)?;
        for (enc, &t) in self.table.iter().enumerate().skip(1) {
            writeln!(out, "{enc} {t}").map_err(io_err)?;
        }
        out.flush().map_err(io_err)
    }

    /// Loads a cache file and checks it against `f`: header match, full
    /// coverage in increasing element order, and `ind(γx) = ind(x) + 1`.
    pub fn load_cache(f: &FieldSpec, path: &Path) -> Result<Self, FieldError> {
        let bad = |reason: String| FieldError::Cache { path: path.to_owned(), reason };
        let file = fs::File::open(path).map_err(|e| bad(e.to_string()))?;
        let mut lines = BufReader::new(file).lines();
        let header = lines.next().ok_or_else(|| bad("empty file".into()))?.map_err(|e| bad(e.to_string()))?;
        let expected = format!("{} {} {} {} {}", f.p(), f.r(), f.q(), f.gamma().encoding(), f.l());
        if header.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
            return Err(bad(format!("header `{header}` does not match `{expected}`")));
        }
        let mut table = vec![NO_INDEX; f.q() as usize];
        let mut seen = vec![false; f.q() as usize - 1];
        let mut next = 1u64;
        for line in lines {
            let line = line.map_err(|e| bad(e.to_string()))?;
            let mut it = line.split_whitespace().map(str::parse::<u64>);
            let (Some(Ok(enc)), Some(Ok(t)), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("malformed line `{line}`")));
            };
            if enc != next || t >= f.q() - 1 || seen[t as usize] {
                return Err(bad(format!("unexpected entry `{line}`")));
            }
            seen[t as usize] = true;
            table[enc as usize] = t as u32;
            next += 1;
        }
        if next != f.q() {
            return Err(bad(format!("{} entries, expected {}", next - 1, f.q() - 1)));
        }
        let loaded = IndexTable { q: f.q(), table };
        let n = f.q() - 1;
        for x in f.elements().skip(1) {
            let gx = f.mul(x, f.gamma());
            if loaded.ind(gx)? != (loaded.ind(x)? + 1) % n {
                return Err(bad(format!("index of element {x} is inconsistent with gamma")));
            }
        }
        if loaded.ind(f.one())? != 0 {
            return Err(bad("ind(1) != 0".into()));
        }
        Ok(loaded)
    }

    /// Reads `dir/<cache_file_name>` when valid, otherwise rebuilds and rewrites it.
    pub fn load_or_build(f: &FieldSpec, dir: &Path) -> Self {
        let path = dir.join(Self::cache_file_name(f));
        if let Ok(t) = Self::load_cache(f, &path) {
            return t;
        }
        let t = Self::build(f);
        // A failed write only costs a rebuild next time.
        let _ = fs::create_dir_all(dir).map_err(|_| ()).and_then(|_| t.write_cache(f, &path).map_err(|_| ()));
        t
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}
