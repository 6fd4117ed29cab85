//! Arithmetic in `F_p` and `F_{p^e}` over discrete-log tables, plus validation
//! of the parameter regime `(p, ell, k)`.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

/// Default ceiling on `q = p^e`.
pub const DEFAULT_FIELD_CEILING: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p and ell must be distinct (both are {0})")]
    EqualPrimes(u64),
    #[error("{0} is even; p and ell must be odd primes")]
    EvenInput(u64),
    #[error("k must be at least 1")]
    ZeroExponent,
    #[error("ord_{modulus}({p}) = {order}, expected {expected}")]
    NotPrimitiveRoot {
        p: u64,
        modulus: u64,
        order: u64,
        expected: u64,
    },
    #[error("field size exceeds ceiling {ceiling}")]
    Overflow { ceiling: u64 },
    #[error("the zero element has no discrete logarithm")]
    ZeroElement,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Quadratic character of `F_p` evaluated at `z mod p`.
pub fn quad_char(p: u64, z: i64) -> i8 {
    let r = z.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The parameter regime without any size ceiling. Valid even when `q` does
/// not fit in a machine word, so closed forms can be evaluated for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub p: u64,
    pub ell: u64,
    pub k: u32,
    pub e: u64,
    /// `ell^k`
    pub ell_k: u64,
}

impl Regime {
    pub fn new(p: u64, ell: u64, k: u32) -> Result<Self, FieldError> {
        for v in [p, ell] {
            if v % 2 == 0 {
                return Err(FieldError::EvenInput(v));
            }
        }
        for v in [p, ell] {
            if !is_prime(v) {
                return Err(FieldError::NotPrime(v));
            }
        }
        if p == ell {
            return Err(FieldError::EqualPrimes(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let overflow = FieldError::Overflow { ceiling: u64::MAX };
        let ell_k = ell.checked_pow(k).ok_or(overflow.clone())?;
        let modulus = ell_k.checked_mul(2).ok_or(overflow)?;
        let e = (ell - 1) * (ell_k / ell);
        let order = multiplicative_order(p % modulus, modulus, e);
        if order != e {
            return Err(FieldError::NotPrimitiveRoot {
                p,
                modulus,
                order,
                expected: e,
            });
        }
        Ok(Regime {
            p,
            ell,
            k,
            e,
            ell_k,
        })
    }

    /// `ell^(k-1)`
    pub fn ell_k1(&self) -> u64 {
        self.ell_k / self.ell
    }

    pub fn two_ell_k(&self) -> u64 {
        2 * self.ell_k
    }
}

/// Order of `a` modulo `m`, or `limit + 1` if it exceeds `limit`.
fn multiplicative_order(a: u64, m: u64, limit: u64) -> u64 {
    let mut x = a % m;
    for j in 1..=limit {
        if x == 1 % m {
            return j;
        }
        x = ((x as u128 * a as u128) % m as u128) as u64;
    }
    limit + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub ell: u64,
    pub k: u32,
    pub e: u64,
    pub q: u64,
    pub exp_n: u64,
}

impl FieldParams {
    pub fn regime(&self) -> Regime {
        Regime {
            p: self.p,
            ell: self.ell,
            k: self.k,
            e: self.e,
            ell_k: self.ell.pow(self.k),
        }
    }

    pub fn ell_k(&self) -> u64 {
        self.ell.pow(self.k)
    }

    pub fn ell_k1(&self) -> u64 {
        self.ell.pow(self.k - 1)
    }

    pub fn two_ell_k(&self) -> u64 {
        2 * self.ell_k()
    }

    /// `sqrt(q) = p^(e/2)`
    pub fn sqrt_q(&self) -> u64 {
        self.p.pow((self.e / 2) as u32)
    }
}

pub fn validate_params(p: u64, ell: u64, k: u32) -> Result<FieldParams, FieldError> {
    validate_params_with_ceiling(p, ell, k, DEFAULT_FIELD_CEILING)
}

/// Every valid `(p, ell, k)` with `q <= max_q`, ordered by `(q, p, ell, k)`.
pub fn enumerate_params(max_q: u64) -> Vec<FieldParams> {
    let mut out = Vec::new();
    // e >= 2, so p <= sqrt(max_q); e = phi(ell^k) <= log_3(max_q)
    let max_e = (max_q as f64).log(3.0).floor() as u64;
    let max_p = (max_q as f64).sqrt() as u64 + 1;
    for ell in (3..=max_e + 1).filter(|&l| is_prime(l)) {
        let mut k = 1u32;
        while (ell - 1) * ell.pow(k - 1) <= max_e {
            for p in (3..=max_p).filter(|&p| is_prime(p)) {
                if let Ok(fp) = validate_params_with_ceiling(p, ell, k, max_q) {
                    out.push(fp);
                }
            }
            k += 1;
        }
    }
    out.sort_by_key(|f| (f.q, f.p, f.ell, f.k));
    out
}

pub fn validate_params_with_ceiling(
    p: u64,
    ell: u64,
    k: u32,
    ceiling: u64,
) -> Result<FieldParams, FieldError> {
    let r = Regime::new(p, ell, k)?;
    let q = u32::try_from(r.e)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .filter(|&q| q <= ceiling)
        .ok_or(FieldError::Overflow { ceiling })?;
    Ok(FieldParams {
        p,
        ell,
        k,
        e: r.e,
        q,
        exp_n: (q - 1) / r.two_ell_k(),
    })
}

/// An element of `F_q`: either zero or `alpha^log`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    const ZERO_MARK: u32 = u32::MAX;
    pub const ZERO: FieldElement = FieldElement(Self::ZERO_MARK);
    pub const ONE: FieldElement = FieldElement(0);

    pub fn from_log(log: u64) -> Self {
        FieldElement(log as u32)
    }

    pub fn log(self) -> Option<u64> {
        (self.0 != Self::ZERO_MARK).then_some(self.0 as u64)
    }

    pub fn is_zero(self) -> bool {
        self.0 == Self::ZERO_MARK
    }

    /// Position in the canonical enumeration: zero first, then `alpha^0, alpha^1, ...`.
    pub fn index(self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.0 as usize + 1
        }
    }

    pub fn from_index(idx: usize) -> Self {
        if idx == 0 {
            Self::ZERO
        } else {
            FieldElement((idx - 1) as u32)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "a^{l}"),
        }
    }
}

/// Tables for `F_{p^e}` built from a primitive polynomial.
///
/// Elements have an integer representation `sum c_j p^j` where `sum c_j x^j`
/// is the polynomial residue; `F_p` constants are their own representation.
#[derive(Debug, Clone)]
pub struct Gf {
    pub p: u64,
    pub e: u64,
    pub q: u64,
    /// Monic primitive polynomial, coefficients `c_0 .. c_e` with `c_e = 1`.
    pub modulus: Vec<u64>,
    log_table: Vec<u32>,
    antilog_table: Vec<u32>,
    zech: Vec<u32>,
    /// Trace of `alpha^i`, stored twice over so products need no reduction.
    trace_by_log: Vec<u32>,
}

impl Gf {
    pub fn new(p: u64, e: u64) -> Result<Self, FieldError> {
        Self::with_ceiling(p, e, DEFAULT_FIELD_CEILING)
    }

    pub fn with_ceiling(p: u64, e: u64, ceiling: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = u32::try_from(e)
            .ok()
            .and_then(|ee| p.checked_pow(ee))
            .filter(|&q| q <= ceiling && q - 1 < u32::MAX as u64)
            .ok_or(FieldError::Overflow { ceiling })?;
        let modulus = smallest_primitive_poly(p, e as usize, q);
        let n = (q - 1) as usize;

        let mut antilog_table = vec![0u32; n];
        let mut log_table = vec![u32::MAX; q as usize];
        let mut v = vec![0u64; e as usize];
        v[0] = 1;
        for (i, slot) in antilog_table.iter_mut().enumerate() {
            let packed = pack(&v, p);
            *slot = packed as u32;
            debug_assert_eq!(log_table[packed as usize], u32::MAX);
            log_table[packed as usize] = i as u32;
            times_x(&mut v, &modulus, p);
        }

        let zech = (0..n)
            .map(|i| {
                let r = antilog_table[i] as u64;
                let plus_one = (r - r % p) + (r % p + 1) % p;
                log_table[plus_one as usize]
            })
            .collect();

        let mut gf = Gf {
            p,
            e,
            q,
            modulus,
            log_table,
            antilog_table,
            zech,
            trace_by_log: Vec::new(),
        };
        gf.trace_by_log = gf.build_trace_table();
        Ok(gf)
    }

    fn build_trace_table(&self) -> Vec<u32> {
        let (p, e, n) = (self.p, self.e as usize, (self.q - 1) as usize);
        let basis_trace: Vec<u64> = (0..e)
            .map(|j| {
                let mut acc = FieldElement::ZERO;
                let mut pj = 1u64;
                for _ in 0..e {
                    acc = self.add(acc, self.pow(FieldElement::from_log(j as u64), pj));
                    pj = pj.wrapping_mul(p) % (self.q - 1);
                }
                let r = self.repr(acc);
                assert!(r < p, "trace left the prime field");
                r
            })
            .collect();
        let mut out = vec![0u32; 2 * n];
        for i in 0..n {
            let mut r = self.antilog_table[i] as u64;
            let mut t = 0u64;
            for bt in &basis_trace {
                t += (r % p) * bt;
                r /= p;
            }
            let t = (t % p) as u32;
            out[i] = t;
            out[i + n] = t;
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.q - 1
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement::from_log(1 % (self.q - 1))
    }

    /// Integer representation `sum c_j p^j`.
    pub fn repr(&self, x: FieldElement) -> u64 {
        match x.log() {
            None => 0,
            Some(l) => self.antilog_table[l as usize] as u64,
        }
    }

    pub fn from_repr(&self, r: u64) -> FieldElement {
        if r == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.log_table[r as usize])
        }
    }

    /// Embeds `z mod p`.
    pub fn from_int(&self, z: i64) -> FieldElement {
        self.from_repr(z.rem_euclid(self.p as i64) as u64)
    }

    /// `Some(z)` when `x` lies in the prime field.
    pub fn as_prime(&self, x: FieldElement) -> Option<u64> {
        let r = self.repr(x);
        (r < self.p).then_some(r)
    }

    pub fn is_prime_field(&self, x: FieldElement) -> bool {
        self.repr(x) < self.p
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.log(), b.log()) {
            (Some(x), Some(y)) => FieldElement::from_log((x + y) % (self.q - 1)),
            _ => FieldElement::ZERO,
        }
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        match a.log() {
            None if n == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(x) => {
                let m = self.q - 1;
                FieldElement::from_log(((x as u128 * n as u128) % m as u128) as u64)
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let x = a.log().ok_or(FieldError::ZeroElement)?;
        Ok(FieldElement::from_log((self.q - 1 - x) % (self.q - 1)))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(x) if self.p == 2 => FieldElement::from_log(x),
            Some(x) => FieldElement::from_log((x + (self.q - 1) / 2) % (self.q - 1)),
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (x, y) = match (a.log(), b.log()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(x), Some(y)) => (x, y),
        };
        let m = self.q - 1;
        // a + b = a (1 + b/a)
        let d = (y + m - x) % m;
        let z = self.zech[d as usize];
        if z == u32::MAX {
            FieldElement::ZERO
        } else {
            FieldElement::from_log((x + z as u64) % m)
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn trace(&self, x: FieldElement) -> u64 {
        match x.log() {
            None => 0,
            Some(l) => self.trace_by_log[l as usize] as u64,
        }
    }

    /// `Tr(a * b)` without materialising the product.
    #[inline]
    pub fn trace_mul(&self, a: FieldElement, b: FieldElement) -> u32 {
        if a.is_zero() || b.is_zero() {
            0
        } else {
            self.trace_by_log[(a.0 + b.0) as usize]
        }
    }

    /// Elements in canonical order: zero, then increasing log.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as usize).map(FieldElement::from_index)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q - 1).map(FieldElement::from_log)
    }

    /// Quadratic character of `F_q`.
    pub fn eta(&self, x: FieldElement) -> i8 {
        match x.log() {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }
}

fn pack(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// `v <- v * x mod f` for monic `f` of degree `v.len()`.
fn times_x(v: &mut [u64], f: &[u64], p: u64) {
    let e = v.len();
    let top = v[e - 1];
    for j in (1..e).rev() {
        v[j] = v[j - 1];
    }
    v[0] = 0;
    if top != 0 {
        for j in 0..e {
            v[j] = (v[j] + (p - f[j]) * top) % p;
        }
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let e = a.len();
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for j in 0..e {
                prod[d - e + j] = (prod[d - e + j] + (p - f[j]) * c) % p;
            }
            prod[d] = 0;
        }
    }
    prod.truncate(e);
    prod
}

fn x_pow_mod(n: u64, f: &[u64], p: u64) -> Vec<u64> {
    let e = f.len() - 1;
    let mut acc = vec![0u64; e];
    acc[0] = 1;
    let mut base = vec![0u64; e];
    if e == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        n >>= 1;
    }
    acc
}

/// First monic primitive polynomial of degree `e`, ordering candidates by the
/// base-`p` integer whose digit `j` is the coefficient of `x^j` (`j < e`).
fn smallest_primitive_poly(p: u64, e: usize, q: u64) -> Vec<u64> {
    let factors = prime_factors(q - 1);
    let mut one = vec![0u64; e];
    one[0] = 1;
    for n in 0..q {
        let mut f = Vec::with_capacity(e + 1);
        let mut r = n;
        for _ in 0..e {
            f.push(r % p);
            r /= p;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if x_pow_mod(q - 1, &f, p) != one {
            continue;
        }
        if factors.iter().all(|r| x_pow_mod((q - 1) / r, &f, p) != one) {
            return f;
        }
    }
    unreachable!("F_{{p^e}} always has a primitive polynomial")
}

/// `F_q` for a validated regime, with `xi = alpha^N` of order `2 ell^k`.
#[derive(Debug, Clone)]
pub struct FieldTable {
    pub params: FieldParams,
    pub gf: Gf,
    pub xi: FieldElement,
}

impl Deref for FieldTable {
    type Target = Gf;
    fn deref(&self) -> &Gf {
        &self.gf
    }
}

pub fn build_field(params: FieldParams) -> Result<FieldTable, FieldError> {
    build_field_with_ceiling(params, DEFAULT_FIELD_CEILING)
}

pub fn build_field_with_ceiling(
    params: FieldParams,
    ceiling: u64,
) -> Result<FieldTable, FieldError> {
    let gf = Gf::with_ceiling(params.p, params.e, ceiling)?;
    let xi = FieldElement::from_log(params.exp_n % (params.q - 1));
    Ok(FieldTable { params, gf, xi })
}

impl FieldTable {
    /// `i_b = -log(b) mod 2 ell^k`.
    pub fn residue_class(&self, b: FieldElement) -> Result<u64, FieldError> {
        let l = b.log().ok_or(FieldError::ZeroElement)?;
        let m = self.params.two_ell_k();
        Ok((m - l % m) % m)
    }

    pub fn xi_pow(&self, i: u64) -> FieldElement {
        self.pow(self.xi, i)
    }
}
