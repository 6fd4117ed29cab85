//! Exact rational values of the regime's symbols, for evaluating closed forms
//! without overflow at any size.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{quad_char, Regime};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn as_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn as_u64(x: &Q) -> Option<u64> {
    as_integer(x).and_then(|v| v.to_u64())
}

pub fn as_i128(x: &Q) -> Option<i128> {
    as_integer(x).and_then(|v| v.to_i128())
}

#[derive(Debug, Clone)]
pub struct Symbols {
    pub regime: Regime,
    pub p: Q,
    pub ell: Q,
    pub e: Q,
    /// `ell^k`
    pub lk: Q,
    /// `ell^(k-1)`
    pub lk1: Q,
    pub q: Q,
    /// `p^(e/2)`
    pub sq: Q,
    /// `(p*)^(e/2)`
    pub s: Q,
    pub ell_one: bool,
    pub p_one_mod4: bool,
    /// `eta(phi(ell^k))`
    pub eta_t1: i64,
    /// `eta(ell^(k-1))`
    pub eta_t2: i64,
}

impl Symbols {
    pub fn new(r: &Regime) -> Self {
        let pb = BigInt::from(r.p);
        let half = (r.e / 2) as usize;
        let sq = num_traits::pow(pb.clone(), half);
        let q = &sq * &sq;
        let neg = r.p % 4 == 3 && half % 2 == 1;
        let s = if neg { -sq.clone() } else { sq.clone() };
        let lk = BigInt::from(r.ell_k);
        let lk1 = BigInt::from(r.ell_k1());
        let p = r.p;
        let t1 = (r.e % p) as i64;
        let t2 = (r.ell_k1() % p) as i64;
        Symbols {
            regime: *r,
            p: Q::from_integer(pb),
            ell: qi(r.ell as i64),
            e: qi(r.e as i64),
            lk: Q::from_integer(lk),
            lk1: Q::from_integer(lk1),
            q: Q::from_integer(q),
            sq: Q::from_integer(sq),
            s: Q::from_integer(s),
            ell_one: r.ell % p == 1,
            p_one_mod4: p % 4 == 1,
            eta_t1: quad_char(p, t1) as i64,
            eta_t2: quad_char(p, t2) as i64,
        }
    }

    /// `T = eta(t1) + (ell - 1) eta(t2)`
    pub fn t_sum(&self) -> Q {
        qi(self.eta_t1) + (&self.ell - Q::one()) * qi(self.eta_t2)
    }

    /// `p^j` for a possibly negative `j`.
    pub fn p_pow(&self, j: i64) -> Q {
        let base = if j >= 0 {
            self.p.clone()
        } else {
            self.p.recip()
        };
        num_traits::pow(base, j.unsigned_abs() as usize)
    }

    /// `(q-1)/(2 ell^k)`
    pub fn exp_n(&self) -> Q {
        (&self.q - Q::one()) / (qi(2) * &self.lk)
    }
}

/// Renders an exact value compactly for error messages.
pub fn describe(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else if x.is_zero() {
        "0".into()
    } else {
        format!(
            "{}{}/{}",
            if x.is_negative() { "-" } else { "" },
            x.numer().abs(),
            x.denom()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_symbols() {
        let s = Symbols::new(&Regime::new(3, 7, 1).unwrap());
        assert_eq!(s.q, qi(729));
        assert_eq!(s.sq, qi(27));
        // (p*)^3 = (-3)^3
        assert_eq!(s.s, qi(-27));
        assert!(s.ell_one);
        let s = Symbols::new(&Regime::new(3, 5, 1).unwrap());
        assert_eq!(s.s, qi(9));
        assert_eq!(s.exp_n(), qi(8));
        assert_eq!(s.p_pow(-2), Q::new(1.into(), 9.into()));
        assert_eq!(describe(&Q::new((-3).into(), 6.into())), "-1/2");
    }
}
