//! Exact arithmetic in `Z[zeta_p]` using the basis `zeta^0 .. zeta^(p-2)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{quad_char, Gf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("operands live in Z[zeta_{0}] and Z[zeta_{1}]")]
    MixedPrime(u64, u64),
    #[error("integer overflow in Z[zeta_p] arithmetic")]
    Overflow,
    #[error("sigma_{z} is not an automorphism for p = {p}")]
    BadAutomorphism { z: i64, p: u64 },
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycInt {
    pub p: u64,
    pub coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u64) -> Self {
        CycInt {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = n;
        c
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, 1)
    }

    /// `zeta^j`
    pub fn root(p: u64, j: i64) -> Self {
        let j = j.rem_euclid(p as i64) as usize;
        let mut c = Self::zero(p);
        if j == (p - 1) as usize {
            c.coeffs.iter_mut().for_each(|x| *x = -1);
        } else {
            c.coeffs[j] = 1;
        }
        c
    }

    /// `sum_i counts[i] zeta^i` for `counts` of length `p`.
    pub fn from_exponent_counts(p: u64, counts: &[i64]) -> Result<Self, CycError> {
        assert_eq!(counts.len() as u64, p);
        let last = counts[(p - 1) as usize];
        let coeffs = counts[..(p - 1) as usize]
            .iter()
            .map(|&c| c.checked_sub(last).ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p, coeffs })
    }

    /// Coefficients over `zeta^0 .. zeta^(p-1)` with the last one zero.
    pub fn expanded(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(0);
        v
    }

    fn same_ring(&self, other: &Self) -> Result<(), CycError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycError::MixedPrime(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.try_add(&other.try_scale(-1)?)
    }

    pub fn try_scale(&self, s: i64) -> Result<Self, CycError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(s).ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_ring(other)?;
        let p = self.p as usize;
        let mut acc = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let t = a.checked_mul(b).ok_or(CycError::Overflow)?;
                let slot = &mut acc[(i + j) % p];
                *slot = slot.checked_add(t).ok_or(CycError::Overflow)?;
            }
        }
        Self::from_exponent_counts(self.p, &acc)
    }

    /// `self * zeta^j`
    pub fn mul_root(&self, j: i64) -> Result<Self, CycError> {
        let p = self.p as usize;
        let j = j.rem_euclid(p as i64) as usize;
        let mut acc = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            acc[(i + j) % p] = a;
        }
        Self::from_exponent_counts(self.p, &acc)
    }

    /// `sigma_z : zeta -> zeta^z`
    pub fn apply_automorphism(&self, z: i64) -> Result<Self, CycError> {
        let p = self.p as i64;
        let z = z.rem_euclid(p);
        if z == 0 {
            return Err(CycError::BadAutomorphism { z, p: self.p });
        }
        let mut acc = vec![0i64; p as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            acc[(i as i64 * z % p) as usize] = a;
        }
        Self::from_exponent_counts(self.p, &acc)
    }

    /// Complex conjugation, `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.apply_automorphism(-1)
            .expect("sigma_-1 is always defined")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.coeffs[0])
    }

    /// `self / d` when every coordinate is divisible by `d`.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        })
    }

    /// Recognises `sign * zeta^j`, returning `(sign, j)`.
    pub fn as_signed_root(&self) -> Option<(i8, u64)> {
        for j in 0..self.p as i64 {
            let r = CycInt::root(self.p, j);
            if &r == self {
                return Some((1, j as u64));
            }
            if r.try_scale(-1).ok().as_ref() == Some(self) {
                return Some((-1, j as u64));
            }
        }
        None
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let sep = if first { "" } else { " " };
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "z".to_string(),
                (1, m) => format!("{m}z"),
                (i, 1) => format!("z^{i}"),
                (i, m) => format!("{m}z^{i}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sep}{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `p* = (-1)^((p-1)/2) p`
pub fn p_star(p: u64) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// Quadratic Gauss sum of `F_p`, `sum_c eta(c) zeta^c`.
pub fn quadratic_gauss_sum(p: u64) -> CycInt {
    let counts: Vec<i64> = (0..p).map(|c| quad_char(p, c as i64) as i64).collect();
    CycInt::from_exponent_counts(p, &counts).expect("small coefficients")
}

/// Closed-form quadratic Gauss sum of `F_{p^m}`.
pub fn gauss_sum_closed(p: u64, m: u64) -> Result<CycInt, CycError> {
    let sign: i64 = if m % 2 == 1 { 1 } else { -1 };
    let ps = p_star(p);
    let pw = ps.checked_pow((m / 2) as u32).ok_or(CycError::Overflow)?;
    let scalar = sign.checked_mul(pw).ok_or(CycError::Overflow)?;
    if m % 2 == 0 {
        Ok(CycInt::from_int(p, scalar))
    } else {
        quadratic_gauss_sum(p).try_scale(scalar)
    }
}

/// Gauss sum of `F_{p^m}` by summing over every nonzero element.
pub fn gauss_sum_bruteforce(gf: &Gf) -> CycInt {
    let mut counts = vec![0i64; gf.p as usize];
    for c in gf.nonzero() {
        counts[gf.trace(c) as usize] += gf.eta(c) as i64;
    }
    CycInt::from_exponent_counts(gf.p, &counts).expect("bounded by q")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(p: u64, c: &[i64]) -> CycInt {
        CycInt {
            p,
            coeffs: c.to_vec(),
        }
    }

    #[test]
    fn roots() {
        assert_eq!(CycInt::root(5, 0), cyc(5, &[1, 0, 0, 0]));
        assert_eq!(CycInt::root(5, 4), cyc(5, &[-1, -1, -1, -1]));
        assert_eq!(CycInt::root(5, 7), CycInt::root(5, 2));
        assert_eq!(CycInt::root(5, -1), CycInt::root(5, 4));
    }

    #[test]
    fn arithmetic() {
        let mut s = CycInt::zero(5);
        for j in 0..5 {
            s = s.try_add(&CycInt::root(5, j)).unwrap();
        }
        assert!(s.is_zero());
        let prod = CycInt::root(5, 1).try_mul(&CycInt::root(5, 4)).unwrap();
        assert_eq!(prod, CycInt::one(5));
        let d = CycInt::root(3, 1).try_sub(&CycInt::root(3, 2)).unwrap();
        assert_eq!(d.try_mul(&d).unwrap().as_integer(), Some(-3));
        assert_eq!(
            CycInt::one(3).try_add(&CycInt::one(5)),
            Err(CycError::MixedPrime(3, 5))
        );
        assert_eq!(
            CycInt::from_int(3, i64::MAX).try_scale(2),
            Err(CycError::Overflow)
        );
    }

    #[test]
    fn automorphisms() {
        let a = cyc(5, &[3, -1, 4, 2]);
        assert_eq!(a.apply_automorphism(1).unwrap(), a);
        assert_eq!(
            CycInt::root(5, 1).apply_automorphism(2).unwrap(),
            CycInt::root(5, 2)
        );
        for z in 1..5 {
            assert_eq!(
                CycInt::from_int(5, -7).apply_automorphism(z).unwrap(),
                CycInt::from_int(5, -7)
            );
        }
        assert_eq!(
            a.apply_automorphism(5),
            Err(CycError::BadAutomorphism { z: 0, p: 5 })
        );
    }

    #[test]
    fn signed_roots() {
        for p in [3u64, 5, 7] {
            for j in 0..p as i64 {
                let r = CycInt::root(p, j);
                assert_eq!(r.as_signed_root(), Some((1, j as u64)));
                assert_eq!(
                    r.try_scale(-1).unwrap().as_signed_root(),
                    Some((-1, j as u64))
                );
            }
            assert_eq!(CycInt::from_int(p, 2).as_signed_root(), None);
        }
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_sum_closed(5, 2).unwrap().as_integer(), Some(-5));
        assert_eq!(
            gauss_sum_closed(3, 1).unwrap(),
            cyc(3, &[0, 1]).try_sub(&CycInt::root(3, 2)).unwrap()
        );
        assert_eq!(gauss_sum_closed(3, 4).unwrap().as_integer(), Some(-9));
    }

    #[test]
    fn gauss_closed_matches_bruteforce() {
        for p in [3u64, 5, 7, 11, 13] {
            let mut m = 1;
            while p.pow(m as u32) <= 300_000 {
                let gf = Gf::new(p, m).unwrap();
                assert_eq!(
                    gauss_sum_bruteforce(&gf),
                    gauss_sum_closed(p, m).unwrap(),
                    "p={p} m={m}"
                );
                m += 1;
            }
        }
    }

    #[test]
    fn gauss_square_is_p_star() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let g = gauss_sum_closed(p, 1).unwrap();
            assert_eq!(g.try_mul(&g).unwrap().as_integer(), Some(p_star(p)));
            for z in 1..p as i64 {
                let g2 = gauss_sum_closed(p, 2).unwrap();
                assert_eq!(g2.apply_automorphism(z).unwrap(), g2);
            }
        }
    }

    fn arb_cyc(p: u64) -> impl Strategy<Value = CycInt> {
        proptest::collection::vec(-50i64..50, (p - 1) as usize)
            .prop_map(move |coeffs| CycInt { p, coeffs })
    }

    proptest! {
        #[test]
        fn automorphism_is_ring_hom(a in arb_cyc(7), b in arb_cyc(7), z in 1i64..7) {
            let lhs = a.try_mul(&b).unwrap().apply_automorphism(z).unwrap();
            let rhs = a.apply_automorphism(z).unwrap()
                .try_mul(&b.apply_automorphism(z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = a.try_add(&b).unwrap().apply_automorphism(z).unwrap();
            let rhs = a.apply_automorphism(z).unwrap()
                .try_add(&b.apply_automorphism(z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_root_matches_mul(a in arb_cyc(5), j in -10i64..10) {
            prop_assert_eq!(a.mul_root(j).unwrap(), a.try_mul(&CycInt::root(5, j)).unwrap());
        }

        #[test]
        fn ring_axioms(a in arb_cyc(5), b in arb_cyc(5), c in arb_cyc(5)) {
            let l = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
            let r = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        }
    }
}
