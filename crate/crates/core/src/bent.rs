//! Walsh-transform analysis of p-ary functions `F_q -> F_p`: weak regularity,
//! the sign `epsilon`, the dual `f*` and its homogeneity.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{p_star, CycInt};
use crate::field::{FieldElement, FieldTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BentError {
    #[error("|W_f({lambda:?})|^2 is not p^e")]
    NotBent { lambda: FieldElement },
    #[error("W_f({lambda:?}) is not epsilon (p*)^(e/2) zeta^j for a single sign")]
    NotWeaklyRegular { lambda: FieldElement },
    #[error("the dual fails f*(cx) = c^2 f*(x)")]
    DualNotQuadratic,
    #[error("no admissible even k_f with f(cx) = c^k_f f(x)")]
    NotHomogeneous,
    #[error("dual level counts {observed:?} differ from {expected:?}")]
    CountMismatch {
        observed: Vec<u64>,
        expected: Vec<u64>,
    },
    #[error("{0}")]
    UnsupportedFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", content = "i")]
pub enum BentFamily {
    /// `Tr(x^2)`
    TraceSquare,
    /// `Tr(alpha x^(p^i + 1))`
    TraceAlphaKasami(u32),
    /// `Tr(x^(p^i + 1))`
    TraceKasami(u32),
    /// `Tr(x^((3^i + 1)/2))`, ternary only
    TraceCoulter(u32),
}

impl BentFamily {
    /// Parses a family name as accepted on the command line.
    pub fn from_name(name: &str, i: Option<u32>) -> Result<Self, BentError> {
        let need_i = || {
            i.ok_or_else(|| {
                BentError::UnsupportedFamily(format!("family {name} needs an exponent i"))
            })
        };
        match name.to_ascii_lowercase().as_str() {
            "square" | "tracesquare" => Ok(BentFamily::TraceSquare),
            "alphakasami" | "alpha-kasami" | "tracealphakasami" => {
                Ok(BentFamily::TraceAlphaKasami(need_i()?))
            }
            "kasami" | "tracekasami" => Ok(BentFamily::TraceKasami(need_i()?)),
            "coulter" | "tracecoulter" => Ok(BentFamily::TraceCoulter(need_i()?)),
            _ => Err(BentError::UnsupportedFamily(format!(
                "unknown family {name}"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BentFamily::TraceSquare => "square",
            BentFamily::TraceAlphaKasami(_) => "alphakasami",
            BentFamily::TraceKasami(_) => "kasami",
            BentFamily::TraceCoulter(_) => "coulter",
        }
    }

    pub fn exponent_param(&self) -> Option<u32> {
        match *self {
            BentFamily::TraceSquare => None,
            BentFamily::TraceAlphaKasami(i)
            | BentFamily::TraceKasami(i)
            | BentFamily::TraceCoulter(i) => Some(i),
        }
    }
}

impl fmt::Display for BentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent_param() {
            None => write!(f, "{}", self.name()),
            Some(i) => write!(f, "{}({i})", self.name()),
        }
    }
}

impl FromStr for BentFamily {
    type Err = BentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('(') {
            Some((name, rest)) => {
                let i = rest
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| BentError::UnsupportedFamily(format!("bad exponent in {s}")))?;
                BentFamily::from_name(name, Some(i))
            }
            None => BentFamily::from_name(s, None),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BentCandidate {
    pub family: BentFamily,
    pub field: Arc<FieldTable>,
    values: Vec<u32>,
}

impl BentCandidate {
    pub fn new(family: BentFamily, field: Arc<FieldTable>) -> Result<Self, BentError> {
        let p = field.p;
        let m = field.q - 1;
        let pow_p = |i: u32| -> u64 {
            (0..i).fold(1u64, |acc, _| {
                ((acc as u128 * p as u128) % m as u128) as u64
            })
        };
        let (coef, exponent) = match family {
            BentFamily::TraceSquare => (FieldElement::ONE, 2 % m),
            BentFamily::TraceAlphaKasami(i) => (field.alpha(), (pow_p(i) + 1) % m),
            BentFamily::TraceKasami(i) => (FieldElement::ONE, (pow_p(i) + 1) % m),
            BentFamily::TraceCoulter(i) => {
                if p != 3 {
                    return Err(BentError::UnsupportedFamily(
                        "the Coulter family needs p = 3".into(),
                    ));
                }
                // (3^i + 1)/2 mod (q - 1), exact since q - 1 is even
                let e2 = 2 * m;
                let t = (0..i).fold(1u64, |acc, _| ((acc as u128 * 3) % e2 as u128) as u64);
                (FieldElement::ONE, ((t + 1) / 2) % m)
            }
        };
        let values = field
            .elements()
            .map(|x| {
                if x.is_zero() {
                    0
                } else {
                    field.trace_mul(coef, field.pow(x, exponent))
                }
            })
            .collect();
        Ok(BentCandidate {
            family,
            field,
            values,
        })
    }

    pub fn eval(&self, x: FieldElement) -> u32 {
        self.values[x.index()]
    }

    /// `f` tabulated in the canonical element order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// `W_f(lambda) = sum_x zeta^{f(x) - Tr(lambda x)}`, summed literally.
pub fn walsh_transform(cand: &BentCandidate, lambda: FieldElement) -> CycInt {
    let tbl = &cand.field;
    let p = tbl.p as u32;
    let mut counts = vec![0i64; p as usize];
    for (idx, &fx) in cand.values.iter().enumerate() {
        let t = tbl.trace_mul(lambda, FieldElement::from_index(idx));
        counts[((fx + p - t) % p) as usize] += 1;
    }
    CycInt::from_exponent_counts(tbl.p, &counts).expect("counts bounded by q")
}

#[derive(Debug, Clone)]
pub struct BentProfile {
    pub candidate: BentCandidate,
    pub epsilon: i8,
    /// `f*` in the canonical element order.
    pub dual: Vec<u32>,
    pub l_f: u32,
    pub k_f: u32,
}

impl BentProfile {
    pub fn field(&self) -> &Arc<FieldTable> {
        &self.candidate.field
    }

    pub fn dual_of(&self, x: FieldElement) -> u32 {
        self.dual[x.index()]
    }

    pub fn family(&self) -> BentFamily {
        self.candidate.family
    }
}

/// `(p*)^(e/2)`
pub fn sqrt_pstar_e(p: u64, e: u64) -> i64 {
    p_star(p).pow((e / 2) as u32)
}

pub fn extract_profile(cand: BentCandidate) -> Result<BentProfile, BentError> {
    let tbl = cand.field.clone();
    let (p, e, q) = (tbl.p, tbl.e, tbl.q);
    let s = sqrt_pstar_e(p, e);
    let p_e = p.pow(e as u32) as i64;

    let walsh: Vec<CycInt> = (0..q as usize)
        .into_par_iter()
        .map(|idx| walsh_transform(&cand, FieldElement::from_index(idx)))
        .collect();

    for (idx, w) in walsh.iter().enumerate() {
        let norm = w.try_mul(&w.conj()).ok().and_then(|n| n.as_integer());
        if norm != Some(p_e) {
            return Err(BentError::NotBent {
                lambda: FieldElement::from_index(idx),
            });
        }
    }

    let epsilon = match walsh[0].as_integer() {
        Some(v) if v == s => 1i8,
        Some(v) if v == -s => -1i8,
        _ => {
            return Err(BentError::NotWeaklyRegular {
                lambda: FieldElement::ZERO,
            })
        }
    };
    let unit = epsilon as i64 * s;
    let mut dual = Vec::with_capacity(q as usize);
    for (idx, w) in walsh.iter().enumerate() {
        match w.div_exact(unit).and_then(|r| r.as_signed_root()) {
            Some((1, j)) => dual.push(j as u32),
            _ => {
                return Err(BentError::NotWeaklyRegular {
                    lambda: FieldElement::from_index(idx),
                })
            }
        }
    }

    if !homogeneous(&tbl, &dual, 2) {
        return Err(BentError::DualNotQuadratic);
    }
    let k_f = (1..p as u32)
        .map(|j| 2 * j)
        .filter(|&k| gcd((k - 1) as u64, p - 1) == 1)
        .find(|&k| homogeneous(&tbl, &cand.values, k))
        .ok_or(BentError::NotHomogeneous)?;

    Ok(BentProfile {
        candidate: cand,
        epsilon,
        dual,
        l_f: 2,
        k_f,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `g(cx) = c^deg g(x)` for all `c in F_p^*`.
fn homogeneous(tbl: &FieldTable, g: &[u32], deg: u32) -> bool {
    let p = tbl.p;
    (1..p).all(|c| {
        let cf = tbl.from_int(c as i64);
        let cd = crate::field::pow_mod(c, deg as u64, p);
        tbl.elements().all(|x| {
            let lhs = g[tbl.mul(cf, x).index()] as u64;
            lhs == cd * g[x.index()] as u64 % p
        })
    })
}

/// Expected sizes of the level sets of `f*` for even `e`.
pub fn dual_level_counts_closed(p: u64, e: u64, epsilon: i8) -> Vec<u64> {
    let base = p.pow((e - 1) as u32) as i64;
    let s = sqrt_pstar_e(p, e) / p as i64;
    let eps = epsilon as i64;
    (0..p)
        .map(|lam| {
            let v = if lam == 0 {
                base + eps * (p as i64 - 1) * s
            } else {
                base - eps * s
            };
            v as u64
        })
        .collect()
}

/// Sizes of the level sets `{x : f*(x) = lambda}`, checked against the closed form.
pub fn dual_level_counts(profile: &BentProfile) -> Result<Vec<u64>, BentError> {
    let tbl = profile.field();
    let mut observed = vec![0u64; tbl.p as usize];
    for &d in &profile.dual {
        observed[d as usize] += 1;
    }
    let expected = dual_level_counts_closed(tbl.p, tbl.e, profile.epsilon);
    if observed != expected {
        return Err(BentError::CountMismatch { observed, expected });
    }
    Ok(observed)
}
