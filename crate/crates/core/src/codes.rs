//! The codes `C_D = {(Tr(gamma x + delta y))_{(x,y) in D}}` for the defining sets
//! `D_u = {Tr(x + y^N) = u}` and `D' = {f(x) + Tr(y^N) = 0}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bent::{dual_level_counts_closed, BentProfile};
use crate::charsum::{
    build_partition, classify_u, closed_form_class, CharSumError, ClassLabel, CongruenceCase,
    PartitionTables,
};
use crate::field::{quad_char, FieldElement, FieldParams, FieldTable};
use crate::symbols::{as_u64, describe, qi, Symbols, Q};

/// Default ceiling on `q^2` for materialising a defining set.
pub const DEFAULT_PAIR_CEILING: u64 = 100_000_000;
/// Default ceiling on `q^2 * n` for the direct distribution.
pub const DEFAULT_DIRECT_BUDGET: u128 = 10_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("defining set has {enumerated} pairs but the closed form gives {closed}")]
    SizeMismatch { enumerated: u64, closed: u64 },
    #[error("{what} needs {needed} operations, above the ceiling {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        needed: u128,
        ceiling: u128,
    },
    #[error("direct and closed distributions differ at weight {weight}: {direct} vs {closed}")]
    MethodDisagreement {
        weight: u64,
        direct: u64,
        closed: u64,
    },
    #[error(
        "codeword ({gamma:?}, {delta:?}) has direct weight {direct} but closed weight {closed}"
    )]
    VerificationFailed {
        gamma: FieldElement,
        delta: FieldElement,
        direct: u64,
        closed: u64,
    },
    #[error("{0}")]
    InvalidSpec(String),
    #[error("closed form is not an integer: {0}")]
    NonIntegral(String),
    #[error("distribution is inconsistent: {0}")]
    BadDistribution(String),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
}

#[derive(Debug, Clone)]
pub enum CodeKind {
    Du(u64),
    Dprime(Arc<BentProfile>),
}

#[derive(Debug, Clone)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub field: Arc<FieldTable>,
    pub part: Arc<PartitionTables>,
}

impl CodeSpec {
    pub fn du(field: Arc<FieldTable>, u: u64) -> Result<Self, CodeError> {
        if u >= field.p {
            return Err(CodeError::InvalidSpec(format!(
                "u = {u} is not a residue mod {}",
                field.p
            )));
        }
        let part = Arc::new(build_partition(&field)?);
        Ok(CodeSpec {
            kind: CodeKind::Du(u),
            field,
            part,
        })
    }

    pub fn dprime(profile: Arc<BentProfile>) -> Result<Self, CodeError> {
        if profile.l_f != 2 {
            return Err(CodeError::InvalidSpec(
                "D' needs a dual with l_f = 2".into(),
            ));
        }
        let field = profile.field().clone();
        let part = Arc::new(build_partition(&field)?);
        Ok(CodeSpec {
            kind: CodeKind::Dprime(profile),
            field,
            part,
        })
    }

    pub fn params(&self) -> FieldParams {
        self.field.params
    }

    pub fn symbols(&self) -> Symbols {
        Symbols::new(&self.params().regime())
    }

    pub fn epsilon(&self) -> Option<i8> {
        match &self.kind {
            CodeKind::Du(_) => None,
            CodeKind::Dprime(prof) => Some(prof.epsilon),
        }
    }

    pub fn describe(&self) -> Value {
        match &self.kind {
            CodeKind::Du(u) => json!({"kind": "du", "u": u}),
            CodeKind::Dprime(prof) => json!({
                "kind": "dprime",
                "family": prof.family().name(),
                "i": prof.family().exponent_param(),
                "epsilon": prof.epsilon,
                "l_f": prof.l_f,
                "k_f": prof.k_f,
            }),
        }
    }

    /// Left summand of the membership test, tabulated by element index.
    fn left_values(&self) -> Vec<u32> {
        match &self.kind {
            CodeKind::Du(_) => self
                .field
                .elements()
                .map(|x| self.field.trace(x) as u32)
                .collect(),
            CodeKind::Dprime(prof) => prof.candidate.values().to_vec(),
        }
    }

    /// `Tr(y^N)` by element index.
    fn right_values(&self) -> Vec<u32> {
        let n = self.params().exp_n;
        self.field
            .elements()
            .map(|y| self.field.trace(self.field.pow(y, n)) as u32)
            .collect()
    }

    fn target(&self) -> u32 {
        match self.kind {
            CodeKind::Du(u) => u as u32,
            CodeKind::Dprime(_) => 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DefiningSet {
    pub spec: CodeSpec,
    pub xs: Vec<FieldElement>,
    pub ys: Vec<FieldElement>,
}

impl DefiningSet {
    pub fn n(&self) -> u64 {
        self.xs.len() as u64
    }

    pub fn pairs(&self) -> impl Iterator<Item = (FieldElement, FieldElement)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

pub fn build_defining_set(spec: &CodeSpec) -> Result<DefiningSet, CodeError> {
    build_defining_set_with_ceiling(spec, DEFAULT_PAIR_CEILING)
}

pub fn build_defining_set_with_ceiling(
    spec: &CodeSpec,
    ceiling: u64,
) -> Result<DefiningSet, CodeError> {
    let q = spec.field.q;
    let pairs = q as u128 * q as u128;
    if pairs > ceiling as u128 {
        return Err(CodeError::CeilingExceeded {
            what: "defining set enumeration",
            needed: pairs,
            ceiling: ceiling as u128,
        });
    }
    let p = spec.field.p as u32;
    let left = spec.left_values();
    let right = spec.right_values();
    let target = spec.target();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (xi, &l) in left.iter().enumerate() {
        for (yi, &r) in right.iter().enumerate() {
            if (xi, yi) != (0, 0) && (l + r) % p == target {
                xs.push(FieldElement::from_index(xi));
                ys.push(FieldElement::from_index(yi));
            }
        }
    }
    let closed = defining_set_size_closed(spec)?;
    if xs.len() as u64 != closed {
        return Err(CodeError::SizeMismatch {
            enumerated: xs.len() as u64,
            closed,
        });
    }
    Ok(DefiningSet {
        spec: spec.clone(),
        xs,
        ys,
    })
}

/// `|D_u|` or `|D'|` counted from the level sets of both summands, without
/// materialising the pairs.
pub fn defining_set_size_counted(spec: &CodeSpec) -> u64 {
    let p = spec.field.p as usize;
    let mut left = vec![0u64; p];
    let mut right = vec![0u64; p];
    for v in spec.left_values() {
        left[v as usize] += 1;
    }
    for v in spec.right_values() {
        right[v as usize] += 1;
    }
    let t = spec.target() as usize;
    let total: u64 = (0..p).map(|a| left[a] * right[(t + p - a) % p]).sum();
    // (0, 0) lies in the set exactly when the target is 0
    if t == 0 {
        total - 1
    } else {
        total
    }
}

/// `|D_u|` or `|D'|` in closed form.
pub fn defining_set_size_closed(spec: &CodeSpec) -> Result<u64, CodeError> {
    let sym = spec.symbols();
    let v = match spec.kind {
        CodeKind::Du(u) => size_du(&sym, u),
        CodeKind::Dprime(ref prof) => size_dprime(&sym, prof.epsilon),
    };
    as_u64(&v).ok_or_else(|| CodeError::NonIntegral(describe(&v)))
}

pub(crate) fn size_du(sym: &Symbols, u: u64) -> Q {
    let v = sym.p_pow(2 * sym.regime.e as i64 - 1);
    if u % sym.regime.p == 0 {
        v - qi(1)
    } else {
        v
    }
}

pub(crate) fn size_dprime(sym: &Symbols, epsilon: i8) -> Q {
    let (p, q) = (&sym.p, &sym.q);
    let one = qi(1);
    let tail = if sym.ell_one {
        p * (&sym.ell - &one) * (q - &one) / &sym.lk
    } else {
        p * (q - &one) / &sym.lk1
    };
    q * q / p - &one + qi(epsilon as i64) * &sym.s / p * (q * (p - &one) - tail)
}

/// How `gamma` enters the `D_u` case tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GammaKind {
    Zero,
    PrimeNonzero,
    Other,
}

impl GammaKind {
    pub fn of(tbl: &FieldTable, gamma: FieldElement) -> Self {
        if gamma.is_zero() {
            GammaKind::Zero
        } else if tbl.is_prime_field(gamma) {
            GammaKind::PrimeNonzero
        } else {
            GammaKind::Other
        }
    }
}

/// `N1 = |{(x, y) in D_u : Tr(gamma x + delta y) = 0}|` from the case tree.
/// `delta` is `None` for `delta = 0`, else the label of its closed-form class.
pub fn n1_closed_by_class(
    params: &FieldParams,
    u: u64,
    gamma: GammaKind,
    delta: Option<ClassLabel>,
) -> i128 {
    use ClassLabel::*;
    use CongruenceCase::*;
    let p = params.p as i128;
    let q = params.q as i128;
    let ell = params.ell as i128;
    let lk = params.ell_k() as i128;
    let lk1 = params.ell_k1() as i128;
    let sq = params.sqrt_q() as i128;
    let e = params.e as u32;
    let pe1 = p.pow(e - 1);
    let p2e2 = p.pow(2 * e - 2);
    let p2e1 = p.pow(2 * e - 1);
    let gp = gamma == GammaKind::PrimeNonzero;

    match classify_u(params, u) {
        ZeroU => {
            let (mult, den, special) = if params.ell % params.p == 1 {
                (
                    ell - 1,
                    lk,
                    delta.is_some_and(|l| l.is_plus() || l.is_minus()),
                )
            } else {
                (
                    1,
                    lk1,
                    delta.is_some_and(|l| l.is_plus() || l.is_minus() || l == Zero || l == EllK),
                )
            };
            match (gp, delta) {
                (true, None) => p2e1 - 1 - pe1 * mult * ((q - 1) / den),
                (true, Some(_)) => {
                    let v = p2e2 - 1 + pe1 * mult * ((sq + 1) / den);
                    if special {
                        v - pe1 * sq
                    } else {
                        v
                    }
                }
                (false, _) => p2e2 - 1,
            }
        }
        Generic => {
            if gp && delta.is_none() {
                0
            } else {
                p2e2
            }
        }
        case => {
            let l = delta;
            let (mult, den, special) = match case {
                PhiOnlyPlus => (1, 2 * lk, l == Some(Zero)),
                PhiOnlyMinus => (1, 2 * lk, l == Some(EllK)),
                BothPlus => (1, 2 * lk1, l.is_some_and(|l| l == Zero || l.is_plus())),
                BothMinus => (1, 2 * lk1, l.is_some_and(|l| l == EllK || l.is_minus())),
                EllOnlyPlus => (ell - 1, 2 * lk, l.is_some_and(|l| l.is_plus())),
                EllOnlyMinus => (ell - 1, 2 * lk, l.is_some_and(|l| l.is_minus())),
                ZeroU | Generic => unreachable!(),
            };
            match (gp, delta) {
                (true, None) => pe1 * mult * ((q - 1) / den),
                (true, Some(_)) => {
                    let v = p2e2 - pe1 * mult * ((sq + 1) / den);
                    if special {
                        v + pe1 * sq
                    } else {
                        v
                    }
                }
                (false, _) => p2e2,
            }
        }
    }
}

/// `N2 = |{(x, y) in D' : Tr(gamma x + delta y) = 0}|` from the case tree.
/// `fstar` is `0` when `f*(gamma) = 0`, else `eta(f*(gamma))`.
pub fn n2_closed_by_class(sym: &Symbols, epsilon: i8, fstar: i8, delta: Option<ClassLabel>) -> Q {
    use ClassLabel::*;
    let one = qi(1);
    let (p, q, sq, ell) = (&sym.p, &sym.q, &sym.sq, &sym.ell);
    let (lk, lk1) = (&sym.lk, &sym.lk1);
    let p2 = p * p;
    let eta = qi(fstar as i64);
    let t = sym.t_sum();
    let eta1 = qi(sym.eta_t1);
    let eta2 = qi(sym.eta_t2);
    let pm = |l: ClassLabel| l.is_plus() || l.is_minus();

    let bracket = match (fstar, delta) {
        (0, None) => {
            if sym.ell_one {
                q * (p - &one) / p - (q - &one) * (ell - &one) / lk
            } else {
                q * (p - &one) / p - (q - &one) / lk1
            }
        }
        (0, Some(l)) => {
            if sym.ell_one {
                let tail = (ell - &one) * (sq + &one) * (sq - p) / (p * lk);
                if pm(l) {
                    sq * (sq - p) * (p - &one) / &p2 - tail
                } else {
                    q * (p - &one) / &p2 - tail
                }
            } else {
                let tail = (sq + &one) * (sq - p) / (p * lk1);
                if pm(l) || l == Zero || l == EllK {
                    sq * (p - &one) * (sq - p) / &p2 - tail
                } else {
                    q * (p - &one) / &p2 - tail
                }
            }
        }
        (_, None) => {
            if !sym.p_one_mod4 {
                qi(0)
            } else if sym.ell_one {
                &eta * (ell - &one) * (q - &one) / (p * lk)
            } else {
                &eta * &t * (q - &one) / (p * lk)
            }
        }
        (_, Some(l)) => {
            let base = q * (p - &one) / &p2;
            let bump = |c: Q| sq / p * c;
            match (sym.ell_one, sym.p_one_mod4) {
                (true, true) => {
                    let tail = (ell - &one) * (sq + &one) / (p * lk) * (sq + &eta);
                    let b = if pm(l) { bump(&one + &eta) } else { qi(0) };
                    base + b - tail
                }
                (false, true) => {
                    let tail = (sq + &one) / (p * lk) * (ell * sq + &eta * &t);
                    let b = if l == Zero || l == EllK {
                        bump(&one + &eta * &eta1)
                    } else if pm(l) {
                        bump(&one + &eta * &eta2)
                    } else {
                        qi(0)
                    };
                    base + b - tail
                }
                (true, false) => {
                    let tail = (ell - &one) * (q + sq) / (p * lk);
                    let b = if l.is_minus() {
                        bump(&one + &eta)
                    } else if l.is_plus() {
                        bump(&one - &eta)
                    } else {
                        qi(0)
                    };
                    base + b - tail
                }
                (false, false) => {
                    let tail = (q + sq) / (p * lk1);
                    let b = match l {
                        Zero => bump(&one - &eta * &eta1),
                        EllK => bump(&one + &eta * &eta1),
                        l if l.is_minus() => bump(&one + &eta * &eta2),
                        l if l.is_plus() => bump(&one - &eta * &eta2),
                        _ => qi(0),
                    };
                    base + b - tail
                }
            }
        }
    };
    q * q / &p2 + qi(epsilon as i64) * &sym.s * bracket - one
}

/// Closed-form class key of a codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Key {
    Du(GammaKind, Option<ClassLabel>),
    Dprime(i8, Option<ClassLabel>),
}

fn delta_label(spec: &CodeSpec, delta: FieldElement) -> Option<ClassLabel> {
    closed_form_class(&spec.field, delta).map(|i| spec.part.label(i))
}

fn n_for_key(spec: &CodeSpec, sym: &Symbols, key: Key) -> Result<u64, CodeError> {
    let v = match (key, &spec.kind) {
        (Key::Du(g, d), CodeKind::Du(u)) => {
            Q::from_integer(n1_closed_by_class(&spec.params(), *u, g, d).into())
        }
        (Key::Dprime(f, d), CodeKind::Dprime(prof)) => n2_closed_by_class(sym, prof.epsilon, f, d),
        _ => unreachable!("key built from the same spec"),
    };
    as_u64(&v).ok_or_else(|| CodeError::NonIntegral(describe(&v)))
}

pub fn n1_closed(
    spec: &CodeSpec,
    gamma: FieldElement,
    delta: FieldElement,
) -> Result<u64, CodeError> {
    let CodeKind::Du(u) = spec.kind else {
        return Err(CodeError::InvalidSpec("N1 applies to D_u".into()));
    };
    let v = n1_closed_by_class(
        &spec.params(),
        u,
        GammaKind::of(&spec.field, gamma),
        delta_label(spec, delta),
    );
    u64::try_from(v).map_err(|_| CodeError::NonIntegral(v.to_string()))
}

pub fn n2_closed(
    spec: &CodeSpec,
    gamma: FieldElement,
    delta: FieldElement,
) -> Result<u64, CodeError> {
    let CodeKind::Dprime(ref prof) = spec.kind else {
        return Err(CodeError::InvalidSpec("N2 applies to D'".into()));
    };
    let fs = quad_char(spec.field.p, prof.dual_of(gamma) as i64);
    let v = n2_closed_by_class(&spec.symbols(), prof.epsilon, fs, delta_label(spec, delta));
    as_u64(&v).ok_or_else(|| CodeError::NonIntegral(describe(&v)))
}

/// Weight of `c(gamma, delta)` as `n - N` from the closed forms.
pub fn codeword_weight_closed(
    spec: &CodeSpec,
    gamma: FieldElement,
    delta: FieldElement,
) -> Result<u64, CodeError> {
    if gamma.is_zero() && delta.is_zero() {
        return Ok(0);
    }
    let n = defining_set_size_closed(spec)?;
    let big_n = match spec.kind {
        CodeKind::Du(_) => n1_closed(spec, gamma, delta)?,
        CodeKind::Dprime(_) => n2_closed(spec, gamma, delta)?,
    };
    Ok(n - big_n)
}

/// Number of positions where `Tr(gamma x + delta y) != 0`.
pub fn codeword_weight_direct(d: &DefiningSet, gamma: FieldElement, delta: FieldElement) -> u64 {
    let tbl = &d.spec.field;
    let p = tbl.p as u32;
    d.pairs()
        .filter(|&(x, y)| (tbl.trace_mul(gamma, x) + tbl.trace_mul(delta, y)) % p != 0)
        .count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub dist: BTreeMap<u64, u64>,
    pub n: u64,
    pub dim: u32,
    pub d_min: u64,
}

impl WeightDistribution {
    /// Validates a full distribution of `p^(2e)` codewords, including the zero word.
    pub fn new(dist: BTreeMap<u64, u64>, n: u64, p: u64, e: u64) -> Result<Self, CodeError> {
        let dist: BTreeMap<u64, u64> = dist.into_iter().filter(|&(_, a)| a > 0).collect();
        let total: u128 = dist.values().map(|&a| a as u128).sum();
        let expected = (p as u128).pow(2 * e as u32);
        if total != expected {
            return Err(CodeError::BadDistribution(format!(
                "frequencies sum to {total}, expected {expected}"
            )));
        }
        if dist.get(&0) != Some(&1) {
            return Err(CodeError::BadDistribution(format!(
                "{} codewords of weight 0; the map (gamma, delta) -> c is not injective",
                dist.get(&0).copied().unwrap_or(0)
            )));
        }
        if let Some((&w, _)) = dist.iter().next_back() {
            if w > n {
                return Err(CodeError::BadDistribution(format!(
                    "weight {w} exceeds n = {n}"
                )));
            }
        }
        let d_min = dist.keys().copied().find(|&w| w > 0).unwrap_or(0);
        Ok(WeightDistribution {
            dist,
            n,
            dim: 2 * e as u32,
            d_min,
        })
    }

    pub fn total(&self) -> u128 {
        self.dist.values().map(|&a| a as u128).sum()
    }

    /// Nonzero weights only.
    pub fn nonzero(&self) -> BTreeMap<u64, u64> {
        self.dist
            .iter()
            .filter(|(&w, _)| w > 0)
            .map(|(&w, &a)| (w, a))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,frequency\n");
        for (w, a) in &self.dist {
            s.push_str(&format!("{w},{a}\n"));
        }
        s
    }

    pub fn dist_json(&self) -> Value {
        Value::Array(self.dist.iter().map(|(w, a)| json!([w, a])).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GriesmerReport {
    pub bound: u64,
    pub meets: bool,
}

/// `sum_{i<k} ceil(d / p^i)` compared with `n`.
pub fn griesmer_check(n: u64, k: u32, d: u64, p: u64) -> GriesmerReport {
    let mut bound = 0u128;
    let mut pi = 1u128;
    for _ in 0..k {
        bound += (d as u128).div_ceil(pi);
        pi = pi.saturating_mul(p as u128);
    }
    let bound = bound as u64;
    GriesmerReport {
        bound,
        meets: bound == n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Count every codeword against the materialised defining set.
    Direct,
    /// Closed-form weight for every `(gamma, delta)`.
    Closed,
    /// Closed-form weights weighted by class cardinalities.
    Aggregate,
    /// Direct and closed, required to agree.
    Both,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Method::Direct),
            "closed" => Ok(Method::Closed),
            "aggregate" => Ok(Method::Aggregate),
            "both" => Ok(Method::Both),
            _ => Err(format!("unknown method {s}")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Direct => "direct",
            Method::Closed => "closed",
            Method::Aggregate => "aggregate",
            Method::Both => "both",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub pair_ceiling: u64,
    pub direct_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pair_ceiling: DEFAULT_PAIR_CEILING,
            direct_budget: DEFAULT_DIRECT_BUDGET,
        }
    }
}

pub fn weight_distribution(
    spec: &CodeSpec,
    method: Method,
) -> Result<WeightDistribution, CodeError> {
    weight_distribution_with(spec, method, Limits::default())
}

pub fn weight_distribution_with(
    spec: &CodeSpec,
    method: Method,
    limits: Limits,
) -> Result<WeightDistribution, CodeError> {
    match method {
        Method::Direct => {
            let d = build_defining_set_with_ceiling(spec, limits.pair_ceiling)?;
            distribution_direct(&d, limits.direct_budget)
        }
        Method::Closed => distribution_closed(spec),
        Method::Aggregate => distribution_aggregate(spec),
        Method::Both => {
            let d = build_defining_set_with_ceiling(spec, limits.pair_ceiling)?;
            let direct = distribution_direct(&d, limits.direct_budget)?;
            let closed = distribution_closed(spec)?;
            compare_distributions(&direct, &closed)?;
            Ok(direct)
        }
    }
}

/// Fails with the first weight whose frequencies differ.
pub fn compare_distributions(
    direct: &WeightDistribution,
    closed: &WeightDistribution,
) -> Result<(), CodeError> {
    let weights: std::collections::BTreeSet<u64> = direct
        .dist
        .keys()
        .chain(closed.dist.keys())
        .copied()
        .collect();
    for w in weights {
        let a = direct.dist.get(&w).copied().unwrap_or(0);
        let b = closed.dist.get(&w).copied().unwrap_or(0);
        if a != b {
            return Err(CodeError::MethodDisagreement {
                weight: w,
                direct: a,
                closed: b,
            });
        }
    }
    Ok(())
}

pub fn distribution_direct(d: &DefiningSet, budget: u128) -> Result<WeightDistribution, CodeError> {
    let tbl = &d.spec.field;
    let q = tbl.q as usize;
    let p = tbl.p as u32;
    let work = (q as u128) * (q as u128) * d.n() as u128;
    if work > budget {
        return Err(CodeError::CeilingExceeded {
            what: "direct weight distribution",
            needed: work,
            ceiling: budget,
        });
    }
    let dist = (0..q)
        .into_par_iter()
        .map(|gi| {
            let gamma = FieldElement::from_index(gi);
            let tx: Vec<u32> = d.xs.iter().map(|&x| tbl.trace_mul(gamma, x)).collect();
            let mut local: HashMap<u64, u64> = HashMap::new();
            for di in 0..q {
                let delta = FieldElement::from_index(di);
                let w = tx
                    .iter()
                    .zip(&d.ys)
                    .filter(|&(&t, &y)| (t + tbl.trace_mul(delta, y)) % p != 0)
                    .count() as u64;
                *local.entry(w).or_default() += 1;
            }
            local
        })
        .reduce(HashMap::new, merge_counts);
    WeightDistribution::new(dist.into_iter().collect(), d.n(), tbl.p, tbl.e)
}

fn merge_counts(mut a: HashMap<u64, u64>, b: HashMap<u64, u64>) -> HashMap<u64, u64> {
    for (w, c) in b {
        *a.entry(w).or_default() += c;
    }
    a
}

fn closed_weights(
    spec: &CodeSpec,
    keys: impl Iterator<Item = (Key, u64)>,
) -> Result<WeightDistribution, CodeError> {
    let sym = spec.symbols();
    let n = defining_set_size_closed(spec)?;
    let mut cache: HashMap<Key, u64> = HashMap::new();
    let mut dist: BTreeMap<u64, u64> = BTreeMap::new();
    dist.insert(0, 1);
    for (key, count) in keys {
        if count == 0 {
            continue;
        }
        let big_n = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = n_for_key(spec, &sym, key)?;
                cache.insert(key, v);
                v
            }
        };
        let w = n
            .checked_sub(big_n)
            .ok_or_else(|| CodeError::BadDistribution(format!("N = {big_n} exceeds n = {n}")))?;
        *dist.entry(w).or_default() += count;
    }
    let p = spec.field.p;
    WeightDistribution::new(dist, n, p, spec.field.e)
}

/// Closed-form weight of every nonzero `(gamma, delta)`.
pub fn distribution_closed(spec: &CodeSpec) -> Result<WeightDistribution, CodeError> {
    let tbl = &spec.field;
    let q = tbl.q as usize;
    let gkeys: Vec<(GammaKind, i8)> = tbl
        .elements()
        .map(|g| {
            let fs = match &spec.kind {
                CodeKind::Du(_) => 0,
                CodeKind::Dprime(prof) => quad_char(tbl.p, prof.dual_of(g) as i64),
            };
            (GammaKind::of(tbl, g), fs)
        })
        .collect();
    let dlabels: Vec<Option<ClassLabel>> = tbl.elements().map(|d| delta_label(spec, d)).collect();
    let mut counts: HashMap<Key, u64> = HashMap::new();
    for gi in 0..q {
        for (di, &dl) in dlabels.iter().enumerate() {
            if gi == 0 && di == 0 {
                continue;
            }
            let key = match spec.kind {
                CodeKind::Du(_) => Key::Du(gkeys[gi].0, dl),
                CodeKind::Dprime(_) => Key::Dprime(gkeys[gi].1, dl),
            };
            *counts.entry(key).or_default() += 1;
        }
    }
    let mut keys: Vec<(Key, u64)> = counts.into_iter().collect();
    keys.sort();
    closed_weights(spec, keys.into_iter())
}

/// Closed-form distribution from class sizes alone, without visiting codewords.
pub fn distribution_aggregate(spec: &CodeSpec) -> Result<WeightDistribution, CodeError> {
    let params = spec.params();
    let (p, q) = (params.p, params.q);
    let per_class = params.exp_n;
    let mut deltas: Vec<(Option<ClassLabel>, u64)> = vec![(None, 1)];
    deltas.extend(spec.part.class_of.iter().map(|&l| (Some(l), per_class)));

    let mut keys = Vec::new();
    match &spec.kind {
        CodeKind::Du(_) => {
            let gammas = [
                (GammaKind::Zero, 1),
                (GammaKind::PrimeNonzero, p - 1),
                (GammaKind::Other, q - p),
            ];
            for &(g, gc) in &gammas {
                for &(d, dc) in &deltas {
                    let c = if g == GammaKind::Zero && d.is_none() {
                        0
                    } else {
                        gc * dc
                    };
                    keys.push((Key::Du(g, d), c));
                }
            }
        }
        CodeKind::Dprime(prof) => {
            let levels = dual_level_counts_closed(p, params.e, prof.epsilon);
            let mut by_eta: BTreeMap<i8, u64> = BTreeMap::new();
            for (lam, &c) in levels.iter().enumerate() {
                *by_eta.entry(quad_char(p, lam as i64)).or_default() += c;
            }
            for (&eta, &gc) in &by_eta {
                for &(d, dc) in &deltas {
                    // gamma = 0 sits in the f* = 0 level
                    let gc = if eta == 0 && d.is_none() { gc - 1 } else { gc };
                    keys.push((Key::Dprime(eta, d), gc * dc));
                }
            }
        }
    }
    closed_weights(spec, keys.into_iter())
}

pub fn report_json(spec: &CodeSpec, wd: &WeightDistribution) -> Value {
    let g = griesmer_check(wd.n, wd.dim, wd.d_min, spec.field.p);
    json!({
        "params": spec.params(),
        "spec": spec.describe(),
        "n": wd.n,
        "dim": wd.dim,
        "d": wd.d_min,
        "dist": wd.dist_json(),
        "griesmer": g,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub gamma_log: Option<u64>,
    pub delta_log: Option<u64>,
    pub direct: u64,
    pub closed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub exhaustive: bool,
    pub samples: Vec<SampleRecord>,
    pub mismatches: Vec<SampleRecord>,
}

impl SampleReport {
    pub fn ensure_clean(&self) -> Result<(), CodeError> {
        match self.mismatches.first() {
            None => Ok(()),
            Some(r) => Err(CodeError::VerificationFailed {
                gamma: r
                    .gamma_log
                    .map_or(FieldElement::ZERO, FieldElement::from_log),
                delta: r
                    .delta_log
                    .map_or(FieldElement::ZERO, FieldElement::from_log),
                direct: r.direct,
                closed: r.closed,
            }),
        }
    }
}

/// Compares direct and closed weights on seeded random codewords. A sample
/// size covering all `q^2 - 1` nonzero codewords checks every one instead.
pub fn sample_check(
    d: &DefiningSet,
    sample_size: u64,
    seed: u64,
) -> Result<SampleReport, CodeError> {
    let spec = &d.spec;
    let q = spec.field.q;
    let exhaustive = sample_size as u128 >= (q as u128 * q as u128) - 1;
    let picks: Vec<(FieldElement, FieldElement)> = if exhaustive {
        (0..q as usize)
            .flat_map(|g| (0..q as usize).map(move |h| (g, h)))
            .filter(|&pair| pair != (0, 0))
            .map(|(g, h)| (FieldElement::from_index(g), FieldElement::from_index(h)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = Vec::with_capacity(sample_size as usize);
        while (v.len() as u64) < sample_size {
            let g = rng.gen_range(0..q as usize);
            let h = rng.gen_range(0..q as usize);
            if (g, h) != (0, 0) {
                v.push((FieldElement::from_index(g), FieldElement::from_index(h)));
            }
        }
        v
    };
    let samples = picks
        .par_iter()
        .map(|&(g, h)| {
            Ok(SampleRecord {
                gamma_log: g.log(),
                delta_log: h.log(),
                direct: codeword_weight_direct(d, g, h),
                closed: codeword_weight_closed(spec, g, h)?,
            })
        })
        .collect::<Result<Vec<_>, CodeError>>()?;
    let mismatches = samples
        .iter()
        .filter(|r| r.direct != r.closed)
        .cloned()
        .collect();
    Ok(SampleReport {
        seed,
        exhaustive,
        samples,
        mismatches,
    })
}

pub fn sample_verify(
    d: &DefiningSet,
    sample_size: u64,
    seed: u64,
) -> Result<SampleReport, CodeError> {
    let report = sample_check(d, sample_size, seed)?;
    report.ensure_clean()?;
    Ok(report)
}
