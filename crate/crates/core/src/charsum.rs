//! Weil sums `S(a, b) = sum_{x != 0} zeta^{Tr(a x^N + b x)}` with `N = (q-1)/(2 ell^k)`,
//! their periods, and the derived sums `w(u, b)`.

use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{CycError, CycInt};
use crate::field::{FieldElement, FieldParams, FieldTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error("trace of xi^{i} is {direct} but the partition predicts {closed}")]
    InternalInconsistency { i: u64, direct: u64, closed: u64 },
    #[error("closed forms need a prime-field coefficient a")]
    NonPrimeFieldA,
    #[error("closed form {closed} disagrees with brute force {brute} ({what})")]
    Disagreement {
        what: String,
        brute: CycInt,
        closed: CycInt,
    },
    #[error(transparent)]
    Cyc(#[from] CycError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassLabel {
    Zero,
    P1_1,
    P1_2,
    P1_3,
    P2,
    EllK,
    P3_1,
    P3_2,
    P3_3,
    P4,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 10] = [
        ClassLabel::Zero,
        ClassLabel::P1_1,
        ClassLabel::P1_2,
        ClassLabel::P1_3,
        ClassLabel::P2,
        ClassLabel::EllK,
        ClassLabel::P3_1,
        ClassLabel::P3_2,
        ClassLabel::P3_3,
        ClassLabel::P4,
    ];

    /// `P1_2` or `P3_2`
    pub fn is_plus(self) -> bool {
        matches!(self, ClassLabel::P1_2 | ClassLabel::P3_2)
    }

    /// `P1_3` or `P3_3`
    pub fn is_minus(self) -> bool {
        matches!(self, ClassLabel::P1_3 | ClassLabel::P3_3)
    }
}

/// Label of `i` in `0 .. 2 ell^k`.
pub fn class_of_index(params: &FieldParams, i: u64) -> ClassLabel {
    let lk = params.ell_k();
    let lk1 = params.ell_k1();
    let e = params.e;
    if i == 0 {
        ClassLabel::Zero
    } else if i <= e {
        if i % lk1 != 0 {
            ClassLabel::P1_1
        } else if i % 2 == 1 {
            ClassLabel::P1_2
        } else {
            ClassLabel::P1_3
        }
    } else if i < lk {
        ClassLabel::P2
    } else if i == lk {
        ClassLabel::EllK
    } else if i <= 2 * lk - lk1 {
        // i = ell^k + u ell^(k-1) - v with 0 <= v < ell^(k-1)
        let d = i - lk;
        let u = d.div_ceil(lk1);
        let v = u * lk1 - d;
        if v > 0 {
            ClassLabel::P3_1
        } else if u % 2 == 0 {
            ClassLabel::P3_2
        } else {
            ClassLabel::P3_3
        }
    } else {
        ClassLabel::P4
    }
}

/// Closed-form `Tr(xi^i) mod p` as a function of the label of `i`.
pub fn trace_of_xi_closed(params: &FieldParams, label: ClassLabel) -> u64 {
    let p = params.p as i64;
    let lk1 = params.ell_k1() as i64;
    let v = match label {
        ClassLabel::Zero => params.e as i64,
        ClassLabel::EllK => -(params.e as i64),
        ClassLabel::P1_3 | ClassLabel::P3_3 => -lk1,
        ClassLabel::P1_2 | ClassLabel::P3_2 => lk1,
        _ => 0,
    };
    v.rem_euclid(p) as u64
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionTables {
    pub params: FieldParams,
    pub class_of: Vec<ClassLabel>,
    pub trace_of_xi: Vec<u64>,
}

impl PartitionTables {
    pub fn label(&self, i: u64) -> ClassLabel {
        self.class_of[i as usize]
    }

    /// Label of the class that the closed forms are evaluated at for `b`
    /// (`None` when `b = 0`). See [`closed_form_class`].
    pub fn label_of(&self, tbl: &FieldTable, b: FieldElement) -> Option<ClassLabel> {
        closed_form_class(tbl, b).map(|i| self.label(i))
    }

    pub fn class_size(&self, label: ClassLabel) -> usize {
        self.class_of.iter().filter(|&&l| l == label).count()
    }
}

pub fn build_partition(tbl: &FieldTable) -> Result<PartitionTables, CharSumError> {
    let params = tbl.params;
    let m = params.two_ell_k();
    let class_of: Vec<ClassLabel> = (0..m).map(|i| class_of_index(&params, i)).collect();
    let mut trace_of_xi = Vec::with_capacity(m as usize);
    for (i, &label) in class_of.iter().enumerate() {
        let direct = tbl.trace(tbl.xi_pow(i as u64));
        let closed = trace_of_xi_closed(&params, label);
        if direct != closed {
            return Err(CharSumError::InternalInconsistency {
                i: i as u64,
                direct,
                closed,
            });
        }
        trace_of_xi.push(direct);
    }
    Ok(PartitionTables {
        params,
        class_of,
        trace_of_xi,
    })
}

/// Class index used by the closed forms: `i_b + ell^k mod 2 ell^k` when
/// `(p*)^(e/2) = sqrt(q)`, and `i_b` itself when `(p*)^(e/2) = -sqrt(q)`.
///
/// Enumeration gives `S(a, b) = sqrt(q) chi(-sigma c) - h S(c)` with `c = a b^-N`
/// and `sigma` the sign of `(p*)^(e/2)`. Since `-1 = xi^(ell^k)`, the closed
/// forms hold at the index above.
pub fn closed_form_class(tbl: &FieldTable, b: FieldElement) -> Option<u64> {
    let ib = tbl.residue_class(b).ok()?;
    let lk = tbl.params.ell_k();
    if pstar_power_negative(&tbl.params) {
        Some(ib)
    } else {
        Some((ib + lk) % (2 * lk))
    }
}

/// Whether `(p*)^(e/2) = -sqrt(q)`.
pub fn pstar_power_negative(params: &FieldParams) -> bool {
    params.p % 4 == 3 && (params.e / 2) % 2 == 1
}

/// The literal sum over `x in F_q^*`.
pub fn weil_sum_bruteforce(tbl: &FieldTable, a: FieldElement, b: FieldElement) -> CycInt {
    let p = tbl.p;
    let n = tbl.params.exp_n;
    let mut counts = vec![0i64; p as usize];
    for x in tbl.nonzero() {
        let t = tbl.trace_mul(a, tbl.pow(x, n)) + tbl.trace_mul(b, x);
        counts[(t as u64 % p) as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts).expect("counts bounded by q")
}

/// `S(z, b)` for every `z in F_p`, from one pass collecting `(Tr(x^N), Tr(bx))`.
pub fn weil_sums_prime_multiples(tbl: &FieldTable, b: FieldElement) -> Vec<CycInt> {
    let p = tbl.p as usize;
    let n = tbl.params.exp_n;
    let mut pairs = vec![0i64; p * p];
    for x in tbl.nonzero() {
        let t1 = tbl.trace(tbl.pow(x, n)) as usize;
        let t2 = tbl.trace_mul(b, x) as usize;
        pairs[t1 * p + t2] += 1;
    }
    (0..p)
        .map(|z| {
            let mut counts = vec![0i64; p];
            for t1 in 0..p {
                for t2 in 0..p {
                    counts[(z * t1 + t2) % p] += pairs[t1 * p + t2];
                }
            }
            CycInt::from_exponent_counts(p as u64, &counts).expect("counts bounded by q")
        })
        .collect()
}

/// `S(a) = sum_{i < 2 ell^k} zeta^{Tr(a xi^i)}`, summed literally.
pub fn weil_sum_period(tbl: &FieldTable, a: FieldElement) -> CycInt {
    let p = tbl.p;
    let mut counts = vec![0i64; p as usize];
    for i in 0..tbl.params.two_ell_k() {
        counts[tbl.trace_mul(a, tbl.xi_pow(i)) as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts).expect("small counts")
}

/// Closed form of `S(a)` for `a in F_p`.
pub fn weil_sum_period_closed(params: &FieldParams, a: u64) -> CycInt {
    let p = params.p;
    let lk1 = params.ell_k1() % p;
    let ell = params.ell as i64;
    let a = a % p;
    let mut counts = vec![0i64; p as usize];
    let outer = lk1 * ((params.ell - 1) % p) % p * a % p;
    let inner = lk1 * a % p;
    counts[outer as usize] += 1;
    counts[((p - outer) % p) as usize] += 1;
    counts[inner as usize] += ell - 1;
    counts[((p - inner) % p) as usize] += ell - 1;
    counts[0] += 2 * params.ell_k() as i64 - 2 * ell;
    CycInt::from_exponent_counts(p, &counts).expect("small counts")
}

/// Closed form of `S(a, b)` for `a` in the prime field.
pub fn weil_sum_closed(
    tbl: &FieldTable,
    part: &PartitionTables,
    a: FieldElement,
    b: FieldElement,
) -> Result<CycInt, CharSumError> {
    let params = &tbl.params;
    let a = tbl.as_prime(a).ok_or(CharSumError::NonPrimeFieldA)?;
    let period = weil_sum_period_closed(params, a);
    if b.is_zero() {
        return Ok(period.try_scale(params.exp_n as i64)?);
    }
    let ib = closed_form_class(tbl, b).expect("b is nonzero");
    let t = part.trace_of_xi[ib as usize];
    let sq = params.sqrt_q() as i64;
    let h = (sq + 1) / params.two_ell_k() as i64;
    let chi = CycInt::root(params.p, (a * t % params.p) as i64).try_scale(sq)?;
    Ok(chi.try_sub(&period.try_scale(h)?)?)
}

/// Whichever evaluator applies: closed for prime-field `a`, brute force otherwise.
pub fn weil_sum_auto(
    tbl: &FieldTable,
    part: &PartitionTables,
    a: FieldElement,
    b: FieldElement,
) -> (CycInt, SumMode) {
    match weil_sum_closed(tbl, part, a, b) {
        Ok(v) => (v, SumMode::Closed),
        Err(_) => (weil_sum_bruteforce(tbl, a, b), SumMode::Brute),
    }
}

/// Computes both evaluators and fails if they differ.
pub fn weil_sum_checked(
    tbl: &FieldTable,
    part: &PartitionTables,
    a: FieldElement,
    b: FieldElement,
) -> Result<CycInt, CharSumError> {
    let brute = weil_sum_bruteforce(tbl, a, b);
    let closed = weil_sum_closed(tbl, part, a, b)?;
    if brute != closed {
        return Err(CharSumError::Disagreement {
            what: format!("S({a:?}, {b:?})"),
            brute,
            closed,
        });
    }
    Ok(brute)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CongruenceCase {
    ZeroU,
    Generic,
    PhiOnlyPlus,
    PhiOnlyMinus,
    EllOnlyPlus,
    EllOnlyMinus,
    BothPlus,
    BothMinus,
}

/// Compares `u` against `t1 = phi(ell^k)` and `t2 = ell^(k-1)` modulo `p`.
pub fn classify_u(params: &FieldParams, u: u64) -> CongruenceCase {
    let p = params.p;
    let u = u % p;
    if u == 0 {
        return CongruenceCase::ZeroU;
    }
    let t1 = params.e % p;
    let t2 = params.ell_k1() % p;
    let neg = |x: u64| (p - x) % p;
    let phi_plus = u == t1;
    let phi_minus = u == neg(t1);
    let ell_plus = u == t2;
    let ell_minus = u == neg(t2);
    let phi = phi_plus || phi_minus;
    let ell = ell_plus || ell_minus;
    // u = t1 = -t2 would force ell = 0 mod p
    assert!(
        !(phi_plus && ell_minus) && !(phi_minus && ell_plus),
        "mixed-sign congruence is impossible"
    );
    match (phi, ell) {
        (false, false) => CongruenceCase::Generic,
        (true, false) if phi_plus => CongruenceCase::PhiOnlyPlus,
        (true, false) => CongruenceCase::PhiOnlyMinus,
        (false, true) if ell_plus => CongruenceCase::EllOnlyPlus,
        (false, true) => CongruenceCase::EllOnlyMinus,
        (true, true) if phi_plus => CongruenceCase::BothPlus,
        (true, true) => CongruenceCase::BothMinus,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMode {
    Brute,
    Closed,
}

/// `w(u, b) = sum_{z != 0} zeta^{-uz} S(z, b)`.
pub fn w_sum(
    tbl: &FieldTable,
    part: &PartitionTables,
    u: u64,
    b: FieldElement,
    mode: SumMode,
) -> Result<CycInt, CharSumError> {
    match mode {
        SumMode::Brute => w_from_sums(tbl.p, u, &weil_sums_prime_multiples(tbl, b)),
        SumMode::Closed => {
            let v = w_closed(tbl, part, u, b)?;
            Ok(CycInt::from_int(tbl.p, v))
        }
    }
}

/// Assembles `w(u, b)` from `S(z, b)` for `z = 0 .. p-1`.
pub fn w_from_sums(p: u64, u: u64, sums: &[CycInt]) -> Result<CycInt, CharSumError> {
    let mut acc = CycInt::zero(p);
    for (z, s) in sums.iter().enumerate().skip(1) {
        let shift = -((u % p) as i64 * z as i64);
        acc = acc.try_add(&s.mul_root(shift)?)?;
    }
    Ok(acc)
}

/// Closed-form `w(u, b)` as a rational integer.
pub fn w_closed(
    tbl: &FieldTable,
    part: &PartitionTables,
    u: u64,
    b: FieldElement,
) -> Result<i64, CharSumError> {
    let params = &tbl.params;
    let label = part.label_of(tbl, b);
    let v = w_closed_by_label(params, u, label);
    i64::try_from(v).map_err(|_| CharSumError::Cyc(CycError::Overflow))
}

/// Closed-form `w(u, b)` given the label of `i_b` (`None` when `b = 0`).
pub fn w_closed_by_label(params: &FieldParams, u: u64, label: Option<ClassLabel>) -> i128 {
    use ClassLabel::*;
    use CongruenceCase::*;
    let p = params.p as i128;
    let q = params.q as i128;
    let ell = params.ell as i128;
    let lk = params.ell_k() as i128;
    let lk1 = params.ell_k1() as i128;
    let sq = params.sqrt_q() as i128;
    let ell_one = params.ell % params.p == 1;
    let case = classify_u(params, u);

    match (case, label) {
        (ZeroU, None) => {
            if ell_one {
                (q - 1) / lk * ((p - 1) * lk - p * ell + p)
            } else {
                (q - 1) / lk1 * ((p - 1) * lk1 - p)
            }
        }
        (ZeroU, Some(l)) => {
            if ell_one {
                if l.is_plus() || l.is_minus() {
                    (sq + 1) / lk * (-p * lk + p * ell - p) + 1
                } else {
                    (sq + 1) / lk * (p * ell - p) - p + 1
                }
            } else if l.is_plus() || l.is_minus() || l == Zero || l == EllK {
                (sq + 1) / lk1 * (-p * lk1 + p) + 1
            } else {
                p * (sq + 1) / lk1 - p + 1
            }
        }
        (PhiOnlyPlus | PhiOnlyMinus, None) => (q - 1) / (2 * lk) * (-2 * lk + p),
        (BothPlus | BothMinus, None) => (q - 1) / (2 * lk1) * (-2 * lk1 + p),
        (EllOnlyPlus | EllOnlyMinus, None) => (q - 1) / (2 * lk) * (-2 * lk + ell * p - p),
        (Generic, None) => 1 - q,
        (Generic, Some(_)) => 1,
        (case, Some(l)) => {
            let (special, mult, denom) = match case {
                PhiOnlyPlus => (l == Zero, 1, 2 * lk),
                PhiOnlyMinus => (l == EllK, 1, 2 * lk),
                EllOnlyPlus => (l.is_plus(), ell - 1, 2 * lk),
                EllOnlyMinus => (l.is_minus(), ell - 1, 2 * lk),
                BothPlus => (l == Zero || l.is_plus(), 1, 2 * lk1),
                BothMinus => (l == EllK || l.is_minus(), 1, 2 * lk1),
                ZeroU | Generic => unreachable!(),
            };
            let base = 1 - p * mult * ((sq + 1) / denom);
            if special {
                base + p * sq
            } else {
                base
            }
        }
    }
}

/// Computes both evaluators of `w(u, b)` and fails if they differ.
pub fn w_sum_checked(
    tbl: &FieldTable,
    part: &PartitionTables,
    u: u64,
    b: FieldElement,
) -> Result<CycInt, CharSumError> {
    let brute = w_sum(tbl, part, u, b, SumMode::Brute)?;
    let closed = w_sum(tbl, part, u, b, SumMode::Closed)?;
    if brute != closed {
        return Err(CharSumError::Disagreement {
            what: format!("w({u}, {b:?})"),
            brute,
            closed,
        });
    }
    Ok(brute)
}

/// One `b` per residue class `i_b` (namely `b = alpha^j`, `i_b = -j`), plus `b = 0`.
pub fn class_representatives(tbl: &FieldTable) -> Vec<FieldElement> {
    let mut reps = vec![FieldElement::ZERO];
    reps.extend((0..tbl.params.two_ell_k()).map(FieldElement::from_log));
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_field, validate_params};
    use proptest::prelude::*;
    use ClassLabel::*;

    fn setup(p: u64, ell: u64, k: u32) -> (FieldTable, PartitionTables) {
        let t = build_field(validate_params(p, ell, k).unwrap()).unwrap();
        let part = build_partition(&t).unwrap();
        (t, part)
    }

    fn cyc(p: u64, c: &[i64]) -> CycInt {
        CycInt::from_exponent_counts(p, c).unwrap()
    }

    #[test]
    fn partition_small() {
        let (_, part) = setup(5, 3, 1);
        assert_eq!(part.class_of, vec![Zero, P1_2, P1_3, EllK, P3_3, P3_2]);
        assert_eq!(part.trace_of_xi, vec![2, 1, 4, 3, 4, 1]);
    }

    #[test]
    fn partition_sizes() {
        for (p, ell, k) in [
            (5, 3, 1),
            (3, 5, 1),
            (3, 7, 1),
            (7, 5, 1),
            (5, 3, 2),
            (11, 3, 2),
        ] {
            let (t, part) = setup(p, ell, k);
            let half = ((ell - 1) / 2) as usize;
            for l in [P1_2, P1_3, P3_2, P3_3] {
                assert_eq!(part.class_size(l), half, "{l:?}");
            }
            assert_eq!(part.class_size(Zero), 1);
            assert_eq!(part.class_size(EllK), 1);
            let total: usize = ClassLabel::ALL.iter().map(|&l| part.class_size(l)).sum();
            assert_eq!(total as u64, t.params.two_ell_k());
        }
    }

    #[test]
    fn partition_k2_sets_are_populated() {
        let (_, part) = setup(5, 3, 2);
        for l in ClassLabel::ALL {
            assert!(part.class_size(l) > 0, "{l:?}");
        }
    }

    #[test]
    fn weil_small_values() {
        let (t, part) = setup(5, 3, 1);
        let one = FieldElement::ONE;
        let z = FieldElement::ZERO;
        assert_eq!(weil_sum_bruteforce(&t, z, z).as_integer(), Some(24));
        for b in t.nonzero().take(10) {
            assert_eq!(weil_sum_bruteforce(&t, z, b).as_integer(), Some(-1));
        }
        let period = cyc(5, &[0, 2, 1, 1, 2]);
        assert_eq!(weil_sum_period(&t, one), period);
        assert_eq!(weil_sum_period_closed(&t.params, 1), period);
        assert_eq!(weil_sum_period(&t, z).as_integer(), Some(6));
        assert_eq!(
            weil_sum_bruteforce(&t, one, z),
            period.try_scale(4).unwrap()
        );
        assert_eq!(
            weil_sum_closed(&t, &part, one, z).unwrap(),
            period.try_scale(4).unwrap()
        );
        let two = t.from_int(2);
        assert_eq!(
            weil_sum_period(&t, t.mul(two, t.xi_pow(3))),
            weil_sum_period(&t, two)
        );
        assert_eq!(
            weil_sum_closed(&t, &part, t.alpha(), one),
            Err(CharSumError::NonPrimeFieldA)
        );
    }

    #[test]
    fn period_palindromic() {
        for (p, ell, k) in [(5, 3, 1), (3, 5, 1), (7, 5, 1)] {
            let (t, _) = setup(p, ell, k);
            for a in 0..p {
                let s = weil_sum_period(&t, t.from_int(a as i64));
                assert_eq!(s.conj(), s);
            }
        }
    }

    #[test]
    fn closed_matches_brute_small() {
        let (t, part) = setup(5, 3, 1);
        for a in 0..5 {
            for b in class_representatives(&t) {
                weil_sum_checked(&t, &part, t.from_int(a), b).unwrap();
            }
        }
        for u in 0..5 {
            for b in class_representatives(&t) {
                w_sum_checked(&t, &part, u, b).unwrap();
            }
        }
    }

    #[test]
    fn scaling_b_by_prime_field() {
        let (t, part) = setup(7, 5, 1);
        for b in class_representatives(&t).into_iter().skip(1) {
            let base = weil_sum_closed(&t, &part, t.from_int(3), b).unwrap();
            for y in 1..7 {
                let yb = t.mul(t.from_int(y), b);
                assert_eq!(weil_sum_closed(&t, &part, t.from_int(3), yb).unwrap(), base);
                assert_eq!(weil_sum_bruteforce(&t, t.from_int(3), yb), base);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let p751 = validate_params(7, 5, 1).unwrap();
        assert_eq!(classify_u(&p751, 2), CongruenceCase::Generic);
        assert_eq!(classify_u(&p751, 3), CongruenceCase::PhiOnlyMinus);
        assert_eq!(classify_u(&p751, 4), CongruenceCase::PhiOnlyPlus);
        assert_eq!(classify_u(&p751, 1), CongruenceCase::EllOnlyPlus);
        assert_eq!(classify_u(&p751, 0), CongruenceCase::ZeroU);
        let p531 = validate_params(5, 3, 1).unwrap();
        assert_eq!(classify_u(&p531, 1), CongruenceCase::EllOnlyPlus);
        assert_eq!(classify_u(&p531, 4), CongruenceCase::EllOnlyMinus);
        // ell = 2 mod p puts t1 = t2
        let p351 = validate_params(3, 5, 1).unwrap();
        assert_eq!(classify_u(&p351, 1), CongruenceCase::BothPlus);
        assert_eq!(classify_u(&p351, 2), CongruenceCase::BothMinus);
    }

    #[test]
    fn w_examples() {
        let (t, part) = setup(5, 3, 1);
        let z = FieldElement::ZERO;
        for mode in [SumMode::Brute, SumMode::Closed] {
            assert_eq!(
                w_sum(&t, &part, 0, z, mode).unwrap().as_integer(),
                Some(-24)
            );
            assert_eq!(w_sum(&t, &part, 2, z, mode).unwrap().as_integer(), Some(-4));
        }
        let (t, part) = setup(7, 5, 1);
        for mode in [SumMode::Brute, SumMode::Closed] {
            assert_eq!(
                w_sum(&t, &part, 2, z, mode).unwrap().as_integer(),
                Some(-2400)
            );
        }
    }

    #[test]
    fn galois_covariance() {
        let (t, _) = setup(7, 5, 1);
        for b in class_representatives(&t).into_iter().step_by(3) {
            let base = weil_sum_bruteforce(&t, FieldElement::ONE, b);
            for z in 1..7 {
                let zf = t.from_int(z);
                let lhs = base.apply_automorphism(z).unwrap();
                // termwise: zeta^{z Tr(g)} = zeta^{Tr(z g)}
                let rhs = weil_sum_bruteforce(&t, zf, t.mul(zf, b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    proptest! {
        #[test]
        fn multiples_match_literal(j in 0u64..2400, z in 0i64..7) {
            let (t, _) = setup(7, 5, 1);
            let b = FieldElement::from_log(j);
            let all = weil_sums_prime_multiples(&t, b);
            prop_assert_eq!(&all[z as usize], &weil_sum_bruteforce(&t, t.from_int(z), b));
        }
    }
}
