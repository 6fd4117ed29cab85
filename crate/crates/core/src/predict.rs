//! Weight distributions predicted by the theorem tables, evaluated exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::charsum::{classify_u, CongruenceCase};
use crate::codes::{
    defining_set_size_closed, report_json, CodeError, CodeKind, CodeSpec, WeightDistribution,
};
use crate::symbols::{as_u64, describe, qi, Symbols, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredictError {
    #[error("table {table} row {row}: {what} {value} is not a non-negative integer")]
    NonIntegerEntry {
        table: &'static str,
        row: usize,
        what: &'static str,
        value: String,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    Du,
    Dprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    U0Ell1,
    U0EllNot1,
    UnzGeneric,
    UnzPhiOnly,
    UnzBoth,
    UnzEllOnly,
    Ell1P1Mod4,
    Ell1P3Mod4,
    EllNot1P1Mod4SameSign,
    EllNot1P1Mod4OppSign,
    EllNot1P3Mod4,
}

impl Branch {
    /// Stable identifier of the table the branch instantiates.
    pub fn table_id(self) -> &'static str {
        match self {
            Branch::U0Ell1 => "du/u0-ell1",
            Branch::U0EllNot1 => "du/u0-ellnot1",
            Branch::UnzGeneric => "du/unz-generic",
            Branch::UnzPhiOnly => "du/unz-phi",
            Branch::UnzBoth => "du/unz-both",
            Branch::UnzEllOnly => "du/unz-ell",
            Branch::Ell1P1Mod4 => "dprime/ell1-p1mod4",
            Branch::Ell1P3Mod4 => "dprime/ell1-p3mod4",
            Branch::EllNot1P1Mod4SameSign => "dprime/ellnot1-p1mod4-same",
            Branch::EllNot1P1Mod4OppSign => "dprime/ellnot1-p1mod4-opp",
            Branch::EllNot1P3Mod4 => "dprime/ellnot1-p3mod4",
        }
    }

    fn rows(self) -> &'static [Row] {
        match self {
            Branch::U0Ell1 => DU_U0_ELL1,
            Branch::U0EllNot1 => DU_U0_ELLNOT1,
            Branch::UnzGeneric => DU_GENERIC,
            Branch::UnzPhiOnly => DU_PHI,
            Branch::UnzBoth => DU_BOTH,
            Branch::UnzEllOnly => DU_ELL,
            Branch::Ell1P1Mod4 => DP_ELL1_P1,
            Branch::Ell1P3Mod4 => DP_ELL1_P3,
            Branch::EllNot1P1Mod4SameSign => DP_ELLNOT1_P1_SAME,
            Branch::EllNot1P1Mod4OppSign => DP_ELLNOT1_P1_OPP,
            Branch::EllNot1P3Mod4 => DP_ELLNOT1_P3,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.table_id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremCase {
    pub theorem: Theorem,
    pub branch: Branch,
    /// `phi(ell^k) mod p`
    pub t1: u64,
    /// `ell^(k-1) mod p`
    pub t2: u64,
    /// `eta(t1) + (ell - 1) eta(t2)`
    pub t_sum: i64,
}

pub fn classify_case(spec: &CodeSpec) -> TheoremCase {
    let params = spec.params();
    let sym = spec.symbols();
    let p = params.p;
    let t1 = params.e % p;
    let t2 = params.ell_k1() % p;
    let t_sum = sym.eta_t1 + (params.ell as i64 - 1) * sym.eta_t2;
    let ell_one = params.ell % p == 1;
    let (theorem, branch) = match spec.kind {
        CodeKind::Du(u) => {
            let b = match classify_u(&params, u) {
                CongruenceCase::ZeroU if ell_one => Branch::U0Ell1,
                CongruenceCase::ZeroU => Branch::U0EllNot1,
                CongruenceCase::Generic => Branch::UnzGeneric,
                CongruenceCase::PhiOnlyPlus | CongruenceCase::PhiOnlyMinus => Branch::UnzPhiOnly,
                CongruenceCase::BothPlus | CongruenceCase::BothMinus => Branch::UnzBoth,
                CongruenceCase::EllOnlyPlus | CongruenceCase::EllOnlyMinus => Branch::UnzEllOnly,
            };
            (Theorem::Du, b)
        }
        CodeKind::Dprime(_) => {
            let b = match (ell_one, p % 4 == 1) {
                (true, true) => Branch::Ell1P1Mod4,
                (true, false) => Branch::Ell1P3Mod4,
                (false, true) if sym.eta_t1 == sym.eta_t2 => Branch::EllNot1P1Mod4SameSign,
                (false, true) => Branch::EllNot1P1Mod4OppSign,
                (false, false) => Branch::EllNot1P3Mod4,
            };
            (Theorem::Dprime, b)
        }
    };
    TheoremCase {
        theorem,
        branch,
        t1,
        t2,
        t_sum,
    }
}

/// Values a table row may refer to.
struct Ctx {
    p: Q,
    l: Q,
    lk: Q,
    lk1: Q,
    q: Q,
    sq: Q,
    /// `p^(e-1)`
    pe1: Q,
    /// `p^(2e-2)`
    p2e2: Q,
    /// `p^(2e-1)`
    p2e1: Q,
    /// `eps (p*)^(e/2)`
    es: Q,
    t: Q,
    eta1: Q,
    /// `|{f* = 0}|`
    a0: Q,
    /// `|{f* = lambda}|` for `lambda != 0`
    b0: Q,
}

impl Ctx {
    fn new(sym: &Symbols, epsilon: i8) -> Self {
        let e = sym.regime.e as i64;
        let es = qi(epsilon as i64) * &sym.s;
        let one = qi(1);
        let pe1 = sym.p_pow(e - 1);
        Ctx {
            a0: &pe1 + &es * (&sym.p - &one) / &sym.p,
            b0: &pe1 - &es / &sym.p,
            p: sym.p.clone(),
            l: sym.ell.clone(),
            lk: sym.lk.clone(),
            lk1: sym.lk1.clone(),
            q: sym.q.clone(),
            sq: sym.sq.clone(),
            p2e2: sym.p_pow(2 * e - 2),
            p2e1: sym.p_pow(2 * e - 1),
            pe1,
            es,
            t: sym.t_sum(),
            eta1: qi(sym.eta_t1),
        }
    }

    fn pm1(&self) -> Q {
        &self.p - qi(1)
    }

    fn qm1(&self) -> Q {
        &self.q - qi(1)
    }

    /// `p^(2e-2)(p-1)`
    fn du_base(&self) -> Q {
        &self.p2e2 * self.pm1()
    }

    /// `q^2 (p-1) / p^2`
    fn w0(&self) -> Q {
        &self.q * &self.q * self.pm1() / (&self.p * &self.p)
    }

    /// `q (p-1)^2 / p^2`
    fn qpp(&self) -> Q {
        &self.q * self.pm1() * self.pm1() / (&self.p * &self.p)
    }

    fn two(&self) -> Q {
        qi(2)
    }
}

type Expr = fn(&Ctx) -> Q;

/// A `(weight, frequency)` row.
type Row = (Expr, Expr);

const DU_U0_ELL1: &[Row] = &[
    (|c| &c.pe1 * (&c.l - qi(1)) * c.qm1() / &c.lk, |c| c.pm1()),
    (
        |c| c.du_base() + &c.pe1 * (&c.sq - (&c.l - qi(1)) * (&c.sq + qi(1)) / &c.lk),
        |c| c.pm1() * (&c.l - qi(1)) * c.qm1() / &c.lk,
    ),
    (
        |c| c.du_base() - &c.pe1 * (&c.l - qi(1)) * (&c.sq + qi(1)) / &c.lk,
        |c| c.pm1() * (&c.lk - &c.l + qi(1)) * c.qm1() / &c.lk,
    ),
    (|c| c.du_base(), |c| c.qm1() + (&c.q - &c.p) * &c.q),
];

const DU_U0_ELLNOT1: &[Row] = &[
    (|c| &c.pe1 * c.qm1() / &c.lk1, |c| c.pm1()),
    (
        |c| c.du_base() + &c.pe1 * (&c.sq - (&c.sq + qi(1)) / &c.lk1),
        |c| c.pm1() * c.qm1() / &c.lk1,
    ),
    (
        |c| c.du_base() - &c.pe1 * (&c.sq + qi(1)) / &c.lk1,
        |c| c.pm1() * (&c.lk1 - qi(1)) * c.qm1() / &c.lk1,
    ),
    (|c| c.du_base(), |c| c.qm1() + (&c.q - &c.p) * &c.q),
];

const DU_GENERIC: &[Row] = &[
    (|c| c.p2e1.clone(), |c| c.pm1()),
    (|c| c.du_base(), |c| &c.q * &c.q - &c.p),
];

const DU_PHI: &[Row] = &[
    (
        |c| &c.p2e1 - &c.pe1 * c.qm1() / (c.two() * &c.lk),
        |c| c.pm1(),
    ),
    (
        |c| c.du_base() - &c.pe1 * &c.sq + &c.pe1 * (&c.sq + qi(1)) / (c.two() * &c.lk),
        |c| c.pm1() * c.qm1() / (c.two() * &c.lk),
    ),
    (
        |c| c.du_base() + &c.pe1 * (&c.sq + qi(1)) / (c.two() * &c.lk),
        |c| c.pm1() * (c.two() * &c.lk - qi(1)) * c.qm1() / (c.two() * &c.lk),
    ),
    (|c| c.du_base(), |c| c.qm1() + &c.q * (&c.q - &c.p)),
];

const DU_BOTH: &[Row] = &[
    (
        |c| &c.p2e1 - &c.pe1 * c.qm1() / (c.two() * &c.lk1),
        |c| c.pm1(),
    ),
    (
        |c| c.du_base() - &c.pe1 * &c.sq + &c.pe1 * (&c.sq + qi(1)) / (c.two() * &c.lk1),
        |c| c.pm1() * c.qm1() / (c.two() * &c.lk1),
    ),
    (
        |c| c.du_base() + &c.pe1 * (&c.sq + qi(1)) / (c.two() * &c.lk1),
        |c| c.pm1() * (c.two() * &c.lk1 - qi(1)) * c.qm1() / (c.two() * &c.lk1),
    ),
    (|c| c.du_base(), |c| c.qm1() + &c.q * (&c.q - &c.p)),
];

const DU_ELL: &[Row] = &[
    (
        |c| &c.p2e1 - &c.pe1 * (&c.l - qi(1)) * c.qm1() / (c.two() * &c.lk),
        |c| c.pm1(),
    ),
    (
        |c| {
            c.du_base() - &c.pe1 * &c.sq
                + &c.pe1 * (&c.l - qi(1)) * (&c.sq + qi(1)) / (c.two() * &c.lk)
        },
        |c| c.pm1() * (&c.l - qi(1)) * c.qm1() / (c.two() * &c.lk),
    ),
    (
        |c| c.du_base() + &c.pe1 * (&c.l - qi(1)) * (&c.sq + qi(1)) / (c.two() * &c.lk),
        |c| c.pm1() * (c.two() * &c.lk - &c.l + qi(1)) * c.qm1() / (c.two() * &c.lk),
    ),
    (|c| c.du_base(), |c| c.qm1() + &c.q * (&c.q - &c.p)),
];

const DP_ELL1_P1: &[Row] = &[
    (|c| c.w0(), |c| &c.a0 - qi(1)),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp() + &c.sq * c.pm1() / &c.p
                        - (&c.l - qi(1)) * (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk))
        },
        |c| c.qm1() * (&c.l - qi(1)) / &c.lk * &c.a0,
    ),
    (
        |c| c.w0() + &c.es * (c.qpp() - (&c.l - qi(1)) * (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk)),
        |c| c.qm1() * (&c.lk - &c.l + qi(1)) / &c.lk * &c.a0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (&c.q * c.pm1() / &c.p
                        - (&c.l - qi(1)) * c.qm1() / (&c.p * &c.lk) * (&c.p + qi(1)))
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (&c.q * c.pm1() / &c.p - (&c.l - qi(1)) * c.qm1() / (&c.p * &c.lk) * c.pm1())
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp()
                        - c.two() * &c.sq / &c.p
                        - (&c.l - qi(1)) * (&c.sq + qi(1)) / (&c.p * &c.lk)
                            * (&c.sq * c.pm1() - (&c.p + qi(1))))
        },
        |c| c.qm1() * (&c.l - qi(1)) * c.pm1() / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp()
                        - (&c.l - qi(1)) * (&c.sq + qi(1)) / (&c.p * &c.lk)
                            * (&c.sq * c.pm1() - (&c.p + qi(1))))
        },
        |c| c.qm1() * (&c.lk - &c.l + qi(1)) * c.pm1() / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * (c.qpp() - (&c.l - qi(1)) * c.qm1() / (&c.p * &c.lk) * c.pm1()),
        |c| c.pm1() * c.qm1() / c.two() * &c.b0,
    ),
];

const DP_ELL1_P3: &[Row] = &[
    (|c| c.w0(), |c| &c.a0 - qi(1)),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp() + &c.sq * c.pm1() / &c.p
                        - (&c.l - qi(1)) * (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk))
        },
        |c| c.qm1() * (&c.l - qi(1)) / &c.lk * &c.a0,
    ),
    (
        |c| c.w0() + &c.es * (c.qpp() - (&c.l - qi(1)) * (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk)),
        |c| c.qm1() * (&c.lk - &c.l + qi(1)) / &c.lk * &c.a0,
    ),
    (
        |c| c.w0() + &c.es * (&c.q * c.pm1() / &c.p - (&c.l - qi(1)) * c.qm1() / &c.lk),
        |c| c.pm1() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp()
                        - c.two() * &c.sq / &c.p
                        - (&c.l - qi(1)) * (&c.sq + qi(1)) / (&c.p * &c.lk)
                            * (&c.sq * c.pm1() - &c.p))
        },
        |c| c.qm1() * (&c.l - qi(1)) * c.pm1() / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp()
                        - (&c.l - qi(1)) * (&c.sq + qi(1)) / (&c.p * &c.lk)
                            * (&c.sq * c.pm1() - &c.p))
        },
        |c| c.qm1() * (c.two() * &c.lk - &c.l + qi(1)) * c.pm1() / (c.two() * &c.lk) * &c.b0,
    ),
];

fn dp_ellnot1_f0_special(c: &Ctx) -> Q {
    c.w0() + &c.es * (c.qpp() + &c.sq * c.pm1() / &c.p - (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk1))
}

fn dp_ellnot1_f0_other(c: &Ctx) -> Q {
    c.w0() + &c.es * (c.qpp() - (&c.q + &c.sq) * c.pm1() / (&c.p * &c.lk1))
}

/// `q(p-1)^2/p^2 - (q-1)/ell^(k-1) + (sqrt(q)+1)(ell sqrt(q) + s eta(t1) T)/(p ell^k)`
fn dp_p1_tail(c: &Ctx, s: i64) -> Q {
    c.qpp() - c.qm1() / &c.lk1
        + (&c.sq + qi(1)) * (&c.l * &c.sq + qi(s) * &c.eta1 * &c.t) / (&c.p * &c.lk)
}

const DP_ELLNOT1_P1_SAME: &[Row] = &[
    (|c| c.w0(), |c| &c.a0 - qi(1)),
    (dp_ellnot1_f0_special, |c| c.qm1() / &c.lk1 * &c.a0),
    (dp_ellnot1_f0_other, |c| {
        c.qm1() * (&c.lk1 - qi(1)) / &c.lk1 * &c.a0
    }),
    (
        |c| {
            c.w0()
                + &c.es * (&c.q * c.pm1() / &c.p - c.qm1() * (&c.p * &c.l + &c.t) / (&c.p * &c.lk))
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es * (&c.q * c.pm1() / &c.p - c.qm1() * (&c.p * &c.l - &c.t) / (&c.p * &c.lk))
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * (dp_p1_tail(c, 1) - c.two() * &c.sq / &c.p),
        |c| c.qm1() * c.pm1() / (c.two() * &c.lk1) * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * dp_p1_tail(c, -1),
        |c| c.pm1() * c.qm1() / c.two() * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * dp_p1_tail(c, 1),
        |c| c.pm1() * c.qm1() * (&c.lk1 - qi(1)) / (c.two() * &c.lk1) * &c.b0,
    ),
];

const DP_ELLNOT1_P1_OPP: &[Row] = &[
    (|c| c.w0(), |c| &c.a0 - qi(1)),
    (dp_ellnot1_f0_special, |c| c.qm1() / &c.lk1 * &c.a0),
    (dp_ellnot1_f0_other, |c| {
        c.qm1() * (&c.lk1 - qi(1)) / &c.lk1 * &c.a0
    }),
    (
        |c| {
            c.w0()
                + &c.es * (&c.q * c.pm1() / &c.p - c.qm1() * (&c.p * &c.l + &c.t) / (&c.p * &c.lk))
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es * (&c.q * c.pm1() / &c.p - c.qm1() * (&c.p * &c.l - &c.t) / (&c.p * &c.lk))
        },
        |c| c.pm1() / c.two() * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * (dp_p1_tail(c, 1) - c.two() * &c.sq / &c.p),
        |c| c.qm1() * c.pm1() / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * dp_p1_tail(c, 1),
        |c| c.qm1() * c.pm1() * (&c.lk - qi(1)) / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * (dp_p1_tail(c, -1) - c.two() * &c.sq / &c.p),
        |c| c.qm1() * c.pm1() * (&c.l - qi(1)) / (c.two() * &c.lk) * &c.b0,
    ),
    (
        |c| c.w0() + &c.es * dp_p1_tail(c, -1),
        |c| c.qm1() * c.pm1() * (&c.lk - &c.l + qi(1)) / (c.two() * &c.lk) * &c.b0,
    ),
];

const DP_ELLNOT1_P3: &[Row] = &[
    (|c| c.w0(), |c| &c.a0 - qi(1)),
    (dp_ellnot1_f0_special, |c| c.qm1() / &c.lk1 * &c.a0),
    (dp_ellnot1_f0_other, |c| {
        c.qm1() * (&c.lk1 - qi(1)) / &c.lk1 * &c.a0
    }),
    (
        |c| c.w0() + &c.es * (&c.q * c.pm1() / &c.p - c.qm1() / &c.lk1),
        |c| c.pm1() * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es
                    * (c.qpp()
                        - c.two() * &c.sq / &c.p
                        - (&c.sq + qi(1)) / (&c.p * &c.lk1) * (&c.sq * c.pm1() - &c.p))
        },
        |c| c.qm1() * c.pm1() / (c.two() * &c.lk1) * &c.b0,
    ),
    (
        |c| {
            c.w0()
                + &c.es * (c.qpp() - (&c.sq + qi(1)) / (&c.p * &c.lk1) * (&c.sq * c.pm1() - &c.p))
        },
        |c| c.qm1() * c.pm1() * (c.two() * &c.lk1 - qi(1)) / (c.two() * &c.lk1) * &c.b0,
    ),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowValue {
    pub weight: u64,
    pub frequency: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub case: TheoremCase,
    /// Every table row as instantiated, zero-frequency rows included.
    pub rows: Vec<RowValue>,
    /// Rows merged by weight, zero-frequency rows dropped, `{0: 1}` added.
    pub distribution: WeightDistribution,
}

impl Prediction {
    /// Total frequency, which the tables claim is `p^(2e)`.
    pub fn mass(&self) -> u128 {
        self.distribution.total()
    }

    pub fn table_id(&self) -> &'static str {
        self.case.branch.table_id()
    }
}

fn eval_entry(
    table: &'static str,
    row: usize,
    what: &'static str,
    v: Q,
) -> Result<u64, PredictError> {
    if v.is_negative() {
        return Err(PredictError::NonIntegerEntry {
            table,
            row,
            what,
            value: describe(&v),
        });
    }
    as_u64(&v).ok_or_else(|| PredictError::NonIntegerEntry {
        table,
        row,
        what,
        value: describe(&v),
    })
}

/// Instantiates the table of `case` for `spec`. The `D'` tables use the
/// profile's empirical sign.
pub fn predict_distribution(
    spec: &CodeSpec,
    case: &TheoremCase,
) -> Result<Prediction, PredictError> {
    let sym = spec.symbols();
    let epsilon = spec.epsilon().unwrap_or(1);
    let ctx = Ctx::new(&sym, epsilon);
    let table = case.branch.table_id();
    let mut rows = Vec::new();
    for (i, (w, f)) in case.branch.rows().iter().enumerate() {
        let weight = eval_entry(table, i + 1, "weight", w(&ctx))?;
        let frequency = eval_entry(table, i + 1, "frequency", f(&ctx))?;
        rows.push(RowValue { weight, frequency });
    }
    let mut dist: BTreeMap<u64, u64> = BTreeMap::new();
    dist.insert(0, 1);
    for r in rows.iter().filter(|r| r.frequency > 0) {
        *dist.entry(r.weight).or_default() += r.frequency;
    }
    let n = defining_set_size_closed(spec)?;
    let d_min = dist.keys().copied().find(|&w| w > 0).unwrap_or(0);
    let distribution = WeightDistribution {
        dist,
        n,
        dim: 2 * sym.regime.e as u32,
        d_min,
    };
    Ok(Prediction {
        case: *case,
        rows,
        distribution,
    })
}

pub fn predict(spec: &CodeSpec) -> Result<Prediction, PredictError> {
    predict_distribution(spec, &classify_case(spec))
}

pub fn prediction_json(spec: &CodeSpec, pred: &Prediction) -> Value {
    let mut v = report_json(spec, &pred.distribution);
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("source".into(), "theorem".into());
    obj.insert("table".into(), pred.table_id().into());
    obj.insert(
        "case".into(),
        serde_json::to_value(pred.case).expect("serialisable"),
    );
    obj.insert("mass".into(), pred.mass().to_string().into());
    v
}

/// Whether the predicted frequencies sum to `p^(2e)`.
pub fn mass_matches(pred: &Prediction, p: u64, e: u64) -> bool {
    pred.mass() == (p as u128).pow(2 * e as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bent::{extract_profile, BentCandidate, BentFamily};
    use crate::field::{build_field, validate_params};
    use std::sync::Arc;

    fn du(p: u64, ell: u64, u: u64) -> CodeSpec {
        let t = Arc::new(build_field(validate_params(p, ell, 1).unwrap()).unwrap());
        CodeSpec::du(t, u).unwrap()
    }

    fn dprime(p: u64, ell: u64, fam: BentFamily) -> CodeSpec {
        let t = Arc::new(build_field(validate_params(p, ell, 1).unwrap()).unwrap());
        let prof = extract_profile(BentCandidate::new(fam, t).unwrap()).unwrap();
        CodeSpec::dprime(Arc::new(prof)).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_case(&du(5, 3, 0)).branch, Branch::U0EllNot1);
        let c = classify_case(&dprime(5, 3, BentFamily::TraceSquare));
        assert_eq!(c.branch, Branch::EllNot1P1Mod4OppSign);
        assert_eq!(c.t_sum, 1);
    }

    #[test]
    fn du_examples() {
        let d = predict(&du(5, 3, 0)).unwrap().distribution.dist;
        assert_eq!(d, BTreeMap::from([(0, 1), (95, 96), (100, 524), (120, 4)]));
        let d = predict(&du(7, 5, 2)).unwrap().distribution.dist;
        assert_eq!(d, BTreeMap::from([(0, 1), (705894, 5764794), (823543, 6)]));
    }

    #[test]
    fn zero_rows_are_kept_in_raw_rows() {
        let pr = predict(&du(5, 3, 0)).unwrap();
        assert_eq!(pr.rows.len(), 4);
        assert_eq!(pr.rows[2].frequency, 0);
        assert!(mass_matches(&pr, 5, 2));
    }
}
