use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use weilcodes::bent::{extract_profile, BentCandidate, BentFamily};
use weilcodes::charsum::class_representatives;
use weilcodes::codes::*;
use weilcodes::field::{build_field, quad_char, validate_params, FieldElement, FieldTable};

fn field(p: u64, ell: u64, k: u32) -> Arc<FieldTable> {
    Arc::new(build_field(validate_params(p, ell, k).unwrap()).unwrap())
}

fn dprime(t: &Arc<FieldTable>, fam: BentFamily) -> CodeSpec {
    let prof = extract_profile(BentCandidate::new(fam, t.clone()).unwrap()).unwrap();
    CodeSpec::dprime(Arc::new(prof)).unwrap()
}

fn specs_for(t: &Arc<FieldTable>, fams: &[BentFamily]) -> Vec<CodeSpec> {
    let mut v: Vec<CodeSpec> = (0..t.p)
        .map(|u| CodeSpec::du(t.clone(), u).unwrap())
        .collect();
    v.extend(fams.iter().map(|&f| dprime(t, f)));
    v
}

#[test]
fn closed_matches_direct_exhaustively_on_small_fields() {
    let cases = [
        (
            field(5, 3, 1),
            vec![
                BentFamily::TraceSquare,
                BentFamily::TraceKasami(2),
                BentFamily::TraceAlphaKasami(2),
            ],
        ),
        (
            field(3, 5, 1),
            vec![BentFamily::TraceSquare, BentFamily::TraceCoulter(5)],
        ),
    ];
    for (t, fams) in &cases {
        for spec in specs_for(t, fams) {
            let d = build_defining_set(&spec).unwrap();
            let q2 = t.q * t.q;
            let r = sample_check(&d, q2, 0).unwrap();
            assert!(r.exhaustive);
            assert!(
                r.mismatches.is_empty(),
                "{:?}: {:?}",
                spec.describe(),
                &r.mismatches[..1]
            );
            let wd = weight_distribution(&spec, Method::Both).unwrap();
            assert_eq!(distribution_aggregate(&spec).unwrap(), wd);
        }
    }
}

#[test]
fn closed_matches_direct_on_medium_fields() {
    let cases = [
        (field(11, 3, 1), vec![BentFamily::TraceSquare]),
        (field(3, 7, 1), vec![BentFamily::TraceSquare]),
    ];
    for (t, fams) in &cases {
        for spec in specs_for(t, fams) {
            let d = build_defining_set(&spec).unwrap();
            sample_verify(&d, 3000, 11).unwrap();
            every_class_key(&spec, &d);
            assert_eq!(
                distribution_closed(&spec).unwrap(),
                distribution_aggregate(&spec).unwrap()
            );
        }
    }
}

#[test]
fn coulter_distribution() {
    let t = field(3, 5, 1);
    let spec = dprime(&t, BentFamily::TraceCoulter(5));
    let wd = weight_distribution(&spec, Method::Both).unwrap();
    assert_eq!(
        wd.nonzero(),
        BTreeMap::from([
            (1458, 20),
            (1584, 2400),
            (1620, 1680),
            (1638, 2400),
            (1692, 60)
        ])
    );
    assert_eq!(wd.n, 2420);
}

/// One gamma per closed-form gamma key against every delta class.
fn every_class_key(spec: &CodeSpec, d: &DefiningSet) {
    let t = &spec.field;
    let mut gammas: Vec<FieldElement> = Vec::new();
    let mut seen = Vec::new();
    for g in t.elements() {
        let key = match &spec.kind {
            CodeKind::Du(_) => GammaKind::of(t, g) as i64,
            CodeKind::Dprime(prof) => {
                quad_char(t.p, prof.dual_of(g) as i64) as i64 + 10 * g.is_zero() as i64
            }
        };
        if !seen.contains(&key) {
            seen.push(key);
            gammas.push(g);
        }
    }
    for &g in &gammas {
        for h in class_representatives(t) {
            if g.is_zero() && h.is_zero() {
                continue;
            }
            assert_eq!(
                codeword_weight_direct(d, g, h),
                codeword_weight_closed(spec, g, h).unwrap(),
                "{:?} gamma={g:?} delta={h:?}",
                spec.describe()
            );
        }
    }
}

fn medium_codes() -> &'static Vec<(CodeSpec, DefiningSet)> {
    static CODES: OnceLock<Vec<(CodeSpec, DefiningSet)>> = OnceLock::new();
    CODES.get_or_init(|| {
        let mut v = Vec::new();
        for t in [field(11, 3, 1), field(3, 7, 1)] {
            for spec in specs_for(&t, &[BentFamily::TraceSquare]) {
                let d = build_defining_set(&spec).unwrap();
                v.push((spec, d));
            }
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn closed_weight_matches_direct(which in 0usize..1000, g in 0usize..729, h in 0usize..729) {
        let codes = medium_codes();
        let (spec, d) = &codes[which % codes.len()];
        let q = spec.field.q as usize;
        let (g, h) = (FieldElement::from_index(g % q), FieldElement::from_index(h % q));
        prop_assume!(!(g.is_zero() && h.is_zero()));
        prop_assert_eq!(
            codeword_weight_direct(d, g, h),
            codeword_weight_closed(spec, g, h).unwrap()
        );
    }
}
