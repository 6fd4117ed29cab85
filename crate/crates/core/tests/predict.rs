use std::collections::BTreeMap;
use std::sync::Arc;

use weilcodes::bent::{extract_profile, BentCandidate, BentFamily};
use weilcodes::codes::*;
use weilcodes::field::{build_field, enumerate_params, validate_params, FieldTable};
use weilcodes::predict::*;

fn field(p: u64, ell: u64, k: u32) -> Arc<FieldTable> {
    Arc::new(build_field(validate_params(p, ell, k).unwrap()).unwrap())
}

fn dprime(t: &Arc<FieldTable>, fam: BentFamily) -> CodeSpec {
    let prof = extract_profile(BentCandidate::new(fam, t.clone()).unwrap()).unwrap();
    CodeSpec::dprime(Arc::new(prof)).unwrap()
}

fn check(spec: &CodeSpec) -> Result<(), String> {
    let pred = predict(spec).map_err(|e| e.to_string())?;
    let observed = distribution_aggregate(spec).map_err(|e| e.to_string())?;
    let p = spec.field.p;
    let e = spec.field.e;
    if !weilcodes::predict::mass_matches(&pred, p, e) {
        return Err(format!("{}: mass {}", pred.table_id(), pred.mass()));
    }
    if pred.distribution != observed {
        return Err(format!(
            "{}: predicted {:?} observed {:?}",
            pred.table_id(),
            pred.distribution.dist,
            observed.dist
        ));
    }
    Ok(())
}

#[test]
fn du_tables_match_for_every_regime_up_to_1e5() {
    let mut failures = Vec::new();
    for fp in enumerate_params(100_000) {
        let t = Arc::new(build_field(fp).unwrap());
        for u in 0..fp.p {
            let spec = CodeSpec::du(t.clone(), u).unwrap();
            if let Err(e) = check(&spec) {
                failures.push(format!("({},{},{}) u={u}: {e}", fp.p, fp.ell, fp.k));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn dprime_tables_match_on_small_fields() {
    let mut failures = Vec::new();
    let mut cases: Vec<(Arc<FieldTable>, BentFamily)> = vec![
        (field(5, 3, 1), BentFamily::TraceKasami(2)),
        (field(5, 3, 1), BentFamily::TraceAlphaKasami(2)),
        (field(3, 5, 1), BentFamily::TraceCoulter(5)),
    ];
    for fp in enumerate_params(3000) {
        cases.push((Arc::new(build_field(fp).unwrap()), BentFamily::TraceSquare));
    }
    for (t, fam) in cases {
        let spec = dprime(&t, fam);
        if let Err(e) = check(&spec) {
            failures.push(format!(
                "({},{},{}) {fam}: {e}",
                t.p, t.params.ell, t.params.k
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn published_enumerators() {
    let t = field(5, 3, 1);
    let d = predict(&dprime(&t, BentFamily::TraceAlphaKasami(2))).unwrap();
    assert_eq!(
        d.distribution.nonzero(),
        BTreeMap::from([
            (72, 8),
            (78, 64),
            (80, 216),
            (82, 128),
            (88, 136),
            (92, 64),
            (100, 8)
        ])
    );
    let d = predict(&dprime(&t, BentFamily::TraceKasami(2))).unwrap();
    assert_eq!(
        d.distribution.nonzero(),
        BTreeMap::from([
            (108, 96),
            (112, 204),
            (118, 192),
            (120, 24),
            (122, 96),
            (128, 12)
        ])
    );
    let d = predict(&dprime(&field(3, 7, 1), BentFamily::TraceSquare)).unwrap();
    assert_eq!(d.distribution.n, 173420);
    assert_eq!(
        d.distribution.nonzero(),
        BTreeMap::from([
            (114372, 468),
            (115182, 27144),
            (115344, 146016),
            (115668, 162864),
            (115830, 194688),
            (118098, 260)
        ])
    );
}

#[test]
fn ell_one_with_p_one_mod_four_never_occurs() {
    assert!(enumerate_params(100_000)
        .iter()
        .all(|f| !(f.ell % f.p == 1 && f.p % 4 == 1)));
}
