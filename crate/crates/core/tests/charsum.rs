use weilcodes::charsum::*;
use weilcodes::field::{build_field, validate_params};

// Covers both signs of (p*)^(e/2) and both ell = 1 and ell != 1 mod p.
const REGIMES: [(u64, u64, u32); 5] = [(5, 3, 1), (3, 5, 1), (11, 3, 1), (7, 5, 1), (3, 7, 1)];

#[test]
fn weil_sums_closed_match_brute_force_on_every_class() {
    for (p, ell, k) in REGIMES {
        let t = build_field(validate_params(p, ell, k).unwrap()).unwrap();
        let part = build_partition(&t).unwrap();
        for b in class_representatives(&t) {
            for a in 1..p {
                weil_sum_checked(&t, &part, t.from_int(a as i64), b).unwrap();
            }
            for u in 0..p {
                w_sum_checked(&t, &part, u, b).unwrap();
            }
        }
    }
}

#[test]
fn sign_of_pstar_power() {
    let neg = |p, ell| pstar_power_negative(&validate_params(p, ell, 1).unwrap());
    assert!(!neg(5, 3));
    assert!(!neg(3, 5));
    assert!(!neg(7, 5));
    assert!(neg(11, 3));
    assert!(neg(3, 7));
}
