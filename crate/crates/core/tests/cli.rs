use serde_json::Value;
use weilcodes::cli::{run_args, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};

fn run(args: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weilcodes").chain(args.split_whitespace());
    let code = run_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &str) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

#[test]
fn verify_du0() {
    let (code, v) = json("verify --p 5 --ell 3 --k 1 --du 0");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["agree"], true);
    assert_eq!(v["spectrum"]["n"], 124);
    assert_eq!(v["spectrum"]["d"], 95);
}

#[test]
fn verify_coulter_both() {
    let (code, v) = json("verify --p 3 --ell 5 --dprime coulter --i 5 --method both");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["spectrum"]["n"], 2420);
    assert_eq!(v["spectrum"]["d"], 1458);
}

#[test]
fn sample_large_field() {
    let (code, v) = json("sample --p 7 --ell 5 --du 2 --samples 20 --seed 1");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["griesmer"]["meets"], true);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn spectrum_csv() {
    let (code, out, _) = run("spectrum --p 5 --ell 3 --du 1 --format csv");
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight,frequency"));
    let total: u64 = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 625);
}

#[test]
fn params_and_bent() {
    let (code, v) = json("params --p 3 --ell 7");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["params"]["q"], 729);
    assert_eq!(v["pstar_power"], -27);
    let (code, v) = json("bent --p 5 --ell 3 --dprime kasami --i 2");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["epsilon"], -1);
}

#[test]
fn usage_errors() {
    assert_eq!(run("params --p 4 --ell 3").0, EXIT_USAGE);
    assert_eq!(run("params --p 5 --ell 5").0, EXIT_USAGE);
    assert_eq!(run("spectrum --p 5 --ell 3").0, EXIT_USAGE);
    assert_eq!(
        run("spectrum --p 5 --ell 3 --du 0 --dprime square").0,
        EXIT_USAGE
    );
    assert_eq!(run("bogus").0, EXIT_USAGE);
}

#[test]
fn infeasible_requests() {
    assert_eq!(
        run("spectrum --p 7 --ell 5 --du 2 --method direct").0,
        EXIT_INFEASIBLE
    );
    assert_eq!(
        run("spectrum --p 5 --ell 3 --du 0 --method direct --ceiling 100").0,
        EXIT_INFEASIBLE
    );
}
