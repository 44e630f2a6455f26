mod common;

use mcover::localclass::{hilbert_exp, LocalFieldSpec, UnitClass};
use proptest::prelude::*;

fn exponent(p: u64, n: u64, a: (i64, i64), b: (i64, i64)) -> u64 {
    let out = common::run(&[
        "hilbert", "--p", &p.to_string(), "--n", &n.to_string(),
        &format!("--a={},{}", a.0, a.1), &format!("--b={},{}", b.0, b.1), "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    v["data"]["exponent"].as_u64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_command_matches_library(i in 0usize..4, a in (-20i64..20, -20i64..20), b in (-20i64..20, -20i64..20)) {
        let (p, n) = [(5, 4), (7, 6), (13, 12), (11, 5)][i];
        let f = LocalFieldSpec::new(p, n).unwrap();
        let e = exponent(p, n, a, b);
        prop_assert_eq!(e, hilbert_exp(&f, UnitClass::new(a.0, a.1, n), UnitClass::new(b.0, b.1, n)));
        prop_assert_eq!((e + exponent(p, n, b, a)) % n, 0);
    }
}
