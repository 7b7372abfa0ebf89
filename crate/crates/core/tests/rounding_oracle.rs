//! Endpoint accuracy against a frozen higher-precision oracle.
//!
//! `data/rounding_cases.json` was generated offline (see
//! `data/gen_rounding_cases.py`): operand intervals are drawn from a seeded
//! RNG, the true range endpoints are computed with exact rational arithmetic
//! for the field operations and with a 200-bit floating-point library for the
//! transcendentals, and each true endpoint is directed-rounded to the nearest
//! f64. Every computed interval must contain that rounded true range, and each
//! endpoint must stay within a pinned number of ulps of it:
//!
//! * `add sub mul div neg sqr` — 0 ulps (endpoints are correctly rounded)
//! * `pow_int` — 6 ulps (k ≤ 8 passes through at most five directed multiplications)
//! * `exp ln sin cos` — 2 ulps (nearest rounding plus one-ulp widening)

use extrema::Interval;
use serde::Deserialize;

#[derive(Deserialize)]
struct Fixture {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    op: String,
    a: [f64; 2],
    #[serde(default)]
    b: Option<[f64; 2]>,
    #[serde(default)]
    k: Option<i32>,
    lo: f64,
    hi: f64,
}

/// Maps an f64 to an integer key that is monotone in the numeric order, so
/// key differences count the representable values between two floats.
fn monotone_key(x: f64) -> i64 {
    let b = x.to_bits() as i64;
    if b >= 0 {
        b
    } else {
        b ^ i64::MAX
    }
}

fn ulps_apart(a: f64, b: f64) -> u128 {
    (monotone_key(a) as i128 - monotone_key(b) as i128).unsigned_abs()
}

fn allowed_slack(op: &str) -> u128 {
    match op {
        "add" | "sub" | "mul" | "div" | "neg" | "sqr" => 0,
        "pow_int" => 6,
        "exp" | "ln" | "sin" | "cos" => 2,
        other => panic!("unknown op in fixture: {other}"),
    }
}

#[test]
fn computed_endpoints_match_oracle() {
    let fixture: Fixture =
        serde_json::from_str(include_str!("data/rounding_cases.json")).unwrap();
    assert!(fixture.cases.len() >= 800);

    let mut worst: std::collections::BTreeMap<String, u128> = Default::default();
    for (i, case) in fixture.cases.iter().enumerate() {
        let a = Interval::new(case.a[0], case.a[1]).unwrap();
        let b = case.b.map(|b| Interval::new(b[0], b[1]).unwrap());
        let r = match case.op.as_str() {
            "add" => a + b.unwrap(),
            "sub" => a - b.unwrap(),
            "mul" => a * b.unwrap(),
            "div" => a.div(b.unwrap()).unwrap(),
            "neg" => -a,
            "sqr" => a.sqr(),
            "pow_int" => a.pow_int(case.k.unwrap()).unwrap(),
            "exp" => a.exp(),
            "ln" => a.ln().unwrap(),
            "sin" => a.sin(),
            "cos" => a.cos(),
            other => panic!("unknown op in fixture: {other}"),
        };

        assert!(
            r.lo() <= case.lo && case.hi <= r.hi(),
            "case {i} ({}): {r} does not contain oracle [{}, {}] for a={:?} b={:?} k={:?}",
            case.op,
            case.lo,
            case.hi,
            case.a,
            case.b,
            case.k,
        );

        let slack = ulps_apart(r.lo(), case.lo).max(ulps_apart(r.hi(), case.hi));
        assert!(
            slack <= allowed_slack(&case.op),
            "case {i} ({}): endpoints {r} are {slack} ulps outside oracle [{}, {}]",
            case.op,
            case.lo,
            case.hi,
        );
        let w = worst.entry(case.op.clone()).or_default();
        *w = (*w).max(slack);
    }

    println!("worst endpoint slack per op (ulps): {worst:?}");
}
