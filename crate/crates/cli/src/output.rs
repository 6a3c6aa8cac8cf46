//! JSON output shapes. Struct field order fixes the key order, so identical
//! inputs always produce byte-identical output.

use serde::Serialize;

use fermatq::{ClassificationResult, CountResult, IdentityReport, WeilBoundResult};

#[derive(Serialize)]
struct CountOut {
    q: u64,
    n_points: u128,
    method: String,
    residual: f64,
}

pub fn print_count(q: u64, result: &CountResult) {
    let out = CountOut {
        q,
        n_points: result.n_points,
        method: result.method.to_string(),
        residual: result.residual,
    };
    println!("{}", serde_json::to_string(&out).unwrap());
}

#[derive(Serialize)]
struct BoundOut {
    q: u64,
    s: usize,
    d: Vec<u64>,
    i_value: u64,
    radius: f64,
    lower: u128,
    upper: u128,
    exact: bool,
}

pub fn print_bound(bound: &WeilBoundResult) {
    let out = BoundOut {
        q: bound.q,
        s: bound.s,
        d: bound.d.clone(),
        i_value: bound.i_value,
        radius: bound.radius,
        lower: bound.lower,
        upper: bound.upper,
        exact: bound.exact,
    };
    println!("{}", serde_json::to_string(&out).unwrap());
}

#[derive(Serialize)]
struct BoundSummary {
    lower: u128,
    upper: u128,
    i_value: u64,
}

#[derive(Serialize)]
struct ClassifyOut {
    status: String,
    r: Option<u64>,
    epsilon: Option<i8>,
    theta_matches: Vec<bool>,
    reasons: Vec<String>,
    bound: BoundSummary,
    count: Option<u128>,
}

pub fn print_classification(result: &ClassificationResult) {
    let out = ClassifyOut {
        status: result.status.to_string(),
        r: result.r,
        epsilon: result.epsilon,
        theta_matches: result.theta_matches.clone(),
        reasons: result.reasons.iter().map(|r| r.to_string()).collect(),
        bound: BoundSummary {
            lower: result.bound.lower,
            upper: result.bound.upper,
            i_value: result.bound.i_value,
        },
        count: result.verified_count.as_ref().map(|c| c.n_points),
    };
    println!("{}", serde_json::to_string(&out).unwrap());
}

#[derive(Serialize)]
struct VerifyLine {
    identity: String,
    max_residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    p: u64,
    n: u32,
    q: u64,
    identities: Vec<VerifyLine>,
    pass: bool,
}

pub fn print_verify(p: u64, n: u32, q: u64, reports: &[IdentityReport]) {
    let out = VerifyOut {
        p,
        n,
        q,
        identities: reports
            .iter()
            .map(|r| VerifyLine {
                identity: r.identity.clone(),
                max_residual: r.max_residual,
                pass: r.pass,
            })
            .collect(),
        pass: reports.iter().all(|r| r.pass),
    };
    println!("{}", serde_json::to_string(&out).unwrap());
}
