//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! (run with `--nocapture` to see them) and then asserts.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use eaqecc::bounds::{
    ea_griesmer, ea_hamming, ea_singleton, hamming_efficiency, linear_ea_plotkin, saturation_trio, BoundStatus,
};
use eaqecc::code::rates;
use eaqecc::concat::{both_orders, concat, Procedure};
use eaqecc::error_model::{
    compose, named_polynomial, perfect_t_polynomial, polynomial_from_set, pseudothreshold, CorrectableSet,
};
use eaqecc::families::{
    default_scan_max, family, griesmer_family_audit, plotkin_family_audit, rep_odd_chain, resolve_code,
    reversed_scan_eahb, scan_eahb, GRIESMER_AUDITS, ONSET_TABLE, PLOTKIN_AUDITS,
};
use eaqecc::{ClassicalCode, Degeneracy, EaCode};

const THRESHOLD_TOL: f64 = 5e-4;
const BISECTION_TOL: f64 = 1e-9;
const THRESHOLD_BUDGET: Duration = Duration::from_secs(1);
const SCAN_BUDGET: Duration = Duration::from_secs(5);

fn report(criterion: u32, title: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion} ({title}): {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn code(text: &str) -> EaCode {
    text.parse().unwrap()
}

#[test]
fn criterion_1_pseudothresholds() {
    let cases = [
        ("five13", "rep3132", 0.2441),
        ("rep3132", "five13", 0.2284),
        ("five13", "four131", 0.1877),
        ("four131", "five13", 0.1622),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (outer, inner, expected) in cases {
        let f = compose(&named_polynomial(outer).unwrap(), &named_polynomial(inner).unwrap());
        let got = pseudothreshold(&f, BISECTION_TOL).unwrap();
        let hit = got.is_some_and(|p| (p - expected).abs() <= THRESHOLD_TOL);
        ok &= hit;
        let got = got.map_or("none".to_string(), |p| format!("{p:.5}"));
        write!(
            detail,
            "[{outer}▷{inner} {got} vs {expected}{}] ",
            if hit { "" } else { " MISS" }
        )
        .unwrap();
    }
    let elapsed = start.elapsed();
    ok &= elapsed < THRESHOLD_BUDGET;
    write!(detail, "in {elapsed:.2?}").unwrap();
    report(1, "pseudothresholds", ok, &detail);
}

#[test]
fn criterion_2_table_one() {
    let rows = [
        ("[[9,1,9;8]]", ["0.1111", "0.8888", "-0.7777", "1"]),
        ("[[12,1,9;5]]", ["0.0833", "0.4166", "-0.3333", "0.75"]),
        // printed r_n is -0.6666; (k - c)/n = -1/15
        ("[[15,1,9;2]]", ["0.0666", "0.1333", "-0.0666", "0.6"]),
        ("[[16,1,9;5]]", ["0.0625", "0.3125", "-0.25", "0.5625"]),
        ("[[20,1,9;1]]", ["0.05", "0.05", "0", "0.45"]),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (text, expected) in rows {
        let got = rates(&code(text)).truncated();
        let hit = got == expected;
        ok &= hit;
        if !hit {
            write!(detail, "{text}: {got:?} vs {expected:?}; ").unwrap();
        }
    }
    let flagged = rates(&code("[[15,1,9;2]]")).truncated()[2] != "-0.6666";
    ok &= flagged;
    detail.push_str("5 rows x 4 columns, [[15,1,9;2]] r_n = -0.0666 (printed -0.6666 flagged)");
    report(2, "reference rate table", ok, &detail);
}

#[test]
fn criterion_3_concatenation_examples() {
    let mut checks = Vec::new();
    let r = concat(&code("[[6,3,3;2]]"), &code("[[7,3,3;1]]"), None).unwrap();
    checks.push((
        r.code.to_string() == "[[14,3,≥3;4]]" && r.procedure == Procedure::Divisible,
        "[[14,3,≥3;4]]",
    ));
    let r = concat(&code("[[7,3,3;1]]"), &code("[[6,3,3;2]]"), None).unwrap();
    checks.push((
        r.code.to_string() == "[[42,9,≥9;17]]" && r.procedure == Procedure::NonDivisible,
        "[[42,9,≥9;17]]",
    ));
    let r = both_orders(&code("[[4,2,2;1]]"), &code("[[3,2,2;2]]")).unwrap();
    checks.push(((r.forward.code.c(), r.reverse.code.c()) == (5, 7), "(c,c') = (5,7)"));
    let r = both_orders(&code("[[9,2,4;1]]"), &code("[[8,2,4;2]]")).unwrap();
    checks.push(((r.forward.code.c(), r.reverse.code.c()) == (20, 6), "(c,c') = (20,6)"));
    let r = both_orders(&code("[[3,2,2;1]]"), &code("[[5,4,2;1]]")).unwrap();
    checks.push((
        r.forward.code == r.reverse.code && r.forward.code.to_string() == "[[15,8,≥4;7]]" && r.ebit_difference == 0,
        "[[15,8,≥4;7]] both orders",
    ));
    let detail = checks
        .iter()
        .map(|(ok, what)| format!("{what}{}", if *ok { "" } else { " MISS" }))
        .collect::<Vec<_>>()
        .join(", ");
    report(3, "concatenation examples", checks.iter().all(|(ok, _)| *ok), &detail);
}

#[test]
fn criterion_4_eahb_onsets() {
    let mut ok = true;
    let mut detail = String::new();
    for &(outer, inner, expected) in ONSET_TABLE {
        let spec = family(outer).unwrap();
        let start = Instant::now();
        let scan = scan_eahb(&spec, &resolve_code(inner).unwrap(), 0..=default_scan_max(spec.parity)).unwrap();
        let elapsed = start.elapsed();
        let hit = scan.onset == Some(expected) && elapsed < SCAN_BUDGET;
        ok &= hit;
        write!(
            detail,
            "[{outer}▷{inner} onset {:?} vs {expected}, n ≤ {}, {elapsed:.0?}{}] ",
            scan.onset,
            scan.rows.last().unwrap().n,
            if hit { "" } else { " MISS" }
        )
        .unwrap();
    }
    report(4, "EAHB onsets", ok, &detail);
}

#[test]
fn criterion_5_reversal_contrast() {
    let c1 = resolve_code("C1").unwrap();
    let rep_odd = family("rep_odd").unwrap();
    let violating = scan_eahb(&rep_odd, &c1, 3..=99).unwrap();
    let satisfying = reversed_scan_eahb(&c1, &rep_odd, 3..=99).unwrap();

    let mut csv = String::from("n,phi_rep_odd_then_c1,phi_c1_then_rep_odd\n");
    let mut ok = violating.rows.len() == 49 && satisfying.rows.len() == 49;
    for (v, s) in violating.rows.iter().zip(&satisfying.rows) {
        ok &= v.n == s.n;
        ok &= v.status == BoundStatus::Violated && s.status == BoundStatus::Satisfied;
        ok &= v.phi > 1.0 && 1.0 > s.phi;
        writeln!(csv, "{},{:.12},{:.12}", v.n, v.phi, s.phi).unwrap();
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("hamming_efficiency.csv");
    std::fs::write(&path, csv).unwrap();
    let first = (violating.rows[0].phi, satisfying.rows[0].phi);
    let last = (violating.rows[48].phi, satisfying.rows[48].phi);
    let detail = format!(
        "odd n in 3..=99: φ(rep_odd▷C1) {:.4}..{:.4} > 1 > φ(C1▷rep_odd) {:.4}..{:.4}; csv {}",
        first.0,
        last.0,
        first.1,
        last.1,
        path.display()
    );
    report(5, "reversal contrast", ok, &detail);
}

#[test]
fn criterion_6_saturation_audits() {
    let mut ok = true;
    let mut rows = 0;
    let mut detail = String::new();
    for &((n, k, d), (lo, hi)) in GRIESMER_AUDITS {
        let ccode = ClassicalCode::new(n, k, d, 4).unwrap();
        for row in griesmer_family_audit(&ccode, lo..=hi).unwrap() {
            rows += 1;
            let hit = row.verdict.is_saturated() && row.consistent();
            ok &= hit;
            if !hit {
                write!(detail, "griesmer {} MISS; ", row.code).unwrap();
            }
        }
    }
    for &((n, k, d), (lo, hi)) in PLOTKIN_AUDITS {
        let ccode = ClassicalCode::new(n, k, d, 4).unwrap();
        for row in plotkin_family_audit(&ccode, lo..=hi).unwrap() {
            rows += 1;
            let hit = row.verdict.is_saturated() && row.consistent();
            ok &= hit;
            if !hit {
                write!(detail, "plotkin {} MISS; ", row.code).unwrap();
            }
        }
    }
    // predicate and verdict must also agree where saturation fails
    let big = ClassicalCode::new(21, 3, 16, 4).unwrap();
    let outside = griesmer_family_audit(&big, 16..=16).unwrap();
    ok &= outside.iter().all(|r| r.consistent() && !r.predicate);
    write!(detail, "{rows} saturated rows, predicate ⟺ verdict on every row").unwrap();
    report(6, "saturation audits", ok, &detail);
}

/// (a) bound implications, k = 1 trio and φ agreement on the q = 2 grid n ≤ 30.
fn bound_grid() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut tuples = 0;
    for n in 1..=30u64 {
        for k in 1..=n {
            for c in 0..=(n - k) {
                for d in 1..=n {
                    tuples += 1;
                    let code = EaCode::new(n, k, Some(d), c)
                        .unwrap()
                        .with_degeneracy(Degeneracy::Nondegenerate);
                    let singleton = ea_singleton(&code).unwrap().status;
                    let griesmer = ea_griesmer(&code).unwrap().status;
                    let plotkin = linear_ea_plotkin(&code).unwrap().status;
                    if griesmer.holds() && !(singleton.holds() && plotkin.holds()) {
                        failures.push(format!("implication {code}"));
                    }
                    if k == 1 && !(singleton == griesmer && griesmer == plotkin) {
                        failures.push(format!("trio {code}: {singleton:?} {griesmer:?} {plotkin:?}"));
                    }
                    let hamming = ea_hamming(&code).unwrap().status;
                    if let Ok(phi) = hamming_efficiency(&code) {
                        if (phi > 1.0) != (hamming == BoundStatus::Violated) {
                            failures.push(format!("phi {code}"));
                        }
                    }
                }
            }
        }
    }
    (tuples, failures)
}

/// (b) Order-independent ebit counts.
fn order_invariance_grid() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut cases = 0;
    let non_div = Some(Procedure::NonDivisible);
    // [[n,k;c]] and [[n+m,k+m;c]]
    for n in 2..=20u64 {
        for k in 1..n {
            for c in 0..=(n - k) {
                for m in 1..=10u64 {
                    if n % (k + m) == 0 || (n + m) % k == 0 {
                        continue;
                    }
                    cases += 1;
                    let a = EaCode::new(n, k, None, c).unwrap();
                    let b = EaCode::new(n + m, k + m, None, c).unwrap();
                    let ab = concat(&a, &b, None).unwrap();
                    let ba = concat(&b, &a, None).unwrap();
                    let expected = c * (k + m + n);
                    if ab.code.c() != expected || ba.code.c() != expected {
                        failures.push(format!("thm6 {a} {b}"));
                    }
                }
            }
        }
    }
    // the two extensions of [[n,k;c]]
    for n in 2..=20u64 {
        for k in 2..=n {
            for c in 0..=(n - k) {
                if (n + 1) % (k - 1) == 0 || n % k == 0 {
                    continue;
                }
                cases += 1;
                let (e1, e2) = eaqecc::code::extend_code(&EaCode::new(n, k, None, c).unwrap());
                let (e1, e2) = (e1.unwrap(), e2.unwrap());
                let x = concat(&e1, &e2, non_div).unwrap().code.c();
                let y = concat(&e2, &e1, non_div).unwrap().code.c();
                if x != (n + k) * (c + 1) || y != x {
                    failures.push(format!("thm7 n={n} k={k} c={c}"));
                }
            }
        }
    }
    // [[n,1;n-1]] and [[m,1;m-1]]
    for n in 3..=25u64 {
        for m in 3..=25u64 {
            cases += 1;
            let a = EaCode::new(n, 1, None, n - 1).unwrap();
            let b = EaCode::new(m, 1, None, m - 1).unwrap();
            let r = both_orders(&a, &b).unwrap();
            if r.forward.code.c() != n * m - 1 || r.ebit_difference != 0 {
                failures.push(format!("thm8 n={n} m={m}"));
            }
        }
    }
    (cases, failures)
}

/// (c) Derived pairs `[[n-c1,k;c1]]`, `[[n-c2,k;c2]]`.
fn derived_pair_grid() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 2..=30u64 {
        for k in 1..n {
            for c2 in 1..=(n - k) {
                for c1 in 0..c2 {
                    let (Ok(a), Ok(b)) = (EaCode::new(n - c1, k, None, c1), EaCode::new(n - c2, k, None, c2)) else {
                        continue;
                    };
                    let forward_divisible = (n - c1) % k == 0;
                    let reverse_divisible = (n - c2) % k == 0;
                    let diff = both_orders(&a, &b).unwrap().ebit_difference;
                    // (n/k - 1)(c2 - c1) is an integer since k | c2 - c1 here
                    let expected = match (forward_divisible, reverse_divisible) {
                        (true, true) => ((n - k) * (c2 - c1) / k) as i64,
                        (false, false) => ((n - k) * (c2 - c1)) as i64,
                        _ => continue,
                    };
                    cases += 1;
                    if diff != expected || diff <= 0 {
                        failures.push(format!("thm5 {a} {b}: {diff} vs {expected}"));
                    }
                }
            }
        }
    }
    (cases, failures)
}

/// (d) perfect-code polynomials against pattern enumeration.
fn oracle_grid() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=5u64 {
        for t in 0..=2u64.min(n) {
            cases += 1;
            let direct = perfect_t_polynomial(n, t).unwrap();
            let set = CorrectableSet::all_up_to_weight(n as usize, t as usize);
            if direct.coefficients() != polynomial_from_set(&set).coefficients() {
                failures.push(format!("oracle n={n} t={t}"));
            }
        }
    }
    (cases, failures)
}

/// (e) pseudothresholds survive self-composition.
fn self_composition() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    for name in ["five13", "four131", "rep3132"] {
        let f = named_polynomial(name).unwrap();
        let once = pseudothreshold(&f, BISECTION_TOL).unwrap();
        let twice = pseudothreshold(&compose(&f, &f), BISECTION_TOL).unwrap();
        let same = match (once, twice) {
            (Some(a), Some(b)) => (a - b).abs() <= 2.0 * BISECTION_TOL,
            (None, None) => true,
            _ => false,
        };
        if !same {
            failures.push(format!("{name}: {once:?} vs {twice:?}"));
        }
    }
    (3, failures)
}

#[test]
fn criterion_7_property_suites() {
    type Suite = fn() -> (usize, Vec<String>);
    let suites: [(&str, Suite); 5] = [
        ("a bounds", bound_grid),
        ("b thm6-8", order_invariance_grid),
        ("c thm5", derived_pair_grid),
        ("d oracle", oracle_grid),
        ("e self-composition", self_composition),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (name, suite) in suites {
        let (cases, failures) = suite();
        ok &= failures.is_empty() && cases > 0;
        write!(detail, "[{name}: {}/{cases}", cases - failures.len().min(cases)).unwrap();
        if let Some(first) = failures.first() {
            write!(detail, ", first failure {first}").unwrap();
        }
        detail.push_str("] ");
    }
    report(7, "property suites", ok, &detail);
}

#[test]
fn criterion_8_repetition_closure() {
    let odd: Vec<u64> = (3..=15).step_by(2).collect();
    let mut chains = 0;
    let mut ok = true;
    for &a in &odd {
        for &b in &odd {
            let mut levels = vec![vec![a, b]];
            levels.extend(odd.iter().map(|&c| vec![a, b, c]));
            for indices in levels {
                chains += 1;
                let chain = rep_odd_chain(&indices).unwrap();
                let product: u64 = indices.iter().product();
                ok &= chain.code().n() == product && chain.code().c() == product - 1;
                ok &= saturation_trio(chain.code()).unwrap();
            }
        }
    }
    let rep_even = family("rep_even").unwrap();
    let evens = rep_even.indices(4..=110);
    for &n in &evens {
        ok &= !saturation_trio(&rep_even.member(n).unwrap()).unwrap();
    }
    let detail = format!(
        "{chains} rep_odd chains (odd n ≤ 15, up to 3 levels) saturate; {} even members [[n,1,n-1;n-1]] do not",
        evens.len()
    );
    report(8, "repetition closure", ok, &detail);
}
