//! End-to-end acceptance gate.
//!
//! Each test here is one shipped claim about the verifier and the series
//! library behind it, checked at full advertised strength (orders, grids,
//! timing). Every test prints a single `PASS` line on success; a failing
//! criterion shows up as a failing test.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use qseries::bailey::{builtin_pair, chain_step, limit_identity, Rho};
use qseries::catalog::eval_named;
use qseries::exp::binom2;
use qseries::indefinite::{f_indef, hm_decomposition};
use qseries::products::poch_infinite;
use qseries::{exp, EqOutcome, Exp, Monomial, QSeries};
use qverify::registry::{builtin_suite, parse_suite, Identity};
use qverify::report::Status;
use qverify::runner::run_one;

fn by_name(name: &str) -> &'static Identity {
    builtin_suite()
        .iter()
        .find(|id| id.name == name)
        .unwrap_or_else(|| panic!("identity {name} is not registered"))
}

/// Run one registered identity (optionally overriding its order) and demand
/// status `ok`; returns the elapsed milliseconds.
fn run_ok(name: &str, order: Option<i64>) -> u64 {
    let r = run_one(by_name(name), order);
    assert_eq!(
        r.status,
        Status::Ok,
        "{name} @{}: status {:?}, mismatch {:?}, detail {:?}",
        r.order,
        r.status,
        r.first_mismatch,
        r.detail
    );
    r.ms
}

fn assert_eq_to(a: &QSeries, b: &QSeries, order: i64, what: &str) {
    match a
        .eq_up_to(b, exp(order))
        .unwrap_or_else(|e| panic!("{what}: comparison failed: {e}"))
    {
        EqOutcome::Equal => {}
        EqOutcome::MismatchAt { exp: e, lhs, rhs } => {
            panic!("{what}: first mismatch at q^({e}): {lhs} vs {rhs}")
        }
    }
}

#[test]
fn acceptance_01_flagship_identity_through_q100() {
    let ms = run_ok("thm-main", None); // registered at order 100
    assert!(
        ms < 120_000,
        "flagship identity took {ms} ms (budget: 2 minutes)"
    );
    // Widening the order never flips a correct identity, so the same check
    // must also hold at the intermediate orders.
    for order in [25, 50] {
        run_ok("thm-main", Some(order));
    }
    println!("acceptance 01: flagship identity ok at orders 25/50/100 ({ms} ms at 100) .. PASS");
}

#[test]
fn acceptance_02_hm_decomposition_grid() {
    let x = Monomial::q_pow(exp(2)).neg();
    let y = Monomial::q_pow(exp(3)).neg();
    for (n, p) in [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)] {
        let (lhs, rhs) = hm_decomposition(n, p, &x, &y, exp(40))
            .unwrap_or_else(|e| panic!("decomposition ({n},{p}): {e}"));
        assert_eq_to(&lhs, &rhs, 40, &format!("decomposition ({n},{p})"));
    }
    println!("acceptance 02: f = g + theta decomposition ok through q^40 for five (n,p) .. PASS");
}

#[test]
fn acceptance_03_m_function_laws() {
    let names = [
        "m-reflect-1",
        "m-reflect-2",
        "m-reflect-3",
        "m-zshift-1",
        "m-zshift-2",
        "m-zshift-3",
        "m-zchange-1",
        "m-zchange-2",
        "m-zchange-3",
    ];
    assert!(
        names.len() >= 8,
        "need a grid of at least 8 parameter choices"
    );
    for name in names {
        run_ok(name, None); // registered at order 40, base q^5
    }
    println!(
        "acceptance 03: m-function laws ok through q^40 on {} parameter choices .. PASS",
        names.len()
    );
}

#[test]
fn acceptance_04_bailey_machinery() {
    let order40 = exp(40);
    for name in ["fifth_order", "early_conditions", "unit_z", "slater_L6"] {
        let pair = builtin_pair(name).unwrap();
        let chk = pair
            .verify(12, order40)
            .unwrap_or_else(|e| panic!("pair {name}: {e}"));
        assert!(
            chk.is_ok(),
            "pair {name} fails the defining relation: {:?}",
            chk.first_failure
        );

        let stepped = chain_step(&pair, &Rho::Finite(Monomial::from_int(-1)), &Rho::Infinite)
            .unwrap_or_else(|e| panic!("chain step on {name}: {e}"));
        let chk = stepped
            .verify(8, order40)
            .unwrap_or_else(|e| panic!("stepped {name}: {e}"));
        assert!(
            chk.is_ok(),
            "stepped pair {name} fails the relation: {:?}",
            chk.first_failure
        );
    }

    // The double-infinite limit of the fifth-order pair is exactly the
    // registered double-sum expansion of the series f1.
    let sixty = exp(60);
    let fifth = builtin_pair("fifth_order").unwrap();
    let (lhs, rhs) = limit_identity(&fifth, &Rho::Infinite, &Rho::Infinite, sixty).unwrap();
    assert_eq_to(&lhs, &rhs, 60, "fifth-order limit identity");
    let f1 = eval_named("f1", &[], sixty).unwrap();
    assert_eq_to(&lhs, &f1, 60, "limit lhs vs the fifth-order series");
    let f1ds = eval_named("f1ds", &[], sixty).unwrap();
    let inv_euler = poch_infinite(&Monomial::q(), exp(1), sixty)
        .unwrap()
        .invert_to(sixty)
        .unwrap();
    assert_eq_to(
        &rhs,
        &f1ds.mul(&inv_euler),
        60,
        "limit rhs vs the double sum / (q)_inf",
    );

    // Rebasing the second pair to q^2 and taking the same limit yields the
    // double-sum expansion behind the J1 generating function.
    let early2 = builtin_pair("early_conditions")
        .unwrap()
        .rebased(2)
        .unwrap();
    let (lhs, rhs) = limit_identity(&early2, &Rho::Infinite, &Rho::Infinite, sixty).unwrap();
    assert_eq_to(&lhs, &rhs, 60, "rebased limit identity");
    let j1 = eval_named("J1", &[], sixty).unwrap();
    let with_pref = poch_infinite(&Monomial::q().neg(), exp(2), sixty)
        .unwrap()
        .mul(&lhs);
    assert_eq_to(&with_pref, &j1, 60, "limit lhs vs the J1 series");
    let j1ds = eval_named("J1ds", &[], sixty).unwrap();
    let inv_even = poch_infinite(&Monomial::q_pow(exp(2)), exp(2), sixty)
        .unwrap()
        .invert_to(sixty)
        .unwrap();
    assert_eq_to(
        &rhs,
        &j1ds.mul(&inv_even),
        60,
        "limit rhs vs the rebased double sum",
    );

    println!("acceptance 04: four Bailey pairs (n<=12), chained pairs (n<=8), and both limit identities (q^60) .. PASS");
}

#[test]
fn acceptance_05_indefinite_theta_displays() {
    let names = [
        "f1-indef",
        "J1-indef",
        "Mk-1",
        "Mk-2",
        "b1k-sum-1",
        "b1k-sum-2",
        "b1k-sum-3",
        "b1k-jm-1",
        "b1k-jm-2",
        "b1k-jm-3",
        "V-f321",
        "W-f121",
        "Y-f146",
        "hikami",
    ];
    for name in names {
        run_ok(name, Some(40));
    }
    println!(
        "acceptance 05: {} indefinite-theta and multisum displays ok through q^40 .. PASS",
        names.len()
    );
}

#[test]
fn acceptance_06_transformation_suite() {
    let names = [
        "S-transform",
        "Sspec",
        "gleissberg",
        "gleissberg-mono",
        "T1-def",
        "T1-mixed",
        "T2-def",
        "T2-mixed",
        "mu-lerch",
        "3t-spec-qq",
        "3t-spec-qq2",
        "3t-spec-q2q",
        "3t-spec-q2q2",
        "3tspec-x-neg1",
        "3tspec-x-negq",
        "ww-spec",
        "bt-spec",
        "btbis-spec",
    ];
    for name in names {
        run_ok(name, Some(40));
    }
    println!(
        "acceptance 06: {} transformation identities ok through q^40 .. PASS",
        names.len()
    );
}

#[test]
fn acceptance_07_consistency_anchors() {
    for name in ["B1-anchor", "M1-phi", "T1-third", "T2-mu"] {
        run_ok(name, None); // registered at order 60
    }
    println!("acceptance 07: cross-family anchors ok through q^60 .. PASS");
}

#[test]
fn acceptance_08_oracles_and_brute_force() {
    run_ok("euler-pentagonal", None);
    run_ok("jacobi-triple-product", None);

    // Independent rectangle-scan brute force for the quadrant difference
    // f_{a,b,c}(x, y) = (sum_{r,s>=0} - sum_{r,s<0}) (-x)^r (-y)^s q^{aC(r,2)+brs+cC(s,2)}.
    fn brute(a: i64, b: i64, c: i64, x: &Monomial, y: &Monomial, order: Exp) -> QSeries {
        let negx = x.neg();
        let negy = y.neg();
        let mut acc = QSeries::zero().truncated(order);
        let w = 40i64;
        for r in -w..=w {
            for s in -w..=w {
                let positive = r >= 0 && s >= 0;
                if !positive && !(r < 0 && s < 0) {
                    continue;
                }
                let e = exp(a * binom2(r) + b * r * s + c * binom2(s));
                let mut t = negx
                    .pow(r as i32)
                    .unwrap()
                    .mul(&negy.pow(s as i32).unwrap())
                    .mul_q_pow(e);
                if !positive {
                    t = t.neg();
                }
                acc = acc.add(&QSeries::from_monomial(&t).truncated(order));
            }
        }
        acc
    }

    // Deterministically seeded xorshift64 for the random parameter draws.
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };

    for _ in 0..6 {
        let a = 1 + (next() % 3) as i64;
        let b = 1 + (next() % 3) as i64;
        let c = 1 + (next() % 3) as i64;
        let mut x = Monomial::q_pow(exp(1 + (next() % 4) as i64));
        if next() % 2 == 0 {
            x = x.neg();
        }
        let mut y = Monomial::q_pow(exp(1 + (next() % 4) as i64));
        if next() % 2 == 0 {
            y = y.neg();
        }
        let fast = f_indef(a, b, c, &x, &y, exp(30))
            .unwrap_or_else(|e| panic!("f_({a},{b},{c}) at x={x}, y={y}: {e}"));
        let slow = brute(a, b, c, &x, &y, exp(30));
        assert_eq_to(
            &fast,
            &slow,
            30,
            &format!("f_({a},{b},{c}) at x={x}, y={y}"),
        );
    }

    println!("acceptance 08: classical oracles (q^60) and 6 random antidiagonal-vs-brute-force draws (q^30) .. PASS");
}

#[test]
fn acceptance_09_fault_injection_is_detected() {
    // A perturbed copy of a true identity must fail exactly at the
    // perturbation exponent: multiply the right side by (1 + q^(N-1)) where
    // N is the registered order. The five bases all have valuation 0 on the
    // right, so the first discrepancy lands at N-1 precisely.
    for name in ["fofq", "Sspec", "T1-def", "euler-pentagonal", "X-m"] {
        let id = by_name(name);
        let pert = id.order - 1;
        let line = format!(
            "{}-pert @{} : {} == ({})*(1 + q^{})",
            id.name, id.order, id.lhs, id.rhs, pert
        );
        let ids = parse_suite(&line).unwrap_or_else(|e| panic!("{name}-pert reparse: {e:?}"));
        let r = run_one(&ids[0], None);
        assert_eq!(
            r.status,
            Status::Fail,
            "{name}-pert: expected a detected failure, got {:?} (detail {:?})",
            r.status,
            r.detail
        );
        let m = r
            .first_mismatch
            .expect("failed identity must carry a first mismatch");
        assert_eq!(
            m.exponent,
            pert.to_string(),
            "{name}-pert: first mismatch should sit at the perturbation exponent"
        );
        assert_ne!(
            m.lhs, m.rhs,
            "{name}-pert: mismatch must show differing coefficients"
        );
    }
    println!("acceptance 09: five perturbed identities each fail at the injected exponent .. PASS");
}

#[test]
fn acceptance_10_parallel_determinism() {
    let bin = env!("CARGO_BIN_EXE_verify");
    let dir = std::env::temp_dir();
    let paths = [
        dir.join("qverify-acceptance-jobs1.json"),
        dir.join("qverify-acceptance-jobs8.json"),
    ];
    for (jobs, path) in ["1", "8"].iter().zip(&paths) {
        let out = std::process::Command::new(bin)
            .args(["--order", "20", "--jobs", jobs, "--json"])
            .arg(path)
            .output()
            .expect("failed to spawn the verify binary");
        assert!(
            out.status.success(),
            "verify --jobs {jobs} exited with {:?}\nstderr: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
    }

    let mut values = Vec::new();
    for path in &paths {
        let text = std::fs::read_to_string(path).expect("JSON report must exist");
        let mut v: serde_json::Value =
            serde_json::from_str(&text).expect("report must be valid JSON");
        for item in v.as_array_mut().expect("report must be an array") {
            let obj = item
                .as_object_mut()
                .expect("report entries must be objects");
            obj.insert("ms".into(), serde_json::Value::from(0));
        }
        let _ = std::fs::remove_file(path);
        values.push(v);
    }
    assert_eq!(values[0], values[1], "reports must agree up to timing");
    let n = values[0].as_array().unwrap().len();
    println!("acceptance 10: --jobs 1 and --jobs 8 agree on all {n} reports modulo timing .. PASS");
}
