//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p nec-ovals --test acceptance -- --nocapture` to see them.

use std::time::{Duration, Instant};

use nec_ovals::census::{census, CensusOptions};
use nec_ovals::oracle::{
    coset_orbit_fixed_points, exponents, oval_classes_doublecoset, twist_oracle,
};
use nec_ovals::{
    full_report, isolated_fixed_points, max_cyclic_order, parse_signature, CyclicEpimorphism,
    FixedPointReport, NecSignature, Sign,
};
use num_integer::Integer;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn verdict(id: u32, title: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let in_time = elapsed < limit;
    let ok = failures.is_empty() && in_time;
    println!(
        "[{}] criterion {id}: {title} ({:.3}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    assert!(in_time, "criterion {id} exceeded {limit:?}: {elapsed:?}");
}

fn report(sig: &str, m: u64, x: Vec<u64>, e: Vec<u64>) -> FixedPointReport {
    let sig = parse_signature(sig).unwrap();
    let k = sig.empty_cycles() as usize;
    let epi = CyclicEpimorphism::new(sig, m, x, e, vec![m / 2; k], vec![]).unwrap();
    full_report(&epi).unwrap()
}

#[test]
fn criterion_1_maximal_order_odd_genus() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [3u64, 5, 7, 9, 11] {
        let r = report(
            &format!("(0;+;[2,{p}];{{()}})"),
            2 * p,
            vec![p, 2],
            vec![p - 2],
        );
        let inv = r.involution.as_ref().unwrap();
        let slack = inv.scherrer_rhs as i64 - inv.scherrer_lhs as i64;
        if r.kernel_genus != p
            || inv.isolated_total != p
            || inv.oval_total != 1
            || !inv.per_cycle[0].twisted
            || slack != 0
        {
            failures.push(format!("p={p}: {inv:?}"));
        }
    }
    verdict(
        1,
        "odd p: p fixed points, 1 twisted oval, slack 0",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_maximal_order_even_genus() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [4u64, 6, 8, 10] {
        let m = 2 * (p - 1);
        let r = report(
            &format!("(0;+;[2,{m}];{{()}})"),
            m,
            vec![p - 1, 1],
            vec![p - 2],
        );
        let inv = r.involution.as_ref().unwrap();
        if r.kernel_genus != p
            || inv.isolated_total != p
            || inv.oval_total != 1
            || inv.per_cycle[0].twisted
        {
            failures.push(format!("p={p}: {inv:?}"));
        }
    }
    verdict(
        2,
        "even p: p fixed points, 1 untwisted oval",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_3_c4_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for r in [0u64, 2, 4] {
        for k in [1u64, 2, 3] {
            let periods: Vec<String> = std::iter::repeat_n("2".to_string(), r as usize)
                .chain(["4".into(), "4".into()])
                .collect();
            let sig = format!("(0;+;[{}];{{()^{k}}})", periods.join(","));
            let mut x = vec![2; r as usize];
            x.extend([1, 3]);
            let rep = report(&sig, 4, x, vec![0; k as usize]);
            let inv = rep.involution.as_ref().unwrap();
            if inv.isolated_total != 2 * r + 2
                || inv.oval_total != 2 * k
                || rep.kernel_genus != 4 * k + 2 * r
                || !inv.scherrer_equality
            {
                failures.push(format!("r={r} k={k}: p={} {inv:?}", rep.kernel_genus));
            }
        }
    }
    verdict(
        3,
        "C_4: F = 2r+2, V = 2k, p = 4k+2r, Scherrer equality",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_4_oval_count_routes_agree() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in (2..=100u64).step_by(2) {
        let n = m / 2;
        for v in 0..m {
            let doublecoset = oval_classes_doublecoset(m, v).unwrap();
            let by_exponent = n / exponents(m, v).unwrap().delta;
            let closed = n.gcd(&v);
            if doublecoset != closed || by_exponent != closed {
                failures.push(format!(
                    "M={m} v={v}: {doublecoset} / {by_exponent} / {closed}"
                ));
            }
        }
    }
    verdict(
        4,
        "double cosets = gcd(N, v) = N/delta, all even M <= 100",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_5_twist_routes_agree() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in (2..=100u64).step_by(2) {
        let n = m / 2;
        for v in 0..m {
            let e = exponents(m, v).unwrap();
            if e.epsilon != e.delta && e.epsilon != 2 * e.delta {
                failures.push(format!("M={m} v={v}: {e:?}"));
            }
            if twist_oracle(m, v).unwrap() != (m.gcd(&v) == n.gcd(&v)) {
                failures.push(format!("M={m} v={v}: twist mismatch"));
            }
        }
    }
    verdict(
        5,
        "twisted iff gcd(2N,v) = gcd(N,v); epsilon in {delta, 2 delta}",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_6_macbeath_oracle_over_census() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rows = 0;
    for m in 1..=20u64 {
        for row in census(m, 12, &CensusOptions::default()).unwrap() {
            rows += 1;
            let epi = &row.epimorphism;
            for i in 1..m {
                let oracle =
                    coset_orbit_fixed_points(epi.signature(), m, epi.x_images(), i).unwrap();
                let formula = isolated_fixed_points(epi.signature(), m, i).unwrap();
                if oracle != formula {
                    failures.push(format!(
                        "{} {} t^{i}: {oracle} vs {formula}",
                        row.signature, row.images
                    ));
                }
            }
        }
    }
    if rows == 0 {
        failures.push("census produced no rows".into());
    }
    println!("    {rows} census rows checked");
    verdict(
        6,
        "coset orbits = Macbeath count, census M <= 20, p <= 12",
        &failures,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_7_maximal_order() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in 3..=8u64 {
        let expected = if p % 2 == 1 { 2 * p } else { 2 * (p - 1) };
        match max_cyclic_order(p, 12) {
            Ok(m) if m == expected => {}
            other => failures.push(format!("p={p}: {other:?}, expected {expected}")),
        }
    }
    verdict(
        7,
        "max order 2p (odd p), 2(p-1) (even p), p in 3..=8",
        &failures,
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_8_scherrer_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in (2..=20u64).step_by(2) {
        for row in census(m, 12, &CensusOptions::default()).unwrap() {
            let inv = row.report.involution.as_ref().unwrap();
            if inv.scherrer_lhs > inv.scherrer_rhs {
                failures.push(format!("{} M={m} {}: {inv:?}", row.signature, row.images));
            }
        }
    }
    for mult in 1..=3u64 {
        let m = 4 * mult;
        let family = NecSignature::new(0, Sign::Plus, vec![m, m], 1).unwrap();
        let rows = census(m, m, &CensusOptions::default()).unwrap();
        let hit = rows.iter().any(|r| {
            r.signature == family
                && r.epimorphism.x_images() == [1, m - 1]
                && r.epimorphism.e_images() == [0]
                && r.scherrer_equality
        });
        if !hit {
            failures.push(format!("no equality row for {family} at M={m}"));
        }
    }
    verdict(
        8,
        "|F| + 2|V| <= p + 2 on every row; C_4m family attains it",
        &failures,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_9_parser() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let strategy = (
        0u64..8,
        proptest::bool::ANY,
        proptest::collection::vec(2u64..200, 0..8),
        0u64..6,
        proptest::collection::vec(proptest::collection::vec(2u64..12, 1..4), 0..3),
    )
        .prop_map(|(g, plus, periods, k, cycles)| {
            let sign = if plus || g == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            NecSignature::with_cycles(g, sign, periods, k, cycles).unwrap()
        });
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    for _ in 0..1000 {
        let sig = strategy.new_tree(&mut runner).unwrap().current();
        let text = sig.to_string();
        match parse_signature(&text) {
            Ok(back) if back == sig => {}
            other => failures.push(format!("{text}: {other:?}")),
        }
    }

    let malformed = [
        ("", 1),
        ("(0;+;[2,7];{()}", 16),
        ("(0;+;[2,,7];{()})", 9),
        ("(0;x;[];{})", 4),
        ("(0;-;[];{()})", 4),
        ("(0;+;[1];{})", 7),
        ("(0;+;[];{()})junk", 14),
        ("(a;+;[];{})", 2),
    ];
    for (text, pos) in malformed {
        match parse_signature(text) {
            Err(e) if e.position == pos && e.to_string().contains(&format!("position {pos}")) => {}
            other => failures.push(format!("{text:?}: {other:?}, expected error at {pos}")),
        }
    }
    verdict(
        9,
        "1000 random round trips; positioned parse errors",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}
