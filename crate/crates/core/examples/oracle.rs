//! Recount ovals, twists and fixed points by brute force and compare them
//! with the closed formulas.

use nec_ovals::oracle::{cross_check, sweep};
use nec_ovals::{parse_map, parse_signature, CyclicEpimorphism};

fn main() {
    let sig = parse_signature("(0;+;[2,7];{()})").unwrap();
    let epi = CyclicEpimorphism::from_map(sig, 14, &parse_map("x=7,2;e=5").unwrap()).unwrap();
    let transcript = cross_check(&epi).unwrap();
    for c in &transcript.per_cycle {
        println!(
            "v={} delta={} epsilon={} classes={}/{} twisted={}",
            c.v,
            c.delta,
            c.epsilon,
            c.class_count_doublecoset,
            c.class_count_exponent,
            c.twisted_by_theta_prime
        );
    }
    for row in &transcript.per_power_fixed {
        println!(
            "t^{:<2} oracle {:>2} formula {:>2}",
            row.power, row.total, row.formula
        );
    }
    println!("agreement: {}", transcript.agreement);

    for m in [12u64, 28, 100] {
        let s = sweep(m).unwrap();
        let twisted = s.records.iter().filter(|r| r.twisted_by_criterion).count();
        println!(
            "M={m}: {} values of v, {twisted} twisted, agreement {}",
            s.records.len(),
            s.agreement
        );
    }
}
