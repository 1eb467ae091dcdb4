//! Validate a hand-written map, then list every smooth epimorphism of a
//! signature onto `C_M`, with and without identifying `Aut(C_M)` orbits.

use nec_ovals::epimorphism::format_map;
use nec_ovals::{enumerate_epimorphisms, parse_map, parse_signature, validate, CyclicEpimorphism};

fn main() {
    let sig = parse_signature("(0;+;[2,2,2,4,4];{()})").unwrap();
    for text in ["x=2,2,2,1,3;e=0", "x=2,2,2,1,1;e=0"] {
        let epi = CyclicEpimorphism::from_map(sig.clone(), 4, &parse_map(text).unwrap()).unwrap();
        let report = validate(&epi);
        println!("{sig} M=4 {text}: valid={}", report.valid);
        for check in &report.checks {
            println!(
                "  {} {} {}",
                serde_json::to_string(&check.name)
                    .unwrap()
                    .trim_matches('"'),
                if check.passed { "pass" } else { "FAIL" },
                check.detail
            );
        }
    }

    let sig = parse_signature("(0;+;[2,7];{()})").unwrap();
    let all = enumerate_epimorphisms(&sig, 14, false);
    let classes = enumerate_epimorphisms(&sig, 14, true);
    println!(
        "{sig} onto C_14: {} epimorphisms, {} up to Aut",
        all.len(),
        classes.len()
    );
    for epi in &all {
        println!("  {}", format_map(epi));
    }
}
