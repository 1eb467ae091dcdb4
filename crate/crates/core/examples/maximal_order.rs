//! The maximal cyclic actions: `C_2p` on odd genus `p` and `C_2(p-1)` on even
//! genus `p`, with their fixed points and the single oval of the involution.

use nec_ovals::{full_report, max_cyclic_order, parse_signature, CyclicEpimorphism};

fn main() {
    println!(
        "{:>3} {:>4} {:>4} {:>3} {:>3}  oval",
        "p", "M", "max", "F", "V"
    );
    for p in 3..=9u64 {
        let (m, x, e) = if p % 2 == 1 {
            (2 * p, vec![p, 2], p - 2)
        } else {
            (2 * (p - 1), vec![p - 1, 1], p - 2)
        };
        let sig = parse_signature(&format!(
            "(0;+;[2,{}];{{()}})",
            if p % 2 == 1 { p } else { m }
        ))
        .unwrap();
        let epi = CyclicEpimorphism::new(sig, m, x, vec![e], vec![m / 2], vec![]).unwrap();
        let report = full_report(&epi).unwrap();
        let inv = report.involution.unwrap();
        let twist = if inv.per_cycle[0].twisted {
            "twisted"
        } else {
            "untwisted"
        };
        let max = max_cyclic_order(p, 12).unwrap();
        println!(
            "{p:>3} {m:>4} {max:>4} {:>3} {:>3}  {twist}",
            inv.isolated_total, inv.oval_total
        );
    }
}
