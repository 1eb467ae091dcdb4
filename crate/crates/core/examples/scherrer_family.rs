//! Actions of `C_4` with `r` extra involution points and `k` boundary cycles,
//! and the `C_4m` family, all attaining `|F| + 2|V| = p + 2`.

use nec_ovals::{full_report, scherrer_extremal, CyclicEpimorphism, NecSignature, Sign};

fn main() {
    println!("C_4, x = (2,..,2,1,3), e = 0");
    for r in [0usize, 2, 4] {
        for k in 1..=3usize {
            let periods = std::iter::repeat_n(2, r).chain([4, 4]).collect();
            let sig = NecSignature::new(0, Sign::Plus, periods, k as u64).unwrap();
            let mut x = vec![2; r];
            x.extend([1, 3]);
            let epi = CyclicEpimorphism::new(sig, 4, x, vec![0; k], vec![2; k], vec![]).unwrap();
            let report = full_report(&epi).unwrap();
            let inv = report.involution.unwrap();
            println!(
                "  r={r} k={k}  p={:<3} F={:<3} V={:<3} {} = {}",
                report.kernel_genus,
                inv.isolated_total,
                inv.oval_total,
                inv.scherrer_lhs,
                inv.scherrer_rhs
            );
        }
    }

    for m in [4u64, 8, 12] {
        let rows = scherrer_extremal(m, m).unwrap();
        println!(
            "M={m}: {} extremal epimorphisms onto C_{m} with p <= {m}",
            rows.len()
        );
        for row in rows.iter().filter(|r| r.signature.periods() == [m, m]) {
            println!("  {} {} p={}", row.signature, row.images, row.kernel_genus);
        }
    }
}
