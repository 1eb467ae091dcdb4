//! Parse NEC signatures, print their measure, kernel genus and canonical generators.

use nec_ovals::parse_signature;

fn main() {
    let inputs = [
        ("(0;+;[2,7];{()})", 14),
        ("(0;+;[2,2,4,4];{()^2})", 4),
        ("(2;-;[3];{})", 3),
        ("(1;-;[];{(2,2)})", 2),
    ];
    for (text, order) in inputs {
        let sig = parse_signature(text).expect("well-formed signature");
        let generators: Vec<String> = sig
            .canonical_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        println!("{sig}");
        println!("  measure      {}", sig.orbifold_measure());
        match sig.kernel_genus(order) {
            Ok(p) => println!("  genus at M={order}  {p}"),
            Err(e) => println!("  genus at M={order}  {e}"),
        }
        println!("  generators   {}", generators.join(" "));
    }

    for bad in ["(0;+;[2,,7];{()})", "(0;-;[];{()})", "(0;+;[1];{})"] {
        println!("{bad:<20} {}", parse_signature(bad).unwrap_err());
    }
}
