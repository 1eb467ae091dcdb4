//! Fixed-point data of cyclic automorphism groups of closed non-orientable
//! Klein surfaces.
//!
//! An action of `C_M = ⟨t⟩` on a surface of cross-cap genus `p ≥ 3` is given
//! by an NEC signature and a smooth epimorphism `θ: Γ → C_M` whose kernel is
//! the surface group. From that data this crate computes the isolated fixed
//! points of each power `t^i`, the ovals of the involution `t^{M/2}` with their
//! twist type, and the Scherrer inequality `|F| + 2|V| ≤ p + 2`. Every closed
//! form has an independent brute-force counterpart in [`oracle`].
//!
//! ```
//! use nec_ovals::{parse_signature, CyclicEpimorphism, full_report};
//!
//! let sig = parse_signature("(0;+;[2,7];{()})").unwrap();
//! let epi = CyclicEpimorphism::new(sig, 14, vec![7, 2], vec![5], vec![7], vec![]).unwrap();
//! let involution = full_report(&epi).unwrap().involution.unwrap();
//! assert_eq!((involution.isolated_total, involution.oval_total), (7, 1));
//! assert!(involution.per_cycle[0].twisted);
//! ```

pub mod census;
pub mod cli;
pub mod epimorphism;
pub mod error;
pub mod fixedpoints;
pub mod oracle;
pub mod output;
pub mod signature;
mod text;

pub use census::{
    census, enumerate_epimorphisms, enumerate_signatures, max_cyclic_order, scherrer_extremal,
    CensusRow,
};
pub use epimorphism::{
    image_order, parse_map, subgroup_generated, validate, CyclicEpimorphism, ValidationReport,
};
pub use error::{Error, ParseError, Result};
pub use fixedpoints::{
    full_report, isolated_fixed_points, oval_count, scherrer_check, twist_classification,
    FixedPointReport,
};
pub use oracle::{cross_check, OracleTranscript};
pub use signature::{format_signature, parse_signature, NecSignature, Rational, Sign};
