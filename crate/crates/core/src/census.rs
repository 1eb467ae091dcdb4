//! Exhaustive enumeration of signatures and smooth epimorphisms onto `C_M`
//! for bounded kernel genus.

use std::ops::ControlFlow;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::epimorphism::{format_map, image_order, mul_mod, validate, CyclicEpimorphism};
use crate::error::{Error, Result};
use crate::fixedpoints::{full_report, FixedPointReport};
use crate::oracle::cross_check;
use crate::signature::{NecSignature, Rational, Sign};

/// Largest genus `max_cyclic_order` will search without an explicit cap.
pub const DEFAULT_GENUS_CAP: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub signature: NecSignature,
    pub modulus: u64,
    /// Map text, e.g. `x=7,2;e=5;c=7;a=;b=`.
    pub images: String,
    pub kernel_genus: u64,
    pub report: FixedPointReport,
    pub scherrer_equality: bool,
    /// `p + 2 - |F| - 2|V|`; absent for odd `M`.
    pub scherrer_slack: Option<i64>,
    /// Lexicographically least image tuple in its `Aut(C_M)` orbit.
    pub canonical: bool,
    /// Images re-sorted within blocks of equal periods and across cycles, for
    /// downstream deduplication under signature symmetries.
    pub shadow_key: String,
    #[serde(skip)]
    pub epimorphism: CyclicEpimorphism,
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    /// Emit only the canonical representative of each `Aut(C_M)` orbit.
    pub up_to_aut: bool,
    /// Run the oracle on every row; a disagreement or a Scherrer violation
    /// aborts the run.
    pub verify: bool,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

fn divisors_from_two(modulus: u64) -> Vec<u64> {
    (2..=modulus)
        .filter(|d| modulus.is_multiple_of(*d))
        .collect()
}

/// All signatures with empty period cycles only, periods dividing `M` (in
/// non-decreasing order), and kernel genus `M·μ + 2` an integer in
/// `[3, max_genus]`. Sorted.
pub fn enumerate_signatures(modulus: u64, max_genus: u64) -> Vec<NecSignature> {
    let mut out = Vec::new();
    if modulus == 0 || max_genus < 3 {
        return out;
    }
    let bound = Rational::new(max_genus as i64 - 2, modulus as i64);
    let divisors = divisors_from_two(modulus);
    for sign in [Sign::Plus, Sign::Minus] {
        let alpha = if sign == Sign::Plus { 2 } else { 1 };
        for genus in 0.. {
            if sign == Sign::Minus && genus == 0 {
                continue;
            }
            let base = Rational::from_integer(alpha * genus as i64 - 2);
            if base > bound {
                break;
            }
            for k in 0.. {
                let mu = base + Rational::from_integer(k);
                if mu > bound {
                    break;
                }
                let mut periods = Vec::new();
                extend_periods(
                    sign,
                    genus,
                    k as u64,
                    mu,
                    bound,
                    modulus,
                    max_genus,
                    &divisors,
                    0,
                    &mut periods,
                    &mut out,
                );
            }
        }
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_periods(
    sign: Sign,
    genus: u64,
    k: u64,
    mu: Rational,
    bound: Rational,
    modulus: u64,
    max_genus: u64,
    divisors: &[u64],
    start: usize,
    periods: &mut Vec<u64>,
    out: &mut Vec<NecSignature>,
) {
    if mu > Rational::from_integer(0) {
        let p = mu * Rational::from_integer(modulus as i64) + 2;
        if p.is_integer() && (3..=max_genus as i64).contains(&p.to_integer()) {
            out.push(NecSignature::new(genus, sign, periods.clone(), k).expect("periods are >= 2"));
        }
    }
    for (idx, &m) in divisors.iter().enumerate().skip(start) {
        let next = mu + Rational::from_integer(1) - Rational::new(1, m as i64);
        if next > bound {
            // larger periods only add more
            break;
        }
        periods.push(m);
        extend_periods(
            sign, genus, k, next, bound, modulus, max_genus, divisors, idx, periods, out,
        );
        periods.pop();
    }
}

/// Visits every valid epimorphism in lexicographic order of image tuples,
/// with reflections fixed at `t^{M/2}` and elliptic images restricted to
/// elements of the right order.
fn search(
    sig: &NecSignature,
    modulus: u64,
    mut visit: impl FnMut(CyclicEpimorphism) -> ControlFlow<()>,
) {
    if modulus == 0
        || sig.orbifold_measure() <= Rational::from_integer(0)
        || !sig.nonempty_cycles().is_empty()
    {
        return;
    }
    let k = sig.empty_cycles() as usize;
    if k > 0 && !modulus.is_multiple_of(2) {
        return;
    }
    let mut slots: Vec<Vec<u64>> = sig
        .periods()
        .iter()
        .map(|&m| {
            (0..modulus)
                .filter(|&u| image_order(modulus, u) == m)
                .collect()
        })
        .collect();
    let free = k + sig.orientation_generator_count();
    slots.extend(std::iter::repeat_with(|| (0..modulus).collect()).take(free));
    if slots.iter().any(Vec::is_empty) {
        return;
    }

    let n = sig.periods().len();
    let c_images = vec![modulus / 2; k];
    let mut cursor = vec![0usize; slots.len()];
    loop {
        let tuple: Vec<u64> = cursor.iter().zip(&slots).map(|(&i, s)| s[i]).collect();
        let epi = CyclicEpimorphism::new(
            sig.clone(),
            modulus,
            tuple[..n].to_vec(),
            tuple[n..n + k].to_vec(),
            c_images.clone(),
            tuple[n + k..].to_vec(),
        )
        .expect("slot counts match the signature");
        if validate(&epi).valid && visit(epi).is_break() {
            return;
        }
        // odometer, last slot fastest
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < slots[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
}

/// Units of `Z_M`.
pub fn units(modulus: u64) -> Vec<u64> {
    (1..modulus.max(2))
        .filter(|u| u.gcd(&modulus) == 1)
        .collect()
}

/// True iff the image tuple is the lexicographic minimum of its orbit under
/// `t ↦ t^u` for units `u`.
pub fn is_canonical(epi: &CyclicEpimorphism) -> bool {
    let m = epi.modulus();
    let tuple = epi.image_tuple();
    units(m).into_iter().all(|u| {
        let scaled: Vec<u64> = tuple.iter().map(|&a| mul_mod(a, u, m)).collect();
        tuple <= scaled
    })
}

/// All valid epimorphisms `Γ → C_M` in lexicographic order; with
/// `up_to_aut`, one canonical representative per `Aut(C_M)` orbit.
pub fn enumerate_epimorphisms(
    sig: &NecSignature,
    modulus: u64,
    up_to_aut: bool,
) -> Vec<CyclicEpimorphism> {
    let mut out = Vec::new();
    search(sig, modulus, |epi| {
        if !up_to_aut || is_canonical(&epi) {
            out.push(epi);
        }
        ControlFlow::Continue(())
    });
    out
}

fn exists_epimorphism(sig: &NecSignature, modulus: u64) -> bool {
    let mut found = false;
    search(sig, modulus, |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

fn shadow_key(epi: &CyclicEpimorphism) -> String {
    let mut x: Vec<(u64, u64)> = epi
        .signature()
        .periods()
        .iter()
        .copied()
        .zip(epi.x_images().iter().copied())
        .collect();
    x.sort_unstable();
    let mut e = epi.e_images().to_vec();
    e.sort_unstable();
    let join =
        |v: &mut dyn Iterator<Item = u64>| v.map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    format!(
        "{}|x={}|e={}|o={}",
        epi.signature(),
        join(&mut x.iter().map(|&(_, u)| u)),
        join(&mut e.into_iter()),
        join(&mut epi.orient_images().iter().copied())
    )
}

pub fn census_row(epi: CyclicEpimorphism) -> Result<CensusRow> {
    let report = full_report(&epi)?;
    let slack = report
        .involution
        .as_ref()
        .map(|inv| inv.scherrer_rhs as i64 - inv.scherrer_lhs as i64);
    Ok(CensusRow {
        signature: epi.signature().clone(),
        modulus: epi.modulus(),
        images: format_map(&epi),
        kernel_genus: report.kernel_genus,
        scherrer_equality: slack == Some(0),
        scherrer_slack: slack,
        canonical: is_canonical(&epi),
        shadow_key: shadow_key(&epi),
        report,
        epimorphism: epi,
    })
}

fn rows_for_signature(
    sig: &NecSignature,
    modulus: u64,
    opts: &CensusOptions,
) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for epi in enumerate_epimorphisms(sig, modulus, opts.up_to_aut) {
        let row = census_row(epi)?;
        if opts.verify {
            let transcript = cross_check(&row.epimorphism)?;
            if !transcript.agreement {
                return Err(Error::Disagreement(format!(
                    "{} {}: {}",
                    row.signature,
                    row.images,
                    transcript.first_disagreement.unwrap_or_default()
                )));
            }
            if row.scherrer_slack.is_some_and(|s| s < 0) {
                return Err(Error::Disagreement(format!(
                    "{} {}: Scherrer bound violated (slack {:?})",
                    row.signature, row.images, row.scherrer_slack
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Every valid (signature, epimorphism) pair onto `C_M` with kernel genus in
/// `[3, max_genus]`. Row order is deterministic regardless of worker count.
pub fn census(modulus: u64, max_genus: u64, opts: &CensusOptions) -> Result<Vec<CensusRow>> {
    let sigs = enumerate_signatures(modulus, max_genus);
    let run = || -> Result<Vec<CensusRow>> {
        let blocks = sigs
            .par_iter()
            .map(|sig| rows_for_signature(sig, modulus, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(blocks.into_iter().flatten().collect())
    };
    match opts.workers {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Structure(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Census rows whose central involution attains `|F| + 2|V| = p + 2`.
pub fn scherrer_extremal(modulus: u64, max_genus: u64) -> Result<Vec<CensusRow>> {
    if !modulus.is_multiple_of(2) {
        return Err(Error::OddOrder(modulus));
    }
    Ok(census(modulus, max_genus, &CensusOptions::default())?
        .into_iter()
        .filter(|r| r.scherrer_equality)
        .collect())
}

/// Largest `M ≤ 2p + 2` such that some smooth epimorphism onto `C_M` has a
/// kernel of genus exactly `p`.
pub fn max_cyclic_order(genus: u64, cap: u64) -> Result<u64> {
    if !(3..=cap).contains(&genus) {
        return Err(Error::GenusOutOfRange { genus, cap });
    }
    for modulus in (1..=2 * genus + 2).rev() {
        let found = enumerate_signatures(modulus, genus)
            .into_par_iter()
            .filter(|sig| sig.kernel_genus(modulus) == Ok(genus))
            .any(|sig| exists_epimorphism(&sig, modulus));
        if found {
            return Ok(modulus);
        }
    }
    unreachable!("(p;-;[];{{}}) always maps onto the trivial group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;
    use std::collections::HashSet;

    fn sig(s: &str) -> NecSignature {
        parse_signature(s).unwrap()
    }

    #[test]
    fn signatures_include_examples() {
        assert!(enumerate_signatures(14, 7).contains(&sig("(0;+;[2,7];{()})")));
        assert!(enumerate_signatures(4, 8).contains(&sig("(0;+;[2,2,4,4];{()})")));
    }

    #[test]
    fn signatures_respect_genus_bound() {
        let sigs = enumerate_signatures(4, 3);
        assert!(!sigs.is_empty());
        assert!(!sigs.contains(&sig("(0;+;[2,7];{()})")));
        assert!(!sigs.contains(&sig("(0;+;[2,2,4,4];{()})")));
        for s in &sigs {
            assert_eq!(s.orbifold_measure(), Rational::new(1, 4), "{s}");
        }
    }

    #[test]
    fn signatures_are_complete_for_small_case() {
        // brute force over a generous box at M = 6, max genus 8
        let m = 6;
        let mut expected = Vec::new();
        let divs = [2u64, 3, 6];
        for sign in [Sign::Plus, Sign::Minus] {
            for g in 0..6 {
                for k in 0..6 {
                    for a in 0..12usize {
                        for b in 0..12usize {
                            for c in 0..12usize {
                                let periods: Vec<u64> = std::iter::repeat_n(divs[0], a)
                                    .chain(std::iter::repeat_n(divs[1], b))
                                    .chain(std::iter::repeat_n(divs[2], c))
                                    .collect();
                                let Ok(s) = NecSignature::new(g, sign, periods, k) else {
                                    continue;
                                };
                                if let Ok(p) = s.kernel_genus(m) {
                                    if (3..=8).contains(&p) {
                                        expected.push(s);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        expected.sort();
        assert_eq!(enumerate_signatures(m, 8), expected);
    }

    #[test]
    fn maximal_order_has_one_class() {
        let s = sig("(0;+;[2,7];{()})");
        let raw = enumerate_epimorphisms(&s, 14, false);
        assert_eq!(raw.len(), 6);
        let canon = enumerate_epimorphisms(&s, 14, true);
        assert_eq!(canon.len(), 1);
        assert_eq!(canon[0].x_images()[0], 7);
        let known = CyclicEpimorphism::new(s, 14, vec![7, 2], vec![5], vec![7], vec![]).unwrap();
        assert!(raw.contains(&known));
    }

    #[test]
    fn c4_family_odd_r_has_no_inverse_pair() {
        let s = sig("(0;+;[2,2,2,4,4];{()})");
        let rows = enumerate_epimorphisms(&s, 4, false);
        assert!(!rows.is_empty());
        for e in &rows {
            let x = e.x_images();
            assert!(!(x[3] == 1 && x[4] == 3 && e.e_images() == [0]), "{e:?}");
            if e.e_images() == [0] {
                assert_eq!(x[3], x[4]);
            }
        }
    }

    #[test]
    fn minus_genus_one_onto_c2_is_empty() {
        assert!(enumerate_epimorphisms(&sig("(1;-;[];{})"), 2, false).is_empty());
    }

    #[test]
    fn output_is_lexicographic() {
        let rows = enumerate_epimorphisms(&sig("(0;+;[2,2,4,4];{()})"), 4, false);
        let tuples: Vec<_> = rows.iter().map(CyclicEpimorphism::image_tuple).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn canonical_rows_partition_raw_rows() {
        for m in 2..=12 {
            for s in enumerate_signatures(m, 8) {
                let raw = enumerate_epimorphisms(&s, m, false);
                let canon: HashSet<Vec<u64>> = enumerate_epimorphisms(&s, m, true)
                    .iter()
                    .map(|e| e.image_tuple())
                    .collect();
                for e in &raw {
                    let hits = units(m)
                        .into_iter()
                        .map(|u| e.scaled(u).image_tuple())
                        .filter(|t| canon.contains(t))
                        .collect::<HashSet<_>>();
                    assert_eq!(hits.len(), 1, "{s} M={m} {e:?}");
                }
            }
        }
    }

    #[test]
    fn unit_orbits_stay_valid() {
        for m in [4u64, 6, 8, 10] {
            for s in enumerate_signatures(m, 7) {
                for e in enumerate_epimorphisms(&s, m, true) {
                    for u in units(m) {
                        assert!(validate(&e.scaled(u)).valid);
                    }
                }
            }
        }
    }

    #[test]
    fn census_is_deterministic_across_workers() {
        let one = census(
            8,
            8,
            &CensusOptions {
                workers: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let many = census(
            8,
            8,
            &CensusOptions {
                workers: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!one.is_empty());
        assert_eq!(one, many);
    }

    #[test]
    fn extremal_examples() {
        let rows = scherrer_extremal(4, 8).unwrap();
        assert!(rows
            .iter()
            .any(|r| r.signature == sig("(0;+;[2,2,4,4];{()})")
                && r.kernel_genus == 8
                && r.report
                    .involution
                    .as_ref()
                    .is_some_and(|i| i.isolated_total == 6 && i.oval_total == 2)));
        let rows = scherrer_extremal(14, 7).unwrap();
        assert!(rows.iter().any(|r| r.signature == sig("(0;+;[2,7];{()})")));
        let rows = scherrer_extremal(8, 8).unwrap();
        assert!(rows.iter().any(|r| r.signature == sig("(0;+;[8,8];{()})")));
        assert_eq!(scherrer_extremal(7, 8).unwrap_err(), Error::OddOrder(7));
    }

    #[test]
    fn max_order_small() {
        assert_eq!(max_cyclic_order(3, DEFAULT_GENUS_CAP), Ok(6));
        assert_eq!(max_cyclic_order(4, DEFAULT_GENUS_CAP), Ok(6));
        assert!(matches!(
            max_cyclic_order(13, DEFAULT_GENUS_CAP),
            Err(Error::GenusOutOfRange { .. })
        ));
        assert!(matches!(
            max_cyclic_order(2, DEFAULT_GENUS_CAP),
            Err(Error::GenusOutOfRange { .. })
        ));
    }
}
