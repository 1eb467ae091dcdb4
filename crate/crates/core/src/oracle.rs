//! Brute-force recomputation of every count inside the finite quotient
//! `Γ/K ≅ C_M`, without any gcd.
//!
//! `Λ = θ⁻¹(⟨t^N⟩)` is represented by its image `{0, N}` in `Z_M`. The
//! `Λ`-conjugacy classes of reflections coming from `c_j` are the double cosets
//! `Λ\Γ/C_Γ(c_j)`, and since `C_Γ(c_j) = ⟨c_j, e_j⟩` and `K ≤ Λ` their number is
//! the index of `⟨N, v_j⟩` in `Z_M`. A second route counts them as `N/δ_j`
//! using the exponents `δ_j = exp_Λ(e_j)` and `ε_j = exp_K(e_j)`. Fixed points
//! of `t^i` over the `j`-th cone point are the cosets of `⟨u_j⟩` fixed by
//! translation by `i`.

use serde::Serialize;

use crate::epimorphism::{subgroup_generated, validate, CyclicEpimorphism};
use crate::error::{Error, Result};
use crate::fixedpoints::{isolated_fixed_points, twist_classification};
use crate::signature::NecSignature;

fn half(modulus: u64) -> Result<u64> {
    if modulus == 0 || !modulus.is_multiple_of(2) {
        return Err(Error::OddOrder(modulus));
    }
    Ok(modulus / 2)
}

/// Index of `⟨M/2, v⟩` in `Z_M`, by closure enumeration.
pub fn oval_classes_doublecoset(modulus: u64, v: u64) -> Result<u64> {
    let n = half(modulus)?;
    let size = subgroup_generated(modulus, &[n, v]).len() as u64;
    Ok(modulus / size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exponents {
    /// Least `d ≥ 1` with `d·v ∈ {0, N}` (mod `M`).
    pub delta: u64,
    /// Least `d ≥ 1` with `d·v ≡ 0` (mod `M`).
    pub epsilon: u64,
}

/// Incremental search for `δ` and `ε`.
pub fn exponents(modulus: u64, v: u64) -> Result<Exponents> {
    let n = half(modulus)?;
    let v = v % modulus;
    let mut delta = None;
    let mut multiple = 0;
    let mut d = 0;
    let epsilon = loop {
        d += 1;
        multiple = (multiple + v) % modulus;
        if delta.is_none() && (multiple == 0 || multiple == n) {
            delta = Some(d);
        }
        if multiple == 0 {
            break d;
        }
    };
    let delta = delta.expect("epsilon is found no earlier than delta");
    assert_eq!(n % delta, 0, "delta={delta} must divide N={n}");
    assert_eq!(
        modulus % epsilon,
        0,
        "epsilon={epsilon} must divide M={modulus}"
    );
    Ok(Exponents { delta, epsilon })
}

/// Twisted iff `ε = 2δ`, i.e. `θ'(e^δ) = ξ`.
pub fn twist_oracle(modulus: u64, v: u64) -> Result<bool> {
    let Exponents { delta, epsilon } = exponents(modulus, v)?;
    Ok(epsilon == 2 * delta)
}

/// Per cone point, the number of cosets of `⟨u_j⟩` in `Z_M` fixed by `+i`.
pub fn coset_orbit_counts(
    sig: &NecSignature,
    modulus: u64,
    x_images: &[u64],
    power: u64,
) -> Result<Vec<u64>> {
    if x_images.len() != sig.periods().len() {
        return Err(Error::Structure(format!(
            "{} x image(s) for {} period(s)",
            x_images.len(),
            sig.periods().len()
        )));
    }
    if modulus == 0 || power.is_multiple_of(modulus) {
        return Err(Error::TrivialPower { power, modulus });
    }
    let m = modulus as usize;
    let shift = (power % modulus) as usize;
    let mut counts = Vec::with_capacity(x_images.len());
    for (j, (&period, &u)) in sig.periods().iter().zip(x_images).enumerate() {
        let stabilizer = subgroup_generated(modulus, &[u]);
        if stabilizer.len() as u64 != period {
            return Err(Error::Smoothness {
                index: j + 1,
                period,
                order: stabilizer.len() as u64,
            });
        }
        let mut coset_of = vec![usize::MAX; m];
        let mut representatives = Vec::new();
        for a in 0..m {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(a);
            for &h in &stabilizer {
                coset_of[(a + h as usize) % m] = id;
            }
        }
        let fixed = representatives
            .iter()
            .filter(|&&r| coset_of[(r + shift) % m] == coset_of[r])
            .count() as u64;
        counts.push(fixed);
    }
    Ok(counts)
}

pub fn coset_orbit_fixed_points(
    sig: &NecSignature,
    modulus: u64,
    x_images: &[u64],
    power: u64,
) -> Result<u64> {
    Ok(coset_orbit_counts(sig, modulus, x_images, power)?
        .iter()
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleTranscript {
    pub v: u64,
    pub delta: u64,
    pub epsilon: u64,
    pub class_count_doublecoset: u64,
    pub class_count_exponent: u64,
    pub twisted_by_theta_prime: bool,
}

impl CycleTranscript {
    pub fn compute(modulus: u64, v: u64) -> Result<Self> {
        let n = half(modulus)?;
        let Exponents { delta, epsilon } = exponents(modulus, v)?;
        Ok(Self {
            v,
            delta,
            epsilon,
            class_count_doublecoset: oval_classes_doublecoset(modulus, v)?,
            class_count_exponent: n / delta,
            twisted_by_theta_prime: twist_oracle(modulus, v)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerTranscript {
    pub power: u64,
    /// Coset-orbit fixed count per cone point.
    pub per_period: Vec<u64>,
    pub total: u64,
    /// Closed-form count it was compared against.
    pub formula: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleTranscript {
    pub per_cycle: Vec<CycleTranscript>,
    pub per_power_fixed: Vec<PowerTranscript>,
    pub agreement: bool,
    pub first_disagreement: Option<String>,
}

/// Runs both oval-count routes, the twist criterion, and the coset-orbit
/// fixed-point count against the closed forms.
pub fn cross_check(epi: &CyclicEpimorphism) -> Result<OracleTranscript> {
    let validation = validate(epi);
    if let Some(check) = validation.first_failure() {
        return Err(Error::InvalidEpimorphism(format!(
            "{}: {}",
            check.name, check.detail
        )));
    }
    let m = epi.modulus();
    let sig = epi.signature();
    let mut disagreements = Vec::new();

    let mut per_cycle = Vec::new();
    if m.is_multiple_of(2) {
        let formula = twist_classification(epi)?;
        for (j, (&v, closed)) in epi.e_images().iter().zip(&formula).enumerate() {
            let t = CycleTranscript::compute(m, v)?;
            if t.epsilon != t.delta && t.epsilon != 2 * t.delta {
                disagreements.push(format!(
                    "cycle {}: epsilon={} delta={}",
                    j + 1,
                    t.epsilon,
                    t.delta
                ));
            }
            if t.class_count_doublecoset != t.class_count_exponent
                || t.class_count_exponent != closed.oval_count
            {
                disagreements.push(format!(
                    "cycle {} (M={m}, v={v}): double-coset {} vs N/delta {} vs gcd {}",
                    j + 1,
                    t.class_count_doublecoset,
                    t.class_count_exponent,
                    closed.oval_count
                ));
            }
            if t.twisted_by_theta_prime != closed.twisted {
                disagreements.push(format!(
                    "cycle {} (M={m}, v={v}): oracle twisted={} vs criterion twisted={}",
                    j + 1,
                    t.twisted_by_theta_prime,
                    closed.twisted
                ));
            }
            per_cycle.push(t);
        }
    }

    let mut per_power_fixed = Vec::new();
    for i in 1..m {
        let per_period = coset_orbit_counts(sig, m, epi.x_images(), i)?;
        let total = per_period.iter().sum();
        let formula = isolated_fixed_points(sig, m, i)?;
        if total != formula {
            disagreements.push(format!("t^{i}: coset orbits {total} vs formula {formula}"));
        }
        per_power_fixed.push(PowerTranscript {
            power: i,
            per_period,
            total,
            formula,
        });
    }

    Ok(OracleTranscript {
        per_cycle,
        per_power_fixed,
        agreement: disagreements.is_empty(),
        first_disagreement: disagreements.into_iter().next(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    #[serde(flatten)]
    pub cycle: CycleTranscript,
    pub gcd_count: u64,
    pub twisted_by_criterion: bool,
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepTranscript {
    pub modulus: u64,
    pub records: Vec<SweepRecord>,
    pub agreement: bool,
    pub first_disagreement: Option<String>,
}

/// Compares both oracle routes with `gcd(N, v)` and the twist criterion for
/// every `v` in `[0, M)`.
pub fn sweep(modulus: u64) -> Result<SweepTranscript> {
    use num_integer::Integer;

    let n = half(modulus)?;
    let mut first = None;
    let records = (0..modulus)
        .map(|v| {
            let cycle = CycleTranscript::compute(modulus, v)?;
            let gcd_count = n.gcd(&v);
            let twisted_by_criterion = modulus.gcd(&v) == gcd_count;
            let agreement = (cycle.epsilon == cycle.delta || cycle.epsilon == 2 * cycle.delta)
                && cycle.class_count_doublecoset == gcd_count
                && cycle.class_count_exponent == gcd_count
                && cycle.twisted_by_theta_prime == twisted_by_criterion;
            if !agreement && first.is_none() {
                first = Some(format!("M={modulus}, v={v}: {cycle:?}, gcd {gcd_count}"));
            }
            Ok(SweepRecord {
                cycle,
                gcd_count,
                twisted_by_criterion,
                agreement,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTranscript {
        modulus,
        agreement: first.is_none(),
        records,
        first_disagreement: first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;

    #[test]
    fn doublecoset_examples() {
        assert_eq!(oval_classes_doublecoset(14, 5), Ok(1));
        assert_eq!(oval_classes_doublecoset(4, 0), Ok(2));
        assert_eq!(oval_classes_doublecoset(12, 6), Ok(6));
        assert_eq!(oval_classes_doublecoset(7, 1), Err(Error::OddOrder(7)));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(
            exponents(14, 5),
            Ok(Exponents {
                delta: 7,
                epsilon: 14
            })
        );
        assert_eq!(
            exponents(4, 0),
            Ok(Exponents {
                delta: 1,
                epsilon: 1
            })
        );
        assert_eq!(
            exponents(10, 4),
            Ok(Exponents {
                delta: 5,
                epsilon: 5
            })
        );
        assert_eq!(exponents(9, 4), Err(Error::OddOrder(9)));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist_oracle(14, 5), Ok(true));
        assert_eq!(twist_oracle(10, 4), Ok(false));
        assert_eq!(twist_oracle(4, 0), Ok(false));
    }

    #[test]
    fn coset_examples() {
        let s = parse_signature("(0;+;[2,7];{()})").unwrap();
        assert_eq!(coset_orbit_counts(&s, 14, &[7, 2], 7), Ok(vec![7, 0]));
        assert_eq!(coset_orbit_counts(&s, 14, &[7, 2], 2), Ok(vec![0, 2]));
        let s = parse_signature("(0;+;[2,2,4,4];{()})").unwrap();
        assert_eq!(coset_orbit_fixed_points(&s, 4, &[2, 2, 1, 1], 2), Ok(6));
    }

    #[test]
    fn coset_smoothness_violation() {
        let s = parse_signature("(0;+;[2,7];{()})").unwrap();
        assert_eq!(
            coset_orbit_fixed_points(&s, 14, &[7, 3], 1),
            Err(Error::Smoothness {
                index: 2,
                period: 7,
                order: 14
            })
        );
    }

    #[test]
    fn cross_check_examples() {
        let sig = parse_signature("(0;+;[2,7];{()})").unwrap();
        let e1 = CyclicEpimorphism::new(sig, 14, vec![7, 2], vec![5], vec![7], vec![]).unwrap();
        let t = cross_check(&e1).unwrap();
        assert!(t.agreement, "{t:?}");
        assert_eq!(t.per_cycle[0].delta, 7);
        assert_eq!(t.per_power_fixed.len(), 13);

        let sig = parse_signature("(0;+;[2,2,4,4];{()})").unwrap();
        let e2 =
            CyclicEpimorphism::new(sig, 4, vec![2, 2, 1, 3], vec![0], vec![2], vec![]).unwrap();
        assert!(cross_check(&e2).unwrap().agreement);
    }

    #[test]
    fn cross_check_odd_order_has_no_cycles() {
        let sig = parse_signature("(2;-;[3];{})").unwrap();
        let e = CyclicEpimorphism::new(sig, 3, vec![1], vec![], vec![], vec![1, 0]).unwrap();
        let t = cross_check(&e).unwrap();
        assert!(t.agreement && t.per_cycle.is_empty());
    }

    #[test]
    fn sweep_agrees() {
        for m in (2..=30).step_by(2) {
            let s = sweep(m).unwrap();
            assert!(s.agreement, "{:?}", s.first_disagreement);
            assert_eq!(s.records.len() as u64, m);
        }
    }
}
