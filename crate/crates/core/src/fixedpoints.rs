//! Closed-form counts for a cyclic action `C_M = ⟨t⟩` on a non-orientable
//! surface: isolated fixed points of every non-trivial power of `t`, ovals of
//! the central involution `t^N` (`M = 2N`) and whether they are twisted, and
//! the Scherrer inequality `|F| + 2|V| ≤ p + 2`.

use num_integer::Integer;
use serde::Serialize;

use crate::epimorphism::{validate, CyclicEpimorphism};
use crate::error::{Error, Result};
use crate::signature::NecSignature;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRow {
    /// `i` in `t^i`.
    pub power: u64,
    /// Order `d` of `t^i`.
    pub order: u64,
    pub isolated_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleOvals {
    /// `v_j` with `θ(e_j) = t^{v_j}`.
    pub v: u64,
    pub oval_count: u64,
    pub twisted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionRecord {
    pub oval_total: u64,
    pub isolated_total: u64,
    pub per_cycle: Vec<CycleOvals>,
    pub scherrer_lhs: u64,
    pub scherrer_rhs: u64,
    pub scherrer_equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub modulus: u64,
    pub kernel_genus: u64,
    pub per_power: Vec<PowerRow>,
    /// Present iff `M` is even.
    pub involution: Option<InvolutionRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScherrerStatus {
    pub holds: bool,
    pub slack: i64,
    pub equality: bool,
}

/// Isolated fixed points of `t^i`: `Σ M/m_j` over the periods `m_j` divisible
/// by the order `d` of `t^i`. Independent of the epimorphism.
pub fn isolated_fixed_points(sig: &NecSignature, modulus: u64, power: u64) -> Result<u64> {
    if modulus == 0 || power.is_multiple_of(modulus) {
        return Err(Error::TrivialPower { power, modulus });
    }
    let d = modulus / modulus.gcd(&power);
    let mut total = 0;
    for &m in sig.periods().iter().filter(|&&m| m % d == 0) {
        if !modulus.is_multiple_of(m) {
            return Err(Error::PeriodNotDividing { period: m, modulus });
        }
        total += modulus / m;
    }
    Ok(total)
}

fn require_valid_even(epi: &CyclicEpimorphism) -> Result<u64> {
    let report = validate(epi);
    if let Some(check) = report.first_failure() {
        return Err(Error::InvalidEpimorphism(format!(
            "{}: {}",
            check.name, check.detail
        )));
    }
    if !epi.modulus().is_multiple_of(2) {
        return Err(Error::OddOrder(epi.modulus()));
    }
    Ok(epi.modulus() / 2)
}

fn cycle_ovals(n: u64, v: u64) -> CycleOvals {
    let half = n.gcd(&v);
    CycleOvals {
        v,
        oval_count: half,
        twisted: (2 * n).gcd(&v) == half,
    }
}

/// Number of ovals of `t^N`: `Σ_j gcd(N, v_j)`, with `gcd(N, 0) = N`.
pub fn oval_count(epi: &CyclicEpimorphism) -> Result<u64> {
    let n = require_valid_even(epi)?;
    Ok(epi.e_images().iter().map(|&v| n.gcd(&v)).sum())
}

/// Per period cycle: `gcd(N, v_j)` ovals, twisted iff
/// `gcd(2N, v_j) = gcd(N, v_j)` (untwisted iff it is `2·gcd(N, v_j)`).
pub fn twist_classification(epi: &CyclicEpimorphism) -> Result<Vec<CycleOvals>> {
    let n = require_valid_even(epi)?;
    Ok(epi.e_images().iter().map(|&v| cycle_ovals(n, v)).collect())
}

pub fn scherrer_check(isolated: u64, ovals: u64, genus: u64) -> ScherrerStatus {
    let slack = genus as i64 + 2 - isolated as i64 - 2 * ovals as i64;
    ScherrerStatus {
        holds: slack >= 0,
        slack,
        equality: slack == 0,
    }
}

pub fn full_report(epi: &CyclicEpimorphism) -> Result<FixedPointReport> {
    let validation = validate(epi);
    if let Some(check) = validation.first_failure() {
        return Err(Error::InvalidEpimorphism(format!(
            "{}: {}",
            check.name, check.detail
        )));
    }
    let m = epi.modulus();
    let p = validation
        .kernel_genus
        .expect("valid epimorphisms have a kernel genus");
    let sig = epi.signature();

    let per_power = (1..m)
        .map(|i| {
            Ok(PowerRow {
                power: i,
                order: m / m.gcd(&i),
                isolated_count: isolated_fixed_points(sig, m, i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let involution = if m.is_multiple_of(2) {
        let n = m / 2;
        let per_cycle: Vec<_> = epi.e_images().iter().map(|&v| cycle_ovals(n, v)).collect();
        let oval_total = per_cycle.iter().map(|c| c.oval_count).sum();
        let isolated_total = per_power[(n - 1) as usize].isolated_count;
        let status = scherrer_check(isolated_total, oval_total, p);
        Some(InvolutionRecord {
            oval_total,
            isolated_total,
            per_cycle,
            scherrer_lhs: isolated_total + 2 * oval_total,
            scherrer_rhs: p + 2,
            scherrer_equality: status.equality,
        })
    } else {
        None
    };

    Ok(FixedPointReport {
        modulus: m,
        kernel_genus: p,
        per_power,
        involution,
    })
}

/// Flattened per-cycle twist data, e.g. `c1:2u;c2:1t`.
pub fn twist_string(per_cycle: &[CycleOvals]) -> String {
    per_cycle
        .iter()
        .enumerate()
        .map(|(j, c)| {
            format!(
                "c{}:{}{}",
                j + 1,
                c.oval_count,
                if c.twisted { 't' } else { 'u' }
            )
        })
        .collect::<Vec<_>>()
        .join(";")
}
