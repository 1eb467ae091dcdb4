//! NEC signatures `(g; ±; [m_1, ..., m_n]; {C_1, ..., C_k})`, their orbifold
//! measure, and the genus of a torsion-free kernel of given index.

mod parse;

use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::parse_signature;

/// Exact rational carrier, always in lowest terms with positive denominator.
pub type Rational = Rational64;

/// Orientability sign of the quotient orbifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// The combinatorial type of an NEC group.
///
/// Empty period cycles are stored as a count; non-empty cycles keep their link
/// periods so that validation can name them when rejecting them. Canonical
/// text puts the empty cycles first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NecSignature {
    genus: u64,
    sign: Sign,
    periods: Vec<u64>,
    empty_cycles: u64,
    nonempty_cycles: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("period {0} is less than 2")]
    PeriodTooSmall(u64),
    #[error("link period {0} is less than 2")]
    LinkPeriodTooSmall(u64),
    #[error("sign '-' requires genus at least 1")]
    MinusGenusZero,
}

impl NecSignature {
    pub fn new(
        genus: u64,
        sign: Sign,
        periods: Vec<u64>,
        empty_cycles: u64,
    ) -> Result<Self, SignatureError> {
        Self::with_cycles(genus, sign, periods, empty_cycles, Vec::new())
    }

    pub fn with_cycles(
        genus: u64,
        sign: Sign,
        periods: Vec<u64>,
        empty_cycles: u64,
        nonempty_cycles: Vec<Vec<u64>>,
    ) -> Result<Self, SignatureError> {
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(SignatureError::PeriodTooSmall(m));
        }
        if let Some(&l) = nonempty_cycles.iter().flatten().find(|&&l| l < 2) {
            return Err(SignatureError::LinkPeriodTooSmall(l));
        }
        if sign == Sign::Minus && genus == 0 {
            return Err(SignatureError::MinusGenusZero);
        }
        Ok(Self {
            genus,
            sign,
            periods,
            empty_cycles,
            nonempty_cycles,
        })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn empty_cycles(&self) -> u64 {
        self.empty_cycles
    }

    pub fn nonempty_cycles(&self) -> &[Vec<u64>] {
        &self.nonempty_cycles
    }

    /// Number of orientation-carrying generators: `2g` hyperbolic generators
    /// for `+`, `g` glide reflections for `-`.
    pub fn orientation_generator_count(&self) -> usize {
        match self.sign {
            Sign::Plus => 2 * self.genus as usize,
            Sign::Minus => self.genus as usize,
        }
    }

    /// Normalized area `μ(Γ)/2π`.
    pub fn orbifold_measure(&self) -> Rational {
        let alpha = match self.sign {
            Sign::Plus => 2,
            Sign::Minus => 1,
        };
        let one = Rational::from_integer(1);
        let mut mu =
            Rational::from_integer(alpha * self.genus as i64 + self.empty_cycles as i64 - 2);
        for &m in &self.periods {
            mu += one - Rational::new(1, m as i64);
        }
        for cycle in &self.nonempty_cycles {
            mu += one;
            for &l in cycle {
                mu += (one - Rational::new(1, l as i64)) / 2;
            }
        }
        mu
    }

    /// Cross-cap genus `p` of a surface kernel of index `order`, from
    /// `p - 2 = order · μ(Γ)/2π`.
    pub fn kernel_genus(&self, order: u64) -> Result<u64> {
        let mu = self.orbifold_measure();
        if mu <= Rational::from_integer(0) {
            return Err(Error::NonPositiveMeasure(mu.to_string()));
        }
        let p = mu * Rational::from_integer(order as i64) + 2;
        if !p.is_integer() {
            return Err(Error::NonIntegralGenus(p.to_string()));
        }
        Ok(p.to_integer() as u64)
    }

    /// Canonical generators in presentation order: elliptics, connecting
    /// generators, reflections, then `a_i, b_i` (sign `+`) or `d_i` (sign `-`).
    pub fn canonical_generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .periods
            .iter()
            .enumerate()
            .map(|(i, &m)| Generator::Elliptic {
                index: i + 1,
                period: m,
            })
            .collect();
        let cycles = self.empty_cycles as usize + self.nonempty_cycles.len();
        gens.extend((1..=cycles).map(|j| Generator::Connecting { cycle: j }));
        gens.extend(
            (1..=self.empty_cycles as usize).map(|j| Generator::Reflection { cycle: j, slot: 0 }),
        );
        for (offset, links) in self.nonempty_cycles.iter().enumerate() {
            let cycle = self.empty_cycles as usize + offset + 1;
            gens.extend((0..=links.len()).map(|slot| Generator::Reflection { cycle, slot }));
        }
        for i in 1..=self.genus as usize {
            match self.sign {
                Sign::Plus => {
                    gens.push(Generator::HyperbolicA { index: i });
                    gens.push(Generator::HyperbolicB { index: i });
                }
                Sign::Minus => gens.push(Generator::Glide { index: i }),
            }
        }
        gens
    }
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{};[", self.genus, self.sign.symbol())?;
        write_list(f, &self.periods)?;
        f.write_str("];{")?;
        for _ in 0..self.empty_cycles {
            f.write_str("()")?;
        }
        for cycle in &self.nonempty_cycles {
            f.write_str("(")?;
            write_list(f, cycle)?;
            f.write_str(")")?;
        }
        f.write_str("})")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[u64]) -> fmt::Result {
    for (i, m) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{m}")?;
    }
    Ok(())
}

impl Serialize for NecSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Canonical text form; inverse of [`parse_signature`].
pub fn format_signature(sig: &NecSignature) -> String {
    sig.to_string()
}

/// A canonical generator of an NEC group presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Elliptic { index: usize, period: u64 },
    Connecting { cycle: usize },
    Reflection { cycle: usize, slot: usize },
    HyperbolicA { index: usize },
    HyperbolicB { index: usize },
    Glide { index: usize },
}

impl Generator {
    pub fn is_orientation_reversing(&self) -> bool {
        matches!(self, Generator::Reflection { .. } | Generator::Glide { .. })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Elliptic { index, period } => write!(f, "x{index}({period})"),
            Generator::Connecting { cycle } => write!(f, "e{cycle}"),
            Generator::Reflection { cycle, slot: 0 } => write!(f, "c{cycle}"),
            Generator::Reflection { cycle, slot } => write!(f, "c{cycle},{slot}"),
            Generator::HyperbolicA { index } => write!(f, "a{index}"),
            Generator::HyperbolicB { index } => write!(f, "b{index}"),
            Generator::Glide { index } => write!(f, "d{index}"),
        }
    }
}
