//! Homomorphisms `θ: Γ → C_M` given by exponent images of the canonical
//! generators, and the checks that make `θ` a smooth epimorphism onto `C_M`
//! whose kernel is a closed non-orientable surface group of genus `p ≥ 3`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::signature::{NecSignature, Sign};
use crate::text::Cursor;

/// `θ: Γ → C_M = ⟨t⟩`, stored as exponents: `θ(x_i) = t^{u_i}`,
/// `θ(e_j) = t^{v_j}`, `θ(c_j)`, and the images of `a_i, b_i` (interleaved,
/// sign `+`) or `d_i` (sign `-`). All exponents lie in `[0, M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicEpimorphism {
    sig: NecSignature,
    modulus: u64,
    x_images: Vec<u64>,
    e_images: Vec<u64>,
    c_images: Vec<u64>,
    orient_images: Vec<u64>,
}

impl CyclicEpimorphism {
    pub fn new(
        sig: NecSignature,
        modulus: u64,
        x_images: Vec<u64>,
        e_images: Vec<u64>,
        c_images: Vec<u64>,
        orient_images: Vec<u64>,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Structure("group order must be positive".into()));
        }
        let k = sig.empty_cycles() as usize;
        let expect = [
            ("x", x_images.len(), sig.periods().len()),
            ("e", e_images.len(), k),
            ("c", c_images.len(), k),
            (
                if sig.sign() == Sign::Plus { "a/b" } else { "d" },
                orient_images.len(),
                sig.orientation_generator_count(),
            ),
        ];
        for (name, got, want) in expect {
            if got != want {
                return Err(Error::Structure(format!(
                    "{sig} needs {want} {name} image(s), got {got}"
                )));
            }
        }
        let reduce = |v: Vec<u64>| v.into_iter().map(|u| u % modulus).collect();
        Ok(Self {
            sig,
            modulus,
            x_images: reduce(x_images),
            e_images: reduce(e_images),
            c_images: reduce(c_images),
            orient_images: reduce(orient_images),
        })
    }

    /// Builds from parsed map text. A missing `c` section sends every
    /// reflection to `t^{M/2}`; other missing sections mean "no images".
    pub fn from_map(sig: NecSignature, modulus: u64, map: &ImageMap) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Structure("group order must be positive".into()));
        }
        let m = modulus as i64;
        let reduce = |v: &Option<Vec<i64>>| -> Vec<u64> {
            v.iter().flatten().map(|u| u.rem_euclid(m) as u64).collect()
        };
        let c_images = match &map.c {
            Some(_) => reduce(&map.c),
            None => vec![modulus / 2; sig.empty_cycles() as usize],
        };
        let orient = match sig.sign() {
            Sign::Plus => {
                if map.d.as_ref().is_some_and(|d| !d.is_empty()) {
                    return Err(Error::Structure(
                        "sign '+' has no glide generators d".into(),
                    ));
                }
                let a = reduce(&map.a);
                let b = reduce(&map.b);
                if a.len() != b.len() {
                    return Err(Error::Structure(format!(
                        "{} a image(s) but {} b image(s)",
                        a.len(),
                        b.len()
                    )));
                }
                a.into_iter().zip(b).flat_map(|(a, b)| [a, b]).collect()
            }
            Sign::Minus => {
                if map.a.iter().chain(&map.b).any(|v| !v.is_empty()) {
                    return Err(Error::Structure(
                        "sign '-' has no hyperbolic generators a, b".into(),
                    ));
                }
                reduce(&map.d)
            }
        };
        Self::new(
            sig,
            modulus,
            reduce(&map.x),
            reduce(&map.e),
            c_images,
            orient,
        )
    }

    pub fn signature(&self) -> &NecSignature {
        &self.sig
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn x_images(&self) -> &[u64] {
        &self.x_images
    }

    pub fn e_images(&self) -> &[u64] {
        &self.e_images
    }

    pub fn c_images(&self) -> &[u64] {
        &self.c_images
    }

    pub fn orient_images(&self) -> &[u64] {
        &self.orient_images
    }

    /// All images in the order x, e, c, orientation generators.
    pub fn image_tuple(&self) -> Vec<u64> {
        let mut out = self.x_images.clone();
        out.extend(&self.e_images);
        out.extend(&self.c_images);
        out.extend(&self.orient_images);
        out
    }

    /// Composes with the automorphism `t ↦ t^unit` of `C_M`.
    pub fn scaled(&self, unit: u64) -> Self {
        let m = self.modulus;
        let scale = |v: &[u64]| v.iter().map(|&u| mul_mod(u, unit, m)).collect();
        Self {
            sig: self.sig.clone(),
            modulus: m,
            x_images: scale(&self.x_images),
            e_images: scale(&self.e_images),
            c_images: scale(&self.c_images),
            orient_images: scale(&self.orient_images),
        }
    }

    /// Images of orientation-preserving and orientation-reversing canonical
    /// generators, in that order.
    fn split_by_orientation(&self) -> (Vec<u64>, Vec<u64>) {
        let mut preserving = self.x_images.clone();
        preserving.extend(&self.e_images);
        let mut reversing = self.c_images.clone();
        match self.sig.sign() {
            Sign::Plus => preserving.extend(&self.orient_images),
            Sign::Minus => reversing.extend(&self.orient_images),
        }
        (preserving, reversing)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Order of `t^u` in `C_M`.
pub fn image_order(modulus: u64, u: u64) -> u64 {
    modulus / modulus.gcd(&(u % modulus))
}

/// Sorted elements of the subgroup of `Z_M` generated by `gens`.
///
/// Computed by closure under addition, not from a gcd; the oracle relies on
/// this routine being independent of the number theory it checks.
pub fn subgroup_generated(modulus: u64, gens: &[u64]) -> Vec<u64> {
    let m = modulus as usize;
    let mut member = vec![false; m];
    member[0] = true;
    let mut frontier = vec![0usize];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let b = (a + (g % modulus) as usize) % m;
            if !member[b] {
                member[b] = true;
                frontier.push(b);
            }
        }
    }
    (0..modulus).filter(|&a| member[a as usize]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckName {
    #[serde(rename = "REFLECTIONS")]
    Reflections,
    #[serde(rename = "SMOOTH-ELLIPTIC")]
    SmoothElliptic,
    #[serde(rename = "LONG-RELATION")]
    LongRelation,
    #[serde(rename = "SURJECTIVE")]
    Surjective,
    #[serde(rename = "KERNEL-NON-ORIENTABLE")]
    KernelNonOrientable,
    #[serde(rename = "GENUS")]
    Genus,
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckName::Reflections => "REFLECTIONS",
            CheckName::SmoothElliptic => "SMOOTH-ELLIPTIC",
            CheckName::LongRelation => "LONG-RELATION",
            CheckName::Surjective => "SURJECTIVE",
            CheckName::KernelNonOrientable => "KERNEL-NON-ORIENTABLE",
            CheckName::Genus => "GENUS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: CheckName,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
    pub kernel_genus: Option<u64>,
}

impl ValidationReport {
    pub fn check(&self, name: CheckName) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs every check independently; failures are data, never errors.
pub fn validate(epi: &CyclicEpimorphism) -> ValidationReport {
    let sig = &epi.sig;
    let m = epi.modulus;
    let mut checks = Vec::with_capacity(6);
    let mut record = |name, passed, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    // (a) reflections
    let (ok, detail) = if !sig.nonempty_cycles().is_empty() {
        (
            false,
            "non-empty period cycle: two reflections with a finite-order product cannot both map to the involution of a cyclic group".to_string(),
        )
    } else if sig.empty_cycles() == 0 {
        (true, "no reflections".to_string())
    } else if !m.is_multiple_of(2) {
        (
            false,
            format!("reflections need an involution but M={m} is odd"),
        )
    } else if let Some((j, c)) = epi.c_images.iter().enumerate().find(|(_, &c)| c != m / 2) {
        (
            false,
            format!("c{} maps to t^{c}, expected t^{}", j + 1, m / 2),
        )
    } else {
        (true, format!("every c_j maps to t^{}", m / 2))
    };
    record(CheckName::Reflections, ok, detail);

    // (b) smoothness on elliptic generators
    let bad = sig
        .periods()
        .iter()
        .zip(&epi.x_images)
        .enumerate()
        .find(|(_, (&period, &u))| image_order(m, u) != period);
    let (ok, detail) = match bad {
        Some((i, (&period, &u))) => (
            false,
            format!(
                "x{} has period {period} but t^{u} has order {}",
                i + 1,
                image_order(m, u)
            ),
        ),
        None => (true, "every x_i image has order m_i".to_string()),
    };
    record(CheckName::SmoothElliptic, ok, detail);

    // (c) long relation in the abelian target
    let twice_glides = match sig.sign() {
        Sign::Plus => 0,
        Sign::Minus => 2 * epi.orient_images.iter().map(|&w| w as u128).sum::<u128>(),
    };
    let total = epi
        .x_images
        .iter()
        .chain(&epi.e_images)
        .map(|&u| u as u128)
        .sum::<u128>()
        + twice_glides;
    let residue = (total % m as u128) as u64;
    record(
        CheckName::LongRelation,
        residue == 0,
        format!("relation exponent sums to {total} ≡ {residue} (mod {m})"),
    );

    // (d) surjectivity
    let all = epi.image_tuple();
    let size = subgroup_generated(m, &all).len() as u64;
    record(
        CheckName::Surjective,
        size == m,
        format!("images generate a subgroup of order {size} in C_{m}"),
    );

    // (e) θ(Γ⁺) = C_M, with Γ⁺ generated by the orientation-preserving
    // generators and all products of two orientation-reversing ones
    let (mut plus_gens, reversing) = epi.split_by_orientation();
    let (ok, detail) = if reversing.is_empty() {
        (
            false,
            "Γ has no orientation-reversing generators, so the kernel is orientable".to_string(),
        )
    } else {
        for (i, &r) in reversing.iter().enumerate() {
            for &s in &reversing[i..] {
                plus_gens.push((r + s) % m);
            }
        }
        let size = subgroup_generated(m, &plus_gens).len() as u64;
        if size == m {
            (true, format!("θ(Γ⁺) = C_{m}"))
        } else {
            (
                false,
                format!("θ(Γ⁺) has order {size} < {m}, so the kernel is orientable"),
            )
        }
    };
    record(CheckName::KernelNonOrientable, ok, detail);

    // (f) kernel genus
    let genus = sig.kernel_genus(m);
    let (ok, detail) = match &genus {
        Ok(p) if *p >= 3 => (true, format!("kernel genus p = {p}")),
        Ok(p) => (false, format!("kernel genus p = {p} < 3")),
        Err(e) => (false, e.to_string()),
    };
    record(CheckName::Genus, ok, detail);

    let valid = checks.iter().all(|c| c.passed);
    ValidationReport {
        valid,
        checks,
        kernel_genus: genus.ok(),
    }
}

/// Parsed `x=...; e=...; c=...; d=...` map text (also `a=`, `b=` for sign `+`).
/// `None` means the section was absent; exponents may be negative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImageMap {
    pub x: Option<Vec<i64>>,
    pub e: Option<Vec<i64>>,
    pub c: Option<Vec<i64>>,
    pub d: Option<Vec<i64>>,
    pub a: Option<Vec<i64>>,
    pub b: Option<Vec<i64>>,
}

pub fn parse_map(text: &str) -> Result<ImageMap, ParseError> {
    let mut cur = Cursor::new(text);
    let mut map = ImageMap::default();
    while cur.peek().is_some() {
        if cur.eat(';') {
            continue;
        }
        let pos = cur.position();
        let slot = match cur.bump() {
            Some('x') => &mut map.x,
            Some('e') => &mut map.e,
            Some('c') => &mut map.c,
            Some('d') => &mut map.d,
            Some('a') => &mut map.a,
            Some('b') => &mut map.b,
            found => {
                return Err(ParseError::unexpected(
                    pos,
                    "one of x, e, c, d, a, b",
                    found,
                ))
            }
        };
        if slot.is_some() {
            return Err(ParseError::semantic(pos, "section given twice"));
        }
        cur.expect('=', "'='")?;
        let mut values = Vec::new();
        if !matches!(cur.peek(), None | Some(';')) {
            loop {
                let neg = cur.eat('-');
                let pos = cur.position();
                let v = cur.number("exponent")?;
                let v = i64::try_from(v)
                    .map_err(|_| ParseError::semantic(pos, "exponent too large"))?;
                values.push(if neg { -v } else { v });
                if !cur.eat(',') {
                    break;
                }
            }
        }
        *slot = Some(values);
        match cur.peek() {
            None => {}
            Some(';') => {}
            found => return Err(ParseError::unexpected(cur.position(), "',' or ';'", found)),
        }
    }
    Ok(map)
}

/// Canonical map text, e.g. `x=7,2;e=5;c=7;a=;b=`.
pub fn format_map(epi: &CyclicEpimorphism) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut out = format!(
        "x={};e={};c={}",
        join(&epi.x_images),
        join(&epi.e_images),
        join(&epi.c_images)
    );
    match epi.sig.sign() {
        Sign::Plus => {
            let a: Vec<u64> = epi.orient_images.iter().step_by(2).copied().collect();
            let b: Vec<u64> = epi
                .orient_images
                .iter()
                .skip(1)
                .step_by(2)
                .copied()
                .collect();
            out.push_str(&format!(";a={};b={}", join(&a), join(&b)));
        }
        Sign::Minus => out.push_str(&format!(";d={}", join(&epi.orient_images))),
    }
    out
}
