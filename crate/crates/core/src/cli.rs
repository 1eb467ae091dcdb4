//! Batch front end. Results go to the primary stream, diagnostics to the
//! secondary one.
//!
//! Exit codes: 0 success, 2 parse or configuration error, 3 oracle
//! disagreement, 4 validation failure on `analyze`.

use std::io::{self, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{self, CensusOptions, CensusRow, DEFAULT_GENUS_CAP};
use crate::epimorphism::{format_map, parse_map, validate, CyclicEpimorphism, ValidationReport};
use crate::error::Error;
use crate::fixedpoints::{full_report, FixedPointReport};
use crate::oracle::{cross_check, sweep};
use crate::output::{write_csv, write_jsonl};
use crate::signature::parse_signature;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Inclusive range of group orders, written `M` or `A-B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    pub from: u64,
    pub to: u64,
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad order {t:?}: {e}"))
        };
        let (from, to) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let m = parse(s)?;
                (m, m)
            }
        };
        if from == 0 || from > to {
            return Err(format!("empty or zero order range {s:?}"));
        }
        Ok(Self { from, to })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nec-ovals",
    version,
    about = "Fixed points and ovals of cyclic actions on non-orientable surfaces"
)]
pub struct CliConfig {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate one epimorphism and report its fixed-point data.
    Analyze {
        signature: String,
        #[arg(long)]
        order: u64,
        /// e.g. "x=7,2;e=5" (c defaults to M/2)
        #[arg(long)]
        map: String,
    },
    /// List every smooth epimorphism from a signature onto C_M.
    Enumerate {
        signature: String,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        up_to_aut: bool,
    },
    /// Exhaustive census over signatures and epimorphisms.
    Census {
        /// A single order `M` or a range `A-B`.
        #[arg(long)]
        order: OrderRange,
        #[arg(long, default_value_t = DEFAULT_GENUS_CAP)]
        max_genus: u64,
        #[arg(long)]
        up_to_aut: bool,
        /// Cross-check every row with the oracle.
        #[arg(long)]
        verify: bool,
        /// Keep only rows attaining the Scherrer bound.
        #[arg(long)]
        extremal: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the brute-force oracle on one epimorphism, or on every v with --all-v.
    Verify {
        signature: Option<String>,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        all_v: bool,
    },
    /// Largest cyclic order acting on a surface of the given genus.
    MaxOrder {
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = DEFAULT_GENUS_CAP)]
        cap: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disagreement(_) => EXIT_DISAGREEMENT,
            Error::InvalidEpimorphism(_) => EXIT_INVALID,
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 1,
            message: format!("write failed: {e}"),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self {
            code: 1,
            message: format!("write failed: {e}"),
        }
    }
}

/// Runs one subcommand and returns the process exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Analyze {
            signature,
            order,
            map,
        } => analyze(config.format, signature, *order, map, out),
        Command::Enumerate {
            signature,
            order,
            up_to_aut,
        } => enumerate(config.format, signature, *order, *up_to_aut, out),
        Command::Census {
            order,
            max_genus,
            up_to_aut,
            verify,
            extremal,
            workers,
        } => {
            let opts = CensusOptions {
                up_to_aut: *up_to_aut,
                verify: *verify,
                workers: *workers,
            };
            run_census(config.format, *order, *max_genus, &opts, *extremal, out)
        }
        Command::Verify {
            signature,
            order,
            map,
            all_v,
        } => verify(
            config.format,
            signature.as_deref(),
            *order,
            map.as_deref(),
            *all_v,
            out,
            err,
        ),
        Command::MaxOrder { genus, cap } => max_order(config.format, *genus, *cap, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn build_epimorphism(signature: &str, order: u64, map: &str) -> Result<CyclicEpimorphism, Failure> {
    let sig = parse_signature(signature).map_err(|e| Failure::config(format!("signature {e}")))?;
    let map = parse_map(map).map_err(|e| Failure::config(format!("map {e}")))?;
    Ok(CyclicEpimorphism::from_map(sig, order, &map)?)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    signature: String,
    modulus: u64,
    images: String,
    validation: &'a ValidationReport,
    report: Option<&'a FixedPointReport>,
}

fn analyze(
    format: Format,
    signature: &str,
    order: u64,
    map: &str,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let epi = build_epimorphism(signature, order, map)?;
    let validation = validate(&epi);
    let report = if validation.valid {
        Some(full_report(&epi)?)
    } else {
        None
    };
    match format {
        Format::Json => write_json(
            out,
            &AnalyzeOutput {
                signature: epi.signature().to_string(),
                modulus: order,
                images: format_map(&epi),
                validation: &validation,
                report: report.as_ref(),
            },
        )?,
        Format::Csv => {
            if let Some(report) = &report {
                let row = census::census_row(epi.clone())?;
                debug_assert_eq!(&row.report, report);
                write_csv(&[row], &mut *out)?;
            }
        }
        Format::Table => write_analysis_table(out, &epi, &validation, report.as_ref())?,
    }
    Ok(if validation.valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn write_analysis_table(
    out: &mut dyn Write,
    epi: &CyclicEpimorphism,
    validation: &ValidationReport,
    report: Option<&FixedPointReport>,
) -> io::Result<()> {
    writeln!(out, "signature  {}", epi.signature())?;
    writeln!(out, "order      M = {}", epi.modulus())?;
    writeln!(out, "map        {}", format_map(epi))?;
    writeln!(out, "checks")?;
    for c in &validation.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "  {:<22} {status}  {}", c.name.to_string(), c.detail)?;
    }
    let Some(report) = report else {
        return writeln!(out, "INVALID");
    };
    writeln!(out, "kernel genus p = {}", report.kernel_genus)?;
    writeln!(out, "{:>6} {:>6} {:>9}", "power", "order", "isolated")?;
    for row in &report.per_power {
        writeln!(
            out,
            "{:>6} {:>6} {:>9}",
            row.power, row.order, row.isolated_count
        )?;
    }
    if let Some(inv) = &report.involution {
        let n = report.modulus / 2;
        writeln!(
            out,
            "involution t^{n}: F = {}, V = {}",
            inv.isolated_total, inv.oval_total
        )?;
        for (j, c) in inv.per_cycle.iter().enumerate() {
            let kind = if c.twisted { "twisted" } else { "untwisted" };
            writeln!(
                out,
                "  c{}: v = {}, {} oval(s), {kind}",
                j + 1,
                c.v,
                c.oval_count
            )?;
        }
        let eq = if inv.scherrer_equality {
            " (equality)"
        } else {
            ""
        };
        writeln!(
            out,
            "Scherrer   |F| + 2|V| = {} <= p + 2 = {}{eq}",
            inv.scherrer_lhs, inv.scherrer_rhs
        )?;
    } else {
        writeln!(out, "no involution (M odd)")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumeratedRow {
    images: String,
    image_tuple: Vec<u64>,
    kernel_genus: Option<u64>,
}

fn enumerate(
    format: Format,
    signature: &str,
    order: u64,
    up_to_aut: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if order == 0 {
        return Err(Failure::config("order must be positive"));
    }
    let sig = parse_signature(signature).map_err(|e| Failure::config(format!("signature {e}")))?;
    let rows: Vec<EnumeratedRow> = census::enumerate_epimorphisms(&sig, order, up_to_aut)
        .iter()
        .map(|e| EnumeratedRow {
            images: format_map(e),
            image_tuple: e.image_tuple(),
            kernel_genus: sig.kernel_genus(order).ok(),
        })
        .collect();
    match format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["signature", "M", "images", "p"])
                .map_err(io::Error::from)?;
            for r in &rows {
                let p = r.kernel_genus.map(|p| p.to_string()).unwrap_or_default();
                w.write_record([sig.to_string(), order.to_string(), r.images.clone(), p])
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        Format::Table => {
            for r in &rows {
                writeln!(out, "{}", r.images)?;
            }
            writeln!(
                out,
                "{} epimorphism(s) from {sig} onto C_{order}",
                rows.len()
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn run_census(
    format: Format,
    orders: OrderRange,
    max_genus: u64,
    opts: &CensusOptions,
    extremal: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut rows: Vec<CensusRow> = Vec::new();
    for m in orders.from..=orders.to {
        rows.extend(census::census(m, max_genus, opts)?);
    }
    if extremal {
        rows.retain(|r| r.scherrer_equality);
    }
    match format {
        Format::Csv => write_csv(&rows, &mut *out)?,
        Format::Json => write_jsonl(&rows, &mut *out)?,
        Format::Table => {
            writeln!(
                out,
                "{:<28} {:>3} {:<32} {:>3} {:>3} {:>3} {:<14} {:>5}",
                "signature", "M", "images", "p", "F", "V", "twists", "slack"
            )?;
            for r in &rows {
                let inv = r.report.involution.as_ref();
                let num = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{:<28} {:>3} {:<32} {:>3} {:>3} {:>3} {:<14} {:>5}{}",
                    r.signature.to_string(),
                    r.modulus,
                    r.images,
                    r.kernel_genus,
                    num(inv.map(|i| i.isolated_total)),
                    num(inv.map(|i| i.oval_total)),
                    inv.map(|i| crate::fixedpoints::twist_string(&i.per_cycle))
                        .unwrap_or_default(),
                    r.scherrer_slack
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| "-".into()),
                    if r.canonical { "" } else { "  (non-canonical)" }
                )?;
            }
            writeln!(out, "{} row(s)", rows.len())?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(
    format: Format,
    signature: Option<&str>,
    order: u64,
    map: Option<&str>,
    all_v: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if all_v {
        if signature.is_some() || map.is_some() {
            return Err(Failure::config("--all-v takes no signature or map"));
        }
        let transcript = sweep(order)?;
        match format {
            Format::Table => {
                writeln!(
                    out,
                    "{:>4} {:>6} {:>8} {:>11} {:>9} {:>4} {:>8}",
                    "v", "delta", "epsilon", "doublecoset", "N/delta", "gcd", "twisted"
                )?;
                for r in &transcript.records {
                    let c = &r.cycle;
                    writeln!(
                        out,
                        "{:>4} {:>6} {:>8} {:>11} {:>9} {:>4} {:>8}",
                        c.v,
                        c.delta,
                        c.epsilon,
                        c.class_count_doublecoset,
                        c.class_count_exponent,
                        r.gcd_count,
                        c.twisted_by_theta_prime
                    )?;
                }
                writeln!(out, "agreement: {}", transcript.agreement)?;
            }
            _ => write_json(out, &transcript)?,
        }
        if let Some(first) = &transcript.first_disagreement {
            writeln!(err, "disagreement: {first}")?;
            return Ok(EXIT_DISAGREEMENT);
        }
        return Ok(EXIT_OK);
    }

    let (Some(signature), Some(map)) = (signature, map) else {
        return Err(Failure::config(
            "verify needs a signature and --map, or --all-v",
        ));
    };
    let epi = build_epimorphism(signature, order, map)?;
    let transcript = cross_check(&epi)?;
    match format {
        Format::Table => {
            for (j, c) in transcript.per_cycle.iter().enumerate() {
                writeln!(
                    out,
                    "c{}: v = {}, delta = {}, epsilon = {}, classes = {} / {}, twisted = {}",
                    j + 1,
                    c.v,
                    c.delta,
                    c.epsilon,
                    c.class_count_doublecoset,
                    c.class_count_exponent,
                    c.twisted_by_theta_prime
                )?;
            }
            for p in &transcript.per_power_fixed {
                writeln!(
                    out,
                    "t^{}: coset orbits {:?} = {} (formula {})",
                    p.power, p.per_period, p.total, p.formula
                )?;
            }
            writeln!(out, "agreement: {}", transcript.agreement)?;
        }
        _ => write_json(out, &transcript)?,
    }
    if let Some(first) = &transcript.first_disagreement {
        writeln!(err, "disagreement: {first}")?;
        return Ok(EXIT_DISAGREEMENT);
    }
    Ok(EXIT_OK)
}

fn max_order(format: Format, genus: u64, cap: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = census::max_cyclic_order(genus, cap)?;
    match format {
        Format::Json => write_json(out, &serde_json::json!({ "genus": genus, "max_order": m }))?,
        Format::Csv => writeln!(out, "genus,max_order\n{genus},{m}")?,
        Format::Table => writeln!(out, "{m}")?,
    }
    Ok(EXIT_OK)
}
