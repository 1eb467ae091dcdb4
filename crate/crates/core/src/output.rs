//! Flat-file census output. Both formats end with a trailer carrying the row
//! count and the SHA-256 of every byte written before it.

use std::io::{self, Write};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::census::CensusRow;
use crate::fixedpoints::twist_string;

pub const CSV_HEADER: [&str; 9] = [
    "signature",
    "M",
    "images",
    "p",
    "F",
    "V",
    "twists",
    "scherrer_slack",
    "canonical",
];

/// Passes bytes through while hashing them.
struct Hashing<W> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for Hashing<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

fn csv_fields(row: &CensusRow) -> [String; 9] {
    let inv = row.report.involution.as_ref();
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    [
        row.signature.to_string(),
        row.modulus.to_string(),
        row.images.clone(),
        row.kernel_genus.to_string(),
        opt(inv.map(|i| i.isolated_total)),
        opt(inv.map(|i| i.oval_total)),
        inv.map(|i| twist_string(&i.per_cycle)).unwrap_or_default(),
        row.scherrer_slack
            .map(|s| s.to_string())
            .unwrap_or_default(),
        row.canonical.to_string(),
    ]
}

/// CSV rows followed by `#trailer,rows=<n>,sha256=<hex>`.
pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> io::Result<()> {
    let mut hashing = Hashing {
        inner: out,
        hasher: Sha256::new(),
    };
    {
        let mut writer = csv::Writer::from_writer(&mut hashing);
        writer.write_record(CSV_HEADER)?;
        for row in rows {
            writer.write_record(csv_fields(row))?;
        }
        writer.flush()?;
    }
    let digest = hex::encode(hashing.hasher.finalize_reset());
    writeln!(
        hashing.inner,
        "#trailer,rows={},sha256={digest}",
        rows.len()
    )?;
    hashing.inner.flush()
}

#[derive(Serialize)]
struct Trailer {
    rows: usize,
    sha256: String,
}

#[derive(Serialize)]
struct TrailerRecord {
    trailer: Trailer,
}

/// One JSON object per row, then `{"trailer":{"rows":n,"sha256":"..."}}`.
pub fn write_jsonl<W: Write>(rows: &[CensusRow], out: W) -> io::Result<()> {
    let mut hashing = Hashing {
        inner: out,
        hasher: Sha256::new(),
    };
    for row in rows {
        serde_json::to_writer(&mut hashing, row)?;
        hashing.write_all(b"\n")?;
    }
    let record = TrailerRecord {
        trailer: Trailer {
            rows: rows.len(),
            sha256: hex::encode(hashing.hasher.finalize_reset()),
        },
    };
    serde_json::to_writer(&mut hashing.inner, &record)?;
    writeln!(hashing.inner)?;
    hashing.inner.flush()
}
