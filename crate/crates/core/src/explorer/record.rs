use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use super::RegionLabel;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "purity,discord,provenance,seed_index";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Random,
    HillClimbed,
    Family(RegionLabel),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Random => f.write_str("random"),
            Provenance::HillClimbed => f.write_str("hill_climbed"),
            Provenance::Family(r) => write!(f, "family_{r}"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Provenance::Random),
            "hill_climbed" => Ok(Provenance::HillClimbed),
            _ => s
                .strip_prefix("family_")
                .and_then(|r| {
                    let mut chars = r.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => RegionLabel::from_char(c),
                        _ => None,
                    }
                })
                .map(Provenance::Family)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown provenance \"{s}\""))),
        }
    }
}

/// One point of the (purity, discord) survey.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRecord {
    pub purity: f64,
    pub discord: f64,
    pub provenance: Provenance,
    pub seed_index: u64,
}

/// Writes the header and one LF-terminated row per record; floats carry 17
/// significant digits so they re-parse exactly.
pub fn write_records_csv<W: Write>(mut w: W, records: &[BoundaryRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{:.16e},{:.16e},{},{}", r.purity, r.discord, r.provenance, r.seed_index)?;
    }
    w.flush()
}

pub fn parse_records_csv<R: BufRead>(r: R) -> Result<Vec<BoundaryRecord>> {
    let mut lines = r.lines();
    let bad = |msg: String| Error::InvalidArgument(msg);
    match lines.next() {
        Some(Ok(h)) if h == CSV_HEADER => {}
        _ => return Err(bad("missing CSV header".into())),
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| bad(e.to_string()))?;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(format!("row {}: expected 4 fields", i + 1)));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("row {}: bad number {s}", i + 1)));
        out.push(BoundaryRecord {
            purity: num(fields[0])?,
            discord: num(fields[1])?,
            provenance: fields[2].parse()?,
            seed_index: fields[3]
                .parse()
                .map_err(|_| bad(format!("row {}: bad seed index", i + 1)))?,
        });
    }
    Ok(out)
}
