//! JSON-lines reports: one header record, then one record per check.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sov_core::{Check, Outcome};

pub const SCHEMA: &str = "sov-verify-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Equation labels a record may cite.
pub const ANCHORS: &[&str] = &[
    "ABsl3", "APsi", "Aaction", "Asl3", "B1", "B1psi", "B2", "BTsl3", "BW", "Bact", "Bnew", "Bsl2", "Bsl3", "LL",
    "Laxsl2", "Laxsl3", "Omega", "Phixsl3", "Phizsl3", "Psipdef", "Psipdef1", "Psisl3", "Pss", "R", "R3", "S12",
    "S1Sk", "S1defsl2", "S1formsl2", "S1k", "S1sl3", "S2def", "S2k", "Scond", "Sepsl2", "Sepsl3", "Sk", "TT", "Tg",
    "Top", "Tsl2", "YB", "act1", "act2", "asympt", "ceq", "ceq1", "commsl3", "coprod", "coprod1", "exp", "final",
    "gensl2", "globsln", "hams", "idea", "ldef", "master", "minor1", "minor2", "mon", "parsl2", "prop1", "prop2",
    "prop3", "qcond", "qdet", "rs", "s2l", "s3l", "sepsl2", "sepsl3", "slncomm", "t1", "t2", "trans", "unit", "v",
    "want", "yangian",
];

pub fn is_known_anchor(a: &str) -> bool {
    ANCHORS.contains(&a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub version: u32,
    pub algebra: String,
    pub n: usize,
    pub seed: u64,
    pub suites: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub anchor: String,
    /// `pass`, `fail` or `skipped`.
    pub status: String,
    /// Failure kind: `mismatch`, `degree-cap` or `error`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<String>,
    /// Residual on failure, reason when skipped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub wall_ms: u64,
}

impl Record {
    pub fn from_check(suite: &str, c: &Check, wall_ms: u64) -> Self {
        let residual = match &c.outcome {
            Outcome::Pass => None,
            Outcome::Fail { residual } => Some(residual.clone()),
            Outcome::Skipped { reason } => Some(reason.clone()),
            Outcome::Overflow { message } | Outcome::Error { message } => Some(message.clone()),
        };
        Record {
            suite: suite.to_string(),
            check: c.name.to_string(),
            anchor: c.anchor.to_string(),
            status: c.outcome.status().to_string(),
            kind: c.outcome.kind().map(str::to_string),
            residual,
            note: c.note.clone(),
            wall_ms,
        }
    }

    pub fn is_failure(&self) -> bool {
        self.status == "fail"
    }
}

/// A complete report.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: Header,
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.records.iter().any(Record::is_failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.is_failure())
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        let mut rw = ReportWriter::new(w, &self.header)?;
        for r in &self.records {
            rw.write(r)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn parse(text: &str) -> serde_json::Result<Report> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Header = serde_json::from_str(lines.next().unwrap_or(""))?;
        let records = lines.map(serde_json::from_str).collect::<serde_json::Result<Vec<Record>>>()?;
        Ok(Report { header, records })
    }
}

/// Serializes records one per line; the only place report output happens.
pub struct ReportWriter<W: Write> {
    out: W,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(mut out: W, header: &Header) -> std::io::Result<Self> {
        serde_json::to_writer(&mut out, header)?;
        out.write_all(b"\n")?;
        Ok(ReportWriter { out })
    }

    pub fn write(&mut self, r: &Record) -> std::io::Result<()> {
        serde_json::to_writer(&mut self.out, r)?;
        self.out.write_all(b"\n")
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Drops wall-time fields, for determinism comparisons.
pub fn strip_wall_time(text: &str) -> String {
    text.lines()
        .map(|l| match serde_json::from_str::<serde_json::Value>(l) {
            Ok(mut v) => {
                if let Some(o) = v.as_object_mut() {
                    o.remove("wall_ms");
                }
                v.to_string()
            }
            Err(_) => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let header = Header {
            schema: SCHEMA.into(),
            version: SCHEMA_VERSION,
            algebra: "sl2".into(),
            n: 1,
            seed: 0,
            suites: vec!["rtt".into()],
        };
        let checks = [
            Check::new("a", "yangian", Outcome::Pass),
            Check::new("b", "qdet", Outcome::fail("x1")),
            Check::new("c", "final", Outcome::Skipped { reason: "off lattice".into() }),
        ];
        let records = checks.iter().map(|c| Record::from_check("rtt", c, 3)).collect();
        let report = Report { header, records };
        let text = report.to_jsonl();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(Report::parse(&text).unwrap(), report);
        assert!(!report.passed());
        assert_eq!(report.records[1].kind.as_deref(), Some("mismatch"));
        assert!(!strip_wall_time(&text).contains("wall_ms"));
    }
}
