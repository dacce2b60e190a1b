//! Run reports: a deterministic body plus run metadata kept out of the digest.

use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use seccyc::structure::ValidationReport;
use seccyc::suites::SuiteOutcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub degree: usize,
    pub betti: usize,
    /// Both adjacent differentials were built.
    pub windowed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub theory: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    pub dims: Vec<usize>,
    pub degrees: Vec<BettiEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Settings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    pub suites: Vec<String>,
    pub seed: u64,
    pub cap: u64,
    pub allow_positive_characteristic: bool,
}

/// Everything that depends only on (input, seed, version).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Content {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub field: String,
    pub settings: Settings,
    pub validation: Vec<ValidationReport>,
    pub betti: Vec<BettiTable>,
    pub suites: Vec<SuiteOutcome>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunInfo {
    pub timestamp: u64,
    pub wall_time_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_rss_kb: Option<u64>,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub report_digest: String,
    pub content: Content,
    pub run: RunInfo,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Peak resident set size from `/proc`, where available.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

impl RunReport {
    pub fn new(content: Content, wall: Duration, jobs: usize) -> Result<Self> {
        let body = serde_json::to_vec(&content)?;
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Ok(RunReport {
            report_digest: sha256_hex(&body),
            content,
            run: RunInfo { timestamp, wall_time_ms: wall.as_millis(), peak_rss_kb: peak_rss_kb(), jobs },
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per (theory, degree, betti) and one per check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "name", "degree", "value", "windowed"])?;
        for t in &self.content.betti {
            let name = match &t.coefficients {
                Some(m) => format!("{} ({m})", t.theory),
                None => t.theory.clone(),
            };
            for d in &t.degrees {
                w.write_record(["betti", &name, &d.degree.to_string(), &d.betti.to_string(), &d.windowed.to_string()])?;
            }
        }
        for s in &self.content.suites {
            for c in &s.checks {
                let name = format!("{}: {}", s.suite, c.name);
                w.write_record(["check", &name, "", if c.passed { "pass" } else { "fail" }, ""])?;
            }
        }
        for v in &self.content.validation {
            for x in &v.violations {
                let name = format!("{}: {}", v.object, x.axiom);
                w.write_record(["violation", &name, "", &x.witness.join(" "), ""])?;
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("report.json"), self.to_json()?)?;
        std::fs::write(dir.join("betti.csv"), self.to_csv()?)?;
        Ok(())
    }
}
