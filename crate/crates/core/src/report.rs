//! Structured verifier output: text lines plus named certificate checks.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub lines: Vec<String>,
    pub certificates: Vec<CertificateCheck>,
    /// Wall-clock time, only recorded on request so that reruns stay
    /// byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report { command: command.into(), seed, lines: Vec::new(), certificates: Vec::new(), timing_ms: None }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.certificates.push(CertificateCheck { name: name.into(), passed, detail: detail.into() });
        passed
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
        self.certificates.extend(other.certificates);
    }

    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&CertificateCheck> {
        self.certificates.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} (seed {})", self.command, self.seed)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        if !self.certificates.is_empty() {
            writeln!(f, "-- certificates")?;
            for c in &self.certificates {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(f, "[{mark}] {}", c.name)?;
                } else {
                    writeln!(f, "[{mark}] {}: {}", c.name, c.detail)?;
                }
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(f, "-- time {ms} ms")?;
        }
        let verdict = if self.all_verified() { "verified" } else { "NOT verified" };
        write!(f, "== {verdict}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("verify setOps", 7);
        r.line("q = (x, y)");
        r.check("sample", true, "100 elements");
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.all_verified());
        r.check("bad", false, "");
        assert!(!r.all_verified());
        assert!(r.to_string().ends_with("NOT verified"));
    }
}
