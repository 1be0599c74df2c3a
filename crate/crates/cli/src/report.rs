//! Reports, verdicts and output formats.

use std::io;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use prop_homology_core::exactlin::DegreeStats;

use crate::job::{Claim, Job, Params};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn word(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Incomplete => "incomplete",
        }
    }
}

/// One named assertion of a claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: String::new() }
    }

    pub fn with(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Row of a dimension table (`dims` claim).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub kind: String,
    pub params: Vec<usize>,
    pub predicted: u128,
    pub constructed: u128,
}

/// What a claim computes; everything in a report except the timing and
/// the job echo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub degrees: Vec<DegreeStats>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<DimRow>>,
}

impl Outcome {
    /// `fail` if any check fails; `incomplete` if the checks hold but no
    /// degree of a nonempty window has both neighbours; `pass` otherwise.
    pub fn verdict(&self) -> Verdict {
        if self.checks.iter().any(|c| !c.pass) {
            Verdict::Fail
        } else if !self.degrees.is_empty() && self.degrees.iter().all(|d| !d.complete) {
            Verdict::Incomplete
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub claim: Claim,
    pub params: Params,
    pub degrees: Vec<DegreeStats>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<DimRow>>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub version: String,
    pub input_hash: String,
    /// Unix time in milliseconds; the only field besides `elapsed_ms` that
    /// differs between runs.
    pub timestamp: u64,
}

/// SHA-256 of the canonical JSON of the job and the tool version.
pub fn input_hash(job: &Job) -> String {
    let canon = serde_json::to_string(&(job, VERSION)).expect("job serializes");
    format!("{:x}", Sha256::digest(canon.as_bytes()))
}

impl Report {
    pub fn new(job: &Job, outcome: Outcome, elapsed_ms: u64, timestamp: u64) -> Self {
        let verdict = outcome.verdict();
        Report {
            claim: job.claim,
            params: job.params.clone(),
            degrees: outcome.degrees,
            checks: outcome.checks,
            table: outcome.table,
            verdict,
            elapsed_ms,
            version: VERSION.to_string(),
            input_hash: input_hash(job),
            timestamp,
        }
    }

    pub fn job(&self) -> Job {
        Job { claim: self.claim, params: self.params.clone() }
    }

    /// The report with the timing fields zeroed; byte-identical across runs
    /// with the same inputs.
    pub fn deterministic(&self) -> Report {
        Report { elapsed_ms: 0, timestamp: 0, ..self.clone() }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Degree table of each report, or the dimension table for `dims`.
pub fn write_csv<W: io::Write>(reports: &[Report], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.iter().all(|r| r.table.is_some()) && !reports.is_empty() {
        w.write_record(["claim", "kind", "params", "predicted", "constructed", "agree"])?;
        for r in reports {
            for row in r.table.iter().flatten() {
                let params: Vec<String> = row.params.iter().map(|p| p.to_string()).collect();
                w.write_record([
                    r.claim.id().to_string(),
                    row.kind.clone(),
                    params.join(" "),
                    row.predicted.to_string(),
                    row.constructed.to_string(),
                    (row.predicted == row.constructed).to_string(),
                ])?;
            }
        }
    } else {
        w.write_record(["job", "p", "dim", "rank_in", "rank_out", "betti", "complete"])?;
        for r in reports {
            let label = r.job().label();
            for d in &r.degrees {
                w.write_record([
                    label.clone(),
                    d.p.to_string(),
                    d.dim.to_string(),
                    d.rank_in.to_string(),
                    d.rank_out.to_string(),
                    d.betti.to_string(),
                    d.complete.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::Caps;

    fn job() -> Job {
        Job::new(Claim::Lemma34, Params { z: Some(2), ..Params::default() }, &Caps::default()).unwrap()
    }

    fn stats(complete: bool) -> DegreeStats {
        DegreeStats { p: 0, dim: 1, rank_in: 0, rank_out: 1, betti: 0, complete }
    }

    #[test]
    fn verdicts() {
        let mut o = Outcome { degrees: vec![stats(true)], checks: vec![Check::new("a", true)], table: None };
        assert_eq!(o.verdict(), Verdict::Pass);
        o.degrees = vec![stats(false)];
        assert_eq!(o.verdict(), Verdict::Incomplete);
        o.checks.push(Check::new("b", false));
        assert_eq!(o.verdict(), Verdict::Fail);
    }

    #[test]
    fn hash_depends_on_params_only() {
        let a = input_hash(&job());
        assert_eq!(a.len(), 64);
        assert_eq!(a, input_hash(&job()));
        let other = Job::new(Claim::Lemma34, Params { z: Some(3), ..Params::default() }, &Caps::default()).unwrap();
        assert_ne!(a, input_hash(&other));
    }

    #[test]
    fn json_field_order() {
        let o = Outcome { degrees: vec![stats(true)], checks: vec![], table: None };
        let r = Report::new(&job(), o, 5, 7);
        let s = to_json(&r.deterministic());
        let keys: Vec<usize> = ["\"claim\"", "\"params\"", "\"degrees\"", "\"verdict\"", "\"elapsed_ms\"", "\"version\"", "\"input_hash\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("\"elapsed_ms\": 0"));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r.deterministic());
    }

    #[test]
    fn csv_degree_table() {
        let o = Outcome { degrees: vec![stats(true)], checks: vec![], table: None };
        let r = Report::new(&job(), o, 0, 0);
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "job,p,dim,rank_in,rank_out,betti,complete\nlemma34 z=2,0,1,0,1,0,true\n");
    }
}
