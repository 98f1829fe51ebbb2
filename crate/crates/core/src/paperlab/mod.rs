//! Named, exact verifications with a machine-readable report.
//!
//! Two suites are shipped. `paper` is the catalogue of identities about
//! potential mKdV and its three-variable relatives; `properties` holds the
//! randomized structural invariants of the kernel. Every check is exact and
//! deterministic for a given [`Lab`] configuration.

mod checks;
mod props;
mod random;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::EvolutionSystem;
use crate::error::{JetError, Result};
use crate::jetcore::{DiffPoly, JetContext};
use crate::operators::{CDiffOp, Fault, OpAlgebra};

pub use random::{PolyGen, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub elapsed_ms: u64,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    fn new(suite: &str, results: Vec<CheckResult>) -> Report {
        let pass = results.iter().filter(|r| r.passed()).count();
        let summary = Summary {
            pass,
            fail: results.len() - pass,
        };
        Report {
            suite: suite.to_string(),
            results,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {:<24} {}\n", r.check_id, r.details));
            if let Some(cx) = &r.counterexample {
                out.push_str(&format!("     counterexample: {cx}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed\n",
            self.suite, self.summary.pass, self.summary.fail
        ));
        out
    }
}

/// Outcome of a single check body, before timing is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub details: String,
    pub counterexample: Option<String>,
}

impl Outcome {
    pub fn pass(details: impl Into<String>) -> Self {
        Outcome {
            passed: true,
            details: details.into(),
            counterexample: None,
        }
    }

    pub fn fail(details: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Outcome {
            passed: false,
            details: details.into(),
            counterexample: Some(counterexample.into()),
        }
    }
}

type CheckFn = fn(&Lab) -> Result<Outcome>;

pub struct CheckDef {
    pub id: &'static str,
    pub summary: &'static str,
    run: CheckFn,
}

pub const SUITES: &[&str] = &["paper", "properties"];

/// Configuration shared by all checks.
#[derive(Clone, Debug)]
pub struct Lab {
    pub cases: usize,
    pub seed: u64,
    fault: Option<Fault>,
}

impl Default for Lab {
    fn default() -> Self {
        Lab {
            cases: 100,
            seed: 0x6a65_7476_6172,
            fault: None,
        }
    }
}

impl Lab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cases(mut self, cases: usize) -> Self {
        self.cases = cases;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Run every check against a deliberately broken operator algebra.
    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub(crate) fn algebra<'a>(&self, sys: &'a EvolutionSystem) -> Result<OpAlgebra<'a>> {
        Ok(OpAlgebra::for_system(sys)?.with_fault(self.fault))
    }

    pub fn catalogue(suite: &str) -> Result<&'static [CheckDef]> {
        match suite {
            "paper" => Ok(checks::PAPER),
            "properties" => Ok(props::PROPERTIES),
            _ => Err(JetError::Unsupported(format!("unknown suite `{suite}`"))),
        }
    }

    fn find(id: &str) -> Result<&'static CheckDef> {
        SUITES
            .iter()
            .flat_map(|s| Self::catalogue(s).unwrap_or(&[]))
            .find(|c| c.id == id)
            .ok_or_else(|| JetError::Unsupported(format!("unknown check `{id}`")))
    }

    pub fn run_check(&self, id: &str) -> Result<CheckResult> {
        Ok(self.run_def(Self::find(id)?))
    }

    fn run_def(&self, def: &CheckDef) -> CheckResult {
        let start = Instant::now();
        let outcome = (def.run)(self)
            .unwrap_or_else(|e| Outcome::fail(format!("{}: error", def.summary), e.to_string()));
        CheckResult {
            check_id: def.id.to_string(),
            status: if outcome.passed {
                Status::Pass
            } else {
                Status::Fail
            },
            elapsed_ms: start.elapsed().as_millis() as u64,
            details: outcome.details,
            counterexample: outcome.counterexample,
        }
    }

    /// Run a suite, optionally restricted to the listed check ids; results
    /// keep catalogue order.
    pub fn run_suite(&self, suite: &str, filter: Option<&[String]>) -> Result<Report> {
        let defs = Self::catalogue(suite)?;
        if let Some(ids) = filter {
            if let Some(bad) = ids
                .iter()
                .find(|id| !defs.iter().any(|d| d.id == id.as_str()))
            {
                return Err(JetError::Unsupported(format!(
                    "unknown check `{bad}` in suite `{suite}`"
                )));
            }
        }
        let selected: Vec<&CheckDef> = defs
            .iter()
            .filter(|d| filter.is_none_or(|ids| ids.iter().any(|id| id == d.id)))
            .collect();
        let results = selected.par_iter().map(|d| self.run_def(d)).collect();
        Ok(Report::new(suite, results))
    }
}

/// Accumulates named identity claims; the first failure becomes the
/// counterexample.
pub(crate) struct Claims<'a> {
    ctx: &'a JetContext,
    passed: Vec<String>,
    failure: Option<(String, String)>,
}

impl<'a> Claims<'a> {
    pub fn new(ctx: &'a JetContext) -> Self {
        Claims {
            ctx,
            passed: Vec::new(),
            failure: None,
        }
    }

    pub fn holds(&mut self, label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let label = label.into();
        if ok {
            self.passed.push(label);
        } else if self.failure.is_none() {
            self.failure = Some((label, witness()));
        }
    }

    pub fn eq(&mut self, label: impl Into<String>, got: &DiffPoly, want: &DiffPoly) {
        let ctx = self.ctx;
        self.holds(label, got == want, || {
            format!("got {}, expected {}", got.to_text(ctx), want.to_text(ctx))
        });
    }

    pub fn zero(&mut self, label: impl Into<String>, got: &DiffPoly) {
        self.eq(label, got, &DiffPoly::zero());
    }

    pub fn op_eq(&mut self, label: impl Into<String>, got: &CDiffOp, want: &CDiffOp) {
        let ctx = self.ctx;
        self.holds(label, got == want, || {
            format!("got {}, expected {}", got.to_text(ctx), want.to_text(ctx))
        });
    }

    pub fn finish(self, extra: &str) -> Outcome {
        let mut details = self.passed.join("; ");
        if !extra.is_empty() {
            if !details.is_empty() {
                details.push_str("; ");
            }
            details.push_str(extra);
        }
        match self.failure {
            None => Outcome::pass(details),
            Some((label, cx)) => Outcome::fail(format!("{label} fails"), cx),
        }
    }
}

/// Run `case` on `lab.cases` seeded inputs, stopping at the first
/// counterexample.
pub(crate) fn for_cases<F>(
    lab: &Lab,
    stream: u64,
    label: &str,
    cases: usize,
    mut case: F,
) -> Result<Outcome>
where
    F: FnMut(&mut PolyGen) -> Result<Option<String>>,
{
    let seed = lab
        .seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(stream);
    let mut gen = PolyGen::new(seed);
    for n in 0..cases {
        if let Some(cx) = case(&mut gen)? {
            return Ok(Outcome::fail(
                format!("{label}: case {} of {cases} fails", n + 1),
                cx,
            ));
        }
    }
    Ok(Outcome::pass(format!("{label}: {cases} random cases")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_filter_gives_empty_report() {
        let r = Lab::new().run_suite("paper", Some(&[])).unwrap();
        assert!(r.results.is_empty());
        assert!(r.all_passed());
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(Lab::new().run_check("no-such-check").is_err());
        assert!(Lab::new().run_suite("nope", None).is_err());
        assert!(Lab::new()
            .run_suite("paper", Some(&["nope".to_string()]))
            .is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let r = Lab::new()
            .run_suite("paper", Some(&["remark-density".to_string()]))
            .unwrap();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_json().contains("counterexample"));
    }
}
