//! Verification reports with exact counterexample witnesses.
//!
//! Every `verify_*` entry point in this crate produces a [`Report`]: one
//! [`Check`] per mathematical law, each either passing or failing with a
//! [`Witness`] — the exact sample assignment plus the two sides of the law
//! that disagreed. Reports are deterministic for a given structure and
//! sampling degree; only `elapsed_ms` varies between runs and is excluded
//! from any equality or golden-output expectations.

use serde::Serialize;

/// Outcome of a single law check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first counterexample found for a failing law.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Human-readable bindings, e.g. `x = e_1`, `f = t^2`.
    pub assignment: Vec<String>,
    /// Exact rendering of the law's left-hand side at the assignment.
    pub lhs: String,
    /// Exact rendering of the law's right-hand side at the assignment.
    pub rhs: String,
}

/// One verified law.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable identifier, e.g. `d.square_zero`.
    pub id: String,
    /// Statement of the law in words (what was verified, not where it
    /// comes from).
    pub law: String,
    pub status: Status,
    /// Present exactly when `status == Fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    /// A passing check.
    pub fn pass(id: impl Into<String>, law: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            law: law.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    /// A failing check with its counterexample.
    pub fn fail(id: impl Into<String>, law: impl Into<String>, witness: Witness) -> Self {
        Check {
            id: id.into(),
            law: law.into(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    /// Builds a check from an optional counterexample.
    pub fn from_witness(
        id: impl Into<String>,
        law: impl Into<String>,
        witness: Option<Witness>,
    ) -> Self {
        match witness {
            None => Check::pass(id, law),
            Some(w) => Check::fail(id, law, w),
        }
    }
}

/// A full verification report for one structure.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// What was verified, e.g. `hom-lie algebroid (rank 2 over QQ[t])`.
    pub structure: String,
    /// Monomial sampling bound used by the checks.
    pub max_degree: u32,
    pub checks: Vec<Check>,
    /// Wall-clock milliseconds; informational only, never part of
    /// determinism guarantees.
    pub elapsed_ms: u128,
}

impl Report {
    /// Creates an empty report shell.
    pub fn new(structure: impl Into<String>, max_degree: u32) -> Self {
        Report {
            structure: structure.into(),
            max_degree,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// True iff every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// The identifiers of failing checks.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }

    /// Appends all checks of another report, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut check in other.checks {
            check.id = format!("{prefix}.{}", check.id);
            self.checks.push(check);
        }
    }

    /// Renders the report as human-readable lines.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verifying {} (sampling degree {})\n",
            self.structure, self.max_degree
        ));
        for c in &self.checks {
            match c.status {
                Status::Pass => out.push_str(&format!("  PASS {} — {}\n", c.id, c.law)),
                Status::Fail => {
                    out.push_str(&format!("  FAIL {} — {}\n", c.id, c.law));
                    if let Some(w) = &c.witness {
                        out.push_str(&format!("       at {}\n", w.assignment.join(", ")));
                        out.push_str(&format!("       lhs = {}\n", w.lhs));
                        out.push_str(&format!("       rhs = {}\n", w.rhs));
                    }
                }
            }
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        if failed == 0 {
            out.push_str(&format!("  all {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!(
                "  {failed} of {} checks FAILED\n",
                self.checks.len()
            ));
        }
        out
    }
}
