//! Verification reports: a list of named checks with label witnesses, plus
//! free-form facts. Rendered as text or JSON.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::Serialize;

use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidError, ObjectId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub result: Outcome,
    pub value: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub status: Outcome,
    pub checks: Vec<Check>,
    pub facts: IndexMap<String, String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            status: Outcome::Pass,
            checks: Vec::new(),
            facts: IndexMap::new(),
        }
    }

    fn push(&mut self, check: Check) -> &mut Check {
        self.checks.push(check);
        self.status = self.compute_status();
        self.checks.last_mut().expect("just pushed")
    }

    /// Fail if any check failed; not applicable if every check was.
    fn compute_status(&self) -> Outcome {
        if self.checks.iter().any(|c| c.result == Outcome::Fail) {
            Outcome::Fail
        } else if !self.checks.is_empty() && self.checks.iter().all(|c| c.result == Outcome::NotApplicable) {
            Outcome::NotApplicable
        } else {
            Outcome::Pass
        }
    }

    /// A boolean check; `witness` is only kept when it failed.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: Vec<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            result: if ok { Outcome::Pass } else { Outcome::Fail },
            value: ok.to_string(),
            witness: if ok { Vec::new() } else { witness },
            note: None,
        })
    }

    /// Passes when `witness` is `None`.
    pub fn check_witness(&mut self, name: impl Into<String>, witness: Option<Vec<String>>) -> &mut Check {
        let ok = witness.is_none();
        self.check(name, ok, witness.unwrap_or_default())
    }

    pub fn pass(&mut self, name: impl Into<String>, value: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            result: Outcome::Pass,
            value: value.into(),
            witness: Vec::new(),
            note: None,
        })
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<String>, note: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            result: Outcome::Fail,
            value: "false".into(),
            witness,
            note: Some(note.into()),
        })
    }

    pub fn not_applicable(&mut self, name: impl Into<String>, note: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            result: Outcome::NotApplicable,
            value: "not applicable".into(),
            witness: Vec::new(),
            note: Some(note.into()),
        })
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl ToString) {
        self.facts.insert(name.into(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.status == Outcome::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "status: {}", outcome_name(self.status));
        for c in &self.checks {
            let _ = write!(out, "{}: {}", c.name, c.value);
            if !c.witness.is_empty() {
                let _ = write!(out, ", witness: ({})", c.witness.join(", "));
            }
            if let Some(note) = &c.note {
                let _ = write!(out, " [{note}]");
            }
            out.push('\n');
        }
        for (name, value) in &self.facts {
            let _ = writeln!(out, "{name}: {value}");
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::NotApplicable => "not_applicable",
    }
}

pub fn arrow(g: &FiniteGroupoid, a: ArrowId) -> String {
    g.arrow_label(a).to_string()
}

pub fn arrows(g: &FiniteGroupoid, list: &[ArrowId]) -> Vec<String> {
    list.iter().map(|a| arrow(g, *a)).collect()
}

pub fn object(g: &FiniteGroupoid, p: ObjectId) -> String {
    format!("object {}", g.object_label(p))
}

/// `{a, b}` style listing of an arrow set.
pub fn arrow_set(g: &FiniteGroupoid, list: &[ArrowId]) -> String {
    format!("{{{}}}", arrows(g, list).join(", "))
}

/// Labels named by a groupoid validation error.
pub fn groupoid_error_witness(e: &GroupoidError) -> Vec<String> {
    use GroupoidError::*;
    match e {
        TooManyObjects { .. } | TooManyArrows { .. } | EmptyBase => Vec::new(),
        DanglingReference(x) | MissingIdentity(x) | BadInverse(x) | UnknownObject(x) | DuplicateLabel(x) => {
            vec![x.clone()]
        }
        BadCompositionDomain { f, g } | ConflictingComposition { f, g } | IncompleteTable { f, g } => {
            vec![f.clone(), g.clone()]
        }
        CompositionEndpoints { f, g, h } => vec![f.clone(), g.clone(), h.clone()],
        NotNeutral { object, arrow } => vec![format!("object {object}"), arrow.clone()],
        NotAssociative { g, h, k } => vec![g.clone(), h.clone(), k.clone()],
        NotComposable { g, h } => vec![g.clone(), h.clone()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new("t");
        assert_eq!(r.status, Outcome::Pass);
        r.not_applicable("x", "n/a");
        assert_eq!(r.status, Outcome::NotApplicable);
        r.check("y", true, vec!["a".into()]);
        assert_eq!(r.status, Outcome::Pass);
        assert!(r.checks[1].witness.is_empty());
        r.check("z", false, vec!["a".into(), "object 1".into()]);
        assert_eq!(r.status, Outcome::Fail);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn text_rendering() {
        let mut r = Report::new("congruence profile");
        r.check("complete", false, vec!["a".into(), "object 1".into()]);
        r.check("simple", true, Vec::new());
        r.fact("classes", 3);
        assert_eq!(
            r.render_text(),
            "congruence profile\nstatus: fail\ncomplete: false, witness: (a, object 1)\nsimple: true\nclasses: 3\n"
        );
        let json: serde_json::Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["checks"][0]["witness"][1], "object 1");
    }
}
