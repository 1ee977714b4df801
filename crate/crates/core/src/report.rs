//! Verification reports: per-component (or per-point) residual records with
//! an overall pass flag.

use serde::Serialize;

use crate::solver::ConstraintPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportMode {
    Symbolic,
    Numeric,
}

/// One residual check: either an exact-zero flag (symbolic mode) or a
/// numeric magnitude against the report tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualEntry {
    /// What was checked, e.g. a component index or a sample-point label.
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub magnitude: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ResidualEntry {
    pub fn exact(label: impl Into<String>, is_zero: bool) -> Self {
        ResidualEntry {
            label: label.into(),
            exact_zero: Some(is_zero),
            magnitude: None,
            pass: is_zero,
            detail: None,
        }
    }

    pub fn exact_with_detail(label: impl Into<String>, is_zero: bool, detail: impl Into<String>) -> Self {
        ResidualEntry {
            detail: Some(detail.into()),
            ..ResidualEntry::exact(label, is_zero)
        }
    }

    pub fn numeric(label: impl Into<String>, magnitude: f64, tolerance: f64) -> Self {
        ResidualEntry {
            label: label.into(),
            exact_zero: None,
            magnitude: Some(magnitude),
            pass: magnitude <= tolerance,
            detail: None,
        }
    }
}

/// Per-equation residual report.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub mode: ReportMode,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub entries: Vec<ResidualEntry>,
    /// Present when the residual factors as `c(t) * field`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_poly: Option<ConstraintPoly>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn symbolic(equation: impl Into<String>, entries: Vec<ResidualEntry>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        ResidualReport {
            equation: equation.into(),
            mode: ReportMode::Symbolic,
            pass,
            tolerance: None,
            entries,
            residual_poly: None,
            notes: Vec::new(),
        }
    }

    pub fn numeric(equation: impl Into<String>, tolerance: f64, entries: Vec<ResidualEntry>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        ResidualReport {
            equation: equation.into(),
            mode: ReportMode::Numeric,
            pass,
            tolerance: Some(tolerance),
            entries,
            residual_poly: None,
            notes: Vec::new(),
        }
    }

    pub fn with_poly(mut self, poly: ConstraintPoly) -> Self {
        self.residual_poly = Some(poly);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Marks the whole report failed regardless of entries (structural
    /// failures such as a residual that does not factor).
    pub fn failed(mut self, note: impl Into<String>) -> Self {
        self.pass = false;
        self.notes.push(note.into());
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}
