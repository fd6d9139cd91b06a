use serde::{Deserialize, Serialize};

use crate::coloring::ColoringKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Machine-checkable outcome of a verification.
///
/// On failure `edge` holds the offending vertex set (sorted), and for
/// path-based checks `endpoints` names the path's two ends. `reason` is a
/// short kebab-case code; `detail` is free text for humans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub kind: Option<ColoringKind>,
    pub edge: Option<Vec<usize>>,
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    pub fn pass(kind: Option<ColoringKind>) -> Self {
        Self {
            verdict: Verdict::Pass,
            kind,
            edge: None,
            reason: None,
            endpoints: None,
            detail: None,
        }
    }

    pub fn fail(kind: Option<ColoringKind>, reason: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::Fail,
            kind,
            edge: None,
            reason: Some(reason.into()),
            endpoints: None,
            detail: None,
        }
    }

    /// Fail certificate naming an edge violating `kind`.
    pub fn violation(kind: ColoringKind, mut edge: Vec<usize>) -> Self {
        edge.sort_unstable();
        Self {
            edge: Some(edge),
            ..Self::fail(Some(kind), kind.violation_code())
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn with_endpoints(mut self, u: usize, v: usize) -> Self {
        self.endpoints = Some([u, v]);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}
