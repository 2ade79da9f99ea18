use serde::{Deserialize, Serialize};

use crate::gassmann::GassmannCertificate;
use crate::perm::{PermGroup, Permutation};

/// Outcome of a `csinv` evaluation or a CS-condition check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Obstructed,
    Consistent,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Obstructed => "obstructed",
            Verdict::Consistent => "consistent",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescription {
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub generators: Vec<String>,
}

impl GroupDescription {
    pub fn of(name: &str, g: &PermGroup) -> Self {
        GroupDescription {
            name: name.to_string(),
            degree: g.degree(),
            order: g.order().to_string(),
            generators: g.generators().iter().map(|x| x.to_cycle_string()).collect(),
        }
    }
}

/// `"identity"`, or the images of the generators of `π` in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiDescription {
    Named(String),
    Images { images: Vec<String> },
}

impl PhiDescription {
    pub fn identity() -> Self {
        PhiDescription::Named("identity".into())
    }

    pub fn images(images: &[Permutation]) -> Self {
        PhiDescription::Images {
            images: images.iter().map(|x| x.to_cycle_string()).collect(),
        }
    }
}

/// One evaluation of `csinv(π; φ)` for a Gassmann pair `(H, K)` of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsReport {
    pub pi: String,
    pub phi: PhiDescription,
    #[serde(rename = "G")]
    pub g: GroupDescription,
    #[serde(rename = "H")]
    pub h: GroupDescription,
    #[serde(rename = "K")]
    pub k: GroupDescription,
    pub certificate: GassmannCertificate,
    #[serde(rename = "sH")]
    pub s_h: u8,
    #[serde(rename = "sK")]
    pub s_k: u8,
    pub csinv: u8,
    pub verdict: Verdict,
    pub budget_notes: String,
}

/// Result of checking the CS condition over a family of surjections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsVerification {
    pub pi: String,
    /// "satisfies CS (exhaustive)", "consistent", "obstructed" or "unknown".
    pub verdict: String,
    pub quotients_examined: usize,
    pub pairs_examined: usize,
    pub reports: Vec<CsReport>,
    pub budget_notes: String,
}

impl CsVerification {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == "obstructed"
    }

    pub fn is_unknown(&self) -> bool {
        self.verdict == "unknown"
    }
}
