//! Serializable certificates. Sets are sorted element arrays and rationals
//! are `"p/q"` strings, so a certificate can be re-checked from its JSON
//! alone.

use serde::{Deserialize, Serialize};

use crate::approx::CoverWitness;
use crate::error::{Error, Result};
use crate::systems::SystemKind;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverRecord {
    pub k: usize,
    pub delta: Vec<usize>,
    pub exact: bool,
}

impl From<&CoverWitness> for CoverRecord {
    fn from(w: &CoverWitness) -> Self {
        CoverRecord { k: w.k, delta: w.delta.to_vec(), exact: w.exact }
    }
}

/// `f(level)` with the family member attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FValue {
    pub level: usize,
    pub value: String,
    pub translators: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStats {
    pub max_depth: usize,
    pub max_candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentCertificate {
    pub schema_version: u32,
    pub kind: String,
    pub system: SystemKind,
    pub n: usize,
    pub epsilon: String,
    pub lambda_sq: String,
    pub lambda: Vec<usize>,
    pub gamma: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub m_b: String,
    pub m_ab: String,
    pub k: usize,
    pub k_bound: usize,
    pub f_values: Vec<FValue>,
    pub w: Vec<usize>,
    pub w_translators: Vec<usize>,
    pub m_wb: String,
    pub d: Vec<usize>,
    pub cover_witness: CoverRecord,
    pub power_check: bool,
    pub overlap_check: bool,
    pub s_set: Vec<usize>,
    pub search: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Stabilized,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainStep {
    pub index: usize,
    pub d: Vec<usize>,
    pub k: usize,
    pub exponent_cap: usize,
    pub s_set: Vec<usize>,
    /// `D_i^{k_i}`.
    pub power: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainCertificate {
    pub schema_version: u32,
    pub kind: String,
    pub system: SystemKind,
    pub n: usize,
    pub depth_budget: usize,
    pub lambda: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub steps: Vec<ChainStep>,
    /// `descents[i]` produced `D_{i+1}` from `D_i`.
    pub descents: Vec<DescentCertificate>,
    pub termination: Termination,
    pub stabilized_at: Option<usize>,
    pub terminal: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientModel {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub lambda: Vec<usize>,
    pub h: Vec<usize>,
    /// Terminal subgroup of the chain.
    pub k: Vec<usize>,
    /// Largest subgroup of `K` normal in `H`; the kernel of `hom`.
    pub kernel: Vec<usize>,
    /// Order of the quotient `H / kernel`.
    pub index: usize,
    /// `|H| / |K|`.
    pub k_index: usize,
    /// Left cosets of the kernel in `H`, ordered by least element.
    pub cosets: Vec<Vec<usize>>,
    /// `hom[i]` is the coset of the i-th element of `h`.
    pub hom: Vec<usize>,
    /// Multiplication table of the quotient.
    pub table: Vec<Vec<usize>>,
    pub identity_coset: usize,
    /// Identity neighbourhood `U = K / kernel`.
    pub u: Vec<usize>,
    pub lambda_image: Vec<usize>,
}

/// Any certificate, dispatched on its `kind` field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Descent(DescentCertificate),
    Chain(ChainCertificate),
    Model(QuotientModel),
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let kind = value.get("kind").and_then(|k| k.as_str()).map(str::to_owned);
        let parse = |e: serde_json::Error| Error::Parse(e.to_string());
        match kind.as_deref() {
            Some("descent") => Ok(Certificate::Descent(serde_json::from_value(value).map_err(parse)?)),
            Some("chain") => Ok(Certificate::Chain(serde_json::from_value(value).map_err(parse)?)),
            Some("model") => Ok(Certificate::Model(serde_json::from_value(value).map_err(parse)?)),
            Some(other) => Err(Error::Parse(format!("unknown certificate kind `{other}`"))),
            None => Err(Error::Parse("certificate has no `kind`".into())),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Certificate::Descent(c) => to_json(c),
            Certificate::Chain(c) => to_json(c),
            Certificate::Model(c) => to_json(c),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("certificates serialize")
}

