//! JSON file formats: field specs, code descriptors, weight distributions,
//! designs and Assmus-Mattson reports.
//!
//! All counts are emitted as decimal strings so arbitrary-precision values
//! survive any JSON parser. Formats:
//!
//! - field: `{"p": 2, "e": 1, "modulus": [c_0, ..., c_e], "m": 4,
//!   "ext_modulus": [c_0, ..., c_m]}` — `modulus`/`m`/`ext_modulus` optional;
//!   coefficients from the constant term upward.
//! - code: `{"field": {...}, "kind": "matrix"|"vector", "n": ..., "m": ...,
//!   "basis": [...], "generator": [...]}`. Matrix codes list each basis
//!   matrix as a row-major array under `basis`. Vector codes list generator
//!   rows (extension-field elements in canonical integer encoding) under
//!   `generator`, with the expansion basis under `basis`.
//! - weight distribution: `{"counts": ["1", "0", "75", ...]}`.
//! - design: `{"q": ..., "n": ..., "r": ..., "blocks": [[[row], ...], ...]}`
//!   with each block given by its RREF basis rows; optional `t`/`lambda`
//!   after verification.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::am::AMReport;
use crate::codes::{CodeError, MatrixCode, VectorCode, WeightDistribution};
use crate::designs::{DesignError, DesignInstance, InvarianceOutcome};
use crate::gf::{ExtElem, ExtField, Field, GfError};
use crate::linalg::{FqMatrix, LinalgError, Subspace};
use crate::qcomb::BigCount;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("invalid {what}: {detail}")]
    BadSpec { what: &'static str, detail: String },
}

fn bad(what: &'static str, detail: impl Into<String>) -> IoError {
    IoError::BadSpec { what, detail: detail.into() }
}

/// Serialized field description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    /// Extension degree of `F_{q^m}` over `F_q`, for vector codes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn of_field(field: &Field) -> FieldSpec {
        FieldSpec {
            p: field.p(),
            e: field.e(),
            modulus: (field.e() > 1).then(|| field.modulus().to_vec()),
            m: None,
            ext_modulus: None,
        }
    }

    pub fn of_ext(ext: &ExtField) -> FieldSpec {
        let mut spec = FieldSpec::of_field(ext.base());
        spec.m = Some(ext.m());
        spec.ext_modulus = Some(ext.modulus().to_vec());
        spec
    }

    pub fn base_field(&self) -> Result<Arc<Field>, IoError> {
        let field = match &self.modulus {
            Some(modulus) => Field::with_modulus(self.p, self.e, modulus.clone())?,
            None => Field::new(self.p, self.e)?,
        };
        Ok(Arc::new(field))
    }

    pub fn ext_field(&self) -> Result<Arc<ExtField>, IoError> {
        let base = self.base_field()?;
        let m = self.m.ok_or_else(|| bad("field spec", "vector code needs \"m\""))?;
        let ext = match &self.ext_modulus {
            Some(modulus) => ExtField::with_modulus(base, m, modulus.clone())?,
            None => ExtField::new(base, m)?,
        };
        Ok(Arc::new(ext))
    }
}

/// Serialized code description, covering both kinds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpec {
    pub field: FieldSpec,
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<u64>>>,
}

/// A code parsed from a [`CodeSpec`].
#[derive(Debug, Clone)]
pub enum ParsedCode {
    Matrix(MatrixCode),
    Vector { code: VectorCode, basis: Vec<ExtElem> },
}

impl ParsedCode {
    /// The matrix-code view: expansion by the stored basis for vector codes.
    pub fn to_matrix(&self) -> Result<MatrixCode, IoError> {
        match self {
            ParsedCode::Matrix(c) => Ok(c.clone()),
            ParsedCode::Vector { code, basis } => Ok(code.expand(basis)?),
        }
    }
}

impl CodeSpec {
    pub fn of_matrix(c: &MatrixCode) -> CodeSpec {
        CodeSpec {
            field: FieldSpec::of_field(c.field()),
            kind: "matrix".into(),
            n: c.n(),
            m: Some(c.m()),
            basis: Some(c.basis().iter().map(|b| b.data().to_vec()).collect()),
            generator: None,
        }
    }

    pub fn of_vector(c: &VectorCode, basis: &[ExtElem]) -> CodeSpec {
        CodeSpec {
            field: FieldSpec::of_ext(c.ext()),
            kind: "vector".into(),
            n: c.n(),
            m: Some(c.ext().m() as usize),
            basis: Some(vec![basis.to_vec()]),
            generator: Some(c.generator_rows()),
        }
    }

    pub fn parse(&self) -> Result<ParsedCode, IoError> {
        match self.kind.as_str() {
            "matrix" => {
                let field = self.field.base_field()?;
                let m = self.m.ok_or_else(|| bad("code spec", "matrix code needs \"m\""))?;
                let rows = self
                    .basis
                    .as_ref()
                    .ok_or_else(|| bad("code spec", "matrix code needs \"basis\""))?;
                let basis = rows
                    .iter()
                    .map(|flat| FqMatrix::new(field.clone(), self.n, m, flat.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ParsedCode::Matrix(MatrixCode::new(field, self.n, m, basis)?))
            }
            "vector" => {
                let ext = self.field.ext_field()?;
                let generator = self
                    .generator
                    .clone()
                    .ok_or_else(|| bad("code spec", "vector code needs \"generator\""))?;
                let code = VectorCode::new(ext.clone(), self.n, generator)?;
                let basis = match &self.basis {
                    Some(rows) if rows.len() == 1 => rows[0].clone(),
                    Some(_) => {
                        return Err(bad("code spec", "vector code \"basis\" must be one row of extension elements"))
                    }
                    None => ext.polynomial_basis(),
                };
                if !ext.is_basis(&basis) {
                    return Err(IoError::Gf(GfError::NotABasis));
                }
                Ok(ParsedCode::Vector { code, basis })
            }
            other => Err(bad("code spec", format!("unknown kind {other:?}"))),
        }
    }
}

/// Serialized weight distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightDistributionSpec {
    pub counts: Vec<String>,
}

impl WeightDistributionSpec {
    pub fn of(wd: &WeightDistribution) -> WeightDistributionSpec {
        WeightDistributionSpec { counts: wd.counts().iter().map(|c| c.to_string()).collect() }
    }

    pub fn parse(&self) -> Result<WeightDistribution, IoError> {
        let counts = self
            .counts
            .iter()
            .map(|s| BigCount::from_str(s).map_err(|e| bad("weight distribution", e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightDistribution::new(counts))
    }
}

/// Serialized design.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignSpec {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub blocks: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

impl DesignSpec {
    pub fn of(d: &DesignInstance) -> DesignSpec {
        DesignSpec {
            q: d.q(),
            n: d.n(),
            r: d.r(),
            blocks: d.blocks().iter().map(|b| b.basis().rows_vec()).collect(),
            t: d.strength(),
            lambda: d.lambda().map(|l| l.to_string()),
        }
    }

    pub fn parse(&self) -> Result<DesignInstance, IoError> {
        let field = Arc::new(Field::of_order(self.q)?);
        let blocks: BTreeSet<Subspace> = self
            .blocks
            .iter()
            .map(|rows| Subspace::from_rows(field.clone(), self.n, rows.clone()))
            .collect();
        if blocks.len() != self.blocks.len() {
            return Err(bad("design", "duplicate blocks"));
        }
        Ok(DesignInstance::new(field, self.n, self.r, blocks)?)
    }
}

/// Serialized invariance verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceSpec {
    pub u: usize,
    pub invariant: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<(Vec<Vec<u64>>, String)>>,
}

impl InvarianceSpec {
    fn of(u: usize, outcome: &InvarianceOutcome) -> InvarianceSpec {
        match outcome {
            InvarianceOutcome::Invariant { mu } => InvarianceSpec {
                u,
                invariant: true,
                mu: Some(mu.to_string()),
                witnesses: None,
            },
            InvarianceOutcome::NotInvariant { witness_a, witness_b } => InvarianceSpec {
                u,
                invariant: false,
                mu: None,
                witnesses: Some(vec![
                    (witness_a.0.basis().rows_vec(), witness_a.1.to_string()),
                    (witness_b.0.basis().rows_vec(), witness_b.1.to_string()),
                ]),
            },
        }
    }
}

/// Serialized Assmus-Mattson report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmReportSpec {
    pub t: usize,
    pub hypothesis_holds: bool,
    pub d: usize,
    pub d_star: usize,
    pub dual_distribution: WeightDistributionSpec,
    pub dual_weights_in_window: Vec<usize>,
    pub allowed: usize,
    pub primal_invariance: Vec<InvarianceSpec>,
    pub dual_invariance: Vec<InvarianceSpec>,
    pub primal_designs: Vec<DesignSpec>,
    pub dual_designs: Vec<DesignSpec>,
}

impl AmReportSpec {
    pub fn of(report: &AMReport) -> AmReportSpec {
        AmReportSpec {
            t: report.t,
            hypothesis_holds: report.hypothesis_holds,
            d: report.diagnostics.d,
            d_star: report.diagnostics.d_star,
            dual_distribution: WeightDistributionSpec::of(&report.diagnostics.dual_distribution),
            dual_weights_in_window: report.diagnostics.window_weights.clone(),
            allowed: report.diagnostics.allowed,
            primal_invariance: report
                .primal_invariance
                .iter()
                .map(|(&u, o)| InvarianceSpec::of(u, o))
                .collect(),
            dual_invariance: report
                .dual_invariance
                .iter()
                .map(|(&u, o)| InvarianceSpec::of(u, o))
                .collect(),
            primal_designs: report.primal_designs.values().map(DesignSpec::of).collect(),
            dual_designs: report.dual_designs.values().map(DesignSpec::of).collect(),
        }
    }
}
