//! Serialisable certificates and wire formats shared between the library
//! and the command-line tool. Every failing verdict carries a
//! machine-checkable witness that `verify` subcommands can re-validate.

use crate::codes::{LinearCode, LocalityStructure};
use crate::gf::{Field, FieldJson, GfError};
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One oracle verdict: name, pass/fail, and a witness when it failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    pub fn pass(name: impl Into<String>) -> Certificate {
        Certificate {
            name: name.into(),
            pass: true,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Certificate {
        Certificate {
            name: name.into(),
            pass: false,
            witness: Some(witness),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Certificate {
        self.detail = Some(detail.into());
        self
    }
}

/// Wire form of a locality structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalityJson {
    pub r: usize,
    pub recovery_sets: Vec<Vec<usize>>,
}

impl From<&LocalityStructure> for LocalityJson {
    fn from(l: &LocalityStructure) -> Self {
        LocalityJson {
            r: l.r(),
            recovery_sets: l.sets().to_vec(),
        }
    }
}

/// Wire form of a linear code: `{n, k, field, generator, parity, locality}`
/// with matrices as row-major packed integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub field: FieldJson,
    pub generator: Vec<Vec<u64>>,
    pub parity: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locality: Option<LocalityJson>,
}

impl CodeJson {
    pub fn new(code: &LinearCode, locality: Option<&LocalityStructure>) -> CodeJson {
        CodeJson {
            n: code.n(),
            k: code.k(),
            field: FieldJson::from(code.field()),
            generator: code.generator().rows_packed(),
            parity: code.parity().rows_packed(),
            locality: locality.map(LocalityJson::from),
        }
    }

    pub fn field(&self) -> Result<Field, GfError> {
        Field::try_from(&self.field)
    }

    pub fn generator_matrix(&self, field: &Field) -> Result<Matrix, crate::linalg::LinalgError> {
        rows_to_matrix(field, &self.generator, self.n)
    }

    pub fn parity_matrix(&self, field: &Field) -> Result<Matrix, crate::linalg::LinalgError> {
        rows_to_matrix(field, &self.parity, self.n)
    }
}

fn rows_to_matrix(
    field: &Field,
    rows: &[Vec<u64>],
    cols: usize,
) -> Result<Matrix, crate::linalg::LinalgError> {
    let flat: Vec<u64> = rows.iter().flatten().copied().collect();
    Matrix::from_values(field, rows.len(), cols, &flat)
}
