//! The tuple document format: structured JSON with dimensions, field, and
//! row-major matrices of scalar strings. Scalars always serialize as
//! strings so arbitrary-precision values survive round trips losslessly.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use uinv_core::{FieldSpec, Matrix, MatrixTuple, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Shape(String),
    #[error("invalid scalar at matrix {ell}, row {row}, column {col}: {source}")]
    Scalar {
        ell: usize,
        row: usize,
        col: usize,
        source: ScalarError,
    },
    #[error("invalid field: {0}")]
    Field(ScalarError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Rational,
    Prime { p: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    pub n: usize,
    pub m: usize,
    pub field: FieldDoc,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl TupleDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn field_spec(&self) -> Result<FieldSpec, DocumentError> {
        match self.field {
            FieldDoc::Rational => Ok(FieldSpec::Rational),
            FieldDoc::Prime { p } => FieldSpec::prime(p).map_err(DocumentError::Field),
        }
    }

    pub fn to_tuple(&self) -> Result<MatrixTuple, DocumentError> {
        let field = self.field_spec()?;
        if self.n == 0 || self.m == 0 {
            return Err(DocumentError::Shape("n and m must be at least 1".into()));
        }
        if self.matrices.len() != self.m {
            return Err(DocumentError::Shape(format!(
                "expected {} matrices, found {}",
                self.m,
                self.matrices.len()
            )));
        }
        let mut components = Vec::with_capacity(self.m);
        for (idx, rows) in self.matrices.iter().enumerate() {
            let ell = idx + 1;
            if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                return Err(DocumentError::Shape(format!(
                    "matrix {ell} is not {n}x{n}",
                    n = self.n
                )));
            }
            let mut parsed = Vec::with_capacity(self.n);
            for (r, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(self.n);
                for (c, text) in row.iter().enumerate() {
                    let value = Scalar::parse(text, field).map_err(|source| {
                        DocumentError::Scalar {
                            ell,
                            row: r + 1,
                            col: c + 1,
                            source,
                        }
                    })?;
                    out.push(value);
                }
                parsed.push(out);
            }
            components.push(
                Matrix::from_rows(parsed)
                    .map_err(|e| DocumentError::Shape(e.to_string()))?,
            );
        }
        MatrixTuple::new(components).map_err(|e| DocumentError::Shape(e.to_string()))
    }

    pub fn from_tuple(t: &MatrixTuple) -> Self {
        let field = match t.field() {
            FieldSpec::Rational => FieldDoc::Rational,
            FieldSpec::Prime(p) => FieldDoc::Prime { p },
        };
        let matrices = t
            .components()
            .iter()
            .map(|x| {
                (1..=x.n())
                    .map(|i| (1..=x.n()).map(|j| x.entry(i, j).to_string()).collect())
                    .collect()
            })
            .collect();
        TupleDocument {
            n: t.n(),
            m: t.m(),
            field,
            matrices,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
