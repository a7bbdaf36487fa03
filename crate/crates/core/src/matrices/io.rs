use serde::{Deserialize, Serialize};

use super::ExactMatrix;
use crate::error::{Error, Result};
use crate::exact::rational::parse_rational;
use crate::exact::{CycElem, CyclotomicContext};

/// On-disk matrix format:
/// `{"n": 5, "dim": 4, "entries": [["5:[0,0,0,0]", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: u32,
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

// Plain rationals such as `1/4` are accepted alongside `n:[...]`.
fn parse_entry(ctx: &CyclotomicContext, s: &str) -> Result<CycElem> {
    if s.contains(':') {
        ctx.parse(s)
    } else {
        Ok(ctx.from_rational(&parse_rational(s)?))
    }
}

impl MatrixFile {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        MatrixFile {
            n: m.context().n(),
            dim: m.dim(),
            entries: m
                .rows()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let ctx = CyclotomicContext::new(self.n)?;
        if self.entries.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim is {} but {} rows were given",
                self.dim,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_entry(&ctx, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_rows(&ctx, rows).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse_json(text: &str) -> Result<ExactMatrix> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_matrix()
    }

    pub fn to_json(m: &ExactMatrix) -> String {
        serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix file serializes")
    }
}
