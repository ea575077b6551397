//! Matrix text format: `{"n": 3, "re": [[...]], "im": [[...]]}`, row-major, `im` optional.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        check_shape(self.n, &self.re)?;
        if let Some(im) = &self.im {
            check_shape(self.n, im)?;
        }
        ComplexMatrix::from_parts(&self.re, self.im.as_deref())
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = m.to_rows();
        let re = rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        let im: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect();
        let has_im = im.iter().flatten().any(|&x| x != 0.0);
        Self { n: m.dim(), re, im: has_im.then_some(im) }
    }
}

fn check_shape(n: usize, rows: &[Vec<f64>]) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if rows.len() != n {
        return Err(Error::NotSquare { rows: rows.len(), cols: n });
    }
    if let Some(row) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: rows.len(), cols: row.len() });
    }
    Ok(())
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_matrix()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix file serializes")
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile::from_matrix(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MatrixFile::deserialize(deserializer)?;
        file.to_matrix().map_err(serde::de::Error::custom)
    }
}
