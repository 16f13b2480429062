//! JSON matrix files and canonical digests.
//!
//! A matrix file looks like
//!
//! ```json
//! {"rows": 2, "cols": 2, "entries": [[["1", "0"], ["1/2", "0"]], [["0", "0"], ["-3", "1"]]]}
//! ```
//!
//! where each entry is `[re, im]` and each part is `"p"`, `"p/q"` or an exact decimal.

use std::fs;
use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{GeninvError, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_entry, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[String; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix<T: Field>(m: &Matrix<T>) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(T::to_part_strings).collect()).collect(),
        }
    }

    pub fn to_matrix<T: Field>(&self) -> Result<Matrix<T>> {
        if self.rows == 0 || self.cols == 0 {
            return Err(GeninvError::Parse("rows and cols must be positive".into()));
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(GeninvError::DimensionMismatch(format!(
                "entries do not form a {}x{} array",
                self.rows, self.cols
            )));
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|[re, im]| parse_entry::<T>(re, im))
            .collect::<Result<Vec<T>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }
}

impl<T: Field> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile::from_matrix(self).serialize(s)
    }
}

impl<'de, T: Field> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixFile::deserialize(d)?.to_matrix().map_err(D::Error::custom)
    }
}

pub fn parse_matrix_json<T: Field>(text: &str) -> Result<Matrix<T>> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| GeninvError::Parse(e.to_string()))?;
    file.to_matrix()
}

pub fn to_matrix_json<T: Field>(m: &Matrix<T>) -> String {
    serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("matrix files always serialize")
}

pub fn read_matrix<T: Field>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| GeninvError::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix_json(&text).map_err(|e| GeninvError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_matrix<T: Field>(path: impl AsRef<Path>, m: &Matrix<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_matrix_json(m) + "\n").map_err(|e| GeninvError::Parse(format!("{}: {e}", path.display())))
}

/// `name:rowsxcols:re,im;re,im;...` using lowest-terms part strings.
pub fn canonical_string<T: Field>(name: &str, m: &Matrix<T>) -> String {
    let mut s = format!("{name}:{}x{}:", m.rows(), m.cols());
    for v in m.entries() {
        let [re, im] = v.to_part_strings();
        s.push_str(&re);
        s.push(',');
        s.push_str(&im);
        s.push(';');
    }
    s
}

/// Hex SHA-256 of the canonical strings of the named matrices, joined by `|`.
pub fn digest<T: Field>(named: &[(&str, &Matrix<T>)]) -> String {
    let joined = named.iter().map(|(n, m)| canonical_string(n, m)).collect::<Vec<_>>().join("|");
    hex::encode(Sha256::digest(joined.as_bytes()))
}
