//! JSON shapes shared by the library and the command line.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::exact::{AbGroup, Matrix};

/// Integer matrix as a list of rows.
pub type MatrixJson = Vec<Vec<i64>>;

pub fn matrix_from_json(rows: usize, cols: usize, m: &MatrixJson, path: &str) -> Result<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        bail!(Validation, "{path}: expected a {rows}x{cols} matrix");
    }
    Ok(if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(m) })
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i64().expect("matrix entry fits in i64")).collect())
        .collect()
}

/// Presented abelian group: generator count and relation vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroupSpec {
    pub gens: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

impl AbGroupSpec {
    pub fn build(&self, path: &str) -> Result<AbGroup> {
        let mut cols = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            if r.len() != self.gens {
                bail!(Validation, "{path}.relations[{i}]: expected {} entries", self.gens);
            }
            cols.push(r.iter().map(|&x| BigInt::from(x)).collect());
        }
        Ok(AbGroup::new(self.gens, Matrix::from_cols(self.gens, &cols)))
    }

    pub fn from_group(g: &AbGroup) -> Self {
        let r = g.relations();
        let relations = (0..r.cols())
            .map(|j| r.col(j).iter().map(|x| x.to_i64().expect("relation entry fits in i64")).collect())
            .collect();
        AbGroupSpec { gens: g.gens(), relations }
    }
}
