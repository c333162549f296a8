use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::exact::{AbGroup, AbHom, Matrix};
use crate::grp::FiniteGroup;
use crate::io::{matrix_from_json, matrix_to_json, AbGroupSpec, MatrixJson};

/// Abelian group with an action of a finite group by automorphisms.
#[derive(Clone, Debug)]
pub struct WeylModule {
    pub group: Arc<FiniteGroup>,
    pub value: AbGroup,
    /// Action matrix of each group element.
    pub action: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylModuleSpec {
    pub value: AbGroupSpec,
    pub action: Vec<MatrixJson>,
}

impl WeylModule {
    pub fn new(group: Arc<FiniteGroup>, value: AbGroup, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != group.order() {
            bail!(Validation, "module action needs {} matrices, got {}", group.order(), action.len());
        }
        let n = value.gens();
        for (g, m) in action.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                bail!(Validation, "action[{g}] must be {n}x{n}");
            }
            if !AbHom::new(value.clone(), value.clone(), m.clone()).is_well_defined() {
                bail!(Validation, "action[{g}] does not respect the relations");
            }
        }
        let eq = |a: &Matrix, b: &Matrix| value.all_columns_zero(&a.sub(b));
        if !eq(&action[group.id()], &Matrix::identity(n)) {
            bail!(Validation, "identity acts nontrivially");
        }
        for a in group.elements() {
            for b in group.elements() {
                if !eq(&action[group.mul(a, b)], &action[a].mul(&action[b])) {
                    bail!(Validation, "action is not a homomorphism at ({a}, {b})");
                }
            }
        }
        Ok(WeylModule { group, value, action })
    }

    pub fn trivial(group: Arc<FiniteGroup>, value: AbGroup) -> Self {
        let n = value.gens();
        let action = vec![Matrix::identity(n); group.order()];
        WeylModule { group, value, action }
    }

    pub fn integers(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, AbGroup::free(1))
    }

    pub fn cyclic(group: Arc<FiniteGroup>, n: u64) -> Self {
        Self::trivial(group, AbGroup::cyclic(n))
    }

    /// Group ring `Z[W]` with `w·e_u = e_{wu}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|w| {
                let mut m = Matrix::zeros(n, n);
                for u in 0..n {
                    m.add_block(group.mul(w, u), u, &Matrix::scalar(1, 1));
                }
                m
            })
            .collect();
        WeylModule { value: AbGroup::free(n), group, action }
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &WeylModuleSpec) -> Result<Self> {
        let value = spec.value.build("module.value")?;
        let n = value.gens();
        let action = spec
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_json(n, n, m, &format!("module.action[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, value, action)
    }

    pub fn to_spec(&self) -> WeylModuleSpec {
        WeylModuleSpec {
            value: AbGroupSpec::from_group(&self.value),
            action: self.action.iter().map(matrix_to_json).collect(),
        }
    }

    /// Same underlying group and action up to the relations.
    pub fn same_as(&self, other: &WeylModule) -> bool {
        *self.group == *other.group
            && self.value.gens() == other.value.gens()
            && self.value.canonical() == other.value.canonical()
            && self
                .action
                .iter()
                .zip(&other.action)
                .all(|(a, b)| self.value.all_columns_zero(&a.sub(b)))
    }
}
