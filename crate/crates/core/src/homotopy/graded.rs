use serde::Serialize;

use super::chains::bredon_homology;
use super::mapping::sphere_of;
use crate::error::Result;
use crate::exact::Canonical;
use crate::mackey::MackeyFunctor;
use crate::sgset::{Based, Representation};
use crate::tensor::reduced_tensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRow {
    pub p: usize,
    pub w: Vec<Representation>,
    /// `H̃_p(S^W ∧ X; M)` at every orbit.
    pub values: Vec<Canonical>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedTable {
    pub orbits: Vec<String>,
    pub rows: Vec<GradedRow>,
}

fn key(w: &[Representation]) -> Vec<String> {
    let mut k: Vec<String> = w.iter().filter(|r| **r != Representation::Trivial(0)).map(|r| r.to_string()).collect();
    k.sort();
    k
}

pub fn ro_graded_table(x: &Based, m: &MackeyFunctor, rows: &[(usize, Vec<Representation>)]) -> Result<GradedTable> {
    let g = x.group().clone();
    let mut out = Vec::new();
    for (p, w) in rows {
        let space = if w.is_empty() { x.clone() } else { sphere_of(w, &g, x.depth())?.smash(x) };
        let h = bredon_homology(&reduced_tensor(&space, m)?, *p)?;
        out.push(GradedRow { p: *p, w: w.clone(), values: h.canonical_values() });
    }
    let orbits = (0..g.class_count()).map(|c| format!("{}/{}", g.name(), g.class(c).label)).collect();
    Ok(GradedTable { orbits, rows: out })
}

impl GradedTable {
    /// Pairs of rows `(p, W)` and `(p + 1, W + trivial:1)`, with whether
    /// their entries agree.
    pub fn suspension_pairs(&self) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            let mut up = key(&a.w);
            up.push(Representation::Trivial(1).to_string());
            up.sort();
            for (j, b) in self.rows.iter().enumerate() {
                if b.p == a.p + 1 && key(&b.w) == up {
                    out.push((i, j, a.values == b.values));
                }
            }
        }
        out
    }

    pub fn suspension_consistent(&self) -> bool {
        self.suspension_pairs().iter().all(|p| p.2)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;

    #[test]
    fn small_table() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = MackeyFunctor::constant_z(g.clone());
        let s0 = Representation::Trivial(0).sphere(&g, 4).unwrap();
        let rows = vec![
            (0, vec![Representation::Sign]),
            (1, vec![Representation::Sign, Representation::Trivial(1)]),
            (1, vec![Representation::Trivial(1)]),
        ];
        let t = ro_graded_table(&s0, &z, &rows).unwrap();
        assert_eq!(t.rows[0].values[1], Canonical::cyclic(2));
        assert_eq!(t.rows[2].values[1], Canonical::free(1));
        assert_eq!(t.suspension_pairs().len(), 1);
        assert!(t.suspension_consistent());
    }
}
