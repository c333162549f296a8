//! Finite simplicial G-sets truncated at a dimension bound, based variants,
//! smash products and representation spheres.

mod builder;
mod ops;
mod spheres;

use std::sync::Arc;

use crate::error::{bail, Result};
use crate::exact::sparse::{free_homology, SparseMatrix};
use crate::exact::Canonical;
use crate::grp::FiniteGroup;
use crate::gset::GSet;

pub use builder::{Builder, SimplexRef, SimplicialSpec};
pub use ops::SimplicialMap;
pub use spheres::{default_depth, orbit_cone, Representation};

/// Levels `0..=depth` with face and degeneracy tables.
#[derive(Clone, Debug)]
pub struct SimplicialGSet {
    group: Arc<FiniteGroup>,
    levels: Vec<GSet>,
    /// `faces[n][i]` is `d_i : X_n → X_{n-1}`; empty for `n = 0`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i]` is `s_i : X_n → X_{n+1}`; empty for `n = depth`.
    degens: Vec<Vec<Vec<usize>>>,
    nondegenerate: Vec<Vec<bool>>,
}

/// A simplicial G-set with a G-fixed basepoint vertex.
#[derive(Clone, Debug)]
pub struct Based {
    pub space: SimplicialGSet,
    /// Basepoint index in each level.
    pub base: Vec<usize>,
}

impl SimplicialGSet {
    /// Assembles tables and checks equivariance and the simplicial identities.
    pub fn new(
        group: Arc<FiniteGroup>,
        levels: Vec<GSet>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let x = Self::assemble(group, levels, faces, degens);
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn assemble(
        group: Arc<FiniteGroup>,
        levels: Vec<GSet>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        let depth = levels.len() - 1;
        let nondegenerate = (0..=depth)
            .map(|n| {
                (0..levels[n].size())
                    .map(|x| n == 0 || (0..n).all(|i| degens[n - 1][i][faces[n][i][x]] != x))
                    .collect()
            })
            .collect();
        SimplicialGSet { group, levels, faces, degens, nondegenerate }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.depth();
        if self.faces.len() != d + 1 || self.degens.len() != d + 1 {
            bail!(Validation, "face/degeneracy tables do not match the level count");
        }
        for n in 0..=d {
            let lv = &self.levels[n];
            if !lv.same_group(&GSet::point(self.group.clone())) {
                bail!(Config, "level {n} is over a different group");
            }
            let nf = if n == 0 { 0 } else { n + 1 };
            let ns = if n == d { 0 } else { n + 1 };
            if self.faces[n].len() != nf || self.degens[n].len() != ns {
                bail!(Validation, "level {n} has the wrong number of structure maps");
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if !crate::gset::is_equivariant(lv, &self.levels[n - 1], f) {
                    bail!(Validation, "d_{i} on level {n} is not an equivariant map");
                }
            }
            for (i, s) in self.degens[n].iter().enumerate() {
                if !crate::gset::is_equivariant(lv, &self.levels[n + 1], s) {
                    bail!(Validation, "s_{i} on level {n} is not an equivariant map");
                }
            }
        }
        for n in 0..=d {
            let size = self.levels[n].size();
            for x in 0..size {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            if self.face(n - 1, i, self.face(n, j, x)) != self.face(n - 1, j - 1, self.face(n, i, x)) {
                                bail!(Validation, "d_{i} d_{j} != d_{} d_{i} on level {n}", j - 1);
                            }
                        }
                    }
                }
                if n < d {
                    for j in 0..=n {
                        let y = self.degen(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, i, y);
                            let ok = if i < j {
                                n >= 1 && lhs == self.degen(n - 1, j - 1, self.face(n, i, x))
                            } else if i == j || i == j + 1 {
                                lhs == x
                            } else {
                                n >= 1 && lhs == self.degen(n - 1, j, self.face(n, i - 1, x))
                            };
                            if !ok {
                                bail!(Validation, "d_{i} s_{j} identity fails on level {n}");
                            }
                        }
                        if n + 1 < d {
                            for i in 0..=j {
                                if self.degen(n + 1, i, y) != self.degen(n + 1, j + 1, self.degen(n, i, x)) {
                                    bail!(Validation, "s_{i} s_{j} identity fails on level {n}");
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &GSet {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn face_map(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x]
    }

    pub fn degen_map(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    pub fn is_nondegenerate(&self, n: usize, x: usize) -> bool {
        self.nondegenerate[n][x]
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.levels[n].size()).filter(|&x| self.nondegenerate[n][x]).collect()
    }

    /// Highest dimension carrying a nondegenerate simplex.
    pub fn dimension(&self) -> usize {
        (0..=self.depth()).rev().find(|&n| self.nondegenerate[n].iter().any(|&b| b)).unwrap_or(0)
    }

    /// Same tables with fewer levels.
    pub fn truncate(&self, depth: usize) -> SimplicialGSet {
        let d = depth.min(self.depth());
        let mut degens = self.degens[..=d].to_vec();
        degens[d].clear();
        SimplicialGSet {
            group: self.group.clone(),
            levels: self.levels[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degens,
            nondegenerate: self.nondegenerate[..=d].to_vec(),
        }
    }

    /// Integral homology of the underlying simplicial set, degrees below the depth.
    pub fn underlying_homology(&self, base: Option<&[usize]>) -> Vec<Canonical> {
        let d = self.depth();
        let cells: Vec<Vec<usize>> = (0..=d)
            .map(|n| self.nondegenerate(n).into_iter().filter(|&x| base.is_none_or(|b| b[n] != x)).collect())
            .collect();
        let pos: Vec<std::collections::HashMap<usize, usize>> =
            cells.iter().map(|c| c.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        let mut diffs = Vec::new();
        for n in 1..=d {
            let mut m = SparseMatrix::new(cells[n - 1].len(), cells[n].len());
            for (j, &x) in cells[n].iter().enumerate() {
                for i in 0..=n {
                    if let Some(&r) = pos[n - 1].get(&self.face(n, i, x)) {
                        m.add(r, j, if i % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            diffs.push(m);
        }
        let dims: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        let mut h = free_homology(&dims, &diffs);
        h.truncate(d);
        h
    }
}

impl Based {
    pub fn new(space: SimplicialGSet, base_vertex: usize) -> Result<Self> {
        if !space.level(0).is_fixed_by(base_vertex, &space.group.elements().collect::<Vec<_>>()) {
            bail!(Validation, "basepoint vertex {base_vertex} is not fixed by the group");
        }
        let mut base = vec![base_vertex];
        for n in 0..space.depth() {
            base.push(space.degen(n, 0, base[n]));
        }
        Ok(Based { space, base })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.space.group()
    }

    pub fn depth(&self) -> usize {
        self.space.depth()
    }

    /// Nondegenerate simplices other than the basepoint.
    pub fn cells(&self, n: usize) -> Vec<usize> {
        self.space.nondegenerate(n).into_iter().filter(|&x| x != self.base[n]).collect()
    }

    pub fn reduced_homology(&self) -> Vec<Canonical> {
        self.space.underlying_homology(Some(&self.base))
    }

    pub fn truncate(&self, depth: usize) -> Based {
        let space = self.space.truncate(depth);
        let base = self.base[..=space.depth()].to_vec();
        Based { space, base }
    }
}
