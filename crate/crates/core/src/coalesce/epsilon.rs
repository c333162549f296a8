use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{bar_levels, iso_below_top, BarComplex, Cell, FreeComplex, IndexCategory, System};
use crate::error::{bail, Result};
use crate::exact::sparse::SparseMatrix;
use crate::exact::Canonical;

/// `ε(x, f, α) = (f_1 ⋯ f_n a)^* x` evaluated at `eH`, i.e. `x(f_1(⋯ f_n(α)))`.
pub fn epsilon_cell(bar: &BarComplex, c: &Cell) -> usize {
    let mut s = c.alpha;
    for j in (0..c.degree()).rev() {
        s = bar.map_values(c, j)[s];
    }
    c.x[s]
}

fn orbit_object(bar: &BarComplex, class_id: usize) -> Result<(usize, usize)> {
    let Some(o) = bar.category.find(&[class_id]) else {
        bail!(Config, "index category lacks the orbit of class {class_id}");
    };
    let g = bar.group();
    Ok((o, g.coset_space(class_id).index_of[g.id()]))
}

/// `η(y) = (gH ↦ g·y, G/H, eH)` for `y ∈ X_k^H`.
pub fn section(bar: &BarComplex, class_id: usize, k: usize, y: usize) -> Result<Cell> {
    let (o, e) = orbit_object(bar, class_id)?;
    let g = bar.group();
    let level = bar.system.space.level(k);
    let x = g.coset_space(class_id).reps.iter().map(|&r| level.act(r, y)).collect();
    Ok(Cell { x, objects: vec![o], maps: vec![], alpha: e })
}

/// `s(x, f, α) = (x, f, a, eH)` with `a : G/H → S_n`, `gH ↦ g·α`.
pub fn extra_degeneracy(bar: &BarComplex, class_id: usize, c: &Cell) -> Result<Cell> {
    let (o, e) = orbit_object(bar, class_id)?;
    let g = bar.group();
    let last = *c.objects.last().unwrap();
    let s = &bar.category.object(last).set;
    let a: Vec<usize> = g.coset_space(class_id).reps.iter().map(|&r| s.act(r, c.alpha)).collect();
    let Some(f) = bar.category.hom_index(o, last, &a) else {
        bail!(Validation, "α is not fixed by the subgroup");
    };
    let mut d = c.clone();
    d.objects.push(o);
    d.maps.push(f);
    d.alpha = e;
    Ok(d)
}

/// Checks of `ε : B(𝒳, C, J)^H → 𝒳(G/H)` at one orbit.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonReport {
    pub orbit: String,
    pub depth: usize,
    /// `d_{n+1} s = id`, `d_i s = s d_i`, `d_0 s = η ε` on `(k, n)`-cells.
    pub contraction: bool,
    /// `ε η = id` and `ε d_0 = ε d_1`.
    pub retraction: bool,
    /// `ε` commutes with diagonal faces and lands in `X^H`.
    pub simplicial: bool,
    /// `(H_n(bar), H_n(X^H), ε_* iso)` below the depth.
    pub homology: Vec<(Canonical, Canonical, bool)>,
}

impl EpsilonReport {
    pub fn passed(&self) -> bool {
        self.contraction && self.retraction && self.simplicial && self.homology.iter().all(|h| h.2)
    }
}

fn is_fixed(bar: &BarComplex, class_id: usize, c: &Cell) -> bool {
    bar.group().class(class_id).elements.iter().all(|&g| bar.act(g, c) == *c)
}

fn contraction_holds(bar: &BarComplex, class_id: usize) -> Result<(bool, bool)> {
    let space = &bar.system.space;
    let h = &bar.group().class(class_id).elements;
    let mut contraction = true;
    let mut retraction = true;
    for k in 0..=bar.depth {
        for y in space.level(k).fixed_points_of(h) {
            retraction &= epsilon_cell(bar, &section(bar, class_id, k, y)?) == y;
        }
        for n in 0..bar.depth {
            for c in bar.cells(k, n).iter().filter(|c| is_fixed(bar, class_id, c)) {
                let s = extra_degeneracy(bar, class_id, c)?;
                contraction &= bar.bar_face(n + 1, &s) == *c;
                if n == 0 {
                    contraction &= bar.bar_face(0, &s) == section(bar, class_id, k, epsilon_cell(bar, c))?;
                } else {
                    for i in 0..=n {
                        contraction &= bar.bar_face(i, &s) == extra_degeneracy(bar, class_id, &bar.bar_face(i, c))?;
                    }
                }
                if n == 1 {
                    retraction &= epsilon_cell(bar, &bar.bar_face(0, c)) == epsilon_cell(bar, &bar.bar_face(1, c));
                }
            }
        }
    }
    Ok((contraction, retraction))
}

/// Chains on `X^H` modulo the basepoint, through `top`, with the basis order.
fn fixed_space_complex(system: &System, class_id: usize, top: usize) -> (FreeComplex, Vec<HashMap<usize, usize>>) {
    let space = &system.space;
    let h = &space.group().class(class_id).elements;
    let pts: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            let base = system.base.as_ref().map(|b| b[n]);
            space.level(n).fixed_points_of(h).into_iter().filter(|&p| Some(p) != base).collect()
        })
        .collect();
    let pos: Vec<HashMap<usize, usize>> =
        pts.iter().map(|l| l.iter().enumerate().map(|(j, &p)| (p, j)).collect()).collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let mut d = SparseMatrix::new(pts[n - 1].len(), pts[n].len());
        for (col, &p) in pts[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = pos[n - 1].get(&space.face(n, i, p)) {
                    d.add(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        diffs.push(d);
    }
    (FreeComplex { dims: pts.iter().map(|l| l.len()).collect(), diffs }, pos)
}

/// `ε` as a chain map from the fixed bar complex to chains on `X^H`.
pub(super) fn epsilon_chain_map(bar: &BarComplex, class_id: usize, top: usize) -> (FreeComplex, FreeComplex, Vec<SparseMatrix>) {
    let source = bar.fixed_complex(class_id, top);
    let (target, pos) = fixed_space_complex(&bar.system, class_id, top);
    let maps = (0..=top)
        .map(|n| {
            let cells = bar.fixed_cells(n, class_id);
            let mut m = SparseMatrix::new(target.dims[n], cells.len());
            for (col, &i) in cells.iter().enumerate() {
                if let Some(&row) = pos[n].get(&epsilon_cell(bar, &bar.levels[n][i])) {
                    m.add(row, col, 1);
                }
            }
            m
        })
        .collect();
    (source, target, maps)
}

pub(super) fn epsilon_report(bar: &BarComplex, class_id: usize) -> Result<EpsilonReport> {
    let (contraction, retraction) = contraction_holds(bar, class_id)?;
    let space = &bar.system.space;
    let h = &bar.group().class(class_id).elements;
    let mut simplicial = true;
    for n in 0..=bar.depth {
        for &i in &bar.fixed_cells(n, class_id) {
            let c = &bar.levels[n][i];
            let e = epsilon_cell(bar, c);
            simplicial &= space.level(n).is_fixed_by(e, h);
            if n > 0 {
                simplicial &= (0..=n).all(|j| epsilon_cell(bar, &bar.face(n, j, c)) == space.face(n, j, e));
            }
        }
    }
    let (source, target, maps) = epsilon_chain_map(bar, class_id, bar.depth);
    let iso = iso_below_top(&source, &target, &maps);
    let homology = source.homology().into_iter().zip(target.homology()).zip(iso).map(|((a, b), i)| (a, b, i)).collect();
    Ok(EpsilonReport {
        orbit: format!("{}/{}", bar.group().name(), bar.group().class(class_id).label),
        depth: bar.depth,
        contraction,
        retraction,
        simplicial,
        homology,
    })
}

/// `ε` over the orbit category at `G/H`, checked through `depth`.
pub fn epsilon(system: &System, class_id: usize, depth: usize) -> Result<EpsilonReport> {
    let category = Arc::new(IndexCategory::orbits(system.group()));
    let bar = bar_levels(system, &category, depth)?;
    epsilon_report(&bar, class_id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FiniteGroup;
    use crate::sgset::Representation;

    #[test]
    fn point_system_contracts() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        for class in 0..2 {
            let r = epsilon(&System::point(&g, 3), class, 3).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.homology[0].0, Canonical::free(1));
            assert!(r.homology[1].0.is_zero());
        }
    }

    #[test]
    fn s0_at_the_whole_group() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let s0 = System::phi(&Representation::Trivial(0).sphere(&g, 3).unwrap());
        let r = epsilon(&s0, 1, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.homology[0], (Canonical::free(1), Canonical::free(1), true));
    }
}
