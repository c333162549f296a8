//! The simplicial Mackey functors `X⊗M` and `X⊗̃M`, levelwise
//! `S ↦ M(X_n × S)`, with their structure maps.

mod coend;
mod module;
mod psi;
mod rho;
mod ses;

use std::sync::Arc;

use crate::error::{bail, Result};
use crate::exact::Matrix;
use crate::grp::FiniteGroup;
use crate::gset::{GMap, GSet};
use crate::mackey::{Evaluated, MackeyFormula, MackeyFunctor, MackeyMorphism};
use crate::sgset::{Based, SimplicialGSet, SimplicialMap};

pub use coend::{identity_rep, normalize_coend_rep, transfer_via_pullback, CoendRep};
pub use module::{smash_map, ModuleTensor};
pub use psi::{psi_transitivity_holds, psi_unit_holds, smash_psi, structure_map_psi, Psi, PsiComponent};
pub use rho::{rho_iso, RhoLevel};
pub use ses::{ses_from_coefficients, ses_from_cofibration, ses_from_unbased_cofibration, TensorSes};

/// `X⊗M` (or `X⊗̃M` when a basepoint is given).
#[derive(Clone, Debug)]
pub struct TensorFunctor {
    pub space: SimplicialGSet,
    pub base: Option<Vec<usize>>,
    pub m: MackeyFunctor,
}

/// A level `X_n × S` restricted to chosen simplices.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub cells: Vec<usize>,
    pub set: GSet,
    pub s_size: usize,
    /// Position of each simplex of `X_n` in `cells`.
    pub pos: Vec<Option<usize>>,
}

impl LevelSet {
    /// Index of `(x, s)`, or `None` when `x` is not one of the cells.
    pub fn index(&self, x: usize, s: usize) -> Option<usize> {
        self.pos[x].map(|p| p * self.s_size + s)
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (self.cells[i / self.s_size], i % self.s_size)
    }
}

pub fn tensor(x: &SimplicialGSet, m: &MackeyFunctor) -> Result<TensorFunctor> {
    if **x.group() != **m.group() {
        bail!(Config, "space is over {} but coefficients over {}", x.group().name(), m.group().name());
    }
    Ok(TensorFunctor { space: x.clone(), base: None, m: m.clone() })
}

pub fn reduced_tensor(x: &Based, m: &MackeyFunctor) -> Result<TensorFunctor> {
    if **x.group() != **m.group() {
        bail!(Config, "space is over {} but coefficients over {}", x.group().name(), m.group().name());
    }
    let all: Vec<usize> = x.group().elements().collect();
    for n in 0..=x.depth() {
        if !x.space.level(n).is_fixed_by(x.base[n], &all) {
            bail!(Validation, "basepoint is not G-fixed on level {n}");
        }
    }
    Ok(TensorFunctor { space: x.space.clone(), base: Some(x.base.clone()), m: m.clone() })
}

impl TensorFunctor {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.space.group()
    }

    pub fn depth(&self) -> usize {
        self.space.depth()
    }

    pub fn is_reduced(&self) -> bool {
        self.base.is_some()
    }

    fn is_base(&self, n: usize, x: usize) -> bool {
        self.base.as_ref().is_some_and(|b| b[n] == x)
    }

    /// Simplices carrying a summand: all non-base ones, or only the
    /// nondegenerate ones for normalized chains.
    pub fn cells(&self, n: usize, normalized: bool) -> Vec<usize> {
        (0..self.space.level(n).size())
            .filter(|&x| !self.is_base(n, x) && (!normalized || self.space.is_nondegenerate(n, x)))
            .collect()
    }

    pub fn level_set(&self, n: usize, s: &GSet, normalized: bool) -> LevelSet {
        let cells = self.cells(n, normalized);
        let lv = self.space.level(n).restrict_to(&cells).expect("cells form a G-subset");
        let mut pos = vec![None; self.space.level(n).size()];
        for (i, &x) in cells.iter().enumerate() {
            pos[x] = Some(i);
        }
        LevelSet { set: lv.product(s), cells, s_size: s.size(), pos }
    }

    /// `(X⊗M)(S)_n`, presented on the orbits of `X_n × S`.
    pub fn value(&self, n: usize, s: &GSet) -> (LevelSet, Evaluated) {
        let ls = self.level_set(n, s, false);
        let ev = self.m.evaluate(&ls.set);
        (ls, ev)
    }

    /// Normalized chains in degree `n` at `S`: the summands of nondegenerate
    /// non-base simplices.
    pub fn normalized_value(&self, n: usize, s: &GSet) -> (LevelSet, Evaluated) {
        let ls = self.level_set(n, s, true);
        let ev = self.m.evaluate(&ls.set);
        (ls, ev)
    }

    /// Normalized differential `Σ(−1)^i d_i` from degree `n` at `S`.
    pub fn normalized_differential(&self, n: usize, s: &GSet) -> Matrix {
        let (src, tgt) = (self.normalized_value(n, s), self.normalized_value(n - 1, s));
        let mut d = Matrix::zeros(tgt.1.group.gens(), src.1.group.gens());
        for i in 0..=n {
            let m = self.push_along(&src, &tgt, |x| self.space.face(n, i, x));
            d.add_assign(&if i % 2 == 0 { m } else { m.neg() });
        }
        d
    }

    /// `M_*` of a levelwise map `X_n → X'_m` times the identity of `S`.
    pub fn push_along(
        &self,
        src: &(LevelSet, Evaluated),
        tgt: &(LevelSet, Evaluated),
        f: impl Fn(usize) -> usize,
    ) -> Matrix {
        let map: Vec<Option<usize>> = (0..src.0.set.size())
            .map(|i| {
                let (x, s) = src.0.split(i);
                tgt.0.index(f(x), s)
            })
            .collect();
        self.m.push_partial(&src.1, &tgt.1, &map)
    }

    pub fn face(&self, n: usize, i: usize, s: &GSet) -> Matrix {
        self.push_along(&self.value(n, s), &self.value(n - 1, s), |x| self.space.face(n, i, x))
    }

    pub fn degen(&self, n: usize, i: usize, s: &GSet) -> Matrix {
        self.push_along(&self.value(n, s), &self.value(n + 1, s), |x| self.space.degen(n, i, x))
    }

    fn id_times(&self, ls_s: &LevelSet, ls_t: &LevelSet, f: &GMap) -> Vec<usize> {
        (0..ls_s.set.size())
            .map(|i| {
                let (x, s) = ls_s.split(i);
                ls_t.index(x, f.values[s]).expect("same cells")
            })
            .collect()
    }

    /// Covariant structure in `S`: `M_*(id × f)`.
    pub fn transfer(&self, n: usize, f: &GMap) -> Matrix {
        let (a, b) = (self.value(n, &f.source), self.value(n, &f.target));
        self.m.push(&a.1, &b.1, &self.id_times(&a.0, &b.0, f))
    }

    /// Contravariant structure in `S`: `M^*(id × f)`.
    pub fn restriction(&self, n: usize, f: &GMap) -> Matrix {
        let (a, b) = (self.value(n, &f.source), self.value(n, &f.target));
        self.m.pull(&a.1, &b.1, &self.id_times(&a.0, &b.0, f))
    }

    /// The Mackey functor `S ↦ (X⊗M)(S)_n`.
    pub fn level_functor(&self, n: usize) -> MackeyFunctor {
        let name = format!("level {n} of tensor with {}", self.m.name());
        MackeyFunctor::tabulate(self.group().clone(), &name, &LevelFormula { t: self, n })
    }

    /// Face `d_i` as a morphism of level functors.
    pub fn face_morphism(&self, n: usize, i: usize) -> Result<MackeyMorphism> {
        let g = self.group().clone();
        let comps = (0..g.class_count()).map(|k| self.face(n, i, &GSet::orbit(g.clone(), k))).collect();
        MackeyMorphism::new(self.level_functor(n), self.level_functor(n - 1), comps)
    }

    pub fn degen_morphism(&self, n: usize, i: usize) -> Result<MackeyMorphism> {
        let g = self.group().clone();
        let comps = (0..g.class_count()).map(|k| self.degen(n, i, &GSet::orbit(g.clone(), k))).collect();
        MackeyMorphism::new(self.level_functor(n), self.level_functor(n + 1), comps)
    }

    /// `M_*(f_n × id)` at an orbit, for a levelwise map into another tensor
    /// functor with the same coefficients.
    pub fn map_at(&self, tgt: &TensorFunctor, f: &[usize], n: usize, class_id: usize) -> Matrix {
        let s = GSet::orbit(self.group().clone(), class_id);
        self.push_along(&self.value(n, &s), &tgt.value(n, &s), |x| f[x])
    }

    /// A simplicial map `X → Y` on level `n`, as a morphism of level functors.
    pub fn map_morphism(&self, tgt: &TensorFunctor, f: &SimplicialMap, n: usize) -> Result<MackeyMorphism> {
        let comps = (0..self.group().class_count()).map(|k| self.map_at(tgt, &f.levels[n], n, k)).collect();
        MackeyMorphism::new(self.level_functor(n), tgt.level_functor(n), comps)
    }

    /// A coefficient morphism `M → N` on level `n`.
    pub fn coefficient_morphism(&self, tgt: &TensorFunctor, phi: &MackeyMorphism, n: usize) -> Result<MackeyMorphism> {
        let g = self.group().clone();
        let comps = (0..g.class_count())
            .map(|k| {
                let s = GSet::orbit(g.clone(), k);
                phi.on_set(&self.value(n, &s).1, &tgt.value(n, &s).1)
            })
            .collect();
        MackeyMorphism::new(self.level_functor(n), tgt.level_functor(n), comps)
    }

    /// The inclusion `pt⊗M → X⊗M` of the basepoint, as a morphism on level `n`.
    pub fn basepoint_inclusion(x: &Based, m: &MackeyFunctor, n: usize) -> Result<MackeyMorphism> {
        let full = tensor(&x.space, m)?;
        let g = m.group().clone();
        let comps = (0..g.class_count())
            .map(|k| {
                let s = GSet::orbit(g.clone(), k);
                let tgt = full.value(n, &s);
                let src = m.evaluate(&s);
                let map: Vec<usize> = (0..s.size()).map(|t| tgt.0.index(x.base[n], t).unwrap()).collect();
                m.push(&src, &tgt.1, &map)
            })
            .collect();
        MackeyMorphism::new(m.clone(), full.level_functor(n), comps)
    }
}

struct LevelFormula<'a> {
    t: &'a TensorFunctor,
    n: usize,
}

impl MackeyFormula for LevelFormula<'_> {
    fn value(&self, s: &GSet) -> crate::exact::AbGroup {
        self.t.value(self.n, s).1.group
    }

    fn push(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let g = GMap { source: s.clone(), target: t.clone(), values: f.to_vec() };
        self.t.transfer(self.n, &g)
    }

    fn pull(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let g = GMap { source: s.clone(), target: t.clone(), values: f.to_vec() };
        self.t.restriction(self.n, &g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Canonical;
    use crate::sgset::{Builder, Representation};

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn point(g: &Arc<FiniteGroup>) -> SimplicialGSet {
        let mut b = Builder::new(g.clone());
        b.add_fixed(0, vec![]);
        b.build(3).unwrap()
    }

    #[test]
    fn point_recovers_m() {
        let g = c2();
        let a = MackeyFunctor::burnside(g.clone());
        let t = tensor(&point(&g), &a).unwrap();
        for n in 0..=3 {
            assert_eq!(t.level_functor(n).canonical_values(), a.canonical_values());
        }
    }

    #[test]
    fn s0_doubles() {
        let g = c2();
        let a = MackeyFunctor::burnside(g.clone());
        let s0 = Representation::Trivial(0).sphere(&g, 2).unwrap();
        let t = tensor(&s0.space, &a).unwrap();
        let want: Vec<Canonical> = a.canonical_values().iter().map(|c| c.direct_sum(c)).collect();
        assert_eq!(t.level_functor(0).canonical_values(), want);
        let r = reduced_tensor(&s0, &a).unwrap();
        assert_eq!(r.level_functor(0).canonical_values(), a.canonical_values());
    }

    #[test]
    fn discrete_free_orbit() {
        let g = c2();
        let a = MackeyFunctor::burnside(g.clone());
        let mut b = Builder::new(g.clone());
        b.add_family(0, vec![vec![], vec![]], &[vec![0, 1], vec![1, 0]]);
        let x = b.build(1).unwrap();
        let t = tensor(&x, &a).unwrap();
        assert_eq!(t.value(0, &GSet::orbit(g, 1)).1.group.canonical(), Canonical::free(1));
    }

    #[test]
    fn faces_are_mackey_morphisms() {
        let g = c2();
        let z = MackeyFunctor::constant_z(g.clone());
        let sig = Representation::Sign.sphere(&g, 3).unwrap();
        let t = reduced_tensor(&sig, &z).unwrap();
        for n in 1..=3 {
            assert!(t.level_functor(n).verify_axioms().passed());
            for i in 0..=n {
                t.face_morphism(n, i).unwrap();
            }
        }
        t.degen_morphism(1, 0).unwrap();
    }

    #[test]
    fn group_mismatch() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let a = MackeyFunctor::burnside(c2());
        assert!(matches!(tensor(&point(&s3), &a), Err(crate::Error::Config(_))));
    }
}
