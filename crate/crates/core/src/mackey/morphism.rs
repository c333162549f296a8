use std::sync::Arc;

use super::{Evaluated, FixedPointFormula, MackeyFunctor, OrbitMap, WeylModule};
use crate::grp::FiniteGroup;
use crate::gset::GSet;
use crate::error::{bail, Result};
use crate::exact::{is_exact_at, AbGroup, AbHom, Matrix, Subgroup};

/// Natural transformation given by its components on orbits.
#[derive(Clone, Debug)]
pub struct MackeyMorphism {
    pub source: MackeyFunctor,
    pub target: MackeyFunctor,
    pub components: Vec<Matrix>,
}

impl MackeyMorphism {
    pub fn new(source: MackeyFunctor, target: MackeyFunctor, components: Vec<Matrix>) -> Result<Self> {
        if *source.group != *target.group {
            bail!(Config, "morphism between functors over different groups");
        }
        if components.len() != source.values.len() {
            bail!(Validation, "morphism needs one component per subgroup class");
        }
        let m = MackeyMorphism { source, target, components };
        for (k, c) in m.components.iter().enumerate() {
            if c.rows() != m.target.values[k].gens() || c.cols() != m.source.values[k].gens() {
                bail!(Validation, "component {k} has the wrong shape");
            }
            if !m.component(k).is_well_defined() {
                bail!(Validation, "component {k} does not respect relations");
            }
        }
        if let Some(bad) = m.naturality_failure() {
            bail!(Validation, "morphism is not natural for orbit map {bad:?}");
        }
        Ok(m)
    }

    pub fn identity(m: &MackeyFunctor) -> Self {
        let components = m.values.iter().map(|v| Matrix::identity(v.gens())).collect();
        MackeyMorphism { source: m.clone(), target: m.clone(), components }
    }

    pub fn scalar(m: &MackeyFunctor, k: i64) -> Self {
        let components = m.values.iter().map(|v| Matrix::scalar(v.gens(), k)).collect();
        MackeyMorphism { source: m.clone(), target: m.clone(), components }
    }

    /// Morphism of fixed-point functors induced by a map of Weyl modules.
    pub fn from_module_map(
        group: Arc<FiniteGroup>,
        class_id: usize,
        a: WeylModule,
        b: WeylModule,
        phi: Matrix,
    ) -> Result<Self> {
        let n = group.class(class_id).weyl.order();
        for w in 0..n {
            let l = phi.mul(&a.action[w]);
            let r = b.action[w].mul(&phi);
            if !b.value.all_columns_zero(&l.sub(&r)) {
                bail!(Validation, "module map is not equivariant");
            }
        }
        if !AbHom::new(a.value.clone(), b.value.clone(), phi.clone()).is_well_defined() {
            bail!(Validation, "module map does not respect relations");
        }
        let fa = FixedPointFormula::new(group.clone(), class_id, a.clone())?;
        let fb = FixedPointFormula::new(group.clone(), class_id, b.clone())?;
        let components = (0..group.class_count())
            .map(|k| fa.induced(&fb, &phi, &GSet::orbit(group.clone(), k)))
            .collect();
        let source = MackeyFunctor::fixed_point(group.clone(), class_id, a)?;
        let target = MackeyFunctor::fixed_point(group, class_id, b)?;
        Self::new(source, target, components)
    }

    pub fn component(&self, k: usize) -> AbHom {
        AbHom::new(self.source.values[k].clone(), self.target.values[k].clone(), self.components[k].clone())
    }

    fn naturality_failure(&self) -> Option<OrbitMap> {
        for m in OrbitMap::all(&self.source.group) {
            let t = &self.target.values[m.to];
            let s = &self.target.values[m.from];
            let push_l = self.target.push[&m].mul(&self.components[m.from]);
            let push_r = self.components[m.to].mul(&self.source.push[&m]);
            let pull_l = self.target.pull[&m].mul(&self.components[m.to]);
            let pull_r = self.components[m.from].mul(&self.source.pull[&m]);
            if !t.all_columns_zero(&push_l.sub(&push_r)) || !s.all_columns_zero(&pull_l.sub(&pull_r)) {
                return Some(m);
            }
        }
        None
    }

    pub fn compose(&self, first: &MackeyMorphism) -> MackeyMorphism {
        let components = self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b)).collect();
        MackeyMorphism { source: first.source.clone(), target: self.target.clone(), components }
    }

    /// Matrix of the morphism on `M(S) → N(S)`.
    pub fn on_set(&self, src: &Evaluated, tgt: &Evaluated) -> Matrix {
        let blocks: Vec<&Matrix> = src.dec.orbits.iter().map(|o| &self.components[o.class_id]).collect();
        let m = Matrix::block_diag(&blocks);
        debug_assert_eq!(m.rows(), tgt.group.gens());
        m
    }

    fn kernels(&self) -> Vec<Subgroup> {
        (0..self.components.len()).map(|k| self.component(k).kernel()).collect()
    }

    pub fn kernel(&self) -> MackeyFunctor {
        let subs = self.kernels();
        let f = &self.source;
        let restrict = |table: &std::collections::BTreeMap<OrbitMap, Matrix>, pushing: bool| {
            table
                .iter()
                .map(|(m, t)| {
                    let (a, b) = if pushing { (m.from, m.to) } else { (m.to, m.from) };
                    let c = subs[b].coords_matrix(&t.mul(&subs[a].embed)).expect("kernel is a sub-Mackey functor");
                    (*m, c)
                })
                .collect()
        };
        MackeyFunctor {
            group: f.group.clone(),
            name: format!("ker({})", f.name),
            values: subs.iter().map(|s| s.group.clone()).collect(),
            push: restrict(&f.push, true),
            pull: restrict(&f.pull, false),
        }
    }

    pub fn cokernel(&self) -> MackeyFunctor {
        let t = &self.target;
        let values = t
            .values
            .iter()
            .zip(&self.components)
            .map(|(v, c)| AbGroup::new(v.gens(), v.relations().hcat(c)))
            .collect();
        MackeyFunctor {
            group: t.group.clone(),
            name: format!("coker({})", t.name),
            values,
            push: t.push.clone(),
            pull: t.pull.clone(),
        }
    }

    pub fn image(&self) -> MackeyFunctor {
        let subs: Vec<Subgroup> = (0..self.components.len()).map(|k| self.component(k).image()).collect();
        let t = &self.target;
        let restrict = |table: &std::collections::BTreeMap<OrbitMap, Matrix>, pushing: bool| {
            table
                .iter()
                .map(|(m, x)| {
                    let (a, b) = if pushing { (m.from, m.to) } else { (m.to, m.from) };
                    let c = subs[b].coords_matrix(&x.mul(&subs[a].embed)).expect("image is a sub-Mackey functor");
                    (*m, c)
                })
                .collect()
        };
        MackeyFunctor {
            group: t.group.clone(),
            name: format!("im({})", t.name),
            values: subs.iter().map(|s| s.group.clone()).collect(),
            push: restrict(&t.push, true),
            pull: restrict(&t.pull, false),
        }
    }

    pub fn is_iso(&self) -> bool {
        (0..self.components.len()).all(|k| self.component(k).is_iso())
    }
}

/// `0 → M --f--> N --g--> P → 0` exact at every orbit.
pub fn is_short_exact(f: &MackeyMorphism, g: &MackeyMorphism) -> bool {
    (0..f.components.len()).all(|k| {
        let (a, b) = (f.component(k), g.component(k));
        a.is_injective() && is_exact_at(&a, &b) && b.is_surjective()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Canonical;
    use crate::grp::FiniteGroup;

    #[test]
    fn kernel_and_cokernel_of_two() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = MackeyFunctor::constant_z(g.clone());
        let two = MackeyMorphism::scalar(&z, 2);
        assert!(two.kernel().values.iter().all(|v| v.is_trivial()));
        let q = two.cokernel();
        assert_eq!(q.canonical_values(), vec![Canonical::cyclic(2), Canonical::cyclic(2)]);
        assert!(q.verify_axioms().passed());
        // transfer of the quotient is zero mod 2
        let tr = q.push_table(&OrbitMap { from: 0, to: 1, coset: 0 });
        assert!(q.value(1).all_columns_zero(tr));
        let w = g.class(0).weyl.clone();
        let q2 = MackeyMorphism::from_module_map(
            g.clone(),
            0,
            WeylModule::integers(w.clone()),
            WeylModule::cyclic(w, 2),
            Matrix::scalar(1, 1),
        )
        .unwrap();
        assert!(is_short_exact(&two, &q2));
        assert_eq!(q2.target.canonical_values(), MackeyFunctor::constant_zmod(g, 2).canonical_values());
        assert!(MackeyMorphism::identity(&z).kernel().values.iter().all(|v| v.is_trivial()));
    }

    #[test]
    fn split_sequence() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let a = MackeyFunctor::burnside(g.clone());
        let b = MackeyFunctor::constant_z(g);
        let s = MackeyFunctor::direct_sum(&a, &b);
        let inc: Vec<Matrix> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| Matrix::identity(x.gens()).vcat(&Matrix::zeros(y.gens(), x.gens())))
            .collect();
        let proj: Vec<Matrix> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| Matrix::zeros(y.gens(), x.gens()).hcat(&Matrix::identity(y.gens())))
            .collect();
        let f = MackeyMorphism::new(a.clone(), s.clone(), inc).unwrap();
        let p = MackeyMorphism::new(s, b, proj).unwrap();
        assert!(is_short_exact(&f, &p));
        assert_eq!(f.image().canonical_values(), a.canonical_values());
    }

    #[test]
    fn rejects_unnatural_components() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = MackeyFunctor::constant_z(g);
        let bad = vec![Matrix::scalar(1, 1), Matrix::scalar(1, 2)];
        assert!(MackeyMorphism::new(z.clone(), z, bad).is_err());
    }
}
