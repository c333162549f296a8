use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{bail, Result};
use crate::exact::{ChainComplex, Homology, Matrix};
use crate::grp::FiniteGroup;
use crate::gset::GSet;
use crate::mackey::{MackeyFunctor, OrbitMap};
use crate::tensor::TensorFunctor;

/// Normalized chains of a simplicial Mackey functor: one chain complex per
/// orbit, with transfers and restrictions as chain maps.
#[derive(Clone, Debug)]
pub struct MackeyChainComplex {
    pub tensor: TensorFunctor,
    pub complexes: Vec<ChainComplex>,
}

/// Normalized chain complex of `t` at an arbitrary G-set.
pub fn chains_at(t: &TensorFunctor, s: &GSet) -> ChainComplex {
    let groups = (0..=t.depth()).map(|n| t.normalized_value(n, s).1.group).collect();
    let diffs = (1..=t.depth()).map(|n| t.normalized_differential(n, s)).collect();
    ChainComplex::new(groups, diffs).expect("normalized chains form a complex")
}

/// Quotient of a full level onto its normalized summands.
pub(crate) fn project(t: &TensorFunctor, n: usize, s: &GSet) -> Matrix {
    let full = t.value(n, s);
    let norm = t.normalized_value(n, s);
    let map: Vec<Option<usize>> = (0..full.0.set.size())
        .map(|i| {
            let (x, c) = full.0.split(i);
            norm.0.index(x, c)
        })
        .collect();
    t.m.push_partial(&full.1, &norm.1, &map)
}

/// Section of [`project`] onto the nondegenerate summands.
pub(crate) fn include(t: &TensorFunctor, n: usize, s: &GSet) -> Matrix {
    let full = t.value(n, s);
    let norm = t.normalized_value(n, s);
    let map: Vec<Option<usize>> = (0..norm.0.set.size())
        .map(|i| {
            let (x, c) = norm.0.split(i);
            full.0.index(x, c)
        })
        .collect();
    t.m.push_partial(&norm.1, &full.1, &map)
}

pub fn normalized_chains(t: &TensorFunctor) -> MackeyChainComplex {
    let g = t.group().clone();
    let complexes = (0..g.class_count()).map(|k| chains_at(t, &GSet::orbit(g.clone(), k))).collect();
    MackeyChainComplex { tensor: t.clone(), complexes }
}

impl MackeyChainComplex {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.tensor.group()
    }

    pub fn at(&self, class_id: usize) -> &ChainComplex {
        &self.complexes[class_id]
    }

    fn id_times(&self, n: usize, m: &OrbitMap) -> (crate::tensor::LevelSet, crate::mackey::Evaluated, crate::tensor::LevelSet, crate::mackey::Evaluated, Vec<usize>) {
        let g = self.group();
        let (s, t) = (GSet::orbit(g.clone(), m.from), GSet::orbit(g.clone(), m.to));
        let (ls, es) = self.tensor.normalized_value(n, &s);
        let (lt, et) = self.tensor.normalized_value(n, &t);
        let f = m.values(g);
        let map = (0..ls.set.size())
            .map(|i| {
                let (x, c) = ls.split(i);
                lt.index(x, f[c]).unwrap()
            })
            .collect();
        (ls, es, lt, et, map)
    }

    /// Transfer along an orbit map, as a chain map in degree `n`.
    pub fn chain_push(&self, n: usize, m: &OrbitMap) -> Matrix {
        let (_, es, _, et, map) = self.id_times(n, m);
        self.tensor.m.push(&es, &et, &map)
    }

    pub fn chain_pull(&self, n: usize, m: &OrbitMap) -> Matrix {
        let (_, es, _, et, map) = self.id_times(n, m);
        self.tensor.m.pull(&es, &et, &map)
    }

    pub fn homology_at(&self, class_id: usize, n: usize) -> Result<Homology> {
        if n >= self.tensor.depth() {
            bail!(Range, "degree {n} needs chains through degree {}, but the depth is {}", n + 1, self.tensor.depth());
        }
        self.complexes[class_id].homology(n)
    }

    /// `H_n` as a Mackey functor, with the induced transfers and restrictions.
    pub fn homology(&self, n: usize) -> Result<MackeyFunctor> {
        let g = self.group().clone();
        let hs: Vec<Homology> = (0..g.class_count()).map(|k| self.homology_at(k, n)).collect::<Result<_>>()?;
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        for m in OrbitMap::all(&g) {
            push.insert(m, hs[m.from].induced(&self.chain_push(n, &m), &hs[m.to])?.matrix);
            pull.insert(m, hs[m.to].induced(&self.chain_pull(n, &m), &hs[m.from])?.matrix);
        }
        let name = format!("H{n} with coefficients in {}", self.tensor.m.name());
        MackeyFunctor::from_tables(g, &name, hs.into_iter().map(|h| h.group).collect(), push, pull)
    }
}

/// Bredon homology `H_n(X; M)` (or `H̃_n` for a reduced tensor) as a Mackey functor.
pub fn bredon_homology(t: &TensorFunctor, n: usize) -> Result<MackeyFunctor> {
    normalized_chains(t).homology(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Canonical;
    use crate::sgset::Representation;
    use crate::tensor::reduced_tensor;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn sign_sphere_integer_coefficients() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 3).unwrap();
        let t = reduced_tensor(&x, &MackeyFunctor::constant_z(g)).unwrap();
        let h0 = bredon_homology(&t, 0).unwrap();
        let h1 = bredon_homology(&t, 1).unwrap();
        assert_eq!(h0.canonical_values(), vec![Canonical::zero(), Canonical::cyclic(2)]);
        assert_eq!(h1.canonical_values(), vec![Canonical::free(1), Canonical::zero()]);
        assert!(h0.verify_axioms().passed() && h1.verify_axioms().passed());
    }

    #[test]
    fn sign_sphere_burnside_complex() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 3).unwrap();
        let t = reduced_tensor(&x, &MackeyFunctor::burnside(g)).unwrap();
        let c = normalized_chains(&t);
        let top = c.at(1);
        assert_eq!(top.group(0).canonical(), Canonical::free(2));
        assert_eq!(top.group(1).canonical(), Canonical::free(1));
        assert!(top.group(2).is_trivial());
        assert_eq!(bredon_homology(&t, 0).unwrap().value(1).canonical(), Canonical::free(1));
    }

    #[test]
    fn out_of_range() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 2).unwrap();
        let t = reduced_tensor(&x, &MackeyFunctor::constant_z(g)).unwrap();
        assert!(matches!(bredon_homology(&t, 2), Err(crate::Error::Range(_))));
    }
}
