use num_bigint::BigInt;

use crate::exact::{zero_vec, AbGroup, AbHom, ChainComplex, Matrix};
use crate::mackey::WeylModule;
use crate::sgset::Based;

/// Levelwise reduced linearization `Ã[K_n] = ⊕_{x ≠ *} A` of a based
/// simplicial Weyl-set, with the diagonal action.
#[derive(Clone, Debug)]
pub struct ModuleTensor {
    pub space: Based,
    pub module: WeylModule,
}

impl ModuleTensor {
    pub fn new(space: Based, module: WeylModule) -> Self {
        assert!(**space.group() == *module.group, "space and module over different groups");
        ModuleTensor { space, module }
    }

    /// Non-base simplices of level `n`, indexing the summands.
    pub fn simplices(&self, n: usize) -> Vec<usize> {
        (0..self.space.space.level(n).size()).filter(|&x| x != self.space.base[n]).collect()
    }

    pub fn level(&self, n: usize) -> WeylModule {
        let xs = self.simplices(n);
        let k = self.module.value.gens();
        let parts: Vec<&AbGroup> = vec![&self.module.value; xs.len()];
        let value = if parts.is_empty() { AbGroup::zero() } else { AbGroup::direct_sum(&parts) };
        let lv = self.space.space.level(n);
        let action = self
            .module
            .group
            .elements()
            .map(|w| {
                let mut m = Matrix::zeros(xs.len() * k, xs.len() * k);
                for (i, &x) in xs.iter().enumerate() {
                    let j = xs.iter().position(|&y| y == lv.act(w, x)).unwrap();
                    m.set_block(j * k, i * k, &self.module.action[w]);
                }
                m
            })
            .collect();
        WeylModule { group: self.module.group.clone(), value, action }
    }

    /// Normalized Moore complex of the underlying simplicial abelian group.
    pub fn chain_complex(&self) -> ChainComplex {
        let d = self.space.depth();
        let k = self.module.value.gens();
        let cells: Vec<Vec<usize>> = (0..=d).map(|n| self.space.cells(n)).collect();
        let groups = cells
            .iter()
            .map(|c| {
                let parts: Vec<&AbGroup> = vec![&self.module.value; c.len()];
                if parts.is_empty() {
                    AbGroup::zero()
                } else {
                    AbGroup::direct_sum(&parts)
                }
            })
            .collect();
        let mut diffs = Vec::new();
        for n in 1..=d {
            let mut m = Matrix::zeros(cells[n - 1].len() * k, cells[n].len() * k);
            for (j, &x) in cells[n].iter().enumerate() {
                for i in 0..=n {
                    let y = self.space.space.face(n, i, x);
                    if let Some(r) = cells[n - 1].iter().position(|&c| c == y) {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        m.add_block(r * k, j * k, &Matrix::scalar(k, sign));
                    }
                }
            }
            diffs.push(m);
        }
        ChainComplex::new(groups, diffs).expect("Moore complex")
    }
}

/// `L_{Y,K} : Y ∧ Ã[K] → Ã[Y ∧ K]` on level `n`: `y ∧ Σ a_x x ↦ Σ a_x (y ∧ x)`.
pub fn smash_map(y: &Based, k: &ModuleTensor, n: usize, ysimplex: usize, elem: &[BigInt]) -> (Based, Vec<BigInt>) {
    let yk = y.smash(&k.space);
    let gens = k.module.value.gens();
    let target_simplices: Vec<usize> = (0..yk.space.level(n).size()).filter(|&p| p != yk.base[n]).collect();
    let mut out = zero_vec(target_simplices.len() * gens);
    if ysimplex == y.base[n] {
        return (yk, out);
    }
    // pairs of non-base simplices in lexicographic order occupy indices 1..
    let ys: Vec<usize> = (0..y.space.level(n).size()).filter(|&p| p != y.base[n]).collect();
    let ks = k.simplices(n);
    let yi = ys.iter().position(|&p| p == ysimplex).unwrap();
    for (i, _) in ks.iter().enumerate() {
        let idx = 1 + yi * ks.len() + i;
        let t = target_simplices.iter().position(|&p| p == idx).unwrap();
        for g in 0..gens {
            out[t * gens + g] = elem[i * gens + g].clone();
        }
    }
    (yk, out)
}

impl WeylModule {
    /// Fixed elements `A^W` as a subgroup.
    pub fn invariants(&self) -> crate::exact::Subgroup {
        let n = self.value.gens();
        let w = self.group.order();
        let mut m = Matrix::zeros(n * w, n);
        for (g, a) in self.action.iter().enumerate() {
            m.set_block(g * n, 0, &a.sub(&Matrix::identity(n)));
        }
        let parts: Vec<&AbGroup> = vec![&self.value; w];
        AbHom::new(self.value.clone(), AbGroup::direct_sum(&parts), m).kernel()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::Canonical;
    use crate::grp::FiniteGroup;
    use crate::sgset::Representation;

    #[test]
    fn spheres_with_integer_coefficients() {
        let g = Arc::new(FiniteGroup::trivial());
        let z = WeylModule::integers(g.clone());
        let s0 = ModuleTensor::new(Representation::Trivial(0).sphere(&g, 2).unwrap(), z.clone());
        assert_eq!(s0.level(0).value.canonical(), Canonical::free(1));
        let s1 = ModuleTensor::new(Representation::Trivial(1).sphere(&g, 3).unwrap(), z);
        let c = s1.chain_complex();
        assert_eq!(c.homology(1).unwrap().group.canonical(), Canonical::free(1));
        assert!(c.homology(0).unwrap().group.is_trivial());
    }

    #[test]
    fn regular_invariants() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        assert_eq!(WeylModule::regular(g.clone()).invariants().group.canonical(), Canonical::free(1));
        assert_eq!(WeylModule::cyclic(g, 2).invariants().group.canonical(), Canonical::cyclic(2));
    }
}
