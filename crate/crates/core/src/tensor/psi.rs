use std::sync::Arc;

use super::{reduced_tensor, TensorFunctor};
use crate::error::Result;
use crate::exact::Matrix;
use crate::gset::GSet;
use crate::mackey::MackeyFunctor;
use crate::sgset::{Based, Representation};

/// `ψ : ΦS^W ∧ (X⊗̃M) → (S^W ∧ X)⊗̃M`.
#[derive(Clone, Debug)]
pub struct Psi {
    pub sphere: Based,
    pub x: Based,
    pub source: TensorFunctor,
    pub target: TensorFunctor,
}

/// `ψ(α ∧ −)` at the orbit `G/H` on level `n`.
#[derive(Clone, Debug)]
pub struct PsiComponent {
    pub class_id: usize,
    pub n: usize,
    pub alpha: usize,
    pub matrix: Matrix,
}

pub fn structure_map_psi(w: &Representation, x: &Based, m: &MackeyFunctor) -> Result<Psi> {
    let sphere = w.sphere(x.group(), x.depth())?;
    smash_psi(&sphere, x, m)
}

/// `ψ` for an arbitrary based simplicial G-set in place of a sphere.
pub fn smash_psi(sphere: &Based, x: &Based, m: &MackeyFunctor) -> Result<Psi> {
    let source = reduced_tensor(x, m)?;
    let target = reduced_tensor(&sphere.smash(x), m)?;
    Ok(Psi { sphere: sphere.clone(), x: x.clone(), source, target })
}

impl Psi {
    pub fn group(&self) -> &Arc<crate::grp::FiniteGroup> {
        self.x.group()
    }

    /// Non-base `H`-fixed simplices of `S^W` on level `n`.
    pub fn alphas(&self, class_id: usize, n: usize) -> Vec<usize> {
        let h = &self.group().class(class_id).elements;
        let lv = self.sphere.space.level(n);
        lv.fixed_points_of(h).into_iter().filter(|&a| a != self.sphere.base[n]).collect()
    }

    pub fn component(&self, class_id: usize, n: usize, alpha: usize) -> PsiComponent {
        let g = self.group().clone();
        let s = GSet::orbit(g.clone(), class_id);
        let cs = g.coset_space(class_id);
        let src = self.source.value(n, &s);
        let tgt = self.target.value(n, &s);
        let lv = self.sphere.space.level(n);
        let map: Vec<Option<usize>> = (0..src.0.set.size())
            .map(|i| {
                let (x, c) = src.0.split(i);
                let ga = lv.act(cs.reps[c], alpha);
                tgt.0.index(self.sphere.smash_index(&self.x, n, ga, x), c)
            })
            .collect();
        let matrix = self.source.m.push_partial(&src.1, &tgt.1, &map);
        PsiComponent { class_id, n, alpha, matrix }
    }

    pub fn components(&self, class_id: usize, n: usize) -> Vec<PsiComponent> {
        self.alphas(class_id, n).into_iter().map(|a| self.component(class_id, n, a)).collect()
    }
}

/// Matrix of `M_*` along a levelwise based isomorphism `X_n → Y_n` at `G/H`.
fn relabel(src: &TensorFunctor, tgt: &TensorFunctor, class_id: usize, n: usize, f: impl Fn(usize) -> usize) -> Matrix {
    let s = GSet::orbit(src.group().clone(), class_id);
    src.push_along(&src.value(n, &s), &tgt.value(n, &s), f)
}

/// `σ_{V,0} = id`: for `V = 0`, `ψ(α ∧ −)` is the identification `S⁰ ∧ X ≅ X`.
pub fn psi_unit_holds(x: &Based, m: &MackeyFunctor) -> Result<bool> {
    let psi = structure_map_psi(&Representation::Trivial(0), x, m)?;
    for c in 0..x.group().class_count() {
        for n in 0..=x.depth() {
            for comp in psi.components(c, n) {
                let back = relabel(&psi.target, &psi.source, c, n, |p| psi.sphere.smash_factors(x, n, p).1);
                if back.mul(&comp.matrix) != Matrix::identity(comp.matrix.cols()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Transitivity: `ψ_V(α ∧ ψ_W(β ∧ ξ))` agrees with `ψ_{V⊕W}((α∧β) ∧ ξ)`
/// under `S^V ∧ (S^W ∧ X) ≅ (S^V ∧ S^W) ∧ X`, for all fixed `α`, `β`.
pub fn psi_transitivity_holds(v: &Representation, w: &Representation, x: &Based, m: &MackeyFunctor) -> Result<bool> {
    let d = x.depth();
    let sv = v.sphere(x.group(), d)?;
    let sw = w.sphere(x.group(), d)?;
    let psi_w = smash_psi(&sw, x, m)?;
    let psi_v = smash_psi(&sv, &psi_w.target_space(), m)?;
    let svw = sv.smash(&sw);
    let psi_vw = smash_psi(&svw, x, m)?;
    for c in 0..x.group().class_count() {
        for n in 0..=d {
            for a in psi_v.alphas(c, n) {
                for b in psi_w.alphas(c, n) {
                    let two = psi_v.component(c, n, a).matrix.mul(&psi_w.component(c, n, b).matrix);
                    let ab = sv.smash_index(&sw, n, a, b);
                    let one = psi_vw.component(c, n, ab).matrix;
                    let assoc = relabel(&psi_v.target, &psi_vw.target, c, n, |p| {
                        let (a1, q) = sv.smash_factors(&psi_w.target_space(), n, p);
                        let (b1, x1) = sw.smash_factors(x, n, q);
                        svw.smash_index(x, n, sv.smash_index(&sw, n, a1, b1), x1)
                    });
                    if assoc.mul(&two) != one {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

impl Psi {
    /// `S^W ∧ X`.
    pub fn target_space(&self) -> Based {
        Based { space: self.target.space.clone(), base: self.target.base.clone().unwrap() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FiniteGroup;

    fn c2() -> Arc<crate::grp::FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn unit_axiom() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 2).unwrap();
        assert!(psi_unit_holds(&x, &MackeyFunctor::burnside(g.clone())).unwrap());
        assert!(psi_unit_holds(&x, &MackeyFunctor::constant_z(g)).unwrap());
    }

    #[test]
    fn transitivity_sign_then_trivial() {
        let g = c2();
        let x = Representation::Trivial(0).sphere(&g, 2).unwrap();
        let m = MackeyFunctor::burnside(g);
        assert!(psi_transitivity_holds(&Representation::Sign, &Representation::Trivial(1), &x, &m).unwrap());
    }

    #[test]
    fn free_orbit_sees_both_sign_vertices() {
        let g = c2();
        let x = Representation::Trivial(0).sphere(&g, 1).unwrap();
        let psi = structure_map_psi(&Representation::Sign, &x, &MackeyFunctor::constant_z(g)).unwrap();
        // the sign sphere has one non-base vertex, fixed by all of C2
        assert_eq!(psi.alphas(0, 0).len(), 1);
        assert_eq!(psi.alphas(1, 0).len(), 1);
        // on level 1: the degenerate south edge, plus the two swapped edges for e
        assert_eq!(psi.alphas(1, 1).len(), 1);
        assert_eq!(psi.alphas(0, 1).len(), 3);
    }
}
