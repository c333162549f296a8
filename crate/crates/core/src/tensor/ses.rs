use super::{reduced_tensor, tensor, TensorFunctor};
use crate::error::{bail, Result};
use crate::mackey::{is_short_exact, MackeyMorphism};
use crate::sgset::{Based, SimplicialGSet, SimplicialMap};

/// `0 → A → B → C → 0` of simplicial Mackey functors, with the two maps
/// on every level.
#[derive(Clone, Debug)]
pub struct TensorSes {
    pub a: TensorFunctor,
    pub b: TensorFunctor,
    pub c: TensorFunctor,
    /// Levelwise maps `A → B`, as levelwise functions on simplices when
    /// they come from spaces.
    pub f: Vec<MackeyMorphism>,
    pub g: Vec<MackeyMorphism>,
    pub f_space: Option<SimplicialMap>,
    pub g_space: Option<SimplicialMap>,
    pub coefficients: Option<(MackeyMorphism, MackeyMorphism)>,
}

impl TensorSes {
    /// Levels on which the sequence fails to be short exact.
    pub fn failures(&self) -> Vec<usize> {
        (0..self.f.len()).filter(|&n| !is_short_exact(&self.f[n], &self.g[n])).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.failures().is_empty()
    }
}

/// `0 → Y⊗̃M → X⊗̃M → (X/Y)⊗̃M → 0` for a based subcomplex `Y` given by its
/// simplices on every level (including the basepoint). The unbased sequence
/// `0 → Y⊗M → X⊗M → (X/Y)⊗̃M → 0` is the case of `X_+ ⊇ Y_+`, see
/// [`ses_from_unbased_cofibration`].
pub fn ses_from_cofibration(x: &Based, sub: &[Vec<usize>], m: &crate::mackey::MackeyFunctor) -> Result<TensorSes> {
    let (y_space, incl) = x.space.subcomplex(sub)?;
    let (q, proj) = x.quotient(sub)?;
    let ybase = (0..=x.depth()).map(|n| sub[n].iter().position(|&p| p == x.base[n]).unwrap()).collect();
    let y = Based { space: y_space, base: ybase };
    let (a, b, c) = (reduced_tensor(&y, m)?, reduced_tensor(x, m)?, reduced_tensor(&q, m)?);
    let mut f = Vec::new();
    let mut g = Vec::new();
    for n in 0..=x.depth() {
        f.push(a.map_morphism(&b, &incl, n)?);
        g.push(b.map_morphism(&c, &proj, n)?);
    }
    Ok(TensorSes { a, b, c, f, g, f_space: Some(incl), g_space: Some(proj), coefficients: None })
}

/// `0 → Y⊗M → X⊗M → (X/Y)⊗̃M → 0` for an unbased subcomplex `Y ⊆ X`.
pub fn ses_from_unbased_cofibration(
    x: &SimplicialGSet,
    sub: &[Vec<usize>],
    m: &crate::mackey::MackeyFunctor,
) -> Result<TensorSes> {
    let plus = x.plus();
    let shifted: Vec<Vec<usize>> =
        sub.iter().map(|lv| std::iter::once(0).chain(lv.iter().map(|&p| p + 1)).collect()).collect();
    ses_from_cofibration(&plus, &shifted, m)
}

/// `0 → X⊗M → X⊗N → X⊗P → 0` from a short exact sequence of coefficients.
pub fn ses_from_coefficients(i: &MackeyMorphism, p: &MackeyMorphism, x: &SimplicialGSet) -> Result<TensorSes> {
    if !is_short_exact(i, p) {
        bail!(Validation, "coefficient sequence is not short exact");
    }
    let (a, b, c) = (tensor(x, &i.source)?, tensor(x, &i.target)?, tensor(x, &p.target)?);
    let mut f = Vec::new();
    let mut g = Vec::new();
    for n in 0..=x.depth() {
        f.push(a.coefficient_morphism(&b, i, n)?);
        g.push(b.coefficient_morphism(&c, p, n)?);
    }
    Ok(TensorSes { a, b, c, f, g, f_space: None, g_space: None, coefficients: Some((i.clone(), p.clone())) })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;
    use crate::mackey::{FixedPointFormula, MackeyFunctor, WeylModule};
    use crate::sgset::Representation;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn basepoint_and_whole_space() {
        let g = c2();
        let m = MackeyFunctor::burnside(g.clone());
        let x = Representation::Sign.sphere(&g, 2).unwrap();
        let base: Vec<Vec<usize>> = x.base.iter().map(|&b| vec![b]).collect();
        let s = ses_from_cofibration(&x, &base, &m).unwrap();
        assert!(s.is_exact());
        let all: Vec<Vec<usize>> = (0..=2).map(|n| (0..x.space.level(n).size()).collect()).collect();
        let s = ses_from_cofibration(&x, &all, &m).unwrap();
        assert!(s.is_exact());
        assert!(s.c.level_functor(1).values().iter().all(|v| v.is_trivial()));
    }

    #[test]
    fn not_a_subset() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 1).unwrap();
        // one of the two swapped edges alone
        let sub = vec![(0..2).collect(), vec![x.space.degen(0, 0, x.base[0]), 2]];
        let r = ses_from_cofibration(&x, &sub, &MackeyFunctor::constant_z(g));
        assert!(r.is_err());
    }

    #[test]
    fn integers_mod_two() {
        let g = c2();
        let z = WeylModule::integers(g.clone());
        let z2 = WeylModule::cyclic(g.clone(), 2);
        let q = crate::mackey::MackeyMorphism::from_module_map(g.clone(), 0, z.clone(), z2, crate::exact::Matrix::identity(1)).unwrap();
        let two = crate::mackey::MackeyMorphism::scalar(&q.source, 2);
        let x = Representation::Sign.sphere(&g, 2).unwrap().space;
        let s = ses_from_coefficients(&two, &q, &x).unwrap();
        assert!(s.is_exact());
        let _ = FixedPointFormula::new(g, 0, z).unwrap();
        assert!(ses_from_coefficients(&q, &two, &x).is_err());
    }
}
