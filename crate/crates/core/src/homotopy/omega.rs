use num_bigint::BigInt;
use serde::Serialize;

use super::chains::{chains_at, include, project};
use super::mapping::{mapping_complex, MappingComplex};
use crate::error::{bail, Result};
use crate::exact::{Canonical, ChainComplex, Matrix};
use crate::gset::{GMap, GSet};
use crate::mackey::{MackeyFunctor, OrbitMap};
use crate::sgset::{Based, Representation, SimplicialGSet};
use crate::tensor::{reduced_tensor, smash_psi};

/// The adjoint `φ : N(X⊗̃M)(G/K) → Hom(ΦS^W ∧ Φ(G/K_+), (S^W∧X)⊗̃M)` of `ψ`,
/// through the Eilenberg–Zilber shuffle map.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub class_id: usize,
    pub source: ChainComplex,
    pub mapping: MappingComplex,
    /// Degrees `0..=top` of the source that land in the mapping complex.
    pub maps: Vec<Matrix>,
}

/// `(n, k)`-shuffles `(μ, ν)` with their signs.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let total = p + q;
    let mut out = Vec::new();
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let mu: Vec<usize> = (0..total).filter(|&i| mask >> i & 1 == 1).collect();
        let nu: Vec<usize> = (0..total).filter(|&i| mask >> i & 1 == 0).collect();
        let inversions: usize = mu.iter().enumerate().map(|(j, &m)| m - j).sum();
        out.push((mu, nu, if inversions.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

pub fn phi_chain_map(x: &Based, m: &MackeyFunctor, w: &Representation, class_id: usize, bound: usize) -> Result<PhiMap> {
    let g = x.group().clone();
    let depth = x.depth();
    let t = reduced_tensor(x, m)?;
    let sphere = w.sphere(&g, depth)?;
    let psi = smash_psi(&sphere, x, m)?;
    let gk = GSet::orbit(g.clone(), class_id);
    let right = SimplicialGSet::discrete(&gk, depth).plus();
    let kprime = sphere.smash(&right);
    let mapping = mapping_complex(&kprime, &psi.target, bound)?;
    let source = chains_at(&t, &gk);
    let kmax = kprime.space.dimension();
    let top = bound.min(source.top());
    let mut maps = Vec::new();
    for n in 0..=top {
        let embed = include(&t, n, &gk);
        let mut phi = Matrix::zeros(mapping.group(n).gens(), source.group(n).gens());
        for k in 0..=kmax {
            let level = n + k;
            if level > depth || mapping.summands[n + 1][k].value.is_none() {
                continue;
            }
            let cells = &mapping.cells[k];
            let dec = cells.set.orbit_decompose();
            for orbit in &dec.orbits {
                let p = cells.cells[orbit.anchor];
                let l = orbit.class_id;
                let (alpha, q) = sphere.smash_factors(&right, k, p);
                let om = OrbitMap { from: l, to: class_id, coset: q - 1 };
                let gl = GSet::orbit(g.clone(), l);
                let restrict = t.restriction(n, &GMap { source: gl.clone(), target: gk.clone(), values: om.values(&g) });
                let proj = project(&psi.target, level, &gl);
                let mut value = Matrix::zeros(proj.rows(), source.group(n).gens());
                for (mu, nu, sign) in shuffles(n, k) {
                    let mut deg = restrict.mul(&embed);
                    let mut lv = n;
                    for &i in &nu {
                        deg = t.degen(lv, i, &gl).mul(&deg);
                        lv += 1;
                    }
                    let mut a = alpha;
                    for (j, &i) in mu.iter().enumerate() {
                        a = sphere.space.degen(k + j, i, a);
                    }
                    let term = proj.mul(&psi.component(l, level, a).matrix).mul(&deg);
                    value.add_assign(&term.scale(&BigInt::from(sign)));
                }
                let cols: Vec<_> = (0..value.cols()).map(|j| mapping.yoneda_element(n, k, p, l, &value.col(j))).collect();
                phi.add_assign(&Matrix::from_cols(phi.rows(), &cols));
            }
        }
        maps.push(phi);
    }
    Ok(PhiMap { class_id, source, mapping, maps })
}

impl PhiMap {
    /// `∂φ = φ∂` in every degree where both sides are defined.
    pub fn is_chain_map(&self) -> bool {
        let zero = self.mapping.differential(0).mul(&self.maps[0]);
        self.mapping.complex.group(0).all_columns_zero(&zero)
            && (1..self.maps.len()).all(|n| {
                let l = self.mapping.differential(n).mul(&self.maps[n]);
                let r = self.maps[n - 1].mul(self.source.differential(n));
                self.mapping.group(n - 1).all_columns_zero(&l.sub(&r))
            })
    }

    /// Whether `φ_*` is an isomorphism on `H_n`, with both groups.
    pub fn on_homology(&self, n: usize) -> Result<(Canonical, Canonical, bool)> {
        if n + 1 >= self.maps.len() {
            bail!(Range, "degree {n} is beyond the computed range");
        }
        let hs = self.source.homology(n)?;
        let ht = self.mapping.homology(n)?;
        let f = hs.induced(&self.maps[n], &ht)?;
        Ok((hs.group.canonical(), ht.group.canonical(), f.is_iso()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaRow {
    pub orbit: String,
    pub degree: usize,
    pub level: Canonical,
    pub loops: Canonical,
    pub chain_map: bool,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub representation: String,
    pub rows: Vec<OmegaRow>,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.chain_map && r.iso)
    }
}

/// Compares `π_n((X⊗̃M)(G/K))` with `π_n Map(ΦS^W ∧ Φ(G/K_+), (Σ^W X)⊗̃M)`
/// through `φ`, for every orbit and `n ≤ n_max`.
pub fn omega_spectrum_check(x: &Based, m: &MackeyFunctor, w: &Representation, n_max: usize) -> Result<OmegaReport> {
    let g = x.group().clone();
    let mut rows = Vec::new();
    for c in 0..g.class_count() {
        let phi = phi_chain_map(x, m, w, c, n_max + 2)?;
        let chain_map = phi.is_chain_map();
        for n in 0..=n_max {
            let (level, loops, iso) = phi.on_homology(n)?;
            rows.push(OmegaRow { orbit: format!("{}/{}", g.name(), g.class(c).label), degree: n, level, loops, chain_map, iso });
        }
    }
    Ok(OmegaReport { representation: w.to_string(), rows })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;

    fn c2() -> Arc<crate::grp::FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().map(|x| x.2).sum::<i64>(), 0);
        assert_eq!(shuffles(2, 2).len(), 6);
    }

    #[test]
    fn trivial_representation_is_identity() {
        let g = c2();
        let x = Representation::Trivial(0).sphere(&g, 4).unwrap();
        let r = omega_spectrum_check(&x, &MackeyFunctor::burnside(g), &Representation::Trivial(0), 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sign_loops_integer_coefficients() {
        let g = c2();
        let x = Representation::Trivial(0).sphere(&g, 4).unwrap();
        let r = omega_spectrum_check(&x, &MackeyFunctor::constant_z(g), &Representation::Sign, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        let top = r.rows.iter().find(|row| row.orbit == "C2/C2" && row.degree == 0).unwrap();
        assert_eq!(top.level, Canonical::free(1));
    }
}
