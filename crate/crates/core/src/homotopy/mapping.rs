use num_bigint::BigInt;

use crate::error::{bail, Result};
use crate::exact::{AbGroup, ChainComplex, Homology, Matrix};
use crate::gset::GSet;
use crate::mackey::{Evaluated, MackeyFunctor};
use crate::sgset::{Based, Representation};
use crate::tensor::{reduced_tensor, LevelSet, TensorFunctor};

/// Nondegenerate non-base simplices of `K_k` as a G-set.
#[derive(Clone, Debug)]
pub struct CellSet {
    pub cells: Vec<usize>,
    pub set: GSet,
    pub pos: Vec<Option<usize>>,
}

impl CellSet {
    pub fn new(k: &Based, n: usize) -> Self {
        let cells = k.cells(n);
        let set = k.space.level(n).restrict_to(&cells).expect("cells form a G-subset");
        let mut pos = vec![None; k.space.level(n).size()];
        for (i, &c) in cells.iter().enumerate() {
            pos[c] = Some(i);
        }
        CellSet { cells, set, pos }
    }
}

/// One summand `D_{k+n}(K_k)` of the degree-`n` group.
#[derive(Clone, Debug)]
pub struct Summand {
    pub k: usize,
    pub level: usize,
    pub offset: usize,
    pub value: Option<(LevelSet, Evaluated)>,
}

impl Summand {
    pub fn gens(&self) -> usize {
        self.value.as_ref().map_or(0, |v| v.1.group.gens())
    }
}

/// Natural families of based maps `ΦK ∧ Δ[n]_+ → 𝒜` through the Dold–Kan
/// correspondence: in degree `n`, natural maps `N_k Z̃[ΦK] → N_{k+n} 𝒜`,
/// which by the Yoneda lemma form `⊕_k N_{k+n}𝒜(K_k)`. Degree `-1` is kept
/// so that degree-0 cycles are computed; `complex` stores degree `n` at
/// index `n + 1`.
#[derive(Clone, Debug)]
pub struct MappingComplex {
    pub source: Based,
    pub target: TensorFunctor,
    pub cells: Vec<CellSet>,
    pub summands: Vec<Vec<Summand>>,
    pub complex: ChainComplex,
}

pub fn mapping_complex(k: &Based, target: &TensorFunctor, degree_bound: usize) -> Result<MappingComplex> {
    if **k.group() != **target.group() {
        bail!(Config, "source over {} but target over {}", k.group().name(), target.group().name());
    }
    let kmax = k.space.dimension();
    let depth = target.depth();
    if kmax + degree_bound > depth && target.space.dimension() >= depth {
        bail!(
            Range,
            "maps of degree {degree_bound} out of a {kmax}-dimensional source need target chains through degree {}, but the depth is {depth}",
            kmax + degree_bound
        );
    }
    let cells: Vec<CellSet> = (0..=kmax).map(|n| CellSet::new(k, n)).collect();
    let summands: Vec<Vec<Summand>> = (0..=degree_bound + 1)
        .map(|j| {
            let mut offset = 0;
            (0..=kmax)
                .map(|kk| {
                    let level = (kk + j).saturating_sub(1);
                    let value =
                        (kk + j >= 1 && level <= depth).then(|| target.normalized_value(level, &cells[kk].set));
                    let s = Summand { k: kk, level, offset, value };
                    offset += s.gens();
                    s
                })
                .collect()
        })
        .collect();
    let groups: Vec<AbGroup> = summands
        .iter()
        .map(|ss| {
            let parts: Vec<&AbGroup> = ss.iter().filter_map(|s| s.value.as_ref().map(|v| &v.1.group)).collect();
            if parts.is_empty() {
                AbGroup::zero()
            } else {
                AbGroup::direct_sum(&parts)
            }
        })
        .collect();
    let mut diffs = Vec::new();
    for n in 1..=degree_bound + 1 {
        let mut d = Matrix::zeros(groups[n - 1].gens(), groups[n].gens());
        // stored index n is degree n - 1
        let outer = if n % 2 == 1 { -1 } else { 1 };
        for kk in 0..=kmax {
            let (src, tgt) = (&summands[n][kk], &summands[n - 1][kk]);
            if let (Some(_), Some(_)) = (&src.value, &tgt.value) {
                d.set_block(tgt.offset, src.offset, &target.normalized_differential(src.level, &cells[kk].set));
            }
            if kk == 0 {
                continue;
            }
            // f_{k-1} ∘ ∂ on the source side
            let prev = &summands[n][kk - 1];
            let (Some(pv), Some(tv)) = (&prev.value, &tgt.value) else { continue };
            for i in 0..=kk {
                let map: Vec<Option<usize>> = (0..tv.0.set.size())
                    .map(|j| {
                        let (x, c) = tv.0.split(j);
                        let face = k.space.face(kk, i, cells[kk].cells[c]);
                        cells[kk - 1].pos[face].and_then(|q| pv.0.index(x, q))
                    })
                    .collect();
                let p = target.m.pull_partial(&tv.1, &pv.1, &map);
                let sign = outer * if i % 2 == 0 { 1 } else { -1 };
                d.add_block(tgt.offset, prev.offset, &p.scale(&BigInt::from(sign)));
            }
        }
        diffs.push(d);
    }
    let complex = ChainComplex::new(groups, diffs)?;
    Ok(MappingComplex { source: k.clone(), target: target.clone(), cells, summands, complex })
}

impl MappingComplex {
    pub fn bound(&self) -> usize {
        self.complex.top() - 1
    }

    /// Degree-`n` group.
    pub fn group(&self, n: usize) -> &AbGroup {
        self.complex.group(n + 1)
    }

    /// Differential out of degree `n`.
    pub fn differential(&self, n: usize) -> &Matrix {
        self.complex.differential(n + 1)
    }

    /// `π_n` of the mapping object.
    pub fn homology(&self, n: usize) -> Result<Homology> {
        if n >= self.bound() {
            bail!(Range, "π_{n} needs the mapping complex through degree {}, computed only to {}", n + 1, self.bound());
        }
        self.complex.homology(n + 1)
    }

    /// The degree-`n` element whose only nonzero summand is the natural map
    /// sending the `k`-cell `p` (fixed by the class representative `class_id`)
    /// to `v ∈ N_{k+n}𝒜(G/L)`, and extended by naturality.
    pub fn yoneda_element(&self, n: usize, k: usize, p: usize, class_id: usize, v: &[BigInt]) -> Vec<BigInt> {
        let g = self.target.group().clone();
        let total = self.group(n).gens();
        let mut out = vec![BigInt::from(0); total];
        let s = &self.summands[n + 1][k];
        let Some(tv) = &s.value else { return out };
        let orbit = GSet::orbit(g.clone(), class_id);
        let src = self.target.normalized_value(s.level, &orbit);
        let cs = g.coset_space(class_id);
        let lv = self.source.space.level(k);
        let map: Vec<Option<usize>> = (0..src.0.set.size())
            .map(|j| {
                let (x, c) = src.0.split(j);
                let q = self.cells[k].pos[lv.act(cs.reps[c], p)].expect("cell orbit");
                tv.0.index(x, q)
            })
            .collect();
        let pushed = self.target.m.push_partial(&src.1, &tv.1, &map).mul_vec(v);
        for (i, x) in pushed.into_iter().enumerate() {
            out[s.offset + i] = x;
        }
        out
    }
}

/// `S^{V_1} ∧ ⋯ ∧ S^{V_r}`, with `S⁰` for the empty list.
pub fn sphere_of(v: &[Representation], group: &std::sync::Arc<crate::grp::FiniteGroup>, depth: usize) -> Result<Based> {
    let mut s = Representation::Trivial(0).sphere(group, depth)?;
    for (i, r) in v.iter().enumerate() {
        let t = r.sphere(group, depth)?;
        s = if i == 0 { t } else { s.smash(&t) };
    }
    Ok(s)
}

/// `π_V(X⊗̃M) = [ΦS^V, X⊗̃M]`.
pub fn homotopy_classes(v: &[Representation], x: &Based, m: &MackeyFunctor) -> Result<AbGroup> {
    let k = sphere_of(v, x.group(), x.depth())?;
    let mc = mapping_complex(&k, &reduced_tensor(x, m)?, 1)?;
    Ok(mc.homology(0)?.group)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::Canonical;
    use crate::grp::FiniteGroup;
    use crate::homotopy::chains::chains_at;
    use crate::sgset::SimplicialGSet;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn s0_source_is_evaluation_at_top() {
        let g = c2();
        for m in [MackeyFunctor::burnside(g.clone()), MackeyFunctor::constant_z(g.clone())] {
            let s0 = Representation::Trivial(0).sphere(&g, 4).unwrap();
            assert_eq!(homotopy_classes(&[], &s0, &m).unwrap().canonical(), m.value(1).canonical());
        }
    }

    #[test]
    fn yoneda_for_orbits() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 4).unwrap();
        let t = reduced_tensor(&x, &MackeyFunctor::burnside(g.clone())).unwrap();
        for c in 0..2 {
            let orbit = GSet::orbit(g.clone(), c);
            let k = SimplicialGSet::discrete(&orbit, 4).plus();
            let mc = mapping_complex(&k, &t, 3).unwrap();
            let direct = chains_at(&t, &orbit);
            for n in 0..3 {
                assert_eq!(mc.group(n).canonical(), direct.group(n).canonical());
                assert_eq!(mc.homology(n).unwrap().group.canonical(), direct.homology(n).unwrap().group.canonical());
            }
        }
    }

    #[test]
    fn sign_source_and_target() {
        let g = c2();
        let x = Representation::Sign.sphere(&g, 4).unwrap();
        let pi = homotopy_classes(&[Representation::Sign], &x, &MackeyFunctor::constant_z(g)).unwrap();
        assert_eq!(pi.canonical(), Canonical::free(1));
    }
}
