use serde::Serialize;

use super::mapping::{mapping_complex, CellSet};
use crate::error::{bail, Result};
use crate::exact::{AbGroup, AbHom, Canonical, ChainComplex, Matrix, Subgroup};
use crate::mackey::{MackeyFunctor, WeylModule};
use crate::sgset::Based;
use crate::tensor::{reduced_tensor, ModuleTensor};

/// Weyl-equivariant maps `Z̃[K] → Y ⊗̃_F A` through Dold–Kan: in degree `n`,
/// `⊕_k Map_W(K_k, N_{k+n})`, degree `n` stored at index `n + 1`.
#[derive(Clone, Debug)]
pub struct WeylMappingComplex {
    pub complex: ChainComplex,
}

impl WeylMappingComplex {
    pub fn group(&self, n: usize) -> &AbGroup {
        self.complex.group(n + 1)
    }

    pub fn homology(&self, n: usize) -> Result<AbGroup> {
        if n + 1 >= self.complex.top() {
            bail!(Range, "degree {n} is beyond the computed range");
        }
        Ok(self.complex.homology(n + 1)?.group)
    }
}

struct Block {
    k: usize,
    level: usize,
    offset: usize,
    width: usize,
}

pub fn weyl_mapping_complex(k: &Based, y: &ModuleTensor, degree_bound: usize) -> Result<WeylMappingComplex> {
    let w = y.module.group.clone();
    if **k.group() != *w {
        bail!(Config, "source and module over different groups");
    }
    let kmax = k.space.dimension();
    let depth = y.space.depth();
    let chains = y.chain_complex();
    let cells: Vec<CellSet> = (0..=kmax).map(|n| CellSet::new(k, n)).collect();
    // ambient blocks: functions K_k -> N_level
    let layout: Vec<Vec<Block>> = (0..=degree_bound + 1)
        .map(|j| {
            let mut offset = 0;
            let mut out = Vec::new();
            for kk in 0..=kmax {
                if kk + j < 1 || kk + j - 1 > depth {
                    continue;
                }
                let level = kk + j - 1;
                let width = chains.group(level).gens();
                out.push(Block { k: kk, level, offset, width });
                offset += width * cells[kk].cells.len();
            }
            out
        })
        .collect();
    let ambient: Vec<AbGroup> = layout
        .iter()
        .map(|bs| {
            let parts: Vec<&AbGroup> =
                bs.iter().flat_map(|b| std::iter::repeat_n(chains.group(b.level), cells[b.k].cells.len())).collect();
            if parts.is_empty() {
                AbGroup::zero()
            } else {
                AbGroup::direct_sum(&parts)
            }
        })
        .collect();
    // equivariance f(w s) = w f(s)
    let subs: Vec<Subgroup> = layout
        .iter()
        .zip(&ambient)
        .map(|(bs, amb)| {
            let n = amb.gens();
            let mut c = Matrix::zeros(n * w.order(), n);
            for g in w.elements() {
                for b in bs {
                    let act = y.level_action(b.level, g, &y.space.cells(b.level));
                    let lv = k.space.level(b.k);
                    for (i, &s) in cells[b.k].cells.iter().enumerate() {
                        let t = cells[b.k].pos[lv.act(g, s)].unwrap();
                        let row = g * n + b.offset + t * b.width;
                        c.add_block(row, b.offset + t * b.width, &Matrix::identity(b.width));
                        c.add_block(row, b.offset + i * b.width, &act.neg());
                    }
                }
            }
            let parts: Vec<&AbGroup> = vec![amb; w.order()];
            let target = if parts.is_empty() || n == 0 { AbGroup::zero() } else { AbGroup::direct_sum(&parts) };
            let c = if n == 0 { Matrix::zeros(0, 0) } else { c };
            AbHom::new(amb.clone(), target, c).kernel()
        })
        .collect();
    let mut diffs = Vec::new();
    for j in 1..=degree_bound + 1 {
        let mut d = Matrix::zeros(ambient[j - 1].gens(), ambient[j].gens());
        let outer: i64 = if j % 2 == 1 { -1 } else { 1 };
        for src in &layout[j] {
            if let Some(tgt) = layout[j - 1].iter().find(|b| b.k == src.k) {
                let dn = chains.differential(src.level);
                for i in 0..cells[src.k].cells.len() {
                    d.set_block(tgt.offset + i * tgt.width, src.offset + i * src.width, dn);
                }
            }
            // the k+1 component of the target pulls back along faces
            let Some(tgt) = layout[j - 1].iter().find(|b| b.k == src.k + 1) else { continue };
            let kk = src.k + 1;
            for (ci, &s) in cells[kk].cells.iter().enumerate() {
                for f in 0..=kk {
                    let face = k.space.face(kk, f, s);
                    let Some(q) = cells[src.k].pos[face] else { continue };
                    let sign = outer * if f % 2 == 0 { 1 } else { -1 };
                    d.add_block(tgt.offset + ci * tgt.width, src.offset + q * src.width, &Matrix::scalar(src.width, sign));
                }
            }
        }
        let m = d.mul(&subs[j].embed);
        diffs.push(subs[j - 1].coords_matrix(&m).expect("differential preserves equivariant maps"));
    }
    let complex = ChainComplex::new(subs.into_iter().map(|s| s.group).collect(), diffs)?;
    Ok(WeylMappingComplex { complex })
}

impl ModuleTensor {
    /// Action of `w` on `⊕_{y ∈ cells} A`.
    pub fn level_action(&self, n: usize, w: usize, cells: &[usize]) -> Matrix {
        let k = self.module.value.gens();
        let lv = self.space.space.level(n);
        let mut m = Matrix::zeros(cells.len() * k, cells.len() * k);
        for (i, &x) in cells.iter().enumerate() {
            let j = cells.iter().position(|&c| c == lv.act(w, x)).unwrap();
            m.set_block(j * k, i * k, &self.module.action[w]);
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WhcgRow {
    pub degree: usize,
    pub chains: (Canonical, Canonical),
    pub homology: Option<(Canonical, Canonical)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhcgReport {
    pub rows: Vec<WhcgRow>,
}

impl WhcgReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.chains.0 == r.chains.1 && r.homology.as_ref().is_none_or(|h| h.0 == h.1))
    }
}

/// Maps `ΦK → X⊗̃R_H A` over the orbit category against Weyl-equivariant
/// maps `K^H → X^H ⊗̃_F A`, degree by degree.
pub fn whcg_check(k: &Based, x: &Based, class_id: usize, a: &WeylModule, degree_bound: usize) -> Result<WhcgReport> {
    let g = x.group().clone();
    let ra = MackeyFunctor::fixed_point(g, class_id, a.clone())?;
    let over_g = mapping_complex(k, &reduced_tensor(x, &ra)?, degree_bound)?;
    let over_w = weyl_mapping_complex(
        &k.fixed_point_system(class_id),
        &ModuleTensor::new(x.fixed_point_system(class_id), a.clone()),
        degree_bound,
    )?;
    let mut rows = Vec::new();
    for n in 0..=degree_bound {
        let chains = (over_g.group(n).canonical(), over_w.group(n).canonical());
        let homology = if n < degree_bound {
            Some((over_g.homology(n)?.group.canonical(), over_w.homology(n)?.canonical()))
        } else {
            None
        };
        rows.push(WhcgRow { degree: n, chains, homology });
    }
    Ok(WhcgReport { rows })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;
    use crate::sgset::Representation;

    #[test]
    fn sign_spheres_free_and_fixed() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let s = Representation::Sign.sphere(&g, 4).unwrap();
        let r = whcg_check(&s, &s, 0, &WeylModule::regular(g.clone()), 2).unwrap();
        assert!(r.passed(), "{r:?}");
        let top = WeylModule::integers(g.class(1).weyl.clone());
        let r = whcg_check(&s, &s, 1, &top, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
