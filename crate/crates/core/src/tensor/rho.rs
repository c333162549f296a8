use std::collections::HashMap;

use super::{tensor, ModuleTensor};
use crate::error::Result;
use crate::exact::{LatticeSolver, Matrix};
use crate::gset::GSet;
use crate::mackey::{FixedPointFormula, MackeyFunctor, MackeyMorphism, WeylModule};
use crate::sgset::SimplicialGSet;

/// `ρ : (X⊗R_H A)_n → R_H(A[X_n^H])` and its inverse `ς` on one level.
#[derive(Clone, Debug)]
pub struct RhoLevel {
    pub n: usize,
    pub rho: MackeyMorphism,
    pub varsigma: MackeyMorphism,
}

impl RhoLevel {
    /// `ρ∘ς = id` and `ς∘ρ = id` at every orbit.
    pub fn is_inverse_pair(&self) -> bool {
        let a = self.rho.compose(&self.varsigma);
        let b = self.varsigma.compose(&self.rho);
        (0..a.components.len()).all(|k| {
            let (ta, tb) = (&a.target.values()[k], &b.target.values()[k]);
            let ia = a.components[k].sub(&Matrix::identity(ta.gens()));
            let ib = b.components[k].sub(&Matrix::identity(tb.gens()));
            ta.all_columns_zero(&ia) && tb.all_columns_zero(&ib)
        })
    }
}

fn solve_cols(embed: &Matrix, relations: &Matrix, m: &Matrix) -> Matrix {
    let solver = LatticeSolver::new(&embed.hcat(relations));
    let cols: Vec<_> = (0..m.cols())
        .map(|j| {
            let x = solver.solve(&m.col(j)).expect("image lies in the fixed-point lattice");
            x[..embed.cols()].to_vec()
        })
        .collect();
    Matrix::from_cols(embed.cols(), &cols)
}

fn ambient_relations(a: &WeylModule, copies: usize) -> Matrix {
    let blocks: Vec<&Matrix> = vec![a.value.relations(); copies];
    if blocks.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        Matrix::block_diag(&blocks)
    }
}

/// The isomorphism `X⊗R_H A ≅ R_H(X^H ⊗_F A)` level by level, for `H` the
/// class representative `class_id` and `A` a module over its Weyl group.
pub fn rho_iso(x: &SimplicialGSet, class_id: usize, a: &WeylModule) -> Result<Vec<RhoLevel>> {
    let g = x.group().clone();
    let ra = FixedPointFormula::new(g.clone(), class_id, a.clone())?;
    let m = MackeyFunctor::fixed_point(g.clone(), class_id, a.clone())?;
    let t = tensor(x, &m)?;
    let (fp, incl) = x.fixed_point_system(class_id);
    let lin = ModuleTensor::new(fp.plus(), a.clone());
    let k = a.value.gens();
    let mut out = Vec::new();
    for n in 0..=x.depth() {
        let an = lin.level(n);
        let xh = incl[n].len();
        let rb = FixedPointFormula::new(g.clone(), class_id, an.clone())?;
        let target = MackeyFunctor::fixed_point(g.clone(), class_id, an)?;
        let xpos: HashMap<usize, usize> = incl[n].iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let (mut rho, mut vs) = (Vec::new(), Vec::new());
        for c in 0..g.class_count() {
            let s = GSet::orbit(g.clone(), c);
            let (ls, ev) = t.value(n, &s);
            let (src_pts, src_emb) = ra.ambient_embedding(&ev);
            let tev = target.evaluate(&s);
            let (tgt_pts, tgt_emb) = rb.ambient_embedding(&tev);
            let spos: HashMap<usize, usize> = tgt_pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            // (x, s) ↦ (s, x)
            let mut perm = Matrix::zeros(tgt_pts.len() * xh * k, src_pts.len() * k);
            for (i, &p) in src_pts.iter().enumerate() {
                let (xs, ss) = ls.split(p);
                let row = (spos[&ss] * xh + xpos[&xs]) * k;
                perm.set_block(row, i * k, &Matrix::identity(k));
            }
            rho.push(solve_cols(&tgt_emb, &ambient_relations(a, tgt_pts.len() * xh), &perm.mul(&src_emb)));
            vs.push(solve_cols(
                &src_emb,
                &ambient_relations(a, src_pts.len()),
                &perm.transpose().mul(&tgt_emb),
            ));
        }
        let src = t.level_functor(n);
        out.push(RhoLevel {
            n,
            rho: MackeyMorphism::new(src.clone(), target.clone(), rho)?,
            varsigma: MackeyMorphism::new(target, src, vs)?,
        });
    }
    Ok(out)
}
