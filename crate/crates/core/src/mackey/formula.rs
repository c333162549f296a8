use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::WeylModule;
use super::Evaluated;
use crate::error::{bail, Result};
use crate::exact::{AbGroup, AbHom, Matrix, Subgroup};
use crate::grp::FiniteGroup;
use crate::gset::GSet;

/// A Mackey functor given by formulas valid on every finite G-set.
pub trait MackeyFormula {
    fn value(&self, s: &GSet) -> AbGroup;
    /// `M_*(f) : M(S) → M(T)`
    fn push(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix;
    /// `M^*(f) : M(T) → M(S)`
    fn pull(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix;
}

/// Burnside functor: `A(S)` is free on isomorphism classes of transitive
/// G-sets over `S`, i.e. on G-orbits of pairs `(L, s)` with `L ≤ G_s`.
pub struct BurnsideFormula;

/// Basis of `A(S)`: index of every pair `(L, s)`, and one representative
/// per basis element.
pub fn burnside_basis(s: &GSet) -> (BTreeMap<(Vec<usize>, usize), usize>, Vec<(Vec<usize>, usize)>) {
    let g = s.group();
    let subs = g.all_subgroups();
    let mut orbit_reps: Vec<(usize, std::cmp::Reverse<usize>, Vec<usize>, Vec<(Vec<usize>, usize)>)> = Vec::new();
    let mut seen: BTreeMap<(Vec<usize>, usize), ()> = BTreeMap::new();
    for x in 0..s.size() {
        let stab = s.stabilizer(x);
        for l in subs.iter().filter(|l| l.iter().all(|e| stab.binary_search(e).is_ok())) {
            if seen.contains_key(&(l.clone(), x)) {
                continue;
            }
            let mut members: Vec<(Vec<usize>, usize)> =
                g.elements().map(|a| (g.conjugate(a, l), s.act(a, x))).collect();
            members.sort();
            members.dedup();
            for m in &members {
                seen.insert(m.clone(), ());
            }
            let key = members
                .iter()
                .map(|(l2, x2)| (*x2, std::cmp::Reverse(l2.len()), l2.clone()))
                .min()
                .unwrap();
            orbit_reps.push((key.0, key.1, key.2, members));
        }
    }
    orbit_reps.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let mut index = BTreeMap::new();
    let mut reps = Vec::new();
    for (i, (x, _, l, members)) in orbit_reps.into_iter().enumerate() {
        for m in members {
            index.insert(m, i);
        }
        reps.push((l, x));
    }
    (index, reps)
}

impl MackeyFormula for BurnsideFormula {
    fn value(&self, s: &GSet) -> AbGroup {
        AbGroup::free(burnside_basis(s).1.len())
    }

    fn push(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let (_, src) = burnside_basis(s);
        let (tidx, treps) = burnside_basis(t);
        let mut m = Matrix::zeros(treps.len(), src.len());
        for (j, (l, x)) in src.iter().enumerate() {
            m.add_block(tidx[&(l.clone(), f[*x])], j, &Matrix::scalar(1, 1));
        }
        m
    }

    fn pull(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let (sidx, sreps) = burnside_basis(s);
        let (_, treps) = burnside_basis(t);
        let mut m = Matrix::zeros(sreps.len(), treps.len());
        for (j, (l, y)) in treps.iter().enumerate() {
            // the pullback of G/L → T along f has one orbit per L-orbit of f⁻¹(y)
            let mut done = vec![false; s.size()];
            for x in 0..s.size() {
                if f[x] != *y || done[x] {
                    continue;
                }
                for &a in l {
                    done[s.act(a, x)] = true;
                }
                let stab: Vec<usize> = l.iter().copied().filter(|&a| s.act(a, x) == x).collect();
                m.add_block(sidx[&(stab, x)], j, &Matrix::scalar(1, 1));
            }
        }
        m
    }
}

/// Fixed-point functor `S ↦ Hom_{WH}(S^H, A)` for a Weyl module `A`.
pub struct FixedPointFormula {
    group: Arc<FiniteGroup>,
    class_id: usize,
    module: WeylModule,
}

struct FixedPointValue {
    points: Vec<usize>,
    sub: Subgroup,
}

impl FixedPointFormula {
    pub fn new(group: Arc<FiniteGroup>, class_id: usize, module: WeylModule) -> Result<Self> {
        let rec = group.class(class_id);
        if *module.group != *rec.weyl {
            bail!(Config, "module is not over the Weyl group of {}", rec.label);
        }
        Ok(FixedPointFormula { group, class_id, module })
    }

    fn compute(&self, s: &GSet) -> FixedPointValue {
        let rec = self.group.class(self.class_id);
        let points = s.fixed_points_of(&rec.elements);
        let pos: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let a = &self.module.value;
        let k = a.gens();
        let m = points.len();
        let parts: Vec<&AbGroup> = vec![a; m];
        let ambient = if m == 0 { AbGroup::zero() } else { AbGroup::direct_sum(&parts) };
        let nw = rec.weyl_reps.len();
        let target_parts: Vec<&AbGroup> = vec![a; m * nw];
        let target = if m == 0 { AbGroup::zero() } else { AbGroup::direct_sum(&target_parts) };
        // equivariance: a_{n·x} − w·a_x = 0
        let mut c = Matrix::zeros(m * nw * k, m * k);
        for (w, &n) in rec.weyl_reps.iter().enumerate() {
            for (i, &x) in points.iter().enumerate() {
                let row = (w * m + i) * k;
                c.add_block(row, pos[&s.act(n, x)] * k, &Matrix::identity(k));
                c.add_block(row, i * k, &self.module.action[w].neg());
            }
        }
        let sub = AbHom::new(ambient, target, c).kernel();
        FixedPointValue { points, sub }
    }

    pub fn module(&self) -> &WeylModule {
        &self.module
    }

    /// Map `Hom_WH(S^H, A) → Hom_WH(S^H, B)` induced by a module map `A → B`.
    pub fn induced(&self, other: &FixedPointFormula, phi: &Matrix, s: &GSet) -> Matrix {
        let (va, vb) = (self.compute(s), other.compute(s));
        let blocks: Vec<&Matrix> = vec![phi; va.points.len()];
        let amb = if blocks.is_empty() { Matrix::zeros(0, 0) } else { Matrix::block_diag(&blocks) };
        Self::ambient_to_value(&vb, &amb.mul(&va.sub.embed))
    }

    /// Columns: the coordinates of `M(S)`, as evaluated on orbits, written
    /// as functions `S^H → A`; rows follow the increasing list of `S^H`.
    pub fn ambient_embedding(&self, ev: &Evaluated) -> (Vec<usize>, Matrix) {
        let rec = self.group.class(self.class_id);
        let points = ev.set.fixed_points_of(&rec.elements);
        let pos: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let k = self.module.value.gens();
        let mut m = Matrix::zeros(points.len() * k, ev.group.gens());
        for (o, orbit) in ev.dec.orbits.iter().enumerate() {
            let v = self.compute(&GSet::orbit(self.group.clone(), orbit.class_id));
            let cols = v.sub.embed.cols();
            for (i, &c) in v.points.iter().enumerate() {
                let p = ev.dec.point(&ev.set, o, c);
                m.set_block(pos[&p] * k, ev.offsets[o], &v.sub.embed.block(i * k, 0, k, cols));
            }
        }
        (points, m)
    }

    fn ambient_to_value(v: &FixedPointValue, ambient: &Matrix) -> Matrix {
        v.sub.coords_matrix(ambient).expect("map preserves equivariant functions")
    }
}

impl MackeyFormula for FixedPointFormula {
    fn value(&self, s: &GSet) -> AbGroup {
        self.compute(s).sub.group
    }

    fn push(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let (vs, vt) = (self.compute(s), self.compute(t));
        let k = self.module.value.gens();
        let tpos: BTreeMap<usize, usize> = vt.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut sum = Matrix::zeros(vt.points.len() * k, vs.points.len() * k);
        for (i, &x) in vs.points.iter().enumerate() {
            sum.add_block(tpos[&f[x]] * k, i * k, &Matrix::identity(k));
        }
        Self::ambient_to_value(&vt, &sum.mul(&vs.sub.embed))
    }

    fn pull(&self, s: &GSet, t: &GSet, f: &[usize]) -> Matrix {
        let (vs, vt) = (self.compute(s), self.compute(t));
        let k = self.module.value.gens();
        let tpos: BTreeMap<usize, usize> = vt.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut pre = Matrix::zeros(vs.points.len() * k, vt.points.len() * k);
        for (i, &x) in vs.points.iter().enumerate() {
            pre.add_block(i * k, tpos[&f[x]] * k, &Matrix::identity(k));
        }
        Self::ambient_to_value(&vs, &pre.mul(&vt.sub.embed))
    }
}

