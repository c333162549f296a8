//! Mackey functors on finite G-sets: orbit tables, evaluation on arbitrary
//! G-sets, both variances, axioms and morphisms.

mod formula;
mod module;
mod morphism;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::exact::{AbGroup, AbHom, Matrix};
use crate::grp::FiniteGroup;
use crate::gset::{GMap, GSet, OrbitDecomposition};
use crate::io::{matrix_from_json, matrix_to_json, AbGroupSpec, MatrixJson};

pub use formula::{burnside_basis, BurnsideFormula, FixedPointFormula, MackeyFormula};
pub use module::{WeylModule, WeylModuleSpec};
pub use morphism::{is_short_exact, MackeyMorphism};
pub use verify::{AxiomReport, SquareWitness};

/// An orbit map `G/K → G/H` between class representatives, `eK ↦ cH`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitMap {
    pub from: usize,
    pub to: usize,
    pub coset: usize,
}

impl OrbitMap {
    /// Value table on the coset indices of `G/K`.
    pub fn values(&self, g: &FiniteGroup) -> Vec<usize> {
        let src = g.coset_space(self.from);
        let tgt = g.coset_space(self.to);
        let c = tgt.reps[self.coset];
        src.reps.iter().map(|&r| tgt.index_of[g.mul(r, c)]).collect()
    }

    /// Every orbit map between class representatives.
    pub fn all(g: &FiniteGroup) -> Vec<OrbitMap> {
        let mut out = Vec::new();
        for k in 0..g.class_count() {
            for h in 0..g.class_count() {
                let hs = &g.class(h).elements;
                for (c, &r) in g.coset_space(h).reps.iter().enumerate() {
                    let ri = g.inv(r);
                    if g.class(k).elements.iter().all(|&x| hs.binary_search(&g.conj(ri, x)).is_ok()) {
                        out.push(OrbitMap { from: k, to: h, coset: c });
                    }
                }
            }
        }
        out
    }
}

/// Mackey functor tabulated on the orbits `G/H` of class representatives.
#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    group: Arc<FiniteGroup>,
    name: String,
    values: Vec<AbGroup>,
    push: BTreeMap<OrbitMap, Matrix>,
    pull: BTreeMap<OrbitMap, Matrix>,
}

/// `M(S)` as a direct sum over the orbits of `S`.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub set: GSet,
    pub dec: OrbitDecomposition,
    pub offsets: Vec<usize>,
    pub group: AbGroup,
}

impl Evaluated {
    pub fn block(&self, orbit: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(orbit + 1).copied().unwrap_or(self.group.gens());
        self.offsets[orbit]..end
    }

    /// Generator indices of the orbits selected by `keep`.
    pub fn indices_where(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.dec.orbits.len()).filter(|&o| keep(o)).flat_map(|o| self.block(o)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyTableSpec {
    pub name: String,
    pub values: Vec<AbGroupSpec>,
    pub maps: Vec<OrbitMapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMapSpec {
    pub from: usize,
    pub to: usize,
    pub coset: usize,
    pub tr: MatrixJson,
    pub res: MatrixJson,
}

impl MackeyFunctor {
    /// Tabulates a formula on the orbits of the group.
    pub fn tabulate(group: Arc<FiniteGroup>, name: &str, formula: &dyn MackeyFormula) -> Self {
        let orbits: Vec<GSet> = (0..group.class_count()).map(|k| GSet::orbit(group.clone(), k)).collect();
        let values = orbits.iter().map(|o| formula.value(o)).collect();
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        for m in OrbitMap::all(&group) {
            let f = m.values(&group);
            push.insert(m, formula.push(&orbits[m.from], &orbits[m.to], &f));
            pull.insert(m, formula.pull(&orbits[m.from], &orbits[m.to], &f));
        }
        MackeyFunctor { group, name: name.to_string(), values, push, pull }
    }

    pub fn from_tables(
        group: Arc<FiniteGroup>,
        name: &str,
        values: Vec<AbGroup>,
        push: BTreeMap<OrbitMap, Matrix>,
        pull: BTreeMap<OrbitMap, Matrix>,
    ) -> Result<Self> {
        if values.len() != group.class_count() {
            bail!(Validation, "{name}: {} values for {} subgroup classes", values.len(), group.class_count());
        }
        for m in OrbitMap::all(&group) {
            let (a, b) = (values[m.from].gens(), values[m.to].gens());
            match (push.get(&m), pull.get(&m)) {
                (Some(t), Some(r)) => {
                    if t.rows() != b || t.cols() != a || r.rows() != a || r.cols() != b {
                        bail!(Validation, "{name}: wrong matrix shape for orbit map {m:?}");
                    }
                    if !AbHom::new(values[m.from].clone(), values[m.to].clone(), t.clone()).is_well_defined()
                        || !AbHom::new(values[m.to].clone(), values[m.from].clone(), r.clone()).is_well_defined()
                    {
                        bail!(Validation, "{name}: matrices for {m:?} do not respect relations");
                    }
                }
                _ => bail!(Validation, "{name}: missing data for orbit map {m:?}"),
            }
        }
        Ok(MackeyFunctor { group, name: name.to_string(), values, push, pull })
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &MackeyTableSpec) -> Result<Self> {
        let values = spec
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v.build(&format!("values[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        for (i, m) in spec.maps.iter().enumerate() {
            let key = OrbitMap { from: m.from, to: m.to, coset: m.coset };
            if m.from >= values.len() || m.to >= values.len() {
                bail!(Validation, "maps[{i}]: class index out of range");
            }
            let (a, b) = (values[m.from].gens(), values[m.to].gens());
            push.insert(key, matrix_from_json(b, a, &m.tr, &format!("maps[{i}].tr"))?);
            pull.insert(key, matrix_from_json(a, b, &m.res, &format!("maps[{i}].res"))?);
        }
        Self::from_tables(group, &spec.name, values, push, pull)
    }

    pub fn to_spec(&self) -> MackeyTableSpec {
        MackeyTableSpec {
            name: self.name.clone(),
            values: self.values.iter().map(AbGroupSpec::from_group).collect(),
            maps: self
                .push
                .iter()
                .map(|(m, t)| OrbitMapSpec {
                    from: m.from,
                    to: m.to,
                    coset: m.coset,
                    tr: matrix_to_json(t),
                    res: matrix_to_json(&self.pull[m]),
                })
                .collect(),
        }
    }

    pub fn burnside(group: Arc<FiniteGroup>) -> Self {
        Self::tabulate(group, "burnside", &BurnsideFormula)
    }

    pub fn fixed_point(group: Arc<FiniteGroup>, class_id: usize, module: WeylModule) -> Result<Self> {
        let f = FixedPointFormula::new(group.clone(), class_id, module)?;
        let name = format!("fixed-point:{}", group.class(class_id).label);
        Ok(Self::tabulate(group, &name, &f))
    }

    /// Constant functor `Z`: restriction 1, transfer the index.
    pub fn constant_z(group: Arc<FiniteGroup>) -> Self {
        let m = WeylModule::integers(group.class(0).weyl.clone());
        let mut f = Self::fixed_point(group, 0, m).expect("trivial module");
        f.name = "constant-Z".into();
        f
    }

    pub fn constant_zmod(group: Arc<FiniteGroup>, n: u64) -> Self {
        let m = WeylModule::cyclic(group.class(0).weyl.clone(), n);
        let mut f = Self::fixed_point(group, 0, m).expect("trivial module");
        f.name = format!("constant-Zmod:{n}");
        f
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.class_count();
        let values = vec![AbGroup::zero(); n];
        let maps = OrbitMap::all(&group);
        let push = maps.iter().map(|&m| (m, Matrix::zeros(0, 0))).collect();
        let pull = maps.iter().map(|&m| (m, Matrix::zeros(0, 0))).collect();
        MackeyFunctor { group, name: "zero".into(), values, push, pull }
    }

    pub fn direct_sum(a: &MackeyFunctor, b: &MackeyFunctor) -> MackeyFunctor {
        let values = a.values.iter().zip(&b.values).map(|(x, y)| AbGroup::direct_sum(&[x, y])).collect();
        let push = a.push.iter().map(|(m, t)| (*m, Matrix::block_diag(&[t, &b.push[m]]))).collect();
        let pull = a.pull.iter().map(|(m, r)| (*m, Matrix::block_diag(&[r, &b.pull[m]]))).collect();
        MackeyFunctor { group: a.group.clone(), name: format!("{}+{}", a.name, b.name), values, push, pull }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn value(&self, class_id: usize) -> &AbGroup {
        &self.values[class_id]
    }

    pub fn values(&self) -> &[AbGroup] {
        &self.values
    }

    pub fn push_table(&self, m: &OrbitMap) -> &Matrix {
        &self.push[m]
    }

    pub fn pull_table(&self, m: &OrbitMap) -> &Matrix {
        &self.pull[m]
    }

    /// Replaces the transfer matrix of one orbit map, without validation.
    pub fn with_push(mut self, m: OrbitMap, matrix: Matrix) -> Self {
        self.push.insert(m, matrix);
        self
    }

    pub fn evaluate(&self, s: &GSet) -> Evaluated {
        let dec = s.orbit_decompose();
        let mut offsets = Vec::with_capacity(dec.orbits.len());
        let mut parts = Vec::with_capacity(dec.orbits.len());
        let mut n = 0;
        for o in &dec.orbits {
            offsets.push(n);
            n += self.values[o.class_id].gens();
            parts.push(&self.values[o.class_id]);
        }
        let group = if parts.is_empty() { AbGroup::zero() } else { AbGroup::direct_sum(&parts) };
        Evaluated { set: s.clone(), dec, offsets, group }
    }

    /// Orbit map induced on orbit `o` of a source by a map `f`.
    fn orbit_map(src: &Evaluated, tgt: &Evaluated, f: &[usize], o: usize) -> (usize, OrbitMap) {
        let orbit = &src.dec.orbits[o];
        let y = f[orbit.anchor];
        let o2 = tgt.dec.orbit_of[y];
        let m = OrbitMap { from: orbit.class_id, to: tgt.dec.orbits[o2].class_id, coset: tgt.dec.coset_of[y] };
        (o2, m)
    }

    /// Matrix of `M_*(f) : M(S) → M(T)`.
    pub fn push(&self, src: &Evaluated, tgt: &Evaluated, f: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(tgt.group.gens(), src.group.gens());
        for o in 0..src.dec.orbits.len() {
            let (o2, m) = Self::orbit_map(src, tgt, f, o);
            out.set_block(tgt.offsets[o2], src.offsets[o], &self.push[&m]);
        }
        out
    }

    /// `M_*` of a map defined on a union of orbits of `S`; orbits sent to
    /// `None` contribute zero.
    pub fn push_partial(&self, src: &Evaluated, tgt: &Evaluated, f: &[Option<usize>]) -> Matrix {
        let mut out = Matrix::zeros(tgt.group.gens(), src.group.gens());
        for (o, orbit) in src.dec.orbits.iter().enumerate() {
            let Some(y) = f[orbit.anchor] else { continue };
            let o2 = tgt.dec.orbit_of[y];
            let m = OrbitMap { from: orbit.class_id, to: tgt.dec.orbits[o2].class_id, coset: tgt.dec.coset_of[y] };
            out.add_block(tgt.offsets[o2], src.offsets[o], &self.push[&m]);
        }
        out
    }

    /// Matrix of `M^*(f) : M(T) → M(S)`.
    pub fn pull(&self, src: &Evaluated, tgt: &Evaluated, f: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(src.group.gens(), tgt.group.gens());
        for o in 0..src.dec.orbits.len() {
            let (o2, m) = Self::orbit_map(src, tgt, f, o);
            out.set_block(src.offsets[o], tgt.offsets[o2], &self.pull[&m]);
        }
        out
    }

    /// `M^*` of a map defined on a union of orbits of `S`; the other orbits
    /// receive zero.
    pub fn pull_partial(&self, src: &Evaluated, tgt: &Evaluated, f: &[Option<usize>]) -> Matrix {
        let mut out = Matrix::zeros(src.group.gens(), tgt.group.gens());
        for (o, orbit) in src.dec.orbits.iter().enumerate() {
            let Some(y) = f[orbit.anchor] else { continue };
            let o2 = tgt.dec.orbit_of[y];
            let m = OrbitMap { from: orbit.class_id, to: tgt.dec.orbits[o2].class_id, coset: tgt.dec.coset_of[y] };
            out.set_block(src.offsets[o], tgt.offsets[o2], &self.pull[&m]);
        }
        out
    }

    pub fn covariant_map(&self, f: &GMap) -> AbHom {
        let (s, t) = (self.evaluate(&f.source), self.evaluate(&f.target));
        let m = self.push(&s, &t, &f.values);
        AbHom::new(s.group, t.group, m)
    }

    pub fn contravariant_map(&self, f: &GMap) -> AbHom {
        let (s, t) = (self.evaluate(&f.source), self.evaluate(&f.target));
        let m = self.pull(&s, &t, &f.values);
        AbHom::new(t.group, s.group, m)
    }

    /// Action of the Weyl element `w` on `M(G/H)`, `w·a = M^*(r_n)(a)` for
    /// the right translation `r_n(gH) = gnH`.
    pub fn weyl_action(&self, class_id: usize, w: usize) -> Matrix {
        let n = self.group.class(class_id).weyl_reps[w];
        let coset = self.group.coset_space(class_id).index_of[n];
        self.pull[&OrbitMap { from: class_id, to: class_id, coset }].clone()
    }

    /// `M(G/H)` with its Weyl group action.
    pub fn evaluate_at_orbit(&self, class_id: usize) -> WeylModule {
        let rec = self.group.class(class_id);
        let action = (0..rec.weyl.order()).map(|w| self.weyl_action(class_id, w)).collect();
        WeylModule { group: rec.weyl.clone(), value: self.values[class_id].clone(), action }
    }

    /// Per-class canonical forms.
    pub fn canonical_values(&self) -> Vec<crate::exact::Canonical> {
        self.values.iter().map(|v| v.canonical()).collect()
    }

    /// Element of `M(S)` whose only nonzero block is `x` on orbit `o`.
    pub fn embed_in_orbit(ev: &Evaluated, o: usize, x: &[BigInt]) -> Vec<BigInt> {
        let mut v = crate::exact::zero_vec(ev.group.gens());
        for (i, k) in ev.block(o).enumerate() {
            v[k] = x[i].clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Canonical;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn burnside_of_c2() {
        let g = c2();
        let a = MackeyFunctor::burnside(g.clone());
        assert_eq!(a.canonical_values(), vec![Canonical::free(1), Canonical::free(2)]);
        let pi = GMap::to_point(&GSet::orbit(g.clone(), 0));
        let tr = a.covariant_map(&pi).matrix;
        let res = a.contravariant_map(&pi).matrix;
        // basis [C2/C2], [C2/e]
        assert_eq!(tr, Matrix::from_rows(&[vec![0], vec![1]]));
        assert_eq!(res, Matrix::from_rows(&[vec![1, 2]]));
        assert_eq!(res.mul(&tr), Matrix::scalar(1, 2));
        assert!(a.evaluate(&GSet::empty(g)).group.is_trivial());
    }

    #[test]
    fn constant_z_of_c2() {
        let g = c2();
        let z = MackeyFunctor::constant_z(g.clone());
        let pi = GMap::to_point(&GSet::orbit(g.clone(), 0));
        assert_eq!(z.covariant_map(&pi).matrix, Matrix::scalar(1, 2));
        assert_eq!(z.contravariant_map(&pi).matrix, Matrix::scalar(1, 1));
        let id = GMap::identity(&GSet::orbit(g, 0));
        assert_eq!(z.covariant_map(&id).matrix, Matrix::identity(1));
    }

    #[test]
    fn fixed_point_examples() {
        let g = c2();
        let top = MackeyFunctor::fixed_point(g.clone(), 1, WeylModule::integers(g.class(1).weyl.clone())).unwrap();
        assert_eq!(top.canonical_values(), vec![Canonical::zero(), Canonical::free(1)]);
        let reg = MackeyFunctor::fixed_point(g.clone(), 0, WeylModule::regular(g.class(0).weyl.clone())).unwrap();
        assert_eq!(reg.canonical_values(), vec![Canonical::free(2), Canonical::free(1)]);
    }

    #[test]
    fn spec_roundtrip() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let a = MackeyFunctor::burnside(g.clone());
        let spec = a.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back = MackeyFunctor::from_spec(g, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_spec(), spec);
    }
}
