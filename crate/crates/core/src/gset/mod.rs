//! Finite G-sets, equivariant maps, orbits, fixed points and the
//! induction / fixed-point adjunction.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
pub use crate::grp::CosetSpace;
use crate::grp::FiniteGroup;

#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    /// `action[g][x] = g·x`
    action: Vec<Vec<usize>>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.action == other.action && *self.group == *other.group
    }
}

impl Eq for GSet {}

/// One orbit of a decomposition, identified with `G/H` for the class
/// representative `H` via `gH ↦ g·anchor`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub anchor: usize,
    pub class_id: usize,
    /// Conjugation witness `g` with `g·Stab(points[0])·g⁻¹ = H`.
    pub witness: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    /// Orbit index of each point.
    pub orbit_of: Vec<usize>,
    /// Coset index in `G/H` of each point.
    pub coset_of: Vec<usize>,
}

impl OrbitDecomposition {
    /// Point of orbit `o` corresponding to coset `c` of `G/H`.
    pub fn point(&self, set: &GSet, o: usize, c: usize) -> usize {
        let orbit = &self.orbits[o];
        set.act(set.group.coset_space(orbit.class_id).reps[c], orbit.anchor)
    }
}

/// JSON description of a G-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetSpec {
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, size: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            bail!(Validation, "action has {} rows for a group of order {}", action.len(), group.order());
        }
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                bail!(Validation, "action[{g}] has length {}, expected {size}", row.len());
            }
            if row.iter().any(|&x| x >= size) {
                bail!(Validation, "action[{g}] leaves the set");
            }
        }
        if (0..size).any(|x| action[group.id()][x] != x) {
            bail!(Validation, "identity does not act trivially");
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if (0..size).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    bail!(Validation, "action is not a homomorphism at ({a}, {b})");
                }
            }
        }
        Ok(GSet { group, size, action })
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &GSetSpec) -> Result<Self> {
        Self::new(group, spec.size, spec.action.clone())
    }

    pub fn to_spec(&self) -> GSetSpec {
        GSetSpec { size: self.size, action: self.action.clone() }
    }

    /// Trusted constructor for actions built by equivariant operations.
    pub(crate) fn from_action(group: Arc<FiniteGroup>, size: usize, action: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(action.len(), group.order());
        GSet { group, size, action }
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GSet { group, size: 0, action: vec![vec![]; n] }
    }

    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let n = group.order();
        GSet { group, size, action: vec![(0..size).collect(); n] }
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, 1)
    }

    /// `G/H` for a class representative, points indexed as in [`CosetSpace`].
    pub fn orbit(group: Arc<FiniteGroup>, class_id: usize) -> Self {
        let cs = group.coset_space(class_id).clone();
        Self::cosets(group, &cs)
    }

    pub fn cosets(group: Arc<FiniteGroup>, cs: &CosetSpace) -> Self {
        let action = group
            .elements()
            .map(|g| cs.reps.iter().map(|&r| cs.index_of[group.mul(g, r)]).collect())
            .collect();
        GSet { size: cs.len(), action, group }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn same_group(&self, other: &GSet) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    pub fn is_fixed_by(&self, x: usize, h: &[usize]) -> bool {
        h.iter().all(|&g| self.act(g, x) == x)
    }

    pub fn orbit_of_point(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    pub fn orbit_decompose(&self) -> OrbitDecomposition {
        let mut orbit_of = vec![usize::MAX; self.size];
        let mut coset_of = vec![usize::MAX; self.size];
        let mut orbits = Vec::new();
        for x in 0..self.size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let points = self.orbit_of_point(x);
            let (class_id, witness) = self.group.classify(&self.stabilizer(x));
            let rep = &self.group.class(class_id).elements;
            let anchor = *points
                .iter()
                .find(|&&p| self.stabilizer(p) == *rep)
                .expect("every conjugate of a stabilizer occurs in the orbit");
            let cs = self.group.coset_space(class_id);
            for (c, &r) in cs.reps.iter().enumerate() {
                let p = self.act(r, anchor);
                orbit_of[p] = orbits.len();
                coset_of[p] = c;
            }
            orbits.push(Orbit { points, anchor, class_id, witness });
        }
        OrbitDecomposition { orbits, orbit_of, coset_of }
    }

    /// Points fixed by a subgroup.
    pub fn fixed_points_of(&self, h: &[usize]) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_fixed_by(x, h)).collect()
    }

    /// `S^H` for a class representative `H`, with its Weyl group action,
    /// together with the inclusion into `S`.
    pub fn fixed_points(&self, class_id: usize) -> (GSet, Vec<usize>) {
        let rec = self.group.class(class_id);
        let pts = self.fixed_points_of(&rec.elements);
        let pos: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let action = rec
            .weyl_reps
            .iter()
            .map(|&n| pts.iter().map(|&p| pos[&self.act(n, p)]).collect())
            .collect();
        (GSet::from_action(rec.weyl.clone(), pts.len(), action), pts)
    }

    /// `S × T` with `(s, t)` at index `s·|T| + t`.
    pub fn product(&self, other: &GSet) -> GSet {
        let m = other.size;
        let action = self
            .group
            .elements()
            .map(|g| {
                let mut row = Vec::with_capacity(self.size * m);
                for s in 0..self.size {
                    for t in 0..m {
                        row.push(self.act(g, s) * m + other.act(g, t));
                    }
                }
                row
            })
            .collect();
        GSet::from_action(self.group.clone(), self.size * m, action)
    }

    /// Disjoint union; the summand `i` occupies the returned offset range.
    pub fn coproduct(parts: &[&GSet]) -> (GSet, Vec<usize>) {
        let group = parts[0].group.clone();
        let mut offsets = Vec::new();
        let mut size = 0;
        for p in parts {
            offsets.push(size);
            size += p.size;
        }
        let action = group
            .elements()
            .map(|g| {
                parts
                    .iter()
                    .zip(&offsets)
                    .flat_map(|(p, &o)| (0..p.size).map(move |x| o + p.act(g, x)))
                    .collect()
            })
            .collect();
        (GSet::from_action(group, size, action), offsets)
    }

    /// Sub-G-set on an invariant subset, listed in increasing order.
    pub fn restrict_to(&self, points: &[usize]) -> Result<GSet> {
        let pos: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut action = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let mut row = Vec::with_capacity(points.len());
            for &p in points {
                match pos.get(&self.act(g, p)) {
                    Some(&i) => row.push(i),
                    None => bail!(Validation, "subset is not G-invariant at point {p}"),
                }
            }
            action.push(row);
        }
        Ok(GSet::from_action(self.group.clone(), points.len(), action))
    }
}

/// Equivariant map given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub values: Vec<usize>,
}

pub fn is_equivariant(s: &GSet, t: &GSet, values: &[usize]) -> bool {
    values.len() == s.size()
        && values.iter().all(|&v| v < t.size())
        && s.group().elements().all(|g| (0..s.size()).all(|x| values[s.act(g, x)] == t.act(g, values[x])))
}

impl GMap {
    pub fn new(source: GSet, target: GSet, values: Vec<usize>) -> Result<Self> {
        if !source.same_group(&target) {
            bail!(Config, "map between G-sets over different groups");
        }
        if !is_equivariant(&source, &target, &values) {
            bail!(Validation, "map is not equivariant");
        }
        Ok(GMap { source, target, values })
    }

    pub fn identity(s: &GSet) -> Self {
        GMap { source: s.clone(), target: s.clone(), values: (0..s.size()).collect() }
    }

    pub fn to_point(s: &GSet) -> Self {
        GMap { source: s.clone(), target: GSet::point(s.group().clone()), values: vec![0; s.size()] }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &GMap) -> GMap {
        let values = first.values.iter().map(|&x| self.values[x]).collect();
        GMap { source: first.source.clone(), target: self.target.clone(), values }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }
}

/// Pullback `A = {(b, c) : h(b) = k(c)}` in lexicographic order.
pub fn pullback(h: &GMap, k: &GMap) -> (GSet, GMap, GMap) {
    let (pts, action) = pullback_tables(&h.source, &k.source, &h.values, &k.values);
    let a = GSet::from_action(h.source.group().clone(), pts.len(), action);
    let f = GMap { source: a.clone(), target: h.source.clone(), values: pts.iter().map(|p| p.0).collect() };
    let g = GMap { source: a.clone(), target: k.source.clone(), values: pts.iter().map(|p| p.1).collect() };
    (a, f, g)
}

/// Points and action of a pullback, from raw tables.
pub fn pullback_tables(b: &GSet, c: &GSet, h: &[usize], k: &[usize]) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let mut pts = Vec::new();
    for x in 0..b.size() {
        for y in 0..c.size() {
            if h[x] == k[y] {
                pts.push((x, y));
            }
        }
    }
    let pos: BTreeMap<(usize, usize), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let action = b
        .group()
        .elements()
        .map(|g| pts.iter().map(|&(x, y)| pos[&(b.act(g, x), c.act(g, y))]).collect())
        .collect();
    (pts, action)
}

/// Every equivariant map `S → T`, in lexicographic order of anchor images.
pub fn enumerate_gmaps(s: &GSet, t: &GSet) -> Vec<Vec<usize>> {
    let dec = s.orbit_decompose();
    let choices: Vec<Vec<usize>> = dec
        .orbits
        .iter()
        .map(|o| {
            let stab = s.stabilizer(o.anchor);
            (0..t.size()).filter(|&y| t.is_fixed_by(y, &stab)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let mut values = vec![0; s.size()];
        for (o, orbit) in dec.orbits.iter().enumerate() {
            let y = choices[o][pick[o]];
            for g in s.group().elements() {
                values[s.act(g, orbit.anchor)] = t.act(g, y);
            }
        }
        out.push(values);
        let mut i = choices.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// `G/H ×_{WH} Y` with unit and counit data.
#[derive(Clone, Debug)]
pub struct Induced {
    pub set: GSet,
    /// Class of each pair `(coset, y)`, pairs indexed `coset·|Y| + y`.
    pub class_of_pair: Vec<usize>,
    /// `η(y) = [(eH, y)]`, a point of `set` fixed by `H`.
    pub unit: Vec<usize>,
}

/// Balanced product `G/H ×_{WH} Y` for a Weyl-set `Y` of the class `H`.
pub fn induce_from_weyl(group: &Arc<FiniteGroup>, class_id: usize, y: &GSet) -> Induced {
    let rec = group.class(class_id);
    let cs = group.coset_space(class_id);
    let m = y.size();
    let n_pairs = cs.len() * m;
    let mut parent: Vec<usize> = (0..n_pairs).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for (c, &g) in cs.reps.iter().enumerate() {
        for (w, &n) in rec.weyl_reps.iter().enumerate() {
            let cn = cs.index_of[group.mul(g, n)];
            for yy in 0..m {
                let a = find(&mut parent, cn * m + yy);
                let b = find(&mut parent, c * m + y.act(w, yy));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut class_of_pair = vec![0; n_pairs];
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    for p in 0..n_pairs {
        let r = find(&mut parent, p);
        let next = class_index.len();
        class_of_pair[p] = *class_index.entry(r).or_insert(next);
    }
    let size = class_index.len();
    let mut rep_pair = vec![usize::MAX; size];
    for p in (0..n_pairs).rev() {
        rep_pair[class_of_pair[p]] = p;
    }
    let action = group
        .elements()
        .map(|g| {
            rep_pair
                .iter()
                .map(|&p| {
                    let (c, yy) = (p / m, p % m);
                    class_of_pair[cs.index_of[group.mul(g, cs.reps[c])] * m + yy]
                })
                .collect()
        })
        .collect();
    let set = GSet::from_action(group.clone(), size, action);
    let unit = (0..m).map(|yy| class_of_pair[yy]).collect();
    Induced { set, class_of_pair, unit }
}

/// Counit `L(X^H) → X`, `[(gH, x)] ↦ g·x`.
pub fn counit(group: &Arc<FiniteGroup>, class_id: usize, x: &GSet) -> (Induced, Vec<usize>) {
    let (fixed, incl) = x.fixed_points(class_id);
    let ind = induce_from_weyl(group, class_id, &fixed);
    let cs = group.coset_space(class_id);
    let m = fixed.size();
    let mut eps = vec![usize::MAX; ind.set.size()];
    for c in 0..cs.len() {
        for yy in 0..m {
            eps[ind.class_of_pair[c * m + yy]] = x.act(cs.reps[c], incl[yy]);
        }
    }
    (ind, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn decompositions() {
        let g = c2();
        assert!(GSet::empty(g.clone()).orbit_decompose().orbits.is_empty());
        let reg = GSet::orbit(g.clone(), 0);
        let d = reg.orbit_decompose();
        assert_eq!(d.orbits.len(), 1);
        assert_eq!(d.orbits[0].class_id, 0);
        let s = GSet::new(g.clone(), 3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let d = s.orbit_decompose();
        assert_eq!(d.orbits.iter().map(|o| (o.points.clone(), o.class_id)).collect::<Vec<_>>(), vec![(vec![0, 1], 0), (vec![2], 1)]);
    }

    #[test]
    fn anchors_follow_class_representatives() {
        let g = Arc::new(FiniteGroup::symmetric3());
        for cid in 0..g.class_count() {
            let o = GSet::orbit(g.clone(), cid);
            let d = o.orbit_decompose();
            assert_eq!(d.orbits[0].anchor, 0);
            assert_eq!(d.coset_of, (0..o.size()).collect::<Vec<_>>());
        }
        // a twisted copy of S3/C2: relabel points by a permutation
        let o = GSet::orbit(g.clone(), 1);
        let perm = [2, 0, 1];
        let mut action = vec![vec![0; 3]; 6];
        for a in g.elements() {
            for x in 0..3 {
                action[a][perm[x]] = perm[o.act(a, x)];
            }
        }
        let t = GSet::new(g.clone(), 3, action).unwrap();
        let d = t.orbit_decompose();
        let anchor = d.orbits[0].anchor;
        assert_eq!(t.stabilizer(anchor), g.class(1).elements);
        for x in 0..3 {
            assert_eq!(d.point(&t, 0, d.coset_of[x]), x);
        }
    }

    #[test]
    fn fixed_point_examples() {
        let g = c2();
        assert_eq!(GSet::orbit(g.clone(), 0).fixed_points(1).0.size(), 0);
        let (s, _) = GSet::coproduct(&[&GSet::orbit(g.clone(), 0), &GSet::orbit(g.clone(), 1)]);
        assert_eq!(s.fixed_points(1).0.size(), 1);
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let (f, _) = GSet::orbit(s3.clone(), 1).fixed_points(1);
        assert_eq!(f.size(), 1);
        assert_eq!(f.group().order(), 1);
    }

    #[test]
    fn pullback_examples() {
        let g = c2();
        let free = GSet::orbit(g.clone(), 0);
        let pi = GMap::to_point(&free);
        let (a, f, k) = pullback(&pi, &pi);
        assert_eq!(a.size(), 4);
        let d = a.orbit_decompose();
        assert_eq!(d.orbits.len(), 2);
        assert!(d.orbits.iter().all(|o| o.class_id == 0));
        assert!(is_equivariant(&a, &free, &f.values) && is_equivariant(&a, &free, &k.values));
        let id = GMap::identity(&free);
        assert_eq!(pullback(&id, &id).0.size(), 2);
    }

    #[test]
    fn map_counts() {
        let g = c2();
        let free = GSet::orbit(g.clone(), 0);
        let pt = GSet::orbit(g.clone(), 1);
        assert_eq!(enumerate_gmaps(&free, &free).len(), 2);
        assert!(enumerate_gmaps(&pt, &free).is_empty());
        assert_eq!(enumerate_gmaps(&free, &pt).len(), 1);
    }

    #[test]
    fn induction_examples() {
        let g = c2();
        let ind = induce_from_weyl(&g, 1, &GSet::point(g.class(1).weyl.clone()));
        assert_eq!(ind.set.size(), 1);
        let w = g.class(0).weyl.clone();
        let y = GSet::new(w.clone(), 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let ind = induce_from_weyl(&g, 0, &y);
        assert_eq!(ind.set.size(), 2);
        assert_eq!(ind.set.orbit_decompose().orbits[0].class_id, 0);
    }
}
