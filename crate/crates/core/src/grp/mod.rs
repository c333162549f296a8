//! Finite groups given by multiplication tables, their subgroups up to
//! conjugacy, normalizers and Weyl groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    id: usize,
    inv: Vec<usize>,
    classes: OnceLock<Vec<SubgroupRecord>>,
    cosets: OnceLock<Vec<CosetSpace>>,
    classify_cache: OnceLock<BTreeMap<Vec<usize>, (usize, usize)>>,
    subgroups: OnceLock<Vec<Vec<usize>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

/// Left cosets `gH` of a subgroup: coset 0 is `H`, the rest ordered by
/// their smallest element, which also represents them.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub subgroup: Vec<usize>,
    pub reps: Vec<usize>,
    /// Coset index of each group element.
    pub index_of: Vec<usize>,
}

impl CosetSpace {
    pub fn new(g: &FiniteGroup, h: &[usize]) -> Self {
        let mut reps = vec![g.id()];
        let mut index_of = vec![usize::MAX; g.order()];
        for &x in h {
            index_of[x] = 0;
        }
        for a in g.elements() {
            if index_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for &x in h {
                index_of[g.mul(a, x)] = idx;
            }
        }
        CosetSpace { subgroup: h.to_vec(), reps, index_of }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// One conjugacy class of subgroups, represented by its lexicographically
/// smallest member.
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub class_id: usize,
    pub elements: Vec<usize>,
    pub normalizer: Vec<usize>,
    pub weyl: Arc<FiniteGroup>,
    /// Representative in the normalizer of each Weyl group element.
    pub weyl_reps: Vec<usize>,
    pub label: String,
}

impl SubgroupRecord {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// JSON description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table {
        #[serde(default)]
        name: Option<String>,
        order: usize,
        mul: Vec<Vec<usize>>,
    },
    Perms {
        #[serde(default)]
        name: Option<String>,
        perm_generators: Vec<Vec<usize>>,
    },
    Builtin(String),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { name, order, mul } => {
                if mul.len() != *order {
                    bail!(Validation, "group: order {order} but table has {} rows", mul.len());
                }
                FiniteGroup::from_table(name.as_deref().unwrap_or("G"), mul.clone())
            }
            GroupSpec::Perms { name, perm_generators } => {
                FiniteGroup::from_perm_generators(name.as_deref().unwrap_or("G"), perm_generators)
            }
            GroupSpec::Builtin(n) => FiniteGroup::builtin(n),
        }
    }
}

impl FiniteGroup {
    pub fn from_table(name: &str, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            bail!(Validation, "group table is empty");
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                bail!(Validation, "mul[{a}] has length {}, expected {n}", row.len());
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                bail!(Validation, "mul[{a}] contains {x}, outside 0..{n}");
            }
        }
        let Some(id) = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a)) else {
            bail!(Validation, "group table has no identity");
        };
        let mut inv = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == id && mul[b][a] == id) {
                Some(b) => inv[a] = b,
                None => bail!(Validation, "element {a} has no inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        bail!(Validation, "multiplication is not associative at ({a}, {b}, {c})");
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), mul, id, inv, classes: OnceLock::new(), cosets: OnceLock::new(), classify_cache: OnceLock::new(), subgroups: OnceLock::new() })
    }

    /// Closure of the given permutations; elements are the permutations in
    /// lexicographic order, `(p q)(i) = p(q(i))`.
    pub fn from_perm_generators(name: &str, gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.len());
        for (i, g) in gens.iter().enumerate() {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != degree || seen != (0..degree).collect::<Vec<_>>() {
                bail!(Validation, "perm_generators[{i}] is not a permutation of 0..{degree}");
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::from([identity]);
        let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
                if all.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = all.into_iter().collect();
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let mul = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&(0..degree).map(|i| p[q[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(name, mul)
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("C{n}"), mul).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::from_table("e", vec![vec![0]]).expect("trivial group")
    }

    pub fn symmetric3() -> Self {
        Self::from_perm_generators("S3", &[vec![1, 0, 2], vec![0, 2, 1]]).expect("S3 generators")
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "e" | "C1" | "trivial" => Ok(Self::trivial()),
            "S3" => Ok(Self::symmetric3()),
            _ => match name.strip_prefix('C').and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k >= 1 => Ok(Self::cyclic(k)),
                _ => bail!(Config, "unknown group '{name}' (builtins: C1.., S3)"),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `g K g⁻¹`, sorted.
    pub fn conjugate(&self, g: usize, k: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = k.iter().map(|&x| self.conj(g, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order())
    }

    /// Subgroup generated by a set, sorted.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.id]);
        let mut frontier = vec![self.id];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.contains(&self.id) && s.iter().all(|&a| s.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Every subgroup, each sorted, the list sorted by (order, elements).
    pub fn all_subgroups(&self) -> &[Vec<usize>] {
        self.subgroups.get_or_init(|| self.enumerate_subgroups())
    }

    fn enumerate_subgroups(&self) -> Vec<Vec<usize>> {
        let mut subs: BTreeSet<Vec<usize>> = self.elements().map(|a| self.generate(&[a])).collect();
        loop {
            let list: Vec<Vec<usize>> = subs.iter().cloned().collect();
            let mut grew = false;
            for a in &list {
                for b in &list {
                    let mut gens = a.clone();
                    gens.extend_from_slice(b);
                    if subs.insert(self.generate(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = subs.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    pub fn normalizer(&self, h: &[usize]) -> Vec<usize> {
        self.elements().filter(|&g| self.conjugate(g, h) == h).collect()
    }

    /// Weyl group `N(H)/H`; cosets ordered by their smallest element, and
    /// each coset represented by that element.
    fn weyl_group(&self, h: &[usize], normalizer: &[usize], label: &str) -> (FiniteGroup, Vec<usize>) {
        let mut reps: Vec<usize> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.order()];
        for &n in normalizer {
            if coset_of[n] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(n);
            for &x in h {
                coset_of[self.mul(n, x)] = idx;
            }
        }
        let mul = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let w = FiniteGroup::from_table(&format!("W{label}"), mul).expect("quotient of a group is a group");
        (w, reps)
    }

    fn default_label(&self, elements: &[usize], all: &[Vec<usize>]) -> String {
        let k = elements.len();
        if k == 1 {
            return "e".into();
        }
        if k == self.order() {
            return self.name.clone();
        }
        let cyclic = elements.iter().any(|&a| self.element_order(a) == k);
        let same_shape = all
            .iter()
            .filter(|s| s.len() == k && s.iter().any(|&a| self.element_order(a) == k) == cyclic)
            .count();
        if cyclic && same_shape == 1 {
            return format!("C{k}");
        }
        String::new()
    }

    pub fn subgroup_classes(&self) -> &[SubgroupRecord] {
        self.classes.get_or_init(|| {
            let subs = self.all_subgroups();
            let mut reps: Vec<Vec<usize>> = Vec::new();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for s in subs {
                if seen.contains(s) {
                    continue;
                }
                let conjugates: BTreeSet<Vec<usize>> = self.elements().map(|g| self.conjugate(g, s)).collect();
                reps.push(conjugates.iter().next().unwrap().clone());
                seen.extend(conjugates);
            }
            reps.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            let class_reps = reps.clone();
            reps.into_iter()
                .enumerate()
                .map(|(class_id, elements)| {
                    let mut label = self.default_label(&elements, &class_reps);
                    if label.is_empty() {
                        label = format!("H{class_id}");
                    }
                    let normalizer = self.normalizer(&elements);
                    let (weyl, weyl_reps) = self.weyl_group(&elements, &normalizer, &label);
                    SubgroupRecord { class_id, elements, normalizer, weyl: Arc::new(weyl), weyl_reps, label }
                })
                .collect()
        })
    }

    /// Cosets of each class representative.
    pub fn coset_space(&self, class_id: usize) -> &CosetSpace {
        &self.cosets.get_or_init(|| {
            self.subgroup_classes().iter().map(|r| CosetSpace::new(self, &r.elements)).collect()
        })[class_id]
    }

    pub fn class(&self, id: usize) -> &SubgroupRecord {
        &self.subgroup_classes()[id]
    }

    pub fn class_count(&self) -> usize {
        self.subgroup_classes().len()
    }

    /// Class of a subgroup and an element `g` with `g K g⁻¹ = rep`.
    pub fn classify(&self, k: &[usize]) -> (usize, usize) {
        let cache = self.classify_cache.get_or_init(|| {
            let mut map = BTreeMap::new();
            for s in self.all_subgroups() {
                let s = s.clone();
                for rec in self.subgroup_classes() {
                    if rec.order() != s.len() {
                        continue;
                    }
                    if let Some(g) = self.elements().find(|&g| self.conjugate(g, &s) == rec.elements) {
                        map.insert(s.clone(), (rec.class_id, g));
                        break;
                    }
                }
            }
            map
        });
        let mut sorted = k.to_vec();
        sorted.sort_unstable();
        *cache.get(&sorted).unwrap_or_else(|| panic!("not a subgroup: {k:?}"))
    }

    /// Smallest `g` with `g K g⁻¹ ⊆ H`.
    pub fn conjugation_witness(&self, k: &[usize], h: &[usize]) -> Option<usize> {
        let hs: BTreeSet<usize> = h.iter().copied().collect();
        self.elements().find(|&g| k.iter().all(|&x| hs.contains(&self.conj(g, x))))
    }

    /// Weyl group element of the coset `n H` for `n` in the normalizer.
    pub fn weyl_element(&self, rec: &SubgroupRecord, n: usize) -> usize {
        let found = rec.weyl_reps.iter().position(|&r| rec.contains(self.mul(self.inv(r), n)));
        found.expect("element normalizes the subgroup")
    }

    /// Looks up a class by label (`e`, the group name, `C2`, `H3`, ...).
    pub fn find_class(&self, label: &str) -> Result<usize> {
        let classes = self.subgroup_classes();
        if let Some(r) = classes.iter().find(|r| r.label == label) {
            return Ok(r.class_id);
        }
        if let Some(i) = label.strip_prefix('H').and_then(|s| s.parse::<usize>().ok()) {
            if i < classes.len() {
                return Ok(i);
            }
        }
        if label == "1" {
            return Ok(0);
        }
        // alternating subgroup: the unique normal subgroup of index 2
        if label.starts_with('A') {
            let index2: Vec<&SubgroupRecord> =
                classes.iter().filter(|r| 2 * r.order() == self.order()).collect();
            if index2.len() == 1 && label[1..].parse::<usize>().ok() == Some(index2[0].order()) {
                return Ok(index2[0].class_id);
            }
        }
        let known: Vec<&str> = classes.iter().map(|r| r.label.as_str()).collect();
        bail!(Config, "unknown subgroup '{label}' of {} (known: {})", self.name, known.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::trivial();
        let c = g.subgroup_classes();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].weyl.order(), 1);
    }

    #[test]
    fn c2_classes() {
        let g = FiniteGroup::cyclic(2);
        let c = g.subgroup_classes();
        assert_eq!(c.iter().map(|r| r.elements.clone()).collect::<Vec<_>>(), vec![vec![0], vec![0, 1]]);
        assert_eq!(c[0].weyl.order(), 2);
        assert_eq!(c[1].weyl.order(), 1);
        assert_eq!(g.find_class("C2").unwrap(), 1);
        assert_eq!(g.find_class("e").unwrap(), 0);
    }

    #[test]
    fn s3_classes() {
        let g = FiniteGroup::symmetric3();
        let c = g.subgroup_classes();
        assert_eq!(c.iter().map(|r| r.order()).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert_eq!(c[2].weyl.order(), 2);
        assert_eq!(c[1].weyl.order(), 1);
        assert_eq!(g.find_class("A3").unwrap(), g.find_class("C3").unwrap());
        // every subgroup is conjugate to exactly one representative
        for s in g.all_subgroups() {
            let hits = c
                .iter()
                .filter(|r| g.elements().any(|x| g.conjugate(x, s) == r.elements))
                .count();
            assert_eq!(hits, 1);
        }
        assert_eq!(g.all_subgroups().len(), 6);
    }

    #[test]
    fn witnesses() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.conjugation_witness(&[0], &[0, 1]), Some(0));
        let s3 = FiniteGroup::symmetric3();
        let c3 = s3.class(2).elements.clone();
        let t = s3.generate(&[1]);
        assert_eq!(s3.conjugation_witness(&t, &c3), None);
        // the transpositions (0 1), (0 2) as subgroups
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        let a = s3.generate(&[2]);
        let b = s3.generate(&[5]);
        let g = s3.conjugation_witness(&a, &b).unwrap();
        assert_eq!(s3.conjugate(g, &a), b);
        // oracle: conjugating by g as permutations
        let p = &perms[g];
        let conj = |x: &Vec<usize>| -> Vec<usize> {
            let mut pinv = [0; 3];
            for i in 0..3 {
                pinv[p[i]] = i;
            }
            (0..3).map(|i| p[x[pinv[i]]]).collect()
        };
        assert_eq!(conj(&perms[2]), perms[5]);
        // smallest of the two conjugators, the transposition (1 2) and a 3-cycle
        let all: Vec<usize> = s3.elements().filter(|&x| conj_all(&perms, x, 2) == perms[5]).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(g, all[0]);
    }

    fn conj_all(perms: &[Vec<usize>], g: usize, x: usize) -> Vec<usize> {
        let p = &perms[g];
        let mut pinv = vec![0; p.len()];
        for i in 0..p.len() {
            pinv[p[i]] = i;
        }
        (0..p.len()).map(|i| p[perms[x][pinv[i]]]).collect()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![1, 2]]).is_err());
        // a Latin square that is not associative
        let q = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(FiniteGroup::from_table("x", q).is_err());
    }

    #[test]
    fn deterministic_and_spec_roundtrip() {
        let s = GroupSpec::Table { name: Some("C3".into()), order: 3, mul: FiniteGroup::cyclic(3).table().to_vec() };
        let json = serde_json::to_string(&s).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let g = back.build().unwrap();
        assert_eq!(g, FiniteGroup::cyclic(3));
        let p: GroupSpec = serde_json::from_str(r#"{"perm_generators": [[1,0,2],[0,2,1]]}"#).unwrap();
        assert_eq!(p.build().unwrap(), FiniteGroup::symmetric3());
    }

    #[test]
    fn weyl_groups_of_c4_and_s3() {
        let c4 = FiniteGroup::cyclic(4);
        let c = c4.subgroup_classes();
        assert_eq!(c.iter().map(|r| r.weyl.order()).collect::<Vec<_>>(), vec![4, 2, 1]);
        let s3 = FiniteGroup::symmetric3();
        for r in s3.subgroup_classes() {
            assert_eq!(r.weyl.order() * r.order(), r.normalizer.len());
            assert_eq!(r.weyl_reps.len(), r.weyl.order());
        }
    }
}
