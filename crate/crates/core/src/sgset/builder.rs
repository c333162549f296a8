use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Based, SimplicialGSet};
use crate::error::{bail, Result};
use crate::grp::FiniteGroup;
use crate::gset::GSet;

/// A simplex written as `θ^* y` for a nondegenerate `y` of dimension `dim`
/// and a monotone surjection `θ : [n] ↠ [dim]` listed by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
    pub theta: Vec<usize>,
}

impl SimplexRef {
    pub fn nd(dim: usize, index: usize) -> Self {
        SimplexRef { dim, index, theta: (0..=dim).collect() }
    }

    /// Totally degenerate `n`-simplex on a vertex.
    pub fn vertex_at(index: usize, n: usize) -> Self {
        SimplexRef { dim: 0, index, theta: vec![0; n + 1] }
    }

    pub fn level(&self) -> usize {
        self.theta.len() - 1
    }
}

/// Nondegenerate simplices with their faces and the group action on them.
#[derive(Clone, Debug)]
pub struct Builder {
    group: Arc<FiniteGroup>,
    /// `faces[k][j]` lists `d_0 .. d_k` of the `j`-th nondegenerate k-simplex.
    faces: Vec<Vec<Vec<SimplexRef>>>,
    /// `action[k][g][j]`
    action: Vec<Vec<Vec<usize>>>,
}

/// JSON form of a simplicial G-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSpec {
    /// Per dimension: the faces of each nondegenerate simplex.
    pub faces: Vec<Vec<Vec<SimplexRef>>>,
    /// Per dimension: `action[g][j]`.
    pub action: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    pub basepoint: Option<usize>,
}

fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    // nondecreasing sequences of length n+1 starting at 0, ending at k, steps 0/1
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        for step in [1, 0] {
            if last + step <= k {
                cur.push(last + step);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

impl Builder {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        Builder { group, faces: vec![], action: vec![] }
    }

    fn ensure_dim(&mut self, k: usize) {
        while self.faces.len() <= k {
            self.faces.push(vec![]);
            self.action.push(vec![vec![]; self.group.order()]);
        }
    }

    /// Adds one orbit-closed family of nondegenerate k-simplices given the
    /// faces of each member and the permutation each group element induces
    /// on the family; returns the index of the first member.
    pub fn add_family(&mut self, k: usize, faces: Vec<Vec<SimplexRef>>, perm: &[Vec<usize>]) -> usize {
        self.ensure_dim(k);
        let start = self.faces[k].len();
        self.faces[k].extend(faces);
        for (g, p) in perm.iter().enumerate() {
            self.action[k][g].extend(p.iter().map(|&j| start + j));
        }
        start
    }

    /// Adds G-fixed nondegenerate simplices.
    pub fn add_fixed(&mut self, k: usize, faces: Vec<SimplexRef>) -> usize {
        let perm = vec![vec![0]; self.group.order()];
        self.add_family(k, vec![faces], &perm)
    }

    pub fn from_spec(group: Arc<FiniteGroup>, spec: &SimplicialSpec) -> Result<Self> {
        if spec.faces.len() != spec.action.len() {
            bail!(Validation, "faces and action list different numbers of dimensions");
        }
        let mut b = Builder::new(group.clone());
        for (k, (fs, act)) in spec.faces.iter().zip(&spec.action).enumerate() {
            if act.len() != group.order() || act.iter().any(|r| r.len() != fs.len()) {
                bail!(Validation, "action[{k}] must have one row of length {} per group element", fs.len());
            }
            b.ensure_dim(k);
            b.faces[k] = fs.clone();
            b.action[k] = act.clone();
        }
        Ok(b)
    }

    pub fn to_spec(&self, basepoint: Option<usize>) -> SimplicialSpec {
        SimplicialSpec { faces: self.faces.clone(), action: self.action.clone(), basepoint }
    }

    fn check_ref(&self, r: &SimplexRef, level: usize, ctx: &str) -> Result<()> {
        let ok = r.level() == level
            && r.dim < self.faces.len()
            && r.index < self.faces[r.dim].len()
            && r.theta[0] == 0
            && *r.theta.last().unwrap() == r.dim
            && r.theta.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
        if !ok {
            bail!(Validation, "{ctx}: malformed simplex reference {r:?}");
        }
        Ok(())
    }

    /// Generates all simplices through `depth`.
    pub fn build(&self, depth: usize) -> Result<SimplicialGSet> {
        let g = &self.group;
        for (k, fs) in self.faces.iter().enumerate() {
            for (j, f) in fs.iter().enumerate() {
                let expect = if k == 0 { 0 } else { k + 1 };
                if f.len() != expect {
                    bail!(Validation, "simplex ({k}, {j}) lists {} faces, expected {expect}", f.len());
                }
                for r in f {
                    self.check_ref(r, k - 1, &format!("face of simplex ({k}, {j})"))?;
                }
            }
            for (a, row) in self.action[k].iter().enumerate() {
                if row.iter().any(|&x| x >= fs.len()) {
                    bail!(Validation, "action[{k}][{a}] leaves the simplices");
                }
            }
        }
        let mut keys: Vec<Vec<SimplexRef>> = Vec::new();
        let mut index: Vec<HashMap<SimplexRef, usize>> = Vec::new();
        for n in 0..=depth {
            let mut lv = Vec::new();
            for k in (0..=n.min(self.faces.len().saturating_sub(1))).rev() {
                let surj = surjections(n, k);
                for j in 0..self.faces[k].len() {
                    for t in &surj {
                        lv.push(SimplexRef { dim: k, index: j, theta: t.clone() });
                    }
                }
            }
            index.push(lv.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect());
            keys.push(lv);
        }
        let mut levels = Vec::new();
        for n in 0..=depth {
            let action = g
                .elements()
                .map(|a| {
                    keys[n]
                        .iter()
                        .map(|r| {
                            let moved = SimplexRef { index: self.action[r.dim][a][r.index], ..r.clone() };
                            index[n][&moved]
                        })
                        .collect()
                })
                .collect();
            levels.push(GSet::new(g.clone(), keys[n].len(), action)?);
        }
        let mut faces = vec![vec![]];
        for n in 1..=depth {
            let mut fs = Vec::new();
            for i in 0..=n {
                fs.push(keys[n].iter().map(|r| index[n - 1][&self.face_of(r, i)]).collect());
            }
            faces.push(fs);
        }
        let mut degens = Vec::new();
        for n in 0..=depth {
            let mut ss = Vec::new();
            if n < depth {
                for i in 0..=n {
                    ss.push(
                        keys[n]
                            .iter()
                            .map(|r| {
                                let mut theta = r.theta.clone();
                                theta.insert(i, r.theta[i]);
                                index[n + 1][&SimplexRef { theta, ..r.clone() }]
                            })
                            .collect(),
                    );
                }
            }
            degens.push(ss);
        }
        SimplicialGSet::new(g.clone(), levels, faces, degens)
    }

    pub fn build_based(&self, depth: usize, base_vertex: usize) -> Result<Based> {
        let x = self.build(depth)?;
        let n = self.faces.len();
        if n == 0 || base_vertex >= self.faces[0].len() {
            bail!(Validation, "basepoint {base_vertex} is not a vertex");
        }
        Based::new(x, base_vertex)
    }

    /// `d_i (θ^* y)`.
    fn face_of(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let mut t = r.theta.clone();
        let v = t.remove(i);
        if t.contains(&v) {
            return SimplexRef { theta: t, ..r.clone() };
        }
        // θ δ_i misses v: factor as δ_v θ', then pull back d_v y along θ'
        let theta_prime: Vec<usize> = t.iter().map(|&x| if x > v { x - 1 } else { x }).collect();
        let f = &self.faces[r.dim][r.index][v];
        SimplexRef { dim: f.dim, index: f.index, theta: theta_prime.iter().map(|&x| f.theta[x]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        // C(n, k) monotone surjections [n] ↠ [k]
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn minimal_circle() {
        let g = Arc::new(FiniteGroup::trivial());
        let mut b = Builder::new(g);
        b.add_fixed(0, vec![]);
        b.add_fixed(1, vec![SimplexRef::nd(0, 0), SimplexRef::nd(0, 0)]);
        let x = b.build(4).unwrap();
        assert_eq!((0..=4).map(|n| x.level(n).size()).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        let h = x.underlying_homology(None);
        assert_eq!(h[0].to_string(), "Z");
        assert_eq!(h[1].to_string(), "Z");
        assert!(h[2].is_zero() && h[3].is_zero());
    }

    #[test]
    fn triangle_boundary() {
        let g = Arc::new(FiniteGroup::trivial());
        let mut b = Builder::new(g);
        for _ in 0..3 {
            b.add_fixed(0, vec![]);
        }
        for (a, c) in [(0, 1), (1, 2), (0, 2)] {
            b.add_fixed(1, vec![SimplexRef::nd(0, c), SimplexRef::nd(0, a)]);
        }
        let x = b.build(3).unwrap();
        let h = x.underlying_homology(None);
        assert_eq!(h[1].to_string(), "Z");
        assert_eq!(x.nondegenerate(1).len(), 3);
    }

    #[test]
    fn rejects_bad_faces() {
        let g = Arc::new(FiniteGroup::trivial());
        let mut b = Builder::new(g);
        b.add_fixed(0, vec![]);
        b.add_fixed(1, vec![SimplexRef::nd(0, 0), SimplexRef::nd(0, 3)]);
        assert!(b.build(2).is_err());
    }
}
