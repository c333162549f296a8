use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builder::{Builder, SimplexRef};
use super::{Based, SimplicialGSet};
use crate::error::{bail, Error, Result};
use crate::grp::FiniteGroup;

/// Truncation depth from `EQMACK_DEPTH`, default 4.
pub fn default_depth() -> usize {
    std::env::var("EQMACK_DEPTH").ok().and_then(|s| s.parse().ok()).unwrap_or(4)
}

/// Registry of representations with explicit sphere models.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Representation {
    Trivial(usize),
    Sign,
    Rotation(usize, usize),
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Trivial(n) => write!(f, "trivial:{n}"),
            Representation::Sign => write!(f, "sign"),
            Representation::Rotation(n, k) => write!(f, "rot:{n}:{k}"),
        }
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| Error::Config(format!("bad number '{x}' in '{s}'")));
        match parts.as_slice() {
            ["trivial", n] => Ok(Representation::Trivial(num(n)?)),
            ["sign"] | ["sigma"] => Ok(Representation::Sign),
            ["rot", n, k] => Ok(Representation::Rotation(num(n)?, num(k)?)),
            _ => bail!(Config, "unknown representation '{s}' (trivial:n, sign, rot:n:k)"),
        }
    }
}

impl From<Representation> for String {
    fn from(r: Representation) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Representation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl Representation {
    /// Real dimension.
    pub fn dim(&self) -> usize {
        match self {
            Representation::Trivial(n) => *n,
            Representation::Sign => 1,
            Representation::Rotation(..) => 2,
        }
    }

    pub fn sphere(&self, group: &Arc<FiniteGroup>, depth: usize) -> Result<Based> {
        match *self {
            Representation::Trivial(n) => trivial_sphere(group, n, depth),
            Representation::Sign => sign_sphere(group, depth),
            Representation::Rotation(n, k) => rotation_sphere(group, n, k, depth),
        }
    }

    /// `Σ^V X = S^V ∧ X`.
    pub fn suspend(&self, x: &Based) -> Result<Based> {
        Ok(self.sphere(x.group(), x.depth())?.smash(x))
    }
}

fn trivial_sphere(group: &Arc<FiniteGroup>, n: usize, depth: usize) -> Result<Based> {
    let mut b = Builder::new(group.clone());
    b.add_fixed(0, vec![]);
    if n == 0 {
        b.add_fixed(0, vec![]);
    } else {
        b.add_fixed(n, (0..=n).map(|_| SimplexRef::vertex_at(0, n - 1)).collect());
    }
    b.build_based(depth, 0)
}

/// The unique subgroup of index two.
fn index_two_subgroup(group: &FiniteGroup) -> Result<Vec<usize>> {
    let subs: Vec<&Vec<usize>> = group.all_subgroups().iter().filter(|s| 2 * s.len() == group.order()).collect();
    match subs.as_slice() {
        [n] => Ok((*n).clone()),
        [] => bail!(Config, "sign representation needs a subgroup of index 2 in {}", group.name()),
        _ => bail!(Config, "sign representation is ambiguous for {}: several index-2 subgroups", group.name()),
    }
}

/// Two fixed vertices `s` (index 1) and basepoint `n` (index 0) joined by
/// two edges swapped by the elements outside the index-two subgroup.
fn sign_sphere(group: &Arc<FiniteGroup>, depth: usize) -> Result<Based> {
    let n = index_two_subgroup(group)?;
    let mut b = Builder::new(group.clone());
    b.add_fixed(0, vec![]);
    b.add_fixed(0, vec![]);
    let perm: Vec<Vec<usize>> = group
        .elements()
        .map(|g| if n.binary_search(&g).is_ok() { vec![0, 1] } else { vec![1, 0] })
        .collect();
    let edge = vec![SimplexRef::nd(0, 0), SimplexRef::nd(0, 1)];
    b.add_family(1, vec![edge.clone(), edge], &perm);
    b.build_based(depth, 0)
}

/// Unreduced suspension of the `n`-gon on which a generator rotates by `k`
/// steps, based at the first cone point.
fn rotation_sphere(group: &Arc<FiniteGroup>, n: usize, k: usize, depth: usize) -> Result<Based> {
    if n < 2 || group.order() != n || !group.is_cyclic() {
        bail!(Config, "rot:{n}:{k} needs the cyclic group of order {n}, got {}", group.name());
    }
    let gen = group
        .elements()
        .find(|&a| group.element_order(a) == n)
        .expect("cyclic group has a generator");
    // exponent of each element with respect to the generator
    let mut exp = vec![0; n];
    let mut x = group.id();
    for e in 0..n {
        exp[x] = e;
        x = group.mul(x, gen);
    }
    let perm: Vec<Vec<usize>> = group.elements().map(|a| (0..n).map(|j| (j + exp[a] * k) % n).collect()).collect();
    let cone_perm: Vec<Vec<usize>> = vec![vec![0]; group.order()];
    let mut b = Builder::new(group.clone());
    let north = b.add_family(0, vec![vec![]], &cone_perm);
    let south = b.add_family(0, vec![vec![]], &cone_perm);
    let v0 = b.add_family(0, vec![vec![]; n], &perm);
    let edges: Vec<Vec<SimplexRef>> =
        (0..n).map(|j| vec![SimplexRef::nd(0, v0 + (j + 1) % n), SimplexRef::nd(0, v0 + j)]).collect();
    let e0 = b.add_family(1, edges, &perm);
    for apex in [north, south] {
        // vertex cones v_j * c: d_0 = c, d_1 = v_j
        let cones: Vec<Vec<SimplexRef>> =
            (0..n).map(|j| vec![SimplexRef::nd(0, apex), SimplexRef::nd(0, v0 + j)]).collect();
        let c1 = b.add_family(1, cones, &perm);
        // edge cones e_j * c: d_0 = v_{j+1} * c, d_1 = v_j * c, d_2 = e_j
        let tris: Vec<Vec<SimplexRef>> = (0..n)
            .map(|j| vec![SimplexRef::nd(1, c1 + (j + 1) % n), SimplexRef::nd(1, c1 + j), SimplexRef::nd(1, e0 + j)])
            .collect();
        b.add_family(2, tris, &perm);
    }
    b.build_based(depth, north)
}

/// The cone on an orbit `G/H`: apex (vertex 0), the orbit's vertices, and
/// one edge from each of them to the apex. Returned with the levelwise
/// simplices of the orbit itself.
pub fn orbit_cone(group: &Arc<FiniteGroup>, class_id: usize, depth: usize) -> Result<(SimplicialGSet, Vec<Vec<usize>>)> {
    let cs = group.coset_space(class_id);
    let perm: Vec<Vec<usize>> = group.elements().map(|g| (0..cs.len()).map(|c| cs.index_of[group.mul(g, cs.reps[c])]).collect()).collect();
    let mut b = Builder::new(group.clone());
    b.add_fixed(0, vec![]);
    let v = b.add_family(0, vec![vec![]; cs.len()], &perm);
    let edges = (0..cs.len()).map(|c| vec![SimplexRef::nd(0, 0), SimplexRef::nd(0, v + c)]).collect();
    b.add_family(1, edges, &perm);
    let x = b.build(depth)?;
    let seeds: Vec<(usize, usize)> = (0..cs.len()).map(|c| (0, v + c)).collect();
    let sub = x.closure(&seeds);
    Ok((x, sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Canonical;

    #[test]
    fn parse_and_display() {
        for s in ["trivial:0", "sign", "rot:3:1"] {
            assert_eq!(s.parse::<Representation>().unwrap().to_string(), s);
        }
        assert!("spin".parse::<Representation>().is_err());
    }

    #[test]
    fn underlying_homology_of_spheres() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let s0 = Representation::Trivial(0).sphere(&c2, 3).unwrap();
        assert_eq!(s0.reduced_homology()[0], Canonical::free(1));
        let sig = Representation::Sign.sphere(&c2, 3).unwrap();
        assert_eq!(sig.reduced_homology(), vec![Canonical::zero(), Canonical::free(1), Canonical::zero()]);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let rot = Representation::Rotation(3, 1).sphere(&c3, 4).unwrap();
        let h = rot.reduced_homology();
        assert_eq!(h[2], Canonical::free(1));
        assert!(h[0].is_zero() && h[1].is_zero() && h[3].is_zero());
        let t2 = Representation::Trivial(2).sphere(&c2, 4).unwrap();
        assert_eq!(t2.reduced_homology()[2], Canonical::free(1));
    }

    #[test]
    fn mismatched_groups() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        assert!(matches!(Representation::Sign.sphere(&c3, 2), Err(Error::Config(_))));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        assert!(matches!(Representation::Rotation(3, 1).sphere(&c2, 2), Err(Error::Config(_))));
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert!(Representation::Sign.sphere(&s3, 2).is_ok());
    }

    #[test]
    fn sign_fixed_points() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let sig = Representation::Sign.sphere(&c2, 3).unwrap();
        let fixed = sig.fixed_point_system(1);
        assert_eq!(fixed.space.nondegenerate(0).len(), 2);
        assert!(fixed.space.nondegenerate(1).is_empty());
        let under = sig.fixed_point_system(0);
        assert_eq!(under.reduced_homology()[1], Canonical::free(1));
    }
}
