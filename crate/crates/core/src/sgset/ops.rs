use std::collections::HashMap;
use std::sync::Arc;

use super::{Based, SimplicialGSet};
use crate::error::{bail, Result};
use crate::gset::{is_equivariant, GSet};

/// Levelwise equivariant map commuting with faces and degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(x: &SimplicialGSet, y: &SimplicialGSet, levels: Vec<Vec<usize>>) -> Result<Self> {
        let d = x.depth().min(y.depth());
        if levels.len() < d + 1 {
            bail!(Validation, "map needs {} levels", d + 1);
        }
        for n in 0..=d {
            if !is_equivariant(x.level(n), y.level(n), &levels[n]) {
                bail!(Validation, "level {n} of the map is not equivariant");
            }
            for s in 0..x.level(n).size() {
                if n > 0 && (0..=n).any(|i| y.face(n, i, levels[n][s]) != levels[n - 1][x.face(n, i, s)]) {
                    bail!(Validation, "map does not commute with faces on level {n}");
                }
                if n < d && (0..=n).any(|i| y.degen(n, i, levels[n][s]) != levels[n + 1][x.degen(n, i, s)]) {
                    bail!(Validation, "map does not commute with degeneracies on level {n}");
                }
            }
        }
        Ok(SimplicialMap { levels: levels[..=d].to_vec() })
    }

    pub fn identity(x: &SimplicialGSet) -> Self {
        SimplicialMap { levels: (0..=x.depth()).map(|n| (0..x.level(n).size()).collect()).collect() }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        let d = self.levels.len().min(first.levels.len());
        SimplicialMap { levels: (0..d).map(|n| first.levels[n].iter().map(|&x| self.levels[n][x]).collect()).collect() }
    }
}

/// Generic construction from per-level point lists and a rule for the
/// structure maps on points.
fn from_points<P: Clone + Eq + std::hash::Hash>(
    group: &Arc<crate::grp::FiniteGroup>,
    points: Vec<Vec<P>>,
    act: impl Fn(usize, usize, &P) -> P,
    face: impl Fn(usize, usize, &P) -> P,
    degen: impl Fn(usize, usize, &P) -> P,
) -> SimplicialGSet {
    let depth = points.len() - 1;
    let index: Vec<HashMap<P, usize>> =
        points.iter().map(|lv| lv.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()).collect();
    let levels = (0..=depth)
        .map(|n| {
            let action = group
                .elements()
                .map(|g| points[n].iter().map(|p| index[n][&act(n, g, p)]).collect())
                .collect();
            GSet::from_action(group.clone(), points[n].len(), action)
        })
        .collect();
    let faces = (0..=depth)
        .map(|n| {
            if n == 0 {
                return vec![];
            }
            (0..=n).map(|i| points[n].iter().map(|p| index[n - 1][&face(n, i, p)]).collect()).collect()
        })
        .collect();
    let degens = (0..=depth)
        .map(|n| {
            if n == depth {
                return vec![];
            }
            (0..=n).map(|i| points[n].iter().map(|p| index[n + 1][&degen(n, i, p)]).collect()).collect()
        })
        .collect();
    SimplicialGSet::assemble(group.clone(), levels, faces, degens)
}

impl SimplicialGSet {
    pub fn product(&self, other: &SimplicialGSet) -> SimplicialGSet {
        let d = self.depth().min(other.depth());
        let points = (0..=d)
            .map(|n| {
                (0..self.level(n).size())
                    .flat_map(|x| (0..other.level(n).size()).map(move |y| (x, y)))
                    .collect()
            })
            .collect();
        from_points(
            self.group(),
            points,
            |n, g, &(x, y)| (self.level(n).act(g, x), other.level(n).act(g, y)),
            |n, i, &(x, y)| (self.face(n, i, x), other.face(n, i, y)),
            |n, i, &(x, y)| (self.degen(n, i, x), other.degen(n, i, y)),
        )
    }

    /// Levelwise `X^H` for a class representative, over the Weyl group.
    pub fn fixed_point_system(&self, class_id: usize) -> (SimplicialGSet, Vec<Vec<usize>>) {
        let rec = self.group().class(class_id);
        let mut levels = Vec::new();
        let mut incl = Vec::new();
        for n in 0..=self.depth() {
            let (lv, pts) = self.level(n).fixed_points(class_id);
            levels.push(lv);
            incl.push(pts);
        }
        let pos: Vec<HashMap<usize, usize>> =
            incl.iter().map(|p| p.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        let faces = (0..=self.depth())
            .map(|n| {
                if n == 0 {
                    return vec![];
                }
                (0..=n).map(|i| incl[n].iter().map(|&x| pos[n - 1][&self.face(n, i, x)]).collect()).collect()
            })
            .collect();
        let degens = (0..=self.depth())
            .map(|n| {
                if n == self.depth() {
                    return vec![];
                }
                (0..=n).map(|i| incl[n].iter().map(|&x| pos[n + 1][&self.degen(n, i, x)]).collect()).collect()
            })
            .collect();
        (SimplicialGSet::assemble(rec.weyl.clone(), levels, faces, degens), incl)
    }

    /// Smallest sub-simplicial G-set containing the given `(level, simplex)`
    /// pairs, as increasing point lists.
    pub fn closure(&self, seeds: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let d = self.depth();
        let mut inside: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); d + 1];
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((n, x)) = stack.pop() {
            if !inside[n].insert(x) {
                continue;
            }
            for g in self.group().elements() {
                stack.push((n, self.level(n).act(g, x)));
            }
            if n > 0 {
                stack.extend((0..=n).map(|i| (n - 1, self.face(n, i, x))));
            }
            if n < d {
                stack.extend((0..=n).map(|i| (n + 1, self.degen(n, i, x))));
            }
        }
        inside.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// The constant simplicial G-set on a G-set.
    pub fn discrete(set: &GSet, depth: usize) -> SimplicialGSet {
        let levels = vec![set.clone(); depth + 1];
        let id: Vec<usize> = (0..set.size()).collect();
        let faces = (0..=depth).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect();
        let degens = (0..=depth).map(|n| if n == depth { vec![] } else { vec![id.clone(); n + 1] }).collect();
        SimplicialGSet::assemble(set.group().clone(), levels, faces, degens)
    }

    /// `X_+` with the added basepoint at index 0 of every level.
    pub fn plus(&self) -> Based {
        let points = (0..=self.depth())
            .map(|n| std::iter::once(None).chain((0..self.level(n).size()).map(Some)).collect())
            .collect();
        let x = from_points(
            self.group(),
            points,
            |n, g, p: &Option<usize>| p.map(|x| self.level(n).act(g, x)),
            |n, i, p| p.map(|x| self.face(n, i, x)),
            |n, i, p| p.map(|x| self.degen(n, i, x)),
        );
        Based { space: x, base: vec![0; self.depth() + 1] }
    }

    /// Sub-simplicial G-set on the given point lists (increasing).
    pub fn subcomplex(&self, points: &[Vec<usize>]) -> Result<(SimplicialGSet, SimplicialMap)> {
        let d = self.depth();
        if points.len() != d + 1 {
            bail!(Validation, "subcomplex needs {} levels", d + 1);
        }
        let pos: Vec<HashMap<usize, usize>> =
            points.iter().map(|p| p.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        for n in 0..=d {
            self.level(n).restrict_to(&points[n])?;
            for &x in &points[n] {
                if n > 0 && (0..=n).any(|i| !pos[n - 1].contains_key(&self.face(n, i, x))) {
                    bail!(Validation, "subcomplex is not closed under faces on level {n}");
                }
                if n < d && (0..=n).any(|i| !pos[n + 1].contains_key(&self.degen(n, i, x))) {
                    bail!(Validation, "subcomplex is not closed under degeneracies on level {n}");
                }
            }
        }
        let sub = from_points(
            self.group(),
            points.to_vec(),
            |n, g, &x| self.level(n).act(g, x),
            |n, i, &x| self.face(n, i, x),
            |n, i, &x| self.degen(n, i, x),
        );
        let incl = SimplicialMap { levels: points.to_vec() };
        Ok((sub, incl))
    }
}

impl Based {
    /// Levelwise smash product; basepoint at index 0.
    pub fn smash(&self, other: &Based) -> Based {
        let d = self.depth().min(other.depth());
        let (a, b) = (&self.space, &other.space);
        let points: Vec<Vec<Option<(usize, usize)>>> = (0..=d)
            .map(|n| {
                let mut lv = vec![None];
                for x in 0..a.level(n).size() {
                    for y in 0..b.level(n).size() {
                        if x != self.base[n] && y != other.base[n] {
                            lv.push(Some((x, y)));
                        }
                    }
                }
                lv
            })
            .collect();
        let collapse = |n: usize, x: usize, y: usize| {
            if x == self.base[n] || y == other.base[n] {
                None
            } else {
                Some((x, y))
            }
        };
        let x = from_points(
            self.group(),
            points,
            |n, g, p| p.map(|(x, y)| (a.level(n).act(g, x), b.level(n).act(g, y))),
            |n, i, p| p.and_then(|(x, y)| collapse(n - 1, a.face(n, i, x), b.face(n, i, y))),
            |n, i, p| p.and_then(|(x, y)| collapse(n + 1, a.degen(n, i, x), b.degen(n, i, y))),
        );
        Based { space: x, base: vec![0; d + 1] }
    }

    /// Index of `x ∧ y` in `self.smash(other)` on level `n`.
    pub fn smash_index(&self, other: &Based, n: usize, x: usize, y: usize) -> usize {
        if x == self.base[n] || y == other.base[n] {
            return 0;
        }
        let rx = x - usize::from(x > self.base[n]);
        let ry = y - usize::from(y > other.base[n]);
        1 + rx * (other.space.level(n).size() - 1) + ry
    }

    /// Inverse of [`Based::smash_index`] on a non-base simplex.
    pub fn smash_factors(&self, other: &Based, n: usize, p: usize) -> (usize, usize) {
        let nb = other.space.level(n).size() - 1;
        let (rx, ry) = ((p - 1) / nb, (p - 1) % nb);
        (rx + usize::from(rx >= self.base[n]), ry + usize::from(ry >= other.base[n]))
    }

    pub fn wedge(&self, other: &Based) -> Based {
        let d = self.depth().min(other.depth());
        let (a, b) = (&self.space, &other.space);
        // 0 = base, Ok(x) from self, Err(y) from other
        let points: Vec<Vec<Option<std::result::Result<usize, usize>>>> = (0..=d)
            .map(|n| {
                let mut lv = vec![None];
                lv.extend((0..a.level(n).size()).filter(|&x| x != self.base[n]).map(|x| Some(Ok(x))));
                lv.extend((0..b.level(n).size()).filter(|&y| y != other.base[n]).map(|y| Some(Err(y))));
                lv
            })
            .collect();
        let norm_a = |n: usize, x: usize| if x == self.base[n] { None } else { Some(Ok(x)) };
        let norm_b = |n: usize, y: usize| if y == other.base[n] { None } else { Some(Err(y)) };
        let x = from_points(
            self.group(),
            points,
            |n, g, p| p.map(|e| e.map(|x| a.level(n).act(g, x)).map_err(|y| b.level(n).act(g, y))),
            |n, i, p| match p {
                None => None,
                Some(Ok(x)) => norm_a(n - 1, a.face(n, i, *x)),
                Some(Err(y)) => norm_b(n - 1, b.face(n, i, *y)),
            },
            |n, i, p| match p {
                None => None,
                Some(Ok(x)) => norm_a(n + 1, a.degen(n, i, *x)),
                Some(Err(y)) => norm_b(n + 1, b.degen(n, i, *y)),
            },
        );
        Based { space: x, base: vec![0; d + 1] }
    }

    /// `X / Y` for a based subcomplex given by point lists containing the basepoint.
    pub fn quotient(&self, sub: &[Vec<usize>]) -> Result<(Based, SimplicialMap)> {
        let x = &self.space;
        x.subcomplex(sub)?;
        for n in 0..=self.depth() {
            if !sub[n].contains(&self.base[n]) {
                bail!(Validation, "subcomplex misses the basepoint on level {n}");
            }
        }
        let inside: Vec<std::collections::HashSet<usize>> = sub.iter().map(|p| p.iter().copied().collect()).collect();
        let norm = |n: usize, s: usize| if inside[n].contains(&s) { None } else { Some(s) };
        let points: Vec<Vec<Option<usize>>> = (0..=self.depth())
            .map(|n| std::iter::once(None).chain((0..x.level(n).size()).filter(|s| !inside[n].contains(s)).map(Some)).collect())
            .collect();
        let proj_levels: Vec<Vec<usize>> = points
            .iter()
            .enumerate()
            .map(|(n, lv)| {
                let pos: HashMap<Option<usize>, usize> = lv.iter().copied().enumerate().map(|(i, p)| (p, i)).collect();
                (0..x.level(n).size()).map(|s| pos[&norm(n, s)]).collect()
            })
            .collect();
        let q = from_points(
            self.group(),
            points,
            |n, g, p| p.map(|s| x.level(n).act(g, s)),
            |n, i, p| p.and_then(|s| norm(n - 1, x.face(n, i, s))),
            |n, i, p| p.and_then(|s| norm(n + 1, x.degen(n, i, s))),
        );
        Ok((Based { space: q, base: vec![0; self.depth() + 1] }, SimplicialMap { levels: proj_levels }))
    }

    /// Fixed points for a class representative, based, over the Weyl group.
    pub fn fixed_point_system(&self, class_id: usize) -> Based {
        let (x, incl) = self.space.fixed_point_system(class_id);
        let base = (0..=self.depth()).map(|n| incl[n].iter().position(|&p| p == self.base[n]).unwrap()).collect();
        Based { space: x, base }
    }
}
