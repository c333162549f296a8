//! Truncated simplicial coalescence: the bar construction `B(𝒳, C, J)` of a
//! system `𝒳(S) = Map_G(S, X)` over a finite category `C` of G-sets.

mod epsilon;
mod product;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{bail, Result};
use crate::exact::sparse::{free_homology, SparseMatrix};
use crate::exact::Canonical;
use crate::grp::FiniteGroup;
use crate::gset::{enumerate_gmaps, GSet};
use crate::sgset::{Based, SimplicialGSet};

pub use epsilon::{epsilon, epsilon_cell, extra_degeneracy, section, EpsilonReport};
pub use product::{delta, delta_varpi_identity, varpi, varpi_delta, ProductOrbitRow, ProductReport};

/// An object of the index category: a product of orbits, listed by class.
#[derive(Clone, Debug)]
pub struct Object {
    pub word: Vec<usize>,
    pub set: GSet,
}

#[derive(Clone, Debug)]
struct Hom {
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// A finite full subcategory of finite G-sets with all Hom tables.
#[derive(Clone, Debug)]
pub struct IndexCategory {
    group: Arc<FiniteGroup>,
    objects: Vec<Object>,
    homs: Vec<Vec<Hom>>,
    by_word: HashMap<Vec<usize>, usize>,
}

impl IndexCategory {
    /// The orbit category; object `i` is the orbit of class `i`.
    pub fn orbits(group: &Arc<FiniteGroup>) -> Self {
        Self::products(group, 1)
    }

    /// All ordered products of at most `max_factors` orbits.
    pub fn products(group: &Arc<FiniteGroup>, max_factors: usize) -> Self {
        let k = group.class_count();
        let mut words: Vec<Vec<usize>> = (0..k).map(|c| vec![c]).collect();
        let mut last = words.clone();
        for _ in 1..max_factors {
            last = last.iter().flat_map(|w| (0..k).map(move |c| [w.clone(), vec![c]].concat())).collect();
            words.extend(last.iter().cloned());
        }
        let objects: Vec<Object> = words
            .into_iter()
            .map(|word| {
                let mut set = GSet::orbit(group.clone(), word[0]);
                for &c in &word[1..] {
                    set = set.product(&GSet::orbit(group.clone(), c));
                }
                Object { word, set }
            })
            .collect();
        let homs = objects
            .iter()
            .map(|s| {
                objects
                    .iter()
                    .map(|t| {
                        let maps = enumerate_gmaps(&s.set, &t.set);
                        let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                        Hom { maps, index }
                    })
                    .collect()
            })
            .collect();
        let by_word = objects.iter().enumerate().map(|(i, o)| (o.word.clone(), i)).collect();
        IndexCategory { group: group.clone(), objects, homs, by_word }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &Object {
        &self.objects[i]
    }

    pub fn find(&self, word: &[usize]) -> Option<usize> {
        self.by_word.get(word).copied()
    }

    /// Object index of `S_a × S_b`.
    pub fn product_of(&self, a: usize, b: usize) -> Result<usize> {
        let word = [self.objects[a].word.clone(), self.objects[b].word.clone()].concat();
        match self.find(&word) {
            Some(i) => Ok(i),
            None => bail!(Config, "index category is not closed under the product {word:?}"),
        }
    }

    pub fn hom(&self, s: usize, t: usize) -> &[Vec<usize>] {
        &self.homs[s][t].maps
    }

    pub fn hom_index(&self, s: usize, t: usize, values: &[usize]) -> Option<usize> {
        self.homs[s][t].index.get(values).copied()
    }

    pub fn identity(&self, s: usize) -> usize {
        let id: Vec<usize> = (0..self.objects[s].set.size()).collect();
        self.hom_index(s, s, &id).expect("identity is equivariant")
    }

    /// `f ∘ g` for `g : S_a → S_b`, `f : S_b → S_c`.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> usize {
        let (f, g) = (&self.homs[b][c].maps[f], &self.homs[a][b].maps[g]);
        let v: Vec<usize> = g.iter().map(|&y| f[y]).collect();
        self.hom_index(a, c, &v).expect("composite is equivariant")
    }
}

/// `𝒳(S) = Map_G(S, X)` levelwise, optionally based at the constant maps.
#[derive(Clone, Debug)]
pub struct System {
    pub space: SimplicialGSet,
    pub base: Option<Vec<usize>>,
}

impl System {
    pub fn unbased(space: &SimplicialGSet) -> Self {
        System { space: space.clone(), base: None }
    }

    /// `Φ X` for a based space, with the basepoint sub-bar collapsed.
    pub fn phi(x: &Based) -> Self {
        System { space: x.space.clone(), base: Some(x.base.clone()) }
    }

    /// The constant one-point system.
    pub fn point(group: &Arc<FiniteGroup>, depth: usize) -> Self {
        Self::unbased(&SimplicialGSet::discrete(&GSet::point(group.clone()), depth))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.space.group()
    }

    pub fn depth(&self) -> usize {
        self.space.depth()
    }

    /// `𝒳 × 𝒴 = Φ(X × Y)`, based at the pair of basepoints when both are.
    pub fn product(&self, other: &System) -> System {
        let space = self.space.product(&other.space);
        let base = match (&self.base, &other.base) {
            (Some(a), Some(b)) => {
                Some((0..=space.depth()).map(|n| a[n] * other.space.level(n).size() + b[n]).collect())
            }
            _ => None,
        };
        System { space, base }
    }
}

/// A cell `(x ∈ 𝒳(S_0), S_0 ←f_1 S_1 ← ⋯ ←f_n S_n, α ∈ S_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    /// `x` as the values of a G-map `S_0 → X_k`.
    pub x: Vec<usize>,
    pub objects: Vec<usize>,
    /// `maps[i]` indexes `f_{i+1} : S_{i+1} → S_i`.
    pub maps: Vec<usize>,
    pub alpha: usize,
}

impl Cell {
    pub fn degree(&self) -> usize {
        self.maps.len()
    }
}

/// The diagonal of the bisimplicial bar construction, levels `0..=depth`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub category: Arc<IndexCategory>,
    pub system: System,
    pub depth: usize,
    pub levels: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
}

/// Builds the bar construction through `depth`.
pub fn bar_levels(system: &System, category: &Arc<IndexCategory>, depth: usize) -> Result<BarComplex> {
    if !Arc::ptr_eq(system.group(), category.group()) && system.group().table() != category.group().table() {
        bail!(Config, "system and index category are over different groups");
    }
    if depth > system.depth() {
        bail!(Range, "bar depth {depth} exceeds the space depth {}", system.depth());
    }
    let mut bar = BarComplex { category: category.clone(), system: system.clone(), depth, levels: vec![], index: vec![] };
    for n in 0..=depth {
        let cells = bar.cells(n, n);
        bar.index.push(cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
        bar.levels.push(cells);
    }
    Ok(bar)
}

impl BarComplex {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.category.group()
    }

    pub fn position(&self, n: usize, c: &Cell) -> Option<usize> {
        self.index[n].get(c).copied()
    }

    /// All chains `(S_0, …, S_n; f_1, …, f_n)`.
    pub fn chains(&self, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let cat = &self.category;
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = (0..cat.len()).map(|o| (vec![o], vec![])).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for (objs, maps) in &out {
                let last = *objs.last().unwrap();
                for o in 0..cat.len() {
                    for f in 0..cat.hom(o, last).len() {
                        next.push(([objs.clone(), vec![o]].concat(), [maps.clone(), vec![f]].concat()));
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Cells of bisimplicial degree `(k, n)`: `x` at level `k`, chains of length `n`.
    pub fn cells(&self, k: usize, n: usize) -> Vec<Cell> {
        let level = self.system.space.level(k);
        let mut out = Vec::new();
        let mut sections: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        for (objects, maps) in self.chains(n) {
            let xs = sections
                .entry(objects[0])
                .or_insert_with(|| enumerate_gmaps(&self.category.object(objects[0]).set, level));
            let top = self.category.object(objects[n]).set.size();
            for x in xs.iter() {
                for alpha in 0..top {
                    out.push(Cell { x: x.clone(), objects: objects.clone(), maps: maps.clone(), alpha });
                }
            }
        }
        out
    }

    fn map_values(&self, c: &Cell, j: usize) -> &[usize] {
        &self.category.hom(c.objects[j + 1], c.objects[j])[c.maps[j]]
    }

    /// Face in the bar direction: pull back, compose, or evaluate.
    pub fn bar_face(&self, i: usize, c: &Cell) -> Cell {
        let n = c.degree();
        let mut d = c.clone();
        if i == 0 {
            let f = self.map_values(c, 0);
            d.x = f.iter().map(|&s| c.x[s]).collect();
            d.objects.remove(0);
            d.maps.remove(0);
        } else if i == n {
            d.alpha = self.map_values(c, n - 1)[c.alpha];
            d.objects.pop();
            d.maps.pop();
        } else {
            let (a, b, t) = (c.objects[i + 1], c.objects[i], c.objects[i - 1]);
            d.maps[i - 1] = self.category.compose(a, b, t, c.maps[i - 1], c.maps[i]);
            d.objects.remove(i);
            d.maps.remove(i);
        }
        d
    }

    /// Degeneracy in the bar direction: insert an identity after `S_i`.
    pub fn bar_degen(&self, i: usize, c: &Cell) -> Cell {
        let mut d = c.clone();
        d.objects.insert(i, c.objects[i]);
        d.maps.insert(i, self.category.identity(c.objects[i]));
        d
    }

    pub fn space_face(&self, k: usize, i: usize, c: &Cell) -> Cell {
        let x = c.x.iter().map(|&p| self.system.space.face(k, i, p)).collect();
        Cell { x, ..c.clone() }
    }

    pub fn space_degen(&self, k: usize, i: usize, c: &Cell) -> Cell {
        let x = c.x.iter().map(|&p| self.system.space.degen(k, i, p)).collect();
        Cell { x, ..c.clone() }
    }

    /// Diagonal face `d_i` on a level-`n` cell.
    pub fn face(&self, n: usize, i: usize, c: &Cell) -> Cell {
        self.space_face(n, i, &self.bar_face(i, c))
    }

    pub fn degen(&self, n: usize, i: usize, c: &Cell) -> Cell {
        self.space_degen(n, i, &self.bar_degen(i, c))
    }

    /// `g` acts through `α` only.
    pub fn act(&self, g: usize, c: &Cell) -> Cell {
        let s = &self.category.object(*c.objects.last().unwrap()).set;
        Cell { alpha: s.act(g, c.alpha), ..c.clone() }
    }

    /// Whether `x` is the constant map to the basepoint.
    pub fn is_base(&self, k: usize, c: &Cell) -> bool {
        match &self.system.base {
            Some(b) => c.x.iter().all(|&p| p == b[k]),
            None => false,
        }
    }

    /// Simplicial identities and equivariance of faces and degeneracies on
    /// every diagonal cell.
    pub fn verify_identities(&self) -> bool {
        let g = self.group();
        for n in 0..=self.depth {
            for c in &self.levels[n] {
                for h in g.elements() {
                    let hc = self.act(h, c);
                    if self.position(n, &hc).is_none() {
                        return false;
                    }
                    if n > 0 && (0..=n).any(|i| self.face(n, i, &hc) != self.act(h, &self.face(n, i, c))) {
                        return false;
                    }
                }
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, i, &self.face(n, j, c));
                            let b = self.face(n - 1, j - 1, &self.face(n, i, c));
                            if a != b {
                                return false;
                            }
                        }
                    }
                }
                if n < self.depth {
                    for j in 0..=n {
                        let s = self.degen(n, j, c);
                        if self.position(n + 1, &s).is_none() {
                            return false;
                        }
                        for i in 0..=n + 1 {
                            let d = self.face(n + 1, i, &s);
                            let expect = if i == j || i == j + 1 {
                                c.clone()
                            } else if i < j {
                                self.degen(n - 1, j - 1, &self.face(n, i, c))
                            } else {
                                self.degen(n - 1, j, &self.face(n, i - 1, c))
                            };
                            if d != expect {
                                return false;
                            }
                        }
                        if n + 1 < self.depth {
                            for i in 0..=j {
                                if self.degen(n + 1, i, &s) != self.degen(n + 1, j + 1, &self.degen(n, i, c)) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Indices of the `H`-fixed diagonal cells at level `n`, excluding the
    /// basepoint sub-bar.
    pub fn fixed_cells(&self, n: usize, class_id: usize) -> Vec<usize> {
        let h = &self.group().class(class_id).elements;
        (0..self.levels[n].len())
            .filter(|&i| {
                let c = &self.levels[n][i];
                !self.is_base(n, c) && h.iter().all(|&g| self.act(g, c) == *c)
            })
            .collect()
    }

    /// Chains on `H`-fixed cells through level `top`, modulo the basepoint.
    pub fn fixed_complex(&self, class_id: usize, top: usize) -> FreeComplex {
        let cells: Vec<Vec<usize>> = (0..=top).map(|n| self.fixed_cells(n, class_id)).collect();
        let pos: Vec<HashMap<usize, usize>> =
            cells.iter().map(|l| l.iter().enumerate().map(|(j, &i)| (i, j)).collect()).collect();
        let mut diffs = Vec::new();
        for n in 1..=top {
            let mut d = SparseMatrix::new(cells[n - 1].len(), cells[n].len());
            for (col, &i) in cells[n].iter().enumerate() {
                for k in 0..=n {
                    let f = self.face(n, k, &self.levels[n][i]);
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    if let Some(&row) = self.position(n - 1, &f).and_then(|p| pos[n - 1].get(&p)) {
                        d.add(row, col, sign);
                    }
                }
            }
            diffs.push(d);
        }
        FreeComplex { dims: cells.iter().map(|l| l.len()).collect(), diffs }
    }
}

/// A bounded complex of free abelian groups with sparse differentials
/// `diffs[k] : Z^{dims[k+1]} → Z^{dims[k]}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
}

impl FreeComplex {
    /// Homology below the top degree.
    pub fn homology(&self) -> Vec<Canonical> {
        let mut h = free_homology(&self.dims, &self.diffs);
        h.pop();
        h
    }

    /// The mapping cone of `f : self → target`, `f[n] : C_n → D_n`.
    pub fn cone(&self, target: &FreeComplex, f: &[SparseMatrix]) -> FreeComplex {
        let top = target.dims.len() - 1;
        let dims: Vec<usize> = (0..=top).map(|n| target.dims[n] + if n > 0 { self.dims[n - 1] } else { 0 }).collect();
        let mut diffs = Vec::new();
        for n in 1..=top {
            let mut d = SparseMatrix::new(dims[n - 1], dims[n]);
            let dn = target.dims[n];
            let prev = target.dims[n - 1];
            for (&(r, c), v) in target.diffs[n - 1].entries() {
                d.add(r, c, v.clone());
            }
            for (&(r, c), v) in f[n - 1].entries() {
                d.add(r, dn + c, v.clone());
            }
            if n >= 2 {
                for (&(r, c), v) in self.diffs[n - 2].entries() {
                    d.add(prev + r, dn + c, -v.clone());
                }
            }
            diffs.push(d);
        }
        FreeComplex { dims, diffs }
    }
}

/// Whether `f` induces isomorphisms on `H_n` for `n < top`: the cone is
/// acyclic through `top − 1`, so `f_*` is onto there, and a surjection
/// between isomorphic finitely generated abelian groups is injective.
pub fn iso_below_top(source: &FreeComplex, target: &FreeComplex, f: &[SparseMatrix]) -> Vec<bool> {
    let hs = source.homology();
    let ht = target.homology();
    let hc = free_homology(&source.cone(target, f).dims, &source.cone(target, f).diffs);
    (0..hs.len())
        .map(|n| hs[n] == ht[n] && hc[n].is_zero() && (n == 0 || hc[n - 1].is_zero()))
        .collect()
}
