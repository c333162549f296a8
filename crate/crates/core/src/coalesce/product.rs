use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::epsilon::{epsilon_chain_map, epsilon_report};
use super::{bar_levels, epsilon_cell, iso_below_top, BarComplex, Cell, FreeComplex, IndexCategory, System};
use crate::error::Result;
use crate::exact::sparse::SparseMatrix;
use crate::exact::Canonical;

/// `ϖ((x, f, α), (y, g, β)) = (x × y, f × g, (α, β))` for cells of equal degree.
pub fn varpi(cat: &IndexCategory, left: &BarComplex, right: &BarComplex, c: &Cell, d: &Cell) -> Result<Cell> {
    let n = c.degree();
    let objects = (0..=n).map(|i| cat.product_of(c.objects[i], d.objects[i])).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(n);
    for j in 0..n {
        let f = left.map_values(c, j);
        let g = right.map_values(d, j);
        let m = cat.object(d.objects[j]).set.size();
        let v: Vec<usize> = f.iter().flat_map(|&s| g.iter().map(move |&t| s * m + t)).collect();
        maps.push(cat.hom_index(objects[j + 1], objects[j], &v).expect("product of G-maps is a G-map"));
    }
    let ysize = right.system.space.level(n).size();
    let x = c.x.iter().flat_map(|&p| d.x.iter().map(move |&q| p * ysize + q)).collect();
    let alpha = c.alpha * cat.object(d.objects[n]).set.size() + d.alpha;
    Ok(Cell { x, objects, maps, alpha })
}

/// `Δ = (Ψ pr_1, Ψ pr_2)`: only the `𝒳 × 𝒴` coordinate changes.
pub fn delta(right_size: usize, z: &Cell) -> (Cell, Cell) {
    let left = Cell { x: z.x.iter().map(|&p| p / right_size).collect(), ..z.clone() };
    let right = Cell { x: z.x.iter().map(|&p| p % right_size).collect(), ..z.clone() };
    (left, right)
}

fn space_face(system: &System, k: usize, i: usize, c: &Cell) -> Cell {
    Cell { x: c.x.iter().map(|&p| system.space.face(k, i, p)).collect(), ..c.clone() }
}

/// Recovers the factor cell from a cell over products of orbits whose
/// coordinates are pulled back along a projection, if it is one.
fn unpair(cat: &IndexCategory, z: &Cell, first: bool) -> Option<Cell> {
    let split = |o: usize| {
        let w = &cat.object(o).word;
        (w.len() == 2).then(|| (cat.find(&w[..1]).unwrap(), cat.find(&w[1..]).unwrap()))
    };
    let parts: Vec<(usize, usize)> = z.objects.iter().map(|&o| split(o)).collect::<Option<_>>()?;
    let size = |o: usize| cat.object(o).set.size();
    let proj = |i: usize, p: usize| {
        let m = size(parts[i].1);
        if first {
            p / m
        } else {
            p % m
        }
    };
    let pick = |i: usize| if first { parts[i].0 } else { parts[i].1 };
    let fibre = |i: usize, s: usize| {
        let m = size(parts[i].1);
        let other = if first { size(parts[i].1) } else { size(parts[i].0) };
        (0..other).map(move |t| if first { s * m + t } else { t * m + s })
    };
    let n = z.degree();
    let mut x = Vec::new();
    for s in 0..size(pick(0)) {
        let vals: Vec<usize> = fibre(0, s).map(|p| z.x[p]).collect();
        if vals.iter().any(|&v| v != vals[0]) {
            return None;
        }
        x.push(vals[0]);
    }
    let mut maps = Vec::with_capacity(n);
    for j in 0..n {
        let h = &cat.hom(z.objects[j + 1], z.objects[j])[z.maps[j]];
        let mut v = Vec::new();
        for s in 0..size(pick(j + 1)) {
            let vals: Vec<usize> = fibre(j + 1, s).map(|p| proj(j, h[p])).collect();
            if vals.iter().any(|&a| a != vals[0]) {
                return None;
            }
            v.push(vals[0]);
        }
        maps.push(cat.hom_index(pick(j + 1), pick(j), &v)?);
    }
    let objects = (0..=n).map(pick).collect();
    Some(Cell { x, objects, maps, alpha: proj(n, z.alpha) })
}

/// Comparison of `ϖ` and `Δ` at one orbit.
#[derive(Clone, Debug, Serialize)]
pub struct ProductOrbitRow {
    pub orbit: String,
    /// `ε ∘ ϖ = ε × ε` on fixed pairs.
    pub epsilon_varpi: bool,
    /// `(ε × ε) ∘ Δ = ε` on fixed cells.
    pub epsilon_delta: bool,
    /// `(H_n(B𝒳 × B𝒴), H_n(B(𝒳 × 𝒴)), ϖ_* iso, ε_* iso)` below the depth.
    pub homology: Vec<(Canonical, Canonical, bool, bool)>,
    /// Both factor bars contract onto their fixed points at this orbit.
    pub factors_contract: bool,
}

impl ProductOrbitRow {
    /// `Δ_*` is then iso, since `(ε × ε) Δ = ε` with both `ε`s equivalences.
    pub fn delta_iso(&self) -> bool {
        self.epsilon_delta && self.factors_contract && self.homology.iter().all(|h| h.3)
    }

    pub fn passed(&self) -> bool {
        self.epsilon_varpi && self.delta_iso() && self.homology.iter().all(|h| h.2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub depth: usize,
    /// `Δ ∘ ϖ` followed by unpairing is the identity on every pair of cells.
    pub delta_varpi_cells: bool,
    /// `ϖ` and `Δ` commute with faces, degeneracies and the group action.
    pub simplicial: bool,
    pub rows: Vec<ProductOrbitRow>,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.delta_varpi_cells && self.simplicial && self.rows.iter().all(|r| r.passed())
    }
}

struct PairComplex {
    cells: Vec<Vec<(usize, usize)>>,
    complex: FreeComplex,
}

/// Chains on the `H`-fixed part of the levelwise product `B𝒳 × B𝒴`.
fn pair_complex(left: &BarComplex, right: &BarComplex, class_id: usize, top: usize) -> PairComplex {
    let cells: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|n| {
            let (a, b) = (left.fixed_cells(n, class_id), right.fixed_cells(n, class_id));
            a.iter().flat_map(|&i| b.iter().map(move |&j| (i, j))).collect()
        })
        .collect();
    let pos: Vec<HashMap<(usize, usize), usize>> =
        cells.iter().map(|l| l.iter().enumerate().map(|(k, &p)| (p, k)).collect()).collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let mut d = SparseMatrix::new(cells[n - 1].len(), cells[n].len());
        for (col, &(i, j)) in cells[n].iter().enumerate() {
            for k in 0..=n {
                let a = left.position(n - 1, &left.face(n, k, &left.levels[n][i])).unwrap();
                let b = right.position(n - 1, &right.face(n, k, &right.levels[n][j])).unwrap();
                d.add(pos[n - 1][&(a, b)], col, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        diffs.push(d);
    }
    PairComplex { complex: FreeComplex { dims: cells.iter().map(|l| l.len()).collect(), diffs }, cells }
}

/// `Δ∘ϖ` followed by unpairing is the identity on every pair of cells of
/// equal degree up to `depth`. Only the factor bars are built.
pub fn delta_varpi_identity(x: &System, y: &System, depth: usize) -> Result<bool> {
    let group = x.group().clone();
    let orbits = Arc::new(IndexCategory::orbits(&group));
    let pairs = IndexCategory::products(&group, 2);
    let left = bar_levels(&System { base: None, ..x.clone() }, &orbits, depth)?;
    let right = bar_levels(&System { base: None, ..y.clone() }, &orbits, depth)?;
    for n in 0..=depth {
        let ysize = y.space.level(n).size();
        for c in &left.levels[n] {
            for d in &right.levels[n] {
                let (a, b) = delta(ysize, &varpi(&pairs, &left, &right, c, d)?);
                if unpair(&pairs, &a, true).as_ref() != Some(c) || unpair(&pairs, &b, false).as_ref() != Some(d) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `ϖ` and `Δ` between `B𝒳 × B𝒴` over the orbit category and `B(𝒳 × 𝒴)`
/// over products of at most two orbits. Basepoints are ignored. Homology
/// is compared at the orbits listed in `homology_at`.
pub fn varpi_delta(x: &System, y: &System, depth: usize, homology_at: &[usize]) -> Result<ProductReport> {
    let group = x.group().clone();
    let x = System { base: None, ..x.clone() };
    let y = System { base: None, ..y.clone() };
    let orbits = Arc::new(IndexCategory::orbits(&group));
    let pairs = Arc::new(IndexCategory::products(&group, 2));
    let left = bar_levels(&x, &orbits, depth)?;
    let right = bar_levels(&y, &orbits, depth)?;
    let pair = bar_levels(&x.product(&y), &pairs, depth)?;
    let ysize = |n: usize| y.space.level(n).size();

    let mut delta_varpi_cells = true;
    let mut simplicial = true;
    for n in 0..=depth {
        for c in &left.levels[n] {
            for d in &right.levels[n] {
                let z = varpi(&pairs, &left, &right, c, d)?;
                let (a, b) = delta(ysize(n), &z);
                delta_varpi_cells &= unpair(&pairs, &a, true).as_ref() == Some(c);
                delta_varpi_cells &= unpair(&pairs, &b, false).as_ref() == Some(d);
                simplicial &= pair.position(n, &z).is_some();
                for g in group.elements() {
                    simplicial &= varpi(&pairs, &left, &right, &left.act(g, c), &right.act(g, d))? == pair.act(g, &z);
                }
                if n > 0 {
                    for i in 0..=n {
                        let lhs = varpi(&pairs, &left, &right, &left.face(n, i, c), &right.face(n, i, d))?;
                        simplicial &= lhs == pair.face(n, i, &z);
                    }
                }
                if n < depth {
                    for i in 0..=n {
                        let lhs = varpi(&pairs, &left, &right, &left.degen(n, i, c), &right.degen(n, i, d))?;
                        simplicial &= lhs == pair.degen(n, i, &z);
                    }
                }
            }
        }
        for z in &pair.levels[n] {
            let (a, b) = delta(ysize(n), z);
            if n > 0 {
                for i in 0..=n {
                    let (fa, fb) = delta(ysize(n - 1), &pair.face(n, i, z));
                    simplicial &= fa == space_face(&x, n, i, &pair.bar_face(i, &a));
                    simplicial &= fb == space_face(&y, n, i, &pair.bar_face(i, &b));
                }
            }
        }
    }

    let mut rows = Vec::new();
    for class_id in 0..group.class_count() {
        let h = &group.class(class_id).elements;
        let fixed = |bar: &BarComplex, c: &Cell| h.iter().all(|&g| bar.act(g, c) == *c);
        let mut epsilon_varpi = true;
        let mut epsilon_delta = true;
        for n in 0..=depth {
            for c in left.levels[n].iter().filter(|c| fixed(&left, c)) {
                for d in right.levels[n].iter().filter(|d| fixed(&right, d)) {
                    let z = varpi(&pairs, &left, &right, c, d)?;
                    epsilon_varpi &= epsilon_cell(&pair, &z) == epsilon_cell(&left, c) * ysize(n) + epsilon_cell(&right, d);
                }
            }
            for z in pair.levels[n].iter().filter(|z| fixed(&pair, z)) {
                let (a, b) = delta(ysize(n), z);
                let e = epsilon_cell(&pair, z);
                epsilon_delta &= epsilon_cell(&pair, &a) == e / ysize(n) && epsilon_cell(&pair, &b) == e % ysize(n);
            }
        }
        let factors_contract = epsilon_report(&left, class_id)?.contraction && epsilon_report(&right, class_id)?.contraction;
        if !homology_at.contains(&class_id) {
            rows.push(ProductOrbitRow {
                orbit: format!("{}/{}", group.name(), group.class(class_id).label),
                epsilon_varpi,
                epsilon_delta,
                homology: vec![],
                factors_contract,
            });
            continue;
        }
        let p = pair_complex(&left, &right, class_id, depth);
        let q = pair.fixed_complex(class_id, depth);
        let qpos: Vec<HashMap<usize, usize>> = (0..=depth)
            .map(|n| pair.fixed_cells(n, class_id).into_iter().enumerate().map(|(k, i)| (i, k)).collect())
            .collect();
        let mut f = Vec::new();
        for n in 0..=depth {
            let mut m = SparseMatrix::new(q.dims[n], p.complex.dims[n]);
            for (col, &(i, j)) in p.cells[n].iter().enumerate() {
                let z = varpi(&pairs, &left, &right, &left.levels[n][i], &right.levels[n][j])?;
                m.add(qpos[n][&pair.position(n, &z).unwrap()], col, 1);
            }
            f.push(m);
        }
        let varpi_iso = iso_below_top(&p.complex, &q, &f);
        let (es, et, em) = epsilon_chain_map(&pair, class_id, depth);
        let eps_iso = iso_below_top(&es, &et, &em);
        let homology = p
            .complex
            .homology()
            .into_iter()
            .zip(q.homology())
            .zip(varpi_iso.into_iter().zip(eps_iso))
            .map(|((a, b), (i, e))| (a, b, i, e))
            .collect();
        rows.push(ProductOrbitRow {
            orbit: format!("{}/{}", group.name(), group.class(class_id).label),
            epsilon_varpi,
            epsilon_delta,
            homology,
            factors_contract,
        });
    }
    Ok(ProductReport { depth, delta_varpi_cells, simplicial, rows })
}
