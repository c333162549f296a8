use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{unit_vec, Matrix};
use super::snf::{image_basis, smith_normal_form, LatticeSolver};

/// Isomorphism invariant of a finitely generated abelian group: free rank
/// plus the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Canonical {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Canonical {
    pub fn zero() -> Self {
        Canonical { free_rank: 0, torsion: vec![] }
    }

    pub fn free(n: usize) -> Self {
        Canonical { free_rank: n, torsion: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => Canonical { free_rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Canonical) -> Canonical {
        let mut g = AbGroup::from_canonical(self);
        g = AbGroup::direct_sum(&[&g, &AbGroup::from_canonical(other)]);
        g.canonical()
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{}", self.torsion[i]));
            } else {
                parts.push(format!("(Z/{})^{}", self.torsion[i], j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finitely generated abelian group `Z^gens / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    gens: usize,
    relations: Matrix,
}

impl AbGroup {
    pub fn new(gens: usize, relations: Matrix) -> Self {
        assert_eq!(relations.rows(), gens, "relation matrix must have one row per generator");
        AbGroup { gens, relations }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(n: usize) -> Self {
        AbGroup { gens: n, relations: Matrix::zeros(n, 0) }
    }

    /// `Z/n` on one generator (`Z` for `n = 0`).
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        AbGroup { gens: 1, relations: Matrix::from_rows(&[vec![BigInt::from(n)]]) }
    }

    pub fn from_canonical(c: &Canonical) -> Self {
        let n = c.free_rank + c.torsion.len();
        let mut rel = Matrix::zeros(n, c.torsion.len());
        for (k, t) in c.torsion.iter().enumerate() {
            rel[(c.free_rank + k, k)] = t.clone();
        }
        AbGroup { gens: n, relations: rel }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn canonical(&self) -> Canonical {
        let snf = smith_normal_form(&self.relations);
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        Canonical { free_rank: self.gens - snf.rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical().is_zero()
    }

    pub fn relation_solver(&self) -> LatticeSolver {
        LatticeSolver::new(&self.relations)
    }

    /// Whether `v` represents zero.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.relations.cols() == 0 {
            return false;
        }
        self.relation_solver().contains(v)
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    /// Whether every column of `m` (a matrix into this group) is zero.
    pub fn all_columns_zero(&self, m: &Matrix) -> bool {
        assert_eq!(m.rows(), self.gens);
        if m.is_zero() {
            return true;
        }
        let solver = self.relation_solver();
        (0..m.cols()).all(|j| solver.contains(&m.col(j)))
    }

    pub fn direct_sum(parts: &[&AbGroup]) -> AbGroup {
        let rels: Vec<&Matrix> = parts.iter().map(|p| &p.relations).collect();
        AbGroup { gens: parts.iter().map(|p| p.gens).sum(), relations: Matrix::block_diag(&rels) }
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        let c = self.canonical();
        (c.free_rank == 0).then(|| c.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// A subgroup of an ambient presented group, itself presented on a lattice
/// basis whose ambient coordinates are the columns of `embed`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: AbGroup,
    pub embed: Matrix,
    solver: LatticeSolver,
}

impl Subgroup {
    fn new(group: AbGroup, embed: Matrix, ambient: &AbGroup) -> Self {
        let solver = LatticeSolver::new(&embed.hcat(ambient.relations()));
        Subgroup { group, embed, solver }
    }

    /// Coordinates of an ambient element lying in the subgroup.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(v).map(|x| x[..self.embed.cols()].to_vec())
    }

    /// Expresses every column of `m` in subgroup coordinates.
    pub fn coords_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            cols.push(self.coords(&m.col(j))?);
        }
        Some(Matrix::from_cols(self.embed.cols(), &cols))
    }
}

/// Homomorphism between presented groups given on generators.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: Matrix,
}

impl AbHom {
    pub fn new(source: AbGroup, target: AbGroup, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), target.gens());
        assert_eq!(matrix.cols(), source.gens());
        AbHom { source, target, matrix }
    }

    pub fn identity(g: &AbGroup) -> Self {
        AbHom::new(g.clone(), g.clone(), Matrix::identity(g.gens()))
    }

    /// Source relations land in the target relation lattice.
    pub fn is_well_defined(&self) -> bool {
        self.target.all_columns_zero(&self.matrix.mul(self.source.relations()))
    }

    pub fn is_zero(&self) -> bool {
        self.target.all_columns_zero(&self.matrix)
    }

    pub fn compose(&self, first: &AbHom) -> AbHom {
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    /// Lattice `{x : f x = 0 in target}` in source generator coordinates.
    fn kernel_lattice(&self) -> Matrix {
        let n = self.source.gens();
        let sys = self.matrix.hcat(self.target.relations());
        let k = LatticeSolver::new(&sys).kernel_basis();
        let proj = k.select_rows(&(0..n).collect::<Vec<_>>());
        image_basis(&proj)
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.kernel_lattice();
        let sol = LatticeSolver::new(&e);
        let rels = self.source.relations();
        let mut cols = Vec::new();
        for j in 0..rels.cols() {
            cols.push(sol.solve(&rels.col(j)).expect("source relations lie in the kernel lattice"));
        }
        let group = AbGroup::new(e.cols(), Matrix::from_cols(e.cols(), &cols));
        Subgroup::new(group, e, &self.source)
    }

    pub fn image(&self) -> Subgroup {
        let rel = self.kernel_lattice();
        let group = AbGroup::new(self.source.gens(), rel);
        Subgroup::new(group, self.matrix.clone(), &self.target)
    }

    pub fn cokernel(&self) -> AbGroup {
        AbGroup::new(self.target.gens(), self.target.relations().hcat(&self.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`.
pub fn is_exact_at(f: &AbHom, g: &AbHom) -> bool {
    if !g.compose(f).is_zero() {
        return false;
    }
    let ker = g.kernel();
    let span = LatticeSolver::new(&f.matrix.hcat(f.target.relations()));
    (0..ker.embed.cols()).all(|j| span.contains(&ker.embed.col(j)))
}

/// `Hom(A, B)` presented as a group of matrices.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: AbGroup,
    /// Columns are flattened `target.gens x source.gens` matrices (row-major).
    pub embed: Matrix,
    source: AbGroup,
    target: AbGroup,
}

impl HomGroup {
    /// Matrix of the homomorphism with the given coordinates.
    pub fn hom_matrix(&self, coords: &[BigInt]) -> Matrix {
        let flat = self.embed.mul_vec(coords);
        let (m, n) = (self.target.gens(), self.source.gens());
        let mut f = Matrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                f[(i, j)] = flat[i * n + j].clone();
            }
        }
        f
    }

    /// Evaluation pairing `Hom(A,B) x A -> B`.
    pub fn evaluate(&self, coords: &[BigInt], a: &[BigInt]) -> Vec<BigInt> {
        self.hom_matrix(coords).mul_vec(a)
    }
}

pub fn hom_group(a: &AbGroup, b: &AbGroup) -> HomGroup {
    let (n, m) = (a.gens(), b.gens());
    let ra = a.relations();
    let rb = b.relations();
    let (ka, kb) = (ra.cols(), rb.cols());
    // unknowns: F (m*n, row-major) then Y (kb * ka); equations F ra - rb Y = 0
    let vars = m * n + kb * ka;
    let mut sys = Matrix::zeros(m * ka, vars);
    for r in 0..ka {
        for i in 0..m {
            let row = r * m + i;
            for j in 0..n {
                sys[(row, i * n + j)] = ra[(j, r)].clone();
            }
            for c in 0..kb {
                sys[(row, m * n + r * kb + c)] = -rb[(i, c)].clone();
            }
        }
    }
    let k = LatticeSolver::new(&sys).kernel_basis();
    let proj = k.select_rows(&(0..m * n).collect::<Vec<_>>());
    let e = image_basis(&proj);
    let sol = LatticeSolver::new(&e);
    let mut rels = Vec::new();
    for j in 0..n {
        for c in 0..kb {
            let mut flat = vec![BigInt::zero(); m * n];
            for i in 0..m {
                flat[i * n + j] = rb[(i, c)].clone();
            }
            rels.push(sol.solve(&flat).expect("null homomorphisms lie in the hom lattice"));
        }
    }
    let group = AbGroup::new(e.cols(), Matrix::from_cols(e.cols(), &rels));
    HomGroup { group, embed: e, source: a.clone(), target: b.clone() }
}

pub fn basis_vectors(n: usize) -> impl Iterator<Item = Vec<BigInt>> {
    (0..n).map(move |i| unit_vec(n, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> AbGroup {
        AbGroup::cyclic(n)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(c(2).canonical().to_string(), "Z/2");
        assert_eq!(AbGroup::free(2).canonical().to_string(), "Z^2");
        assert_eq!(AbGroup::zero().to_string(), "0");
        let g = AbGroup::new(2, Matrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.canonical(), Canonical::cyclic(6));
        let h = AbGroup::direct_sum(&[&c(2), &c(2), &AbGroup::free(1)]);
        assert_eq!(h.to_string(), "Z + (Z/2)^2");
    }

    #[test]
    fn hom_groups() {
        assert!(hom_group(&c(2), &AbGroup::free(1)).group.is_trivial());
        assert_eq!(hom_group(&c(2), &c(4)).group.canonical(), Canonical::cyclic(2));
        assert_eq!(hom_group(&AbGroup::free(2), &AbGroup::free(1)).group.canonical(), Canonical::free(2));
        // evaluation: the nonzero element of Hom(Z/2, Z/4) sends 1 to 2
        let h = hom_group(&c(2), &c(4));
        let v = h.evaluate(&[BigInt::one()], &[BigInt::one()]);
        assert!(c(4).elements_equal(&v, &[BigInt::from(2)]));
    }

    #[test]
    fn kernel_cokernel_image() {
        let times2 = AbHom::new(AbGroup::free(1), AbGroup::free(1), Matrix::scalar(1, 2));
        assert!(times2.is_injective());
        assert_eq!(times2.cokernel().canonical(), Canonical::cyclic(2));
        let mod2 = AbHom::new(AbGroup::free(1), c(2), Matrix::scalar(1, 1));
        assert!(is_exact_at(&times2, &mod2));
        assert!(mod2.is_surjective());
        let k = mod2.kernel();
        assert_eq!(k.group.canonical(), Canonical::free(1));
        let x = k.coords(&[BigInt::from(4)]).unwrap();
        assert_eq!(k.embed.mul_vec(&x), vec![BigInt::from(4)]);
        assert!(k.coords(&[BigInt::from(3)]).is_none());
        let z4_to_z2 = AbHom::new(c(4), c(2), Matrix::scalar(1, 1));
        assert!(z4_to_z2.is_well_defined());
        assert_eq!(z4_to_z2.kernel().group.canonical(), Canonical::cyclic(2));
        assert_eq!(z4_to_z2.image().group.canonical(), Canonical::cyclic(2));
        let bad = AbHom::new(c(2), AbGroup::free(1), Matrix::scalar(1, 1));
        assert!(!bad.is_well_defined());
    }
}
