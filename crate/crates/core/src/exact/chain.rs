use num_bigint::BigInt;

use super::group::{is_exact_at, AbGroup, AbHom};
use super::matrix::Matrix;
use super::snf::{image_basis, LatticeSolver};
use crate::error::{bail, Result};

/// Bounded chain complex `C_top -> ... -> C_0`; `d[n] : C_n -> C_{n-1}`
/// for `n >= 1` and `d[0]` is the zero map to the zero group.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    groups: Vec<AbGroup>,
    d: Vec<Matrix>,
}

impl ChainComplex {
    /// `differentials[k]` is `d_{k+1} : C_{k+1} -> C_k`.
    pub fn new(groups: Vec<AbGroup>, differentials: Vec<Matrix>) -> Result<Self> {
        if groups.is_empty() {
            bail!(Contract, "chain complex needs at least one degree");
        }
        if differentials.len() + 1 != groups.len() {
            bail!(Contract, "expected {} differentials, got {}", groups.len() - 1, differentials.len());
        }
        let mut d = vec![Matrix::zeros(0, groups[0].gens())];
        for (k, m) in differentials.into_iter().enumerate() {
            if m.rows() != groups[k].gens() || m.cols() != groups[k + 1].gens() {
                bail!(Contract, "differential d_{} has wrong shape", k + 1);
            }
            d.push(m);
        }
        let c = ChainComplex { groups, d };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for n in 1..self.groups.len() {
            let f = AbHom::new(self.groups[n].clone(), self.groups[n - 1].clone(), self.d[n].clone());
            if !f.is_well_defined() {
                bail!(Contract, "d_{n} does not respect relations");
            }
            if n >= 2 && !self.groups[n - 2].all_columns_zero(&self.d[n - 1].mul(&self.d[n])) {
                bail!(Contract, "d_{} d_{} is not zero", n - 1, n);
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, n: usize) -> &AbGroup {
        &self.groups[n]
    }

    pub fn groups(&self) -> &[AbGroup] {
        &self.groups
    }

    /// `d_n : C_n -> C_{n-1}` (zero-row matrix for `n = 0`).
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.d[n]
    }

    /// Homology in degree `n`. Degree `top` is computed with `d_{top+1} = 0`.
    pub fn homology(&self, n: usize) -> Result<Homology> {
        if n > self.top() {
            bail!(Range, "degree {n} exceeds chain complex top degree {}", self.top());
        }
        let a = self.groups[n].gens();
        let cycles = if n == 0 {
            Matrix::identity(a)
        } else {
            let sys = self.d[n].hcat(self.groups[n - 1].relations());
            let k = LatticeSolver::new(&sys).kernel_basis();
            image_basis(&k.select_rows(&(0..a).collect::<Vec<_>>()))
        };
        let solver = LatticeSolver::new(&cycles);
        let mut bounds = self.groups[n].relations().clone();
        if n < self.top() {
            bounds = bounds.hcat(&self.d[n + 1]);
        }
        let mut rel_cols = Vec::with_capacity(bounds.cols());
        for j in 0..bounds.cols() {
            match solver.solve(&bounds.col(j)) {
                Some(x) => rel_cols.push(x),
                None => bail!(Contract, "boundary in degree {n} is not a cycle"),
            }
        }
        let group = AbGroup::new(cycles.cols(), Matrix::from_cols(cycles.cols(), &rel_cols));
        Ok(Homology { group, cycles, solver })
    }
}

/// `H_n` presented on a basis of the cycle lattice.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: AbGroup,
    /// Cycle lattice basis, as chain-group columns.
    pub cycles: Matrix,
    solver: LatticeSolver,
}

impl Homology {
    /// Homology coordinates of a cycle.
    pub fn coords(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        match self.solver.solve(cycle) {
            Some(x) => Ok(x),
            None => bail!(Contract, "vector is not a cycle"),
        }
    }

    /// Matrix of the map induced on homology by a chain-level map.
    pub fn induced(&self, chain_map: &Matrix, target: &Homology) -> Result<AbHom> {
        let images = chain_map.mul(&self.cycles);
        let mut cols = Vec::with_capacity(images.cols());
        for j in 0..images.cols() {
            cols.push(target.coords(&images.col(j))?);
        }
        let m = Matrix::from_cols(target.cycles.cols(), &cols);
        Ok(AbHom::new(self.group.clone(), target.group.clone(), m))
    }
}

/// One node of a long exact sequence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessNode {
    pub label: String,
    pub exact: bool,
}

/// Long exact homology sequence of `0 -> A --f--> B --g--> C -> 0`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub h_a: Vec<Homology>,
    pub h_b: Vec<Homology>,
    pub h_c: Vec<Homology>,
    pub f_star: Vec<AbHom>,
    pub g_star: Vec<AbHom>,
    /// `connecting[n] : H_n(C) -> H_{n-1}(A)`, index 0 unused (zero map).
    pub connecting: Vec<AbHom>,
    pub nodes: Vec<ExactnessNode>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

fn solve_mod(m: &Matrix, target: &AbGroup, v: &[BigInt]) -> Option<Vec<BigInt>> {
    LatticeSolver::new(&m.hcat(target.relations())).solve(v).map(|x| x[..m.cols()].to_vec())
}

/// Checks that the levelwise sequence is short exact and builds the induced
/// long exact sequence through `max_degree`, verifying exactness at every
/// node `H_n(A), H_n(B), H_n(C)` for `n <= max_degree`.
pub fn long_exact_sequence(
    a: &ChainComplex,
    b: &ChainComplex,
    c: &ChainComplex,
    f: &[Matrix],
    g: &[Matrix],
    max_degree: usize,
) -> Result<LongExactSequence> {
    let need = max_degree + 1;
    if a.top() < need || b.top() < need || c.top() < need {
        bail!(Range, "long exact sequence through degree {max_degree} needs chains through degree {need}");
    }
    for n in 0..=need {
        if !is_short_exact(a.group(n), b.group(n), c.group(n), &f[n], &g[n]) {
            bail!(Validation, "sequence is not short exact in degree {n}");
        }
    }
    let mut h_a = Vec::new();
    let mut h_b = Vec::new();
    let mut h_c = Vec::new();
    for n in 0..=need {
        h_a.push(a.homology(n)?);
        h_b.push(b.homology(n)?);
        h_c.push(c.homology(n)?);
    }
    let mut f_star = Vec::new();
    let mut g_star = Vec::new();
    for n in 0..=need {
        f_star.push(h_a[n].induced(&f[n], &h_b[n])?);
        g_star.push(h_b[n].induced(&g[n], &h_c[n])?);
    }
    let mut connecting = vec![AbHom::new(h_c[0].group.clone(), AbGroup::zero(), Matrix::zeros(0, h_c[0].group.gens()))];
    for n in 1..=need {
        let mut cols = Vec::new();
        for j in 0..h_c[n].cycles.cols() {
            let z = h_c[n].cycles.col(j);
            let Some(lift) = solve_mod(&g[n], c.group(n), &z) else {
                bail!(Contract, "g_{n} is not surjective");
            };
            let boundary = b.differential(n).mul_vec(&lift);
            let Some(pre) = solve_mod(&f[n - 1], b.group(n - 1), &boundary) else {
                bail!(Contract, "sequence not exact in the middle in degree {}", n - 1);
            };
            cols.push(h_a[n - 1].coords(&pre)?);
        }
        let m = Matrix::from_cols(h_a[n - 1].group.gens(), &cols);
        connecting.push(AbHom::new(h_c[n].group.clone(), h_a[n - 1].group.clone(), m));
    }
    let mut nodes = Vec::new();
    for n in 0..=max_degree {
        // at H_n(A): image of connecting from H_{n+1}(C) equals ker f_*
        nodes.push(ExactnessNode {
            label: format!("H{n}(A)"),
            exact: is_exact_at(&connecting[n + 1], &f_star[n]),
        });
        nodes.push(ExactnessNode { label: format!("H{n}(B)"), exact: is_exact_at(&f_star[n], &g_star[n]) });
        nodes.push(ExactnessNode { label: format!("H{n}(C)"), exact: is_exact_at(&g_star[n], &connecting[n]) });
    }
    Ok(LongExactSequence { h_a, h_b, h_c, f_star, g_star, connecting, nodes })
}

/// Levelwise short exactness of `A --f--> B --g--> C`.
pub fn is_short_exact(a: &AbGroup, b: &AbGroup, c: &AbGroup, f: &Matrix, g: &Matrix) -> bool {
    let fh = AbHom::new(a.clone(), b.clone(), f.clone());
    let gh = AbHom::new(b.clone(), c.clone(), g.clone());
    fh.is_well_defined() && gh.is_well_defined() && fh.is_injective() && is_exact_at(&fh, &gh) && gh.is_surjective()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::group::Canonical;

    fn z() -> AbGroup {
        AbGroup::free(1)
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::new(vec![z(), z()], vec![Matrix::scalar(1, 2)]).unwrap();
        assert_eq!(c.homology(0).unwrap().group.canonical(), Canonical::cyclic(2));
        assert!(c.homology(1).unwrap().group.is_trivial());
    }

    #[test]
    fn zero_differential() {
        let c = ChainComplex::new(vec![z(), z()], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(c.homology(0).unwrap().group.canonical(), Canonical::free(1));
        assert_eq!(c.homology(1).unwrap().group.canonical(), Canonical::free(1));
        let zero = ChainComplex::new(vec![AbGroup::zero(), AbGroup::zero()], vec![Matrix::zeros(0, 0)]).unwrap();
        assert!(zero.homology(0).unwrap().group.is_trivial());
        assert!(zero.homology(2).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let r = ChainComplex::new(vec![z(), z(), z()], vec![Matrix::scalar(1, 1), Matrix::scalar(1, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 --2--> Z/4 : kernel Z/2, cokernel Z/2
        let c = ChainComplex::new(vec![AbGroup::cyclic(4), AbGroup::cyclic(4)], vec![Matrix::scalar(1, 2)]).unwrap();
        assert_eq!(c.homology(0).unwrap().group.canonical(), Canonical::cyclic(2));
        assert_eq!(c.homology(1).unwrap().group.canonical(), Canonical::cyclic(2));
    }

    #[test]
    fn les_of_multiplication_by_two() {
        // 0 -> Z --2--> Z -> Z/2 -> 0 as complexes concentrated in degree 0, padded
        let pad = |g: AbGroup| {
            ChainComplex::new(vec![g, AbGroup::zero(), AbGroup::zero()], vec![Matrix::zeros(1, 0), Matrix::zeros(0, 0)])
                .unwrap()
        };
        let (a, b) = (pad(z()), pad(z()));
        let c = ChainComplex::new(
            vec![AbGroup::cyclic(2), AbGroup::zero(), AbGroup::zero()],
            vec![Matrix::zeros(1, 0), Matrix::zeros(0, 0)],
        )
        .unwrap();
        let f = vec![Matrix::scalar(1, 2), Matrix::zeros(0, 0), Matrix::zeros(0, 0)];
        let g = vec![Matrix::scalar(1, 1), Matrix::zeros(0, 0), Matrix::zeros(0, 0)];
        let les = long_exact_sequence(&a, &b, &c, &f, &g, 0).unwrap();
        assert!(les.is_exact(), "{:?}", les.nodes);
        // the 2x2 fails: wrong g kills exactness
        let g_bad = vec![Matrix::scalar(1, 0), Matrix::zeros(0, 0), Matrix::zeros(0, 0)];
        assert!(long_exact_sequence(&a, &b, &c, &f, &g_bad, 0).is_err());
    }
}
