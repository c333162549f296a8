//! Unit-pivot elimination for large free complexes where only the
//! isomorphism type of homology is needed.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::Canonical;
use super::matrix::Matrix;
use super::snf::smith_normal_form;

#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        let v = v.into();
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.add_block(r, c, &Matrix::from_rows(&[vec![v.clone()]]));
        }
        m
    }

    /// Rank and invariant factors greater than one.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
            col_rows[c].insert(r);
        }
        let mut alive_rows = vec![true; self.rows];
        let mut alive_cols = vec![true; self.cols];
        let mut rank = 0;
        loop {
            // pick the unit pivot whose column has fewest entries
            let mut pivot: Option<(usize, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                if !alive_rows[r] {
                    continue;
                }
                for (&c, v) in row {
                    if v.abs().is_one() {
                        let cost = col_rows[c].len() * row.len();
                        if pivot.is_none_or(|(_, _, k)| cost < k) {
                            pivot = Some((r, c, cost));
                        }
                    }
                }
            }
            let Some((pr, pc, _)) = pivot else { break };
            let prow = std::mem::take(&mut rows[pr]);
            let pv = prow[&pc].clone();
            let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in others {
                let factor = -(&rows[r][&pc] * &pv);
                for (&c, v) in &prow {
                    let e = rows[r].entry(c).or_insert_with(BigInt::zero);
                    *e += &factor * v;
                    if e.is_zero() {
                        rows[r].remove(&c);
                        col_rows[c].remove(&r);
                    } else {
                        col_rows[c].insert(r);
                    }
                }
            }
            for &c in prow.keys() {
                col_rows[c].remove(&pr);
            }
            // the pivot column is now zero outside the pivot row; drop both
            for r in col_rows[pc].clone() {
                rows[r].remove(&pc);
            }
            col_rows[pc].clear();
            alive_rows[pr] = false;
            alive_cols[pc] = false;
            rank += 1;
        }
        let live_rows: Vec<usize> = (0..self.rows).filter(|&r| alive_rows[r] && !rows[r].is_empty()).collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&c| alive_cols[c] && !col_rows[c].is_empty()).collect();
        if live_rows.is_empty() {
            return (rank, vec![]);
        }
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, v) in &rows[r] {
                dense[i][col_pos[c]] = v.clone();
            }
        }
        let snf = smith_normal_form(&Matrix::from_rows(&dense));
        let factors: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        (rank + snf.rank, factors)
    }
}

/// Homology of a complex of free groups `Z^{dims[n]}`, with
/// `diffs[k] : Z^{dims[k+1]} -> Z^{dims[k]}`.
pub fn free_homology(dims: &[usize], diffs: &[SparseMatrix]) -> Vec<Canonical> {
    let inv: Vec<(usize, Vec<BigInt>)> = diffs.iter().map(|d| d.invariants()).collect();
    (0..dims.len())
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { inv[n - 1].0 };
            let (in_rank, torsion) = inv.get(n).cloned().unwrap_or((0, vec![]));
            Canonical { free_rank: dims[n] - out_rank - in_rank, torsion }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ChainComplex;
    use crate::exact::AbGroup;
    use proptest::prelude::*;

    #[test]
    fn two_by_two() {
        let mut m = SparseMatrix::new(2, 2);
        m.add(0, 0, 2);
        m.add(0, 1, 4);
        m.add(1, 0, 6);
        m.add(1, 1, 8);
        assert_eq!(m.invariants(), (2, vec![BigInt::from(2), BigInt::from(4)]));
    }

    #[test]
    fn circle_boundary() {
        // triangle boundary: 3 vertices, 3 edges
        let mut d = SparseMatrix::new(3, 3);
        for (e, (a, b)) in [(0, 1), (1, 2), (0, 2)].into_iter().enumerate() {
            d.add(b, e, 1);
            d.add(a, e, -1);
        }
        let h = free_homology(&[3, 3], &[d]);
        assert_eq!(h, vec![Canonical::free(1), Canonical::free(1)]);
    }

    proptest! {
        #[test]
        fn matches_dense(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let mut s = SparseMatrix::new(3, 4);
            for (k, v) in entries.iter().enumerate() {
                s.add(k / 4, k % 4, *v);
            }
            let dense = s.to_dense();
            let snf = smith_normal_form(&dense);
            let want: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
            prop_assert_eq!(s.invariants(), (snf.rank, want));
            let c = ChainComplex::new(vec![AbGroup::free(3), AbGroup::free(4)], vec![dense]).unwrap();
            let h = free_homology(&[3, 4], &[s]);
            prop_assert_eq!(&h[0], &c.homology(0).unwrap().group.canonical());
            prop_assert_eq!(&h[1], &c.homology(1).unwrap().group.canonical());
        }
    }
}
