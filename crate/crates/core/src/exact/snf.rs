use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{zero_vec, Matrix};

/// Smith normal form `d = u * a * v` with `u`, `v` unimodular and the
/// diagonal of `d` positive with each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                let negq = -q;
                d.add_row_multiple(i, t, &negq);
                u.add_row_multiple(i, t, &negq);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                let negq = -q;
                d.add_col_multiple(j, t, &negq);
                v.add_col_multiple(j, t, &negq);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the trailing block
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { d, u, v, rank: t }
}

/// Reusable solver for `a x = b` over the integers.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    snf: SmithForm,
    rows: usize,
    cols: usize,
}

impl LatticeSolver {
    pub fn new(a: &Matrix) -> Self {
        LatticeSolver { snf: smith_normal_form(a), rows: a.rows(), cols: a.cols() }
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }

    /// Some integer solution of `a x = b`, or `None` if `b` is not in the
    /// column lattice of `a`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let y = self.snf.u.mul_vec(b);
        let mut z = zero_vec(self.cols);
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                let di = &self.snf.d[(i, i)];
                let (q, r) = yi.div_rem(di);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }

    /// Basis of `{x : a x = 0}` as matrix columns.
    pub fn kernel_basis(&self) -> Matrix {
        let idx: Vec<usize> = (self.snf.rank..self.cols).collect();
        self.snf.v.select_cols(&idx)
    }
}

pub fn kernel_basis(a: &Matrix) -> Matrix {
    LatticeSolver::new(a).kernel_basis()
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn image_basis(a: &Matrix) -> Matrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (0..snf.rank).collect();
    a.mul(&snf.v.select_cols(&idx))
}

/// Exact determinant by fraction-free elimination (Bareiss).
pub fn determinant(a: &Matrix) -> BigInt {
    let n = a.rows();
    assert_eq!(n, a.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = val;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(rows)
    }

    fn check(a: &Matrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(determinant(&s.u).abs(), BigInt::one());
        assert_eq!(determinant(&s.v).abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&Matrix::identity(3));
        assert_eq!(s.d, Matrix::identity(3));
        assert_eq!(s.u, Matrix::identity(3));
        assert_eq!(s.v, Matrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&Matrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2,3) must become diag(1,6)
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solver_and_kernel() {
        let a = m(&[vec![2, 4, 6], vec![1, 1, 1]]);
        let sol = LatticeSolver::new(&a);
        let b = vec![BigInt::from(4), BigInt::from(2)];
        let x = sol.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(sol.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
        let k = sol.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn determinant_oracle() {
        assert_eq!(determinant(&m(&[vec![2, 4], vec![6, 8]])), BigInt::from(-8));
        assert_eq!(determinant(&m(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
    }

    proptest::proptest! {
        #[test]
        fn snf_recomposes(entries in proptest::collection::vec(-9i64..10, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<Vec<i64>> = entries.chunks(c).take(r).map(|x| x.to_vec()).collect();
            let a = m(&rows);
            let s = check(&a);
            // product of invariant factors of a square minor-free check: rank agrees with
            // the rank of the diagonal
            proptest::prop_assert!(s.rank <= r.min(c));
        }
    }
}
