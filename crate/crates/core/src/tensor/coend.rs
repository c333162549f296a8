use num_bigint::BigInt;

use super::TensorFunctor;
use crate::gset::{pullback_tables, GMap, GSet};

/// A representative `(C, γ : C → X_n × S, c ∈ M(C))` of an element of the coend.
#[derive(Clone, Debug)]
pub struct CoendRep {
    pub carrier: GSet,
    /// `γ(p) = (x, s)`.
    pub map: Vec<(usize, usize)>,
    pub coefficient: Vec<BigInt>,
}

/// The identity representative `(X_n × S, id, c)` of an element given in
/// the coordinates of the full level `M(X_n × S)`.
pub fn identity_rep(t: &TensorFunctor, n: usize, s: &GSet, c: Vec<BigInt>) -> CoendRep {
    let lv = t.space.level(n).product(s);
    let map = (0..lv.size()).map(|i| (i / s.size(), i % s.size())).collect();
    CoendRep { carrier: lv, map, coefficient: c }
}

/// `M_*(γ)(c)` in the coordinates of `(X⊗M)(S)_n`.
pub fn normalize_coend_rep(t: &TensorFunctor, n: usize, s: &GSet, rep: &CoendRep) -> Vec<BigInt> {
    let (ls, ev) = t.value(n, s);
    let src = t.m.evaluate(&rep.carrier);
    let map: Vec<Option<usize>> = rep.map.iter().map(|&(x, y)| ls.index(x, y)).collect();
    t.m.push_partial(&src, &ev, &map).mul_vec(&rep.coefficient)
}

/// `f^*` on a representative over `T`: pull the representative back along
/// `id × f`, restrict the coefficient along the projection to `C`, and
/// return the normalized result over `S`.
pub fn transfer_via_pullback(t: &TensorFunctor, n: usize, f: &GMap, rep: &CoendRep) -> Vec<BigInt> {
    let xn = t.space.level(n);
    let (s, tt) = (&f.source, &f.target);
    let xs = xn.product(s);
    let id_f: Vec<usize> = (0..xs.size()).map(|i| (i / s.size()) * tt.size() + f.values[i % s.size()]).collect();
    let gamma: Vec<usize> = rep.map.iter().map(|&(x, y)| x * tt.size() + y).collect();
    let (pts, action) = pullback_tables(&xs, &rep.carrier, &id_f, &gamma);
    let b = GSet::new(s.group().clone(), pts.len(), action).expect("pullback is a G-set");
    let eb = t.m.evaluate(&b);
    let ec = t.m.evaluate(&rep.carrier);
    let proj_c: Vec<usize> = pts.iter().map(|p| p.1).collect();
    let restricted = t.m.pull(&eb, &ec, &proj_c).mul_vec(&rep.coefficient);
    let beta = CoendRep {
        carrier: b,
        map: pts.iter().map(|p| (p.0 / s.size(), p.0 % s.size())).collect(),
        coefficient: restricted,
    };
    normalize_coend_rep(t, n, s, &beta)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;
    use crate::mackey::MackeyFunctor;
    use crate::sgset::Builder;
    use crate::tensor::tensor;

    #[test]
    fn burnside_restriction_by_recipe() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = MackeyFunctor::burnside(g.clone());
        let mut b = Builder::new(g.clone());
        b.add_fixed(0, vec![]);
        let t = tensor(&b.build(1).unwrap(), &a).unwrap();
        let free = GSet::orbit(g.clone(), 0);
        let pi = GMap::to_point(&free);
        let pt = GSet::orbit(g, 1);
        let one = |v: Vec<i64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
        let r1 = transfer_via_pullback(&t, 0, &pi, &identity_rep(&t, 0, &pt, one(vec![1, 0])));
        let r2 = transfer_via_pullback(&t, 0, &pi, &identity_rep(&t, 0, &pt, one(vec![0, 1])));
        assert_eq!((r1, r2), (one(vec![1]), one(vec![2])));
        // tr of 1 ∈ A(C2/e) normalizes to [C2/e]
        let rep = CoendRep { carrier: free, map: vec![(0, 0), (0, 0)], coefficient: one(vec![1]) };
        assert_eq!(normalize_coend_rep(&t, 0, &GSet::orbit(t.group().clone(), 1), &rep), one(vec![0, 1]));
    }
}
