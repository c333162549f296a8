use std::fmt;

use super::{MackeyFunctor, OrbitMap};
use crate::exact::{AbGroup, Matrix};
use crate::gset::{pullback_tables, GSet};

/// A diagram on which an identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub kind: &'static str,
    pub maps: Vec<OrbitMap>,
    pub detail: String,
}

impl fmt::Display for SquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub squares: usize,
    pub compositions: usize,
    pub failures: Vec<SquareWitness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn equal_maps(target: &AbGroup, a: &Matrix, b: &Matrix) -> bool {
    target.all_columns_zero(&a.sub(b))
}

impl MackeyFunctor {
    fn describe(&self, m: &OrbitMap) -> String {
        let g = &self.group;
        format!(
            "{}/{} -> {}/{} (eK -> g{}H)",
            g.name(),
            g.class(m.from).label,
            g.name(),
            g.class(m.to).label,
            m.coset
        )
    }

    /// Checks identities, functoriality, additivity on pairs of orbits and
    /// the pullback axiom on every pair of orbit maps with common target.
    pub fn verify_axioms(&self) -> AxiomReport {
        let g = self.group.clone();
        let mut report = AxiomReport::default();
        let orbits: Vec<GSet> = (0..g.class_count()).map(|k| GSet::orbit(g.clone(), k)).collect();
        let evals: Vec<_> = orbits.iter().map(|o| self.evaluate(o)).collect();
        let maps = OrbitMap::all(&g);

        for k in 0..g.class_count() {
            let id: Vec<usize> = (0..orbits[k].size()).collect();
            let v = &self.values[k];
            let n = v.gens();
            let e = &evals[k];
            if !equal_maps(v, &self.push(e, e, &id), &Matrix::identity(n))
                || !equal_maps(v, &self.pull(e, e, &id), &Matrix::identity(n))
            {
                report.failures.push(SquareWitness {
                    kind: "identity",
                    maps: vec![],
                    detail: format!("identity of {}/{}", g.name(), g.class(k).label),
                });
            }
            for h in 0..g.class_count() {
                let (u, _) = GSet::coproduct(&[&orbits[k], &orbits[h]]);
                let want = AbGroup::direct_sum(&[&self.values[k], &self.values[h]]).canonical();
                if self.evaluate(&u).group.canonical() != want {
                    report.failures.push(SquareWitness {
                        kind: "additivity",
                        maps: vec![],
                        detail: format!("{}/{} + {}/{}", g.name(), g.class(k).label, g.name(), g.class(h).label),
                    });
                }
            }
        }

        for a in &maps {
            let av = a.values(&g);
            for b in maps.iter().filter(|b| b.from == a.to) {
                report.compositions += 1;
                let bv = b.values(&g);
                let comp: Vec<usize> = av.iter().map(|&x| bv[x]).collect();
                let (ek, eh, el) = (&evals[a.from], &evals[a.to], &evals[b.to]);
                let push_ok = equal_maps(
                    &self.values[b.to],
                    &self.push(ek, el, &comp),
                    &self.push(eh, el, &bv).mul(&self.push(ek, eh, &av)),
                );
                let pull_ok = equal_maps(
                    &self.values[a.from],
                    &self.pull(ek, el, &comp),
                    &self.pull(ek, eh, &av).mul(&self.pull(eh, el, &bv)),
                );
                if !push_ok || !pull_ok {
                    report.failures.push(SquareWitness {
                        kind: "functoriality",
                        maps: vec![*a, *b],
                        detail: format!("{} then {}", self.describe(a), self.describe(b)),
                    });
                }
            }
        }

        for f in &maps {
            let fv = f.values(&g);
            for h in maps.iter().filter(|h| h.to == f.to) {
                report.squares += 1;
                let hv = h.values(&g);
                let (pts, action) = pullback_tables(&orbits[f.from], &orbits[h.from], &fv, &hv);
                let p = GSet::new(g.clone(), pts.len(), action).expect("pullback of G-sets");
                let ep = self.evaluate(&p);
                let f2: Vec<usize> = pts.iter().map(|q| q.1).collect();
                let h2: Vec<usize> = pts.iter().map(|q| q.0).collect();
                let (ek, ed, el) = (&evals[f.from], &evals[f.to], &evals[h.from]);
                // h^* f_* = f'_* h'^* : M(G/K) → M(G/L)
                let lhs = self.pull(el, ed, &hv).mul(&self.push(ek, ed, &fv));
                let rhs = self.push(&ep, el, &f2).mul(&self.pull(&ep, ek, &h2));
                if !equal_maps(&self.values[h.from], &lhs, &rhs) {
                    report.failures.push(SquareWitness {
                        kind: "pullback square",
                        maps: vec![*f, *h],
                        detail: format!("f = {}, h = {}", self.describe(f), self.describe(h)),
                    });
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grp::FiniteGroup;

    #[test]
    fn burnside_and_constant_pass() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert!(MackeyFunctor::burnside(s3).verify_axioms().passed());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        assert!(MackeyFunctor::constant_z(c2).verify_axioms().passed());
    }

    #[test]
    fn corrupted_transfer_fails() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let m = OrbitMap { from: 0, to: 1, coset: 0 };
        let bad = MackeyFunctor::burnside(c2).with_push(m, Matrix::from_rows(&[vec![0], vec![3]]));
        let r = bad.verify_axioms();
        assert!(!r.passed());
        assert!(r.failures.iter().any(|w| w.kind == "pullback square" && w.maps == vec![m, m]));
    }
}
