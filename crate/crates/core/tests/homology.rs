use std::sync::Arc;

use eqmack::exact::Canonical;
use eqmack::grp::FiniteGroup;
use eqmack::homotopy::normalized_chains;
use eqmack::mackey::MackeyFunctor;
use eqmack::sgset::{Based, Representation};
use eqmack::tensor::reduced_tensor;

fn h(x: &Based, m: &MackeyFunctor, class_id: usize, n: usize) -> Canonical {
    normalized_chains(&reduced_tensor(x, m).unwrap()).homology_at(class_id, n).unwrap().group.canonical()
}

#[test]
fn underlying_orbit_sees_the_underlying_space() {
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let sigma = Representation::Sign.sphere(&c2, 4).unwrap();
    let spaces = [
        (c2.clone(), sigma.smash(&sigma)),
        (c2.clone(), Representation::Trivial(1).sphere(&c2, 4).unwrap().smash(&sigma)),
        (c3.clone(), Representation::Rotation(3, 1).sphere(&c3, 4).unwrap()),
    ];
    for (g, x) in spaces {
        let e = g.find_class("e").unwrap();
        let underlying = x.reduced_homology();
        for n in 0..3 {
            assert_eq!(h(&x, &MackeyFunctor::constant_z(g.clone()), e, n), underlying[n], "{} degree {n}", g.name());
        }
    }
}

#[test]
fn wedge_is_additive() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let a = Representation::Sign.sphere(&g, 4).unwrap();
    let b = Representation::Trivial(1).sphere(&g, 4).unwrap();
    let w = a.wedge(&b);
    for m in [MackeyFunctor::burnside(g.clone()), MackeyFunctor::constant_z(g.clone())] {
        for c in 0..g.class_count() {
            for n in 0..3 {
                assert_eq!(h(&w, &m, c, n), h(&a, &m, c, n).direct_sum(&h(&b, &m, c, n)));
            }
        }
    }
}

#[test]
fn rotation_sphere_with_constant_integers() {
    // cells: a fixed vertex, then C3/e in dimensions 1 and 2; at C3/C3 the
    // complex is Z --0--> Z --3--> Z
    let g = Arc::new(FiniteGroup::cyclic(3));
    let x = Representation::Rotation(3, 1).sphere(&g, 4).unwrap();
    let z = MackeyFunctor::constant_z(g.clone());
    let top = g.find_class("C3").unwrap();
    let want = [Canonical::cyclic(3), Canonical::zero(), Canonical::free(1)];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(&h(&x, &z, top, n), w, "degree {n}");
    }
}
