use super::chains::{chains_at, include, project};
use crate::error::Result;
use crate::exact::{long_exact_sequence, LongExactSequence, Matrix};
use crate::gset::GSet;
use crate::tensor::{TensorFunctor, TensorSes};

fn normalized_map(src: &TensorFunctor, tgt: &TensorFunctor, full: &Matrix, n: usize, s: &GSet) -> Matrix {
    project(tgt, n, s).mul(full).mul(&include(src, n, s))
}

/// Long exact homology sequence of a levelwise short exact sequence at one
/// orbit, checked for exactness at every node through `max_degree`.
pub fn homology_les(ses: &TensorSes, class_id: usize, max_degree: usize) -> Result<LongExactSequence> {
    let s = GSet::orbit(ses.a.group().clone(), class_id);
    let (a, b, c) = (chains_at(&ses.a, &s), chains_at(&ses.b, &s), chains_at(&ses.c, &s));
    let top = ses.a.depth();
    let f: Vec<Matrix> =
        (0..=top).map(|n| normalized_map(&ses.a, &ses.b, &ses.f[n].components[class_id], n, &s)).collect();
    let g: Vec<Matrix> =
        (0..=top).map(|n| normalized_map(&ses.b, &ses.c, &ses.g[n].components[class_id], n, &s)).collect();
    long_exact_sequence(&a, &b, &c, &f, &g, max_degree)
}
