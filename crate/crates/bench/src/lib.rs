//! Fixed inputs for the benchmarks.

use std::sync::Arc;

use pipqr::polynomials::hensel_primary_decompose;
use pipqr::{
    build_additive, code_from_params, decompose_ambient, AdditiveAmbient, AdditiveCode, Ambient, Code, CodeParams,
    Decomposition, GaloisRing, Poly,
};

pub fn z4_bicyclic() -> Ambient {
    let r = GaloisRing::new(2, 2, 1).unwrap();
    Ambient::new(&r, vec![Poly::from_signed(&r, &[1, 0, 1]), Poly::from_signed(&r, &[-1, 0, 0, 0, 0, 0, 0, 1])])
        .unwrap()
}

pub fn z4_bicyclic_decomposition() -> Arc<Decomposition> {
    Arc::new(decompose_ambient(&z4_bicyclic()).unwrap())
}

/// A 512-word code of minimum distance 4.
pub fn z4_bicyclic_code() -> Code {
    code_from_params(&z4_bicyclic_decomposition(), &CodeParams::new(vec![(2, 0), (2, 0), (0, 1)])).unwrap()
}

/// `X^15 - 1` over `Z/8`.
pub fn x15_minus_one() -> Poly {
    let r = GaloisRing::new(2, 3, 1).unwrap();
    let mut c = vec![0; 16];
    c[0] = -1;
    c[15] = 1;
    Poly::from_signed(&r, &c)
}

pub fn hensel(t: &Poly) -> usize {
    hensel_primary_decompose(t).unwrap().factors.len()
}

/// The `[[8, 4, 2]]` code generated by `Z^2 + w Z^3`, `Z = X_1 + 1`.
pub fn quantum_code() -> AdditiveCode {
    let amb: Arc<AdditiveAmbient> = Arc::new(build_additive(&[vec![1, 0, 0, 0, 1], vec![1, 1, 1]]).unwrap());
    let a4 = &amb.a4;
    let z = a4.add(&a4.var(0), &a4.one());
    let w = a4.scale(&a4.one(), &a4.ring().generator());
    let z2 = a4.mul(&z, &z);
    let g = a4.add(&z2, &a4.mul(&w, &a4.mul(&z2, &z)));
    AdditiveCode::from_generators(&amb, vec![g]).unwrap()
}
