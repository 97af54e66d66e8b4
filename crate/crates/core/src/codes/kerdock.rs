use std::collections::HashSet;

use crate::ambient::{Ambient, AmbientSpec, MultiPoly};
use crate::error::{Error, Result};
use crate::galois_ring::{is_prime, GaloisExtension, GaloisRing, GrElem};
use crate::polynomials::Poly;

/// The trace-defined code over `Z/4` in `Z/4[X_1, X_2]/<X_1^{2^m-1} - 1, X_2^2 - 1>`.
#[derive(Clone, Debug)]
pub struct KerdockFixture {
    pub m: usize,
    pub spec: AmbientSpec,
    pub ambient: Ambient,
    pub extension: GaloisExtension,
    /// Generator of the Teichmüller group of `GR(4, m)`.
    pub lambda: GrElem,
    pub eta: u64,
    /// `codeword(x^s, 0)` for the power basis of `GR(4, m)`, then `codeword(0, 1)`.
    pub generators: Vec<MultiPoly>,
}

pub fn generalized_kerdock(m: usize) -> Result<KerdockFixture> {
    if !is_prime(m as u64) {
        return Err(Error::NotPrime(m as u64));
    }
    if m > 13 {
        return Err(Error::InvalidParameter(format!("m = {m} gives too many positions")));
    }
    let z4 = GaloisRing::new(2, 2, 1)?;
    let len = (1usize << m) - 1;
    let mut t1 = vec![0u64; len + 1];
    t1[0] = 3;
    t1[len] = 1;
    let t1 = Poly::new(&z4, t1.iter().map(|&c| z4.from_int(c)).collect());
    let t2 = Poly::from_signed(&z4, &[-1, 0, 1]);
    let spec = AmbientSpec::new(&z4, vec![t1, t2]);
    let ambient = spec.build()?;
    let extension = GaloisExtension::new(&z4, m)?;
    let lambda = extension.ext().teichmuller_generator();
    let mut fixture = KerdockFixture { m, spec, ambient, extension, lambda, eta: 3, generators: Vec::new() };
    let ext = fixture.extension.ext().clone();
    let mut gens: Vec<MultiPoly> = (0..m)
        .map(|s| {
            let mut c = vec![0; m];
            c[s] = 1;
            fixture.codeword(&ext.elem(c).expect("basis element"), 0)
        })
        .collect::<Result<_>>()?;
    gens.push(fixture.codeword(&ext.zero(), 1)?);
    fixture.generators = gens;
    Ok(fixture)
}

impl KerdockFixture {
    /// `sum_{i_1, i_2} (Tr(xi lambda^{i_1}) + beta) eta^{i_2} X_1^{i_1} X_2^{i_2}`.
    pub fn codeword(&self, xi: &GrElem, beta: u64) -> Result<MultiPoly> {
        let ext = self.extension.ext();
        let z4 = self.extension.base();
        let len = (1usize << self.m) - 1;
        let mut coeffs = vec![z4.zero(); self.ambient.positions()];
        let mut lam = ext.one();
        for i1 in 0..len {
            let tr = self.extension.trace(&ext.mul(xi, &lam))?;
            let base = z4.add(&tr, &z4.from_int(beta));
            let mut eta = z4.one();
            for i2 in 0..2 {
                coeffs[self.ambient.position(&[i1, i2])] = z4.mul(&base, &eta);
                eta = z4.scale(&eta, self.eta);
            }
            lam = ext.mul(&lam, &self.lambda);
        }
        self.ambient.from_coeffs(&coeffs)
    }

    /// Number of parameter pairs `(xi, beta)`: `4^m * 4`.
    pub fn parameter_count(&self) -> u64 {
        4u64.pow(self.m as u32 + 1)
    }

    /// Distinct codewords over all parameter pairs.
    pub fn image(&self) -> Result<HashSet<MultiPoly>> {
        let ext = self.extension.ext();
        let mut out = HashSet::new();
        for xi in ext.elements() {
            for beta in 0..4 {
                out.insert(self.codeword(&xi, beta)?);
            }
        }
        Ok(out)
    }
}
