//! The quotient ring `R[X_1..X_r]/<t_1(X_1),..,t_r(X_r)>` over a Galois ring,
//! its classification, and its decomposition into finite chain rings.

mod chain;
mod decompose;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElem};
use crate::polynomials::{pir_check, PirReport, Poly};

pub use chain::{verify_chain_summand, ChainCertificate, EXHAUSTIVE_CHAIN_LIMIT};
pub use decompose::{decompose_ambient, semisimple_decompose, ClassSummand, Decomposition, SummandDescriptor};

/// An element of an ambient: the dense residue tensor, row-major with `X_1`
/// outermost, each entry `l` ring coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly(pub(crate) Vec<u64>);

impl MultiPoly {
    pub fn raw(&self) -> &[u64] {
        &self.0
    }
}

/// Ring and defining polynomials, in the caller's variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpec {
    pub ring: GaloisRing,
    pub polys: Vec<Poly>,
}

impl AmbientSpec {
    pub fn new(ring: &GaloisRing, polys: Vec<Poly>) -> Self {
        AmbientSpec { ring: ring.clone(), polys }
    }

    /// Polynomials given as ascending integer arrays (packed for `l > 1`).
    pub fn from_ints(ring: &GaloisRing, polys: &[Vec<u64>]) -> Result<Self> {
        let polys = polys
            .iter()
            .map(|c| Ok(Poly::new(ring, c.iter().map(|&x| ring.from_packed(x)).collect::<Result<_>>()?)))
            .collect::<Result<_>>()?;
        Ok(AmbientSpec { ring: ring.clone(), polys })
    }

    pub fn build(&self) -> Result<Ambient> {
        Ambient::new(&self.ring, self.polys.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbientClass {
    Semisimple,
    ModularPir,
    ModularNonPir,
}

impl fmt::Display for AmbientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbientClass::Semisimple => "semisimple",
            AmbientClass::ModularPir => "modular-pir",
            AmbientClass::ModularNonPir => "modular-non-pir",
        })
    }
}

struct AmbientData {
    ring: GaloisRing,
    polys: Vec<Poly>,
    degs: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
    // -t_i coefficients below the leading one
    neg_polys: Vec<Vec<GrElem>>,
    // offsets of each position inside the unreduced product tensor
    full_offsets: Vec<usize>,
    full_len: usize,
}

/// The ambient ring; cheap to clone.
#[derive(Clone)]
pub struct Ambient(Arc<AmbientData>);

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ring == other.0.ring && self.0.polys == other.0.polys)
    }
}

impl Eq for Ambient {}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.0.ring)?;
        for i in 0..self.0.polys.len() {
            write!(f, "{}X{}", if i > 0 { "," } else { "" }, i + 1)?;
        }
        write!(f, "]/<")?;
        for (i, t) in self.0.polys.iter().enumerate() {
            write!(f, "{}{}", if i > 0 { ", " } else { "" }, t.to_string().replace('X', &format!("X{}", i + 1)))?;
        }
        write!(f, ">")
    }
}

impl Ambient {
    pub fn new(ring: &GaloisRing, polys: Vec<Poly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidAmbient("need at least one variable".into()));
        }
        for (i, t) in polys.iter().enumerate() {
            if t.ring() != ring {
                return Err(Error::RingMismatch(format!("t_{} is over {}", i + 1, t.ring())));
            }
            if !t.is_monic() || t.deg() == 0 {
                return Err(Error::InvalidAmbient(format!("t_{} = {t} must be monic of degree >= 1", i + 1)));
            }
        }
        let degs: Vec<usize> = polys.iter().map(Poly::deg).collect();
        let len = degs.iter().try_fold(1usize, |acc, &e| acc.checked_mul(e)).filter(|&n| n <= 1 << 20);
        let Some(len) = len else {
            return Err(Error::InvalidAmbient("too many positions".into()));
        };
        let mut strides = vec![1; degs.len()];
        let mut full_strides = vec![1; degs.len()];
        for i in (0..degs.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * degs[i + 1];
            full_strides[i] = full_strides[i + 1] * (2 * degs[i + 1] - 1);
        }
        let full_len = degs.iter().map(|e| 2 * e - 1).product();
        let full_offsets =
            (0..len).map(|pos| (0..degs.len()).map(|i| (pos / strides[i]) % degs[i] * full_strides[i]).sum()).collect();
        let neg_polys = polys.iter().map(|t| t.coeffs()[..t.deg()].iter().map(|c| ring.neg(c)).collect()).collect();
        Ok(Ambient(Arc::new(AmbientData {
            ring: ring.clone(),
            polys,
            degs,
            strides,
            len,
            neg_polys,
            full_offsets,
            full_len,
        })))
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.0.ring
    }

    pub fn polys(&self) -> &[Poly] {
        &self.0.polys
    }

    pub fn num_vars(&self) -> usize {
        self.0.degs.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0.degs
    }

    /// Number of coefficient positions `N = prod e_i`.
    pub fn positions(&self) -> usize {
        self.0.len
    }

    /// `log_p |R| = n l N`.
    pub fn log_p_size(&self) -> u64 {
        self.0.ring.n() as u64 * self.0.ring.l() as u64 * self.0.len as u64
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.0.ring.p()).pow(self.log_p_size() as u32)
    }

    pub fn position(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.0.strides).map(|(e, s)| e * s).sum()
    }

    pub fn exponents(&self, pos: usize) -> Vec<usize> {
        self.0.strides.iter().zip(&self.0.degs).map(|(s, e)| pos / s % e).collect()
    }

    fn width(&self) -> usize {
        self.0.ring.l()
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly(vec![0; self.0.len * self.width()])
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(&self.0.ring.one())
    }

    pub fn constant(&self, c: &GrElem) -> MultiPoly {
        let mut x = self.zero();
        x.0[..self.width()].copy_from_slice(c.coeffs());
        x
    }

    pub fn from_int(&self, c: u64) -> MultiPoly {
        self.constant(&self.0.ring.from_int(c))
    }

    /// `f(X_var)` reduced modulo `t_var`.
    pub fn from_univariate(&self, var: usize, f: &Poly) -> Result<MultiPoly> {
        if f.ring() != self.ring() {
            return Err(Error::RingMismatch(format!("{f} is not over {}", self.ring())));
        }
        let r = f.rem(&self.0.polys[var])?;
        let mut x = self.zero();
        let l = self.width();
        for (t, c) in r.coeffs().iter().enumerate() {
            let at = t * self.0.strides[var] * l;
            x.0[at..at + l].copy_from_slice(c.coeffs());
        }
        Ok(x)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        let ring = self.ring();
        self.from_univariate(i, &Poly::x(ring)).expect("same ring")
    }

    pub fn var_pow(&self, i: usize, t: usize) -> MultiPoly {
        let ring = self.ring();
        self.from_univariate(i, &Poly::monomial(ring, ring.one(), t)).expect("same ring")
    }

    pub fn from_coeffs(&self, coeffs: &[GrElem]) -> Result<MultiPoly> {
        if coeffs.len() != self.0.len {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.0.len,
                coeffs.len()
            )));
        }
        let mut data = Vec::with_capacity(self.0.len * self.width());
        for c in coeffs {
            self.ring().check(c)?;
            data.extend_from_slice(c.coeffs());
        }
        Ok(MultiPoly(data))
    }

    /// Flat tensor of packed integers (row-major, `X_1` outermost).
    pub fn from_packed(&self, coeffs: &[u64]) -> Result<MultiPoly> {
        let elems = coeffs.iter().map(|&c| self.ring().from_packed(c)).collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&elems)
    }

    /// Sum of terms `c X^e` with packed coefficients; every exponent must be
    /// below the degree of its variable.
    pub fn from_terms(&self, terms: &[(Vec<usize>, u64)]) -> Result<MultiPoly> {
        let ring = self.ring();
        let mut out = self.zero();
        let l = self.width();
        for (exps, c) in terms {
            if exps.len() != self.num_vars() {
                return Err(Error::DimensionMismatch(format!(
                    "term has {} exponents, ambient has {} variables",
                    exps.len(),
                    self.num_vars()
                )));
            }
            if let Some(i) = (0..exps.len()).find(|&i| exps[i] >= self.0.degs[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {} of X_{} exceeds degree {} of t_{}",
                    exps[i],
                    i + 1,
                    self.0.degs[i],
                    i + 1
                )));
            }
            let c = ring.from_packed(*c)?;
            let pos = self.position(exps);
            let sum = ring.add(&GrElem(out.0[pos * l..(pos + 1) * l].to_vec()), &c);
            out.0[pos * l..(pos + 1) * l].copy_from_slice(sum.coeffs());
        }
        Ok(out)
    }

    pub fn to_packed(&self, x: &MultiPoly) -> Vec<u64> {
        self.coeffs(x).iter().map(|c| self.ring().to_packed(c)).collect()
    }

    pub fn coeff(&self, x: &MultiPoly, pos: usize) -> GrElem {
        let l = self.width();
        GrElem(x.0[pos * l..(pos + 1) * l].to_vec())
    }

    pub fn coeffs(&self, x: &MultiPoly) -> Vec<GrElem> {
        x.0.chunks(self.width()).map(|c| GrElem(c.to_vec())).collect()
    }

    pub fn contains(&self, x: &MultiPoly) -> bool {
        x.0.len() == self.0.len * self.width() && x.0.iter().all(|&c| c < self.ring().modulus())
    }

    pub fn check(&self, x: &MultiPoly) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("element does not belong to {self}")))
        }
    }

    pub fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    pub fn add_assign(&self, a: &mut MultiPoly, b: &MultiPoly) {
        self.ring().add_assign_raw(&mut a.0, &b.0);
    }

    pub fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut out = a.clone();
        self.sub_assign(&mut out, b);
        out
    }

    pub fn sub_assign(&self, a: &mut MultiPoly, b: &MultiPoly) {
        self.ring().sub_assign_raw(&mut a.0, &b.0);
    }

    pub fn neg(&self, a: &MultiPoly) -> MultiPoly {
        self.sub(&self.zero(), a)
    }

    pub fn scale_int(&self, a: &MultiPoly, c: u64) -> MultiPoly {
        let mut out = a.clone();
        self.ring().scale_assign_raw(&mut out.0, c);
        out
    }

    /// Multiplication by a constant of the coefficient ring.
    pub fn scale(&self, a: &MultiPoly, c: &GrElem) -> MultiPoly {
        let l = self.width();
        let mut out = self.zero();
        for (o, x) in out.0.chunks_mut(l).zip(a.0.chunks(l)) {
            self.ring().mul_acc_raw(o, x, c.coeffs());
        }
        out
    }

    pub fn is_zero(&self, a: &MultiPoly) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &MultiPoly) -> bool {
        *a == self.one()
    }

    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let d = &*self.0;
        let l = self.width();
        let ring = &d.ring;
        let nz_b: Vec<usize> = (0..d.len).filter(|&j| b.0[j * l..(j + 1) * l].iter().any(|&c| c != 0)).collect();
        let mut full = vec![0u64; d.full_len * l];
        for ia in 0..d.len {
            let xa = &a.0[ia * l..(ia + 1) * l];
            if xa.iter().all(|&c| c == 0) {
                continue;
            }
            let oa = d.full_offsets[ia];
            for &ib in &nz_b {
                let at = (oa + d.full_offsets[ib]) * l;
                ring.mul_acc_raw(&mut full[at..at + l], xa, &b.0[ib * l..(ib + 1) * l]);
            }
        }
        self.reduce_full(full)
    }

    // Reduces an unreduced product tensor axis by axis.
    fn reduce_full(&self, mut buf: Vec<u64>) -> MultiPoly {
        let d = &*self.0;
        let l = self.width();
        let mut dims: Vec<usize> = d.degs.iter().map(|e| 2 * e - 1).collect();
        let mut tmp = vec![0u64; l];
        for axis in 0..dims.len() {
            let e = d.degs[axis];
            let da = dims[axis];
            if da == e {
                continue;
            }
            let inner: usize = dims[axis + 1..].iter().product();
            let outer: usize = dims[..axis].iter().product();
            for o in 0..outer {
                for k in (e..da).rev() {
                    for i in 0..inner {
                        let src = ((o * da + k) * inner + i) * l;
                        if buf[src..src + l].iter().all(|&c| c == 0) {
                            continue;
                        }
                        tmp.copy_from_slice(&buf[src..src + l]);
                        buf[src..src + l].fill(0);
                        for (j, nt) in d.neg_polys[axis].iter().enumerate() {
                            let dst = ((o * da + k - e + j) * inner + i) * l;
                            d.ring.mul_acc_raw(&mut buf[dst..dst + l], &tmp, nt.coeffs());
                        }
                    }
                }
            }
            let mut out = vec![0u64; outer * e * inner * l];
            let block = inner * l;
            for o in 0..outer {
                for k in 0..e {
                    let s = (o * da + k) * block;
                    let t = (o * e + k) * block;
                    out[t..t + block].copy_from_slice(&buf[s..s + block]);
                }
            }
            buf = out;
            dims[axis] = e;
        }
        MultiPoly(buf)
    }

    pub fn pow(&self, a: &MultiPoly, mut e: u128) -> MultiPoly {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Number of nonzero coefficient positions.
    pub fn weight(&self, a: &MultiPoly) -> usize {
        let l = self.width();
        if l == 1 {
            return a.0.iter().filter(|&&c| c != 0).count();
        }
        a.0.chunks(l).filter(|c| c.iter().any(|&x| x != 0)).count()
    }

    /// The ambient over the residue field with the reduced polynomials.
    pub fn residue_ambient(&self) -> Ambient {
        if self.ring().is_field() {
            return self.clone();
        }
        Ambient::new(&self.ring().residue_field(), self.0.polys.iter().map(Poly::reduce).collect())
            .expect("reduction keeps monic polynomials")
    }

    /// Coefficientwise reduction modulo `p`, as an element of [`Self::residue_ambient`].
    pub fn reduce(&self, a: &MultiPoly) -> MultiPoly {
        let p = self.ring().p();
        MultiPoly(a.0.iter().map(|c| c % p).collect())
    }

    /// `a / p`; every coefficient must be divisible by `p`.
    pub fn div_p(&self, a: &MultiPoly) -> Result<MultiPoly> {
        let p = self.ring().p();
        if a.0.iter().any(|c| c % p != 0) {
            return Err(Error::NotDivisibleByP);
        }
        Ok(MultiPoly(a.0.iter().map(|c| c / p).collect()))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> MultiPoly {
        let m = self.ring().modulus();
        MultiPoly((0..self.0.len * self.width()).map(|_| rng.gen_range(0..m)).collect())
    }

    /// `Z/p^nZ`-basis of the ambient: `x^s X^a` over positions and power-basis indices.
    pub fn module_basis(&self) -> Vec<MultiPoly> {
        let l = self.width();
        (0..self.0.len * l)
            .map(|i| {
                let mut v = self.zero();
                v.0[i] = 1;
                v
            })
            .collect()
    }

    /// Classifies the ambient as semisimple, modular principal, or modular non-principal.
    pub fn classify(&self) -> Result<(AmbientClass, PirReport)> {
        let report = pir_check(self.ring(), &self.0.polys)?;
        let class = if report.non_square_free.is_empty() {
            AmbientClass::Semisimple
        } else if report.is_pir {
            AmbientClass::ModularPir
        } else {
            AmbientClass::ModularNonPir
        };
        Ok((class, report))
    }
}

pub fn classify_ambient(spec: &AmbientSpec) -> Result<AmbientClass> {
    Ok(spec.build()?.classify()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn bicyclic() -> Ambient {
        let z4 = GaloisRing::new(2, 2, 1).unwrap();
        Ambient::new(&z4, vec![Poly::from_ints(&z4, &[1, 0, 1]), Poly::from_signed(&z4, &[-1, 0, 0, 0, 0, 0, 0, 1])])
            .unwrap()
    }

    // oracle: expand term by term; X^{a+b} reduces to an outer product of
    // univariate remainders, built without the ambient multiplication
    fn naive_mul(amb: &Ambient, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let ring = amb.ring();
        let mut acc = amb.zero();
        for i in 0..amb.positions() {
            for j in 0..amb.positions() {
                let c = ring.mul(&amb.coeff(a, i), &amb.coeff(b, j));
                if ring.is_zero(&c) {
                    continue;
                }
                let (ei, ej) = (amb.exponents(i), amb.exponents(j));
                let rems: Vec<Poly> = (0..amb.num_vars())
                    .map(|v| Poly::monomial(ring, ring.one(), ei[v] + ej[v]).rem(&amb.polys()[v]).unwrap())
                    .collect();
                let coeffs: Vec<GrElem> = (0..amb.positions())
                    .map(|pos| {
                        let e = amb.exponents(pos);
                        (0..amb.num_vars()).fold(c.clone(), |acc, v| ring.mul(&acc, &rems[v].coeff(e[v])))
                    })
                    .collect();
                amb.add_assign(&mut acc, &amb.from_coeffs(&coeffs).unwrap());
            }
        }
        acc
    }

    #[test]
    fn bicyclic_sizes_and_units() {
        let amb = bicyclic();
        assert_eq!(amb.positions(), 14);
        assert_eq!(amb.cardinality(), BigUint::from(4u32).pow(14));
        let x1 = amb.var(0);
        // (X1 - 1)^2 = 2 X1 modulo X1^2 + 1
        let d = amb.sub(&x1, &amb.one());
        assert_eq!(amb.mul(&d, &d), amb.scale_int(&x1, 2));
        assert_eq!(amb.pow(&amb.var(1), 7), amb.one());
        assert_eq!(amb.pow(&x1, 4), amb.one());
    }

    #[test]
    fn linear_ambient_is_the_coefficient_ring() {
        let z9 = GaloisRing::new(3, 2, 1).unwrap();
        let amb = Ambient::new(&z9, vec![Poly::from_signed(&z9, &[-1, 1])]).unwrap();
        assert_eq!(amb.positions(), 1);
        assert_eq!(amb.var(0), amb.one());
        let a = amb.from_int(5);
        assert_eq!(amb.mul(&a, &a), amb.from_int(7));
    }

    #[test]
    fn multiplication_matches_naive_reduction_and_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gr = GaloisRing::new(2, 2, 2).unwrap();
        let amb2 =
            Ambient::new(&gr, vec![Poly::from_ints(&gr, &[1, 0, 1]), Poly::from_ints(&gr, &[1, 1, 0, 1])]).unwrap();
        for amb in [bicyclic(), amb2] {
            for _ in 0..200 {
                let (a, b, c) = (amb.random(&mut rng), amb.random(&mut rng), amb.random(&mut rng));
                assert_eq!(amb.mul(&amb.mul(&a, &b), &c), amb.mul(&a, &amb.mul(&b, &c)));
                assert_eq!(amb.mul(&a, &amb.add(&b, &c)), amb.add(&amb.mul(&a, &b), &amb.mul(&a, &c)));
            }
            for _ in 0..5 {
                let (a, b) = (amb.random(&mut rng), amb.random(&mut rng));
                assert_eq!(amb.mul(&a, &b), naive_mul(&amb, &a, &b));
            }
        }
    }

    #[test]
    fn classification() {
        let amb = bicyclic();
        assert_eq!(amb.classify().unwrap().0, AmbientClass::ModularPir);
        let z4 = GaloisRing::new(2, 2, 1).unwrap();
        let kerdock = Ambient::new(
            &z4,
            vec![Poly::from_signed(&z4, &[-1, 0, 0, 0, 0, 0, 0, 1]), Poly::from_signed(&z4, &[-1, 0, 1])],
        )
        .unwrap();
        assert_eq!(kerdock.classify().unwrap().0, AmbientClass::ModularNonPir);
        let f2 = GaloisRing::new(2, 1, 1).unwrap();
        let add = Ambient::new(&f2, vec![Poly::from_ints(&f2, &[1, 0, 1]), Poly::from_ints(&f2, &[1, 1, 1])]).unwrap();
        assert_eq!(add.classify().unwrap().0, AmbientClass::ModularPir);
        let ss = Ambient::new(&z4, vec![Poly::from_signed(&z4, &[-1, 0, 0, 0, 0, 0, 0, 1])]).unwrap();
        assert_eq!(ss.classify().unwrap().0, AmbientClass::Semisimple);
    }

    #[test]
    fn abelian_modular_over_non_fields_is_never_principal() {
        // X_i^{e_i} - 1 with p | e_i for some i, n > 1
        for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
            let ring = GaloisRing::new(p, n, 1).unwrap();
            let m = ring.modulus() as i64;
            for e in [p as usize, 2 * p as usize] {
                let mut c = vec![0i64; e + 1];
                c[0] = m - 1;
                c[e] = 1;
                let t = Poly::from_signed(&ring, &c);
                for extra in [None, Some(3usize)] {
                    let mut polys = vec![t.clone()];
                    if let Some(d) = extra.filter(|d| !(*d as u64).is_multiple_of(p)) {
                        let mut c = vec![0i64; d + 1];
                        c[0] = m - 1;
                        c[d] = 1;
                        polys.push(Poly::from_signed(&ring, &c));
                    }
                    let amb = Ambient::new(&ring, polys).unwrap();
                    assert_eq!(amb.classify().unwrap().0, AmbientClass::ModularNonPir, "p={p} n={n} e={e}");
                }
            }
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        let z4 = GaloisRing::new(2, 2, 1).unwrap();
        assert!(Ambient::new(&z4, vec![]).is_err());
        assert!(Ambient::new(&z4, vec![Poly::from_ints(&z4, &[1, 2])]).is_err());
        assert!(Ambient::new(&z4, vec![Poly::from_ints(&z4, &[3])]).is_err());
    }
}
