use std::fmt;

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElem};

/// Dense univariate polynomial over a Galois ring or finite field.
///
/// Coefficients are ascending with no trailing zeros; the zero polynomial
/// has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: GaloisRing,
    coeffs: Vec<GrElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if self.ring.l() == 1 { c.coeffs()[0].to_string() } else { format!("{:?}", c.coeffs()) };
            match i {
                0 => write!(f, "{cs}")?,
                1 if self.ring.is_one(c) => write!(f, "X")?,
                1 => write!(f, "{cs}*X")?,
                _ if self.ring.is_one(c) => write!(f, "X^{i}")?,
                _ => write!(f, "{cs}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(ring: &GaloisRing, mut coeffs: Vec<GrElem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring: ring.clone(), coeffs }
    }

    /// Polynomial with integer (constant-ring) coefficients, ascending.
    pub fn from_ints(ring: &GaloisRing, coeffs: &[u64]) -> Self {
        Self::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    /// Polynomial from signed integer coefficients, reduced into the ring.
    pub fn from_signed(ring: &GaloisRing, coeffs: &[i64]) -> Self {
        let m = ring.modulus() as i64;
        Self::new(ring, coeffs.iter().map(|&c| ring.from_int(c.rem_euclid(m) as u64)).collect())
    }

    pub fn zero(ring: &GaloisRing) -> Self {
        Poly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &GaloisRing) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &GaloisRing, c: GrElem) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * X^d`.
    pub fn monomial(ring: &GaloisRing, c: GrElem, d: usize) -> Self {
        let mut v = vec![ring.zero(); d];
        v.push(c);
        Self::new(ring, v)
    }

    pub fn x(ring: &GaloisRing) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[GrElem] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> GrElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&GrElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    fn check_same(&self, other: &Poly) {
        assert!(self.ring == other.ring, "polynomials over different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let r = &self.ring;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(r, (0..len).map(|i| r.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let r = &self.ring;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(r, (0..len).map(|i| r.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                r.mul_acc_raw(&mut out[i + j].0, &a.0, &b.0);
            }
        }
        Poly::new(r, out)
    }

    pub fn scale(&self, c: &GrElem) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    pub fn scale_int(&self, c: u64) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|a| self.ring.scale(a, c)).collect())
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(&self.ring), |acc, _| acc.mul(self))
    }

    /// `f = q * d + r` with `deg r < deg d`; the leading coefficient of `d`
    /// must be a unit (monic divisors in particular).
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(d);
        let r = &self.ring;
        let lc = d.lc().ok_or(Error::ZeroPolynomial)?;
        if !r.is_unit(lc) {
            return Err(Error::NonMonicDivisor);
        }
        let lc_inv = if r.is_one(lc) { r.one() } else { r.inverse(lc)? };
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(r), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = r.mul(&rem[i], &lc_inv);
            if r.is_zero(&c) {
                continue;
            }
            let shift = i - dd;
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = r.mul(&c, dj);
                r.sub_assign_raw(&mut rem[shift + j].0, &t.0);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(r, quot), Poly::new(r, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inconsistent)
        }
    }

    pub fn derivative(&self) -> Poly {
        let r = &self.ring;
        Poly::new(r, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| r.scale(c, i as u64)).collect())
    }

    pub fn eval(&self, x: &GrElem) -> GrElem {
        self.ring.eval(&self.coeffs, x)
    }

    /// Reduction modulo `p`, as a polynomial over the residue field.
    pub fn reduce(&self) -> Poly {
        let f = self.ring.residue_field();
        Poly::new(&f, self.coeffs.iter().map(|c| self.ring.reduce(c)).collect())
    }

    /// Coefficientwise lift of a residue-field polynomial into `ring`
    /// (representatives in `[0, p)`).
    pub fn lift_to(&self, ring: &GaloisRing) -> Poly {
        debug_assert!(ring.residue_field() == self.ring);
        Poly::new(ring, self.coeffs.iter().map(|c| ring.lift(c)).collect())
    }

    /// `self / p`; every coefficient must be divisible by `p`.
    pub fn div_p(&self) -> Result<Poly> {
        let r = &self.ring;
        Ok(Poly::new(r, self.coeffs.iter().map(|c| r.div_p(c)).collect::<Result<_>>()?))
    }

    /// Applies a coefficient map into another ring.
    pub fn map(&self, target: &GaloisRing, f: impl Fn(&GrElem) -> GrElem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Monic associate over a field.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale(&self.ring.inverse(lc).expect("field leading coefficient")),
        }
    }

    /// Sort key: degree, then ascending coefficient vectors.
    pub fn sort_key(&self) -> (usize, Vec<Vec<u64>>) {
        (self.coeffs.len(), self.coeffs.iter().map(|c| c.0.clone()).collect())
    }

    /// Ascending coefficients packed as integers.
    pub fn to_packed(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.ring.to_packed(c)).collect()
    }
}

/// Monic gcd over a finite field; `gcd(0, 0) = 0`.
pub fn ff_gcd(f: &Poly, g: &Poly) -> Poly {
    assert!(f.ring().is_field(), "ff_gcd needs a field");
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b).expect("field divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended gcd over a field: returns `(d, s, t)` with `s f + t g = d`, `d` monic.
pub fn ff_ext_gcd(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    let ring = f.ring().clone();
    assert!(ring.is_field(), "ff_ext_gcd needs a field");
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(&ring), Poly::zero(&ring));
    let (mut t0, mut t1) = (Poly::zero(&ring), Poly::one(&ring));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("field divisor");
        (r0, r1) = (r1, r);
        let s2 = s0.sub(&q.mul(&s1));
        (s0, s1) = (s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        (t0, t1) = (t1, t2);
    }
    match r0.lc() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = ring.inverse(lc).expect("nonzero");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}
