//! Galois rings `GR(p^n, l) = (Z/p^nZ)[x]/<h(x)>` and their residue fields.
//!
//! Elements are dense coefficient vectors in the power basis of `x`, with
//! canonical representatives in `[0, p^n)`. A finite field `F_{p^l}` is the
//! case `n = 1` and uses the same element type.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;

/// An element of a Galois ring, `l` coefficients in ascending powers of `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrElem(pub(crate) Vec<u64>);

impl GrElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.0
    }
}

#[derive(PartialEq, Eq, Hash)]
struct RingData {
    p: u64,
    n: u32,
    l: usize,
    modulus: u64,
    h: Vec<u64>,
}

/// The Galois ring `GR(p^n, l)` with a fixed basic irreducible modulus.
///
/// Cheap to clone; all clones share the same parameters.
#[derive(Clone)]
pub struct GaloisRing(Arc<RingData>);

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for GaloisRing {}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.0.p, self.0.n, self.0.l)
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.residue_size())
        } else {
            write!(f, "GR({}, {})", self.0.modulus, self.0.l)
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// Remainder of `a` modulo the monic `b` over F_p; vectors ascending, trimmed.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most `deg/2`.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `l` over F_p, where
/// the order compares ascending coefficient vectors from the constant term.
fn smallest_irreducible(p: u64, l: usize) -> Vec<u64> {
    if l == 1 {
        return vec![0, 1];
    }
    let total = p.pow(l as u32);
    for idx in 0..total {
        // c0 is the most significant digit of idx
        let mut c = vec![0u64; l + 1];
        let mut x = idx;
        for i in (0..l).rev() {
            c[i] = x % p;
            x /= p;
        }
        c[l] = 1;
        if c[0] != 0 && fp_is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisRing {
    /// Builds `GR(p^n, l)` with the canonical modulus: the lexicographically
    /// smallest monic irreducible of degree `l` over F_p, coefficients in `[0, p)`.
    pub fn new(p: u64, n: u32, l: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || l == 0 {
            return Err(Error::InvalidParameter(format!("n = {n} and l = {l} must be positive")));
        }
        Self::check_size(p, n, l)?;
        let h = smallest_irreducible(p, l);
        Ok(Self::from_parts(p, n, h))
    }

    /// Builds `GR(p^n, l)` over a caller-supplied monic `h` whose reduction is irreducible.
    pub fn with_modulus(p: u64, n: u32, h: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || h.len() < 2 {
            return Err(Error::InvalidParameter("modulus must have degree >= 1".into()));
        }
        let l = h.len() - 1;
        Self::check_size(p, n, l)?;
        let modulus = p.pow(n);
        if h[l] != 1 || h.iter().any(|&c| c >= modulus) {
            return Err(Error::NonMonic("modulus must be monic and reduced".into()));
        }
        let hbar: Vec<u64> = h.iter().map(|c| c % p).collect();
        if !fp_is_irreducible(&hbar, p) {
            return Err(Error::InvalidParameter("modulus is not irreducible modulo p".into()));
        }
        Ok(Self::from_parts(p, n, h))
    }

    fn check_size(p: u64, n: u32, l: usize) -> Result<()> {
        let ok = p.checked_pow(n).is_some_and(|m| m < 1 << 31) && p.checked_pow(l as u32).is_some_and(|q| q < 1 << 40);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("GR({p}^{n}, {l}) is too large")))
        }
    }

    fn from_parts(p: u64, n: u32, h: Vec<u64>) -> Self {
        let l = h.len() - 1;
        GaloisRing(Arc::new(RingData { p, n, l, modulus: p.pow(n), h }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn l(&self) -> usize {
        self.0.l
    }

    /// The characteristic `p^n`.
    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    /// Ascending coefficients of the monic modulus `h`.
    pub fn h(&self) -> &[u64] {
        &self.0.h
    }

    pub fn is_field(&self) -> bool {
        self.0.n == 1
    }

    /// `q = p^l`, the size of the residue field.
    pub fn residue_size(&self) -> u64 {
        self.0.p.pow(self.0.l as u32)
    }

    /// `|GR(p^n, l)| = p^{nl}`, when it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.0.modulus.checked_pow(self.0.l as u32)
    }

    /// Size of the unit group, `p^{nl} - p^{(n-1)l}`.
    pub fn unit_count(&self) -> u128 {
        let q = self.residue_size() as u128;
        q.pow(self.0.n - 1) * (q - 1)
    }

    pub fn zero(&self) -> GrElem {
        GrElem(vec![0; self.0.l])
    }

    pub fn one(&self) -> GrElem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: u64) -> GrElem {
        let mut v = vec![0; self.0.l];
        v[0] = c % self.0.modulus;
        GrElem(v)
    }

    /// The class of `x`.
    pub fn generator(&self) -> GrElem {
        if self.0.l == 1 {
            self.from_int(self.0.modulus - self.0.h[0])
        } else {
            let mut v = vec![0; self.0.l];
            v[1] = 1;
            GrElem(v)
        }
    }

    /// Validated element from coefficients.
    pub fn elem(&self, coeffs: Vec<u64>) -> Result<GrElem> {
        let e = GrElem(coeffs);
        self.check(&e)?;
        Ok(e)
    }

    /// Element from an integer packing `sum_s c_s (p^n)^s`.
    pub fn from_packed(&self, mut code: u64) -> Result<GrElem> {
        let m = self.0.modulus;
        let mut v = vec![0; self.0.l];
        for c in v.iter_mut() {
            *c = code % m;
            code /= m;
        }
        if code != 0 {
            return Err(Error::RingMismatch(format!("{self}: packed value out of range")));
        }
        Ok(GrElem(v))
    }

    pub fn to_packed(&self, a: &GrElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.0.modulus + c)
    }

    pub fn contains(&self, a: &GrElem) -> bool {
        a.0.len() == self.0.l && a.0.iter().all(|&c| c < self.0.modulus)
    }

    pub fn check(&self, a: &GrElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string()))
        }
    }

    // ---- raw kernels on coefficient slices ----

    pub(crate) fn add_assign_raw(&self, a: &mut [u64], b: &[u64]) {
        let m = self.0.modulus;
        for (x, &y) in a.iter_mut().zip(b) {
            *x += y;
            if *x >= m {
                *x -= m;
            }
        }
    }

    pub(crate) fn sub_assign_raw(&self, a: &mut [u64], b: &[u64]) {
        let m = self.0.modulus;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = if *x >= y { *x - y } else { *x + m - y };
        }
    }

    pub(crate) fn scale_assign_raw(&self, a: &mut [u64], c: u64) {
        let m = self.0.modulus;
        let c = c % m;
        for x in a.iter_mut() {
            *x = *x * c % m;
        }
    }

    /// `acc += a * b`.
    pub(crate) fn mul_acc_raw(&self, acc: &mut [u64], a: &[u64], b: &[u64]) {
        let m = self.0.modulus;
        let l = self.0.l;
        if l == 1 {
            acc[0] = (acc[0] + a[0] * b[0] % m) % m;
            return;
        }
        let mut buf = [0u64; 64];
        let mut heap;
        let prod: &mut [u64] = if 2 * l - 1 <= 64 {
            &mut buf[..2 * l - 1]
        } else {
            heap = vec![0u64; 2 * l - 1];
            &mut heap
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % m;
            }
        }
        let h = &self.0.h;
        for d in (l..2 * l - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for s in 0..l {
                prod[d - l + s] = (prod[d - l + s] + m - c * h[s] % m) % m;
            }
        }
        for (x, &y) in acc.iter_mut().zip(prod.iter()) {
            *x = (*x + y) % m;
        }
    }

    // ---- element arithmetic ----

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let mut r = a.clone();
        self.add_assign_raw(&mut r.0, &b.0);
        r
    }

    pub fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let mut r = a.clone();
        self.sub_assign_raw(&mut r.0, &b.0);
        r
    }

    pub fn neg(&self, a: &GrElem) -> GrElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let mut r = self.zero();
        self.mul_acc_raw(&mut r.0, &a.0, &b.0);
        r
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: &GrElem, c: u64) -> GrElem {
        let mut r = a.clone();
        self.scale_assign_raw(&mut r.0, c);
        r
    }

    pub fn checked_add(&self, a: &GrElem, b: &GrElem) -> Result<GrElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: &GrElem, b: &GrElem) -> Result<GrElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_neg(&self, a: &GrElem) -> Result<GrElem> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn pow(&self, a: &GrElem, mut e: u128) -> GrElem {
        let mut base = a.clone();
        let mut acc = self.one();
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

    pub fn is_zero(&self, a: &GrElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &GrElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    /// Units are exactly the elements with nonzero reduction modulo `p`.
    pub fn is_unit(&self, a: &GrElem) -> bool {
        a.0.iter().any(|&c| c % self.0.p != 0)
    }

    /// Largest `v <= n` with `p^v | a`.
    pub fn valuation(&self, a: &GrElem) -> u32 {
        a.0.iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut v = 0;
                let mut c = c;
                while c % self.0.p == 0 {
                    c /= self.0.p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.0.n)
    }

    /// `a / p`, for `a` divisible by `p`; representatives in `[0, p^{n-1})`.
    pub fn div_p(&self, a: &GrElem) -> Result<GrElem> {
        if a.0.iter().any(|&c| c % self.0.p != 0) {
            return Err(Error::NotDivisibleByP);
        }
        Ok(GrElem(a.0.iter().map(|&c| c / self.0.p).collect()))
    }

    /// Inverse of a unit: residue-field inverse, then Newton iteration
    /// `y <- y (2 - a y)` which doubles the `p`-adic precision each step.
    pub fn inverse(&self, a: &GrElem) -> Result<GrElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let field = self.residue_field();
        let abar = self.reduce(a);
        let q = self.residue_size() as u128;
        let mut y = self.lift(&field.pow(&abar, q - 2));
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.0.n {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            prec *= 2;
        }
        debug_assert!(self.is_one(&self.mul(a, &y)));
        Ok(y)
    }

    /// The residue field `F_{p^l}` with modulus `h mod p`.
    pub fn residue_field(&self) -> GaloisRing {
        if self.is_field() {
            return self.clone();
        }
        let p = self.0.p;
        Self::from_parts(p, 1, self.0.h.iter().map(|c| c % p).collect())
    }

    /// Reduction modulo `p` into the residue field.
    pub fn reduce(&self, a: &GrElem) -> GrElem {
        GrElem(a.0.iter().map(|c| c % self.0.p).collect())
    }

    /// Coefficientwise lift of a residue-field element, representatives in `[0, p)`.
    pub fn lift(&self, x: &GrElem) -> GrElem {
        x.clone()
    }

    /// Every element, ordered by the integer packing (constant term least significant).
    pub fn elements(&self) -> impl Iterator<Item = GrElem> + '_ {
        let total = self.size().expect("ring too large to enumerate");
        (0..total).map(move |i| self.from_packed(i).expect("index in range"))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GrElem {
        GrElem((0..self.0.l).map(|_| rng.gen_range(0..self.0.modulus)).collect())
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> GrElem {
        loop {
            let a = self.random(rng);
            if self.is_unit(&a) {
                return a;
            }
        }
    }

    /// Teichmüller representative of the residue class of `a`: `a^{q^{n-1}}`.
    pub fn teichmuller(&self, a: &GrElem) -> GrElem {
        let q = self.residue_size() as u128;
        let mut t = a.clone();
        for _ in 1..self.0.n {
            t = self.pow(&t, q);
        }
        t
    }

    /// The Teichmüller set `{x : x^q = x}`, one element per residue class,
    /// ordered by the residue's integer packing.
    pub fn teichmuller_set(&self) -> Vec<GrElem> {
        let field = self.residue_field();
        field.elements().map(|r| self.teichmuller(&self.lift(&r))).collect()
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: &GrElem) -> Result<u128> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let mut ord = self.unit_count();
        // the unit group order is q^{n-1}(q-1); factor both parts
        let mut primes = prime_factors(self.residue_size() - 1);
        if self.0.n > 1 {
            primes.push(self.0.p);
        }
        for r in primes {
            while ord.is_multiple_of(r as u128) && self.is_one(&self.pow(a, ord / r as u128)) {
                ord /= r as u128;
            }
        }
        Ok(ord)
    }

    /// First element of the Teichmüller set generating its cyclic group of order `q - 1`.
    pub fn teichmuller_generator(&self) -> GrElem {
        let target = self.residue_size() as u128 - 1;
        self.teichmuller_set()
            .into_iter()
            .filter(|t| self.is_unit(t))
            .find(|t| self.unit_order(t).ok() == Some(target))
            .expect("the Teichmüller group is cyclic")
    }

    /// Evaluates a polynomial with coefficients in this ring at `x` (Horner).
    pub fn eval(&self, coeffs: &[GrElem], x: &GrElem) -> GrElem {
        coeffs.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Newton iteration for a simple root of `f` (coefficients in this ring)
    /// starting from an approximation that is a root modulo `p`.
    pub fn newton_root(&self, f: &[GrElem], start: &GrElem) -> Result<GrElem> {
        let df: Vec<GrElem> = f.iter().enumerate().skip(1).map(|(i, c)| self.scale(c, i as u64)).collect();
        let mut x = start.clone();
        for _ in 0..=self.0.n.next_power_of_two().trailing_zeros() + 1 {
            let fx = self.eval(f, &x);
            if self.is_zero(&fx) {
                return Ok(x);
            }
            let d = self.inverse(&self.eval(&df, &x))?;
            x = self.sub(&x, &self.mul(&fx, &d));
        }
        if self.is_zero(&self.eval(f, &x)) {
            Ok(x)
        } else {
            Err(Error::Certification("Newton iteration did not converge".into()))
        }
    }

    /// Integer-coefficient polynomial as ring constants.
    pub fn int_poly(&self, coeffs: &[u64]) -> Vec<GrElem> {
        coeffs.iter().map(|&c| self.from_int(c)).collect()
    }
}

/// A Galois extension `GR(p^n, l m)` of `GR(p^n, l)`, built as a fresh ring
/// with its canonical modulus plus an embedding of the base.
#[derive(Clone, Debug)]
pub struct GaloisExtension {
    base: GaloisRing,
    ext: GaloisRing,
    degree: usize,
    // images of the base power basis y^s in ext
    base_images: Vec<GrElem>,
    // images of x^s under the absolute lifted Frobenius of ext
    frobenius_images: Vec<GrElem>,
}

impl GaloisExtension {
    pub fn new(base: &GaloisRing, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let ext = GaloisRing::new(base.p(), base.n(), base.l() * m)?;
        let field = ext.residue_field();
        let h_base = ext.int_poly(base.h());
        let hbar: Vec<GrElem> = h_base.iter().map(|c| ext.reduce(c)).collect();
        let root_bar = field
            .elements()
            .find(|r| field.is_zero(&field.eval(&hbar, r)))
            .ok_or_else(|| Error::Certification("base modulus has no root in the extension".into()))?;
        let y = ext.newton_root(&h_base, &ext.lift(&root_bar))?;
        let base_images = powers(&ext, &y, base.l());

        let x = ext.generator();
        let h_ext = ext.int_poly(ext.h());
        let sigma_x = ext.newton_root(&h_ext, &ext.pow(&x, ext.p() as u128))?;
        let frobenius_images = powers(&ext, &sigma_x, ext.l());
        Ok(Self { base: base.clone(), ext, degree: m, base_images, frobenius_images })
    }

    pub fn base(&self) -> &GaloisRing {
        &self.base
    }

    pub fn ext(&self) -> &GaloisRing {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn embed(&self, a: &GrElem) -> GrElem {
        combine(&self.ext, &self.base_images, a)
    }

    /// Absolute lifted Frobenius of the extension ring.
    pub fn frobenius(&self, a: &GrElem) -> GrElem {
        combine(&self.ext, &self.frobenius_images, a)
    }

    /// Generator of `Gal(ext/base)`: the absolute Frobenius raised to `l`.
    pub fn relative_frobenius(&self, a: &GrElem) -> GrElem {
        (0..self.base.l()).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// Preimage of `a` under the embedding, if `a` lies in the base.
    pub fn restrict(&self, a: &GrElem) -> Result<GrElem> {
        let cols: Vec<Vec<u64>> = self.base_images.iter().map(|b| b.0.clone()).collect();
        let sol = linalg::solve_unit_pivot(self.ext.p(), self.ext.modulus(), &cols, &a.0)?;
        Ok(GrElem(sol))
    }

    /// Relative trace `sum_{i<m} sigma^i(a)`, returned in the base ring.
    pub fn trace(&self, a: &GrElem) -> Result<GrElem> {
        self.ext.check(a)?;
        let mut acc = self.ext.zero();
        let mut cur = a.clone();
        for _ in 0..self.degree {
            acc = self.ext.add(&acc, &cur);
            cur = self.relative_frobenius(&cur);
        }
        self.restrict(&acc)
    }
}

pub(crate) fn powers(ring: &GaloisRing, x: &GrElem, count: usize) -> Vec<GrElem> {
    let mut out = Vec::with_capacity(count);
    let mut cur = ring.one();
    for _ in 0..count {
        out.push(cur.clone());
        cur = ring.mul(&cur, x);
    }
    out
}

// sum_s a_s * images[s]
pub(crate) fn combine(ring: &GaloisRing, images: &[GrElem], a: &GrElem) -> GrElem {
    let mut acc = ring.zero();
    for (c, img) in a.0.iter().zip(images) {
        if *c != 0 {
            acc = ring.add(&acc, &ring.scale(img, *c));
        }
    }
    acc
}
