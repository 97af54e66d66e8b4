//! Hensel lifting of the residue-field factorization into pairwise coprime
//! primary blocks, and CRT idempotents for those blocks.

use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;

use super::factor::ff_factor;
use super::poly::{ff_ext_gcd, Poly};

/// One primary block `G = g^k + p u` of a monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub big_g: Poly,
    pub g: Poly,
    pub k: usize,
    pub r: usize,
    pub u: Poly,
}

/// Primary factors of `t` together with the splitting certificates:
/// `bezout[j] = (s, w)` satisfies `s G_j + w (G_{j+1} ... G_s) = 1` exactly.
#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub t: Poly,
    pub factors: Vec<PrimaryFactor>,
    pub bezout: Vec<(Poly, Poly)>,
}

impl PrimaryDecomposition {
    pub fn blocks(&self) -> Vec<Poly> {
        self.factors.iter().map(|f| f.big_g.clone()).collect()
    }

    /// Re-checks the product and every Bézout identity.
    pub fn verify(&self) -> bool {
        let ring = self.t.ring();
        let prod = self.factors.iter().fold(Poly::one(ring), |acc, f| acc.mul(&f.big_g));
        if prod != self.t {
            return false;
        }
        self.bezout.iter().enumerate().all(|(j, (s, w))| {
            let rest = self.factors[j + 1..].iter().fold(Poly::one(ring), |acc, f| acc.mul(&f.big_g));
            s.mul(&self.factors[j].big_g).add(&w.mul(&rest)).is_one()
        })
    }
}

/// Lifts `f = g0 h0 (mod p)` with `g0`, `h0` monic and coprime mod `p` to an
/// exact factorization `f = g h`, returning `(g, h, s, w)` with `s g + w h = 1`.
pub fn hensel_lift_pair(f: &Poly, g0: &Poly, h0: &Poly) -> Result<(Poly, Poly, Poly, Poly)> {
    let ring = f.ring().clone();
    if !f.is_monic() {
        return Err(Error::NonMonic(f.to_string()));
    }
    let field = ring.residue_field();
    let (d, s0, w0) = ff_ext_gcd(&g0.reduce(), &h0.reduce());
    if !d.is_one() {
        return Err(Error::NotCoprime);
    }
    let (mut g, mut h) = (g0.clone(), h0.clone());
    let (mut s, mut w) = (s0.lift_to(&ring), w0.lift_to(&ring));
    debug_assert!(field.is_field());
    for _ in 0..=2 * ring.n() + 1 {
        let e = f.sub(&g.mul(&h));
        let b = s.mul(&g).add(&w.mul(&h)).sub(&Poly::one(&ring));
        if e.is_zero() && b.is_zero() {
            return Ok((g, h, s, w));
        }
        let dg = e.mul(&w).rem(&g)?;
        let dh = e.mul(&s).rem(&h)?;
        g = g.add(&dg);
        h = h.add(&dh);
        let b = s.mul(&g).add(&w.mul(&h)).sub(&Poly::one(&ring));
        let one_minus_b = Poly::one(&ring).sub(&b);
        let (q, s_new) = s.mul(&one_minus_b).divrem(&h)?;
        w = w.mul(&one_minus_b).add(&q.mul(&g));
        s = s_new;
    }
    Err(Error::Certification("Hensel iteration did not converge".into()))
}

/// Splits a monic `t` into pairwise coprime primary blocks lifting
/// `t mod p = prod g_j^{k_j}`, in the canonical order of the factors.
pub fn hensel_primary_decompose(t: &Poly) -> Result<PrimaryDecomposition> {
    let ring = t.ring().clone();
    if !t.is_monic() {
        return Err(Error::NonMonic(t.to_string()));
    }
    let fac = ff_factor(&t.reduce())?;
    let mut factors = Vec::with_capacity(fac.len());
    let mut bezout = Vec::new();
    let mut rest = t.clone();
    let field = ring.residue_field();
    for (idx, (gbar, k)) in fac.iter().enumerate() {
        let g = gbar.lift_to(&ring);
        let block_bar = gbar.pow(*k);
        let big_g = if idx + 1 == fac.len() {
            rest.clone()
        } else {
            let others = fac[idx + 1..].iter().fold(Poly::one(&field), |acc, (f, m)| acc.mul(&f.pow(*m)));
            let (big_g, h, s, w) = hensel_lift_pair(&rest, &block_bar.lift_to(&ring), &others.lift_to(&ring))?;
            bezout.push((s, w));
            rest = h;
            big_g
        };
        let u = big_g.sub(&g.pow(*k)).div_p()?;
        factors.push(PrimaryFactor { big_g, g, k: *k, r: gbar.deg(), u });
    }
    Ok(PrimaryDecomposition { t: t.clone(), factors, bezout })
}

/// Inverse of `a` modulo a monic `m`, when `a` and `m` are coprime mod `p`:
/// extended gcd over the residue field, then Newton lifting.
pub fn inverse_mod(a: &Poly, m: &Poly) -> Result<Poly> {
    let ring = a.ring().clone();
    let a = a.rem(m)?;
    let (d, s, _) = ff_ext_gcd(&a.reduce(), &m.reduce());
    if !d.is_one() {
        return Err(Error::NotCoprime);
    }
    let two = Poly::constant(&ring, ring.from_int(2));
    let mut y = s.lift_to(&ring).rem(m)?;
    for _ in 0..=ring.n() {
        if a.mul(&y).rem(m)?.is_one() {
            return Ok(y);
        }
        y = y.mul(&two.sub(&a.mul(&y))).rem(m)?;
    }
    if a.mul(&y).rem(m)?.is_one() {
        Ok(y)
    } else {
        Err(Error::Certification("inverse lifting did not converge".into()))
    }
}

/// Orthogonal idempotents `e_j = (Ft_j^{-1} mod F_j) Ft_j mod t`, where
/// `Ft_j` is the product of the other factors.
pub fn crt_idempotents(factors: &[Poly], t: &Poly) -> Result<Vec<Poly>> {
    let ring: GaloisRing = t.ring().clone();
    let prod = factors.iter().fold(Poly::one(&ring), |acc, f| acc.mul(f));
    if &prod != t {
        return Err(Error::InvalidParameter("factors do not multiply to the modulus".into()));
    }
    if factors.len() == 1 {
        return Ok(vec![Poly::one(&ring)]);
    }
    factors
        .iter()
        .enumerate()
        .map(|(j, fj)| {
            let others =
                factors.iter().enumerate().filter(|&(l, _)| l != j).fold(Poly::one(&ring), |acc, (_, f)| acc.mul(f));
            let a = inverse_mod(&others, fj)?;
            a.mul(&others).rem(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z4() -> GaloisRing {
        GaloisRing::new(2, 2, 1).unwrap()
    }

    #[test]
    fn x1_squared_plus_one_over_z4() {
        let r = z4();
        let t = Poly::from_ints(&r, &[1, 0, 1]);
        let d = hensel_primary_decompose(&t).unwrap();
        assert_eq!(d.factors.len(), 1);
        let f = &d.factors[0];
        assert_eq!(f.big_g, t);
        assert_eq!(f.g, Poly::from_ints(&r, &[1, 1]));
        assert_eq!((f.k, f.r), (2, 1));
        // X^2 + 1 = (X+1)^2 + 2X
        assert_eq!(f.u, Poly::from_ints(&r, &[0, 1]));
        assert!(d.verify());
    }

    #[test]
    fn x7_minus_one_lifts() {
        let r = z4();
        let t = Poly::from_signed(&r, &[-1, 0, 0, 0, 0, 0, 0, 1]);
        let d = hensel_primary_decompose(&t).unwrap();
        let got: Vec<Poly> = d.blocks();
        let expected = [
            Poly::from_signed(&r, &[-1, 1]),
            Poly::from_signed(&r, &[3, 1, 2, 1]),
            Poly::from_signed(&r, &[3, 2, 3, 1]),
        ];
        for e in &expected {
            assert!(got.contains(e), "{e} missing from {got:?}");
        }
        assert!(d.factors.iter().all(|f| f.k == 1));
        assert!(d.verify());
    }

    #[test]
    fn random_decompositions_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ring in
            [GaloisRing::new(2, 3, 1).unwrap(), GaloisRing::new(3, 2, 1).unwrap(), GaloisRing::new(2, 2, 2).unwrap()]
        {
            for _ in 0..30 {
                let d = rng.gen_range(1..=7);
                let mut c: Vec<_> = (0..d).map(|_| ring.random(&mut rng)).collect();
                c.push(ring.one());
                let t = Poly::new(&ring, c);
                let dec = hensel_primary_decompose(&t).unwrap();
                assert!(dec.verify());
                for f in &dec.factors {
                    assert!(f.big_g.is_monic());
                    assert_eq!(f.big_g.reduce(), f.g.reduce().pow(f.k));
                    assert!(f.u.is_zero() || f.u.deg() < f.r * f.k);
                    assert_eq!(f.g.pow(f.k).add(&f.u.scale_int(ring.p())), f.big_g);
                }
            }
        }
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z8 = GaloisRing::new(2, 3, 1).unwrap();
        let mut tested = 0;
        while tested < 20 {
            let d = rng.gen_range(2..=7);
            let mut c: Vec<_> = (0..d).map(|_| z8.random(&mut rng)).collect();
            c.push(z8.one());
            let t = Poly::new(&z8, c);
            let dec = hensel_primary_decompose(&t).unwrap();
            if dec.factors.iter().any(|f| f.k > 1) {
                continue;
            }
            tested += 1;
            let es = crt_idempotents(&dec.blocks(), &t).unwrap();
            let sum = es.iter().fold(Poly::zero(&z8), |acc, e| acc.add(e));
            assert!(sum.rem(&t).unwrap().is_one());
            for (j, ej) in es.iter().enumerate() {
                for (l, el) in es.iter().enumerate() {
                    let prod = ej.mul(el).rem(&t).unwrap();
                    if j == l {
                        assert_eq!(&prod, ej);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
                // e_j lies in the ideal of the complementary product
                let others =
                    dec.blocks().iter().enumerate().filter(|&(l, _)| l != j).fold(Poly::one(&z8), |a, (_, f)| a.mul(f));
                assert!(ej.rem(&others).unwrap().is_zero() || others.deg() == 0);
            }
        }
    }

    #[test]
    fn known_idempotent_up_to_units() {
        let r = z4();
        let t = Poly::from_signed(&r, &[-1, 0, 0, 0, 0, 0, 0, 1]);
        let dec = hensel_primary_decompose(&t).unwrap();
        let blocks = dec.blocks();
        let es = crt_idempotents(&blocks, &t).unwrap();
        let target = Poly::from_signed(&r, &[3, 2, -3, 1, 1]);
        // unit in exactly one block, zero mod 2 in the others
        let units: Vec<usize> =
            (0..blocks.len()).filter(|&j| inverse_mod(&target.rem(&blocks[j]).unwrap(), &blocks[j]).is_ok()).collect();
        assert_eq!(units.len(), 1);
        let idx = units[0];
        assert_eq!(blocks[idx].reduce().to_packed(), vec![1, 0, 1, 1]);
        for (j, b) in blocks.iter().enumerate().filter(|&(j, _)| j != idx) {
            let rj = target.rem(b).unwrap();
            assert!(rj.reduce().is_zero(), "block {j}");
        }
        // its projection onto that summand is a unit multiple of e_idx
        let proj = target.mul(&es[idx]).rem(&t).unwrap();
        let inv = inverse_mod(&target.rem(&blocks[idx]).unwrap(), &blocks[idx]).unwrap();
        assert_eq!(inv.mul(&proj).rem(&t).unwrap(), es[idx]);
        // over Z/4 the polynomial itself leaves a 2-multiple in another summand
        assert_ne!(proj, target);
        assert_eq!(target.sub(&proj).reduce().rem(&t.reduce()).unwrap(), Poly::zero(&r.residue_field()));
    }

    #[test]
    fn non_coprime_rejected() {
        let r = z4();
        let f = Poly::from_ints(&r, &[1, 1]);
        assert_eq!(crt_idempotents(&[f.clone(), f.clone()], &f.mul(&f)), Err(Error::NotCoprime));
    }
}
