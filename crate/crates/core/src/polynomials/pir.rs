//! The principal-ideal criterion for `R[X_1..X_r]/<t_1..t_r>` over a Galois ring.

use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;

use super::factor::ff_factor;
use super::hensel::hensel_primary_decompose;
use super::poly::{ff_gcd, Poly};

/// Decomposition `t = g h + p u` of a repeated-root polynomial, with `g`
/// lifting the square-free part of `t mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirWitness {
    pub g: Poly,
    pub h: Poly,
    pub u: Poly,
    pub u_bar: Poly,
    pub h_bar: Poly,
    /// `gcd(u mod p, h mod p)`.
    pub gcd: Poly,
    pub coprime: bool,
}

impl PirWitness {
    /// Builds the witness from lifts `(g_j, k_j)` of the distinct irreducible
    /// factors of `t mod p`. Any lifts may be used.
    pub fn from_lifts(t: &Poly, lifts: &[(Poly, usize)]) -> Result<Self> {
        let ring = t.ring();
        let one = Poly::one(ring);
        let g = lifts.iter().fold(one.clone(), |acc, (gj, _)| acc.mul(gj));
        let h = lifts.iter().fold(one, |acc, (gj, kj)| acc.mul(&gj.pow(kj - 1)));
        let u = t.sub(&g.mul(&h)).div_p()?;
        let (u_bar, h_bar) = (u.reduce(), h.reduce());
        let gcd = ff_gcd(&u_bar, &h_bar);
        let coprime = gcd.is_one();
        Ok(PirWitness { g, h, u, u_bar, h_bar, gcd, coprime })
    }

    pub fn for_poly(t: &Poly) -> Result<Self> {
        let dec = hensel_primary_decompose(t)?;
        let lifts: Vec<(Poly, usize)> = dec.factors.iter().map(|f| (f.g.clone(), f.k)).collect();
        Self::from_lifts(t, &lifts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirReport {
    pub is_pir: bool,
    /// Positions whose reduction mod `p` is not square-free.
    pub non_square_free: Vec<usize>,
    /// The unique repeated-root position, when there is exactly one.
    pub repeated_index: Option<usize>,
    pub witness: Option<PirWitness>,
}

/// Decides whether `R[X_1..X_r]/<t_1(X_1),..,t_r(X_r)>` is a principal ideal ring.
pub fn pir_check(ring: &GaloisRing, polys: &[Poly]) -> Result<PirReport> {
    for t in polys {
        if t.ring() != ring {
            return Err(Error::RingMismatch(format!("{t} is not over {ring}")));
        }
        if !t.is_monic() || t.deg() == 0 {
            return Err(Error::NonMonic(t.to_string()));
        }
    }
    let mut non_square_free = Vec::new();
    for (i, t) in polys.iter().enumerate() {
        if ff_factor(&t.reduce())?.iter().any(|(_, m)| *m > 1) {
            non_square_free.push(i);
        }
    }
    let (is_pir, repeated_index, witness) = match non_square_free.as_slice() {
        [] => (true, None, None),
        [i] => {
            let w = PirWitness::for_poly(&polys[*i])?;
            (ring.n() == 1 || w.coprime, Some(*i), Some(w))
        }
        _ => (false, None, None),
    };
    Ok(PirReport { is_pir, non_square_free, repeated_index, witness })
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
    fn reference_ambients() {
        let r = z4();
        let t1 = Poly::from_ints(&r, &[1, 0, 1]);
        let t2 = Poly::from_signed(&r, &[-1, 0, 0, 0, 0, 0, 0, 1]);
        let rep = pir_check(&r, &[t1.clone(), t2.clone()]).unwrap();
        assert!(rep.is_pir);
        assert_eq!(rep.repeated_index, Some(0));
        let w = rep.witness.unwrap();
        assert_eq!(w.h_bar.to_packed(), vec![1, 1]);
        assert!(w.coprime);
        assert_eq!(w.g.mul(&w.h).add(&w.u.scale_int(2)), t1);

        let x4 = Poly::from_signed(&r, &[-1, 0, 0, 0, 1]);
        assert!(!pir_check(&r, &[x4]).unwrap().is_pir);
        let kerdock_t2 = Poly::from_signed(&r, &[-1, 0, 1]);
        assert!(!pir_check(&r, std::slice::from_ref(&kerdock_t2)).unwrap().is_pir);
        let rep = pir_check(&r, &[t2, kerdock_t2]).unwrap();
        assert!(!rep.is_pir);

        let f2 = GaloisRing::new(2, 1, 1).unwrap();
        let rep = pir_check(&f2, &[Poly::from_ints(&f2, &[1, 0, 1]), Poly::from_ints(&f2, &[1, 1, 1])]).unwrap();
        assert!(rep.is_pir);
    }

    #[test]
    fn two_repeated_positions_fail() {
        let f2 = GaloisRing::new(2, 1, 1).unwrap();
        let t = Poly::from_ints(&f2, &[1, 0, 1]);
        let rep = pir_check(&f2, &[t.clone(), t]).unwrap();
        assert!(!rep.is_pir);
        assert_eq!(rep.non_square_free, vec![0, 1]);
    }

    #[test]
    fn non_monic_rejected() {
        let r = z4();
        assert!(matches!(pir_check(&r, &[Poly::from_ints(&r, &[1, 2])]), Err(Error::NonMonic(_))));
    }

    #[test]
    fn verdict_is_lift_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for ring in [z4(), GaloisRing::new(2, 3, 1).unwrap(), GaloisRing::new(3, 2, 1).unwrap()] {
            let p = ring.p();
            for _ in 0..40 {
                let d = rng.gen_range(2..=6);
                let mut c: Vec<_> = (0..d).map(|_| ring.random(&mut rng)).collect();
                c.push(ring.one());
                let t = Poly::new(&ring, c);
                let dec = hensel_primary_decompose(&t).unwrap();
                let base = PirWitness::for_poly(&t).unwrap();
                let lifts: Vec<(Poly, usize)> = dec
                    .factors
                    .iter()
                    .map(|f| {
                        let w = Poly::new(&ring, (0..f.r).map(|_| ring.random(&mut rng)).collect());
                        (f.g.add(&w.scale_int(p)), f.k)
                    })
                    .collect();
                let moved = PirWitness::from_lifts(&t, &lifts).unwrap();
                assert_eq!(base.coprime, moved.coprime, "t = {t}");
            }
        }
    }
}
