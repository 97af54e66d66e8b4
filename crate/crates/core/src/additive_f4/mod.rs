//! Additive codes over `F_4`: `A_2`-submodules of `A_4`, where `A_q` is
//! `F_q[X_1..X_r]/<t_1..t_r>` for binary `t_i`.

mod code;
mod kring;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::ambient::{decompose_ambient, Ambient, AmbientClass, Decomposition, MultiPoly};
use crate::codes::DigitSpan;
use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;
use crate::linalg::BitSolver;
use crate::polynomials::Poly;

pub use code::{AdditiveCode, QuantumParams, DEFAULT_DUAL_CAP};
pub use kring::{enumerate_submodules, staircase_of, submodule_counts, KElem, KRing, Staircase};

/// Positions are limited so that `A_4` elements fit a `u64` bit mask.
pub const MAX_POSITIONS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandCase {
    /// Odd residue degree: one chain summand of `A_4`.
    A,
    /// Even degree over an odd class: two chain summands.
    B,
    /// Even class: splits into two classes over `F_4`.
    C,
}

impl fmt::Display for SummandCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandCase::A => "a",
            SummandCase::B => "b",
            SummandCase::C => "c",
        })
    }
}

/// A class of the semisimple variables over `F_2` and its behaviour over `F_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSplit {
    pub class_id: usize,
    pub size: usize,
    pub even: bool,
    /// Sizes of the classes over `F_4` below this one.
    pub halves: Vec<usize>,
}

/// `K e` inside `A_2` with the ideal `I = e A_4`, a free `K`-module on `(b_1, b_2)`.
#[derive(Clone, Debug)]
pub struct AdditiveSummand {
    pub index: usize,
    pub class_id: usize,
    pub class_size: usize,
    pub j: usize,
    pub m: usize,
    pub delta: usize,
    pub k: usize,
    pub case: SummandCase,
    pub kring: KRing,
    /// Idempotent in `A_2`.
    pub idempotent: MultiPoly,
    pub b1: MultiPoly,
    pub b2: MultiPoly,
    /// Indices of the `A_4` chain summands inside `I`.
    pub parts: Vec<usize>,
    // images in A_2 of the F_2-basis of K (bit t delta + i -> theta^i u^t)
    psi: Vec<MultiPoly>,
    solver: BitSolver,
}

#[derive(Clone, Debug)]
pub struct AdditiveAmbient {
    pub a2: Ambient,
    pub a4: Ambient,
    pub dec2: Arc<Decomposition>,
    pub dec4: Arc<Decomposition>,
    pub splits: Vec<ClassSplit>,
    pub summands: Vec<AdditiveSummand>,
}

/// Builds `A_2` and `A_4` over binary polynomials given as ascending 0/1 arrays.
pub fn build_additive(polys: &[Vec<u64>]) -> Result<AdditiveAmbient> {
    for (i, t) in polys.iter().enumerate() {
        if let Some(pos) = t.iter().position(|&c| c > 1) {
            return Err(Error::InvalidParameter(format!("t_{} coefficient {pos} is {}, not 0 or 1", i + 1, t[pos])));
        }
    }
    let f2 = GaloisRing::new(2, 1, 1)?;
    let f4 = GaloisRing::new(2, 1, 2)?;
    let p2: Vec<Poly> = polys.iter().map(|t| Poly::from_ints(&f2, t)).collect();
    let p4: Vec<Poly> = polys.iter().map(|t| Poly::from_ints(&f4, t)).collect();
    let a2 = Ambient::new(&f2, p2)?;
    if a2.positions() > MAX_POSITIONS {
        return Err(Error::InvalidAmbient(format!("{} positions, at most {MAX_POSITIONS} supported", a2.positions())));
    }
    let a4 = Ambient::new(&f4, p4)?;
    let (class, report) = a2.classify()?;
    if class == AmbientClass::ModularNonPir {
        return Err(Error::NotPrincipal(format!(
            "polynomials at positions {:?} are not square-free",
            report.non_square_free.iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    let dec2 = Arc::new(decompose_ambient(&a2)?);
    let dec4 = Arc::new(decompose_ambient(&a4)?);
    let mut amb = AdditiveAmbient { a2, a4, dec2, dec4, splits: Vec::new(), summands: Vec::new() };
    amb.splits = amb.split_classes()?;
    amb.summands = (0..amb.dec2.summands.len()).map(|i| amb.build_summand(i)).collect::<Result<_>>()?;
    Ok(amb)
}

fn bits(x: &MultiPoly) -> u64 {
    x.raw().iter().enumerate().fold(0, |acc, (i, &c)| acc | (c & 1) << i)
}

impl AdditiveAmbient {
    /// `N = prod e_i`.
    pub fn positions(&self) -> usize {
        self.a2.positions()
    }

    /// `A_2 -> A_4` coefficientwise.
    pub fn embed(&self, x: &MultiPoly) -> MultiPoly {
        self.a4.from_packed(x.raw()).expect("binary coefficients")
    }

    /// `A_4` element as a mask: bit `2m` is the `1`-coefficient and bit `2m+1`
    /// the `w`-coefficient at position `m`.
    pub fn mask(&self, x: &MultiPoly) -> u64 {
        bits(x)
    }

    pub fn from_mask(&self, mask: u64) -> MultiPoly {
        let packed: Vec<u64> = (0..self.positions()).map(|m| mask >> (2 * m) & 3).collect();
        self.a4.from_packed(&packed).expect("two-bit coefficients")
    }

    /// The monomials `X^e`, an `F_2`-basis of `A_2`.
    pub fn monomials(&self) -> Vec<MultiPoly> {
        (0..self.positions())
            .map(|pos| {
                let mut c = vec![0; self.positions()];
                c[pos] = 1;
                self.a2.from_packed(&c).expect("binary")
            })
            .collect()
    }

    fn split_classes(&self) -> Result<Vec<ClassSplit>> {
        let mut out = Vec::new();
        for c2 in &self.dec2.classes {
            let e = self.embed(&c2.idempotent);
            let halves: Vec<usize> = self
                .dec4
                .classes
                .iter()
                .filter(|c4| !self.a4.is_zero(&self.a4.mul(&c4.idempotent, &e)))
                .map(|c4| c4.size)
                .collect();
            let even = c2.size % 2 == 0;
            let ok = if even { halves == [c2.size / 2, c2.size / 2] } else { halves == [c2.size] };
            if !ok {
                return Err(Error::Certification(format!("class of size {} lies over classes {halves:?}", c2.size)));
            }
            out.push(ClassSplit { class_id: c2.id, size: c2.size, even, halves });
        }
        Ok(out)
    }

    fn build_summand(&self, index: usize) -> Result<AdditiveSummand> {
        let s2 = &self.dec2.summands[index];
        let (a2, a4) = (&self.a2, &self.a4);
        let kring = KRing::new(s2.delta, s2.k)?;
        let e = &s2.idempotent;
        // theta: a root of the field modulus among Teichmüller-type lifts
        let q = 1u128 << s2.delta;
        let mut exp = q;
        while exp < s2.k as u128 {
            exp *= q;
        }
        let h = kring.field().h();
        let eval = |x: &MultiPoly| {
            let mut acc = a2.zero();
            let mut pow = e.clone();
            for &c in h {
                if c != 0 {
                    a2.add_assign(&mut acc, &pow);
                }
                pow = a2.mul(&pow, x);
            }
            acc
        };
        let theta = DigitSpan::new(a2, s2.residue_basis.clone())
            .iter()
            .map(|tau| a2.pow(&tau, exp))
            .find(|t| a2.is_zero(&eval(t)))
            .ok_or_else(|| Error::Certification(format!("no residue field embedding in summand {index}")))?;
        let mut theta_pows = vec![e.clone()];
        for i in 1..s2.delta {
            theta_pows.push(a2.mul(&theta_pows[i - 1], &theta));
        }
        let psi: Vec<MultiPoly> = (0..s2.k)
            .flat_map(|t| theta_pows.iter().map(move |th| (t, th)))
            .map(|(t, th)| a2.mul(th, &s2.uniformizer_pow(t)))
            .collect();
        let e4 = self.embed(e);
        let parts: Vec<usize> =
            self.dec4.summands.iter().filter(|f| !a4.is_zero(&a4.mul(&f.idempotent, &e4))).map(|f| f.index).collect();
        let (case, b1, b2) = match parts.as_slice() {
            [_] => {
                let w = a4.ring().generator();
                (SummandCase::A, e4.clone(), a4.scale(&e4, &w))
            }
            [x, y] => {
                let case = if s2.class_size.is_multiple_of(2) { SummandCase::C } else { SummandCase::B };
                (case, self.dec4.summands[*x].idempotent.clone(), self.dec4.summands[*y].idempotent.clone())
            }
            _ => return Err(Error::Certification(format!("summand {index} covers {} summands of A_4", parts.len()))),
        };
        let columns: Vec<u64> = [&b1, &b2]
            .iter()
            .flat_map(|b| psi.iter().map(move |x| (b, x)))
            .map(|(b, x)| bits(&a4.mul(&self.embed(x), b)))
            .collect();
        let solver = BitSolver::new(&columns);
        if solver.rank() != columns.len() {
            return Err(Error::Certification(format!("summand {index} is not free of rank 2")));
        }
        Ok(AdditiveSummand {
            index,
            class_id: s2.class_id,
            class_size: s2.class_size,
            j: s2.j,
            m: s2.m,
            delta: s2.delta,
            k: s2.k,
            case,
            kring,
            idempotent: e.clone(),
            b1,
            b2,
            parts,
            psi,
            solver,
        })
    }

    /// `K` element as an element of `A_2`.
    pub fn k_to_a2(&self, s: &AdditiveSummand, x: &KElem) -> MultiPoly {
        let b = s.kring.to_bits(x);
        let mut acc = self.a2.zero();
        for (i, v) in s.psi.iter().enumerate() {
            if b >> i & 1 == 1 {
                self.a2.add_assign(&mut acc, v);
            }
        }
        acc
    }

    /// `alpha b_1 + beta b_2`.
    pub fn pair_to_a4(&self, s: &AdditiveSummand, alpha: &KElem, beta: &KElem) -> MultiPoly {
        let x = self.a4.mul(&self.embed(&self.k_to_a2(s, alpha)), &s.b1);
        let y = self.a4.mul(&self.embed(&self.k_to_a2(s, beta)), &s.b2);
        self.a4.add(&x, &y)
    }

    /// Coordinates of the projection `e y` in the basis `(b_1, b_2)`.
    pub fn a4_to_pair(&self, s: &AdditiveSummand, y: &MultiPoly) -> Result<(KElem, KElem)> {
        self.a4.check(y)?;
        let proj = self.a4.mul(y, &self.embed(&s.idempotent));
        let sol = s.solver.solve(bits(&proj)).ok_or_else(|| Error::Certification("projection outside I".into()))?;
        let width = s.kring.log2_size();
        let low = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        Ok((s.kring.from_bits(sol & low), s.kring.from_bits(sol >> width)))
    }

    /// Product over summands of the number of `K`-submodules of `K^2`.
    pub fn count_additive_codes(&self) -> BigUint {
        self.summands.iter().map(|s| submodule_counts(s.delta, s.k).0).product()
    }

    /// Product over summands of the number of cyclic `K`-submodules of `K^2`.
    pub fn count_single_generator(&self) -> BigUint {
        self.summands.iter().map(|s| submodule_counts(s.delta, s.k).1).product()
    }
}

pub fn count_additive_codes(amb: &AdditiveAmbient) -> BigUint {
    amb.count_additive_codes()
}

pub fn count_single_generator(amb: &AdditiveAmbient) -> BigUint {
    amb.count_single_generator()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quantum_example_ambient() {
        let amb = build_additive(&[vec![1, 0, 0, 0, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(amb.positions(), 8);
        assert_eq!(amb.summands.len(), 1);
        let s = &amb.summands[0];
        assert_eq!((s.delta, s.k, s.case), (2, 4, SummandCase::C));
        assert_eq!(amb.splits, vec![ClassSplit { class_id: 0, size: 2, even: true, halves: vec![1, 1] }]);
    }

    #[test]
    fn cases() {
        let a = build_additive(&[vec![1, 0, 1], vec![1, 1, 0, 1]]).unwrap();
        assert_eq!(a.summands.len(), 1);
        assert_eq!((a.summands[0].delta, a.summands[0].k, a.summands[0].case), (3, 2, SummandCase::A));
        let b = build_additive(&[vec![1, 0, 1, 0, 1]]).unwrap();
        assert_eq!((b.summands[0].delta, b.summands[0].k, b.summands[0].case), (2, 2, SummandCase::B));
        let uni = build_additive(&[vec![1, 0, 1]]).unwrap();
        assert_eq!((uni.summands[0].delta, uni.summands[0].k), (1, 2));
        let x7 = build_additive(&[vec![1, 0, 1], vec![1, 0, 0, 0, 0, 0, 0, 1]]).unwrap();
        let sizes: Vec<(usize, bool)> = x7.splits.iter().map(|c| (c.size, c.even)).collect();
        assert_eq!(sizes, vec![(1, false), (3, false), (3, false)]);
        assert!(matches!(build_additive(&[vec![1, 0, 1], vec![1, 0, 1]]), Err(Error::NotPrincipal(_))));
        assert!(build_additive(&[vec![1, 2, 1]]).is_err());
    }

    #[test]
    fn psi_is_a_ring_morphism_and_bases_are_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for polys in
            [vec![vec![1, 0, 0, 0, 1], vec![1, 1, 1]], vec![vec![1, 0, 1], vec![1, 1, 0, 1]], vec![vec![1, 0, 1, 0, 1]]]
        {
            let amb = build_additive(&polys).unwrap();
            for s in &amb.summands {
                let elems: Vec<KElem> = s.kring.elements().collect();
                for _ in 0..30 {
                    use rand::seq::SliceRandom;
                    let x = elems.choose(&mut rng).unwrap();
                    let y = elems.choose(&mut rng).unwrap();
                    let lhs = amb.k_to_a2(s, &s.kring.mul(x, y));
                    let rhs = amb.a2.mul(&amb.k_to_a2(s, x), &amb.k_to_a2(s, y));
                    assert_eq!(lhs, rhs);
                    let z = amb.pair_to_a4(s, x, y);
                    assert_eq!(amb.a4_to_pair(s, &z).unwrap(), (x.clone(), y.clone()));
                }
                assert_eq!(amb.k_to_a2(s, &s.kring.one()), s.idempotent);
            }
        }
    }
}
