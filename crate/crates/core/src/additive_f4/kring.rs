use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElem};

/// `K = F_{2^delta}[Z]/<Z^k>`, elements stored as `k` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRing {
    field: GaloisRing,
    k: usize,
}

pub type KElem = Vec<GrElem>;

impl KRing {
    pub fn new(delta: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        Ok(KRing { field: GaloisRing::new(2, 1, delta)?, k })
    }

    pub fn field(&self) -> &GaloisRing {
        &self.field
    }

    pub fn delta(&self) -> usize {
        self.field.l()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `log_2 |K| = delta k`.
    pub fn log2_size(&self) -> usize {
        self.delta() * self.k
    }

    pub fn zero(&self) -> KElem {
        vec![self.field.zero(); self.k]
    }

    pub fn one(&self) -> KElem {
        self.z_pow(0)
    }

    /// `Z^t`, zero for `t >= k`.
    pub fn z_pow(&self, t: usize) -> KElem {
        let mut x = self.zero();
        if t < self.k {
            x[t] = self.field.one();
        }
        x
    }

    pub fn scalar(&self, c: &GrElem) -> KElem {
        let mut x = self.zero();
        x[0] = c.clone();
        x
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.k - i) {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        out
    }

    pub fn is_zero(&self, a: &KElem) -> bool {
        a.iter().all(|c| self.field.is_zero(c))
    }

    /// Exponent of the largest power of `Z` dividing `a`; `k` for zero.
    pub fn valuation(&self, a: &KElem) -> usize {
        a.iter().position(|c| !self.field.is_zero(c)).unwrap_or(self.k)
    }

    pub fn inverse(&self, u: &KElem) -> Result<KElem> {
        let inv0 = self.field.inverse(&u[0])?;
        let mut v = self.scalar(&inv0);
        let two = self.scalar(&self.field.from_int(2));
        for _ in 0..=self.k.next_power_of_two().trailing_zeros() {
            v = self.mul(&v, &self.sub(&two, &self.mul(u, &v)));
        }
        Ok(v)
    }

    /// `a = Z^v w` with `w` a unit: returns `(v, w)`; `None` for zero.
    pub fn split(&self, a: &KElem) -> Option<(usize, KElem)> {
        let v = self.valuation(a);
        if v == self.k {
            return None;
        }
        let mut w = self.zero();
        w[..self.k - v].clone_from_slice(&a[v..]);
        // the top v coefficients of w are free and left zero
        Some((v, w))
    }

    /// Bits `t delta + i` hold coefficient `i` of the `Z^t` term.
    pub fn to_bits(&self, a: &KElem) -> u64 {
        let d = self.delta();
        a.iter().enumerate().fold(0, |acc, (t, c)| acc | self.field.to_packed(c) << (t * d))
    }

    pub fn from_bits(&self, bits: u64) -> KElem {
        let d = self.delta();
        (0..self.k)
            .map(|t| self.field.from_packed(bits >> (t * d) & ((1 << d) - 1)).expect("packed field element"))
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = KElem> + '_ {
        (0u64..1 << self.log2_size()).map(|b| self.from_bits(b))
    }
}

/// Canonical generators of a `K`-submodule of `K^2`: the rows `(Z^a, f)` and
/// `(0, Z^b)`, where `a = k` or `b = k` marks an absent row, `f` has no terms
/// of degree `>= b` and none below `b - (k - a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    pub a: usize,
    pub b: usize,
    pub f: KElem,
}

impl Staircase {
    pub fn rows(&self, ring: &KRing) -> Vec<(KElem, KElem)> {
        let mut rows = Vec::new();
        if self.a < ring.k() {
            rows.push((ring.z_pow(self.a), self.f.clone()));
        }
        if self.b < ring.k() {
            rows.push((ring.zero(), ring.z_pow(self.b)));
        }
        rows
    }

    /// `log_2` of the submodule size: `delta ((k - a) + (k - b))`.
    pub fn log2_size(&self, ring: &KRing) -> usize {
        ring.delta() * (2 * ring.k() - self.a - self.b)
    }

    /// Minimal number of generators.
    ///
    /// Over `F[[Z]]`, the lattice spanned by the rows and `Z^k K^2` has
    /// elementary divisors `Z^{u_1}, Z^{u_2}` with `u_1` the least entry
    /// valuation and `u_1 + u_2` the least 2x2 minor valuation; the module is
    /// `K/Z^{k-u_1} + K/Z^{k-u_2}`.
    pub fn rank(&self, ring: &KRing) -> usize {
        let k = ring.k();
        let vf = if self.a < k { ring.valuation(&self.f) } else { k };
        let u1 = self.a.min(self.b).min(vf).min(k);
        let minors = (self.a + self.b).min(vf + k).min(self.a + k).min(self.b + k).min(2 * k);
        let u2 = (minors - u1).min(k);
        (u1 < k) as usize + (u2 < k) as usize
    }
}

/// Hermite reduction of the submodule generated by `gens` to its staircase.
pub fn staircase_of(ring: &KRing, gens: &[(KElem, KElem)]) -> Result<Staircase> {
    let k = ring.k();
    let mut rows: Vec<(KElem, KElem)> = gens.to_vec();
    let best = rows.iter().enumerate().map(|(i, r)| (ring.valuation(&r.0), i)).filter(|&(v, _)| v < k).min();
    let mut seconds: Vec<KElem> = Vec::new();
    let (a, f) = match best {
        None => {
            seconds.extend(rows.into_iter().map(|r| r.1));
            (k, ring.zero())
        }
        Some((a, idx)) => {
            let (alpha, beta) = rows.swap_remove(idx);
            let (_, unit) = ring.split(&alpha).expect("nonzero");
            let inv = ring.inverse(&unit)?;
            // pivot row becomes (Z^a, f)
            let f = ring.mul(&inv, &beta);
            for (x, y) in rows {
                match ring.split(&x) {
                    None => seconds.push(y),
                    Some((v, w)) => {
                        let c = ring.mul(&w, &ring.z_pow(v - a));
                        seconds.push(ring.sub(&y, &ring.mul(&c, &f)));
                    }
                }
            }
            seconds.push(ring.mul(&ring.z_pow(k - a), &f));
            (a, f)
        }
    };
    let b = seconds.iter().map(|y| ring.valuation(y)).min().unwrap_or(k);
    let mut f = f;
    for c in f.iter_mut().skip(b) {
        *c = ring.field().zero();
    }
    Ok(Staircase { a, b, f })
}

/// Every `K`-submodule of `K^2` once, as staircases.
pub fn enumerate_submodules(ring: &KRing) -> Vec<Staircase> {
    let k = ring.k();
    let q = ring.field().residue_size();
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k {
            if a == k {
                out.push(Staircase { a, b, f: ring.zero() });
                continue;
            }
            let lo = (b + a).saturating_sub(k);
            let free = b - lo.min(b);
            for idx in 0..q.pow(free as u32) {
                let mut f = ring.zero();
                let mut x = idx;
                for c in f.iter_mut().take(b).skip(lo) {
                    *c = ring.field().from_packed(x % q).expect("field element");
                    x /= q;
                }
                out.push(Staircase { a, b, f });
            }
        }
    }
    out
}

/// Total number of submodules of `K^2` and of cyclic ones, by the closed formulas
/// `1 + k + (Q+1)/(Q-1) ((Q^k-1)/(Q-1) - k + Q^k - 1)` and `1 + (Q+1)/(Q-1) (Q^k - 1)`
/// with `Q = 2^delta`.
pub fn submodule_counts(delta: usize, k: usize) -> (BigUint, BigUint) {
    let q = BigUint::one() << delta;
    let one = BigUint::one();
    let qk = q.pow(k as u32);
    let qm1 = &q - &one;
    let qp1 = &q + &one;
    let geom = (&qk - &one) / &qm1;
    let inner = geom + &qk - &one - BigUint::from(k);
    let total_num = &qp1 * inner;
    let single_num = &qp1 * (&qk - &one);
    debug_assert!((&total_num % &qm1).is_zero() && (&single_num % &qm1).is_zero());
    let total = BigUint::from(1 + k) + total_num / &qm1;
    let single = one + single_num / &qm1;
    (total, single)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BitBasis;
    use std::collections::HashSet;

    fn span_of(ring: &KRing, gens: &[(KElem, KElem)]) -> BitBasis {
        let shift = ring.log2_size();
        let fbasis: Vec<KElem> = (0..ring.delta())
            .map(|i| {
                let mut c = vec![0; ring.delta()];
                c[i] = 1;
                ring.scalar(&ring.field().elem(c).unwrap())
            })
            .collect();
        let mut b = BitBasis::new();
        for (x, y) in gens {
            for t in 0..ring.k() {
                for s in &fbasis {
                    let c = ring.mul(s, &ring.z_pow(t));
                    b.insert(ring.to_bits(&ring.mul(&c, x)) | ring.to_bits(&ring.mul(&c, y)) << shift);
                }
            }
        }
        b
    }

    // all submodules: sums of cyclic ones, closed to a fixpoint
    fn brute_force(ring: &KRing) -> (HashSet<BitBasis>, usize) {
        let shift = ring.log2_size();
        let mut cyclic = HashSet::new();
        for v in 0u64..1 << (2 * shift) {
            let x = ring.from_bits(v & ((1 << shift) - 1));
            let y = ring.from_bits(v >> shift);
            cyclic.insert(span_of(ring, &[(x, y)]));
        }
        let mut all: HashSet<BitBasis> = cyclic.clone();
        loop {
            let list: Vec<BitBasis> = all.iter().cloned().collect();
            let mut grew = false;
            for a in &list {
                for c in &cyclic {
                    let mut s = a.clone();
                    for v in c.vectors() {
                        s.insert(v);
                    }
                    grew |= all.insert(s);
                }
            }
            if !grew {
                break;
            }
        }
        (all, cyclic.len())
    }

    #[test]
    fn formulas_match_brute_force() {
        for (delta, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let ring = KRing::new(delta, k).unwrap();
            let (all, cyclic) = brute_force(&ring);
            let (total, single) = submodule_counts(delta, k);
            assert_eq!(BigUint::from(all.len()), total, "({delta},{k})");
            assert_eq!(BigUint::from(cyclic), single, "({delta},{k})");
            let stairs = enumerate_submodules(&ring);
            assert_eq!(BigUint::from(stairs.len()), total);
            let spans: HashSet<BitBasis> = stairs.iter().map(|s| span_of(&ring, &s.rows(&ring))).collect();
            assert_eq!(spans, all);
            let ranked_single = stairs.iter().filter(|s| s.rank(&ring) <= 1).count();
            assert_eq!(BigUint::from(ranked_single), single);
            for s in &stairs {
                assert!(s.rank(&ring) <= 2);
                assert_eq!(span_of(&ring, &s.rows(&ring)).dim(), s.log2_size(&ring));
                assert_eq!(staircase_of(&ring, &s.rows(&ring)).unwrap(), *s);
            }
        }
        assert_eq!(submodule_counts(1, 1), (BigUint::from(5u32), BigUint::from(4u32)));
        assert_eq!(submodule_counts(2, 2), (BigUint::from(33u32), BigUint::from(26u32)));
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let ring = KRing::new(2, 2).unwrap();
        let elems: Vec<KElem> = ring.elements().collect();
        for (i, x) in elems.iter().enumerate().step_by(3) {
            for y in elems.iter().skip(i % 5).step_by(7) {
                let gens = vec![(x.clone(), y.clone()), (y.clone(), x.clone())];
                let st = staircase_of(&ring, &gens).unwrap();
                assert_eq!(span_of(&ring, &st.rows(&ring)), span_of(&ring, &gens));
            }
        }
    }

    #[test]
    fn staircase_count_at_delta2_k4() {
        let ring = KRing::new(2, 4).unwrap();
        let stairs = enumerate_submodules(&ring);
        let (total, single) = submodule_counts(2, 4);
        assert_eq!(BigUint::from(stairs.len()), total);
        assert_eq!(BigUint::from(stairs.iter().filter(|s| s.rank(&ring) <= 1).count()), single);
    }

    #[test]
    fn inverse_and_valuation() {
        let ring = KRing::new(3, 4).unwrap();
        for x in ring.elements().step_by(97) {
            if ring.valuation(&x) == 0 {
                let inv = ring.inverse(&x).unwrap();
                assert_eq!(ring.mul(&x, &inv), ring.one());
            }
        }
        assert_eq!(ring.valuation(&ring.z_pow(2)), 2);
        assert_eq!(ring.valuation(&ring.zero()), 4);
    }
}
