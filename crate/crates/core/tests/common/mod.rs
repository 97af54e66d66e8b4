//! Brute-force oracles shared by the integration tests. None of them use
//! the decomposition machinery: ideals are additive closures and submodules
//! are built from a separate implementation of `F_{2^d}[Z]/Z^k`.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use pipqr::{decompose_ambient, Ambient, Decomposition, GaloisRing, MultiPoly, Poly};

pub fn ring(p: u64, n: u32, l: usize) -> GaloisRing {
    GaloisRing::new(p, n, l).unwrap()
}

/// `R[X_1..X_r]/<t_i>` from signed ascending coefficient lists.
pub fn ambient(r: &GaloisRing, polys: &[&[i64]]) -> Ambient {
    Ambient::new(r, polys.iter().map(|c| Poly::from_signed(r, c)).collect()).unwrap()
}

pub fn decomposition(amb: &Ambient) -> Arc<Decomposition> {
    Arc::new(decompose_ambient(amb).unwrap())
}

pub fn bicyclic() -> Ambient {
    ambient(&ring(2, 2, 1), &[&[1, 0, 1], &[-1, 0, 0, 0, 0, 0, 0, 1]])
}

pub fn quadratic() -> Ambient {
    ambient(&ring(2, 2, 1), &[&[1, 0, 1]])
}

/// `F_2[X_1, X_2]/<(X_1 + 1)^2, X_2^7 + 1>`.
pub fn binary_ambient() -> Ambient {
    ambient(&ring(2, 1, 1), &[&[1, 0, 1], &[1, 0, 0, 0, 0, 0, 0, 1]])
}

/// Additive closure of `{g b}` over generators `g` and a `Z/p^n`-basis `b`:
/// exactly the ideal generated by `gens`.
pub fn ideal_closure(amb: &Ambient, gens: &[MultiPoly]) -> HashSet<MultiPoly> {
    let basis = amb.module_basis();
    let steps: Vec<MultiPoly> = gens.iter().flat_map(|g| basis.iter().map(move |b| amb.mul(g, b))).collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(amb.zero());
    queue.push_back(amb.zero());
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = amb.add(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Least weight of a nonzero element, `None` for `{0}`.
pub fn brute_min_weight(amb: &Ambient, words: &HashSet<MultiPoly>) -> Option<usize> {
    words.iter().map(|w| amb.weight(w)).filter(|&w| w > 0).min()
}

// F_2 (d = 1) and F_4 = F_2[x]/<x^2 + x + 1> (d = 2) on bit patterns
fn field_mul(d: usize, a: u32, b: u32) -> u32 {
    match d {
        1 => a & b,
        2 => {
            const T: [[u32; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
            T[a as usize][b as usize]
        }
        _ => panic!("oracle supports d <= 2"),
    }
}

/// `F_{2^d}[Z]/Z^k` with elements packed as `k` groups of `d` bits.
#[derive(Clone, Copy, Debug)]
pub struct SmallK {
    pub d: usize,
    pub k: usize,
}

impl SmallK {
    pub fn size(&self) -> u32 {
        1 << (self.d * self.k)
    }

    fn coeff(&self, a: u32, t: usize) -> u32 {
        a >> (t * self.d) & ((1 << self.d) - 1)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.k {
            for j in 0..self.k - i {
                out ^= field_mul(self.d, self.coeff(a, i), self.coeff(b, j)) << ((i + j) * self.d);
            }
        }
        out
    }
}

type Bits = Vec<u64>;

fn bit_set(bits: &mut Bits, i: u32) {
    bits[(i / 64) as usize] |= 1 << (i % 64);
}

fn members(bits: &Bits) -> Vec<u32> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        for b in 0..64 {
            if word >> b & 1 == 1 {
                out.push((w * 64 + b) as u32);
            }
        }
    }
    out
}

/// Every `K`-submodule of `K^2` as a bitset over pairs `x | y << (d k)`,
/// obtained by closing the cyclic submodules under sums. Returns all of
/// them and the set of cyclic ones.
pub fn brute_submodules(d: usize, k: usize) -> (HashSet<Bits>, HashSet<Bits>) {
    let ring = SmallK { d, k };
    let n = ring.size();
    let shift = d * k;
    let words = ((n * n) as usize).div_ceil(64);
    let mut cyclic = HashSet::new();
    for x in 0..n {
        for y in 0..n {
            let mut bits = vec![0; words];
            for a in 0..n {
                bit_set(&mut bits, ring.mul(a, x) | ring.mul(a, y) << shift);
            }
            cyclic.insert(bits);
        }
    }
    let mut all: HashSet<Bits> = cyclic.clone();
    loop {
        let list: Vec<Bits> = all.iter().cloned().collect();
        let mut grown = false;
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let (ma, mb) = (members(a), members(b));
                let mut bits = vec![0; words];
                for &u in &ma {
                    for &v in &mb {
                        bit_set(&mut bits, u ^ v);
                    }
                }
                grown |= all.insert(bits);
            }
        }
        if !grown {
            break;
        }
    }
    (all, cyclic)
}
