use std::sync::Arc;

use rayon::prelude::*;

use crate::ambient::MultiPoly;
use crate::error::{Error, Result};
use crate::linalg::{bit_kernel, BitBasis};

use super::kring::{staircase_of, Staircase};
use super::AdditiveAmbient;

/// Largest dual span scanned for the quantum distance.
pub const DEFAULT_DUAL_CAP: u64 = 1 << 28;

const EVEN: u64 = 0x5555_5555_5555_5555;

/// An `F_2`-subspace of `A_4`, with per-summand staircases when it is an `A_2`-module.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    ambient: Arc<AdditiveAmbient>,
    generators: Vec<MultiPoly>,
    space: BitBasis,
    descriptors: Option<Vec<Staircase>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

// Tr(u v^2) summed over positions: a symplectic form on the bit masks
fn form(u: u64, v: u64) -> u32 {
    let swapped = (v & EVEN) << 1 | (v >> 1) & EVEN;
    (u & swapped).count_ones() & 1
}

fn mask_weight(v: u64) -> usize {
    ((v | v >> 1) & EVEN).count_ones() as usize
}

impl AdditiveCode {
    /// The `A_2`-module generated by `gens` (elements of `A_4`).
    pub fn from_generators(ambient: &Arc<AdditiveAmbient>, gens: Vec<MultiPoly>) -> Result<Self> {
        let amb = ambient.as_ref();
        let monos: Vec<MultiPoly> = amb.monomials().iter().map(|m| amb.embed(m)).collect();
        let mut space = BitBasis::new();
        for g in &gens {
            amb.a4.check(g)?;
            for m in &monos {
                space.insert(amb.mask(&amb.a4.mul(g, m)));
            }
        }
        let descriptors = amb
            .summands
            .iter()
            .map(|s| {
                let pairs = gens.iter().map(|g| amb.a4_to_pair(s, g)).collect::<Result<Vec<_>>>()?;
                staircase_of(&s.kring, &pairs)
            })
            .collect::<Result<_>>()?;
        Ok(AdditiveCode { ambient: ambient.clone(), generators: gens, space, descriptors: Some(descriptors) })
    }

    /// The code with one staircase per summand; rows are glued across
    /// summands into at most two generators.
    pub fn from_descriptors(ambient: &Arc<AdditiveAmbient>, descriptors: &[Staircase]) -> Result<Self> {
        let amb = ambient.as_ref();
        if descriptors.len() != amb.summands.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} descriptors for {} summands",
                descriptors.len(),
                amb.summands.len()
            )));
        }
        let mut gens = vec![amb.a4.zero(), amb.a4.zero()];
        for (s, st) in amb.summands.iter().zip(descriptors) {
            let k = s.kring.k();
            if st.a > k || st.b > k || st.f.len() != k {
                return Err(Error::ParamsOutOfBounds(format!("staircase ({}, {}) with k = {k}", st.a, st.b)));
            }
            for (slot, (x, y)) in st.rows(&s.kring).iter().enumerate() {
                let row = amb.pair_to_a4(s, x, y);
                let idx = if slot == 0 && st.a == k { 1 } else { slot };
                amb.a4.add_assign(&mut gens[idx], &row);
            }
        }
        gens.retain(|g| !amb.a4.is_zero(g));
        Self::from_generators(ambient, gens)
    }

    /// An arbitrary subspace; staircases are attached when it is `A_2`-closed.
    pub fn from_space(ambient: &Arc<AdditiveAmbient>, space: BitBasis) -> Result<Self> {
        let amb = ambient.as_ref();
        let gens: Vec<MultiPoly> = space.vectors().map(|v| amb.from_mask(v)).collect();
        let vars: Vec<MultiPoly> = (0..amb.a4.num_vars()).map(|i| amb.a4.var(i)).collect();
        let closed = gens.iter().all(|g| vars.iter().all(|x| space.contains(amb.mask(&amb.a4.mul(g, x)))));
        if closed {
            let mut code = Self::from_generators(ambient, gens)?;
            debug_assert_eq!(code.space, space);
            code.space = space;
            return Ok(code);
        }
        Ok(AdditiveCode { ambient: ambient.clone(), generators: gens, space, descriptors: None })
    }

    pub fn ambient(&self) -> &Arc<AdditiveAmbient> {
        &self.ambient
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn space(&self) -> &BitBasis {
        &self.space
    }

    pub fn descriptors(&self) -> Option<&[Staircase]> {
        self.descriptors.as_deref()
    }

    /// `log_2 |D|`.
    pub fn log2_size(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &MultiPoly) -> bool {
        self.space.contains(self.ambient.mask(x))
    }

    /// Minimal number of `A_2`-generators: the largest per-summand rank.
    pub fn generator_rank(&self) -> Option<usize> {
        let desc = self.descriptors.as_ref()?;
        Some(self.ambient.summands.iter().zip(desc).map(|(s, st)| st.rank(&s.kring)).max().unwrap_or(0))
    }

    /// `{v : Tr-form(v, d) = 0 for all d in D}`.
    pub fn trace_dual(&self) -> Result<AdditiveCode> {
        let width = 2 * self.ambient.positions() as u32;
        let rows: Vec<u64> = self.space.vectors().map(|v| (v & EVEN) << 1 | (v >> 1) & EVEN).collect();
        let dual = BitBasis::from_vectors(bit_kernel(&rows, width));
        Self::from_space(&self.ambient, dual)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let vs: Vec<u64> = self.space.vectors().collect();
        vs.iter().all(|&u| vs.iter().all(|&v| form(u, v) == 0))
    }

    /// `[[N, N - log_2 |D|, d]]` with `d` the least weight in `D^perp \ D`
    /// (in `D^perp \ {0}` when `D = D^perp`).
    pub fn quantum_params(&self, cap: u64) -> Result<QuantumParams> {
        if !self.is_self_orthogonal() {
            return Err(Error::NotSelfOrthogonal);
        }
        let n = self.ambient.positions();
        let dual = self.trace_dual()?;
        let dim = dual.space.dim();
        if dim >= 64 || 1u64 << dim > cap {
            return Err(Error::CapExceeded {
                what: "dual codewords",
                needed: format!("2^{dim}"),
                cap: cap.to_string(),
            });
        }
        let same = dim == self.space.dim();
        let vecs: Vec<u64> = dual.space.vectors().collect();
        let high = dim.min(8);
        let low = dim - high;
        let d = (0u64..1 << high)
            .into_par_iter()
            .filter_map(|h| {
                let mut base = 0u64;
                for (i, v) in vecs[low..].iter().enumerate() {
                    if h >> i & 1 == 1 {
                        base ^= v;
                    }
                }
                let mut cur = base;
                let mut best: Option<usize> = None;
                for i in 0u64..1 << low {
                    if i > 0 {
                        cur ^= vecs[i.trailing_zeros() as usize];
                    }
                    let skip = if same { cur == 0 } else { self.space.contains(cur) };
                    if !skip {
                        let w = mask_weight(cur);
                        best = Some(best.map_or(w, |b| b.min(w)));
                    }
                }
                best
            })
            .min()
            .ok_or_else(|| Error::Certification("dual has no words outside the code".into()))?;
        Ok(QuantumParams { n, k: n - self.space.dim(), d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive_f4::{build_additive, enumerate_submodules, submodule_counts};
    use num_bigint::BigUint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn quantum_ambient() -> Arc<AdditiveAmbient> {
        Arc::new(build_additive(&[vec![1, 0, 0, 0, 1], vec![1, 1, 1]]).unwrap())
    }

    // Z^2 + w Z^3 with Z = X_1 + 1
    fn reference_generator(amb: &AdditiveAmbient, w_power: u64) -> MultiPoly {
        let a4 = &amb.a4;
        let z = a4.add(&a4.var(0), &a4.one());
        let w = a4.scale(&a4.one(), &a4.ring().pow(&a4.ring().generator(), w_power as u128));
        let z2 = a4.mul(&z, &z);
        a4.add(&z2, &a4.mul(&w, &a4.mul(&z2, &z)))
    }

    #[test]
    fn quantum_fixture() {
        let amb = quantum_ambient();
        let d = AdditiveCode::from_generators(&amb, vec![reference_generator(&amb, 1)]).unwrap();
        assert_eq!(d.log2_size(), 4);
        assert!(d.is_self_orthogonal());
        assert_eq!(d.generator_rank(), Some(1));
        assert_eq!(d.quantum_params(DEFAULT_DUAL_CAP).unwrap(), QuantumParams { n: 8, k: 4, d: 2 });
        let d2 = AdditiveCode::from_generators(&amb, vec![reference_generator(&amb, 2)]).unwrap();
        assert_eq!(d2.space(), d.space());
    }

    #[test]
    fn duality() {
        let amb = quantum_ambient();
        let d = AdditiveCode::from_generators(&amb, vec![reference_generator(&amb, 1)]).unwrap();
        let dual = d.trace_dual().unwrap();
        assert_eq!(d.log2_size() + dual.log2_size(), 16);
        assert_eq!(dual.trace_dual().unwrap().space(), d.space());
        assert!(d.space().is_subspace_of(dual.space()));
        let zero = AdditiveCode::from_generators(&amb, Vec::new()).unwrap();
        assert_eq!(zero.trace_dual().unwrap().log2_size(), 16);
        assert_eq!(zero.generator_rank(), Some(0));
        assert_eq!(zero.quantum_params(DEFAULT_DUAL_CAP).unwrap(), QuantumParams { n: 8, k: 8, d: 1 });
        let full = zero.trace_dual().unwrap();
        assert_eq!(full.trace_dual().unwrap().log2_size(), 0);
    }

    #[test]
    fn all_descriptors_give_distinct_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for polys in [vec![vec![1, 1, 1]], vec![vec![1, 0, 1]], vec![vec![1, 0, 1], vec![1, 1]], vec![vec![1, 1, 0, 1]]]
        {
            let amb = Arc::new(build_additive(&polys).unwrap());
            let per: Vec<Vec<Staircase>> = amb.summands.iter().map(|s| enumerate_submodules(&s.kring)).collect();
            let mut spaces = HashSet::new();
            let mut idx = vec![0usize; per.len()];
            loop {
                let desc: Vec<Staircase> = idx.iter().zip(&per).map(|(&i, list)| list[i].clone()).collect();
                let code = AdditiveCode::from_descriptors(&amb, &desc).unwrap();
                assert_eq!(code.descriptors().unwrap(), desc.as_slice());
                assert!(code.generators().len() <= 2);
                for _ in 0..5 {
                    let a = amb.a2.random(&mut rng);
                    for g in code.generators() {
                        assert!(code.contains(&amb.a4.mul(&amb.embed(&a), g)));
                    }
                }
                spaces.insert(code.space().clone());
                let mut pos = 0;
                while pos < idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < per[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
            assert_eq!(BigUint::from(spaces.len()), amb.count_additive_codes());
            let single: BigUint = amb.summands.iter().map(|s| submodule_counts(s.delta, s.k).1).product();
            assert_eq!(single, amb.count_single_generator());
        }
    }
}
