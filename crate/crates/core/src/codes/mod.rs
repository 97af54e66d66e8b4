//! Codes (ideals) of a principal ambient, described per chain summand by the
//! level of the uniformizer power they contain.

mod kerdock;
mod span;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::ambient::{Ambient, Decomposition, MultiPoly};
use crate::error::{Error, Result};

pub use kerdock::{generalized_kerdock, KerdockFixture};
pub use span::{DigitSpan, SpanIter};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
pub const DEFAULT_CODEWORD_CAP: u64 = 1 << 24;

/// One `(i, c)` per summand: the summand component is `<p^i u^c>`, with
/// `(n, 0)` standing for the zero component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeParams {
    pub pairs: Vec<(usize, usize)>,
}

impl CodeParams {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        CodeParams { pairs }
    }

    pub fn unit(dec: &Decomposition) -> Self {
        CodeParams { pairs: vec![(0, 0); dec.summands.len()] }
    }

    pub fn zero(dec: &Decomposition) -> Self {
        let n = dec.ambient.ring().n() as usize;
        CodeParams { pairs: vec![(n, 0); dec.summands.len()] }
    }

    /// Decodes levels `l = i k + c` (with `l = n k` the zero component).
    pub fn from_levels(dec: &Decomposition, levels: &[usize]) -> Result<Self> {
        if levels.len() != dec.summands.len() {
            return Err(Error::ParamsOutOfBounds(format!(
                "{} levels for {} summands",
                levels.len(),
                dec.summands.len()
            )));
        }
        let n = dec.ambient.ring().n() as usize;
        let pairs = levels
            .iter()
            .zip(&dec.summands)
            .map(|(&l, s)| match l {
                l if l > s.nilpotency => Err(Error::ParamsOutOfBounds(format!("level {l} exceeds {}", s.nilpotency))),
                l if l == s.nilpotency => Ok((n, 0)),
                l => Ok((l / s.k, l % s.k)),
            })
            .collect::<Result<_>>()?;
        Ok(CodeParams { pairs })
    }

    pub fn validate(&self, dec: &Decomposition) -> Result<()> {
        if self.pairs.len() != dec.summands.len() {
            return Err(Error::ParamsOutOfBounds(format!(
                "{} pairs for {} summands",
                self.pairs.len(),
                dec.summands.len()
            )));
        }
        let n = dec.ambient.ring().n() as usize;
        for (idx, (&(i, c), s)) in self.pairs.iter().zip(&dec.summands).enumerate() {
            let ok = (i == n && c == 0) || (i < n && c < s.k);
            if !ok {
                return Err(Error::ParamsOutOfBounds(format!(
                    "summand {idx}: (i, c) = ({i}, {c}) with n = {n}, k = {}",
                    s.k
                )));
            }
        }
        Ok(())
    }

    pub fn levels(&self, dec: &Decomposition) -> Vec<usize> {
        self.pairs.iter().zip(&dec.summands).map(|(&(i, c), s)| (i * s.k + c).min(s.nilpotency)).collect()
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(i, c)| format!("({i},{c})")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// An ideal of a principal ambient with its canonical parameters.
#[derive(Clone, Debug)]
pub struct Code {
    dec: Arc<Decomposition>,
    params: CodeParams,
    generators: Vec<MultiPoly>,
}

/// The code with the given canonical parameters; its generators are
/// `p^i u^c e`, one per summand with a nonzero component.
pub fn code_from_params(dec: &Arc<Decomposition>, params: &CodeParams) -> Result<Code> {
    params.validate(dec)?;
    let generators = dec
        .summands
        .iter()
        .zip(params.levels(dec))
        .filter(|(s, l)| *l < s.nilpotency)
        .map(|(s, _)| summand_generator(dec, params, s.index))
        .collect();
    Ok(Code { dec: dec.clone(), params: params.clone(), generators })
}

fn summand_generator(dec: &Decomposition, params: &CodeParams, idx: usize) -> MultiPoly {
    let amb = &dec.ambient;
    let s = &dec.summands[idx];
    let (i, c) = params.pairs[idx];
    if i >= amb.ring().n() as usize {
        return amb.zero();
    }
    let pi = amb.ring().p().pow(i as u32);
    amb.scale_int(&s.uniformizer_pow(c), pi)
}

/// Canonical parameters of the ideal generated by `gens`: per summand, the
/// minimum level over the projected generators.
pub fn params_from_generators(dec: &Decomposition, gens: &[MultiPoly]) -> Result<CodeParams> {
    for g in gens {
        dec.ambient.check(g)?;
    }
    let levels: Vec<usize> =
        dec.summands.iter().map(|s| gens.iter().map(|g| s.level(g)).min().unwrap_or(s.nilpotency)).collect();
    CodeParams::from_levels(dec, &levels)
}

impl Code {
    /// The ideal generated by `gens`, keeping `gens` as its generators.
    pub fn from_generators(dec: &Arc<Decomposition>, gens: Vec<MultiPoly>) -> Result<Self> {
        let params = params_from_generators(dec, &gens)?;
        Ok(Code { dec: dec.clone(), params, generators: gens })
    }

    pub fn decomposition(&self) -> &Arc<Decomposition> {
        &self.dec
    }

    pub fn ambient(&self) -> &Ambient {
        &self.dec.ambient
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn levels(&self) -> Vec<usize> {
        self.params.levels(&self.dec)
    }

    pub fn is_zero(&self) -> bool {
        self.levels().iter().zip(&self.dec.summands).all(|(&l, s)| l == s.nilpotency)
    }

    pub fn is_unit(&self) -> bool {
        self.levels().iter().all(|&l| l == 0)
    }

    /// `p^i u^c e` for every summand, zero for zero components.
    pub fn summand_generators(&self) -> Vec<MultiPoly> {
        (0..self.dec.summands.len()).map(|idx| summand_generator(&self.dec, &self.params, idx)).collect()
    }

    /// A single generator of the ideal: the sum of the summand generators.
    pub fn single_generator(&self) -> MultiPoly {
        let amb = self.ambient();
        self.summand_generators().iter().fold(amb.zero(), |acc, g| amb.add(&acc, g))
    }

    /// `H_1, .., H_n` with `code = <H_1, p H_2, .., p^{n-1} H_n>`: the summand
    /// component of `H_{j+1}` is `0` below `i`, `u^c e` at `j = i` and `e` above.
    pub fn h_family(&self) -> Vec<MultiPoly> {
        let amb = self.ambient();
        let n = amb.ring().n() as usize;
        (0..n)
            .map(|j| {
                let mut h = amb.zero();
                for (s, &(i, c)) in self.dec.summands.iter().zip(&self.params.pairs) {
                    if i >= n || j < i {
                        continue;
                    }
                    let part = if j == i { s.uniformizer_pow(c) } else { s.idempotent.clone() };
                    amb.add_assign(&mut h, &part);
                }
                h
            })
            .collect()
    }

    /// `sum_j p^j H_{j+1}`.
    pub fn h_single_generator(&self) -> MultiPoly {
        let amb = self.ambient();
        let p = amb.ring().p();
        let mut acc = amb.zero();
        let mut pj = 1u64;
        for h in self.h_family() {
            amb.add_assign(&mut acc, &amb.scale_int(&h, pj));
            pj *= p;
        }
        acc
    }

    /// Whether every summand projection of `x` reaches the code's level there.
    pub fn contains(&self, x: &MultiPoly) -> Result<bool> {
        self.ambient().check(x)?;
        Ok(self.dec.summands.iter().zip(self.levels()).all(|(s, l)| s.level(x) >= l))
    }

    pub fn is_subcode_of(&self, other: &Code) -> bool {
        self.dec.ambient == other.dec.ambient && self.levels().iter().zip(other.levels()).all(|(a, b)| *a >= b)
    }

    /// `log_p |code|` by the closed formula `l sum delta (n k - c - i k)`.
    pub fn log_p_size(&self) -> u64 {
        let l = self.ambient().ring().l() as u64;
        let n = self.ambient().ring().n() as usize;
        self.dec
            .summands
            .iter()
            .zip(&self.params.pairs)
            .map(|(s, &(i, c))| {
                let exp = if i >= n { 0 } else { n * s.k - c - i * s.k };
                l * (s.delta * exp) as u64
            })
            .sum()
    }

    /// `|code| = q^{sum delta (n k - c - i k)}` with `delta = |C| deg g`.
    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.ambient().ring().p()).pow(self.log_p_size() as u32)
    }

    /// All codewords, each exactly once, as a span of uniformizer-adic digits.
    pub fn codeword_span(&self) -> DigitSpan {
        let vectors = self.dec.summands.iter().zip(self.levels()).flat_map(|(s, l)| s.digit_vectors(l)).collect();
        DigitSpan::new(self.ambient(), vectors)
    }

    /// [`Self::codeword_span`] after checking `|code| <= cap`.
    pub fn codewords(&self, cap: u64) -> Result<DigitSpan> {
        let span = self.codeword_span();
        span.check_cap("codewords", cap)?;
        Ok(span)
    }
}

/// Number of codes: `prod (n k + 1)` over summands, unit and zero ideals included.
pub fn count_codes(dec: &Decomposition) -> BigUint {
    dec.summands.iter().map(|s| BigUint::from(s.nilpotency + 1)).product()
}

/// Every parameter tuple once, lexicographic with the first summand most significant.
pub fn enumerate_codes(dec: &Decomposition, cap: u64) -> Result<impl Iterator<Item = CodeParams> + '_> {
    let total = count_codes(dec);
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded { what: "codes", needed: total.to_string(), cap: cap.to_string() });
    }
    let radices: Vec<usize> = dec.summands.iter().map(|s| s.nilpotency + 1).collect();
    let total: u64 = radices.iter().map(|&r| r as u64).product();
    Ok((0..total).map(move |mut idx| {
        let mut levels = vec![0; radices.len()];
        for (slot, &r) in levels.iter_mut().zip(&radices).rev() {
            *slot = (idx % r as u64) as usize;
            idx /= r as u64;
        }
        CodeParams::from_levels(dec, &levels).expect("levels within range")
    }))
}
