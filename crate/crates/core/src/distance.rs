//! Hamming weights and minimum distances, by exhaustive scan of a code or of
//! its reduction modulo `p`.

use std::fmt;

use rayon::prelude::*;

use crate::ambient::{Ambient, MultiPoly};
use crate::codes::{Code, DigitSpan};
use crate::error::{Error, Result};
use crate::galois_ring::GrElem;
use crate::linalg::row_reduce;

/// Minimum distance; the zero code has none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceMethod {
    Exhaustive,
    Quotient,
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMethod::Exhaustive => "exhaustive",
            DistanceMethod::Quotient => "quotient",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub method: DistanceMethod,
    pub d: Distance,
    pub codewords_scanned: u64,
    /// A nonzero word of weight `d`; it lives in the residue ambient for the quotient method.
    pub witness: Option<MultiPoly>,
}

/// Number of positions with a nonzero coefficient.
pub fn hamming_weight(amb: &Ambient, x: &MultiPoly) -> usize {
    amb.weight(x)
}

// top digits split off into parallel blocks
const BLOCK_DIGITS: usize = 8;

/// Minimum weight over the nonzero elements of `span`, with the first
/// minimizing element in enumeration order as witness.
pub fn min_weight(span: &DigitSpan) -> (Distance, u64, Option<MultiPoly>) {
    let amb = span.ambient();
    let digits = span.digits();
    let high = digits.min(BLOCK_DIGITS);
    let low = digits - high;
    let blocks = span.p().pow(high as u32);
    let best = (0..blocks)
        .into_par_iter()
        .filter_map(|h| {
            span.block(h, low)
                .enumerate()
                .filter_map(|(i, x)| {
                    let w = amb.weight(&x);
                    (w > 0).then_some((w, h, i, x))
                })
                .min_by_key(|t| (t.0, t.2))
        })
        .min_by_key(|t| (t.0, t.1, t.2));
    let scanned = span.len().unwrap_or(u64::MAX);
    match best {
        Some((w, _, _, x)) => (Distance::Finite(w), scanned, Some(x)),
        None => (Distance::Infinite, scanned, None),
    }
}

/// Minimum distance by scanning every codeword; `cap` bounds `|code|`.
pub fn min_distance_exhaustive(code: &Code, cap: u64) -> Result<DistanceReport> {
    let span = code.codewords(cap)?;
    let (d, codewords_scanned, witness) = min_weight(&span);
    Ok(DistanceReport { method: DistanceMethod::Exhaustive, d, codewords_scanned, witness })
}

/// A code over the residue field, kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct QuotientCode {
    ambient: Ambient,
    rows: Vec<Vec<GrElem>>,
    pivots: Vec<usize>,
}

impl QuotientCode {
    /// The ideal generated by `gens` in an ambient over a field.
    pub fn from_generators(ambient: &Ambient, gens: &[MultiPoly]) -> Result<Self> {
        let field = ambient.ring();
        if !field.is_field() {
            return Err(Error::InvalidParameter(format!("{field} is not a field")));
        }
        let monomials: Vec<MultiPoly> = (0..ambient.positions())
            .map(|pos| {
                let mut c = vec![field.zero(); ambient.positions()];
                c[pos] = field.one();
                ambient.from_coeffs(&c)
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for g in gens {
            ambient.check(g)?;
            if ambient.is_zero(g) {
                continue;
            }
            for mono in &monomials {
                rows.push(ambient.coeffs(&ambient.mul(g, mono)));
            }
        }
        let pivots = row_reduce(field, &mut rows);
        Ok(QuotientCode { ambient: ambient.clone(), rows, pivots })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Dimension over the residue field.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<MultiPoly> {
        self.rows.iter().map(|r| self.ambient.from_coeffs(r).expect("row of ambient length")).collect()
    }

    pub fn contains(&self, x: &MultiPoly) -> Result<bool> {
        self.ambient.check(x)?;
        let field = self.ambient.ring();
        let mut v = self.ambient.coeffs(x);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc].clone();
            if field.is_zero(&f) {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                *a = field.sub(a, &field.mul(&f, b));
            }
        }
        Ok(v.iter().all(|c| field.is_zero(c)))
    }

    /// Every codeword once: `F_p`-digits against `x^s b` for basis rows `b`.
    pub fn span(&self) -> DigitSpan {
        let field = self.ambient.ring();
        let mut scalars = Vec::with_capacity(field.l());
        let mut cur = field.one();
        for _ in 0..field.l() {
            scalars.push(cur.clone());
            cur = field.mul(&cur, &field.generator());
        }
        let vectors = self
            .basis()
            .iter()
            .flat_map(|b| scalars.iter().map(move |s| (b, s)))
            .map(|(b, s)| self.ambient.scale(b, s))
            .collect();
        DigitSpan::new(&self.ambient, vectors)
    }
}

/// The reduction modulo `p` of a code: the ideal `<H_1 mod p, .., H_n mod p>`.
pub fn quotient_code(code: &Code) -> Result<QuotientCode> {
    let amb = code.ambient();
    let res = amb.residue_ambient();
    let gens: Vec<MultiPoly> = code.h_family().iter().map(|h| amb.reduce(h)).collect();
    QuotientCode::from_generators(&res, &gens)
}

/// Minimum distance of the reduction modulo `p`, which equals that of the code.
pub fn min_distance_via_quotient(code: &Code, cap: u64) -> Result<DistanceReport> {
    let q = quotient_code(code)?;
    let span = q.span();
    span.check_cap("quotient codewords", cap)?;
    let (d, codewords_scanned, witness) = min_weight(&span);
    Ok(DistanceReport { method: DistanceMethod::Quotient, d, codewords_scanned, witness })
}
