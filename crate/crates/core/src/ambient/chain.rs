use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::module_log_size;

use super::{MultiPoly, SummandDescriptor};

/// Summands up to this many elements are scanned exhaustively.
pub const EXHAUSTIVE_CHAIN_LIMIT: u64 = 1 << 20;
const SAMPLE_SIZE: usize = 4096;
const RESIDUE_UNIT_LIMIT: u64 = 1 << 12;

/// Evidence that a summand is a finite chain ring with the advertised shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    pub nilpotency: usize,
    pub residue_log_p: u32,
    /// `log_p |<u^l>|` for `l = 0..=nilpotency`.
    pub ideal_log_sizes: Vec<u32>,
    /// Number of checked elements at each level.
    pub level_counts: Vec<u64>,
    pub exhaustive: bool,
    pub checked: u64,
}

fn fail(msg: String) -> Error {
    Error::Certification(msg)
}

/// Certifies that `e R` is a chain ring: the uniformizer has nilpotency
/// exactly `n k`, every ideal `<u^l>` has size `Q^{w-l}`, the residue ring is
/// a field of size `Q = q^delta`, and every element is a unit times a power of
/// the uniformizer (exhaustively when the summand is small enough).
pub fn verify_chain_summand(s: &SummandDescriptor) -> Result<ChainCertificate> {
    let amb = s.ambient();
    let ring = amb.ring();
    let (p, n) = (ring.p(), ring.n());
    let w = s.nilpotency;
    let e = &s.idempotent;
    if amb.mul(e, e) != *e || amb.is_zero(e) {
        return Err(fail("idempotent is not a nonzero idempotent".into()));
    }
    if !amb.is_zero(&s.uniformizer_pow(w)) || amb.is_zero(&s.uniformizer_pow(w - 1)) {
        return Err(fail(format!("uniformizer nilpotency differs from {w}")));
    }
    let rl = s.residue_log_p();
    let basis = amb.module_basis();
    let ideal_log_sizes: Vec<u32> = (0..=w)
        .map(|l| {
            let pl = s.uniformizer_pow(l);
            let rows: Vec<Vec<u64>> = basis.iter().map(|b| amb.mul(&pl, b).0).collect();
            module_log_size(p, n, &rows)
        })
        .collect();
    for (l, &size) in ideal_log_sizes.iter().enumerate() {
        if size != (w - l) as u32 * rl {
            return Err(fail(format!("ideal of level {l} has p^{size} elements, expected p^{}", (w - l) as u32 * rl)));
        }
    }
    // residue representatives are independent modulo the maximal ideal
    let u = &s.uniformizer;
    let mut rows: Vec<Vec<u64>> = basis.iter().map(|b| amb.mul(u, b).0).collect();
    rows.extend(s.residue_basis.iter().map(|b| b.0.clone()));
    if module_log_size(p, n, &rows) != ideal_log_sizes[0] {
        return Err(fail("residue basis does not span the residue field".into()));
    }
    // nonzero residue representatives are units: tau^{(Q-1) Q^{w-1}} = e
    let q = p.pow(rl);
    let digits = s.residue_basis.len();
    let combine = |idx: u64| -> MultiPoly {
        let mut acc = amb.zero();
        let mut x = idx;
        for b in &s.residue_basis {
            let d = x % p;
            x /= p;
            if d != 0 {
                amb.add_assign(&mut acc, &amb.scale_int(b, d));
            }
        }
        acc
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let reps: Vec<u64> =
        if q <= RESIDUE_UNIT_LIMIT { (1..q).collect() } else { (0..256).map(|_| rng.gen_range(1..q)).collect() };
    let bad_unit = reps.par_iter().find_any(|&&idx| {
        let tau = combine(idx);
        let mut z = amb.pow(&tau, (q - 1) as u128);
        for _ in 1..w {
            z = amb.pow(&z, q as u128);
        }
        z != *e
    });
    if let Some(idx) = bad_unit {
        return Err(fail(format!("residue representative {idx} is not a unit")));
    }
    // every element sum_m tau_m u^m has annihilator level equal to its first nonzero digit
    let vectors = s.digit_vectors(0);
    let total_log = (w * digits) as u32;
    let exhaustive = (p as f64).powi(total_log as i32) <= EXHAUSTIVE_CHAIN_LIMIT as f64;
    let eval = |ds: &[u64]| -> (usize, usize, MultiPoly) {
        let mut y = amb.zero();
        for (d, v) in ds.iter().zip(&vectors) {
            if *d != 0 {
                amb.add_assign(&mut y, &amb.scale_int(v, *d));
            }
        }
        let expected = ds.iter().position(|&d| d != 0).map_or(w, |i| i / digits);
        (expected, s.level(&y), y)
    };
    let keep = |r: (usize, usize, MultiPoly), small: bool| if small { r } else { (r.0, r.1, MultiPoly(Vec::new())) };
    let results: Vec<(usize, usize, MultiPoly)> = if exhaustive {
        let total = p.pow(total_log);
        let small = total <= 1 << 16;
        (0..total)
            .into_par_iter()
            .map(|mut idx| {
                let ds: Vec<u64> = (0..vectors.len())
                    .map(|_| {
                        let d = idx % p;
                        idx /= p;
                        d
                    })
                    .collect();
                keep(eval(&ds), small)
            })
            .collect()
    } else {
        let samples: Vec<Vec<u64>> =
            (0..SAMPLE_SIZE).map(|_| (0..vectors.len()).map(|_| rng.gen_range(0..p)).collect()).collect();
        samples.par_iter().map(|ds| keep(eval(ds), false)).collect()
    };
    let mut level_counts = vec![0u64; w + 1];
    for (expected, got, _) in &results {
        if expected != got {
            return Err(fail(format!("element of expansion level {expected} has annihilator level {got}")));
        }
        level_counts[*got] += 1;
    }
    if exhaustive {
        for (l, &c) in level_counts.iter().enumerate() {
            let want = if l == w { 1 } else { q.pow((w - l) as u32) - q.pow((w - l - 1) as u32) };
            if c != want {
                return Err(fail(format!("{c} elements at level {l}, expected {want}")));
            }
        }
        if results.len() <= 1 << 16 {
            let distinct: HashSet<&MultiPoly> = results.iter().map(|r| &r.2).collect();
            if distinct.len() != results.len() {
                return Err(fail("uniformizer-adic expansions are not unique".into()));
            }
        }
    }
    Ok(ChainCertificate {
        nilpotency: w,
        residue_log_p: rl,
        ideal_log_sizes,
        level_counts,
        exhaustive,
        checked: results.len() as u64,
    })
}
