//! Factorization over finite fields: square-free decomposition followed by
//! Berlekamp splitting. Output is canonical (sorted by degree, then by the
//! ascending coefficient vector), so reports are reproducible.

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElem};
use crate::linalg;

use super::poly::{ff_gcd, Poly};

fn pth_root_elem(field: &GaloisRing, c: &GrElem) -> GrElem {
    // Frobenius has order l on F_{p^l}, so the inverse is x -> x^{p^{l-1}}
    let mut r = c.clone();
    for _ in 1..field.l() {
        r = field.pow(&r, field.p() as u128);
    }
    r
}

fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.ring();
    let p = field.p() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|c| pth_root_elem(field, c)).collect();
    Poly::new(field, coeffs)
}

/// Square-free decomposition `f = prod a_i^{m_i}` with the `a_i` square-free
/// and pairwise coprime. `f` must be monic of degree >= 1.
pub fn square_free_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        let root = pth_root_poly(f);
        let p = f.ring().p() as usize;
        return square_free_decomposition(&root).into_iter().map(|(g, m)| (g, m * p)).collect();
    }
    let mut c = ff_gcd(f, &df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = ff_gcd(&w, &c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let p = f.ring().p() as usize;
        out.extend(square_free_decomposition(&pth_root_poly(&c)).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

fn pow_mod(base: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut acc = Poly::one(base.ring());
    let mut b = base.rem(m).expect("monic modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m).expect("monic modulus");
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b).rem(m).expect("monic modulus");
        }
    }
    acc
}

/// Irreducible factors of a square-free monic polynomial (Berlekamp).
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.ring().clone();
    let d = f.deg();
    if d <= 1 {
        return vec![f.clone()];
    }
    let q = field.residue_size() as u128;
    let xq = pow_mod(&Poly::x(&field), q, f);
    // column i holds X^{q i} mod f
    let mut cols = Vec::with_capacity(d);
    let mut cur = Poly::one(&field);
    for _ in 0..d {
        cols.push(cur.clone());
        cur = cur.mul(&xq).rem(f).expect("monic");
    }
    let matrix: Vec<Vec<GrElem>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| {
                    let v = cols[i].coeff(j);
                    if i == j {
                        field.sub(&v, &field.one())
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let kernel = linalg::kernel(&field, &matrix, d);
    let target = kernel.len();
    let mut factors = vec![f.clone()];
    for v in kernel {
        if factors.len() == target {
            break;
        }
        let v = Poly::new(&field, v);
        if v.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 {
                next.push(u);
                continue;
            }
            let mut pieces = Vec::new();
            for c in field.elements() {
                let g = ff_gcd(&u, &v.sub(&Poly::constant(&field, c)));
                if g.deg() > 0 {
                    pieces.push(g);
                }
            }
            next.extend(pieces);
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), target);
    factors
}

/// Factorization of a monic polynomial over a finite field into distinct
/// monic irreducibles with multiplicities, sorted canonically.
pub fn ff_factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if !f.ring().is_field() {
        return Err(Error::InvalidParameter("ff_factor needs a finite field".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NonMonic(f.to_string()));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<(Poly, usize)> = square_free_decomposition(f)
        .into_iter()
        .flat_map(|(a, m)| berlekamp(&a).into_iter().map(move |g| (g, m)))
        .collect();
    out.sort_by_key(|(g, _)| g.sort_key());
    Ok(out)
}

/// Product of the distinct monic irreducible factors.
pub fn square_free_part(f: &Poly) -> Result<Poly> {
    let field = f.ring().clone();
    Ok(ff_factor(f)?.into_iter().fold(Poly::one(&field), |acc, (g, _)| acc.mul(&g)))
}

pub fn is_square_free(f: &Poly) -> Result<bool> {
    Ok(ff_factor(f)?.iter().all(|(_, m)| *m == 1))
}
