use crate::error::{Error, Result};
use crate::galois_ring::{combine, powers, GaloisExtension, GaloisRing, GrElem};
use crate::linalg::solve_unit_pivot;
use crate::polynomials::{crt_idempotents, hensel_primary_decompose, PirReport, Poly};

use super::{Ambient, AmbientClass, MultiPoly};

// residue fields searched for roots by enumeration are capped at this size
const ROOT_SEARCH_LIMIT: u64 = 1 << 24;

/// A cyclotomic class of the semisimple variables: a Galois extension `Q_C`
/// of the coefficient ring embedded in `eps_C * R`.
#[derive(Clone, Debug)]
pub struct ClassSummand {
    pub id: usize,
    /// Index of the factor chosen at each semisimple variable, in processing order.
    pub path: Vec<usize>,
    /// `|C|`: the residue degree of `Q_C` over the coefficient ring.
    pub size: usize,
    pub ring: GaloisRing,
    pub idempotent: MultiPoly,
    // images of the coefficient ring's power basis inside Q_C
    r_images: Vec<GrElem>,
    // images of Q_C's power basis inside the ambient
    phi: Vec<MultiPoly>,
}

impl ClassSummand {
    fn trivial(amb: &Ambient) -> Self {
        let ring = amb.ring().clone();
        let gen = ring.generator();
        let r_images = powers(&ring, &gen, ring.l());
        let phi = r_images.iter().map(|c| amb.constant(c)).collect();
        ClassSummand { id: 0, path: Vec::new(), size: 1, ring, idempotent: amb.one(), r_images, phi }
    }

    /// The coefficient-ring element `c` viewed in `Q_C`.
    pub fn from_base(&self, c: &GrElem) -> GrElem {
        combine(&self.ring, &self.r_images, c)
    }

    pub fn base_poly(&self, f: &Poly) -> Poly {
        f.map(&self.ring, |c| self.from_base(c))
    }

    /// Image of `c` in `Q_C` inside the ambient (a multiple of the class idempotent).
    pub fn embed(&self, amb: &Ambient, c: &GrElem) -> MultiPoly {
        let mut acc = amb.zero();
        for (&a, img) in c.coeffs().iter().zip(&self.phi) {
            if a != 0 {
                amb.add_assign(&mut acc, &amb.scale_int(img, a));
            }
        }
        acc
    }

    /// `f(X_var)` for `f` over `Q_C`, embedded coefficientwise.
    pub fn embed_poly(&self, amb: &Ambient, var: usize, f: &Poly) -> MultiPoly {
        let mut acc = amb.zero();
        for (t, c) in f.coeffs().iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let term = amb.mul(&self.embed(amb, c), &amb.var_pow(var, t));
            amb.add_assign(&mut acc, &term);
        }
        acc
    }

    pub fn phi_basis(&self) -> &[MultiPoly] {
        &self.phi
    }
}

fn find_root(ring: &GaloisRing, f: &Poly) -> Result<GrElem> {
    let field = ring.residue_field();
    let size = field.residue_size();
    if size > ROOT_SEARCH_LIMIT {
        return Err(Error::CapExceeded {
            what: "root search",
            needed: size.to_string(),
            cap: ROOT_SEARCH_LIMIT.to_string(),
        });
    }
    let fbar = f.reduce();
    let r = field
        .elements()
        .find(|x| field.is_zero(&fbar.eval(x)))
        .ok_or_else(|| Error::Certification(format!("{f} has no root in {ring}")))?;
    ring.newton_root(f.coeffs(), &ring.lift(&r))
}

/// Splits the semisimple variables `vars` into cyclotomic classes by
/// iterated factorization over successive Galois extensions.
pub fn semisimple_decompose(amb: &Ambient, vars: &[usize]) -> Result<Vec<ClassSummand>> {
    let p = amb.ring().p();
    let modulus = amb.ring().modulus();
    let mut classes = vec![ClassSummand::trivial(amb)];
    for &var in vars {
        let mut next = Vec::new();
        for cls in &classes {
            let q = &cls.ring;
            let t = cls.base_poly(&amb.polys()[var]);
            let dec = hensel_primary_decompose(&t)?;
            if dec.factors.iter().any(|f| f.k > 1) {
                return Err(Error::RepeatedRoot(var));
            }
            let blocks = dec.blocks();
            let idems = crt_idempotents(&blocks, &t)?;
            for (a, (block, idem)) in blocks.iter().zip(&idems).enumerate() {
                let d = block.deg();
                let ext = GaloisExtension::new(q, d)?;
                let qa = ext.ext();
                let rho = find_root(qa, &block.map(qa, |c| ext.embed(c)))?;
                // Q_a = Q[X]/<block> through X -> rho; express Q_a's power basis in
                // the Z/p^n-basis x_Q^s rho^t and transport it to the ambient
                let rho_pows = powers(qa, &rho, d);
                let q_pows = powers(q, &q.generator(), q.l());
                let mut columns = Vec::with_capacity(q.l() * d);
                let eps = cls.embed_poly(amb, var, idem);
                let mut amb_basis = Vec::with_capacity(q.l() * d);
                for (s, xs) in q_pows.iter().enumerate() {
                    let xs_ext = ext.embed(xs);
                    for (t, rt) in rho_pows.iter().enumerate() {
                        columns.push(qa.mul(&xs_ext, rt).into_coeffs());
                        let b = amb.mul(&amb.mul(&cls.phi[s], &amb.var_pow(var, t)), &eps);
                        amb_basis.push(b);
                    }
                }
                let gen = qa.generator();
                let mut phi = Vec::with_capacity(qa.l());
                for j in 0..qa.l() {
                    let target = qa.pow(&gen, j as u128);
                    let c = solve_unit_pivot(p, modulus, &columns, target.coeffs())?;
                    let mut img = amb.zero();
                    for (&cj, b) in c.iter().zip(&amb_basis) {
                        if cj != 0 {
                            amb.add_assign(&mut img, &amb.scale_int(b, cj));
                        }
                    }
                    phi.push(img);
                }
                let mut path = cls.path.clone();
                path.push(a);
                next.push(ClassSummand {
                    id: 0,
                    path,
                    size: cls.size * d,
                    ring: qa.clone(),
                    idempotent: eps,
                    r_images: cls.r_images.iter().map(|y| ext.embed(y)).collect(),
                    phi,
                });
            }
        }
        classes = next;
    }
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    Ok(classes)
}

/// One finite chain ring summand `e R` of a principal ambient.
#[derive(Clone, Debug)]
pub struct SummandDescriptor {
    pub index: usize,
    pub class_id: usize,
    pub class_size: usize,
    /// Index of the base irreducible factor of the repeated-root polynomial.
    pub j: usize,
    /// Index among the factors over `Q_C` that divide factor `j`.
    pub m: usize,
    /// Primary factor `G` over `Q_C` and the lift `g` of its irreducible part.
    pub big_g: Poly,
    pub g: Poly,
    pub k: usize,
    /// Residue degree over the coefficient ring's residue field: `|C| deg g`.
    pub delta: usize,
    pub nilpotency: usize,
    pub idempotent: MultiPoly,
    pub uniformizer: MultiPoly,
    /// `Z/p^nZ`-combinations of these with digits in `[0, p)` represent the residue field.
    pub residue_basis: Vec<MultiPoly>,
    uniformizer_powers: Vec<MultiPoly>,
    ambient: Ambient,
}

impl SummandDescriptor {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// `log_p` of the residue field size, `l delta`.
    pub fn residue_log_p(&self) -> u32 {
        (self.ambient.ring().l() * self.delta) as u32
    }

    pub fn residue_size(&self) -> Option<u64> {
        self.ambient.ring().p().checked_pow(self.residue_log_p())
    }

    /// `log_p` of the summand size.
    pub fn log_p_size(&self) -> u64 {
        self.residue_log_p() as u64 * self.nilpotency as u64
    }

    /// `uniformizer^m`, with `uniformizer^0` the summand identity.
    pub fn uniformizer_pow(&self, m: usize) -> MultiPoly {
        self.uniformizer_powers.get(m).cloned().unwrap_or_else(|| self.ambient.zero())
    }

    pub fn project(&self, y: &MultiPoly) -> MultiPoly {
        self.ambient.mul(y, &self.idempotent)
    }

    /// Largest `l` with `e y` in `<uniformizer^l>`; `nilpotency` for zero.
    ///
    /// In a chain ring `<u^l>` is the annihilator of `u^{w-l}`.
    pub fn level(&self, y: &MultiPoly) -> usize {
        let amb = &self.ambient;
        let mut cur = self.project(y);
        let mut j = 0;
        while !amb.is_zero(&cur) {
            cur = amb.mul(&cur, &self.uniformizer);
            j += 1;
            if j > self.nilpotency {
                break;
            }
        }
        self.nilpotency.saturating_sub(j)
    }

    /// Vectors whose `[0, p)`-digit combinations enumerate `<uniformizer^level>`
    /// exactly once each (uniformizer-adic expansion from `level` upward).
    pub fn digit_vectors(&self, level: usize) -> Vec<MultiPoly> {
        let amb = &self.ambient;
        (level..self.nilpotency)
            .flat_map(|m| self.residue_basis.iter().map(move |b| amb.mul(b, &self.uniformizer_powers[m])))
            .collect()
    }
}

/// A principal ambient split into finite chain rings.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ambient: Ambient,
    pub class: AmbientClass,
    /// The variable playing the role of `X_1` (the repeated-root one).
    pub primary: usize,
    pub classes: Vec<ClassSummand>,
    pub summands: Vec<SummandDescriptor>,
    pub pir: PirReport,
}

impl Decomposition {
    /// Variables in internal order: the primary one first.
    pub fn variable_order(&self) -> Vec<usize> {
        let mut v = vec![self.primary];
        v.extend((0..self.ambient.num_vars()).filter(|&i| i != self.primary));
        v
    }

    pub fn levels(&self, y: &MultiPoly) -> Vec<usize> {
        self.summands.iter().map(|s| s.level(y)).collect()
    }

    /// Idempotents sum to one and are pairwise orthogonal, exactly.
    pub fn idempotents_resolve_one(&self) -> bool {
        let amb = &self.ambient;
        let mut sum = amb.zero();
        for (i, s) in self.summands.iter().enumerate() {
            amb.add_assign(&mut sum, &s.idempotent);
            for (j, t) in self.summands.iter().enumerate() {
                let prod = amb.mul(&s.idempotent, &t.idempotent);
                let ok = if i == j { prod == s.idempotent } else { amb.is_zero(&prod) };
                if !ok {
                    return false;
                }
            }
        }
        amb.is_one(&sum)
    }

    pub fn log_p_total(&self) -> u64 {
        self.summands.iter().map(SummandDescriptor::log_p_size).sum()
    }
}

/// Decomposes a semisimple or principal modular ambient into chain summands.
pub fn decompose_ambient(amb: &Ambient) -> Result<Decomposition> {
    let (class, pir) = amb.classify()?;
    if class == AmbientClass::ModularNonPir {
        return Err(Error::NotPrincipal(format!("{amb}")));
    }
    let primary = pir.repeated_index.unwrap_or(0);
    let others: Vec<usize> = (0..amb.num_vars()).filter(|&i| i != primary).collect();
    let classes = semisimple_decompose(amb, &others)?;
    let t_primary = &amb.polys()[primary];
    let base = hensel_primary_decompose(t_primary)?;
    let n = amb.ring().n() as usize;
    let p = amb.ring().p();
    let mut summands = Vec::new();
    for cls in &classes {
        let t = cls.base_poly(t_primary);
        let dec = hensel_primary_decompose(&t)?;
        let idems = crt_idempotents(&dec.blocks(), &t)?;
        let mut per_j = vec![0usize; base.factors.len()];
        for (f, idem) in dec.factors.iter().zip(&idems) {
            let gbar = f.g.reduce();
            let j = base
                .factors
                .iter()
                .position(|b| cls.base_poly(&b.g).reduce().rem(&gbar).is_ok_and(|r| r.is_zero()))
                .ok_or_else(|| Error::Certification(format!("{} divides no base factor", f.g)))?;
            let m = per_j[j];
            per_j[j] += 1;
            let e = cls.embed_poly(amb, primary, idem);
            let uniformizer =
                if f.k >= 2 { amb.mul(&cls.embed_poly(amb, primary, &f.g), &e) } else { amb.scale_int(&e, p) };
            let w = n * f.k;
            let mut uniformizer_powers = vec![e.clone()];
            for i in 0..w {
                uniformizer_powers.push(amb.mul(&uniformizer_powers[i], &uniformizer));
            }
            let residue_basis = cls
                .phi
                .iter()
                .flat_map(|ph| (0..f.r).map(move |t| (ph, t)))
                .map(|(ph, t)| amb.mul(&amb.mul(ph, &amb.var_pow(primary, t)), &e))
                .collect();
            summands.push(SummandDescriptor {
                index: summands.len(),
                class_id: cls.id,
                class_size: cls.size,
                j,
                m,
                big_g: f.big_g.clone(),
                g: f.g.clone(),
                k: f.k,
                delta: cls.size * f.r,
                nilpotency: w,
                idempotent: e,
                uniformizer,
                residue_basis,
                uniformizer_powers,
                ambient: amb.clone(),
            });
        }
    }
    Ok(Decomposition { ambient: amb.clone(), class, primary, classes, summands, pir })
}
