//! Job files: one TOML document per invocation.
//!
//! ```toml
//! [ring]
//! p = 2
//! n = 2
//! l = 1
//!
//! [ambient]
//! # ascending degree: X^2 + 1
//! polys = [[1, 0, 1], [3, 0, 0, 0, 0, 0, 0, 1]]
//!
//! [code]
//! params = [[2, 0], [2, 0], [0, 1]]
//! ```

use std::fmt;
use std::ops::Range;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::{Spanned, Value};

use pipqr::{Ambient, AmbientSpec, CodeParams, GaloisRing, MultiPoly, Poly};

#[derive(Clone, Debug)]
pub struct JobError {
    pub location: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Some((line, col)) => write!(f, "line {line}, column {col}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    ring: RawRing,
    ambient: RawAmbient,
    code: Option<RawCode>,
    limits: Option<Limits>,
    additive: Option<RawAdditive>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    p: Spanned<u64>,
    n: Spanned<u32>,
    l: Spanned<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    polys: Spanned<Vec<Vec<Spanned<i64>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCode {
    params: Option<Spanned<Vec<(usize, usize)>>>,
    generators: Option<Vec<Spanned<RawGenerator>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    factors: Option<Vec<Vec<i64>>>,
    tensor: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAdditive {
    generators: Vec<Spanned<Value>>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub enumeration: Option<u64>,
    pub codewords: Option<u64>,
    pub dual: Option<u64>,
}

/// A generator as written in the job, resolved once the ambient is known.
#[derive(Clone, Debug)]
enum GeneratorSpec {
    Factors(Vec<Vec<i64>>),
    Tensor(Value),
}

#[derive(Clone, Debug)]
pub enum CodeSpec {
    Params(CodeParams),
    Generators(Vec<MultiPoly>),
}

/// A parsed job. Ambient construction errors keep their source location.
#[derive(Debug)]
pub struct Job {
    source: String,
    pub sha256: String,
    pub ring: GaloisRing,
    pub polys: Vec<Vec<u64>>,
    polys_span: Range<usize>,
    code: Option<(Range<usize>, RawCodeSpec)>,
    additive: Option<Vec<Spanned<Value>>>,
    pub limits: Limits,
}

#[derive(Debug)]
enum RawCodeSpec {
    Params(Vec<(usize, usize)>),
    Generators(Vec<(Range<usize>, GeneratorSpec)>),
}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
    (line, col)
}

impl Job {
    pub fn parse(source: &str) -> Result<Job, JobError> {
        let sha256 = hex::encode(Sha256::digest(source.as_bytes()));
        let at =
            |span: Range<usize>, message: String| JobError { location: Some(line_col(source, span.start)), message };
        let raw: RawJob = toml::from_str(source).map_err(|e| JobError {
            location: e.span().map(|s| line_col(source, s.start)),
            message: e.message().trim().to_string(),
        })?;
        let ring = GaloisRing::new(*raw.ring.p.get_ref(), *raw.ring.n.get_ref(), *raw.ring.l.get_ref())
            .map_err(|e| at(raw.ring.p.span(), format!("ring: {e}")))?;
        let modulus = ring.modulus();
        let polys_span = raw.ambient.polys.span();
        let mut polys = Vec::new();
        for (i, t) in raw.ambient.polys.get_ref().iter().enumerate() {
            let mut coeffs = Vec::with_capacity(t.len());
            for (j, c) in t.iter().enumerate() {
                let v = *c.get_ref();
                if v < 0 || v as u64 >= modulus {
                    return Err(at(c.span(), format!("ambient.polys[{i}][{j}] = {v} is outside [0, {modulus})")));
                }
                coeffs.push(v as u64);
            }
            polys.push(coeffs);
        }
        if polys.is_empty() {
            return Err(at(polys_span, "ambient.polys is empty".into()));
        }
        let code = match raw.code {
            None => None,
            Some(c) => match (c.params, c.generators) {
                (Some(p), None) => Some((p.span(), RawCodeSpec::Params(p.into_inner()))),
                (None, Some(gens)) => {
                    let mut out = Vec::new();
                    for (idx, g) in gens.into_iter().enumerate() {
                        let span = g.span();
                        let g = g.into_inner();
                        let spec = match (g.factors, g.tensor) {
                            (Some(f), None) => GeneratorSpec::Factors(f),
                            (None, Some(t)) => GeneratorSpec::Tensor(t),
                            _ => {
                                return Err(at(
                                    span,
                                    format!("code.generators[{idx}] needs exactly one of `factors` or `tensor`"),
                                ))
                            }
                        };
                        out.push((span, spec));
                    }
                    Some((0..0, RawCodeSpec::Generators(out)))
                }
                _ => {
                    return Err(JobError {
                        location: None,
                        message: "[code] needs exactly one of `params` or `generators`".into(),
                    })
                }
            },
        };
        Ok(Job {
            source: source.to_string(),
            sha256,
            ring,
            polys,
            polys_span,
            code,
            additive: raw.additive.map(|a| a.generators),
            limits: raw.limits.unwrap_or_default(),
        })
    }

    fn at(&self, span: Range<usize>, message: String) -> JobError {
        JobError { location: Some(line_col(&self.source, span.start)), message }
    }

    pub fn ambient(&self) -> Result<Ambient, JobError> {
        AmbientSpec::from_ints(&self.ring, &self.polys)
            .and_then(|s| s.build())
            .map_err(|e| self.at(self.polys_span.clone(), format!("ambient: {e}")))
    }

    /// An error attributed to the `[code]` section.
    pub fn code_error(&self, message: String) -> JobError {
        match &self.code {
            Some((span, RawCodeSpec::Params(_))) => self.at(span.clone(), message),
            _ => JobError { location: None, message },
        }
    }

    /// The `[code]` section over `amb`.
    pub fn code(&self, amb: &Ambient) -> Result<CodeSpec, JobError> {
        let (span, raw) = self
            .code
            .as_ref()
            .ok_or_else(|| JobError { location: None, message: "job has no [code] section".into() })?;
        match raw {
            RawCodeSpec::Params(p) => {
                if p.is_empty() {
                    return Err(self.at(span.clone(), "code.params is empty".into()));
                }
                Ok(CodeSpec::Params(CodeParams::new(p.clone())))
            }
            RawCodeSpec::Generators(gens) => {
                let mut out = Vec::new();
                for (idx, (span, g)) in gens.iter().enumerate() {
                    let what = format!("code.generators[{idx}]");
                    let x = match g {
                        GeneratorSpec::Factors(f) => self.factors(amb, f, &what),
                        GeneratorSpec::Tensor(t) => tensor_terms(amb, t, &what, &|v, path| self.leaf(v, path))
                            .and_then(|terms| amb.from_terms(&terms).map_err(|e| format!("{what}: {e}"))),
                    }
                    .map_err(|m| self.at(span.clone(), m))?;
                    out.push(x);
                }
                Ok(CodeSpec::Generators(out))
            }
        }
    }

    fn factors(&self, amb: &Ambient, factors: &[Vec<i64>], what: &str) -> Result<MultiPoly, String> {
        if factors.len() != amb.num_vars() {
            return Err(format!("{what}: {} factors for {} variables", factors.len(), amb.num_vars()));
        }
        let modulus = self.ring.modulus();
        let mut x = amb.one();
        for (var, f) in factors.iter().enumerate() {
            let mut coeffs = Vec::with_capacity(f.len());
            for (j, &c) in f.iter().enumerate() {
                if c < 0 || c as u64 >= modulus {
                    return Err(format!("{what}.factors[{var}][{j}] = {c} is outside [0, {modulus})"));
                }
                coeffs.push(c as u64);
            }
            let f =
                amb.from_univariate(var, &Poly::from_ints(&self.ring, &coeffs)).map_err(|e| format!("{what}: {e}"))?;
            x = amb.mul(&x, &f);
        }
        Ok(x)
    }

    // an integer, or a vector of `l` integers over the ring's power basis
    fn leaf(&self, v: &Value, path: &str) -> Result<u64, String> {
        let ring = &self.ring;
        let modulus = ring.modulus();
        let digit = |v: &Value, path: &str| match v.as_integer() {
            Some(c) if c >= 0 && (c as u64) < modulus => Ok(c as u64),
            Some(c) => Err(format!("{path} = {c} is outside [0, {modulus})")),
            None => Err(format!("{path} must be an integer")),
        };
        match v {
            Value::Array(parts) if ring.l() > 1 => {
                if parts.len() != ring.l() {
                    return Err(format!("{path} has {} coordinates, ring has degree {}", parts.len(), ring.l()));
                }
                let coeffs = parts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| digit(c, &format!("{path}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let e = ring.elem(coeffs).map_err(|e| format!("{path}: {e}"))?;
                Ok(ring.to_packed(&e))
            }
            _ => Ok(ring.to_packed(&ring.from_int(digit(v, path)?))),
        }
    }

    /// `[additive] generators` as tensors over `amb` with entries `a + 2 b` for `a + b w`.
    pub fn additive_generators(&self, amb: &Ambient) -> Result<Vec<MultiPoly>, JobError> {
        let gens = self
            .additive
            .as_ref()
            .ok_or_else(|| JobError { location: None, message: "job has no [additive] section".into() })?;
        let mut out = Vec::new();
        for (idx, g) in gens.iter().enumerate() {
            let what = format!("additive.generators[{idx}]");
            let leaf = |v: &Value, path: &str| match v.as_integer() {
                Some(c) if (0..4).contains(&c) => Ok(c as u64),
                Some(c) => Err(format!("{path} = {c} is not an F_4 element in [0, 4)")),
                None => Err(format!("{path} must be an integer")),
            };
            let x = tensor_terms(amb, g.get_ref(), &what, &leaf)
                .and_then(|terms| amb.from_terms(&terms).map_err(|e| format!("{what}: {e}")))
                .map_err(|m| self.at(g.span(), m))?;
            out.push(x);
        }
        Ok(out)
    }
}

type Leaf<'a> = dyn Fn(&Value, &str) -> Result<u64, String> + 'a;

/// Nested arrays, `X_1` outermost, flattened into `(exponents, packed coefficient)`.
fn tensor_terms(amb: &Ambient, t: &Value, what: &str, leaf: &Leaf<'_>) -> Result<Vec<(Vec<usize>, u64)>, String> {
    fn walk(
        v: &Value,
        depth: usize,
        vars: usize,
        exps: &mut Vec<usize>,
        path: String,
        leaf: &Leaf<'_>,
        out: &mut Vec<(Vec<usize>, u64)>,
    ) -> Result<(), String> {
        if depth == vars {
            let c = leaf(v, &path)?;
            if c != 0 {
                out.push((exps.clone(), c));
            }
            return Ok(());
        }
        let items = v.as_array().ok_or_else(|| format!("{path} must be an array (depth {} of {vars})", depth + 1))?;
        for (i, item) in items.iter().enumerate() {
            exps.push(i);
            walk(item, depth + 1, vars, exps, format!("{path}[{i}]"), leaf, out)?;
            exps.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(t, 0, amb.num_vars(), &mut Vec::new(), what.to_string(), leaf, &mut out)?;
    Ok(out)
}
