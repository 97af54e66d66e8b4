use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};

use pipqr::additive_f4::DEFAULT_DUAL_CAP;
use pipqr::ambient::verify_chain_summand;
use pipqr::codes::{DEFAULT_CODEWORD_CAP, DEFAULT_ENUMERATION_CAP};
use pipqr::distance::DistanceMethod;
use pipqr::{
    build_additive, code_from_params, count_codes, decompose_ambient, enumerate_codes, min_distance_exhaustive,
    min_distance_via_quotient, AdditiveAmbient, AdditiveCode, Code, CodeParams, Decomposition, Distance,
    DistanceReport,
};

use crate::job::{CodeSpec, Job, JobError};
use crate::report::{f4_tensor_json, f4_tensor_text, poly_json, poly_text, tensor_json, tensor_text, Failure, Report};

/// A report and whether its verdict is positive.
pub type Outcome = Result<(Report, bool), Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Quotient,
    Both,
}

fn var_name(i: usize) -> String {
    format!("X{}", i + 1)
}

fn params_json(p: &CodeParams) -> Value {
    Value::Array(p.pairs.iter().map(|&(i, c)| json!([i, c])).collect())
}

fn distance_json(d: Distance) -> Value {
    match d {
        Distance::Finite(d) => json!(d),
        Distance::Infinite => json!("infinite"),
    }
}

pub fn check_pir(job: &Job) -> Outcome {
    let amb = job.ambient()?;
    let (class, pir) = amb.classify()?;
    let mut r = Report::new("check-pir", &job.sha256);
    r.set("ambient", amb.to_string());
    r.set("class", class.to_string());
    r.set("is_pir", pir.is_pir);
    r.set("non_square_free", pir.non_square_free.iter().map(|&i| i + 1).collect::<Vec<_>>());
    r.set("repeated_variable", pir.repeated_index.map_or(Value::Null, |i| json!(i + 1)));
    r.line(format!("ambient            {amb}"));
    r.line(format!("class              {class}"));
    r.line(format!("principal          {}", pir.is_pir));
    let names: Vec<String> = pir.non_square_free.iter().map(|&i| var_name(i)).collect();
    r.line(format!("repeated roots in  {}", if names.is_empty() { "none".into() } else { names.join(", ") }));
    match (&pir.witness, pir.repeated_index) {
        (Some(w), Some(i)) => {
            r.set(
                "witness",
                json!({
                    "g": poly_json(&w.g),
                    "h": poly_json(&w.h),
                    "u": poly_json(&w.u),
                    "gcd_u_h": poly_json(&w.gcd),
                    "coprime": w.coprime,
                }),
            );
            r.line(format!("witness            t{} = g h + p u", i + 1));
            r.line(format!("  g                {}", poly_text(&w.g, i)));
            r.line(format!("  h                {}", poly_text(&w.h, i)));
            r.line(format!("  u                {}", poly_text(&w.u, i)));
            r.line(format!("  gcd(u mod p, h mod p) = {}", poly_text(&w.gcd, i)));
        }
        _ => r.set("witness", Value::Null),
    }
    let ok = pir.is_pir;
    Ok((r, ok))
}

fn decomposition(job: &Job) -> Result<Arc<Decomposition>, Failure> {
    let amb = job.ambient()?;
    Ok(Arc::new(decompose_ambient(&amb)?))
}

pub fn decompose(job: &Job, idempotents: bool, certify: bool) -> Outcome {
    let dec = decomposition(job)?;
    let amb = &dec.ambient;
    let ring = amb.ring();
    let mut r = Report::new("decompose", &job.sha256);
    r.set("ambient", amb.to_string());
    r.set("class", dec.class.to_string());
    r.set("primary_variable", dec.primary + 1);
    r.line(format!("ambient     {amb}"));
    r.line(format!("class       {}", dec.class));
    r.line(format!("primary     {}", var_name(dec.primary)));
    r.line(format!("summands    {}", dec.summands.len()));
    r.line("  #  class  |C|  j  m  delta  k  nilpotency  residue field  g".to_string());
    let mut rows = Vec::new();
    let mut certified = true;
    for s in &dec.summands {
        let residue = BigUint::from(ring.p()).pow(s.residue_log_p());
        let g = poly_text(&s.g, dec.primary);
        r.line(format!(
            "{:>3}  {:>5}  {:>3}  {:>1}  {:>1}  {:>5}  {:>1}  {:>10}  {:>13}  {}",
            s.index,
            s.class_id,
            s.class_size,
            s.j,
            s.m,
            s.delta,
            s.k,
            s.nilpotency,
            format!("F_{residue}"),
            g
        ));
        let mut row = json!({
            "index": s.index,
            "class": s.class_id,
            "class_size": s.class_size,
            "j": s.j,
            "m": s.m,
            "delta": s.delta,
            "k": s.k,
            "nilpotency": s.nilpotency,
            "residue_field_size": residue.to_string(),
            "g": g,
        });
        if idempotents {
            row["idempotent"] = tensor_json(amb, &s.idempotent);
            row["uniformizer"] = tensor_json(amb, &s.uniformizer);
            r.line(format!("     e  = {}", tensor_text(amb, &s.idempotent)));
            r.line(format!("     pi = {}", tensor_text(amb, &s.uniformizer)));
        }
        if certify {
            let cert = verify_chain_summand(s);
            let ok = cert.is_ok();
            certified &= ok;
            row["chain_certificate"] = match &cert {
                Ok(c) => json!({"ok": true, "exhaustive": c.exhaustive, "checked": c.checked}),
                Err(e) => json!({"ok": false, "message": e.to_string()}),
            };
            r.line(match cert {
                Ok(c) => format!(
                    "     chain ring certified ({} elements{})",
                    c.checked,
                    if c.exhaustive { ", exhaustive" } else { "" }
                ),
                Err(e) => format!("     chain ring certificate FAILED: {e}"),
            });
        }
        rows.push(row);
    }
    r.set("summands", rows);
    if idempotents {
        let resolved = dec.idempotents_resolve_one();
        certified &= resolved;
        r.set("idempotents_resolve_one", resolved);
        r.line(format!("idempotents sum to 1 orthogonally: {resolved}"));
    }
    let log_ok = dec.log_p_total() == amb.log_p_size();
    certified &= log_ok;
    r.set("log_p_size", amb.log_p_size());
    r.set("summand_log_p_total", dec.log_p_total());
    r.line(format!("log_p |R| = {} = sum over summands {}", amb.log_p_size(), dec.log_p_total()));
    Ok((r, certified))
}

pub fn enumerate(job: &Job, cap: Option<u64>) -> Outcome {
    let dec = decomposition(job)?;
    let cap = cap.or(job.limits.enumeration).unwrap_or(DEFAULT_ENUMERATION_CAP);
    let total = count_codes(&dec);
    let mut r = Report::new("enumerate", &job.sha256);
    r.set("ambient", dec.ambient.to_string());
    r.set("count", total.to_string());
    r.line(format!("ambient  {}", dec.ambient));
    r.line(format!("codes    {total}"));
    let mut rows = Vec::new();
    for params in enumerate_codes(&dec, cap)? {
        let code = code_from_params(&dec, &params)?;
        let card = code.cardinality();
        r.line(format!("  {params}  |C| = {card}"));
        rows.push(json!({
            "params": params_json(&params),
            "levels": code.levels(),
            "log_p_size": code.log_p_size(),
            "cardinality": card.to_string(),
        }));
    }
    let ok = BigUint::from(rows.len()) == total;
    r.set("codes", rows);
    Ok((r, ok))
}

fn build_code(job: &Job, dec: &Arc<Decomposition>) -> Result<Code, Failure> {
    match job.code(&dec.ambient)? {
        CodeSpec::Params(p) => {
            code_from_params(dec, &p).map_err(|e| Failure::Parse(job.code_error(format!("code.params: {e}"))))
        }
        CodeSpec::Generators(g) => Ok(Code::from_generators(dec, g)?),
    }
}

fn distance_entry(r: &mut Report, code: &Code, rep: &DistanceReport) -> Value {
    let amb = code.ambient();
    let witness_amb = match rep.method {
        DistanceMethod::Exhaustive => amb.clone(),
        DistanceMethod::Quotient => amb.residue_ambient(),
    };
    r.line(format!("{:<10}  d = {}  ({} codewords scanned)", rep.method.to_string(), rep.d, rep.codewords_scanned));
    if let Some(w) = &rep.witness {
        r.line(format!("            witness {}", tensor_text(&witness_amb, w)));
    }
    json!({
        "d": distance_json(rep.d),
        "codewords_scanned": rep.codewords_scanned,
        "witness": rep.witness.as_ref().map_or(Value::Null, |w| tensor_json(&witness_amb, w)),
    })
}

pub fn distance(job: &Job, method: Method, cap: Option<u64>) -> Outcome {
    let dec = decomposition(job)?;
    let code = build_code(job, &dec)?;
    let cap = cap.or(job.limits.codewords).unwrap_or(DEFAULT_CODEWORD_CAP);
    let mut r = Report::new("distance", &job.sha256);
    r.set("ambient", dec.ambient.to_string());
    r.set("params", params_json(code.params()));
    r.set("cardinality", code.cardinality().to_string());
    r.line(format!("ambient     {}", dec.ambient));
    r.line(format!("code        {}  |C| = {}", code.params(), code.cardinality()));
    let mut ds = Vec::new();
    if method != Method::Quotient {
        let rep = min_distance_exhaustive(&code, cap)?;
        let entry = distance_entry(&mut r, &code, &rep);
        r.set("exhaustive", entry);
        ds.push(rep.d);
    }
    if method != Method::Exhaustive {
        let rep = min_distance_via_quotient(&code, cap)?;
        let entry = distance_entry(&mut r, &code, &rep);
        r.set("quotient", entry);
        ds.push(rep.d);
    }
    let agree = ds.windows(2).all(|w| w[0] == w[1]);
    r.set("d", distance_json(ds[0]));
    if method == Method::Both {
        r.set("methods_agree", agree);
        r.line(format!("methods agree: {agree}"));
    }
    Ok((r, agree))
}

fn additive_ambient(job: &Job) -> Result<Arc<AdditiveAmbient>, Failure> {
    let ring = &job.ring;
    if (ring.p(), ring.n(), ring.l()) != (2, 1, 1) {
        return Err(Failure::Parse(JobError {
            location: None,
            message: format!("additive jobs need [ring] p = 2, n = 1, l = 1, got {ring}"),
        }));
    }
    Ok(Arc::new(build_additive(&job.polys)?))
}

fn summand_table(r: &mut Report, amb: &AdditiveAmbient) {
    r.line(format!("A2 = {}", amb.a2));
    r.line(format!("positions {}", amb.positions()));
    r.line("  #  class  |C|  j  m  delta  k  case".to_string());
    let mut rows = Vec::new();
    for s in &amb.summands {
        r.line(format!(
            "{:>3}  {:>5}  {:>3}  {:>1}  {:>1}  {:>5}  {:>1}  {}",
            s.index, s.class_id, s.class_size, s.j, s.m, s.delta, s.k, s.case
        ));
        rows.push(json!({
            "index": s.index,
            "class": s.class_id,
            "class_size": s.class_size,
            "j": s.j,
            "m": s.m,
            "delta": s.delta,
            "k": s.k,
            "case": s.case.to_string(),
        }));
    }
    r.set("ambient", amb.a2.to_string());
    r.set("positions", amb.positions());
    r.set("summands", rows);
}

pub fn additive_count(job: &Job) -> Outcome {
    let amb = additive_ambient(job)?;
    let mut r = Report::new("additive count", &job.sha256);
    summand_table(&mut r, &amb);
    let total = amb.count_additive_codes();
    let single = amb.count_single_generator();
    r.set("codes", total.to_string());
    r.set("single_generator_codes", single.to_string());
    r.line(format!("additive codes          {total}"));
    r.line(format!("single-generator codes  {single}"));
    Ok((r, true))
}

fn additive_code(job: &Job, amb: &Arc<AdditiveAmbient>) -> Result<AdditiveCode, Failure> {
    let gens = job.additive_generators(&amb.a4)?;
    Ok(AdditiveCode::from_generators(amb, gens)?)
}

fn code_summary(r: &mut Report, amb: &AdditiveAmbient, code: &AdditiveCode) {
    let gens: Vec<Value> = code.generators().iter().map(|g| f4_tensor_json(&amb.a4, g)).collect();
    for g in code.generators() {
        r.line(format!("generator {}", f4_tensor_text(&amb.a4, g)));
    }
    r.set("generators", gens);
    r.set("log2_size", code.log2_size());
    r.line(format!("|D| = 2^{}", code.log2_size()));
}

pub fn additive_rank(job: &Job) -> Outcome {
    let amb = additive_ambient(job)?;
    let code = additive_code(job, &amb)?;
    let mut r = Report::new("additive rank", &job.sha256);
    summand_table(&mut r, &amb);
    code_summary(&mut r, &amb, &code);
    let mut desc = Vec::new();
    for (s, st) in amb.summands.iter().zip(code.descriptors().unwrap_or(&[])) {
        let f = s.kring.to_bits(&st.f);
        let rank = st.rank(&s.kring);
        r.line(format!("summand {}: staircase a = {}, b = {}, f = {f:#x}, rank {rank}", s.index, st.a, st.b));
        desc.push(json!({"a": st.a, "b": st.b, "f_bits": f, "rank": rank}));
    }
    r.set("staircases", desc);
    let rank = code.generator_rank().unwrap_or(0);
    r.set("generator_rank", rank);
    r.line(format!("generator rank {rank}"));
    Ok((r, true))
}

pub fn additive_quantum(job: &Job, cap: Option<u64>) -> Outcome {
    let amb = additive_ambient(job)?;
    let code = additive_code(job, &amb)?;
    let cap = cap.or(job.limits.dual).unwrap_or(DEFAULT_DUAL_CAP);
    let mut r = Report::new("additive quantum", &job.sha256);
    summand_table(&mut r, &amb);
    code_summary(&mut r, &amb, &code);
    let self_orth = code.is_self_orthogonal();
    r.set("self_orthogonal", self_orth);
    r.line(format!("self-orthogonal {self_orth}"));
    if !self_orth {
        r.set("params", Value::Null);
        return Ok((r, false));
    }
    let q = code.quantum_params(cap)?;
    r.set("params", json!({"n": q.n, "k": q.k, "d": q.d}));
    r.line(format!("quantum code [[{}, {}, {}]]", q.n, q.k, q.d));
    Ok((r, true))
}
