use serde_json::{json, Map, Value};

use pipqr::{Ambient, GaloisRing, GrElem, MultiPoly, Poly};

use crate::job::JobError;

pub const SCHEMA_VERSION: u32 = 1;

/// Deterministic output of one command: a JSON object and the matching text lines.
pub struct Report {
    pub command: &'static str,
    pub sha256: String,
    pub result: Map<String, Value>,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, sha256: &str) -> Self {
        Report { command, sha256: sha256.to_string(), result: Map::new(), text: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "job_sha256": self.sha256,
            "result": Value::Object(self.result.clone()),
        });
        serde_json::to_string_pretty(&v).expect("json values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("pipqr {}\njob sha256 {}\n", self.command, self.sha256);
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// Exit status of a failed run.
#[derive(Debug)]
pub enum Failure {
    Parse(JobError),
    Negative(String),
    Cap(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Negative(_) => "negative",
            Failure::Parse(_) => "invalid-job",
            Failure::Cap(_) => "cap-exceeded",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Parse(e) => e.to_string(),
            Failure::Negative(m) | Failure::Cap(m) => m.clone(),
        }
    }

    pub fn to_json(&self, command: &str, sha256: Option<&str>) -> String {
        let mut err = Map::new();
        err.insert("kind".into(), self.kind().into());
        err.insert("message".into(), self.message().into());
        if let Failure::Parse(JobError { location: Some((line, col)), .. }) = self {
            err.insert("line".into(), (*line).into());
            err.insert("column".into(), (*col).into());
        }
        let mut v = Map::new();
        v.insert("schema_version".into(), SCHEMA_VERSION.into());
        v.insert("command".into(), command.into());
        v.insert("job_sha256".into(), sha256.map_or(Value::Null, Value::from));
        v.insert("error".into(), Value::Object(err));
        serde_json::to_string_pretty(&Value::Object(v)).expect("json values serialize")
    }
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        Failure::Parse(e)
    }
}

impl From<pipqr::Error> for Failure {
    fn from(e: pipqr::Error) -> Self {
        use pipqr::Error::*;
        match e {
            CapExceeded { .. } => Failure::Cap(e.to_string()),
            NotPrincipal(_) | NotSelfOrthogonal | Certification(_) => Failure::Negative(e.to_string()),
            _ => Failure::Parse(JobError { location: None, message: e.to_string() }),
        }
    }
}

pub fn elem_json(ring: &GaloisRing, c: &GrElem) -> Value {
    if ring.l() == 1 {
        json!(c.coeffs()[0])
    } else {
        json!(c.coeffs())
    }
}

/// Ascending coefficient array.
pub fn poly_json(f: &Poly) -> Value {
    Value::Array(f.coeffs().iter().map(|c| elem_json(f.ring(), c)).collect())
}

pub fn poly_text(f: &Poly, var: usize) -> String {
    f.to_string().replace('X', &format!("X{}", var + 1))
}

fn nest(leaves: &[Value], dims: &[usize]) -> Value {
    match dims.split_first() {
        None => leaves[0].clone(),
        Some((&d, rest)) => {
            let chunk = leaves.len() / d;
            Value::Array((0..d).map(|i| nest(&leaves[i * chunk..(i + 1) * chunk], rest)).collect())
        }
    }
}

/// Nested coefficient arrays, `X_1` outermost.
pub fn tensor_json(amb: &Ambient, x: &MultiPoly) -> Value {
    let ring = amb.ring();
    let leaves: Vec<Value> = amb.coeffs(x).iter().map(|c| elem_json(ring, c)).collect();
    nest(&leaves, amb.degrees())
}

pub fn tensor_text(amb: &Ambient, x: &MultiPoly) -> String {
    serde_json::to_string(&tensor_json(amb, x)).expect("json values serialize")
}

/// `F_4` tensor with entries `a + 2 b` for `a + b w`.
pub fn f4_tensor_json(amb: &Ambient, x: &MultiPoly) -> Value {
    let leaves: Vec<Value> = amb.to_packed(x).into_iter().map(Value::from).collect();
    nest(&leaves, amb.degrees())
}

pub fn f4_tensor_text(amb: &Ambient, x: &MultiPoly) -> String {
    serde_json::to_string(&f4_tensor_json(amb, x)).expect("json values serialize")
}
