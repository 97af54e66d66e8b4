use crate::ambient::{Ambient, MultiPoly};
use crate::error::{Error, Result};

/// The set of combinations `sum d_i v_i` with digits `d_i` in `[0, p)`.
///
/// Callers choose the vectors so that distinct digit strings give distinct
/// elements; the span then has exactly `p^len` members.
#[derive(Clone, Debug)]
pub struct DigitSpan {
    ambient: Ambient,
    vectors: Vec<MultiPoly>,
    // p * v_i, subtracted on carry
    carries: Vec<MultiPoly>,
    p: u64,
}

impl DigitSpan {
    pub fn new(ambient: &Ambient, vectors: Vec<MultiPoly>) -> Self {
        let p = ambient.ring().p();
        let carries = vectors.iter().map(|v| ambient.scale_int(v, p)).collect();
        DigitSpan { ambient: ambient.clone(), vectors, carries, p }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn vectors(&self) -> &[MultiPoly] {
        &self.vectors
    }

    pub fn digits(&self) -> usize {
        self.vectors.len()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of elements, when it fits in a `u64`.
    pub fn len(&self) -> Option<u64> {
        self.p.checked_pow(self.vectors.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Errors unless the span has at most `cap` elements.
    pub fn check_cap(&self, what: &'static str, cap: u64) -> Result<u64> {
        match self.len() {
            Some(len) if len <= cap => Ok(len),
            _ => Err(Error::CapExceeded {
                what,
                needed: format!("{}^{}", self.p, self.vectors.len()),
                cap: cap.to_string(),
            }),
        }
    }

    /// The element with base-`p` digit string `idx`, least significant digit first.
    pub fn element(&self, mut idx: u64) -> MultiPoly {
        let mut acc = self.ambient.zero();
        for v in &self.vectors {
            let d = idx % self.p;
            idx /= self.p;
            if d != 0 {
                self.ambient.add_assign(&mut acc, &self.ambient.scale_int(v, d));
            }
        }
        acc
    }

    pub fn iter(&self) -> SpanIter<'_> {
        self.block(0, self.vectors.len())
    }

    /// Elements whose top `digits() - low` digits spell `high`; the low digits vary.
    pub fn block(&self, high: u64, low: usize) -> SpanIter<'_> {
        let low = low.min(self.vectors.len());
        let mut base = self.ambient.zero();
        let mut h = high;
        for v in &self.vectors[low..] {
            let d = h % self.p;
            h /= self.p;
            if d != 0 {
                self.ambient.add_assign(&mut base, &self.ambient.scale_int(v, d));
            }
        }
        SpanIter { span: self, low, digits: vec![0; low], cur: Some(base) }
    }
}

/// Odometer over a [`DigitSpan`]; each step costs one addition amortized.
pub struct SpanIter<'a> {
    span: &'a DigitSpan,
    low: usize,
    digits: Vec<u64>,
    cur: Option<MultiPoly>,
}

impl Iterator for SpanIter<'_> {
    type Item = MultiPoly;

    fn next(&mut self) -> Option<MultiPoly> {
        let out = self.cur.clone()?;
        let amb = &self.span.ambient;
        let cur = self.cur.as_mut().expect("checked above");
        let mut i = 0;
        loop {
            if i == self.low {
                self.cur = None;
                break;
            }
            self.digits[i] += 1;
            amb.add_assign(cur, &self.span.vectors[i]);
            if self.digits[i] < self.span.p {
                break;
            }
            self.digits[i] = 0;
            amb.sub_assign(cur, &self.span.carries[i]);
            i += 1;
        }
        Some(out)
    }
}
