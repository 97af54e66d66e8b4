//! Small dense linear algebra kernels: unit-pivot elimination over `Z/p^nZ`,
//! row reduction over a finite field, and an `F_2` basis on bit masks.

use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElem};

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Solves `sum_j x_j * columns[j] = target` over `Z/p^nZ`.
///
/// The columns must be linearly independent modulo `p`; every pivot is then
/// a unit and the solution is unique.
pub fn solve_unit_pivot(p: u64, modulus: u64, columns: &[Vec<u64>], target: &[u64]) -> Result<Vec<u64>> {
    let ncols = columns.len();
    let nrows = target.len();
    if columns.iter().any(|c| c.len() != nrows) {
        return Err(Error::DimensionMismatch("column length differs from target length".into()));
    }
    let mut rows: Vec<Vec<u64>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[r] % modulus).collect();
            row.push(target[r] % modulus);
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..nrows).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            return Err(Error::Inconsistent);
        };
        rows.swap(pivot_row, r);
        let inv = inv_mod(rows[pivot_row][col], modulus).ok_or(Error::NotAUnit)?;
        for v in rows[pivot_row].iter_mut() {
            *v = *v * inv % modulus;
        }
        let pivot = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_row || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = (*v + modulus - f * pv % modulus) % modulus;
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| r[ncols] != 0) {
        return Err(Error::Inconsistent);
    }
    Ok((0..ncols).map(|j| rows[j][ncols]).collect())
}

/// `log_p` of the size of the `Z/p^nZ`-submodule spanned by `rows`.
///
/// Eliminates with a pivot of minimal valuation; the pivot row then spans a
/// cyclic summand of size `p^{n - v}` that meets the other rows trivially.
pub fn module_log_size(p: u64, n: u32, rows: &[Vec<u64>]) -> u32 {
    let modulus = p.pow(n);
    let val = |x: u64| -> u32 {
        if x == 0 {
            return n;
        }
        let (mut x, mut v) = (x, 0);
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let mut rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % modulus).collect()).collect();
    let mut total = 0;
    while !rows.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                let v = val(x);
                if v < n && best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        let pivot = rows.swap_remove(pi);
        let pv = p.pow(v);
        let unit_inv = inv_mod(pivot[pj] / pv, modulus).expect("unit part");
        for r in rows.iter_mut() {
            let a = r[pj];
            if a == 0 {
                continue;
            }
            let f = (a / pv) % modulus * unit_inv % modulus;
            for (x, &y) in r.iter_mut().zip(&pivot) {
                *x = (*x + modulus - f * y % modulus) % modulus;
            }
        }
        total += n - v;
    }
    total
}

/// Reduced row echelon form over a finite field (a Galois ring with `n = 1`).
/// Returns the pivot columns; zero rows are dropped.
pub fn row_reduce(field: &GaloisRing, rows: &mut Vec<Vec<GrElem>>) -> Vec<usize> {
    debug_assert!(field.is_field());
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        let Some(r) = (pr..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(pr, r);
        let inv = field.inverse(&rows[pr][col]).expect("nonzero field element");
        for v in rows[pr].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot = rows[pr].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pr || field.is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = field.sub(v, &field.mul(&f, pv));
            }
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pr);
    pivots
}

/// Basis of the right kernel `{v : M v = 0}` of a matrix over a finite field.
pub fn kernel(field: &GaloisRing, matrix: &[Vec<GrElem>], ncols: usize) -> Vec<Vec<GrElem>> {
    let mut rows = matrix.to_vec();
    let pivots = row_reduce(field, &mut rows);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// An `F_2`-subspace of `F_2^w` (`w <= 64`) kept in reduced echelon form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitBasis {
    // (pivot bit, vector); the pivot bit is set in exactly one stored vector
    rows: Vec<(u32, u64)>,
}

impl BitBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut b = Self::new();
        for v in it {
            b.insert(v);
        }
        b
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &(bit, row) in &self.rows {
            if v >> bit & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let bit = 63 - v.leading_zeros();
        for (_, row) in self.rows.iter_mut() {
            if *row >> bit & 1 == 1 {
                *row ^= v;
            }
        }
        self.rows.push((bit, v));
        self.rows.sort_unstable_by_key(|r| std::cmp::Reverse(r.0));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r.1)
    }

    pub fn is_subspace_of(&self, other: &BitBasis) -> bool {
        self.vectors().all(|v| other.contains(v))
    }

    /// All `2^dim` elements of the span, in Gray-code order.
    pub fn span(&self) -> impl Iterator<Item = u64> + '_ {
        let dim = self.dim();
        assert!(dim < 64, "span too large to enumerate");
        let vecs: Vec<u64> = self.vectors().collect();
        let mut cur = 0u64;
        (0u64..1 << dim).map(move |i| {
            if i > 0 {
                cur ^= vecs[i.trailing_zeros() as usize];
            }
            cur
        })
    }
}

/// Basis of `{v in F_2^width : popcount(r & v) even for every row r}`.
pub fn bit_kernel(rows: &[u64], width: u32) -> Vec<u64> {
    let b = BitBasis::from_vectors(rows.iter().copied());
    let pivots: Vec<(u32, u64)> = b.rows.clone();
    (0..width)
        .filter(|bit| pivots.iter().all(|(p, _)| p != bit))
        .map(|free| {
            let mut v = 1u64 << free;
            for &(p, row) in &pivots {
                if row >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

/// Solves `sum x_i c_i = y` over `F_2` for up to 64 columns `c_i`.
#[derive(Clone, Debug)]
pub struct BitSolver {
    // (pivot bit, reduced vector, combination of columns giving it)
    rows: Vec<(u32, u64, u64)>,
    rank: usize,
}

impl BitSolver {
    pub fn new(columns: &[u64]) -> Self {
        assert!(columns.len() <= 64);
        let mut rows: Vec<(u32, u64, u64)> = Vec::new();
        for (i, &c) in columns.iter().enumerate() {
            let (mut v, mut combo) = (c, 1u64 << i);
            for &(bit, r, rc) in &rows {
                if v >> bit & 1 == 1 {
                    v ^= r;
                    combo ^= rc;
                }
            }
            if v != 0 {
                rows.push((63 - v.leading_zeros(), v, combo));
            }
        }
        let rank = rows.len();
        BitSolver { rows, rank }
    }

    /// Rank of the columns.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn solve(&self, y: u64) -> Option<u64> {
        let (mut v, mut combo) = (y, 0u64);
        for &(bit, r, rc) in &self.rows {
            if v >> bit & 1 == 1 {
                v ^= r;
                combo ^= rc;
            }
        }
        (v == 0).then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_prime_power() {
        assert_eq!(inv_mod(3, 4), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 9).map(|x| x * 5 % 9), Some(1));
    }

    #[test]
    fn unit_pivot_solve() {
        // columns (1,2) and (2,1) over Z/4, target (1,3)
        let cols = vec![vec![1, 2], vec![2, 1]];
        let x = solve_unit_pivot(2, 4, &cols, &[1, 3]).unwrap();
        assert_eq!((x[0] + 2 * x[1]) % 4, 1);
        assert_eq!((2 * x[0] + x[1]) % 4, 3);
        assert_eq!(solve_unit_pivot(2, 4, &[vec![1, 0]], &[0, 1]), Err(Error::Inconsistent));
    }

    #[test]
    fn module_sizes() {
        // <2> in Z/4 has 2 elements; (2,0) = 2(1,2) so <(1,2), (2,0)> has 4
        assert_eq!(module_log_size(2, 2, &[vec![2]]), 1);
        assert_eq!(module_log_size(2, 2, &[vec![1, 2], vec![2, 0]]), 2);
        assert_eq!(module_log_size(2, 2, &[vec![1, 2], vec![2, 0], vec![0, 2]]), 3);
        assert_eq!(module_log_size(3, 2, &[vec![0, 0]]), 0);
        // brute-force oracle over (Z/4)^3
        let gens = [vec![2u64, 1, 3], vec![0, 2, 2], vec![2, 3, 1]];
        let mut seen = std::collections::HashSet::new();
        for a in 0..4u64 {
            for b in 0..4u64 {
                for c in 0..4u64 {
                    let v: Vec<u64> = (0..3).map(|i| (a * gens[0][i] + b * gens[1][i] + c * gens[2][i]) % 4).collect();
                    seen.insert(v);
                }
            }
        }
        assert_eq!(1usize << module_log_size(2, 2, &gens), seen.len());
    }

    #[test]
    fn bit_kernel_and_solver() {
        let rows = [0b0110, 0b1100];
        let ker = bit_kernel(&rows, 4);
        assert_eq!(ker.len(), 2);
        for v in 0u64..16 {
            let in_ker = rows.iter().all(|r| (r & v).count_ones() % 2 == 0);
            assert_eq!(BitBasis::from_vectors(ker.iter().copied()).contains(v), in_ker);
        }
        let s = BitSolver::new(&[0b011, 0b110, 0b101]);
        assert_eq!(s.rank(), 2);
        let x = s.solve(0b101).unwrap();
        let cols = [0b011u64, 0b110, 0b101];
        let got = (0..3).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ cols[i]);
        assert_eq!(got, 0b101);
        assert_eq!(s.solve(0b001), None);
    }

    #[test]
    fn bit_basis_span() {
        let b = BitBasis::from_vectors([0b011, 0b110, 0b101]);
        assert_eq!(b.dim(), 2);
        let mut span: Vec<u64> = b.span().collect();
        span.sort();
        assert_eq!(span, vec![0, 0b011, 0b101, 0b110]);
        assert!(!b.contains(0b001));
    }
}
