//! Dense matrices over `Z/p^a` with a fixed-width kernel (`p^a <= 2^64`).
//!
//! Row spans are compared through a canonical echelon form: pivots are
//! powers of p, entries above a pivot `p^v` are reduced below `p^v`, and the
//! row set is closed under multiplying a pivot row by `p^(a-v)`. Over a
//! chain ring that form is unique per span, and its pivot rows give the
//! mixed-radix coordinates used for enumeration.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::zq::{is_prime, Zq};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZqMatrix {
    p: u64,
    a: u32,
    q: u128,
    cols: usize,
    rows: Vec<Vec<u128>>,
}

/// Row of a canonical echelon form: pivot column and pivot valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub col: usize,
    pub val: u32,
}

pub(crate) fn modulus_u128(p: u64, a: u32) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a == 0 {
        return Err(Error::ZeroPrecision);
    }
    let bits = (a as f64) * (p as f64).log2();
    let q = (p as u128).checked_pow(a).filter(|&q| q <= 1u128 << 64);
    q.ok_or(Error::PrecisionTooLarge(bits.ceil() as u64))
}

fn valuation(x: u128, p: u64, a: u32) -> u32 {
    if x == 0 {
        return a;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p as u128) {
        x /= p as u128;
        v += 1;
    }
    v
}

impl ZqMatrix {
    pub fn new(p: u64, a: u32, cols: usize, rows: Vec<Vec<u128>>) -> Result<ZqMatrix> {
        let q = modulus_u128(p, a)?;
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % q).collect())
            .collect();
        Ok(ZqMatrix {
            p,
            a,
            q,
            cols,
            rows,
        })
    }

    /// Rows from signed integers, reduced mod `p^a`.
    pub fn from_i64s(p: u64, a: u32, rows: &[Vec<i64>]) -> Result<ZqMatrix> {
        let q = modulus_u128(p, a)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| (x as i128).rem_euclid(q as i128) as u128)
                    .collect()
            })
            .collect();
        ZqMatrix::new(p, a, cols, rows)
    }

    /// Rows are coefficient vectors (constant term first) of length `cols`.
    pub fn from_polys(ring: &Zq, cols: usize, polys: &[Poly]) -> Result<ZqMatrix> {
        let rows = polys
            .iter()
            .map(|f| f.to_vector(cols).iter().map(big_to_u128).collect())
            .collect();
        ZqMatrix::new(ring.p(), ring.prec(), cols, rows)
    }

    pub fn empty(p: u64, a: u32, cols: usize) -> Result<ZqMatrix> {
        ZqMatrix::new(p, a, cols, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.a
    }

    pub fn modulus(&self) -> u128 {
        self.q
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u128>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: Vec<u128>) {
        assert_eq!(row.len(), self.cols);
        self.rows
            .push(row.into_iter().map(|x| x % self.q).collect());
    }

    /// Reduction to a smaller precision.
    pub fn reduce_to(&self, a: u32) -> Result<ZqMatrix> {
        if a > self.a {
            return Err(Error::InvalidArgument("cannot raise precision".into()));
        }
        ZqMatrix::new(self.p, a, self.cols, self.rows.clone())
    }

    /// Columns reordered so that new column `j` is old column `perm[j]`,
    /// then multiplied by `scale[j]`.
    pub fn monomial(&self, perm: &[usize], scale: &[i64]) -> ZqMatrix {
        let q = self.q as i128;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                perm.iter()
                    .zip(scale)
                    .map(|(&j, &s)| {
                        let s = (s as i128).rem_euclid(q) as u128;
                        self.mul(r[j], s)
                    })
                    .collect()
            })
            .collect();
        ZqMatrix {
            rows,
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> ZqMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect();
        ZqMatrix {
            cols: self.rows.len(),
            rows,
            ..self.clone()
        }
    }

    fn mul(&self, x: u128, y: u128) -> u128 {
        x * y % self.q
    }

    fn inverse(&self, u: u128) -> u128 {
        debug_assert!(!u.is_multiple_of(self.p as u128));
        let p = self.p as u128;
        let (mut x, mut base, mut e) = (1u128, u % p, p - 2 + (p == 2) as u128);
        while e > 0 {
            if e & 1 == 1 {
                x = x * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        // Newton: each round doubles the number of correct digits.
        for _ in 0..7 {
            let ux = self.mul(u, x);
            x = self.mul(x, (2 + self.q - ux) % self.q);
        }
        debug_assert_eq!(self.mul(u, x), 1 % self.q);
        x
    }

    fn axpy(&self, dst: &mut [u128], c: u128, src: &[u128]) {
        // dst -= c * src
        for (d, s) in dst.iter_mut().zip(src) {
            *d = (*d + self.q - self.mul(c, *s)) % self.q;
        }
    }

    /// Canonical echelon form of the row span with its pivots.
    pub fn echelon(&self) -> (ZqMatrix, Vec<Pivot>) {
        let mut pool: Vec<Vec<u128>> = self
            .rows
            .iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        let mut out: Vec<Vec<u128>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let best = pool
                .iter()
                .enumerate()
                .filter(|(_, r)| r[c] != 0)
                .min_by_key(|(_, r)| valuation(r[c], self.p, self.a))
                .map(|(i, _)| i);
            let Some(i) = best else { continue };
            let mut row = pool.swap_remove(i);
            let v = valuation(row[c], self.p, self.a);
            let pv = (self.p as u128).pow(v);
            let unit = self.inverse(row[c] / pv);
            for x in row.iter_mut() {
                *x = self.mul(*x, unit);
            }
            for other in pool.iter_mut() {
                if other[c] != 0 {
                    let w = other[c] / pv;
                    self.axpy(other, w, &row);
                }
            }
            pool.retain(|r| r.iter().any(|&x| x != 0));
            if v > 0 {
                let ann = (self.p as u128).pow(self.a - v);
                let extra: Vec<u128> = row.iter().map(|&x| self.mul(x, ann)).collect();
                if extra.iter().any(|&x| x != 0) {
                    pool.push(extra);
                }
            }
            out.push(row);
            pivots.push(Pivot { col: c, val: v });
        }
        // reduce entries above each pivot
        for i in 0..out.len() {
            let Pivot { col, val } = pivots[i];
            let pv = (self.p as u128).pow(val);
            let pivot_row = out[i].clone();
            for row in out.iter_mut().take(i) {
                let k = row[col] / pv;
                if k != 0 {
                    self.axpy(row, k, &pivot_row);
                }
            }
        }
        let m = ZqMatrix {
            rows: out,
            ..self.clone()
        };
        (m, pivots)
    }

    /// `log_p` of the number of vectors in the row span.
    pub fn span_size_exp(&self) -> u64 {
        self.echelon()
            .1
            .iter()
            .map(|pv| (self.a - pv.val) as u64)
            .sum()
    }

    pub fn same_span(&self, other: &ZqMatrix) -> bool {
        self.p == other.p
            && self.a == other.a
            && self.cols == other.cols
            && self.echelon().0.rows == other.echelon().0.rows
    }

    /// Every row of `other` lies in the row span of `self`.
    pub fn contains_span(&self, other: &ZqMatrix) -> bool {
        let basis = Basis::new(self);
        other.rows.iter().all(|r| basis.contains(r))
    }

    /// Every row of `self` is orthogonal to every row of `other`.
    pub fn orthogonal_to(&self, other: &ZqMatrix) -> bool {
        self.rows.iter().all(|r| {
            other.rows.iter().all(|s| {
                r.iter()
                    .zip(s)
                    .fold(0u128, |acc, (x, y)| (acc + self.mul(*x, *y)) % self.q)
                    == 0
            })
        })
    }

    /// Valuation of the determinant of a square matrix, capped at `a`
    /// (the cap means the determinant vanishes mod `p^a`).
    pub fn det_valuation(&self) -> u32 {
        let n = self.rows.len();
        assert_eq!(n, self.cols, "square matrix required");
        let mut m = self.rows.clone();
        let mut total = 0u32;
        for k in 0..n {
            let mut best: Option<(usize, usize, u32)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, &x) in row.iter().enumerate().skip(k) {
                    let v = valuation(x, self.p, self.a);
                    if v < self.a && best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((i, j, v)) = best else { return self.a };
            total += v;
            if total >= self.a {
                return self.a;
            }
            m.swap(k, i);
            for row in m.iter_mut() {
                row.swap(k, j);
            }
            let pv = (self.p as u128).pow(v);
            let unit_inv = self.inverse(m[k][k] / pv);
            let pivot_row = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                if row[k] != 0 {
                    let w = self.mul(row[k] / pv, unit_inv);
                    self.axpy(row, w, &pivot_row);
                }
            }
        }
        total
    }

    /// Square submatrix on the given columns (all rows).
    pub fn select_columns(&self, cols: &[usize]) -> ZqMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&j| r[j]).collect())
            .collect();
        ZqMatrix {
            cols: cols.len(),
            rows,
            ..self.clone()
        }
    }
}

fn big_to_u128(x: &BigUint) -> u128 {
    x.to_u128().expect("residue below 2^64")
}

/// Canonical echelon basis prepared for membership and enumeration.
#[derive(Clone, Debug)]
pub struct Basis {
    matrix: ZqMatrix,
    pivots: Vec<Pivot>,
}

impl Basis {
    pub fn new(m: &ZqMatrix) -> Basis {
        let (matrix, pivots) = m.echelon();
        Basis { matrix, pivots }
    }

    pub fn matrix(&self) -> &ZqMatrix {
        &self.matrix
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    /// Coefficient range of each basis row: `p^(a - v)`.
    pub fn radices(&self) -> Vec<u128> {
        let m = &self.matrix;
        self.pivots
            .iter()
            .map(|pv| (m.p as u128).pow(m.a - pv.val))
            .collect()
    }

    pub fn size_exp(&self) -> u64 {
        self.pivots
            .iter()
            .map(|pv| (self.matrix.a - pv.val) as u64)
            .sum()
    }

    pub fn contains(&self, v: &[u128]) -> bool {
        let m = &self.matrix;
        let mut w: Vec<u128> = v.iter().map(|x| x % m.q).collect();
        for (row, pv) in m.rows.iter().zip(&self.pivots) {
            let x = w[pv.col];
            if x == 0 {
                continue;
            }
            let pow = (m.p as u128).pow(pv.val);
            if !x.is_multiple_of(pow) {
                return false;
            }
            m.axpy(&mut w, x / pow, row);
        }
        w.iter().all(|&x| x == 0)
    }
}
