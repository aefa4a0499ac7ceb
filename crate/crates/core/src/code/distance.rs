//! Exhaustive codeword enumeration for minimum Hamming and Lee weights.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Basis, ZqMatrix};

/// Default cap on the number of enumerated codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Minimum weights over the nonzero codewords; `None` for the zero code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Distances {
    pub size_exp: u64,
    pub hamming: Option<u32>,
    pub lee: Option<u64>,
}

/// `min(u, q - u)` for a residue `u < q`.
pub fn lee_weight(u: u64, q: u64) -> u64 {
    u.min(q - u)
}

struct Space {
    q: u64,
    rows: Vec<Vec<u64>>,
    radices: Vec<u64>,
    // -(radix * row) mod q, added when a digit wraps
    wraps: Vec<Vec<u64>>,
    size_exp: u64,
}

impl Space {
    fn new(m: &ZqMatrix, budget: u64) -> Result<Space> {
        let q = m.modulus();
        if q > u32::MAX as u128 + 1 {
            return Err(Error::PrecisionTooLarge((q as f64).log2().ceil() as u64));
        }
        let basis = Basis::new(m);
        let radices: Vec<u64> = basis.radices().iter().map(|&r| r as u64).collect();
        let total = radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r));
        if total.is_none_or(|t| t > budget) {
            return Err(Error::BudgetExceeded {
                attempted: format!("{}^{}", m.p(), basis.size_exp()),
                budget,
            });
        }
        let q = q as u64;
        let rows: Vec<Vec<u64>> = basis
            .matrix()
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| x as u64).collect())
            .collect();
        let wraps = rows
            .iter()
            .zip(&radices)
            .map(|(r, &k)| r.iter().map(|&x| (q - (x * k) % q) % q).collect())
            .collect();
        Ok(Space {
            q,
            rows,
            radices,
            wraps,
            size_exp: basis.size_exp(),
        })
    }

    /// Calls `visit` on every codeword; the outer digits are split across
    /// threads and each thread folds its own accumulator.
    fn fold<A, F, R>(&self, cols: usize, init: A, visit: F, reduce: R) -> A
    where
        A: Send + Sync + Clone,
        F: Fn(&mut A, &[u64]) + Sync,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let r = self.rows.len();
        // outer digits: enough to give the pool some slack
        let mut split = 0;
        let mut outer = 1u64;
        while split < r && outer < 1024 {
            outer *= self.radices[r - 1 - split];
            split += 1;
        }
        let inner_len = r - split;
        (0..outer)
            .into_par_iter()
            .fold(
                || init.clone(),
                |mut acc, idx| {
                    let mut word = vec![0u64; cols];
                    let mut t = idx;
                    for s in 0..split {
                        let row = r - 1 - s;
                        let c = t % self.radices[row];
                        t /= self.radices[row];
                        for (w, &x) in word.iter_mut().zip(&self.rows[row]) {
                            *w = (*w + c * x) % self.q;
                        }
                    }
                    let mut digits = vec![0u64; inner_len];
                    'odometer: loop {
                        visit(&mut acc, &word);
                        let mut i = 0;
                        loop {
                            if i == inner_len {
                                break 'odometer;
                            }
                            digits[i] += 1;
                            add(&mut word, &self.rows[i], self.q);
                            if digits[i] < self.radices[i] {
                                break;
                            }
                            digits[i] = 0;
                            add(&mut word, &self.wraps[i], self.q);
                            i += 1;
                        }
                    }
                    acc
                },
            )
            .reduce(|| init.clone(), reduce)
    }
}

fn add(word: &mut [u64], row: &[u64], q: u64) {
    for (w, &x) in word.iter_mut().zip(row) {
        let s = *w + x;
        *w = if s >= q { s - q } else { s };
    }
}

/// Minimum Hamming and Lee weights of the row span of `m`.
pub fn min_distances(m: &ZqMatrix, budget: u64) -> Result<Distances> {
    let space = Space::new(m, budget)?;
    let q = space.q;
    let (h, l) = space.fold(
        m.cols(),
        (u32::MAX, u64::MAX),
        |acc, w| {
            let mut ham = 0u32;
            let mut lee = 0u64;
            for &x in w {
                if x != 0 {
                    ham += 1;
                    lee += lee_weight(x, q);
                }
            }
            if ham > 0 {
                acc.0 = acc.0.min(ham);
                acc.1 = acc.1.min(lee);
            }
        },
        |a, b| (a.0.min(b.0), a.1.min(b.1)),
    );
    Ok(Distances {
        size_exp: space.size_exp,
        hamming: (h != u32::MAX).then_some(h),
        lee: (l != u64::MAX).then_some(l),
    })
}

/// Number of codewords of each Hamming weight `0..=cols`.
pub fn weight_distribution(m: &ZqMatrix, budget: u64) -> Result<Vec<u64>> {
    let space = Space::new(m, budget)?;
    let cols = m.cols();
    Ok(space.fold(
        cols,
        vec![0u64; cols + 1],
        |acc, w| acc[w.iter().filter(|&&x| x != 0).count()] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}
