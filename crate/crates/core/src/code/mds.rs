//! Column-independence (MDS) checks on `k x N` generator matrices.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::ZqMatrix;
use crate::quad::{determinant, QuadInt};
use crate::zq::ZqInt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MdsReport {
    /// No vanishing minor was found among those checked.
    pub is_mds: bool,
    pub checked: u64,
    /// Columns of a vanishing minor.
    pub witness: Option<Vec<usize>>,
    /// Every nonzero exact minor also embedded to a nonzero p-adic value.
    pub embedding_consistent: bool,
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for left in (1..=k).rev() {
        loop {
            let c = binomial(n - x - 1, left - 1);
            if rank < c {
                break;
            }
            rank -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn minor(m: &[Vec<QuadInt>], cols: &[usize]) -> Vec<Vec<QuadInt>> {
    m.iter()
        .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
        .collect()
}

#[derive(Clone, Default)]
struct Tally {
    checked: u64,
    witness: Option<Vec<usize>>,
    consistent: bool,
}

fn merge(a: Tally, b: Tally) -> Tally {
    let witness = match (a.witness, b.witness) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    Tally {
        checked: a.checked + b.checked,
        witness,
        consistent: a.consistent && b.consistent,
    }
}

fn check_one(m: &[Vec<QuadInt>], cols: &[usize], root: Option<&ZqInt>, t: &mut Tally) {
    let d = determinant(&minor(m, cols));
    t.checked += 1;
    if d.is_zero() {
        if t.witness.as_ref().is_none_or(|w| cols < w.as_slice()) {
            t.witness = Some(cols.to_vec());
        }
    } else if let Some(root) = root {
        t.consistent &= !d.embed(root).is_zero();
    }
}

fn report(t: Tally) -> MdsReport {
    MdsReport {
        is_mds: t.witness.is_none(),
        checked: t.checked,
        witness: t.witness,
        embedding_consistent: t.consistent,
    }
}

/// Every `k`-column minor of `m` (with `k` rows) is nonzero in `Z[w]`.
/// When `root` is given each nonzero minor is also mapped through
/// `w -> root` and required to stay nonzero.
pub fn mds_exact(m: &[Vec<QuadInt>], root: Option<&ZqInt>) -> MdsReport {
    let k = m.len();
    let n = m.first().map_or(0, |r| r.len());
    let total = binomial(n, k);
    const CHUNK: u64 = 2048;
    let chunks = total.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally {
                consistent: true,
                ..Tally::default()
            };
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut cols = unrank(start, n, k);
            for r in start..end {
                check_one(m, &cols, root, &mut t);
                if r + 1 < end {
                    next_combination(&mut cols, n);
                }
            }
            t
        })
        .reduce(
            || Tally {
                consistent: true,
                ..Tally::default()
            },
            merge,
        );
    report(tally)
}

/// `samples` uniformly random `k`-subsets drawn from a seeded generator.
pub fn mds_sampled(
    m: &[Vec<QuadInt>],
    samples: usize,
    seed: u64,
    root: Option<&ZqInt>,
) -> MdsReport {
    let k = m.len();
    let n = m.first().map_or(0, |r| r.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets: Vec<Vec<usize>> = (0..samples)
        .map(|_| {
            let mut s = sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    let tally = subsets
        .par_iter()
        .map(|cols| {
            let mut t = Tally {
                consistent: true,
                ..Tally::default()
            };
            check_one(m, cols, root, &mut t);
            t
        })
        .reduce(
            || Tally {
                consistent: true,
                ..Tally::default()
            },
            merge,
        );
    report(tally)
}

/// Finite-precision variant over `Z/p^a`: a minor whose determinant is not
/// `≡ 0 (mod p^a)` is nonzero p-adically. `samples = None` checks all.
pub fn mds_finite(m: &ZqMatrix, samples: Option<(usize, u64)>) -> MdsReport {
    let k = m.row_count();
    let n = m.cols();
    let a = m.prec();
    let subsets: Box<dyn Iterator<Item = Vec<usize>> + Send> = match samples {
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<Vec<usize>> = (0..count)
                .map(|_| {
                    let mut s = sample(&mut rng, n, k).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            Box::new(v.into_iter())
        }
        None => {
            let mut cols: Vec<usize> = (0..k).collect();
            let mut first = true;
            Box::new(std::iter::from_fn(move || {
                if first {
                    first = false;
                    return Some(cols.clone());
                }
                next_combination(&mut cols, n).then(|| cols.clone())
            }))
        }
    };
    let tally = subsets
        .par_bridge()
        .map(|cols| {
            let zero = m.select_columns(&cols).det_valuation() >= a;
            Tally {
                checked: 1,
                witness: zero.then_some(cols),
                consistent: true,
            }
        })
        .reduce(
            || Tally {
                consistent: true,
                ..Tally::default()
            },
            merge,
        );
    report(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_in_order() {
        let mut all = Vec::new();
        let mut c = vec![0, 1];
        loop {
            all.push(c.clone());
            if !next_combination(&mut c, 4) {
                break;
            }
        }
        assert_eq!(all.len(), 6);
        for (r, c) in all.iter().enumerate() {
            assert_eq!(&unrank(r as u64, 4, 2), c);
        }
        assert_eq!(binomial(24, 12), 2_704_156);
        assert_eq!(binomial(8, 4), 70);
    }

    #[test]
    fn repeated_column_is_caught() {
        let q = |x: i64| QuadInt::int(2, x);
        let m = vec![vec![q(1), q(2), q(1)], vec![q(0), q(1), q(0)]];
        let r = mds_exact(&m, None);
        assert!(!r.is_mds);
        assert_eq!(r.witness, Some(vec![0, 2]));
        assert_eq!(r.checked, 3);
    }

    #[test]
    fn finite_minors() {
        let m = ZqMatrix::from_i64s(3, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert!(mds_finite(&m, None).is_mds);
        let m = ZqMatrix::from_i64s(3, 4, &[vec![1, 0, 1, 1], vec![0, 1, 0, 2]]).unwrap();
        let r = mds_finite(&m, None);
        assert!(!r.is_mds);
        assert_eq!(r.witness, Some(vec![0, 2]));
        let s = mds_finite(&m, Some((50, 0)));
        assert_eq!(s.checked, 50);
    }
}
