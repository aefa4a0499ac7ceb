//! Length-`n+1` extensions of cyclic codes and monomial maps on them.
//!
//! The extra coordinate sits after position `n - 1` and is labelled `∞`.

use num_traits::ToPrimitive;

use super::{min_distances, CyclicCode, Distances};
use crate::error::{Error, Result};
use crate::matrix::{Basis, ZqMatrix};
use crate::zq::{sqrt_2adic, ZqInt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Each generator row gets the symbol making its coordinates sum to 0.
    ZeroSum,
    /// A row of block `j` (a multiple of `p^j`) gets `p^j c`.
    AppendConstant(ZqInt),
    /// Each row `c` gets `-sqrt(-1/n) * sum(c)`; needs `p = 2` and `n ≡ 7 (mod 8)`.
    QrSelfDual,
}

#[derive(Clone, Debug)]
pub struct ExtendedCode {
    code: CyclicCode,
    mode: Extension,
    matrix: ZqMatrix,
}

/// `sqrt(-1/n)` in the 2-adic integers at the given precision.
pub fn sqrt_minus_inverse(n: usize, ring: &crate::zq::Zq) -> Result<ZqInt> {
    if ring.p() != 2 || n % 8 != 7 {
        return Err(Error::NoSquareRoot(format!("-1/{n}")));
    }
    // one guard digit: a root mod 2^k is only determined mod 2^(k-1)
    let wide = ring.with_prec(ring.prec() + 1)?;
    let s = sqrt_2adic(&wide.from_i64(-(n as i64)))?.reduce_to(ring.prec())?;
    Ok(&s * &ring.from_u64(n as u64).unit_inverse()?)
}

impl ExtendedCode {
    pub fn new(code: &CyclicCode, mode: &Extension) -> Result<ExtendedCode> {
        let ring = code.ring().zq().clone();
        let n = code.n();
        let q = ring
            .modulus()
            .to_u128()
            .ok_or(Error::PrecisionTooLarge(ring.modulus().bits()))?;
        let to_u128 = |x: &ZqInt| x.residue().to_u128().expect("below modulus");
        // `Some(w)`: the extra symbol is `w * sum(row)`; `None`: a block constant.
        let (weight, constant) = match mode {
            Extension::ZeroSum => (Some(q - 1), None),
            Extension::AppendConstant(c) => (None, Some(c.clone())),
            Extension::QrSelfDual => (Some(to_u128(&-&sqrt_minus_inverse(n, &ring)?)), None),
        };
        let base = code.generator_matrix()?;
        let tp = code.type_profile();
        let mut block_of_row = Vec::new();
        for (j, &k) in tp.blocks[..tp.blocks.len() - 1].iter().enumerate() {
            block_of_row.extend(std::iter::repeat_n(j as u32, k));
        }
        let rows = base
            .rows()
            .iter()
            .zip(&block_of_row)
            .map(|(r, &j)| {
                let extra = match (weight, &constant) {
                    (Some(w), _) => {
                        let sum =
                            ring.from_biguint(r.iter().fold(0u128, |s, &x| (s + x) % q).into());
                        to_u128(&(&sum * &ring.from_biguint(w.into())))
                    }
                    (None, Some(c)) => to_u128(&(c * &ring.from_u64(ring.p()).pow(j as u64))),
                    (None, None) => unreachable!(),
                };
                let mut row = r.clone();
                row.push(extra);
                row
            })
            .collect();
        let matrix = ZqMatrix::new(ring.p(), ring.prec(), n + 1, rows)?;
        Ok(ExtendedCode {
            code: code.clone(),
            mode: mode.clone(),
            matrix,
        })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn mode(&self) -> &Extension {
        &self.mode
    }

    /// Generator matrix, columns `0, ..., n-1, ∞`.
    pub fn matrix(&self) -> &ZqMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.cols() == 0
    }

    pub fn size_exp(&self) -> u64 {
        self.matrix.span_size_exp()
    }

    pub fn contains(&self, word: &[u128]) -> bool {
        Basis::new(&self.matrix).contains(word)
    }

    pub fn same_code(&self, other: &ExtendedCode) -> bool {
        self.matrix.same_span(&other.matrix)
    }

    /// Rows pairwise orthogonal and `|C|^2 = q^(n+1)`.
    pub fn is_self_dual(&self) -> bool {
        let full = self.matrix.prec() as u64 * self.len() as u64;
        self.matrix.orthogonal_to(&self.matrix) && 2 * self.size_exp() == full
    }

    pub fn distances(&self, budget: u64) -> Result<Distances> {
        min_distances(&self.matrix, budget)
    }

    /// The generator matrix printed leading coefficient first: columns
    /// `0..n-1` and the row order reversed, `∞` kept last.
    pub fn printed_layout(&self) -> ZqMatrix {
        reversed_layout(&self.matrix, self.code.n())
    }

    /// Every generator row maps into the code under `mono`.
    pub fn is_invariant_under(&self, mono: &Monomial) -> bool {
        invariant(&self.matrix, mono)
    }
}

pub(crate) fn reversed_layout(m: &ZqMatrix, n: usize) -> ZqMatrix {
    let mut perm: Vec<usize> = (0..n).rev().collect();
    perm.extend(n..m.cols());
    let mut rows: Vec<Vec<u128>> = m.select_columns(&perm).rows().to_vec();
    rows.reverse();
    ZqMatrix::new(m.p(), m.prec(), m.cols(), rows).expect("same shape")
}

/// Does the row span of `m` map into itself under `mono`?
pub fn invariant(m: &ZqMatrix, mono: &Monomial) -> bool {
    let basis = Basis::new(m);
    let q = m.modulus();
    m.rows().iter().all(|r| basis.contains(&mono.apply(r, q)))
}

/// Coordinate permutation with unit signs: `w'[image[j]] = sign[j] w[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    image: Vec<usize>,
    signs: Vec<i64>,
}

impl Monomial {
    pub fn new(image: Vec<usize>, signs: Vec<i64>) -> Result<Monomial> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        if signs.len() != image.len() {
            return Err(Error::InvalidArgument("sign vector length".into()));
        }
        Ok(Monomial { image, signs })
    }

    /// From disjoint cycles `(a, b, c)` meaning `a -> b -> c -> a`; `negate`
    /// lists source coordinates whose symbol changes sign.
    pub fn from_cycles(len: usize, cycles: &[&[usize]], negate: &[usize]) -> Result<Monomial> {
        let mut image: Vec<usize> = (0..len).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= len {
                    return Err(Error::InvalidArgument(format!(
                        "coordinate {x} out of range"
                    )));
                }
                image[x] = c[(k + 1) % c.len()];
            }
        }
        let mut signs = vec![1; len];
        for &j in negate {
            signs[j] = -1;
        }
        Monomial::new(image, signs)
    }

    /// Same permutation with the signs attached to target coordinates.
    pub fn with_target_signs(&self) -> Monomial {
        let mut signs = vec![1; self.signs.len()];
        for (j, &s) in self.signs.iter().enumerate() {
            signs[self.image[j]] = s;
        }
        Monomial {
            image: self.image.clone(),
            signs,
        }
    }

    pub fn apply(&self, w: &[u128], q: u128) -> Vec<u128> {
        let mut out = vec![0u128; w.len()];
        for (j, &x) in w.iter().enumerate() {
            out[self.image[j]] = if self.signs[j] < 0 { (q - x) % q } else { x };
        }
        out
    }
}
