//! Named codes: the 2-adic Hamming and Golay codes, the 3-adic Golay code,
//! quadratic-residue codes over the 2-adic integers, lifted BCH and
//! Reed-Muller codes, and the Lee-distance data of the Hamming tower.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::code::{CyclicCode, CyclicRing, ExtendedCode, Extension, Monomial};
use crate::error::{Error, Result};
use crate::matrix::ZqMatrix;
use crate::poly::{mul_mod_xn, Poly};
use crate::quad::QuadInt;
use crate::zq::{hensel_root, is_prime, sqrt_2adic, Zq, ZqInt};

/// Coefficients `x + y w` of a generator, constant term first.
pub type QuadPattern = &'static [(i64, i64)];

/// `X^3 + w X^2 + (w - 1) X - 1` with `w^2 - w + 2 = 0`.
pub const HAMMING_PATTERN: QuadPattern = &[(-1, 0), (-1, 1), (0, 1), (1, 0)];

/// Degree-11 divisor of `X^23 - 1` with `w^2 - w + 6 = 0`.
pub const GOLAY2_PATTERN: QuadPattern = &[
    (-1, 0),
    (-1, 1),
    (2, 1),
    (4, 0),
    (4, -1),
    (3, -2),
    (-1, -2),
    (-3, -1),
    (-4, 0),
    (-3, 1),
    (0, 1),
    (1, 0),
];

/// `X^5 + w X^4 - X^3 + X^2 + (w - 1) X - 1` with `w^2 - w + 3 = 0`.
pub const GOLAY3_PATTERN: QuadPattern = &[(-1, 0), (-1, 1), (1, 0), (-1, 0), (0, 1), (1, 0)];

/// The root `≡ 0 (mod p)` of `X^2 - X + c`.
pub fn quadratic_root(p: u64, c: i64, prec: u32) -> Result<ZqInt> {
    let zq = Zq::new(p, prec)?;
    hensel_root(&Poly::from_i64s(&zq, &[c, -1, 1]), 0)
}

pub fn quad_poly(c: i64, pattern: &[(i64, i64)]) -> Vec<QuadInt> {
    pattern
        .iter()
        .map(|&(x, y)| QuadInt::new(c, x, y))
        .collect()
}

/// The pattern with `w` replaced by `root`.
pub fn embed_pattern(pattern: &[(i64, i64)], root: &ZqInt) -> Result<Poly> {
    let zq = root.ring();
    let coeffs: Vec<ZqInt> = pattern
        .iter()
        .map(|&(x, y)| &zq.from_i64(x) + &(&zq.from_i64(y) * root))
        .collect();
    Poly::from_coeffs(zq, &coeffs)
}

/// Shifts of `pattern` with a 1 appended, `n - deg` rows over `Z[w]`.
/// `leading_first` writes each row from the top coefficient down and lists
/// the rows from the highest shift, as in the usual printed form.
pub fn quad_generator_matrix(
    c: i64,
    pattern: &[(i64, i64)],
    n: usize,
    leading_first: bool,
) -> Vec<Vec<QuadInt>> {
    let deg = pattern.len() - 1;
    let coeffs: Vec<QuadInt> = if leading_first {
        quad_poly(c, pattern).into_iter().rev().collect()
    } else {
        quad_poly(c, pattern)
    };
    (0..n - deg)
        .map(|r| {
            let mut row = vec![QuadInt::zero(c); n + 1];
            for (t, v) in coeffs.iter().enumerate() {
                row[r + t] = v.clone();
            }
            row[n] = QuadInt::one(c);
            row
        })
        .collect()
}

/// Embeds a `Z[w]` matrix at the root's precision.
pub fn embed_matrix(m: &[Vec<QuadInt>], root: &ZqInt) -> Result<ZqMatrix> {
    let zq = root.ring();
    let rows: Vec<Vec<u128>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    v.embed(root)
                        .residue()
                        .to_u128()
                        .ok_or(Error::PrecisionTooLarge(zq.modulus().bits()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    ZqMatrix::new(zq.p(), zq.prec(), m.first().map_or(0, Vec::len), rows)
}

/// The 4 x 8 Hamming generator matrix over `Z[w]`, `w^2 - w + 2 = 0`, in
/// the printed layout (columns `0..6`, then `∞`).
pub fn hamming_quad_matrix() -> Vec<Vec<QuadInt>> {
    quad_generator_matrix(2, HAMMING_PATTERN, 7, true)
}

/// 12 x 24 generator matrix of the 2-adic Golay code over `Z[w]`, `c = 6`.
pub fn golay2_quad_matrix() -> Vec<Vec<QuadInt>> {
    quad_generator_matrix(6, GOLAY2_PATTERN, 23, false)
}

/// 6 x 12 generator matrix of the 3-adic Golay code over `Z[w]`, `c = 3`.
pub fn golay3_quad_matrix() -> Vec<Vec<QuadInt>> {
    quad_generator_matrix(3, GOLAY3_PATTERN, 11, false)
}

/// A cyclic code generated by one lifted divisor, with its extension.
#[derive(Clone, Debug)]
pub struct NamedCode {
    /// Root of the auxiliary quadratic at the working precision.
    pub root: ZqInt,
    pub generator: Poly,
    pub code: CyclicCode,
    pub extended: ExtendedCode,
}

fn named(n: usize, p: u64, c: i64, pattern: &[(i64, i64)], prec: u32) -> Result<NamedCode> {
    let root = quadratic_root(p, c, prec)?;
    let generator = embed_pattern(pattern, &root)?;
    let ring = CyclicRing::new(n, p, prec, false)?;
    let i = ring
        .factors()
        .iter()
        .position(|f| *f == generator)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{generator} is not a lifted factor of X^{n} - 1"))
        })?;
    let exps: Vec<u32> = (0..ring.factor_count())
        .map(|j| if j == i { prec } else { 0 })
        .collect();
    let code = CyclicCode::from_exponents(&ring, &exps)?;
    let extended = code.extend(&Extension::AppendConstant(ring.zq().one()))?;
    Ok(NamedCode {
        root,
        generator,
        code,
        extended,
    })
}

/// `H_{2^prec}`: length 7, generator `X^3 + λX^2 + (λ-1)X - 1`, 1 appended.
pub fn hamming_2adic(prec: u32) -> Result<NamedCode> {
    named(7, 2, 2, HAMMING_PATTERN, prec)
}

/// `G_{2^prec}`: length 23 with 1 appended.
pub fn golay_2adic(prec: u32) -> Result<NamedCode> {
    named(23, 2, 6, GOLAY2_PATTERN, prec)
}

/// `T_{3^prec}`: length 11 with 1 appended.
pub fn golay_3adic(prec: u32) -> Result<NamedCode> {
    named(11, 3, 3, GOLAY3_PATTERN, prec)
}

/// Nonzero squares mod `n` and the remaining nonzero residues.
pub fn quadratic_residues(n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut is_q = vec![false; n];
    for x in 1..n {
        is_q[x * x % n] = true;
    }
    (1..n).partition(|&x| is_q[x])
}

/// Factor indices whose roots are `ξ^Q` and `ξ^N`, the first entry being
/// the set whose product has the numerically smaller mod-p projection
/// (coefficients read as base-p digits, constant term lowest).
pub fn qr_factor_indices(ring: &CyclicRing) -> Result<[Vec<usize>; 2]> {
    let n = ring.n();
    let (q, nq) = quadratic_residues(n);
    let base = ring.base();
    let mut sets = [Vec::new(), Vec::new()];
    for (i, coset) in base.cosets().iter().enumerate() {
        if coset == &[0] {
            continue;
        }
        if coset.iter().all(|j| q.contains(j)) {
            sets[0].push(i);
        } else if coset.iter().all(|j| nq.contains(j)) {
            sets[1].push(i);
        } else {
            return Err(Error::InvalidArgument(format!(
                "{} is not a square mod {n}",
                ring.p()
            )));
        }
    }
    let value = |idx: &[usize]| -> BigUint {
        let field = ring.zq().residue_field();
        let prod = idx
            .iter()
            .fold(Poly::one(&field), |acc, &i| &acc * &base.factors()[i]);
        prod.residues()
            .iter()
            .rev()
            .fold(BigUint::from(0u32), |acc, c| acc * ring.p() + c)
    };
    if value(&sets[1]) < value(&sets[0]) {
        sets.swap(0, 1);
    }
    Ok(sets)
}

/// Data of the idempotent `α + β f_Q + γ f_N`.
#[derive(Clone, Debug)]
pub struct QRSplit {
    pub n: usize,
    pub residues: Vec<usize>,
    pub nonresidues: Vec<usize>,
    pub f_q: Poly,
    pub f_n: Poly,
    pub alpha: ZqInt,
    pub beta: ZqInt,
    pub gamma: ZqInt,
}

impl QRSplit {
    pub fn idempotent(&self) -> Poly {
        let one = Poly::one(self.f_q.ring()).scale(&self.alpha);
        &(&one + &self.f_q.scale(&self.beta)) + &self.f_n.scale(&self.gamma)
    }
}

#[derive(Clone, Debug)]
pub struct QrCode {
    pub code: CyclicCode,
    pub split: QRSplit,
    pub idempotent: Poly,
}

fn check_qr_length(n: usize) -> Result<()> {
    if n % 8 != 7 || !is_prime(n as u64) {
        return Err(Error::BadLength(n));
    }
    Ok(())
}

/// `which = 1`: coefficients `((n+1), (1+s), (1-s)) / 2n`;
/// `which = 2`: `((n-1), (-1+s), (-1-s)) / 2n`, with `s^2 = -n` known to
/// two more digits than `zq`.
fn qr_split(n: usize, which: u8, s: &ZqInt, zq: &Zq) -> Result<QRSplit> {
    let (residues, nonresidues) = quadratic_residues(n);
    let indicator = |set: &[usize]| {
        let mut v = vec![0i64; n];
        for &i in set {
            v[i] = 1;
        }
        Poly::from_i64s(zq, &v)
    };
    let sr = s.ring();
    let sign = if which == 1 { 1 } else { -1 };
    let half = |x: ZqInt| x.div_p_pow(1)?.reduce_to(zq.prec());
    let n_inv = zq.from_u64(n as u64).unit_inverse()?;
    let alpha = &zq.from_u64(((n as i64 + sign) / 2) as u64) * &n_inv;
    let beta = &half(&sr.from_i64(sign) + s)? * &n_inv;
    let gamma = &half(&sr.from_i64(sign) - s)? * &n_inv;
    Ok(QRSplit {
        n,
        f_q: indicator(&residues),
        f_n: indicator(&nonresidues),
        residues,
        nonresidues,
        alpha,
        beta,
        gamma,
    })
}

fn exps_for(ring: &CyclicRing, idx: &[usize]) -> Vec<u32> {
    (0..ring.factor_count())
        .map(|i| if idx.contains(&i) { ring.prec() } else { 0 })
        .collect()
}

/// Quadratic-residue code `which` of prime length `n ≡ 7 (mod 8)` over
/// `Z/2^prec`: code 1 is `(π^(1))`, code 2 is `((X-1)π^(1))`. The branch of
/// `sqrt(-n)` is the one whose code-1 idempotent generates code 1.
pub fn qr_code(n: usize, which: u8, prec: u32) -> Result<QrCode> {
    check_qr_length(n)?;
    if which != 1 && which != 2 {
        return Err(Error::InvalidArgument(format!(
            "quadratic-residue code {which} (expected 1 or 2)"
        )));
    }
    let ring = CyclicRing::new(n, 2, prec, false)?;
    let zq = ring.zq();
    let [pi1, _] = qr_factor_indices(&ring)?;
    let code1 = CyclicCode::from_exponents(&ring, &exps_for(&ring, &pi1))?;
    // a square root mod 2^k is only defined mod 2^(k-1); halving costs one more
    let s0 = sqrt_2adic(&Zq::new(2, prec + 2)?.from_i64(-(n as i64)))?;
    let mut chosen = None;
    for s in [s0.clone(), -&s0] {
        let split = qr_split(n, 1, &s, zq)?;
        if CyclicCode::canonicalize(&ring, &[split.idempotent()])? == code1 {
            chosen = Some(s);
            break;
        }
    }
    let s = chosen.ok_or_else(|| {
        Error::InvalidArgument("no branch of sqrt(-n) gives the idempotent".into())
    })?;
    let split = qr_split(n, which, &s, zq)?;
    let code = if which == 1 {
        code1
    } else {
        let unit_root = ring.base().coset_index(0);
        let mut idx = pi1.clone();
        idx.push(unit_root);
        CyclicCode::from_exponents(&ring, &exps_for(&ring, &idx))?
    };
    let idempotent = split.idempotent();
    Ok(QrCode {
        code,
        split,
        idempotent,
    })
}

/// Code 1 extended by `c_∞ = -sqrt(-1/n) * sum(c)`, self-dual of type
/// `1^((n+1)/2)`.
pub fn qr_self_dual_extension(n: usize, prec: u32) -> Result<ExtendedCode> {
    qr_code(n, 1, prec)?.code.extend(&Extension::QrSelfDual)
}

/// `e^2 = e` in `Z_q[X]/(X^n - 1)`.
pub fn is_idempotent(e: &Poly, n: usize) -> Result<bool> {
    Ok(mul_mod_xn(e, e, n)? == e.rem_xn(n))
}

/// Lifted BCH code of length `p^m - 1` and designed distance `delta`: the
/// lifted factors whose roots meet `ξ^1, ..., ξ^(delta-1)`.
pub fn bch_lift(p: u64, m: u32, delta: usize, prec: u32) -> Result<CyclicCode> {
    let n = p
        .checked_pow(m)
        .and_then(|v| usize::try_from(v - 1).ok())
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} is too large")))?;
    if !(2..=n).contains(&delta) {
        return Err(Error::InvalidArgument(format!(
            "designed distance {delta} outside 2..={n}"
        )));
    }
    let ring = CyclicRing::new(n, p, prec, false)?;
    let idx: Vec<usize> = (0..ring.factor_count())
        .filter(|&i| {
            ring.base().cosets()[i]
                .iter()
                .any(|&j| (1..delta).contains(&j))
        })
        .collect();
    CyclicCode::from_exponents(&ring, &exps_for(&ring, &idx))
}

/// Lifted punctured Reed-Muller code `RM(r, m)` of length `2^m - 1`: the
/// factors for the nonzero `j` with binary weight below `m - r`.
pub fn rm_lift(r: u32, m: u32, prec: u32) -> Result<CyclicCode> {
    if r >= m || m >= 32 {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= r < m < 32, got r = {r}, m = {m}"
        )));
    }
    let n = (1usize << m) - 1;
    let ring = CyclicRing::new(n, 2, prec, false)?;
    let idx: Vec<usize> = (0..ring.factor_count())
        .filter(|&i| {
            let j = ring.base().cosets()[i][0];
            j != 0 && j.count_ones() < m - r
        })
        .collect();
    CyclicCode::from_exponents(&ring, &exps_for(&ring, &idx))
}

/// Lee weights of the truncations `α_m = λ mod 2^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeeWeightTrace {
    pub m_max: u32,
    /// `λ_0, λ_1, ...`
    pub digits: Vec<u64>,
    pub alpha: Vec<u64>,
    /// `min(α_m, 2^m - α_m)`.
    pub direct: Vec<u64>,
    /// `w_1` directly, then `(1 - 2λ_{m-1}) α_{m-1} + λ_{m-1} 2^{m-1}`.
    pub recurrence: Vec<u64>,
}

pub fn lee_weight_trace(m_max: u32) -> Result<LeeWeightTrace> {
    if m_max == 0 || m_max > 63 {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} outside 1..=63"
        )));
    }
    let lambda = quadratic_root(2, 2, m_max)?;
    let digits = lambda.digits();
    let alpha: Vec<u64> = (1..=m_max)
        .map(|m| {
            digits[..m as usize]
                .iter()
                .rev()
                .fold(0, |acc, &d| 2 * acc + d)
        })
        .collect();
    let direct: Vec<u64> = alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| a.min((1u64 << (i + 1)) - a))
        .collect();
    let mut recurrence = vec![direct[0]];
    for m in 2..=m_max as usize {
        let l = digits[m - 1] as i128;
        let prev = alpha[m - 2] as i128;
        recurrence.push(((1 - 2 * l) * prev + l * (1i128 << (m - 1))) as u64);
    }
    Ok(LeeWeightTrace {
        m_max,
        digits,
        alpha,
        direct,
        recurrence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeeRow {
    pub prec: u32,
    pub hamming: u32,
    pub lee: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeeTable {
    pub rows: Vec<LeeRow>,
    pub trace: LeeWeightTrace,
}

/// Minimum Hamming and Lee distances of `H_{2^a}`, `a = 1..=a_max`, by
/// exhaustive enumeration, and the Lee-weight trace of `λ` to `a_max`.
pub fn lee_tables(a_max: u32, budget: u64) -> Result<LeeTable> {
    let rows = (1..=a_max)
        .map(|a| {
            let d = hamming_2adic(a)?.extended.distances(budget)?;
            Ok(LeeRow {
                prec: a,
                hamming: d.hamming.expect("nonzero code"),
                lee: d.lee.expect("nonzero code"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeeTable {
        rows,
        trace: lee_weight_trace(a_max)?,
    })
}

/// Monomials `x -> x+1`, `x -> 2x` and `x -> -1/x` on the coordinates
/// `0..6, ∞ = 7` of the printed Hamming layout; signs on source coordinates.
pub fn hamming_automorphisms() -> [Monomial; 3] {
    let build = |cycles: &[&[usize]], negate: &[usize]| {
        Monomial::from_cycles(8, cycles, negate).expect("valid")
    };
    [
        build(&[&[0, 1, 2, 3, 4, 5, 6]], &[]),
        build(&[&[1, 2, 4], &[3, 6, 5]], &[]),
        build(&[&[0, 7], &[1, 6], &[2, 3], &[4, 5]], &[0, 1, 2, 4]),
    ]
}
