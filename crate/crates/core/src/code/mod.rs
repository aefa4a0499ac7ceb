//! Cyclic codes of length `n` over `Z/p^a`, i.e. ideals of
//! `R = Z_q[X]/(X^n - 1)`.
//!
//! With `X^n - 1 = prod pi_i` over `Z_q`, `R` splits as a product of Galois
//! rings `Z_q[X]/(pi_i)`, each a chain ring with ideals `(p^m)`. A code is
//! therefore a vector of exponents `m_i in 0..=a`; everything else (chain of
//! generators, type, dual, generator matrix) is derived from it.

mod distance;
mod extend;
mod mds;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;
use crate::gfp::{factor_cyclotomic, CyclotomicFactorization};
use crate::hensel::lift_factorization;
use crate::matrix::ZqMatrix;
use crate::poly::{divmod_monic, ext_gcd_mod_p, mul_mod_xn, Poly};
use crate::zq::{Zq, ZqInt};

pub use distance::{lee_weight, min_distances, weight_distribution, Distances, DEFAULT_BUDGET};
pub use extend::{invariant, sqrt_minus_inverse, ExtendedCode, Extension, Monomial};
pub use mds::{mds_exact, mds_finite, mds_sampled, MdsReport};

#[derive(Debug)]
struct RingInner {
    n: usize,
    zq: Zq,
    infinite: bool,
    base: CyclotomicFactorization,
    factors: Vec<Poly>,
    sigma: Vec<usize>,
    components: Vec<GaloisRing>,
}

/// The ambient ring `Z_q[X]/(X^n - 1)` together with its lifted factors.
/// Cheap to clone.
#[derive(Clone, Debug)]
pub struct CyclicRing(Arc<RingInner>);

impl PartialEq for CyclicRing {
    fn eq(&self, other: &CyclicRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n
                && self.0.zq == other.0.zq
                && self.0.infinite == other.0.infinite)
    }
}

impl Eq for CyclicRing {}

impl CyclicRing {
    /// `infinite` marks a working-precision model of the p-adic ring.
    pub fn new(n: usize, p: u64, prec: u32, infinite: bool) -> Result<CyclicRing> {
        let zq = Zq::new(p, prec)?;
        let base = factor_cyclotomic(n, p)?;
        let factors = lift_factorization(&base, prec)?;
        let sigma = (0..base.count())
            .map(|i| base.reciprocal_index(i))
            .collect();
        let components = factors
            .iter()
            .map(|f| GaloisRing::new(f.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclicRing(Arc::new(RingInner {
            n,
            zq,
            infinite,
            base,
            factors,
            sigma,
            components,
        })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn p(&self) -> u64 {
        self.0.zq.p()
    }

    pub fn prec(&self) -> u32 {
        self.0.zq.prec()
    }

    pub fn is_infinite(&self) -> bool {
        self.0.infinite
    }

    pub fn zq(&self) -> &Zq {
        &self.0.zq
    }

    pub fn base(&self) -> &CyclotomicFactorization {
        &self.0.base
    }

    /// Lifted monic irreducible factors `pi_i`, ordered as the cosets.
    pub fn factors(&self) -> &[Poly] {
        &self.0.factors
    }

    pub fn factor_count(&self) -> usize {
        self.0.factors.len()
    }

    /// Index of the factor whose roots are the inverses of those of `pi_i`.
    pub fn reciprocal_index(&self, i: usize) -> usize {
        self.0.sigma[i]
    }

    /// `prod_{i in idx} pi_i`.
    pub fn product<I: IntoIterator<Item = usize>>(&self, idx: I) -> Poly {
        idx.into_iter()
            .fold(Poly::one(self.zq()), |acc, i| &acc * &self.0.factors[i])
    }

    /// Same ring at another precision.
    pub fn with_prec(&self, prec: u32) -> Result<CyclicRing> {
        CyclicRing::new(self.n(), self.p(), prec, self.is_infinite())
    }

    /// `p`-adic valuation of `g` in the `i`-th Galois-ring component.
    pub fn component_valuation(&self, g: &Poly, i: usize) -> Result<u32> {
        Ok(self.0.components[i].element(g)?.valuation())
    }

    fn p_pow(&self, j: u32) -> ZqInt {
        self.zq().from_u64(self.p()).pow(j as u64)
    }
}

/// Exponent vector `(m_0, ..., m_{A-1})` of the ideal `prod (pi_i, p)^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IdealExponents {
    pub exponents: Vec<u32>,
    pub prec: u32,
}

impl fmt::Display for IdealExponents {
    /// `P0^2P1` style; the unit ideal prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &m) in self.exponents.iter().enumerate() {
            match m {
                0 => {}
                1 => write!(f, "P{i}")?,
                _ => write!(f, "P{i}^{m}")?,
            }
            any |= m > 0;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Block sizes `k_0, ..., k_a` of the type `1^{k_0} p^{k_1} ...`; `k_a`
/// counts the coordinates with no free symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeProfile {
    pub p: u64,
    pub blocks: Vec<usize>,
}

impl TypeProfile {
    pub fn prec(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    /// Number of generator rows, `sum_{j < a} k_j`.
    pub fn k_total(&self) -> usize {
        self.blocks[..self.blocks.len() - 1].iter().sum()
    }

    /// `log_p |C| = sum (a - j) k_j`.
    pub fn size_exp(&self) -> u64 {
        let a = self.prec() as u64;
        self.blocks
            .iter()
            .enumerate()
            .map(|(j, &k)| (a - j as u64) * k as u64)
            .sum()
    }

    /// The type `k_a, k_{a-1}, ..., k_0` expected of the dual.
    pub fn complement(&self) -> TypeProfile {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        TypeProfile { p: self.p, blocks }
    }
}

impl fmt::Display for TypeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.prec() as usize;
        let parts: Vec<String> = (0..a)
            .filter(|&j| self.blocks[j] > 0)
            .map(|j| format!("{}^{}", BigUint::from(self.p).pow(j as u32), self.blocks[j]))
            .collect();
        if parts.is_empty() {
            write!(f, "1^0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// One generator `p^m f` of the canonical chain; `factors` lists the `pi_i`
/// whose product is `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEntry {
    pub m: u32,
    pub factors: Vec<usize>,
    pub f: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    ring: CyclicRing,
    exps: Vec<u32>,
}

impl CyclicCode {
    pub fn from_exponents(ring: &CyclicRing, exps: &[u32]) -> Result<CyclicCode> {
        if exps.len() != ring.factor_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                ring.factor_count(),
                exps.len()
            )));
        }
        if let Some(&m) = exps.iter().find(|&&m| m > ring.prec()) {
            return Err(Error::InvalidArgument(format!(
                "exponent {m} exceeds precision {}",
                ring.prec()
            )));
        }
        Ok(CyclicCode {
            ring: ring.clone(),
            exps: exps.to_vec(),
        })
    }

    /// The ideal generated by `gens`, via the valuation of each generator in
    /// every Galois-ring component.
    pub fn canonicalize(ring: &CyclicRing, gens: &[Poly]) -> Result<CyclicCode> {
        let exps = (0..ring.factor_count())
            .map(|i| {
                gens.iter()
                    .map(|g| ring.component_valuation(g, i))
                    .try_fold(ring.prec(), |acc, v| v.map(|v| acc.min(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        CyclicCode::from_exponents(ring, &exps)
    }

    pub fn zero(ring: &CyclicRing) -> CyclicCode {
        CyclicCode {
            ring: ring.clone(),
            exps: vec![ring.prec(); ring.factor_count()],
        }
    }

    pub fn unit(ring: &CyclicRing) -> CyclicCode {
        CyclicCode {
            ring: ring.clone(),
            exps: vec![0; ring.factor_count()],
        }
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn ideal_exponents(&self) -> IdealExponents {
        IdealExponents {
            exponents: self.exps.clone(),
            prec: self.ring.prec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&m| m == self.ring.prec())
    }

    /// `f_j = prod_{i : m_i > j} pi_i` as factor indices.
    fn f_indices(&self, j: u32) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > j).collect()
    }

    /// Canonical generators `p^{m_0} f_0, p^{m_1} f_1, ...` with strictly
    /// increasing `m` and `f_{t+1} | f_t`; empty for the zero code.
    pub fn chain(&self) -> Vec<ChainEntry> {
        let a = self.ring.prec();
        let all = self.exps.len();
        let mut out: Vec<ChainEntry> = Vec::new();
        let mut prev: Option<Vec<usize>> = None;
        for j in 0..a {
            let idx = self.f_indices(j);
            if idx.len() == all || prev.as_ref() == Some(&idx) {
                prev = Some(idx);
                continue;
            }
            out.push(ChainEntry {
                m: j,
                f: self.ring.product(idx.iter().copied()),
                factors: idx.clone(),
            });
            prev = Some(idx);
        }
        out
    }

    pub fn type_profile(&self) -> TypeProfile {
        let a = self.ring.prec();
        let deg = |j: i64| -> usize {
            if j < 0 {
                self.ring.n()
            } else {
                self.f_indices(j as u32)
                    .iter()
                    .map(|&i| self.ring.factors()[i].degree().unwrap_or(0))
                    .sum()
            }
        };
        let mut blocks: Vec<usize> = (0..a as i64).map(|j| deg(j - 1) - deg(j)).collect();
        blocks.push(deg(a as i64 - 1));
        TypeProfile {
            p: self.ring.p(),
            blocks,
        }
    }

    /// `log_p |C|`.
    pub fn size_exp(&self) -> u64 {
        self.type_profile().size_exp()
    }

    /// Rows `p^j X^s f_j`, `0 <= s < deg f_{j-1} - deg f_j`, block by block.
    pub fn generator_rows(&self) -> Vec<Poly> {
        let tp = self.type_profile();
        let mut rows = Vec::new();
        for (j, &k) in tp.blocks[..tp.blocks.len() - 1].iter().enumerate() {
            if k == 0 {
                continue;
            }
            let f = self
                .ring
                .product(self.f_indices(j as u32))
                .scale(&self.ring.p_pow(j as u32));
            rows.extend((0..k).map(|s| f.shift(s)));
        }
        rows
    }

    pub fn generator_matrix(&self) -> Result<ZqMatrix> {
        ZqMatrix::from_polys(self.ring.zq(), self.n(), &self.generator_rows())
    }

    /// Membership by the component valuations.
    pub fn contains(&self, w: &Poly) -> Result<bool> {
        let w = w.rem_xn(self.n());
        for (i, &m) in self.exps.iter().enumerate() {
            if self.ring.component_valuation(&w, i)? < m {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_code(&self, other: &CyclicCode) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| b >= a)
    }

    /// `m^perp_i = a - m_{sigma(i)}`.
    pub fn dual(&self) -> Result<CyclicCode> {
        if self.ring.is_infinite() && self.exps.iter().all(|&m| m > 0) {
            return Err(Error::InfiniteModeUnsupported);
        }
        let a = self.ring.prec();
        let exps: Vec<u32> = (0..self.exps.len())
            .map(|i| a - self.exps[self.ring.reciprocal_index(i)])
            .collect();
        CyclicCode::from_exponents(&self.ring, &exps)
    }

    /// Checks the dual by orthogonality of generator rows and the size
    /// identity `|C| |C^perp| = p^{an}`.
    pub fn verify_dual(&self, dual: &CyclicCode) -> Result<bool> {
        let g = self.generator_matrix()?;
        let h = dual.generator_matrix()?;
        let sizes = self.size_exp() + dual.size_exp() == self.ring.prec() as u64 * self.n() as u64;
        Ok(sizes && g.orthogonal_to(&h))
    }

    /// `g = sum_t p^{m_t} f_t` over the chain.
    pub fn principal_generator(&self) -> Poly {
        self.chain()
            .iter()
            .fold(Poly::zero(self.ring.zq()), |acc, e| {
                &acc + &e.f.scale(&self.ring.p_pow(e.m))
            })
    }

    /// The idempotent generator. It exists exactly when every exponent is
    /// `0` or `a`, and is the product of the prime idempotents with `m_i = a`.
    pub fn idempotent(&self) -> Result<Poly> {
        let a = self.ring.prec();
        if self.exps.iter().any(|&m| m != 0 && m != a) {
            return Err(Error::InvalidArgument(
                "no idempotent generator: an exponent lies strictly between 0 and the precision"
                    .into(),
            ));
        }
        let mut e = Poly::one(self.ring.zq());
        for (i, &m) in self.exps.iter().enumerate() {
            if m == a {
                e = mul_mod_xn(&e, &idempotent_of_prime(&self.ring, i)?, self.n())?;
            }
        }
        Ok(e)
    }

    /// Same code read at a smaller precision (exponents capped).
    pub fn reduce_to(&self, prec: u32) -> Result<CyclicCode> {
        let ring = self.ring.with_prec(prec)?;
        let exps: Vec<u32> = self.exps.iter().map(|&m| m.min(prec)).collect();
        CyclicCode::from_exponents(&ring, &exps)
    }

    /// `(f0f1,2f1)`; the zero code prints `0`.
    pub fn generator_string(&self) -> String {
        let chain = self.chain();
        if chain.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = chain
            .iter()
            .map(|e| {
                let coeff = if e.m == 0 {
                    String::new()
                } else {
                    BigUint::from(self.ring.p()).pow(e.m).to_string()
                };
                let f: String = e.factors.iter().map(|i| format!("f{i}")).collect();
                match (coeff.is_empty(), f.is_empty()) {
                    (true, true) => "1".into(),
                    _ => format!("{coeff}{f}"),
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }

    /// `(f1,2)=P1` style; the unit ideal is `(1)=1` and the zero code
    /// `0=P0^a...`.
    pub fn ideal_string(&self) -> String {
        format!("{}={}", self.generator_string(), self.ideal_exponents())
    }

    /// All codewords by enumeration, as coefficient vectors.
    pub fn distances(&self, budget: u64) -> Result<Distances> {
        min_distances(&self.generator_matrix()?, budget)
    }

    pub fn extend(&self, mode: &Extension) -> Result<ExtendedCode> {
        ExtendedCode::new(self, mode)
    }
}

/// Idempotent `e` with `(e) = (pi_i)`: found mod p from
/// `e ≡ 0 (mod pi_i)`, `e ≡ 1 (mod (X^n - 1)/pi_i)` and lifted digit by digit.
pub fn idempotent_of_prime(ring: &CyclicRing, i: usize) -> Result<Poly> {
    let n = ring.n();
    let p = ring.p();
    let field = ring.zq().residue_field();
    let pi = ring.base().factors()[i].clone();
    let (cof, _) = divmod_monic(&Poly::x_n_minus_one(&field, n), &pi)?;
    // s pi + t cof = 1 over GF(p)
    let (_, s, _) = ext_gcd_mod_p(&pi, &cof);
    let mut e = mul_mod_xn(&s, &pi, n)?.lift_to(ring.prec())?;
    let zq = ring.zq();
    for r in 1..ring.prec() {
        let sq = mul_mod_xn(&e, &e, n)?;
        let defect = &sq - &e;
        if defect.is_zero() {
            break;
        }
        // e^2 - e = p^r h
        let h = divide_by_p_pow(&defect, r);
        let theta = if p == 2 {
            h
        } else {
            let one_minus_2e = &Poly::one(zq) - &e.scale_int(2);
            mul_mod_xn(&h, &one_minus_2e, n)?
        };
        e = &e + &theta.scale(&zq.from_u64(p).pow(r as u64));
    }
    Ok(e)
}

fn divide_by_p_pow(f: &Poly, r: u32) -> Poly {
    let p = BigUint::from(f.ring().p()).pow(r);
    let coeffs = f.residues().iter().map(|c| c / &p).collect();
    Poly::from_residues(f.ring(), coeffs)
}
