//! Factorization of `X^n - 1` over GF(p) through cyclotomic cosets.
//!
//! The extension GF(p^m), `m = ord_n(p)`, is realized as GF(p)[Y]/(f) with
//! `f` the numerically smallest monic primitive polynomial of degree `m`
//! (coefficients read as base-p digits, constant term least significant).
//! That choice fixes the root `xi = Y^((p^m - 1)/n)` and with it the order
//! and labelling of every factor.

use num_bigint::BigUint;
use num_integer::gcd;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::zq::Zq;

/// GF(p^m) as polynomials in `Y` modulo a monic primitive polynomial.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

pub type FieldElem = Vec<u64>;

impl FiniteField {
    pub fn new(p: u64, m: usize) -> FiniteField {
        FiniteField {
            p,
            m,
            modulus: primitive_poly(p, m),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// The defining primitive polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size_minus_one(&self) -> u128 {
        (self.p as u128).pow(self.m as u32) - 1
    }

    pub fn zero(&self) -> FieldElem {
        vec![0; self.m]
    }

    pub fn one(&self) -> FieldElem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// The class of `Y`, a generator of the multiplicative group.
    pub fn generator(&self) -> FieldElem {
        reduce_mod(&[0, 1], &self.modulus, self.p)
    }

    pub fn from_int(&self, c: u64) -> FieldElem {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> FieldElem {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FieldElem {
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce_mod(&prod, &self.modulus, self.p)
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> FieldElem {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn reduce_mod(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|x| x % p).collect();
    if r.len() < m {
        r.resize(m, 0);
    }
    for k in (m..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (j, &mj) in modulus.iter().enumerate() {
            r[k - m + j] = (r[k - m + j] + (p - c) * mj % p) % p;
        }
    }
    r.truncate(m);
    r
}

fn prime_factors(mut v: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Smallest monic primitive polynomial of degree `m` over GF(p), ordered by
/// the integer whose base-p digits are the coefficients.
pub fn primitive_poly(p: u64, m: usize) -> Vec<u64> {
    assert!(m >= 1);
    let order = (p as u128).pow(m as u32) - 1;
    let factors = prime_factors(order);
    let count = (p as u128).pow(m as u32);
    for v in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut t = v;
        for _ in 0..m {
            f.push((t % p as u128) as u64);
            t /= p as u128;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        let field = FiniteField {
            p,
            m,
            modulus: f.clone(),
        };
        let y = field.generator();
        if field.pow(&y, order) != field.one() {
            continue;
        }
        if factors
            .iter()
            .all(|q| field.pow(&y, order / q) != field.one())
        {
            return f;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

/// Multiplicative order of `p` modulo `n` (1 when `n = 1`).
pub fn multiplicative_order(p: u64, n: usize) -> usize {
    let n = n as u64;
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * p % n;
        k += 1;
    }
    k
}

fn check_coprime(n: usize, p: u64) -> Result<()> {
    if n == 0 || gcd(n as u64, p) != 1 {
        return Err(Error::NotCoprime { n, p });
    }
    Ok(())
}

/// Orbits of `j -> p*j mod n`, each ascending, ordered by least element.
pub fn cyclotomic_cosets(n: usize, p: u64) -> Result<Vec<Vec<usize>>> {
    check_coprime(n, p)?;
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            coset.push(j);
            j = (j as u64 * p % n as u64) as usize;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(cosets)
}

/// Monic irreducible factors of `X^n - 1` mod p, aligned with their cosets.
#[derive(Clone, Debug)]
pub struct CyclotomicFactorization {
    n: usize,
    p: u64,
    m: usize,
    cosets: Vec<Vec<usize>>,
    factors: Vec<Poly>,
}

impl CyclotomicFactorization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree of the splitting field, `ord_n(p)`.
    pub fn splitting_degree(&self) -> usize {
        self.m
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// Number of irreducible factors.
    pub fn count(&self) -> usize {
        self.factors.len()
    }

    /// Index of the factor whose coset contains `j mod n`.
    pub fn coset_index(&self, j: usize) -> usize {
        let j = j % self.n;
        self.cosets
            .iter()
            .position(|c| c.binary_search(&j).is_ok())
            .expect("cosets partition Z/n")
    }

    /// Index of the reciprocal factor (coset of `-j`).
    pub fn reciprocal_index(&self, i: usize) -> usize {
        let j = self.cosets[i][0];
        self.coset_index((self.n - j) % self.n)
    }
}

/// Factors `X^n - 1` over GF(p) via minimal polynomials of `xi^j`.
pub fn factor_cyclotomic(n: usize, p: u64) -> Result<CyclotomicFactorization> {
    let cosets = cyclotomic_cosets(n, p)?;
    let m = multiplicative_order(p, n);
    let field = FiniteField::new(p, m);
    let xi = field.pow(&field.generator(), field.size_minus_one() / n as u128);
    let ring = Zq::new(p, 1)?;
    let factors = cosets
        .iter()
        .map(|coset| {
            // prod_{k in coset} (X - xi^k) with coefficients in GF(p^m)
            let mut poly: Vec<FieldElem> = vec![field.one()];
            for &k in coset {
                let root = field.pow(&xi, k as u128);
                let neg_root = field.neg(&root);
                let mut next = vec![field.zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = field.add(&next[i + 1], c);
                    next[i] = field.add(&next[i], &field.mul(c, &neg_root));
                }
                poly = next;
            }
            let coeffs: Vec<BigUint> = poly
                .iter()
                .map(|c| {
                    debug_assert!(
                        c[1..].iter().all(|&v| v == 0),
                        "minimal polynomial lies over GF(p)"
                    );
                    BigUint::from(c[0])
                })
                .collect();
            Poly::from_residues(&ring, coeffs)
        })
        .collect();
    Ok(CyclotomicFactorization {
        n,
        p,
        m,
        cosets,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{gcd_mod_p, mul_mod_xn, reciprocal};

    fn f2(c: &[i64]) -> Poly {
        Poly::from_i64s(&Zq::new(2, 1).unwrap(), c)
    }

    #[test]
    fn cosets_for_seven() {
        assert_eq!(
            cyclotomic_cosets(7, 2).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
    }

    #[test]
    fn coset_sizes() {
        let sizes = |n, p| -> Vec<usize> {
            cyclotomic_cosets(n, p)
                .unwrap()
                .iter()
                .map(|c| c.len())
                .collect()
        };
        assert_eq!(sizes(23, 2), vec![1, 11, 11]);
        assert_eq!(sizes(11, 3), vec![1, 5, 5]);
    }

    #[test]
    fn non_coprime_is_rejected() {
        assert_eq!(
            cyclotomic_cosets(6, 2).unwrap_err(),
            Error::NotCoprime { n: 6, p: 2 }
        );
        assert!(factor_cyclotomic(9, 3).is_err());
    }

    #[test]
    fn binary_factors_of_x7_minus_1() {
        let f = factor_cyclotomic(7, 2).unwrap();
        assert_eq!(
            f.factors(),
            &[f2(&[1, 1]), f2(&[1, 1, 0, 1]), f2(&[1, 0, 1, 1])]
        );
        assert_eq!(f.reciprocal_index(1), 2);
        assert_eq!(f.reciprocal_index(0), 0);
    }

    #[test]
    fn trivial_length() {
        for p in [2, 3, 5] {
            let f = factor_cyclotomic(1, p).unwrap();
            assert_eq!(f.count(), 1);
            assert_eq!(
                f.factors()[0],
                Poly::from_i64s(&Zq::new(p, 1).unwrap(), &[-1, 1])
            );
        }
    }

    #[test]
    fn primitive_polys_are_the_smallest() {
        assert_eq!(primitive_poly(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(primitive_poly(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(primitive_poly(2, 1), vec![1, 1]);
        assert_eq!(primitive_poly(3, 1), vec![1, 1]);
    }

    // Irreducibility by brute force: f of degree d is irreducible over GF(p)
    // iff gcd(f, X^(p^k) - X) = 1 for 1 <= k <= d/2.
    fn irreducible(f: &Poly) -> bool {
        let d = f.degree().unwrap();
        let ring = f.ring().clone();
        let p = ring.p();
        (1..=d / 2).all(|k| {
            let e = p.pow(k as u32) as usize;
            let mut xpk = Poly::monomial(&ring, BigUint::from(1u32), e);
            xpk = &xpk - &Poly::x(&ring);
            gcd_mod_p(f, &xpk).degree() == Some(0)
        })
    }

    #[test]
    fn factorizations_are_complete_and_irreducible() {
        for (n, p) in [
            (7, 2),
            (23, 2),
            (11, 3),
            (15, 2),
            (13, 3),
            (31, 2),
            (21, 2),
            (8, 3),
        ] {
            let fac = factor_cyclotomic(n, p).unwrap();
            let ring = Zq::new(p, 1).unwrap();
            let total: usize = fac.cosets().iter().map(|c| c.len()).sum();
            assert_eq!(total, n);
            let mut prod = Poly::one(&ring);
            for (c, f) in fac.cosets().iter().zip(fac.factors()) {
                assert_eq!(f.degree(), Some(c.len()));
                assert!(f.is_monic());
                assert!(irreducible(f), "{f} for n={n}");
                prod = &prod * f;
            }
            assert_eq!(prod, Poly::x_n_minus_one(&ring, n));
            for i in 0..fac.count() {
                for j in i + 1..fac.count() {
                    assert_eq!(
                        gcd_mod_p(&fac.factors()[i], &fac.factors()[j]).degree(),
                        Some(0)
                    );
                }
                let r = fac.reciprocal_index(i);
                assert_eq!(reciprocal(&fac.factors()[i]).unwrap(), fac.factors()[r]);
            }
        }
    }

    #[test]
    fn ternary_length_eleven_quintics_are_reciprocal() {
        let fac = factor_cyclotomic(11, 3).unwrap();
        assert_eq!(fac.count(), 3);
        assert_eq!(
            fac.factors()[0],
            Poly::from_i64s(&Zq::new(3, 1).unwrap(), &[-1, 1])
        );
        assert_eq!(reciprocal(&fac.factors()[1]).unwrap(), fac.factors()[2]);
        let prod = mul_mod_xn(&fac.factors()[1], &fac.factors()[2], 11).unwrap();
        let prod = mul_mod_xn(&prod, &fac.factors()[0], 11).unwrap();
        assert!(prod.is_zero());
    }
}
