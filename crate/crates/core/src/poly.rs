//! Dense univariate polynomials over `Z/p^prec`, constant term first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::zq::{balanced, biguint_valuation, unit_inverse, Zq, ZqInt};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Zq,
    coeffs: Vec<BigUint>,
}

impl Poly {
    pub fn zero(ring: &Zq) -> Poly {
        Poly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &Zq) -> Poly {
        Poly::from_residues(ring, vec![BigUint::one()])
    }

    pub fn x(ring: &Zq) -> Poly {
        Poly::monomial(ring, BigUint::one(), 1)
    }

    pub fn monomial(ring: &Zq, c: BigUint, deg: usize) -> Poly {
        let mut coeffs = vec![BigUint::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_residues(ring, coeffs)
    }

    /// `X^n - 1`.
    pub fn x_n_minus_one(ring: &Zq, n: usize) -> Poly {
        let mut coeffs = vec![BigUint::zero(); n + 1];
        coeffs[0] = ring.modulus() - 1u32;
        coeffs[n] = BigUint::one();
        Poly::from_residues(ring, coeffs)
    }

    pub fn from_i64s(ring: &Zq, coeffs: &[i64]) -> Poly {
        let c = coeffs
            .iter()
            .map(|&v| ring.reduce_signed(&BigInt::from(v)))
            .collect();
        Poly::from_residues(ring, c)
    }

    pub fn from_bigints(ring: &Zq, coeffs: &[BigInt]) -> Poly {
        let c = coeffs.iter().map(|v| ring.reduce_signed(v)).collect();
        Poly::from_residues(ring, c)
    }

    pub fn from_residues(ring: &Zq, coeffs: Vec<BigUint>) -> Poly {
        let m = ring.modulus();
        let mut p = Poly {
            ring: ring.clone(),
            coeffs: coeffs.into_iter().map(|c| c % m).collect(),
        };
        p.trim();
        p
    }

    pub fn from_coeffs(ring: &Zq, coeffs: &[ZqInt]) -> Result<Poly> {
        for c in coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), c.ring().to_string()));
            }
        }
        Ok(Poly::from_residues(
            ring,
            coeffs.iter().map(|c| c.residue().clone()).collect(),
        ))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Residues, constant term first, without trailing zeros.
    pub fn residues(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ZqInt {
        match self.coeffs.get(i) {
            Some(c) => self.ring.from_biguint(c.clone()),
            None => self.ring.zero(),
        }
    }

    pub fn leading(&self) -> Option<ZqInt> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &ZqInt) -> ZqInt {
        let m = self.ring.modulus();
        let mut acc = BigUint::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x.residue() + c) % m;
        }
        self.ring.from_biguint(acc)
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigUint::from(i))
            .collect();
        Poly::from_residues(&self.ring, c)
    }

    pub fn scale(&self, s: &ZqInt) -> Poly {
        assert_eq!(&self.ring, s.ring(), "ring mismatch");
        Poly::from_residues(
            &self.ring,
            self.coeffs.iter().map(|c| c * s.residue()).collect(),
        )
    }

    pub fn scale_int(&self, s: u64) -> Poly {
        Poly::from_residues(&self.ring, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigUint::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::from_residues(&self.ring, c)
    }

    /// `f(-X)`.
    pub fn negate_x(&self) -> Poly {
        let m = self.ring.modulus();
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { (m - c) % m } else { c.clone() })
            .collect();
        Poly::from_residues(&self.ring, c)
    }

    /// Projection to a smaller precision.
    pub fn reduce_to(&self, prec: u32) -> Result<Poly> {
        if prec > self.ring.prec() {
            return Err(Error::InvalidArgument(format!(
                "cannot project precision {} to {}",
                self.ring.prec(),
                prec
            )));
        }
        let r = self.ring.with_prec(prec)?;
        Ok(Poly::from_residues(&r, self.coeffs.clone()))
    }

    /// Reinterprets the residues at another precision.
    pub fn lift_to(&self, prec: u32) -> Result<Poly> {
        let r = self.ring.with_prec(prec)?;
        Ok(Poly::from_residues(&r, self.coeffs.clone()))
    }

    /// Minimum p-adic valuation over the coefficients (zero has valuation `prec`).
    pub fn valuation(&self) -> u32 {
        let (p, prec) = (self.ring.p(), self.ring.prec());
        self.coeffs
            .iter()
            .map(|c| biguint_valuation(c, p, prec))
            .min()
            .unwrap_or(prec)
    }

    /// Multiplies by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> Result<Poly> {
        let lc = self.leading().ok_or(Error::NotMonic)?;
        let inv = unit_inverse(&lc)?;
        Ok(self.scale(&inv))
    }

    /// Reduces modulo `X^n - 1`.
    pub fn rem_xn(&self, n: usize) -> Poly {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut c = vec![BigUint::zero(); n];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i % n] += v;
        }
        Poly::from_residues(&self.ring, c)
    }

    /// Coefficient vector of length `n`, constant term first.
    pub fn to_vector(&self, n: usize) -> Vec<BigUint> {
        let mut v = self.coeffs.clone();
        v.resize(n.max(v.len()), BigUint::zero());
        v
    }

    /// Balanced coefficients, constant term first.
    pub fn balanced_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| balanced(c, self.ring.modulus()))
            .collect()
    }

    /// Parses the comma-separated text format (constant term first).
    pub fn parse(ring: &Zq, text: &str) -> Result<Poly> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?}", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_bigints(ring, &coeffs))
    }

    /// Parses `;`-separated polynomials, e.g. `-1,1;2`.
    pub fn parse_list(ring: &Zq, text: &str) -> Result<Vec<Poly>> {
        text.split(';').map(|t| Poly::parse(ring, t)).collect()
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }
}

/// Comma-separated balanced coefficients, constant term first; `0` for zero.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .balanced_coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigUint::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Poly::from_residues(&self.ring, c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let m = self.ring.modulus();
        Poly::from_residues(&self.ring, self.coeffs.iter().map(|c| m - c).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut c = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_residues(&self.ring, c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// `f * g` reduced by `X^n = 1`.
pub fn mul_mod_xn(f: &Poly, g: &Poly, n: usize) -> Result<Poly> {
    f.same_ring(g)?;
    if n == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    Ok((f * g).rem_xn(n))
}

/// Division with remainder by a monic polynomial.
pub fn divmod_monic(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    f.same_ring(g)?;
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let dg = g.degree().expect("monic is nonzero");
    let m = f.ring.modulus().clone();
    let mut rem = f.coeffs.clone();
    if rem.len() <= dg {
        return Ok((Poly::zero(&f.ring), f.clone()));
    }
    let mut quot = vec![BigUint::zero(); rem.len() - dg];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dg].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, gj) in g.coeffs.iter().enumerate() {
            let sub = (&c * gj) % &m;
            rem[k + j] = (&rem[k + j] + &m - sub) % &m;
        }
    }
    rem.truncate(dg);
    Ok((
        Poly::from_residues(&f.ring, quot),
        Poly::from_residues(&f.ring, rem),
    ))
}

/// Monic gcd of the mod-p projections.
pub fn gcd_mod_p(f: &Poly, g: &Poly) -> Poly {
    ext_gcd_mod_p(f, g).0
}

/// Extended Euclid over GF(p): returns `(d, s, t)` with `s f + t g = d`, `d`
/// monic (or zero when both inputs vanish mod p).
pub fn ext_gcd_mod_p(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    let fp = f.reduce_to(1).expect("precision >= 1");
    let gp = g.reduce_to(1).expect("precision >= 1");
    let field = fp.ring.clone();
    let (mut r0, mut r1) = (fp, gp);
    let (mut s0, mut s1) = (Poly::one(&field), Poly::zero(&field));
    let (mut t0, mut t1) = (Poly::zero(&field), Poly::one(&field));
    while !r1.is_zero() {
        let lc_inv = unit_inverse(&r1.leading().expect("nonzero")).expect("field unit");
        let monic = r1.scale(&lc_inv);
        let (q, r) = divmod_monic(&r0, &monic).expect("monic divisor");
        let q = q.scale(&lc_inv);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.leading() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = unit_inverse(&lc).expect("field unit");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// Monic normalization of `X^deg f * f(1/X)`.
pub fn reciprocal(f: &Poly) -> Result<Poly> {
    if f.is_zero() || !f.coeff(0).is_unit() {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut c = f.coeffs.clone();
    c.reverse();
    Poly::from_residues(&f.ring, c).make_monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zq(p: u64, prec: u32) -> Zq {
        Zq::new(p, prec).unwrap()
    }

    #[test]
    fn all_ones_is_shift_invariant() {
        let r = zq(2, 2);
        let ones = Poly::from_i64s(&r, &[1; 7]);
        assert_eq!(mul_mod_xn(&ones, &Poly::x(&r), 7).unwrap(), ones);
    }

    #[test]
    fn product_of_binary_factors_vanishes() {
        let r = zq(2, 1);
        let a = Poly::from_i64s(&r, &[1, 1, 0, 1]);
        let b = Poly::from_i64s(&r, &[1, 0, 1, 1]);
        let c = Poly::from_i64s(&r, &[1, 1]);
        let ab = mul_mod_xn(&a, &b, 7).unwrap();
        assert!(mul_mod_xn(&ab, &c, 7).unwrap().is_zero());
    }

    #[test]
    fn quaternary_factors_of_x7_minus_1_vanish() {
        let r = zq(2, 2);
        let f1 = Poly::from_i64s(&r, &[-1, 1, 2, 1]);
        let f2 = Poly::from_i64s(&r, &[-1, 2, -1, 1]);
        let f0 = Poly::from_i64s(&r, &[-1, 1]);
        let prod = mul_mod_xn(&mul_mod_xn(&f1, &f2, 7).unwrap(), &f0, 7).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Poly::one(&zq(2, 2));
        let b = Poly::one(&zq(2, 3));
        assert_eq!(mul_mod_xn(&a, &b, 7).unwrap_err().code(), "RingMismatch");
    }

    #[test]
    fn division_examples() {
        let r = zq(2, 2);
        let x7 = Poly::x_n_minus_one(&r, 7);
        let (q, rem) = divmod_monic(&x7, &Poly::from_i64s(&r, &[-1, 1])).unwrap();
        assert_eq!(q, Poly::from_i64s(&r, &[1; 7]));
        assert!(rem.is_zero());
        let (_, rem) = divmod_monic(&x7, &Poly::from_i64s(&r, &[-1, 1, 2, 1])).unwrap();
        assert!(rem.is_zero());
        let f = Poly::from_i64s(&r, &[3, 1, 2]);
        assert_eq!(
            divmod_monic(&f, &Poly::one(&r)).unwrap(),
            (f.clone(), Poly::zero(&r))
        );
        assert_eq!(
            divmod_monic(&f, &Poly::from_i64s(&r, &[1, 2])).unwrap_err(),
            Error::NotMonic
        );
    }

    #[test]
    fn gcd_examples() {
        let r = zq(2, 1);
        let x7 = Poly::x_n_minus_one(&r, 7);
        let a = Poly::from_i64s(&r, &[1, 1, 0, 1]);
        let b = Poly::from_i64s(&r, &[1, 0, 1, 1]);
        assert_eq!(gcd_mod_p(&x7, &a), a);
        assert_eq!(gcd_mod_p(&a, &b), Poly::one(&r));
        let r3 = zq(3, 2);
        let f = Poly::from_i64s(&r3, &[1, 2, 2]);
        assert_eq!(
            gcd_mod_p(&f, &Poly::zero(&r3)),
            Poly::from_i64s(&zq(3, 1), &[2, 1, 1])
        );
    }

    #[test]
    fn bezout_identity_holds() {
        let r = zq(3, 1);
        let f = Poly::from_i64s(&r, &[2, 0, 1, 1]);
        let g = Poly::from_i64s(&r, &[1, 1, 1]);
        let (d, s, t) = ext_gcd_mod_p(&f, &g);
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn reciprocal_examples() {
        let r = zq(2, 1);
        let f = Poly::from_i64s(&r, &[-1, 1]);
        assert_eq!(reciprocal(&f).unwrap(), f);
        let r4 = zq(2, 2);
        let f1 = Poly::from_i64s(&r4, &[-1, 1, 2, 1]);
        assert_eq!(
            reciprocal(&f1).unwrap(),
            Poly::from_i64s(&r4, &[-1, 2, -1, 1])
        );
        assert_eq!(
            reciprocal(&Poly::from_i64s(&r4, &[2, 1])).unwrap_err(),
            Error::NonUnitConstantTerm
        );
    }

    #[test]
    fn text_format() {
        let r = zq(2, 4);
        let f = Poly::parse(&r, "-1, 5,6,1").unwrap();
        assert_eq!(f.to_string(), "-1,5,6,1");
        assert_eq!(Poly::parse(&r, "0").unwrap().to_string(), "0");
        assert!(Poly::parse(&r, "1,x").is_err());
        assert!(Poly::parse(&r, "").is_err());
        let list = Poly::parse_list(&r, "-1,1; 2").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].to_string(), "2");
        assert!(Poly::parse_list(&r, "1;;1").is_err());
    }

    fn arb_poly(p: u64, prec: u32, max_len: usize) -> impl Strategy<Value = Poly> {
        let q = p.pow(prec);
        prop::collection::vec(0..q, 0..max_len).prop_map(move |c| {
            let r = Zq::new(p, prec).unwrap();
            Poly::from_residues(&r, c.into_iter().map(BigUint::from).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(2, 5, 8), b in arb_poly(2, 5, 8), c in arb_poly(2, 5, 8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn division_reconstructs(f in arb_poly(3, 3, 12), g in arb_poly(3, 3, 5)) {
            let mut g = g;
            // force monic
            let d = g.degree().unwrap_or(0);
            let mut c = g.to_vector(d + 1);
            c[d] = BigUint::one();
            g = Poly::from_residues(g.ring(), c);
            let (q, r) = divmod_monic(&f, &g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree().is_none_or(|dr| dr < d));
        }

        #[test]
        fn projection_is_a_homomorphism(a in arb_poly(2, 6, 7), b in arb_poly(2, 6, 7)) {
            let lhs = mul_mod_xn(&a, &b, 7).unwrap().reduce_to(3).unwrap();
            let rhs = mul_mod_xn(&a.reduce_to(3).unwrap(), &b.reduce_to(3).unwrap(), 7).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reciprocal_is_an_involution(c in prop::collection::vec(0u64..27, 1..6), c0 in 1u64..27) {
            let r = Zq::new(3, 3).unwrap();
            let mut v: Vec<BigUint> = vec![BigUint::from(c0 - (c0 % 3 == 0) as u64)];
            v.extend(c.into_iter().map(BigUint::from));
            v.push(BigUint::one());
            let f = Poly::from_residues(&r, v);
            prop_assert_eq!(reciprocal(&reciprocal(&f).unwrap()).unwrap(), f);
        }
    }
}
