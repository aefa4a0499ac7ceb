//! Truncated p-adic integers.
//!
//! A [`ZqInt`] is a residue modulo `p^prec`. Finite precision stands in both
//! for the modular ring `Z/p^a` and for a precision-`a` approximation of the
//! p-adic integers; every operation is exact at the stated precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// The ring `Z/p^prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zq {
    p: u64,
    prec: u32,
    modulus: BigUint,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Zq {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(Zq {
            p,
            prec,
            modulus: BigUint::from(p).pow(prec),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `p^prec`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Same prime at a different precision.
    pub fn with_prec(&self, prec: u32) -> Result<Zq> {
        Zq::new(self.p, prec)
    }

    /// The residue field `Z/p`.
    pub fn residue_field(&self) -> Zq {
        Zq {
            p: self.p,
            prec: 1,
            modulus: BigUint::from(self.p),
        }
    }

    pub fn zero(&self) -> ZqInt {
        ZqInt {
            ring: self.clone(),
            residue: BigUint::zero(),
        }
    }

    pub fn one(&self) -> ZqInt {
        self.from_biguint(BigUint::one())
    }

    pub fn from_i64(&self, v: i64) -> ZqInt {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_u64(&self, v: u64) -> ZqInt {
        self.from_biguint(BigUint::from(v))
    }

    pub fn from_biguint(&self, v: BigUint) -> ZqInt {
        ZqInt {
            ring: self.clone(),
            residue: v % &self.modulus,
        }
    }

    /// Reduces a signed integer into `[0, p^prec)`.
    pub fn from_bigint(&self, v: &BigInt) -> ZqInt {
        ZqInt {
            ring: self.clone(),
            residue: self.reduce_signed(v),
        }
    }

    pub(crate) fn reduce_signed(&self, v: &BigInt) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.modulus.clone());
        v.mod_floor(&m)
            .to_biguint()
            .expect("mod_floor is nonnegative")
    }

    /// Parses a decimal integer (negative values allowed).
    pub fn parse(&self, text: &str) -> Result<ZqInt> {
        let t = text.trim();
        let v: BigInt = t
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))?;
        Ok(self.from_bigint(&v))
    }

    /// Parses base-p digits, least significant first. Either one character
    /// per digit (`p <= 10`) or a comma-separated list.
    pub fn parse_digits(&self, text: &str) -> Result<ZqInt> {
        let t = text.trim();
        let digits: Vec<u64> = if t.contains(',') {
            t.split(',')
                .map(|d| {
                    d.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad digit {d:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if digits.is_empty() {
            return Err(Error::Parse("empty digit string".into()));
        }
        if digits.len() > self.prec as usize {
            return Err(Error::Parse(format!(
                "{} digits exceed precision {}",
                digits.len(),
                self.prec
            )));
        }
        let mut acc = BigUint::zero();
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::Parse(format!(
                    "digit {d} out of range for p = {}",
                    self.p
                )));
            }
            acc = acc * self.p + d;
        }
        Ok(self.from_biguint(acc))
    }

    fn check(&self, other: &Zq) {
        assert!(
            self == other,
            "ring mismatch: Z/{}^{} vs Z/{}^{}",
            self.p,
            self.prec,
            other.p,
            other.prec
        );
    }
}

impl fmt::Display for Zq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.prec)
    }
}

/// A residue of a p-adic integer at explicit precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZqInt {
    ring: Zq,
    residue: BigUint,
}

impl ZqInt {
    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ring.p).is_zero()
    }

    /// p-adic valuation, capped at the precision (so zero has valuation `prec`).
    pub fn valuation(&self) -> u32 {
        biguint_valuation(&self.residue, self.ring.p, self.ring.prec)
    }

    /// Representative in `(-p^prec/2, p^prec/2]`.
    pub fn balanced(&self) -> BigInt {
        balanced(&self.residue, &self.ring.modulus)
    }

    /// Residue modulo `p` as a machine integer.
    pub fn low_digit(&self) -> u64 {
        (&self.residue % self.ring.p).to_u64().expect("digit fits")
    }

    /// Projection to a smaller (or equal) precision.
    pub fn reduce_to(&self, prec: u32) -> Result<ZqInt> {
        let r = self.ring.with_prec(prec)?;
        if prec > self.ring.prec {
            return Err(Error::InvalidArgument(format!(
                "cannot project precision {} to {}",
                self.ring.prec, prec
            )));
        }
        Ok(r.from_biguint(self.residue.clone()))
    }

    /// Reinterprets the residue at another precision (the canonical digit lift).
    pub fn lift_to(&self, prec: u32) -> Result<ZqInt> {
        let r = self.ring.with_prec(prec)?;
        Ok(r.from_biguint(self.residue.clone()))
    }

    pub fn pow(&self, e: u64) -> ZqInt {
        ZqInt {
            ring: self.ring.clone(),
            residue: self.residue.modpow(&BigUint::from(e), &self.ring.modulus),
        }
    }

    /// Exact division by `p^k`, returning a value at precision `prec - k`.
    pub fn div_p_pow(&self, k: u32) -> Result<ZqInt> {
        if k >= self.ring.prec {
            return Err(Error::InvalidArgument(
                "division exhausts the precision".into(),
            ));
        }
        let pk = BigUint::from(self.ring.p).pow(k);
        let (q, r) = self.residue.div_rem(&pk);
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "not divisible by {}^{}",
                self.ring.p, k
            )));
        }
        let ring = self.ring.with_prec(self.ring.prec - k)?;
        Ok(ring.from_biguint(q))
    }

    pub fn digits(&self) -> Vec<u64> {
        digits(self)
    }

    pub fn unit_inverse(&self) -> Result<ZqInt> {
        unit_inverse(self)
    }
}

impl fmt::Display for ZqInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

pub(crate) fn biguint_valuation(v: &BigUint, p: u64, cap: u32) -> u32 {
    if v.is_zero() {
        return cap;
    }
    let mut v = v.clone();
    let mut k = 0;
    while k < cap && (&v % p).is_zero() {
        v /= p;
        k += 1;
    }
    k
}

pub(crate) fn balanced(r: &BigUint, modulus: &BigUint) -> BigInt {
    let twice = r * 2u32;
    if &twice > modulus {
        BigInt::from(r.clone()) - BigInt::from(modulus.clone())
    } else {
        BigInt::from(r.clone())
    }
}

macro_rules! zq_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a ZqInt> for &'a ZqInt {
            type Output = ZqInt;
            fn $method(self, rhs: &'a ZqInt) -> ZqInt {
                self.ring.check(&rhs.ring);
                let m = &self.ring.modulus;
                let f: fn(&BigUint, &BigUint, &BigUint) -> BigUint = $body;
                ZqInt {
                    ring: self.ring.clone(),
                    residue: f(&self.residue, &rhs.residue, m),
                }
            }
        }
        impl $tr<ZqInt> for ZqInt {
            type Output = ZqInt;
            fn $method(self, rhs: ZqInt) -> ZqInt {
                (&self).$method(&rhs)
            }
        }
    };
}

zq_binop!(Add, add, |a, b, m| (a + b) % m);
zq_binop!(Sub, sub, |a, b, m| (a + m - b) % m);
zq_binop!(Mul, mul, |a, b, m| (a * b) % m);

impl Neg for &ZqInt {
    type Output = ZqInt;
    fn neg(self) -> ZqInt {
        let m = &self.ring.modulus;
        ZqInt {
            ring: self.ring.clone(),
            residue: (m - &self.residue) % m,
        }
    }
}

impl Neg for ZqInt {
    type Output = ZqInt;
    fn neg(self) -> ZqInt {
        -&self
    }
}

/// Inverse of a unit by Newton iteration `x <- x(2 - ux)`, doubling the
/// number of correct digits each round.
pub fn unit_inverse(u: &ZqInt) -> Result<ZqInt> {
    let ring = u.ring();
    let p = ring.p();
    let low = u.low_digit();
    if low == 0 {
        return Err(Error::NonUnit {
            value: u.to_string(),
            p,
        });
    }
    let x0 = BigUint::from(low).modpow(&BigUint::from(p - 2 + (p == 2) as u64), &BigUint::from(p));
    let mut x = ring.from_biguint(x0);
    let two = ring.from_u64(2);
    let mut correct = 1u32;
    while correct < ring.prec() {
        x = &x * &(&two - &(u * &x));
        correct = correct.saturating_mul(2);
    }
    debug_assert_eq!(&x * u, ring.one());
    Ok(x)
}

/// Base-p digits of the residue, least significant first, `prec` of them.
pub fn digits(u: &ZqInt) -> Vec<u64> {
    let p = u.ring().p();
    let mut v = u.residue().clone();
    (0..u.ring().prec())
        .map(|_| {
            let (q, r) = v.div_rem(&BigUint::from(p));
            v = q;
            r.to_u64().expect("digit fits")
        })
        .collect()
}

/// The unique root of `f` congruent to `r0` mod p, at the precision of `f`'s
/// coefficient ring. Requires `r0` to be a simple root mod p.
pub fn hensel_root(f: &Poly, r0: u64) -> Result<ZqInt> {
    let ring = f.ring().clone();
    let p = ring.p();
    let r0 = r0 % p;
    let start = ring.from_u64(r0);
    let df = f.derivative();
    if !f.eval(&start).reduce_to(1)?.is_zero() {
        return Err(Error::NotARoot { r0, p });
    }
    if !df.eval(&start).is_unit() {
        return Err(Error::NotSimpleRoot { r0, p });
    }
    let mut r = start;
    let mut correct = 1u32;
    loop {
        let fr = f.eval(&r);
        if fr.is_zero() {
            break;
        }
        let step = &fr * &unit_inverse(&df.eval(&r))?;
        r = &r - &step;
        correct = correct.saturating_mul(2);
        // Quadratic convergence: more rounds than this means a bug, not slow input.
        assert!(
            correct < 4 * ring.prec().max(2),
            "Newton iteration failed to converge"
        );
    }
    Ok(r)
}

/// Square root of a 2-adic unit `u ≡ 1 (mod 8)`.
///
/// Among the residues `s` with `s^2 ≡ u` and `s ≡ 1 (mod 4)` the numerically
/// smallest one is returned.
pub fn sqrt_2adic(u: &ZqInt) -> Result<ZqInt> {
    let ring = u.ring();
    if ring.p() != 2 {
        return Err(Error::InvalidArgument("sqrt_2adic needs p = 2".into()));
    }
    let prec = ring.prec();
    let check = 1u64 << prec.min(3);
    if (u.residue() % check).to_u64() != Some(1 % check) {
        return Err(Error::NoSquareRoot(u.to_string()));
    }
    if prec <= 2 {
        return Ok(ring.one());
    }
    // Bit-by-bit: s^2 ≡ u mod 2^(k+1) given s^2 ≡ u mod 2^k (k >= 3).
    let mut s = BigUint::one();
    for k in 3..prec {
        let m = BigUint::one() << (k + 1);
        if (&s * &s) % &m != u.residue() % &m {
            s += BigUint::one() << (k - 1);
        }
    }
    let m = ring.modulus();
    s %= m;
    if (&s % 4u32).to_u64() == Some(3) {
        s = (m - &s) % m;
    }
    let half = BigUint::one() << (prec - 1);
    let other = (&s + &half) % m;
    let s = s.min(other);
    debug_assert_eq!((&s * &s) % m, u.residue().clone());
    Ok(ring.from_biguint(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq(p: u64, prec: u32) -> Zq {
        Zq::new(p, prec).unwrap()
    }

    // Exhaustive search oracle for inverses.
    fn brute_inverse(p: u64, prec: u32, u: u64) -> u64 {
        let q = p.pow(prec);
        (0..q).find(|v| (u * v) % q == 1).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(brute_inverse(2, 4, 7), 7);
        assert_eq!(brute_inverse(3, 3, 2), 14);
        assert_eq!(
            unit_inverse(&zq(2, 4).from_u64(7)).unwrap(),
            zq(2, 4).from_u64(7)
        );
        assert_eq!(unit_inverse(&zq(2, 8).from_u64(1)).unwrap(), zq(2, 8).one());
        assert_eq!(
            unit_inverse(&zq(3, 3).from_u64(2)).unwrap(),
            zq(3, 3).from_u64(14)
        );
    }

    #[test]
    fn inverse_of_nonunit_fails() {
        let e = unit_inverse(&zq(3, 4).from_u64(9)).unwrap_err();
        assert_eq!(e.code(), "NonUnit");
    }

    #[test]
    fn inverse_matches_brute_force_everywhere() {
        for (p, prec) in [(2u64, 5u32), (3, 3), (5, 2), (7, 2)] {
            let r = zq(p, prec);
            for u in 0..p.pow(prec) {
                if u % p == 0 {
                    continue;
                }
                let inv = unit_inverse(&r.from_u64(u)).unwrap();
                assert_eq!(inv, r.from_u64(brute_inverse(p, prec, u)));
            }
        }
    }

    #[test]
    fn digit_expansion() {
        assert_eq!(digits(&zq(2, 4).from_u64(6)), vec![0, 1, 1, 0]);
        assert_eq!(digits(&zq(3, 3).from_u64(14)), vec![2, 1, 1]);
    }

    #[test]
    fn negative_literals_reduce() {
        assert_eq!(zq(2, 4).from_i64(-1).residue(), &BigUint::from(15u32));
        assert_eq!(
            zq(3, 2).parse("-10").unwrap().residue(),
            &BigUint::from(8u32)
        );
    }

    #[test]
    fn parse_digit_strings() {
        let r = zq(2, 8);
        assert_eq!(r.parse_digits("0110").unwrap(), r.from_u64(6));
        assert_eq!(r.parse_digits("0,1,1").unwrap(), r.from_u64(6));
        assert!(r.parse_digits("012").is_err());
        assert!(r.parse_digits("000000000").is_err());
        assert!(r.parse_digits("").is_err());
    }

    fn brute_sqrt(prec: u32, u: u64) -> u64 {
        let q = 1u64 << prec;
        (0..q).find(|s| (s * s) % q == u % q && s % 4 == 1).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(brute_sqrt(5, 25), 5);
        assert_eq!(
            sqrt_2adic(&zq(2, 5).from_u64(25)).unwrap(),
            zq(2, 5).from_u64(5)
        );
        assert_eq!(sqrt_2adic(&zq(2, 8).one()).unwrap(), zq(2, 8).one());
        assert!(sqrt_2adic(&zq(2, 8).from_u64(5)).is_err());
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for prec in 3..=12u32 {
            let q = 1u64 << prec;
            for u in (1..q).step_by(8) {
                let s = sqrt_2adic(&zq(2, prec).from_u64(u)).unwrap();
                assert_eq!(
                    s,
                    zq(2, prec).from_u64(brute_sqrt(prec, u)),
                    "u={u} prec={prec}"
                );
            }
        }
    }

    #[test]
    fn prime_check() {
        assert_eq!(Zq::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Zq::new(2, 0).unwrap_err(), Error::ZeroPrecision);
    }

    fn digit_string(u: &ZqInt) -> String {
        u.digits()
            .iter()
            .map(|d| char::from(b'0' + *d as u8))
            .collect()
    }

    #[test]
    fn quadratic_roots_have_known_expansions() {
        let r = zq(2, 31);
        let lambda = hensel_root(&Poly::from_i64s(&r, &[2, -1, 1]), 0).unwrap();
        assert_eq!(digit_string(&lambda), "0110010111111001110011011000110");
        let nu = hensel_root(&Poly::from_i64s(&r, &[6, -1, 1]), 0).unwrap();
        assert_eq!(digit_string(&nu), "0101011110010010110010000110000");
        let r3 = zq(3, 5);
        let theta = hensel_root(&Poly::from_i64s(&r3, &[3, -1, 1]), 0).unwrap();
        assert_eq!(theta.digits(), vec![0, 1, 1, 2, 2]);
    }

    #[test]
    fn linear_root_is_the_constant() {
        let r = zq(5, 6);
        let f = Poly::from_i64s(&r, &[-1234, 1]);
        assert_eq!(hensel_root(&f, 1234 % 5).unwrap(), r.from_u64(1234));
    }

    #[test]
    fn root_errors() {
        let r = zq(2, 8);
        let f = Poly::from_i64s(&r, &[2, -1, 1]);
        assert_eq!(
            hensel_root(&f, 1).unwrap(),
            -hensel_root(&f, 0).unwrap() + r.one()
        );
        let g = Poly::from_i64s(&r, &[1, 0, 1]);
        assert_eq!(
            hensel_root(&g, 0).unwrap_err(),
            Error::NotARoot { r0: 0, p: 2 }
        );
        assert_eq!(
            hensel_root(&g, 1).unwrap_err(),
            Error::NotSimpleRoot { r0: 1, p: 2 }
        );
    }

    #[test]
    fn sqrt_of_minus_seven_matches_lambda() {
        let r = zq(2, 31);
        let s = sqrt_2adic(&r.from_i64(-7)).unwrap();
        let lambda = hensel_root(&Poly::from_i64s(&r, &[2, -1, 1]), 0).unwrap();
        let r30 = zq(2, 30);
        // (1 + s) / 2 at one digit less
        let half = (&r.one() + &s).div_p_pow(1).unwrap();
        let l30 = lambda.reduce_to(30).unwrap();
        assert!(half == l30 || half == &r30.one() - &l30);
        assert!(sqrt_2adic(&r.from_i64(5)).is_err());
    }

    proptest::proptest! {
        #[test]
        fn inverse_is_an_involution(v in 0u64..1_000_000, sel in 0usize..3, prec in 1u32..30) {
            let p = [2u64, 3, 5][sel];
            let u = zq(p, prec).from_u64(v * p + 1);
            proptest::prop_assert_eq!(u.unit_inverse().unwrap().unit_inverse().unwrap(), u);
        }

        #[test]
        fn roots_form_a_tower(c in prop_c(), prec in 2u32..40, lower in 1u32..40) {
            let (c, p) = c;
            let lower = lower.min(prec);
            let high = hensel_root(&Poly::from_i64s(&zq(p, prec), &[c, -1, 1]), 0).unwrap();
            let low = hensel_root(&Poly::from_i64s(&zq(p, lower), &[c, -1, 1]), 0).unwrap();
            proptest::prop_assert_eq!(high.reduce_to(lower).unwrap(), low);
        }
    }

    fn prop_c() -> impl proptest::strategy::Strategy<Value = (i64, u64)> {
        proptest::sample::select(vec![(2i64, 2u64), (6, 2), (3, 3), (-4, 2), (5, 5)])
    }
}
