//! Galois rings `GR(p^a, m) = Z_{p^a}[X]/(pi)` with `pi` monic of degree `m`
//! and irreducible mod p.
//!
//! Elements are stored in the additive representation `sum v_r xi^r`. The
//! multiplicative (p-adic) representation `sum p^i t_i`, `t_i` Teichmüller,
//! is computed on demand and is what Frobenius acts on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfp::primitive_poly;
use crate::hensel::lift_divisor;
use crate::poly::{divmod_monic, Poly};
use crate::zq::{Zq, ZqInt};

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    zq: Zq,
    m: usize,
    modulus: Poly,
}

/// Descriptor of a Galois ring; cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing(Arc<Inner>);

impl GaloisRing {
    /// Ring defined by a monic polynomial that is irreducible mod p.
    pub fn new(modulus: Poly) -> Result<GaloisRing> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let m = modulus.degree().expect("monic");
        Ok(GaloisRing(Arc::new(Inner {
            zq: modulus.ring().clone(),
            m,
            modulus,
        })))
    }

    /// `GR(p^a, m)` built on the lift of the smallest primitive polynomial, so
    /// that `xi` has order `p^m - 1`.
    pub fn primitive(p: u64, a: u32, m: usize) -> Result<GaloisRing> {
        let field = Zq::new(p, 1)?;
        let base = Poly::from_i64s(
            &field,
            &primitive_poly(p, m)
                .iter()
                .map(|&c| c as i64)
                .collect::<Vec<_>>(),
        );
        let n = (p as usize).pow(m as u32) - 1;
        GaloisRing::new(lift_divisor(n, &base, a)?)
    }

    pub fn base(&self) -> &Zq {
        &self.0.zq
    }

    pub fn p(&self) -> u64 {
        self.0.zq.p()
    }

    pub fn prec(&self) -> u32 {
        self.0.zq.prec()
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    /// `p^m - 1`, the order of the nonzero Teichmüller elements.
    pub fn teichmuller_order(&self) -> u128 {
        (self.p() as u128).pow(self.degree() as u32) - 1
    }

    /// Reduces an arbitrary polynomial over the base ring into the ring.
    pub fn element(&self, f: &Poly) -> Result<GaloisRingElem> {
        if f.ring() != self.base() {
            return Err(Error::RingMismatch(
                f.ring().to_string(),
                self.base().to_string(),
            ));
        }
        let (_, r) = divmod_monic(f, self.modulus())?;
        Ok(GaloisRingElem {
            ring: self.clone(),
            poly: r,
        })
    }

    pub fn from_int(&self, c: i64) -> GaloisRingElem {
        self.wrap(Poly::from_i64s(self.base(), &[c]))
    }

    pub fn zero(&self) -> GaloisRingElem {
        self.wrap(Poly::zero(self.base()))
    }

    pub fn one(&self) -> GaloisRingElem {
        self.from_int(1)
    }

    /// The class of `X`, a root of the modulus.
    pub fn xi(&self) -> GaloisRingElem {
        self.element(&Poly::x(self.base())).expect("same ring")
    }

    /// Element with the given additive coordinates (`coords.len() <= m`).
    pub fn from_coords(&self, coords: &[ZqInt]) -> Result<GaloisRingElem> {
        if coords.len() > self.degree() {
            return Err(Error::InvalidArgument("too many coordinates".into()));
        }
        Ok(self.wrap(Poly::from_coeffs(self.base(), coords)?))
    }

    fn wrap(&self, poly: Poly) -> GaloisRingElem {
        GaloisRingElem {
            ring: self.clone(),
            poly,
        }
    }

    /// All `p^(am)` elements in coordinate order. Intended for small rings.
    pub fn elements(&self) -> Vec<GaloisRingElem> {
        let q = self.base().modulus().clone();
        let m = self.degree();
        let total = num_traits::pow(q.clone(), m);
        let mut out = Vec::new();
        let mut idx = num_bigint::BigUint::from(0u32);
        while idx < total {
            let mut t = idx.clone();
            let coords: Vec<_> = (0..m)
                .map(|_| {
                    let r = &t % &q;
                    t /= &q;
                    r
                })
                .collect();
            out.push(self.wrap(Poly::from_residues(self.base(), coords)));
            idx += 1u32;
        }
        out
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.p(), self.prec(), self.degree())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRingElem {
    ring: GaloisRing,
    poly: Poly,
}

impl GaloisRingElem {
    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    /// Additive coordinates `v_0, ..., v_{m-1}`.
    pub fn coords(&self) -> Vec<ZqInt> {
        (0..self.ring.degree())
            .map(|i| self.poly.coeff(i))
            .collect()
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Minimum p-adic valuation of the coordinates, capped at the precision.
    pub fn valuation(&self) -> u32 {
        self.poly.valuation()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    pub fn pow(&self, mut e: u128) -> GaloisRingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the element lies in `{0} ∪ {x : x^(p^m - 1) = 1}`.
    pub fn is_teichmuller(&self) -> bool {
        self.is_zero() || self.pow(self.ring.teichmuller_order()) == self.ring.one()
    }

    /// The Teichmüller representative congruent to `self` mod p, reached by
    /// iterating `u -> u^(p^m)` to its fixed point.
    pub fn tau(&self) -> GaloisRingElem {
        let q = self.ring.teichmuller_order() + 1;
        let mut u = self.clone();
        loop {
            let next = u.pow(q);
            if next == u {
                return u;
            }
            u = next;
        }
    }

    /// Teichmüller digits `t_0, ..., t_{a-1}` with `self = sum p^i t_i`.
    pub fn padic_coords(&self) -> Vec<GaloisRingElem> {
        let p = self.ring.p();
        let mut u = self.clone();
        let mut out = Vec::with_capacity(self.ring.prec() as usize);
        for _ in 0..self.ring.prec() {
            let t = u.tau();
            let rest = &u - &t;
            // divisible by p; the unknown top digit does not affect later digits
            let shifted: Vec<_> = rest.poly.residues().iter().map(|r| r / p).collect();
            u = self
                .ring
                .wrap(Poly::from_residues(self.ring.base(), shifted));
            out.push(t);
        }
        out
    }

    /// `sum p^i t_i -> sum p^i t_i^p` on the Teichmüller digits.
    pub fn frobenius(&self) -> GaloisRingElem {
        let p = self.ring.p();
        let mut acc = self.ring.zero();
        let mut scale = self.ring.one();
        let pe = self.ring.from_int(p as i64);
        for t in self.padic_coords() {
            acc = &acc + &(&scale * &t.pow(p as u128));
            scale = &scale * &pe;
        }
        acc
    }
}

impl fmt::Display for GaloisRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl<'a> Add<&'a GaloisRingElem> for &'a GaloisRingElem {
    type Output = GaloisRingElem;
    fn add(self, rhs: &'a GaloisRingElem) -> GaloisRingElem {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.ring.wrap(&self.poly + &rhs.poly)
    }
}

impl<'a> Sub<&'a GaloisRingElem> for &'a GaloisRingElem {
    type Output = GaloisRingElem;
    fn sub(self, rhs: &'a GaloisRingElem) -> GaloisRingElem {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.ring.wrap(&self.poly - &rhs.poly)
    }
}

impl<'a> Mul<&'a GaloisRingElem> for &'a GaloisRingElem {
    type Output = GaloisRingElem;
    fn mul(self, rhs: &'a GaloisRingElem) -> GaloisRingElem {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.ring
            .element(&(&self.poly * &rhs.poly))
            .expect("same ring")
    }
}

impl Neg for &GaloisRingElem {
    type Output = GaloisRingElem;
    fn neg(self) -> GaloisRingElem {
        self.ring.wrap(-&self.poly)
    }
}

/// Checked multiplication for callers that cannot guarantee a shared ring.
pub fn gr_mul(x: &GaloisRingElem, y: &GaloisRingElem) -> Result<GaloisRingElem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch(x.ring.to_string(), y.ring.to_string()));
    }
    Ok(x * y)
}

/// Checked addition for callers that cannot guarantee a shared ring.
pub fn gr_add(x: &GaloisRingElem, y: &GaloisRingElem) -> Result<GaloisRingElem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch(x.ring.to_string(), y.ring.to_string()));
    }
    Ok(x + y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gr(a: u32) -> GaloisRing {
        GaloisRing::primitive(2, a, 3).unwrap()
    }

    fn random(ring: &GaloisRing, rng: &mut ChaCha8Rng) -> GaloisRingElem {
        let q = ring
            .base()
            .modulus()
            .to_u64_digits()
            .first()
            .copied()
            .unwrap_or(0);
        let coords: Vec<ZqInt> = (0..ring.degree())
            .map(|_| ring.base().from_u64(rng.gen_range(0..q)))
            .collect();
        ring.from_coords(&coords).unwrap()
    }

    #[test]
    fn primitive_modulus_is_the_lifted_cubic() {
        let r = gr(2);
        assert_eq!(r.modulus(), &Poly::from_i64s(r.base(), &[-1, 1, 2, 1]));
        assert_eq!(r.to_string(), "GR(2^2, 3)");
    }

    #[test]
    fn xi_has_order_seven() {
        for a in [1, 2, 3, 6] {
            let r = gr(a);
            let xi = r.xi();
            assert_eq!(xi.pow(7), r.one());
            assert!((1..7).all(|k| xi.pow(k) != r.one()));
            assert_eq!(xi.pow(1), xi);
        }
    }

    #[test]
    fn small_product_needs_no_reduction() {
        let r = gr(2);
        let xi = r.xi();
        let prod = &(&xi + &r.one()) * &(&xi + &r.from_int(3));
        let expect = &xi.pow(2) + &r.from_int(3);
        assert_eq!(prod, expect);
    }

    #[test]
    fn mismatched_rings_are_reported() {
        let x = gr(2).one();
        let y = gr(3).one();
        assert!(matches!(gr_mul(&x, &y), Err(Error::RingMismatch(..))));
        assert!(matches!(gr_add(&x, &y), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn exhaustive_quaternary_cubic_ring() {
        let r = gr(2);
        let all = r.elements();
        assert_eq!(all.len(), 64);
        let two = r.from_int(2);
        for u in &all {
            let t = u.padic_coords();
            assert_eq!(t.len(), 2);
            assert!(t.iter().all(|x| x.is_teichmuller()));
            assert_eq!(&t[0] + &(&two * &t[1]), *u);
            assert_eq!(u.is_unit(), !u.tau().is_zero());
            assert!((u - &u.tau()).valuation() >= 1);
            // Frobenius has order exactly 3 on the ring and fixes Z/4
            let f1 = u.frobenius();
            assert_eq!(f1.frobenius().frobenius(), *u);
        }
        let fixed = all.iter().filter(|u| u.frobenius() == **u).count();
        assert_eq!(fixed, 4);
        for u in &all {
            for v in &all {
                assert_eq!((u * v).tau(), &u.tau() * &v.tau());
                assert_eq!((u * v).frobenius(), &u.frobenius() * &v.frobenius());
                assert_eq!((u + v).frobenius(), &u.frobenius() + &v.frobenius());
            }
        }
    }

    #[test]
    fn frobenius_matches_the_xi_power_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for a in [2, 3, 5] {
            let r = gr(a);
            // independent route: the Z_q-linear map fixed by xi -> xi^p
            let xi_p = r.xi().pow(2);
            for _ in 0..100 {
                let u = random(&r, &mut rng);
                let mut expect = r.zero();
                for (k, v) in u.coords().iter().enumerate() {
                    let c = r.from_coords(std::slice::from_ref(v)).unwrap();
                    expect = &expect + &(&c * &xi_p.pow(k as u128));
                }
                assert_eq!(u.frobenius(), expect);
                let mut w = u.clone();
                for _ in 0..3 {
                    w = w.frobenius();
                }
                assert_eq!(w, u);
            }
            for c in [0, 1, 3, -5] {
                assert_eq!(r.from_int(c).frobenius(), r.from_int(c));
            }
        }
    }

    #[test]
    fn tau_is_multiplicative_and_lands_in_teichmuller_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, a, m) in [(2u64, 3u32, 3usize), (3, 4, 2), (2, 6, 4)] {
            let r = GaloisRing::primitive(p, a, m).unwrap();
            assert_eq!(r.zero().tau(), r.zero());
            assert_eq!(r.one().tau(), r.one());
            for _ in 0..100 {
                let u = random(&r, &mut rng);
                let v = random(&r, &mut rng);
                let tu = u.tau();
                assert!(tu.is_teichmuller());
                assert!((&u - &tu).valuation() >= 1);
                assert_eq!((&u * &v).tau(), &tu * &v.tau());
            }
        }
    }

    #[test]
    fn valuation_is_additive_below_the_precision() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = gr(8);
        for _ in 0..200 {
            let u = &random(&r, &mut rng) * &r.from_int(1 << rng.gen_range(0..4));
            let v = &random(&r, &mut rng) * &r.from_int(1 << rng.gen_range(0..4));
            let (a, b) = (u.valuation(), v.valuation());
            if a + b <= 8 {
                assert_eq!((&u * &v).valuation(), a + b);
            }
        }
    }
}
