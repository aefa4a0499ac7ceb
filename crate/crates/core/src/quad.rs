//! Exact arithmetic in the imaginary quadratic order `Z[w]/(w^2 - w + c)`.
//!
//! The named codes have generator coefficients of the form `x + y*w` where `w`
//! is a p-adic root of `X^2 - X + c`. Working in the quadratic ring keeps every
//! minor exact, and the embedding `w -> root` carries nonzero values to
//! nonzero p-adic integers, so a nonzero determinant here certifies
//! independence over the p-adic integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::zq::ZqInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    c: i64,
    x: BigInt,
    y: BigInt,
}

impl QuadInt {
    pub fn new(c: i64, x: impl Into<BigInt>, y: impl Into<BigInt>) -> QuadInt {
        QuadInt {
            c,
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn int(c: i64, x: i64) -> QuadInt {
        QuadInt::new(c, x, 0)
    }

    /// The generator `w` itself.
    pub fn omega(c: i64) -> QuadInt {
        QuadInt::new(c, 0, 1)
    }

    pub fn zero(c: i64) -> QuadInt {
        QuadInt::int(c, 0)
    }

    pub fn one(c: i64) -> QuadInt {
        QuadInt::int(c, 1)
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Image under the other root `w' = 1 - w`.
    pub fn conj(&self) -> QuadInt {
        QuadInt {
            c: self.c,
            x: &self.x + &self.y,
            y: -&self.y,
        }
    }

    /// `x^2 + xy + c y^2`, positive for nonzero elements when `c >= 1`.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x + &self.x * &self.y + BigInt::from(self.c) * &self.y * &self.y
    }

    /// Division that is known to be exact. Returns `None` if it is not.
    pub fn exact_div(&self, d: &QuadInt) -> Option<QuadInt> {
        assert_eq!(self.c, d.c);
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let (qx, rx) = num.x.div_rem(&n);
        let (qy, ry) = num.y.div_rem(&n);
        if !rx.is_zero() || !ry.is_zero() {
            return None;
        }
        Some(QuadInt {
            c: self.c,
            x: qx,
            y: qy,
        })
    }

    /// Maps `w` to the given p-adic root of `X^2 - X + c`.
    pub fn embed(&self, root: &ZqInt) -> ZqInt {
        let ring = root.ring();
        &ring.from_bigint(&self.x) + &(&ring.from_bigint(&self.y) * root)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}w", self.y),
            (false, false) => {
                let sign = if self.y.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}w", self.x, sign, self.y.abs())
            }
        }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &'a QuadInt) -> QuadInt {
        assert_eq!(self.c, rhs.c);
        QuadInt {
            c: self.c,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &'a QuadInt) -> QuadInt {
        assert_eq!(self.c, rhs.c);
        QuadInt {
            c: self.c,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &'a QuadInt) -> QuadInt {
        assert_eq!(self.c, rhs.c);
        // (a + bw)(u + vw) = au + (av + bu)w + bv w^2,  w^2 = w - c
        let bv = &self.y * &rhs.y;
        QuadInt {
            c: self.c,
            x: &self.x * &rhs.x - BigInt::from(self.c) * &bv,
            y: &self.x * &rhs.y + &self.y * &rhs.x + bv,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            c: self.c,
            x: -&self.x,
            y: -&self.y,
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Polynomial with `QuadInt` coefficients, constant term first.
pub fn quad_poly_mul(a: &[QuadInt], b: &[QuadInt]) -> Vec<QuadInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let c = a[0].c;
    let mut out = vec![QuadInt::zero(c); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(u * v);
        }
    }
    while out.last().is_some_and(|z| z.is_zero()) {
        out.pop();
    }
    out
}

/// Reciprocal of a polynomial whose constant term is `±1`, normalized monic.
pub fn quad_poly_reciprocal(a: &[QuadInt]) -> Option<Vec<QuadInt>> {
    let c = a.first()?.c;
    let lead = a.first()?;
    let sign = if *lead == QuadInt::one(c) {
        QuadInt::one(c)
    } else if *lead == QuadInt::int(c, -1) {
        QuadInt::int(c, -1)
    } else {
        return None;
    };
    Some(a.iter().rev().map(|v| v * &sign).collect())
}

/// Determinant by fraction-free (Bareiss) elimination. Every intermediate
/// division is exact because `Z[w]` is an integral domain.
pub fn determinant(m: &[Vec<QuadInt>]) -> QuadInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return QuadInt::one(1);
    }
    let c = m[0][0].c;
    let mut a: Vec<Vec<QuadInt>> = m.to_vec();
    let mut prev = QuadInt::one(c);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return QuadInt::zero(c),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}
