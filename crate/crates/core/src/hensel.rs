//! Lifting the factorization of `X^n - 1` from GF(p) to `Z/p^prec`.
//!
//! Two independent routes to the same (unique) lift:
//! quadratic Hensel lifting of each split `factor * cofactor`, and the
//! p-th-power-roots step that gains one digit per application.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfp::CyclotomicFactorization;
use crate::poly::{divmod_monic, ext_gcd_mod_p, Poly};
use crate::zq::{Zq, ZqInt};

/// Lifts every factor of `base` to precision `prec`, preserving order.
pub fn lift_factorization(base: &CyclotomicFactorization, prec: u32) -> Result<Vec<Poly>> {
    let ring = Zq::new(base.p(), prec)?;
    let n = base.n();
    if base.count() == 1 {
        return Ok(vec![Poly::x_n_minus_one(&ring, n)]);
    }
    let field = ring.residue_field();
    let target = Poly::x_n_minus_one(&field, n);
    base.factors()
        .par_iter()
        .map(|g| {
            let (h, r) = divmod_monic(&target, g)?;
            debug_assert!(r.is_zero());
            lift_split(n, g, &h, prec)
        })
        .collect()
}

/// Lifts a single monic divisor `g` of `X^n - 1` mod p with `g` coprime to
/// its cofactor.
pub fn lift_divisor(n: usize, g: &Poly, prec: u32) -> Result<Poly> {
    let g = g.reduce_to(1)?;
    let target = Poly::x_n_minus_one(g.ring(), n);
    let (h, r) = divmod_monic(&target, &g)?;
    if !r.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{g} does not divide X^{n}-1 mod p"
        )));
    }
    if h.degree() == Some(0) {
        return Ok(Poly::x_n_minus_one(&Zq::new(g.ring().p(), prec)?, n));
    }
    lift_split(n, &g, &h, prec)
}

/// Quadratic Hensel lifting of `X^n - 1 ≡ g h (mod p)` with `g`, `h` monic
/// and coprime mod p. Returns the lift of `g` at precision `prec`.
fn lift_split(n: usize, g: &Poly, h: &Poly, prec: u32) -> Result<Poly> {
    let (d, s, t) = ext_gcd_mod_p(g, h);
    if d.degree() != Some(0) {
        return Err(Error::InvalidArgument(
            "factors are not coprime mod p".into(),
        ));
    }
    let (mut g, mut h, mut s, mut t) = (g.clone(), h.clone(), s, t);
    let mut k = 1u32;
    while k < prec {
        let k2 = (2 * k).min(prec);
        let ring = Zq::new(g.ring().p(), k2)?;
        g = g.lift_to(k2)?;
        h = h.lift_to(k2)?;
        s = s.lift_to(k2)?;
        t = t.lift_to(k2)?;
        let f = Poly::x_n_minus_one(&ring, n);
        // invariants mod p^k: f = g h, s g + t h = 1, deg s < deg h, deg t < deg g
        let e = &f - &(&g * &h);
        let (q, r) = divmod_monic(&(&s * &e), &h)?;
        let g_new = &(&g + &(&t * &e)) + &(&q * &g);
        let h_new = &h + &r;
        let b = &(&(&s * &g_new) + &(&t * &h_new)) - &Poly::one(&ring);
        let (c, dd) = divmod_monic(&(&s * &b), &h_new)?;
        s = &s - &dd;
        t = &(&t - &(&t * &b)) - &(&c * &g_new);
        g = g_new;
        h = h_new;
        k = k2;
    }
    debug_assert!(g.is_monic());
    Ok(g)
}

/// One digit of lifting: from the lift `h` at precision `r` returns the lift
/// at precision `r + 1`, as the monic polynomial whose roots are the p-th
/// powers of the roots of `h`.
pub fn pth_power_roots_step(h: &Poly) -> Result<Poly> {
    if !h.is_monic() {
        return Err(Error::NotMonic);
    }
    let r = h.ring().prec();
    let h = h.lift_to(r + 1)?;
    if h.ring().p() == 2 {
        Ok(graeffe_step(&h))
    } else {
        pth_power_charpoly(&h)
    }
}

/// `(-1)^d h(X) h(-X)` rewritten as a polynomial in `X^2`.
fn graeffe_step(h: &Poly) -> Poly {
    let d = h.degree().expect("monic");
    let mut prod = h * &h.negate_x();
    if d % 2 == 1 {
        prod = -&prod;
    }
    let even: Vec<ZqInt> = (0..=d).map(|i| prod.coeff(2 * i)).collect();
    Poly::from_coeffs(h.ring(), &even).expect("same ring")
}

/// Characteristic polynomial of multiplication by `Y^p` on `Z_q[Y]/(h)`.
/// This equals the resultant eliminating `Y` from `h(Y)` and `X - Y^p`.
pub fn pth_power_charpoly(h: &Poly) -> Result<Poly> {
    let ring = h.ring().clone();
    let d = h.degree().ok_or(Error::NotMonic)?;
    let p = ring.p() as usize;
    let yp = Poly::monomial(&ring, 1u32.into(), p);
    // column j holds Y^p * Y^j mod h
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let (_, rem) = divmod_monic(&yp.shift(j), h)?;
        cols.push(rem);
    }
    let m: Vec<Vec<ZqInt>> = (0..d)
        .map(|i| cols.iter().map(|c| c.coeff(i)).collect())
        .collect();
    Ok(charpoly(&ring, &m))
}

/// `det(X I - M)` by Berkowitz's division-free algorithm.
pub fn charpoly(ring: &Zq, m: &[Vec<ZqInt>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    // coefficients, highest degree first
    let mut v = vec![ring.one(), -&m[0][0]];
    for r in 1..n {
        // A = leading r x r block, R = m[r][..r], C = m[..r][r], a = m[r][r]
        let row = &m[r][..r];
        let mut col: Vec<ZqInt> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(-&m[r][r]);
        for _ in 0..r {
            let rc = dot(ring, row, &col);
            t.push(-&rc);
            col = (0..r).map(|i| dot(ring, &m[i][..r], &col)).collect();
        }
        // new = T v, T the (r+2) x (r+1) lower-triangular Toeplitz matrix of t
        let next: Vec<ZqInt> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .map(|j| &t[i - j] * &v[j])
                    .fold(ring.zero(), |acc, x| &acc + &x)
            })
            .collect();
        v = next;
    }
    v.reverse();
    Poly::from_coeffs(ring, &v).expect("same ring")
}

fn dot(ring: &Zq, a: &[ZqInt], b: &[ZqInt]) -> ZqInt {
    a.iter()
        .zip(b)
        .fold(ring.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Lifts every factor by repeated p-th-power-roots steps.
pub fn lift_by_pth_powers(base: &CyclotomicFactorization, prec: u32) -> Result<Vec<Poly>> {
    Zq::new(base.p(), prec)?;
    base.factors()
        .iter()
        .map(|f| {
            let mut h = f.clone();
            for _ in 1..prec {
                h = pth_power_roots_step(&h)?;
            }
            Ok(h)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::factor_cyclotomic;
    use crate::poly::reciprocal;
    use crate::zq::hensel_root;

    fn cubic(prec: u32) -> Poly {
        let base = factor_cyclotomic(7, 2).unwrap();
        lift_factorization(&base, prec).unwrap()[1].clone()
    }

    #[test]
    fn seven_tower() {
        let expect: [&[i64]; 5] = [
            &[1, 1, 0, 1],
            &[-1, 1, 2, 1],
            &[-1, -3, -2, 1],
            &[-1, 5, 6, 1],
            &[-1, 5, 6, 1],
        ];
        for (i, c) in expect.iter().enumerate() {
            let prec = i as u32 + 1;
            let ring = Zq::new(2, prec).unwrap();
            assert_eq!(cubic(prec), Poly::from_i64s(&ring, c), "prec {prec}");
        }
        assert_eq!(cubic(4).to_string(), "-1,5,6,1");
    }

    #[test]
    fn single_step_from_binary_cubic() {
        let f2 = Zq::new(2, 1).unwrap();
        let h = Poly::from_i64s(&f2, &[1, 1, 0, 1]);
        let z4 = Zq::new(2, 2).unwrap();
        assert_eq!(
            pth_power_roots_step(&h).unwrap(),
            Poly::from_i64s(&z4, &[-1, 1, 2, 1])
        );
        for p in [2, 3, 5] {
            let mut lin = Poly::from_i64s(&Zq::new(p, 1).unwrap(), &[-1, 1]);
            for r in 2..6 {
                lin = pth_power_roots_step(&lin).unwrap();
                assert_eq!(lin, Poly::from_i64s(&Zq::new(p, r).unwrap(), &[-1, 1]));
            }
        }
    }

    const MATRIX: [(usize, u64); 5] = [(7, 2), (23, 2), (11, 3), (15, 2), (13, 3)];

    #[test]
    fn both_methods_agree() {
        for (n, p) in MATRIX {
            let base = factor_cyclotomic(n, p).unwrap();
            for prec in [1, 2, 3, 5, 8, 13] {
                let a = lift_factorization(&base, prec).unwrap();
                let b = lift_by_pth_powers(&base, prec).unwrap();
                assert_eq!(a, b, "n={n} p={p} prec={prec}");
            }
        }
    }

    #[test]
    fn lifts_multiply_to_x_n_minus_one() {
        for (n, p) in MATRIX {
            let base = factor_cyclotomic(n, p).unwrap();
            let lifted = lift_factorization(&base, 20).unwrap();
            let ring = lifted[0].ring().clone();
            let prod = lifted.iter().fold(Poly::one(&ring), |acc, f| &acc * f);
            assert_eq!(prod, Poly::x_n_minus_one(&ring, n));
            for (f, g) in lifted.iter().zip(base.factors()) {
                assert!(f.is_monic());
                assert_eq!(&f.reduce_to(1).unwrap(), g);
            }
        }
    }

    #[test]
    fn tower_consistency_and_reciprocity() {
        for (n, p) in MATRIX {
            let base = factor_cyclotomic(n, p).unwrap();
            let high = lift_factorization(&base, 16).unwrap();
            for lower in [1, 4, 9] {
                let low = lift_factorization(&base, lower).unwrap();
                for (h, l) in high.iter().zip(&low) {
                    assert_eq!(&h.reduce_to(lower).unwrap(), l);
                }
            }
            for i in 0..base.count() {
                let j = base.reciprocal_index(i);
                assert_eq!(reciprocal(&high[i]).unwrap(), high[j]);
            }
        }
    }

    #[test]
    fn berkowitz_agrees_with_graeffe_for_two() {
        for (n, p) in [(7usize, 2u64), (23, 2), (15, 2)] {
            let base = factor_cyclotomic(n, p).unwrap();
            for f in lift_factorization(&base, 6).unwrap() {
                let f7 = f.lift_to(7).unwrap();
                assert_eq!(pth_power_charpoly(&f7).unwrap(), graeffe_step(&f7));
            }
        }
    }

    fn symbolic(ring: &Zq, root: &ZqInt, coeffs: &[(i64, i64)]) -> Poly {
        let c: Vec<ZqInt> = coeffs
            .iter()
            .map(|&(x, y)| &ring.from_i64(x) + &(&ring.from_i64(y) * root))
            .collect();
        Poly::from_coeffs(ring, &c).unwrap()
    }

    #[test]
    fn golay_factors_follow_their_quadratic_patterns() {
        let r31 = Zq::new(2, 31).unwrap();
        let nu = hensel_root(&Poly::from_i64s(&r31, &[6, -1, 1]), 0).unwrap();
        // (constant, coefficient of nu), constant term first
        let pattern = [
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
        let expect = symbolic(&r31, &nu, &pattern);
        let lifted = lift_factorization(&factor_cyclotomic(23, 2).unwrap(), 31).unwrap();
        assert!(lifted.contains(&expect));

        let r10 = Zq::new(3, 10).unwrap();
        let theta = hensel_root(&Poly::from_i64s(&r10, &[3, -1, 1]), 0).unwrap();
        let expect = symbolic(
            &r10,
            &theta,
            &[(-1, 0), (-1, 1), (1, 0), (-1, 0), (0, 1), (1, 0)],
        );
        let lifted = lift_factorization(&factor_cyclotomic(11, 3).unwrap(), 10).unwrap();
        assert!(lifted.contains(&expect));
    }
}
