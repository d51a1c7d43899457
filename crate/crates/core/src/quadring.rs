//! Arithmetic in the quotient ring R = (Z/p)[x]/(x^2 - Delta), the mod-p
//! image of the quadratic integers of Q[sqrt(Delta)]. Hosts the root
//! constructions alpha = (A + omega)/2, theta = alpha/beta, multiplicative
//! orders when R is a field, and the quadratic power-congruence check.

use crate::arith::{
    add_mod, inv_mod, legendre_of, mul_mod, sub_mod, LegendreSymbol, Prime, Residue,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadRingError {
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("B is divisible by p, so beta is not invertible")]
    BNotInvertible,
    #[error("p divides B * Delta; the congruence does not apply")]
    NotApplicable,
    #[error("Delta is a square mod p, so the ring is not a field")]
    NotAField,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
}

/// The ring (Z/p)[x]/(x^2 - Delta), identified by p and Delta.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    p: Prime,
    delta: u64,
}

impl QuadRing {
    pub fn new(p: Prime, delta: i64) -> QuadRing {
        QuadRing {
            p,
            delta: Residue::from_int(delta, p).value(),
        }
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn delta(self) -> u64 {
        self.delta
    }

    /// True when Delta is a non-residue, i.e. R is the field of p^2 elements.
    pub fn is_field(self) -> bool {
        legendre_of(Residue::new(self.delta, self.p)) == LegendreSymbol::MinusOne
    }

    /// The element a + b*omega.
    pub fn element(self, a: i64, b: i64) -> QuadElem {
        QuadElem {
            ring: self,
            a: Residue::from_int(a, self.p).value(),
            b: Residue::from_int(b, self.p).value(),
        }
    }

    pub fn scalar(self, a: i64) -> QuadElem {
        self.element(a, 0)
    }

    pub fn omega(self) -> QuadElem {
        self.element(0, 1)
    }

    pub fn one(self) -> QuadElem {
        self.scalar(1)
    }

    pub fn zero(self) -> QuadElem {
        self.scalar(0)
    }
}

impl fmt::Debug for QuadRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})[x]/(x^2 - {})", self.p, self.delta)
    }
}

/// a + b*omega with omega^2 = Delta, components canonical mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElem {
    ring: QuadRing,
    a: u64,
    b: u64,
}

impl QuadElem {
    pub fn ring(self) -> QuadRing {
        self.ring
    }

    /// Scalar component.
    pub fn a(self) -> u64 {
        self.a
    }

    /// omega component.
    pub fn b(self) -> u64 {
        self.b
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_scalar(self) -> bool {
        self.b == 0
    }

    /// (a + b*omega)(c + d*omega) = (ac + bd*Delta) + (ad + bc)*omega.
    pub fn checked_mul(self, rhs: QuadElem) -> Result<QuadElem, QuadRingError> {
        if self.ring != rhs.ring {
            return Err(QuadRingError::RingMismatch);
        }
        let p = self.ring.p.value();
        let d = self.ring.delta;
        let a = add_mod(
            mul_mod(self.a, rhs.a, p),
            mul_mod(mul_mod(self.b, rhs.b, p), d, p),
            p,
        );
        let b = add_mod(mul_mod(self.a, rhs.b, p), mul_mod(self.b, rhs.a, p), p);
        Ok(QuadElem {
            ring: self.ring,
            a,
            b,
        })
    }

    /// x^n by repeated squaring; x^0 = 1.
    pub fn pow(self, mut n: u64) -> QuadElem {
        let mut acc = self.ring.one();
        let mut base = self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// The conjugate a - b*omega.
    pub fn conj(self) -> QuadElem {
        let p = self.ring.p.value();
        QuadElem {
            ring: self.ring,
            a: self.a,
            b: sub_mod(0, self.b, p),
        }
    }

    /// N(a + b*omega) = a^2 - Delta * b^2, the product with the conjugate.
    pub fn norm(self) -> u64 {
        let p = self.ring.p.value();
        sub_mod(
            mul_mod(self.a, self.a, p),
            mul_mod(self.ring.delta, mul_mod(self.b, self.b, p), p),
            p,
        )
    }
}

impl std::ops::Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        self.checked_mul(rhs).expect("mixed rings")
    }
}

impl std::ops::Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let p = self.ring.p.value();
        QuadElem {
            ring: self.ring,
            a: add_mod(self.a, rhs.a, p),
            b: add_mod(self.b, rhs.b, p),
        }
    }
}

impl std::ops::Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let p = self.ring.p.value();
        QuadElem {
            ring: self.ring,
            a: sub_mod(self.a, rhs.a, p),
            b: sub_mod(self.b, rhs.b, p),
        }
    }
}

impl std::ops::Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        self.ring.zero() - self
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}w (mod {})", self.a, self.b, self.ring.p)
    }
}

/// alpha = (A + omega)/2 in the ring with Delta = A^2 - 4B: one root of
/// x^2 - Ax + B. Its conjugate is the other root; alpha * conj(alpha) = B
/// and alpha + conj(alpha) = A.
pub fn alpha_of(a: i64, b: i64, p: Prime) -> QuadElem {
    let pv = p.value();
    let ar = Residue::from_int(a, p).value();
    let br = Residue::from_int(b, p).value();
    let delta = sub_mod(mul_mod(ar, ar, pv), mul_mod(4 % pv, br, pv), pv);
    let ring = QuadRing { p, delta };
    let inv2 = inv_mod(2, pv).expect("p is odd");
    QuadElem {
        ring,
        a: mul_mod(ar, inv2, pv),
        b: inv2,
    }
}

/// theta = alpha / beta = alpha^2 * B^{-1}, the unit-norm twist of alpha.
/// Errors when p | B.
pub fn theta_of(a: i64, b: i64, p: Prime) -> Result<QuadElem, QuadRingError> {
    let br = Residue::from_int(b, p).value();
    let b_inv = inv_mod(br, p.value()).ok_or(QuadRingError::BNotInvertible)?;
    let alpha = alpha_of(a, b, p);
    let alpha_sq = alpha * alpha;
    Ok(alpha_sq * alpha_sq.ring.scalar(b_inv as i64))
}

/// Checks the quadratic-integer power congruence: with Delta = A^2 - 4B and
/// p not dividing B*Delta, both roots (A +- omega)/2 raised to the power
/// p - (Delta|p) reduce to the scalar B^((1 - (Delta|p))/2).
pub fn verify_power_congruence(a: i64, b: i64, p: Prime) -> Result<bool, QuadRingError> {
    let pv = p.value();
    let br = Residue::from_int(b, p).value();
    let alpha = alpha_of(a, b, p);
    let delta = alpha.ring.delta;
    if br == 0 || delta == 0 {
        return Err(QuadRingError::NotApplicable);
    }
    let (exponent, target) = match legendre_of(Residue::new(delta, p)) {
        LegendreSymbol::One => (pv - 1, 1u64),
        LegendreSymbol::MinusOne => (pv + 1, br),
        LegendreSymbol::Zero => unreachable!("delta != 0 checked above"),
    };
    let want = alpha.ring.scalar(target as i64);
    Ok(alpha.pow(exponent) == want && alpha.conj().pow(exponent) == want)
}

/// Prime factorization with multiplicity, ascending, by trial division.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of x in the field R (requires (Delta|p) = -1 and
/// x != 0): starts from the group order p^2 - 1 and strips prime factors
/// while the power stays 1.
pub fn mult_order(x: QuadElem) -> Result<u64, QuadRingError> {
    if !x.ring.is_field() {
        return Err(QuadRingError::NotAField);
    }
    if x.is_zero() {
        return Err(QuadRingError::ZeroElement);
    }
    let p = x.ring.p.value();
    let group = (p - 1) * (p + 1);
    let one = x.ring.one();
    debug_assert_eq!(x.pow(group), one);
    let mut order = group;
    let mut factors = factorize(group);
    factors.dedup();
    for q in factors {
        while order.is_multiple_of(q) && x.pow(order / q) == one {
            order /= q;
        }
    }
    Ok(order)
}

/// Whether x^k = -1 is solvable. In the cyclic group of the field case, -1
/// is the unique element of order 2, so this holds exactly when the order
/// of x is even.
pub fn has_minus_one_power(x: QuadElem) -> Result<bool, QuadRingError> {
    Ok(mult_order(x)? % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn omega_squares_to_delta() {
        let ring = QuadRing::new(p(5), 2);
        assert_eq!(ring.omega() * ring.omega(), ring.scalar(2));
        let x = ring.element(3, 4);
        assert_eq!(ring.one() * x, x);
    }

    #[test]
    fn square_of_one_plus_omega() {
        // (1 + w)^2 with Delta = 2, p = 5: 1 + 2w + 2 = 3 + 2w
        let ring = QuadRing::new(p(5), 2);
        let x = ring.element(1, 1);
        assert_eq!(x * x, ring.element(3, 2));
    }

    #[test]
    fn mixed_rings_rejected() {
        let x = QuadRing::new(p(5), 2).one();
        let y = QuadRing::new(p(5), 3).one();
        assert_eq!(x.checked_mul(y), Err(QuadRingError::RingMismatch));
    }

    #[test]
    fn pow_examples() {
        let ring = QuadRing::new(p(11), 5);
        let x = ring.element(3, 7);
        assert_eq!(x.pow(0), ring.one());
        assert_eq!(ring.omega().pow(2), ring.scalar(5));
        // alpha of x^2 + 3x + 1 over p = 13: alpha^(p+1) = B = 1
        let alpha = alpha_of(-3, 1, p(13));
        assert_eq!(alpha.pow(14), alpha.ring().one());
    }

    #[test]
    fn conj_examples() {
        let ring = QuadRing::new(p(7), 5);
        assert_eq!(ring.omega().conj(), ring.element(0, -1));
        assert_eq!(ring.scalar(4).conj(), ring.scalar(4));
        // conj(alpha(-3, 1, 7)) = (-3 - w)/2 = 2 + 3w with Delta = 5
        let alpha = alpha_of(-3, 1, p(7));
        assert_eq!(alpha.ring().delta(), 5);
        assert_eq!(alpha.conj(), alpha.ring().element(2, 3));
    }

    #[test]
    fn alpha_components() {
        // (A, B) = (2, 1): Delta = 0, alpha = 1 + w * inv(2)
        let a = alpha_of(2, 1, p(7));
        assert_eq!(a.ring().delta(), 0);
        assert_eq!((a.a(), a.b()), (1, 4)); // inv(2) mod 7 = 4

        // (A, B) = (-3, 1), p = 13: inv(2) = 7, alpha = 5 + 7w, Delta = 5
        let a = alpha_of(-3, 1, p(13));
        assert_eq!(a.ring().delta(), 5);
        assert_eq!((a.a(), a.b()), (5, 7));
        // (A, B) = (-3, 4), p = 11: Delta = -7 = 4; alpha = (-3 + w) * 6 = 4 + 6w
        let a = alpha_of(-3, 4, p(11));
        assert_eq!(a.ring().delta(), 4);
        assert_eq!((a.a(), a.b()), (4, 6));
    }

    #[test]
    fn alpha_trace_and_norm() {
        for (a, b, pv) in [(1, -1, 7), (3, 1, 11), (-3, 4, 11), (5, 2, 13)] {
            let pr = p(pv);
            let alpha = alpha_of(a, b, pr);
            let beta = alpha.conj();
            assert_eq!(alpha * beta, alpha.ring().scalar(b));
            assert_eq!(alpha + beta, alpha.ring().scalar(a));
        }
    }

    #[test]
    fn theta_examples() {
        // B = 1: theta = alpha^2
        let alpha = alpha_of(-3, 1, p(13));
        let theta = theta_of(-3, 1, p(13)).unwrap();
        assert_eq!(theta, alpha * alpha);
        assert_eq!((theta.a(), theta.b()), (10, 5));
        // unit norm: theta * conj(theta) = 1
        let theta = theta_of(-3, 4, p(11)).unwrap();
        assert_eq!(theta * theta.conj(), theta.ring().one());
        assert_eq!(theta_of(3, 13, p(13)), Err(QuadRingError::BNotInvertible));
    }

    #[test]
    fn power_congruence_examples() {
        // Delta = 5, (5|7) = -1: alpha^8 = B = -1
        assert_eq!(verify_power_congruence(1, -1, p(7)), Ok(true));
        // Delta = 5, (5|11) = 1: alpha^10 = 1
        assert_eq!(verify_power_congruence(3, 1, p(11)), Ok(true));
        // Delta = 0: excluded
        assert_eq!(
            verify_power_congruence(2, 1, p(5)),
            Err(QuadRingError::NotApplicable)
        );
        assert_eq!(
            verify_power_congruence(1, 5, p(5)),
            Err(QuadRingError::NotApplicable)
        );
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1), Vec::<u64>::new());
        assert_eq!(factorize(12), vec![2, 2, 3]);
        assert_eq!(factorize(168), vec![2, 2, 2, 3, 7]);
        assert_eq!(factorize(97), vec![97]);
    }

    #[test]
    fn order_examples() {
        let ring = QuadRing::new(p(13), 5); // (5|13) = -1: field
        assert!(ring.is_field());
        assert_eq!(mult_order(ring.one()), Ok(1));
        assert_eq!(mult_order(ring.scalar(-1)), Ok(2));
        let theta = theta_of(-3, 1, p(13)).unwrap();
        assert_eq!(mult_order(theta), Ok(7));
        assert_eq!(has_minus_one_power(theta), Ok(false));
        assert_eq!(has_minus_one_power(ring.scalar(-1)), Ok(true));
        assert_eq!(has_minus_one_power(ring.one()), Ok(false));
        assert_eq!(mult_order(ring.zero()), Err(QuadRingError::ZeroElement));
        let nonfield = QuadRing::new(p(13), 4);
        assert_eq!(mult_order(nonfield.one()), Err(QuadRingError::NotAField));
    }

    #[test]
    fn order_matches_linear_scan() {
        // linear-scan oracle for small fields
        for pv in [3u64, 5, 7, 11, 13] {
            let pr = p(pv);
            for d in 1..pv {
                let ring = QuadRing::new(pr, d as i64);
                if !ring.is_field() {
                    continue;
                }
                for a in 0..pv {
                    for b in 0..pv {
                        let x = ring.element(a as i64, b as i64);
                        if x.is_zero() {
                            continue;
                        }
                        let fast = mult_order(x).unwrap();
                        let mut acc = x;
                        let mut slow = 1u64;
                        while acc != ring.one() {
                            acc = acc * x;
                            slow += 1;
                        }
                        assert_eq!(fast, slow, "p={pv} d={d} x=({a},{b})");
                    }
                }
            }
        }
    }
}
