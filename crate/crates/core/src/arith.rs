//! Exact arithmetic modulo an odd prime: sieving and deterministic primality,
//! canonical residues, Legendre symbols (including on rational residues),
//! modular square roots, and the half-factorial ((p-1)/2)!.

use std::fmt;

use thiserror::Error;

/// Largest modulus accepted by [`Prime::new`]. Keeping moduli below 2^31
/// means any product of two canonical residues fits in a `u64`, so the hot
/// loops never need 128-bit reduction.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^31 - 1")]
    ModulusTooLarge(u64),
    #[error("zero has no inverse modulo {0}")]
    ZeroInverse(u64),
    #[error("denominator {den} is divisible by the modulus {p}")]
    DenominatorDivisible { den: i64, p: u64 },
}

/// A validated odd prime modulus p >= 3.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Validates by deterministic trial division up to sqrt(value).
    pub fn new(value: u64) -> Result<Prime, ArithError> {
        if value > MAX_MODULUS {
            return Err(ArithError::ModulusTooLarge(value));
        }
        if value < 3 || value.is_multiple_of(2) || !is_prime(value) {
            return Err(ArithError::NotOddPrime(value));
        }
        Ok(Prime(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// (p - 1) / 2, the exponent of Euler's criterion.
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    /// Canonical residue of an arbitrary integer.
    pub fn residue(self, value: i64) -> Residue {
        Residue::from_int(value, self)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes <= limit, ascending (sieve of Eratosthenes).
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Odd primes in [pmin, pmax], ascending.
pub fn odd_primes_in(pmin: u64, pmax: u64) -> Vec<Prime> {
    assert!(
        pmax <= MAX_MODULUS,
        "pmax exceeds the supported modulus bound"
    );
    sieve_primes(pmax)
        .into_iter()
        .filter(|&p| p >= pmin && p >= 3)
        .map(Prime)
        .collect()
}

// Raw helpers on canonical residues (operands must already be < m).

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < m && b < m && m <= MAX_MODULUS);
    (a * b) % m
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul_mod(base, base, m);
        }
    }
    acc
}

/// Fermat inverse a^(p-2); `None` when p | a. Assumes p prime.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Canonical residue in [0, m) of a possibly negative integer.
#[inline]
pub fn reduce_int(x: i64, m: u64) -> u64 {
    let m_i = m as i64;
    let r = x % m_i;
    if r < 0 {
        (r + m_i) as u64
    } else {
        r as u64
    }
}

/// An integer class mod p in canonical range [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    prime: Prime,
}

impl Residue {
    pub fn new(value: u64, p: Prime) -> Residue {
        Residue {
            value: value % p.value(),
            prime: p,
        }
    }

    pub fn from_int(value: i64, p: Prime) -> Residue {
        Residue {
            value: reduce_int(value, p.value()),
            prime: p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Square-and-multiply exponentiation; x^0 = 1.
    pub fn pow(self, exp: u64) -> Residue {
        Residue {
            value: pow_mod(self.value, exp, self.prime.value()),
            prime: self.prime,
        }
    }

    /// Fermat inverse a^(p-2).
    pub fn inv(self) -> Result<Residue, ArithError> {
        match inv_mod(self.value, self.prime.value()) {
            Some(v) => Ok(Residue {
                value: v,
                prime: self.prime,
            }),
            None => Err(ArithError::ZeroInverse(self.prime.value())),
        }
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        Residue {
            value: add_mod(self.value, rhs.value, self.prime.value()),
            prime: self.prime,
        }
    }
}

impl std::ops::Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        Residue {
            value: sub_mod(self.value, rhs.value, self.prime.value()),
            prime: self.prime,
        }
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        Residue {
            value: mul_mod(self.value, rhs.value, self.prime.value()),
            prime: self.prime,
        }
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: sub_mod(0, self.value, self.prime.value()),
            prime: self.prime,
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.prime)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The three-valued Legendre symbol. Kept as its own type so symbol values
/// never get conflated with residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LegendreSymbol {
    MinusOne,
    Zero,
    One,
}

impl LegendreSymbol {
    pub fn as_int(self) -> i64 {
        match self {
            LegendreSymbol::MinusOne => -1,
            LegendreSymbol::Zero => 0,
            LegendreSymbol::One => 1,
        }
    }

    /// self^exp with the usual conventions (x^0 = 1).
    pub fn pow(self, exp: u64) -> LegendreSymbol {
        if exp == 0 {
            LegendreSymbol::One
        } else if exp.is_multiple_of(2) {
            self * self
        } else {
            self
        }
    }
}

impl std::ops::Mul for LegendreSymbol {
    type Output = LegendreSymbol;
    fn mul(self, rhs: LegendreSymbol) -> LegendreSymbol {
        use LegendreSymbol::*;
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (One, One) | (MinusOne, MinusOne) => One,
            _ => MinusOne,
        }
    }
}

impl fmt::Display for LegendreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_int())
    }
}

/// Legendre symbol (a|p) by Euler's criterion.
pub fn legendre(a: i64, p: Prime) -> LegendreSymbol {
    legendre_of(Residue::from_int(a, p))
}

/// Legendre symbol of a canonical residue.
pub fn legendre_of(a: Residue) -> LegendreSymbol {
    if a.is_zero() {
        return LegendreSymbol::Zero;
    }
    let e = a.pow(a.prime().half()).value();
    if e == 1 {
        LegendreSymbol::One
    } else {
        debug_assert_eq!(e, a.prime().value() - 1);
        LegendreSymbol::MinusOne
    }
}

/// Symbol of the rational residue num/den, i.e. (num * den^-1 | p).
/// Errors when p divides the denominator.
pub fn legendre_ratio(num: i64, den: i64, p: Prime) -> Result<LegendreSymbol, ArithError> {
    let den_r = Residue::from_int(den, p);
    if den_r.is_zero() {
        return Err(ArithError::DenominatorDivisible { den, p: p.value() });
    }
    let num_r = Residue::from_int(num, p);
    Ok(legendre_of(num_r * den_r.inv()?))
}

/// Canonical square root min(s, p-s) with s^2 = a, when one exists.
/// Tonelli-Shanks with the smallest non-residue as auxiliary base, so the
/// output is deterministic.
pub fn sqrt_mod(a: Residue) -> Option<Residue> {
    let p = a.prime();
    let pv = p.value();
    if a.is_zero() {
        return Some(a);
    }
    match legendre_of(a) {
        LegendreSymbol::MinusOne => return None,
        LegendreSymbol::Zero => unreachable!("zero handled above"),
        LegendreSymbol::One => {}
    }
    let root = if pv % 4 == 3 {
        a.pow((pv + 1) / 4).value()
    } else {
        tonelli_shanks(a.value(), pv)
    };
    let canonical = root.min(pv - root);
    Some(Residue::new(canonical, p))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    // p - 1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // smallest quadratic non-residue
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// ((p - 1) / 2)! mod p. For p = 1 (mod 4) this squares to -1 by Wilson's
/// theorem.
pub fn half_factorial(p: Prime) -> Residue {
    let pv = p.value();
    let mut acc = 1u64;
    for k in 2..=p.half() {
        acc = mul_mod(acc, k, pv);
    }
    Residue::new(acc, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(104729).is_ok());
        assert_eq!(Prime::new(2), Err(ArithError::NotOddPrime(2)));
        assert_eq!(Prime::new(4), Err(ArithError::NotOddPrime(4)));
        assert_eq!(Prime::new(1), Err(ArithError::NotOddPrime(1)));
        assert_eq!(Prime::new(9), Err(ArithError::NotOddPrime(9)));
        assert!(matches!(
            Prime::new(u64::MAX),
            Err(ArithError::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn sieve_small() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(1), Vec::<u64>::new());
        assert_eq!(sieve_primes(2), vec![2]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let primes = sieve_primes(30);
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let by_trial: Vec<u64> = (0..=30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, by_trial);
        // and a larger range purely against the oracle
        let primes = sieve_primes(2000);
        let by_trial: Vec<u64> = (0..=2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, by_trial);
    }

    #[test]
    fn pow_examples() {
        let p5 = p(5);
        assert_eq!(p5.residue(7).pow(0).value(), 1);
        assert_eq!(p5.residue(2).pow(3).value(), 3);
        // Fermat: a^(p-1) = 1 for a != 0
        for a in 1..5 {
            assert_eq!(p5.residue(a).pow(4).value(), 1);
        }
    }

    #[test]
    fn inv_examples() {
        assert_eq!(p(7).residue(1).inv().unwrap().value(), 1);
        assert_eq!(p(5).residue(2).inv().unwrap().value(), 3);
        assert_eq!(p(13).residue(4).inv().unwrap().value(), 10);
        assert_eq!(p(13).residue(0).inv(), Err(ArithError::ZeroInverse(13)));
    }

    // Extended Euclid, kept as an independent oracle for the Fermat inverse.
    fn egcd_inverse(a: u64, p: u64) -> Option<u64> {
        if a.is_multiple_of(p) {
            return None;
        }
        let (mut old_r, mut r) = (a as i64 % p as i64, p as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        assert_eq!(old_r, 1, "input not coprime to p");
        Some(reduce_int(old_s, p))
    }

    #[test]
    fn fermat_inverse_matches_euclid() {
        for &pv in &[3u64, 5, 13, 101, 4999] {
            let pr = p(pv);
            for a in 1..pv.min(200) {
                assert_eq!(
                    pr.residue(a as i64).inv().unwrap().value(),
                    egcd_inverse(a, pv).unwrap(),
                    "a={a} p={pv}"
                );
            }
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, p(7)), LegendreSymbol::One);
        assert_eq!(legendre(0, p(5)), LegendreSymbol::Zero);
        assert_eq!(legendre(2, p(13)), LegendreSymbol::MinusOne);
        assert_eq!(legendre(-1, p(5)), LegendreSymbol::One);
        assert_eq!(legendre(-1, p(7)), LegendreSymbol::MinusOne);
    }

    #[test]
    fn legendre_ratio_examples() {
        assert_eq!(legendre_ratio(1, 4, p(5)).unwrap(), LegendreSymbol::One);
        assert_eq!(legendre_ratio(1, 2, p(7)).unwrap(), LegendreSymbol::One);
        for b in -6..6 {
            assert_eq!(legendre_ratio(b, 1, p(11)).unwrap(), legendre(b, p(11)));
        }
        assert_eq!(
            legendre_ratio(1, 10, p(5)),
            Err(ArithError::DenominatorDivisible { den: 10, p: 5 })
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(p(7).residue(4)).unwrap().value(), 2);
        assert_eq!(sqrt_mod(p(7).residue(2)).unwrap().value(), 3);
        assert_eq!(sqrt_mod(p(7).residue(3)), None);
        assert_eq!(sqrt_mod(p(13).residue(0)).unwrap().value(), 0);
        // p = 1 (mod 4) exercises the Tonelli-Shanks path
        assert_eq!(sqrt_mod(p(13).residue(4)).unwrap().value(), 2);
        assert_eq!(sqrt_mod(p(17).residue(2)).unwrap().value(), 6);
    }

    #[test]
    fn sqrt_is_canonical_and_consistent() {
        for &pv in &[3u64, 5, 7, 13, 17, 97, 101, 10007] {
            let pr = p(pv);
            for a in 0..pv.min(300) {
                let r = pr.residue(a as i64);
                match sqrt_mod(r) {
                    Some(s) => {
                        assert_eq!((s * s).value(), r.value(), "a={a} p={pv}");
                        assert!(s.value() <= pv - s.value(), "not the smaller root");
                        assert_ne!(legendre_of(r), LegendreSymbol::MinusOne);
                    }
                    None => assert_eq!(legendre_of(r), LegendreSymbol::MinusOne),
                }
            }
        }
    }

    #[test]
    fn half_factorial_examples() {
        assert_eq!(half_factorial(p(5)).value(), 2);
        assert_eq!(half_factorial(p(13)).value(), 5);
        assert_eq!(half_factorial(p(3)).value(), 1);
    }

    #[test]
    fn symbol_type_behaves_like_signs() {
        use LegendreSymbol::*;
        assert_eq!(One * MinusOne, MinusOne);
        assert_eq!(MinusOne * MinusOne, One);
        assert_eq!(Zero * MinusOne, Zero);
        assert_eq!(MinusOne.pow(0), One);
        assert_eq!(MinusOne.pow(5), MinusOne);
        assert_eq!(MinusOne.pow(6), One);
        assert_eq!(Zero.pow(3), Zero);
        assert_eq!(format!("{}", MinusOne), "-1");
    }
}
