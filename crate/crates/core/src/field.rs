//! Exact scalar arithmetic over a prime field `F_p` or the rationals.
//!
//! Every computation in this crate is an exact identity, so there is no
//! floating point anywhere: `F_p` elements are reduced residues in a `u64`,
//! rationals are arbitrary-precision, always-reduced fractions.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

/// The ambient field of a computation. Copyable handle; all arithmetic on
/// [`Elem`] values is routed through it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Prime field `F_p`.
    Prime(u64),
    /// The rational numbers.
    Rational,
}

/// A field element. `Fp` values are stored reduced mod the ambient prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fp(u64),
    Rat(BigRational),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field constructor; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Prime(_) => Elem::Fp(0),
            Field::Rational => Elem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Field::Prime(_) => Elem::Fp(1),
            Field::Rational => Elem::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Field::Prime(p) => Elem::Fp((v.rem_euclid(*p as i64)) as u64),
            Field::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fp(x) => *x == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(p), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % p),
            (Field::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(p), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + p - y) % p),
            (Field::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Prime(p), Elem::Fp(x)) => Elem::Fp((p - x) % p),
            (Field::Rational, Elem::Rat(x)) => Elem::Rat(-x),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(p), Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Field::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        match (self, a) {
            (Field::Prime(p), Elem::Fp(x)) => Ok(Elem::Fp(mod_pow(*x, p - 2, *p))),
            (Field::Rational, Elem::Rat(x)) => Ok(Elem::Rat(x.recip())),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All nonzero elements, for exhaustive sweeps over small prime fields.
    /// Only available over `F_p`.
    pub fn nonzero_elems(&self) -> Vec<Elem> {
        match self {
            Field::Prime(p) => (1..*p).map(Elem::Fp).collect(),
            Field::Rational => panic!("nonzero_elems is only defined over a prime field"),
        }
    }

    /// Every element including zero (prime fields only).
    pub fn all_elems(&self) -> Vec<Elem> {
        match self {
            Field::Prime(p) => (0..*p).map(Elem::Fp).collect(),
            Field::Rational => panic!("all_elems is only defined over a prime field"),
        }
    }

    /// Parse a field-element literal: a decimal integer over `F_p`, an
    /// integer or `a/b` fraction over the rationals.
    pub fn parse(&self, s: &str) -> Result<Elem, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        match self {
            Field::Prime(p) => {
                let v: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Elem::Fp(v.rem_euclid(*p as i64) as u64))
            }
            Field::Rational => {
                let t = s.trim();
                if let Some((num, den)) = t.split_once('/') {
                    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Elem::Rat(BigRational::new(n, d)))
                } else {
                    let n: BigInt = t.parse().map_err(|_| bad())?;
                    Ok(Elem::Rat(BigRational::from_integer(n)))
                }
            }
        }
    }

    /// Canonical text form: decimal over `F_p`, `a` or `a/b` over the
    /// rationals. Inverse of [`Field::parse`].
    pub fn render(&self, a: &Elem) -> String {
        match a {
            Elem::Fp(x) => x.to_string(),
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Uniform random element (for seeded property tests). Over the
    /// rationals a small random integer is used.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Prime(p) => Elem::Fp(rng.gen_range(0..*p)),
            Field::Rational => self.from_i64(rng.gen_range(-9i64..=9)),
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::Rational => write!(f, "q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(5).is_ok());
        assert_eq!(Field::prime(6), Err(FieldError::NotPrime(6)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(8); // 3
        let b = f.from_i64(-1); // 4
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(2));
        assert_eq!(f.inv(&a).unwrap(), f.from_i64(2)); // 3*2 = 6 = 1
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rational_reduction_and_parse() {
        let f = Field::Rational;
        let half = f.parse("2/4").unwrap();
        assert_eq!(f.render(&half), "1/2");
        let x = f.div(&f.from_i64(1), &f.from_i64(-4)).unwrap();
        assert_eq!(f.render(&x), "-1/4");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("abc").is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = Field::Prime(101);
        let a = f.from_i64(7);
        assert_eq!(f.pow(&a, 0), f.one());
        assert_eq!(f.pow(&a, 3), f.from_i64(343));
    }
}
