//! Exact scalars over the rationals or a prime field GF(p).
//!
//! Every computation in this crate is a dimension of a kernel or cokernel of
//! a matrix defined over the prime field, so arithmetic is exact throughout:
//! arbitrary-precision rationals in characteristic 0, residues in `[0, p)`
//! otherwise. No floating point anywhere.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// A coefficient field: the rationals (characteristic 0) or GF(p) for a prime
/// p < 2^31. Primality is checked at construction so products of residues fit
/// in 64-bit intermediates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    /// 0 means the rationals, otherwise a checked prime.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(characteristic)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::zero())
        } else {
            Scalar::Mod(0)
        }
    }

    pub fn one(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::one())
        } else {
            Scalar::Mod(1)
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
        } else {
            let p = self.characteristic as i64;
            Scalar::Mod(n.rem_euclid(p) as u64)
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::from_integer(n.clone()))
        } else {
            let p = BigInt::from(self.characteristic);
            let r = ((n % &p) + &p) % &p;
            Scalar::Mod(u64::try_from(r).expect("reduced residue fits u64"))
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % self.characteristic),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x * y) % self.characteristic),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Mod(x) => {
                if *x == 0 {
                    Scalar::Mod(0)
                } else {
                    Scalar::Mod(self.characteristic - x)
                }
            }
        }
    }

    /// Multiplicative inverse; panics on zero (callers pivot on nonzero entries).
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            Scalar::Mod(x) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Mod(mod_inverse(*x, self.characteristic))
            }
        }
    }

    /// Whether a scalar value belongs to this field's representation.
    pub fn accepts(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(_) => self.is_rational(),
            Scalar::Mod(x) => !self.is_rational() && *x < self.characteristic,
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod p");
    t.rem_euclid(p as i128) as u64
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (the `BigRational` normal form); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => *x == 1,
        }
    }

    /// Rational value as a reduced fraction string, residue as an integer.
    pub fn display(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}

/// Binomial coefficient in Z, as a `BigInt` so the value can be reduced into
/// any field afterwards. Returns 0 for k < 0 or k > n.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Binomial coefficient as usize for dimension bookkeeping.
pub fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let b = binom(n as i64, k as i64);
    usize::try_from(b.abs().to_biguint().expect("nonnegative")).expect("dimension fits usize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_checked_at_construction() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(91).is_err()); // 7 * 13
        assert!(FieldSpec::new(0).unwrap().is_rational());
    }

    #[test]
    fn residues_normalized() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_i64(-2), Scalar::Mod(3));
        assert_eq!(f.from_i64(7), Scalar::Mod(2));
        let inv = f.inv(&Scalar::Mod(3));
        assert_eq!(f.mul(&inv, &Scalar::Mod(3)), Scalar::Mod(1));
    }

    #[test]
    fn rationals_lowest_terms() {
        let f = FieldSpec::rationals();
        let half = f.mul(
            &f.from_i64(3),
            &f.inv(&f.from_i64(6)),
        );
        assert_eq!(half, Scalar::Rat(BigRational::new(BigInt::from(1), BigInt::from(2))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(4, 0), BigInt::from(1));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom_usize(6, 3), 20);
    }
}
