//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus (products must fit in a `u64`).
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// A field element. The variant always matches the owning [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Coeff::P(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Coeff::P(r.to_u64().expect("reduced residue fits"))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (FieldSpec::PrimeField(p), Coeff::P(x), Coeff::P(y)) => Coeff::P((x + y) % p),
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x - y),
            (FieldSpec::PrimeField(p), Coeff::P(x), Coeff::P(y)) => Coeff::P((x + p - y) % p),
            _ => mismatch(),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (FieldSpec::PrimeField(p), Coeff::P(x), Coeff::P(y)) => Coeff::P(x * y % p),
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Q(x)) => Coeff::Q(-x),
            (FieldSpec::PrimeField(p), Coeff::P(x)) => Coeff::P((p - x) % p),
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (FieldSpec::Rationals, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (FieldSpec::PrimeField(p), Coeff::P(x)) => Coeff::P(pow_mod(*x, p - 2, *p)),
            _ => mismatch(),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
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

    /// All `n`-th roots of unity in a prime field, ascending. Empty for the rationals
    /// unless `n` is 1 or 2 (where the roots are rational).
    pub fn roots_of_unity(&self, n: u64) -> Vec<Coeff> {
        match self {
            FieldSpec::Rationals => match n {
                1 => vec![self.one()],
                2 => vec![self.one(), self.from_i64(-1)],
                _ => Vec::new(),
            },
            FieldSpec::PrimeField(p) => (1..*p)
                .filter(|a| pow_mod(*a, n, *p) == 1)
                .map(Coeff::P)
                .collect(),
        }
    }

    /// Whether `coeff` belongs to this field's representation.
    pub fn owns(&self, coeff: &Coeff) -> bool {
        match (self, coeff) {
            (FieldSpec::Rationals, Coeff::Q(_)) => true,
            (FieldSpec::PrimeField(p), Coeff::P(x)) => x < p,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp({p})"),
        }
    }
}

#[cold]
fn mismatch() -> ! {
    panic!("coefficient does not belong to the ring's field")
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_zero(),
            Coeff::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_one(),
            Coeff::P(x) => *x == 1,
        }
    }

    /// True when the rendered form carries a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_negative(),
            Coeff::P(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Q(x) => Some(x),
            Coeff::P(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Coeff::Q(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Coeff::P(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(7).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(7).unwrap();
        for a in 1..7 {
            let x = f.from_i64(a);
            let y = f.inv(&x).unwrap();
            assert!(f.mul(&x, &y).is_one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let half = q.div(&q.from_i64(2), &q.from_i64(4)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let neg = q.div(&q.from_i64(3), &q.from_i64(-6)).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
    }

    #[test]
    fn roots_of_unity_mod_five_and_seven() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.roots_of_unity(2), vec![Coeff::P(1), Coeff::P(4)]);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.roots_of_unity(3), vec![Coeff::P(1), Coeff::P(2), Coeff::P(4)]);
    }
}
