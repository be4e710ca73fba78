//! Coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic used when nothing else is requested.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// A coefficient field, identified by its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

/// A field element. Prime-field elements are canonical representatives in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(Box<BigRational>),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// `GF(p)`; `p` must be a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(FieldSpec { characteristic: p as u32 })
    }

    /// Field of the given characteristic (0 means the rationals).
    pub fn with_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(c)
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn kind(&self) -> FieldKind {
        if self.characteristic == 0 {
            FieldKind::Rationals
        } else {
            FieldKind::PrimeField
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.kind() {
            FieldKind::PrimeField => Scalar::Mod(0),
            FieldKind::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind() {
            FieldKind::PrimeField => {
                let p = self.characteristic as i64;
                Scalar::Mod(v.rem_euclid(p) as u32)
            }
            FieldKind::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.kind() {
            FieldKind::PrimeField => {
                let p = BigInt::from(self.characteristic);
                let r = v.mod_floor(&p);
                Scalar::Mod(r.to_u32().expect("residue fits in u32"))
            }
            FieldKind::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(v.clone()))),
        }
    }

    /// The element `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_bigint(num);
        Ok(self.mul(&n, &self.inv(&d)?))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let s = *x as u64 + *y as u64;
                let p = self.characteristic as u64;
                Scalar::Mod(if s >= p { s - p } else { s } as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x + &**y)),
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(0) => Scalar::Mod(0),
            Scalar::Mod(x) => Scalar::Mod(self.characteristic - x),
            Scalar::Rat(x) => Scalar::Rat(Box::new(-&**x)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % self.characteristic as u64) as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x * &**y)),
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Mod(x) => {
                let p = self.characteristic as i64;
                let ext = (*x as i64).extended_gcd(&p);
                Scalar::Mod(ext.x.rem_euclid(p) as u32)
            }
            Scalar::Rat(x) => Scalar::Rat(Box::new(x.recip())),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
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

    /// Signed integer representative used for printing (symmetric range for `GF(p)`).
    pub fn display(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(x) => {
                let p = self.characteristic;
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            Scalar::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// True if the printed form starts with a minus sign.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(x) => *x > self.characteristic / 2,
            Scalar::Rat(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::PrimeField => write!(f, "GF({})", self.characteristic),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime(32003).is_ok());
        assert_eq!(FieldSpec::prime(32004), Err(Error::InvalidCharacteristic(32004)));
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert!(FieldSpec::with_characteristic(0).is_ok());
    }

    #[test]
    fn scale_mod_five() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.mul(&f.from_i64(3), &f.from_i64(4)), Scalar::Mod(2));
    }

    #[test]
    fn ratio_mod_p() {
        let f = FieldSpec::prime(7).unwrap();
        let half = f.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(f.mul(&half, &f.from_i64(2)), f.one());
        assert_eq!(f.from_ratio(&1.into(), &7.into()), Err(Error::DivisionByZero));
    }

    proptest! {
        #[test]
        fn prime_field_agrees_with_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i32>()) {
            let f = FieldSpec::prime(32003).unwrap();
            let big = (BigInt::from(a) * BigInt::from(b) + BigInt::from(c)).mod_floor(&BigInt::from(32003));
            let got = f.add(&f.mul(&f.from_i64(a), &f.from_i64(b)), &f.from_i64(c as i64));
            prop_assert_eq!(got, f.from_bigint(&big));
        }

        #[test]
        fn inverse_is_inverse(a in 1u32..32003) {
            let f = FieldSpec::prime(32003).unwrap();
            let x = Scalar::Mod(a);
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
    }
}
