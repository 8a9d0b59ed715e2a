//! Exact coefficient fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// Which ground field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self, FieldError> {
        match self {
            FieldSpec::Prime(p) if p < 2 || p >= (1 << 31) || !is_prime(p) => {
                Err(FieldError::NotPrime(p as u64))
            }
            _ => Ok(self),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `F5`, `F_5`, `GF(5)` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        if t == "Q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        if p >= (1 << 31) {
            return Err(FieldError::NotPrime(p));
        }
        FieldSpec::Prime(p as u32).validate()
    }
}

pub const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if p as u64 % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Exact scalar of a field. Values are always kept in canonical form so that
/// `==` is equality of field elements.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn field() -> FieldSpec;

    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Result<Self, FieldError>;

    /// Parses an integer (`-3`) or fraction (`2/7`) literal into the field.
    fn parse_literal(s: &str) -> Result<Self, FieldError>;

    /// `(-1)^k`.
    fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

/// Element of the prime field `F_P`, stored as its residue in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(
        is_prime(P) && P < (1 << 31),
        "modulus must be a prime below 2^31"
    );

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn residue(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 as u64 * rhs.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn field() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(P as u64 - 2))
    }

    fn parse_literal(s: &str) -> Result<Self, FieldError> {
        let q = BigRational::parse_literal(s)?;
        let reduce = |n: &BigInt| -> Self {
            let r = (n % BigInt::from(P)).to_i64().expect("residue fits in i64");
            Fp::new(r)
        };
        let num = reduce(q.numer());
        let den = reduce(q.denom());
        Ok(num * den.inv().map_err(|_| FieldError::Literal(s.to_string()))?)
    }
}

impl Scalar for BigRational {
    fn field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn parse_literal(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        let bad = || FieldError::Literal(s.to_string());
        let well_formed = !t.is_empty()
            && t.split('/').count() <= 2
            && t.split('/').enumerate().all(|(i, part)| {
                let digits = if i == 0 {
                    part.strip_prefix('-')
                        .or_else(|| part.strip_prefix('+'))
                        .unwrap_or(part)
                } else {
                    part
                };
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            });
        if !well_formed {
            return Err(bad());
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t, "1"),
        };
        let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let q = BigRational::new(num, den);
        debug_assert!(q.denom().is_positive());
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, F5, Q};
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(F5::from_i64(2).inv().unwrap(), F5::from_i64(3));
        let q = Q::parse_literal("1/3").unwrap() + Q::parse_literal("1/6").unwrap();
        assert_eq!(q, Q::parse_literal("1/2").unwrap());
        assert_eq!(-F2::one(), F2::one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(F3::zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(Q::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(F5::parse_literal("-3").unwrap(), F5::from_i64(2));
        assert_eq!(F5::parse_literal("2/3").unwrap(), F5::from_i64(4));
        assert!(F5::parse_literal("1/5").is_err());
        for bad in ["", "x", "1//2", "1/", "/2", "1.5", "--1"] {
            assert!(Q::parse_literal(bad).is_err(), "{bad:?}");
        }
        assert!(Q::parse_literal("3/0").is_err());
        assert!(Q::parse_literal("4/-2").is_err());
        assert_eq!(Q::parse_literal("-4/6").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("gf(7)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(
            FieldSpec::Prime(2147483647).validate(),
            Ok(FieldSpec::Prime(2147483647))
        );
    }

    fn axioms<S: Scalar>(a: S, b: S, c: S) {
        assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        assert_eq!(a.clone() + (-a.clone()), S::zero());
        if !a.is_zero() {
            assert_eq!(a.inv().unwrap() * a.clone(), S::one());
        }
        assert_eq!(S::parse_literal(&a.to_string()).unwrap(), a);
    }

    proptest! {
        #[test]
        fn field_axioms_f2(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
            axioms(F2::from_i64(a), F2::from_i64(b), F2::from_i64(c));
        }

        #[test]
        fn field_axioms_f3(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
            axioms(F3::from_i64(a), F3::from_i64(b), F3::from_i64(c));
        }

        #[test]
        fn field_axioms_f5(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
            axioms(F5::from_i64(a), F5::from_i64(b), F5::from_i64(c));
        }

        #[test]
        fn field_axioms_q(a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)) {
            let mk = |(n, d): (i64, i64)| Q::from_i64(n) * Q::from_i64(d).inv().unwrap();
            axioms(mk(a), mk(b), mk(c));
        }

        #[test]
        fn rationals_do_not_overflow(n in any::<i64>(), m in any::<i64>()) {
            let big = Q::from_i64(n) * Q::from_i64(m) * Q::from_i64(n);
            let back = big * Q::from_i64(n).inv().unwrap_or(Q::one());
            prop_assert!(n == 0 || back == Q::from_i64(n) * Q::from_i64(m));
        }
    }
}
