use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, serde_rational, Rational};

/// Ordered pair of exact rationals `(n, m)` carrying the complex-field
/// operations: `⊕` is componentwise addition and `⊙` is
/// `(N,M)⊙(n,m) = (Nn − Mm, Nm + Mn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairNumber {
    pub n: Rational,
    pub m: Rational,
}

/// The two involutions acting on a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    /// `(n, m) ↦ (n, −m)`
    Conj,
    /// `(n, m) ↦ (m, n)`
    Swap,
}

impl PairNumber {
    pub fn new(n: Rational, m: Rational) -> Self {
        PairNumber { n, m }
    }

    pub fn from_ints(n: i64, m: i64) -> Self {
        PairNumber::new(rational::int(n), rational::int(m))
    }

    pub fn zero() -> Self {
        PairNumber::from_ints(0, 0)
    }

    pub fn one() -> Self {
        PairNumber::from_ints(1, 0)
    }

    pub fn i() -> Self {
        PairNumber::from_ints(0, 1)
    }

    pub fn real(n: Rational) -> Self {
        PairNumber::new(n, <Rational as Zero>::zero())
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.n) && Zero::is_zero(&self.m)
    }

    pub fn add(&self, other: &PairNumber) -> PairNumber {
        PairNumber::new(&self.n + &other.n, &self.m + &other.m)
    }

    pub fn mul(&self, other: &PairNumber) -> PairNumber {
        PairNumber::new(
            &self.n * &other.n - &self.m * &other.m,
            &self.n * &other.m + &self.m * &other.n,
        )
    }

    pub fn negate(&self) -> PairNumber {
        PairNumber::new(-&self.n, -&self.m)
    }

    /// `n² + m²`, the quantity that must be nonzero for an inverse to exist.
    pub fn delta(&self) -> Rational {
        &self.n * &self.n + &self.m * &self.m
    }

    /// `(n, m)⁻¹ = (n/Δ, −m/Δ)` with `Δ = n² + m²`.
    pub fn inverse(&self) -> Result<PairNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let delta = self.delta();
        Ok(PairNumber::new(&self.n / &delta, -(&self.m / &delta)))
    }

    pub fn div(&self, other: &PairNumber) -> Result<PairNumber> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn conj(&self) -> PairNumber {
        PairNumber::new(self.n.clone(), -&self.m)
    }

    pub fn swap(&self) -> PairNumber {
        PairNumber::new(self.m.clone(), self.n.clone())
    }

    pub fn involution(&self, kind: Involution) -> PairNumber {
        match kind {
            Involution::Conj => self.conj(),
            Involution::Swap => self.swap(),
        }
    }

    /// Parses `"n,m"` where each part is any rational accepted by
    /// [`rational::parse`].
    pub fn parse(text: &str) -> Result<PairNumber> {
        let (n, m) = text
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"n,m\", got {text:?}")))?;
        Ok(PairNumber::new(rational::parse(n)?, rational::parse(m)?))
    }
}

impl fmt::Display for PairNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            rational::display(&self.n),
            rational::display(&self.m)
        )
    }
}

impl Add for &PairNumber {
    type Output = PairNumber;
    fn add(self, rhs: &PairNumber) -> PairNumber {
        PairNumber::add(self, rhs)
    }
}

impl Add for PairNumber {
    type Output = PairNumber;
    fn add(self, rhs: PairNumber) -> PairNumber {
        PairNumber::add(&self, &rhs)
    }
}

impl Sub for &PairNumber {
    type Output = PairNumber;
    fn sub(self, rhs: &PairNumber) -> PairNumber {
        PairNumber::new(&self.n - &rhs.n, &self.m - &rhs.m)
    }
}

impl Mul for &PairNumber {
    type Output = PairNumber;
    fn mul(self, rhs: &PairNumber) -> PairNumber {
        PairNumber::mul(self, rhs)
    }
}

impl Mul for PairNumber {
    type Output = PairNumber;
    fn mul(self, rhs: PairNumber) -> PairNumber {
        PairNumber::mul(&self, &rhs)
    }
}

impl Neg for &PairNumber {
    type Output = PairNumber;
    fn neg(self) -> PairNumber {
        self.negate()
    }
}

impl Neg for PairNumber {
    type Output = PairNumber;
    fn neg(self) -> PairNumber {
        self.negate()
    }
}

mod serde_rational_ref {
    use super::*;
    pub fn serialize<S: Serializer>(q: &&Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational::serialize(q, s)
    }
}

impl Serialize for PairNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            #[serde(with = "serde_rational_ref")]
            n: &'a Rational,
            #[serde(with = "serde_rational_ref")]
            m: &'a Rational,
        }
        Repr {
            n: &self.n,
            m: &self.m,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Component(#[serde(with = "serde_rational")] Rational);

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Input {
            Object {
                #[serde(with = "serde_rational")]
                n: Rational,
                #[serde(with = "serde_rational")]
                m: Rational,
            },
            Array(Component, Component),
        }
        Ok(match Input::deserialize(d)? {
            Input::Object { n, m } => PairNumber::new(n, m),
            Input::Array(n, m) => PairNumber::new(n.0, m.0),
        })
    }
}

/// Minimal field interface shared by the exact linear-algebra routines.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for PairNumber {
    fn zero() -> Self {
        PairNumber::zero()
    }
    fn one() -> Self {
        PairNumber::one()
    }
    fn is_zero(&self) -> bool {
        PairNumber::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        PairNumber::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        PairNumber::mul(self, other)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(n: i64, m: i64) -> PairNumber {
        PairNumber::from_ints(n, m)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(PairNumber::add(&p(1, 2), &p(3, 4)), p(4, 6));
        assert_eq!(PairNumber::add(&p(5, -7), &PairNumber::zero()), p(5, -7));
        assert_eq!(
            PairNumber::add(&p(5, -7), &p(5, -7).negate()),
            PairNumber::zero()
        );
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            PairNumber::mul(&PairNumber::i(), &PairNumber::i()),
            p(-1, 0)
        );
        assert_eq!(PairNumber::mul(&PairNumber::one(), &p(9, -4)), p(9, -4));
        assert_eq!(PairNumber::mul(&p(2, 3), &p(4, 5)), p(-7, 22));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            p(3, 4).inverse().unwrap(),
            PairNumber::new(ratio(3, 25), ratio(-4, 25))
        );
        assert_eq!(p(1, 0).inverse().unwrap(), p(1, 0));
        assert_eq!(p(0, 1).inverse().unwrap(), p(0, -1));
        assert_eq!(PairNumber::zero().inverse(), Err(Error::DivisionByZero));
        assert_eq!(
            PairNumber::mul(&p(3, 4), &p(3, 4).inverse().unwrap()),
            PairNumber::one()
        );
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p(3, 4).conj(), p(3, -4));
        assert_eq!(p(3, 4).swap(), p(4, 3));
        let twice = p(1, 2).swap().conj().swap().conj();
        assert_eq!(twice, p(-1, -2));
        assert_eq!(p(3, 4).involution(Involution::Conj), p(3, -4));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(
            PairNumber::parse("1/2,-3").unwrap(),
            PairNumber::new(ratio(1, 2), ratio(-3, 1))
        );
        assert!(PairNumber::parse("1").is_err());
        assert_eq!(
            PairNumber::new(ratio(1, 2), ratio(-3, 1)).to_string(),
            "(1/2,-3)"
        );
    }

    #[test]
    fn serde_forms() {
        let a = PairNumber::new(ratio(1, 2), ratio(-3, 1));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"n":{"num":"1","den":"2"},"m":{"num":"-3","den":"1"}}"#
        );
        assert_eq!(serde_json::from_str::<PairNumber>(&json).unwrap(), a);
        assert_eq!(
            serde_json::from_str::<PairNumber>(r#"["1/2", -3]"#).unwrap(),
            a
        );
        assert_eq!(
            serde_json::from_str::<PairNumber>(r#"{"n":0.5,"m":"-3"}"#).unwrap(),
            a
        );
    }
}
