//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Rationals serialize as `{"num": "<decimal>", "den": "<decimal>"}` with
//! both parts as decimal strings so that arbitrary precision survives JSON.
//! On input a plain string (`"3/10"`, `"0.25"`) or a JSON number is also
//! accepted.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Lossy conversion used only for reporting and tolerance checks.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3/10"`, `"-2"`, `"0.125"` or `"1.5e-3"` into an exact rational.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let mut num: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    if negative {
        num = -num;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Renders as `n` for integers and `n/d` otherwise.
pub fn display(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A uniformly drawn rational with numerator in `[-bound, bound]` and
/// denominator in `[1, bound]`.
pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.random_range(-bound..=bound);
    let den = rng.random_range(1..=bound);
    ratio(num, den)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// found by walking the continued-fraction convergents and checking the
/// final semiconvergent.
pub fn nearest(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot approximate a non-finite value");
    let max_den = max_den.max(1);
    let negative = x < 0.0;
    let target = x.abs();

    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let mut rest = target;
    loop {
        let a = rest.floor();
        if a > 1e30 {
            break;
        }
        let a = a as u128;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            // semiconvergent (p0 + k p1)/(q0 + k q1) with the largest admissible k
            let k = (max_den as u128 - q0) / q1;
            let (ps, qs) = (p0 + k * p1, q0 + k * q1);
            let err_semi = (ps as f64 / qs as f64 - target).abs();
            let err_conv = (p1 as f64 / q1 as f64 - target).abs();
            if err_semi < err_conv {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = rest - rest.floor();
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let value = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -value
    } else {
        value
    }
}

/// Exact check that every entry is non-negative and the entries sum to 1.
pub fn check_distribution(values: &[Rational]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidStatistics("empty distribution".into()));
    }
    if let Some(v) = values.iter().find(|v| v.is_negative()) {
        return Err(Error::InvalidStatistics(format!(
            "negative entry {}",
            display(v)
        )));
    }
    let sum: Rational = values.iter().sum();
    if !sum.is_one() {
        return Err(Error::InvalidStatistics(format!(
            "entries sum to {}, expected exactly 1",
            display(&sum)
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint(self) -> std::result::Result<BigInt, String> {
        match self {
            IntOrString::Int(i) => Ok(BigInt::from(i)),
            IntOrString::Str(s) => s.trim().parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Parts { num: IntOrString, den: IntOrString },
    Int(i64),
    Float(f64),
    Text(String),
}

/// Serde adapters for a single `Rational` field.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        use serde::de::Error as _;
        let input = RationalInput::deserialize(d)?;
        match input {
            RationalInput::Parts { num, den } => {
                let num = num.into_bigint().map_err(D::Error::custom)?;
                let den = den.into_bigint().map_err(D::Error::custom)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rational::new(num, den))
            }
            RationalInput::Int(i) => Ok(int(i)),
            // f64 Display is the shortest round-tripping decimal, so 0.3 stays 3/10
            RationalInput::Float(f) => parse(&f.to_string()).map_err(D::Error::custom),
            RationalInput::Text(t) => parse(&t).map_err(D::Error::custom),
        }
    }
}

/// Serde adapters for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrapped(#[serde(with = "serde_rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&Wrapped(q.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let items = Vec::<Wrapped>::deserialize(d)?;
        Ok(items.into_iter().map(|w| w.0).collect())
    }
}

/// Serde adapters for arbitrary-precision counts as decimal strings.
pub mod serde_biguint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Input {
            Int(u64),
            Str(String),
        }
        match Input::deserialize(d)? {
            Input::Int(n) => Ok(BigUint::from(n)),
            Input::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad count {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/10").unwrap(), ratio(3, 10));
        assert_eq!(parse("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse("2.5E1").unwrap(), int(25));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
        assert!(parse("1.2.3").is_err());
    }

    #[test]
    fn nearest_finds_best_approximations() {
        assert_eq!(nearest(0.5, 10), ratio(1, 2));
        assert_eq!(nearest(std::f64::consts::PI, 10), ratio(22, 7));
        assert_eq!(nearest(std::f64::consts::PI, 200), ratio(355, 113));
        assert_eq!(nearest(-0.75, 100), ratio(-3, 4));
        assert_eq!(nearest(0.0, 100), int(0));
        assert_eq!(nearest(3.0, 1), int(3));
    }

    #[test]
    fn nearest_is_optimal_against_brute_force() {
        for &x in &[0.1234, std::f64::consts::FRAC_1_SQRT_2, 0.333, 0.91, 0.015] {
            let best = nearest(x, 50);
            let best_err = (to_f64(&best) - x).abs();
            for den in 1..=50i64 {
                let num = (x * den as f64).round() as i64;
                let err = (num as f64 / den as f64 - x).abs();
                assert!(best_err <= err + 1e-15, "x={x} den={den}");
            }
        }
    }

    #[test]
    fn serde_accepts_objects_strings_and_numbers() {
        #[derive(Deserialize, Serialize)]
        struct Holder(#[serde(with = "serde_rational")] Rational);
        let a: Holder = serde_json::from_str(r#"{"num":"3","den":"10"}"#).unwrap();
        let b: Holder = serde_json::from_str(r#""3/10""#).unwrap();
        let c: Holder = serde_json::from_str("0.3").unwrap();
        let d: Holder = serde_json::from_str(r#"{"num":3,"den":10}"#).unwrap();
        assert_eq!(a.0, ratio(3, 10));
        assert_eq!(b.0, a.0);
        assert_eq!(c.0, a.0);
        assert_eq!(d.0, a.0);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"num":"3","den":"10"}"#
        );
        assert!(serde_json::from_str::<Holder>(r#"{"num":"1","den":"0"}"#).is_err());
    }

    #[test]
    fn distribution_check() {
        assert!(check_distribution(&[ratio(3, 10), ratio(7, 10)]).is_ok());
        assert!(check_distribution(&[ratio(3, 10), ratio(6, 10)]).is_err());
        assert!(check_distribution(&[ratio(-1, 10), ratio(11, 10)]).is_err());
        assert!(check_distribution(&[]).is_err());
    }
}
