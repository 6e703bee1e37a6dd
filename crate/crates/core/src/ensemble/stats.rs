use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::brace::Primitive;
use crate::error::{Error, Result};
use crate::rational::{self, serde_biguint, serde_rational, serde_rational_vec, Rational};

/// Relative frequencies `ν` and phases `κ`, one per outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceStatistics {
    pub outcomes: Vec<Primitive>,
    #[serde(with = "serde_rational_vec")]
    pub nu: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub kappa: Vec<Rational>,
}

impl BraceStatistics {
    /// Builds and validates: equal lengths, `ν` a distribution, `κ ∈ [0,1]`.
    pub fn new(outcomes: Vec<Primitive>, nu: Vec<Rational>, kappa: Vec<Rational>) -> Result<Self> {
        if nu.len() != outcomes.len() {
            return Err(Error::LengthMismatch {
                expected: outcomes.len(),
                got: nu.len(),
            });
        }
        if kappa.len() != outcomes.len() {
            return Err(Error::LengthMismatch {
                expected: outcomes.len(),
                got: kappa.len(),
            });
        }
        rational::check_distribution(&nu)?;
        if let Some(k) = kappa
            .iter()
            .find(|k| k.is_negative() || **k > Rational::one())
        {
            return Err(Error::InvalidStatistics(format!(
                "kappa {} outside [0,1]",
                rational::display(k)
            )));
        }
        Ok(Self::from_parts_unchecked(outcomes, nu, kappa))
    }

    pub(crate) fn from_parts_unchecked(
        outcomes: Vec<Primitive>,
        nu: Vec<Rational>,
        kappa: Vec<Rational>,
    ) -> Self {
        BraceStatistics {
            outcomes,
            nu,
            kappa,
        }
    }

    /// `ν` of `outcome`, zero when the outcome never occurred.
    pub fn nu_of(&self, outcome: &Primitive) -> Rational {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .map_or_else(Rational::zero, |i| self.nu[i].clone())
    }

    /// `ν` laid out along `outcomes`, with zeros for absent symbols.
    pub fn nu_along(&self, outcomes: &[Primitive]) -> Vec<Rational> {
        outcomes.iter().map(|o| self.nu_of(o)).collect()
    }
}

/// Outcome-labelled relative frequencies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub outcomes: Vec<Primitive>,
    #[serde(with = "serde_rational_vec")]
    pub nu: Vec<Rational>,
}

/// Finite-scale phase `κ` together with the pooled size `𝔖`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaSigmaPair {
    #[serde(with = "serde_rational")]
    pub kappa: Rational,
    #[serde(with = "serde_biguint")]
    pub sigma: BigUint,
}

impl KappaSigmaPair {
    /// Requires `σ > 0`, `κ ∈ [0,1]` and `κ·σ` integral.
    pub fn new(kappa: Rational, sigma: BigUint) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::InvalidKappaSigma("sigma must be positive".into()));
        }
        if kappa.is_negative() || kappa > Rational::one() {
            return Err(Error::InvalidKappaSigma(format!(
                "kappa {} outside [0,1]",
                rational::display(&kappa)
            )));
        }
        if !(&kappa * rational::from_biguint(&sigma)).is_integer() {
            return Err(Error::InvalidKappaSigma(format!(
                "kappa*sigma = {}*{} is not an integer",
                rational::display(&kappa),
                sigma
            )));
        }
        Ok(KappaSigmaPair { kappa, sigma })
    }

    /// From integer cardinals `(∞₁, ∞₂)`: `κ = ∞₁/(∞₁+∞₂)`, `𝔖 = ∞₁+∞₂`.
    pub fn from_cardinals(psi: &BigUint, phi: &BigUint) -> Result<Self> {
        let sigma = psi + phi;
        if sigma.is_zero() {
            return Err(Error::InvalidKappaSigma("sigma must be positive".into()));
        }
        let kappa = Rational::new(BigInt::from(psi.clone()), BigInt::from(sigma.clone()));
        Ok(KappaSigmaPair { kappa, sigma })
    }

    /// `(κ𝔖, (1−κ)𝔖)`
    pub fn cardinals(&self) -> (BigUint, BigUint) {
        let psi = (&self.kappa * rational::from_biguint(&self.sigma))
            .to_integer()
            .to_biguint()
            .expect("kappa is non-negative");
        let phi = &self.sigma - &psi;
        (psi, phi)
    }

    /// `(κ′𝔖′ + κ″𝔖″)/(𝔖′ + 𝔖″)` paired with `𝔖′ + 𝔖″`.
    pub fn compose(&self, other: &KappaSigmaPair) -> KappaSigmaPair {
        let s1 = rational::from_biguint(&self.sigma);
        let s2 = rational::from_biguint(&other.sigma);
        let kappa = (&self.kappa * &s1 + &other.kappa * &s2) / (&s1 + &s2);
        KappaSigmaPair {
            kappa,
            sigma: &self.sigma + &other.sigma,
        }
    }
}

/// `w·s1 + (1−w)·s2`, componentwise.
pub fn convex_mix(s1: &[Rational], s2: &[Rational], w: &Rational) -> Result<Vec<Rational>> {
    if s1.len() != s2.len() {
        return Err(Error::LengthMismatch {
            expected: s1.len(),
            got: s2.len(),
        });
    }
    rational::check_distribution(s1)?;
    rational::check_distribution(s2)?;
    if w.is_negative() || *w > Rational::one() {
        return Err(Error::InvalidWeight(format!(
            "w = {} outside [0,1]",
            rational::display(w)
        )));
    }
    let rest = Rational::one() - w;
    Ok(s1.iter().zip(s2).map(|(a, b)| w * a + &rest * b).collect())
}
