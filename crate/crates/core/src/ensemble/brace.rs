use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::stats::BraceStatistics;
use crate::error::{Error, Result};
use crate::rational::{self, serde_biguint, Rational};

/// Opaque symbol. Only equality is meaningful; there is deliberately no
/// `Ord` implementation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Primitive(Arc<str>);

impl Primitive {
    pub fn new(symbol: impl AsRef<str>) -> Self {
        Primitive(Arc::from(symbol.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Primitive {
    fn from(s: &str) -> Self {
        Primitive::new(s)
    }
}

/// One outgoing outcome with the copies of the two upper primitives that
/// feed it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryBrace {
    pub outcome: Primitive,
    #[serde(with = "serde_biguint")]
    pub count_psi: BigUint,
    #[serde(with = "serde_biguint")]
    pub count_phi: BigUint,
}

impl UnitaryBrace {
    pub fn new(
        outcome: impl Into<Primitive>,
        count_psi: impl Into<BigUint>,
        count_phi: impl Into<BigUint>,
    ) -> Self {
        UnitaryBrace {
            outcome: outcome.into(),
            count_psi: count_psi.into(),
            count_phi: count_phi.into(),
        }
    }

    pub fn total(&self) -> BigUint {
        &self.count_psi + &self.count_phi
    }

    /// `count_psi / total`; `None` for an empty entry.
    pub fn kappa(&self) -> Option<Rational> {
        let total = self.total();
        (!total.is_zero())
            .then(|| Rational::new(BigInt::from(self.count_psi.clone()), BigInt::from(total)))
    }
}

/// Per-outcome counts of the two upper primitives. Entry order is
/// insertion order; equality ignores it and treats a missing outcome as
/// `(0, 0)`.
#[derive(Clone, Debug, Default)]
pub struct EnsembleBrace {
    entries: Vec<UnitaryBrace>,
}

impl EnsembleBrace {
    pub fn new(entries: Vec<UnitaryBrace>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|o| o.outcome == e.outcome) {
                return Err(Error::DuplicateOutcome(e.outcome.to_string()));
            }
        }
        Ok(EnsembleBrace { entries })
    }

    /// The zero class: no clicks at all.
    pub fn empty() -> Self {
        EnsembleBrace::default()
    }

    pub fn entries(&self) -> &[UnitaryBrace] {
        &self.entries
    }

    pub fn entry(&self, outcome: &Primitive) -> Option<&UnitaryBrace> {
        self.entries.iter().find(|e| &e.outcome == outcome)
    }

    pub fn sigma(&self) -> BigUint {
        self.entries.iter().map(UnitaryBrace::total).sum()
    }

    pub fn is_zero_class(&self) -> bool {
        self.sigma().is_zero()
    }

    /// Componentwise addition of the counts, outcome by outcome.
    pub fn union(&self, other: &EnsembleBrace) -> EnsembleBrace {
        let mut entries = self.entries.clone();
        let index: HashMap<Primitive, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.outcome.clone(), i))
            .collect();
        for e in &other.entries {
            match index.get(&e.outcome) {
                Some(&i) => {
                    entries[i].count_psi += &e.count_psi;
                    entries[i].count_phi += &e.count_phi;
                }
                None => entries.push(e.clone()),
            }
        }
        EnsembleBrace { entries }
    }

    /// Multiplies every count by `k`. Fails unless every product is a
    /// non-negative integer.
    pub fn replicate(&self, k: &Rational) -> Result<EnsembleBrace> {
        if !k.is_positive() {
            return Err(Error::NonPositiveFactor(rational::display(k)));
        }
        let scale = |count: &BigUint| -> Result<BigUint> {
            let product = rational::from_biguint(count) * k;
            if !product.is_integer() {
                return Err(Error::NotRealizable {
                    factor: rational::display(k),
                    count: count.to_string(),
                });
            }
            Ok(product
                .to_integer()
                .to_biguint()
                .expect("product of non-negative values"))
        };
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(UnitaryBrace {
                    outcome: e.outcome.clone(),
                    count_psi: scale(&e.count_psi)?,
                    count_phi: scale(&e.count_phi)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnsembleBrace { entries })
    }

    /// `ν_s = total_s / Σ` and `κ_s = count_psi_s / total_s`, exactly.
    pub fn extract_stats(&self) -> Result<BraceStatistics> {
        let sigma = self.sigma();
        if sigma.is_zero() {
            return Err(Error::ZeroClassBrace);
        }
        let sigma = BigInt::from(sigma);
        let mut outcomes = Vec::with_capacity(self.entries.len());
        let mut nu = Vec::with_capacity(self.entries.len());
        let mut kappa = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let k = e
                .kappa()
                .ok_or_else(|| Error::EmptyOutcome(e.outcome.to_string()))?;
            outcomes.push(e.outcome.clone());
            nu.push(Rational::new(BigInt::from(e.total()), sigma.clone()));
            kappa.push(k);
        }
        Ok(BraceStatistics::from_parts_unchecked(outcomes, nu, kappa))
    }
}

impl PartialEq for EnsembleBrace {
    fn eq(&self, other: &Self) -> bool {
        let zero = BigUint::zero();
        let counts = |b: &EnsembleBrace, p: &Primitive| -> (BigUint, BigUint) {
            b.entry(p)
                .map(|e| (e.count_psi.clone(), e.count_phi.clone()))
                .unwrap_or((zero.clone(), zero.clone()))
        };
        self.entries
            .iter()
            .chain(&other.entries)
            .all(|e| counts(self, &e.outcome) == counts(other, &e.outcome))
    }
}

impl Eq for EnsembleBrace {}

impl Serialize for EnsembleBrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            entries: &'a [UnitaryBrace],
            #[serde(with = "serde_biguint")]
            sigma: BigUint,
        }
        Repr {
            entries: &self.entries,
            sigma: self.sigma(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnsembleBrace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            entries: Vec<UnitaryBrace>,
            #[serde(default, with = "opt_biguint")]
            sigma: Option<BigUint>,
        }
        let repr = Repr::deserialize(d)?;
        let brace = EnsembleBrace::new(repr.entries).map_err(D::Error::custom)?;
        if let Some(sigma) = repr.sigma {
            if sigma != brace.sigma() {
                return Err(D::Error::custom(format!(
                    "sigma {sigma} does not equal the sum of entry totals {}",
                    brace.sigma()
                )));
            }
        }
        Ok(brace)
    }
}

mod opt_biguint {
    use super::*;

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigUint>, D::Error> {
        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "serde_biguint")] BigUint);
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
