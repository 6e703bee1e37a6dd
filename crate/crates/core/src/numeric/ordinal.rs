use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ordinal we are willing to build; the tree has `2^n` nodes.
pub const MAX_ORDINAL: usize = 12;

/// Hereditarily finite set built from the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalSet(BTreeSet<OrdinalSet>);

impl OrdinalSet {
    pub fn empty() -> Self {
        OrdinalSet(BTreeSet::new())
    }

    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: &OrdinalSet) -> bool {
        self.0.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = &OrdinalSet> {
        self.0.iter()
    }

    pub fn union(&self, other: &OrdinalSet) -> OrdinalSet {
        OrdinalSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn singleton(x: OrdinalSet) -> OrdinalSet {
        OrdinalSet(BTreeSet::from([x]))
    }

    /// `n ∪ {n}`
    pub fn successor(&self) -> OrdinalSet {
        self.union(&OrdinalSet::singleton(self.clone()))
    }

    /// True when the set is transitive and every element is transitive,
    /// i.e. it is a (finite) von Neumann ordinal.
    pub fn is_ordinal(&self) -> bool {
        self.is_transitive() && self.0.iter().all(OrdinalSet::is_ordinal)
    }

    fn is_transitive(&self) -> bool {
        self.0
            .iter()
            .all(|x| x.0.iter().all(|y| self.0.contains(y)))
    }
}

impl fmt::Display for OrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for OrdinalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

/// `0 = ∅`, `n+1 = n ∪ {n}`.
pub fn ordinal_encode(n: usize) -> Result<OrdinalSet> {
    if n > MAX_ORDINAL {
        return Err(Error::OrdinalTooLarge(n));
    }
    Ok((0..n).fold(OrdinalSet::empty(), |acc, _| acc.successor()))
}
