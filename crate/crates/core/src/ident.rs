//! Identifiers used to name and cross-reference document entities.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// A validated entity identifier.
///
/// Identifiers start with an ASCII letter and continue with letters, digits,
/// `.`, `_` or `-` (for example `demand-prediction` or `arc42.section` ids
/// like `runtime_view`). They are the join key for every cross-reference in
/// a document, so invalid ones are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

/// Error returned when a string does not match the identifier pattern.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid identifier `{0}`: expected a letter followed by letters, digits, `.`, `_` or `-`")]
pub struct InvalidIdentifier(pub String);

impl Identifier {
    pub fn new(s: impl Into<String>) -> Result<Self, InvalidIdentifier> {
        let s = s.into();
        if Self::is_valid(&s) {
            Ok(Identifier(s))
        } else {
            Err(InvalidIdentifier(s))
        }
    }

    /// Whether `s` matches the identifier pattern.
    pub fn is_valid(s: &str) -> bool {
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Identifier {
    type Err = InvalidIdentifier;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identifier::new(s)
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Identifier {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Identifier {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for Identifier {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Identifier {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

impl Serialize for Identifier {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_typical_entity_ids() {
        for ok in [
            "a",
            "demand-prediction",
            "federated-feature-store",
            "runtime_view",
            "model.v2",
            "X9-z_0.b",
        ] {
            assert!(Identifier::is_valid(ok), "{ok} should be valid");
        }
    }

    #[test]
    fn rejects_bad_leading_or_inner_characters() {
        for bad in ["", "9lives", "-lead", "_lead", ".dot", "has space", "emoji☃", "a/b"] {
            assert!(Identifier::new(bad).is_err(), "{bad:?} should be invalid");
        }
    }

    #[test]
    fn orders_lexicographically() {
        let a: Identifier = "anomaly-detection".parse().unwrap();
        let b: Identifier = "route-optimization".parse().unwrap();
        assert!(a < b);
    }
}
