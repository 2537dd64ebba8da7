//! Per-vertex integer vectors. Entries are stored in vertex declaration order.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

fn join(entries: &[i64]) -> String {
    entries
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a comma-separated integer list such as `1,0,-1`.
pub fn parse_list(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("malformed integer `{}`", s.trim())))
        })
        .collect()
}

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<i64>);

        impl $name {
            pub fn zero(len: usize) -> Self {
                Self(vec![0; len])
            }

            pub fn into_vec(self) -> Vec<i64> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }
        }

        impl Deref for $name {
            type Target = [i64];

            fn deref(&self) -> &[i64] {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&join(&self.0))
            }
        }
    };
}

int_vector!(
    /// Nonnegative per-vertex integers: the shape of a representation.
    DimVector
);
int_vector!(
    /// Arbitrary per-vertex integers (an element of the lattice spanned by
    /// the vertex basis vectors).
    LatticeVector
);
int_vector!(
    /// A weight: an element of the dual lattice, paired with dimension
    /// vectors by the dot product.
    Weight
);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::NegativeDimension(join(&entries)));
        }
        Ok(Self(entries))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_list(text)?)
    }

    pub(crate) fn new_unchecked(entries: &[i64]) -> Self {
        debug_assert!(entries.iter().all(|&x| x >= 0));
        Self(entries.to_vec())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &[i64]) -> bool {
        self.len() == other.len() && self.iter().zip(other).all(|(a, b)| a <= b)
    }
}

impl LatticeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    /// Converts to a dimension vector when every entry is nonnegative.
    pub fn to_dim(&self) -> Option<DimVector> {
        DimVector::new(self.0.clone()).ok()
    }
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self(parse_list(text)?))
    }

    /// The natural pairing with a lattice vector.
    pub fn pair(&self, xi: &[i64]) -> i64 {
        self.iter().zip(xi).map(|(s, x)| s * x).sum()
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self(self.iter().map(|x| x * factor).collect())
    }
}

impl From<DimVector> for LatticeVector {
    fn from(d: DimVector) -> Self {
        Self(d.0)
    }
}
