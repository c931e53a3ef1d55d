//! Serde adapter: index lists are 0-based in memory and 1-based on the wire,
//! matching the usual mathematical numbering of rows and columns.

use serde::de::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(idx: &[usize], s: S) -> Result<S::Ok, S::Error> {
    idx.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
    let raw = Vec::<usize>::deserialize(d)?;
    raw.into_iter()
        .map(|i| {
            i.checked_sub(1)
                .ok_or_else(|| D::Error::custom("indices are 1-based"))
        })
        .collect()
}

/// Same convention for lists of `(row, column)` pairs.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(pairs: &[(usize, usize)], s: S) -> Result<S::Ok, S::Error> {
        pairs
            .iter()
            .map(|&(r, c)| (r + 1, c + 1))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, usize)>, D::Error> {
        let raw = Vec::<(usize, usize)>::deserialize(d)?;
        raw.into_iter()
            .map(|(r, c)| match (r.checked_sub(1), c.checked_sub(1)) {
                (Some(r), Some(c)) => Ok((r, c)),
                _ => Err(D::Error::custom("indices are 1-based")),
            })
            .collect()
    }
}
