//! Lattice tables as JSON arrays of exact-rational strings.

use sov_core::{parse_scalar, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {index}: {msg}")]
    Entry { index: usize, msg: String },
}

pub fn to_json(values: &[Scalar]) -> Result<String, TableError> {
    let mut out = Vec::with_capacity(values.len());
    for (index, v) in values.iter().enumerate() {
        if !v.is_constant() {
            return Err(TableError::Entry { index, msg: format!("{v} is not an exact constant") });
        }
        out.push(v.to_string());
    }
    Ok(serde_json::to_string(&out)?)
}

pub fn from_json(text: &str) -> Result<Vec<Scalar>, TableError> {
    let raw: Vec<String> = serde_json::from_str(text)?;
    raw.iter()
        .enumerate()
        .map(|(index, s)| {
            let v = parse_scalar(s).map_err(|e| TableError::Entry { index, msg: e.to_string() })?;
            if !v.is_constant() {
                return Err(TableError::Entry { index, msg: format!("{s} is not an exact constant") });
            }
            Ok(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sov_core::sc;

    #[test]
    fn round_trip() {
        let v = vec![sc("1"), sc("-3/7"), sc("2*i + 1/2")];
        let text = to_json(&v).unwrap();
        assert_eq!(from_json(&text).unwrap(), v);
    }

    #[test]
    fn rejects_symbols() {
        assert!(to_json(&[sc("q")]).is_err());
        assert!(from_json("[\"q + 1\"]").is_err());
        assert!(from_json("[1, 2]").is_err());
    }
}
