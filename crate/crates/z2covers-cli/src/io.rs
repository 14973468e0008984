//! Cover-spec files and exact rational text.
//!
//! A cover spec is a JSON object
//! `{"weights":[a0,a1,a2,a3],"s":s,"d":{"<bitstring>":degree,...}}` whose
//! keys are length-`s` bit strings written first coordinate first; omitted
//! keys mean degree 0.  Rationals are always written as `"p/q"` strings (or
//! plain integers when the denominator is 1), never as floats.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use z2covers::cover::{BranchData, CoverSpec};
use z2covers::gf2::{bitstring, parse_bitstring, GroupFunction, Rank};
use z2covers::Rational;

use crate::error::{malformed, CliError};

/// The on-disk shape of a cover spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpecFile {
    /// Base weights in any order.
    pub weights: [u64; 4],
    /// The rank `s`.
    pub s: u32,
    /// Branch degrees keyed by bit string.
    #[serde(default)]
    pub d: BTreeMap<String, i64>,
}

/// A parsed cover spec: raw weights (not yet checked for well-formedness)
/// and validated branch data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCover {
    /// The weights as written.
    pub raw_weights: [u64; 4],
    /// The branch data.
    pub branch: BranchData,
}

impl CoverSpecFile {
    /// Checks ranks, keys and degrees.
    ///
    /// Weights are checked only for positivity here; well-formedness is a
    /// validation finding, not a parse error.
    pub fn parse(&self) -> Result<ParsedCover, CliError> {
        let rank = Rank::new(self.s).map_err(malformed)?;
        if self.weights.contains(&0) {
            return Err(malformed("weights must be positive"));
        }
        let mut values = vec![0i64; rank.order()];
        for (key, &degree) in &self.d {
            let g = parse_bitstring(rank, key)
                .map_err(|e| malformed(format!("key {key:?}: {e}")))?;
            values[g as usize] = degree;
        }
        let d = GroupFunction::new(rank, values).map_err(malformed)?;
        let branch = BranchData::new(d).map_err(malformed)?;
        Ok(ParsedCover {
            raw_weights: self.weights,
            branch,
        })
    }

    /// The file form of a cover, listing only positive degrees.
    pub fn from_cover(c: &CoverSpec) -> Self {
        let rank = c.rank();
        let d = c
            .branch()
            .degrees()
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(g, &v)| (bitstring(rank, g as u32), v))
            .collect();
        CoverSpecFile {
            weights: c.weights().get(),
            s: rank.get(),
            d,
        }
    }
}

/// Parses cover-spec JSON text.
pub fn parse_coverspec(text: &str) -> Result<ParsedCover, CliError> {
    let file: CoverSpecFile = serde_json::from_str(text)?;
    file.parse()
}

/// Reads and parses a cover-spec file.
pub fn read_coverspec(path: &Path) -> Result<ParsedCover, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_coverspec(&text)
}

/// The JSON value of a cover spec.
pub fn coverspec_json(c: &CoverSpec) -> Value {
    serde_json::to_value(CoverSpecFile::from_cover(c)).expect("cover specs serialize")
}

/// `"p/q"`, or `"n"` for integers.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// A rational as a JSON string.
pub fn rational_json(r: &Rational) -> Value {
    json!(rational_string(r))
}

/// An optional rational as a JSON string or `null`.
pub fn optional_rational_json(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rational_json)
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| malformed(format!("not a rational number: {text:?}")))
}

/// A decimal approximation for human consumption, six places.
pub fn decimal(r: &Rational) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.6}"),
        None => String::from("nan"),
    }
}

/// Bit strings of a list of group elements or characters.
pub fn bitstrings(rank: Rank, items: &[u32]) -> Vec<String> {
    items.iter().map(|&g| bitstring(rank, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use z2covers::Weights;

    #[test]
    fn coverspec_round_trip() {
        let text = r#"{"weights":[1,1,3,3],"s":2,"d":{"10":6,"01":6,"11":6}}"#;
        let parsed = parse_coverspec(text).unwrap();
        assert_eq!(parsed.raw_weights, [1, 1, 3, 3]);
        let c = CoverSpec::new(Weights::new(parsed.raw_weights).unwrap(), parsed.branch).unwrap();
        let again: CoverSpecFile = serde_json::from_value(coverspec_json(&c)).unwrap();
        let reparsed = again.parse().unwrap();
        assert_eq!(reparsed.branch, *c.branch());
    }

    #[test]
    fn omitted_keys_are_zero() {
        let parsed = parse_coverspec(r#"{"weights":[1,1,2,2],"s":2,"d":{"10":8,"01":8}}"#).unwrap();
        assert_eq!(parsed.branch.degrees().nonzero_values(), &[8, 8, 0]);
    }

    #[test]
    fn malformed_specs_are_rejected() {
        for text in [
            r#"{"weights":[1,1,1,1],"s":2,"d":{"1":3}}"#,
            r#"{"weights":[1,1,1,1],"s":2,"d":{"1x":3}}"#,
            r#"{"weights":[1,1,1,1],"s":2,"d":{"10":-3}}"#,
            r#"{"weights":[1,1,1,1],"s":2,"d":{"00":3,"10":2}}"#,
            r#"{"weights":[1,1,1,1],"s":0,"d":{}}"#,
            r#"{"weights":[1,1,1,1],"s":17,"d":{}}"#,
            r#"{"weights":[0,1,1,1],"s":1,"d":{"1":2}}"#,
            r#"{"weights":[1,1,1,1],"s":2}"#,
            r#"{"weights":[1,1,1],"s":2,"d":{"10":2}}"#,
            r#"{"weights":[1,1,1,1],"s":2,"d":{"10":2},"extra":1}"#,
            "not json",
        ] {
            assert!(parse_coverspec(text).is_err(), "{text}");
        }
    }

    #[test]
    fn rationals_are_exact_strings() {
        let half = parse_rational("1/2").unwrap();
        assert_eq!(rational_string(&half), "1/2");
        assert_eq!(rational_string(&parse_rational("-92").unwrap()), "-92");
        assert_eq!(rational_string(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("0.5").is_err());
        assert_eq!(decimal(&half), "0.500000");
    }
}
