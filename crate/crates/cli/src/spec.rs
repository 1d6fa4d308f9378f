//! Input files: `{"kind": "trinomial" | "type1", "blocks": [[..], ..],
//! "m": 0, "theta": [1, "generic", "3/2", ..]}`.

use serde::{Deserialize, Serialize};
use tricl_core::type1::Type1Variety;
use tricl_core::{Coefficient, Error, TrinomialVariety};

use crate::error::CliError;

pub const DEFAULT_MAX_BLOCK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietySpec {
    Trinomial(TrinomialVariety),
    Type1(Type1Variety),
}

impl VarietySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            VarietySpec::Trinomial(_) => "trinomial",
            VarietySpec::Type1(_) => "type1",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    blocks: Vec<Vec<i64>>,
    #[serde(default)]
    m: usize,
    #[serde(default)]
    theta: Option<Vec<Coefficient>>,
}

/// Cap on the number of blocks and on every block size, from
/// `TRICL_MAX_BLOCK`.
pub fn max_block_from_env() -> Result<usize, CliError> {
    match std::env::var("TRICL_MAX_BLOCK") {
        Err(_) => Ok(DEFAULT_MAX_BLOCK),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::BadLimit(s)),
        },
    }
}

pub fn parse_spec(text: &str) -> Result<VarietySpec, CliError> {
    parse_spec_with_limit(text, max_block_from_env()?)
}

pub fn parse_spec_with_limit(text: &str, max_block: usize) -> Result<VarietySpec, CliError> {
    let raw: RawSpec = serde_json::from_str(text)?;
    if raw.blocks.len() > max_block {
        return Err(CliError::TooLarge {
            what: "number of blocks".into(),
            value: raw.blocks.len(),
            limit: max_block,
        });
    }
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (i, block) in raw.blocks.iter().enumerate() {
        if block.len() > max_block {
            return Err(CliError::TooLarge {
                what: format!("size of block {i}"),
                value: block.len(),
                limit: max_block,
            });
        }
        let mut exps = Vec::with_capacity(block.len());
        for (j, &x) in block.iter().enumerate() {
            if x <= 0 {
                return Err(Error::NonPositiveExponent { block: i, var: j, value: x }.into());
            }
            exps.push(x as u64);
        }
        blocks.push(exps);
    }
    let theta = raw.theta;
    match raw.kind.as_str() {
        "trinomial" => Ok(VarietySpec::Trinomial(TrinomialVariety::new(blocks, raw.m, theta)?)),
        "type1" => Ok(VarietySpec::Type1(Type1Variety::new(blocks, raw.m, theta)?)),
        other => Err(CliError::UnknownKind(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let q = parse_spec_with_limit(r#"{"kind":"trinomial","blocks":[[2],[2],[2]],"m":0}"#, 16).unwrap();
        assert_eq!(q, VarietySpec::Trinomial(TrinomialVariety::from_blocks(vec![vec![2]; 3], 0).unwrap()));
        let t = parse_spec_with_limit(r#"{"kind":"type1","blocks":[[2],[2]]}"#, 16).unwrap();
        let VarietySpec::Type1(t) = t else { panic!("expected type 1") };
        assert_eq!(t.theta(), &["1".parse::<Coefficient>().unwrap()]);
    }

    #[test]
    fn rejects_bad_input() {
        let e = parse_spec_with_limit(r#"{"kind":"trinomial","blocks":[[0]]}"#, 16).unwrap_err();
        assert!(matches!(e, CliError::Core(Error::NonPositiveExponent { block: 0, var: 0, value: 0 })));
        let e = parse_spec_with_limit(r#"{"kind":"trinomial","blocks":[[2],[-3]]}"#, 16).unwrap_err();
        assert!(matches!(e, CliError::Core(Error::NonPositiveExponent { block: 1, var: 0, value: -3 })));
        let e = parse_spec_with_limit("{\"kind\":\"trinomial\",\n \"blocks\": [[2],", 16).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }), "{e}");
        let e = parse_spec_with_limit(r#"{"kind":"quartic","blocks":[[2]]}"#, 16).unwrap_err();
        assert!(matches!(e, CliError::UnknownKind(_)));
        let e = parse_spec_with_limit(r#"{"kind":"trinomial","blocks":[[2],[2],[2]],"extra":1}"#, 16).unwrap_err();
        assert!(matches!(e, CliError::Parse { .. }));
        let e = parse_spec_with_limit(r#"{"kind":"trinomial","blocks":[[2,2,2],[2],[2]]}"#, 2).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(e, CliError::TooLarge { value: 3, limit: 2, .. }));
    }

    #[test]
    fn theta_values() {
        let s = r#"{"kind":"trinomial","blocks":[[2],[2],[2],[3],[5]],"theta":["-1/2", 3]}"#;
        let VarietySpec::Trinomial(v) = parse_spec_with_limit(s, 16).unwrap() else { panic!() };
        assert_eq!(v.theta().unwrap()[0].to_string(), "-1/2");
        assert_eq!(v.theta().unwrap()[1].to_string(), "3");
        let bad = r#"{"kind":"trinomial","blocks":[[2],[2],[2],[3]],"theta":["x"]}"#;
        assert!(matches!(parse_spec_with_limit(bad, 16), Err(CliError::Parse { .. })));
    }
}
