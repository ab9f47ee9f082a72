//! Parsing of command-line inputs: group expressions and shapes (inline
//! JSON, the compact shape syntax, or `@file` indirection), profiles, and
//! small key=value argument bundles.

use std::fs;

use varwreath_core::{AbelianShape, Exponent, GroupExpr, Multiplicity, NilpotentProfile, Summand};

use crate::commands::CliError;

/// Resolve `@path` arguments to file contents; anything else passes through.
pub fn resolve_at_file(raw: &str) -> Result<String, CliError> {
    if let Some(path) = raw.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))
    } else {
        Ok(raw.to_string())
    }
}

/// Parse a group expression from JSON (after `@file` resolution).
pub fn parse_group_expr(field: &str, raw: &str) -> Result<GroupExpr, CliError> {
    let text = resolve_at_file(raw)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("field {field}: invalid group expression: {e}")))
}

/// Parse an abelian shape: JSON when the input starts with `{`, otherwise
/// the compact syntax `C3^inf x C2^7` (`unbounded` as a term sets the
/// unbounded-exponent flag).
pub fn parse_shape(field: &str, raw: &str) -> Result<AbelianShape, CliError> {
    let text = resolve_at_file(raw)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed)
            .map_err(|e| CliError::input(format!("field {field}: invalid shape JSON: {e}")))
    } else {
        parse_compact_shape(trimmed).map_err(|e| CliError::input(format!("field {field}: {e}")))
    }
}

/// `C3^inf x C2^7 x C12 x unbounded` — cyclic orders may be composite and
/// are split into prime-power summands.
pub fn parse_compact_shape(text: &str) -> Result<AbelianShape, String> {
    let mut summands: Vec<Summand> = Vec::new();
    let mut unbounded = false;
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err("empty shape".into());
    }
    if tokens.len().is_multiple_of(2) {
        return Err("shape ends with a dangling 'x'".into());
    }
    for (i, token) in tokens.iter().enumerate() {
        if i % 2 == 1 {
            if *token != "x" {
                return Err(format!("expected 'x' between terms, got {token:?}"));
            }
            continue;
        }
        if token.eq_ignore_ascii_case("unbounded") {
            unbounded = true;
            continue;
        }
        let body = token
            .strip_prefix('C')
            .or_else(|| token.strip_prefix('c'))
            .ok_or_else(|| format!("term {token:?} must look like C6 or C4^3 or C2^inf"))?;
        let (order_text, mult) = match body.split_once('^') {
            None => (body, Multiplicity::Finite(1)),
            Some((o, "inf")) => (o, Multiplicity::Infinite),
            Some((o, k)) => (
                o,
                Multiplicity::Finite(
                    k.parse()
                        .map_err(|_| format!("bad multiplicity {k:?} in {token:?}"))?,
                ),
            ),
        };
        let order: u64 = order_text
            .parse()
            .map_err(|_| format!("bad cyclic order {order_text:?} in {token:?}"))?;
        if order == 0 {
            return Err(format!("cyclic order must be at least 1 in {token:?}"));
        }
        for (prime, exponent) in varwreath_core::arith::factorize(order) {
            summands.push(Summand {
                prime,
                exponent,
                multiplicity: mult,
            });
        }
    }
    AbelianShape::new(summands, unbounded).map_err(|e| e.to_string())
}

fn parse_pairs<'a>(
    field: &str,
    raw: &'a str,
    keys: &[&str],
) -> Result<Vec<(&'a str, &'a str)>, CliError> {
    raw.split(',')
        .map(|part| {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                CliError::input(format!("field {field}: expected key=value, got {part:?}"))
            })?;
            let k = k.trim();
            if !keys.contains(&k) {
                return Err(CliError::input(format!(
                    "field {field}: unknown key {k:?} (expected one of {keys:?})"
                )));
            }
            Ok((k, v.trim()))
        })
        .collect()
}

fn lookup<'a>(field: &str, pairs: &[(&'a str, &'a str)], key: &str) -> Result<&'a str, CliError> {
    pairs
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| CliError::input(format!("field {field}: missing {key}=")))
}

/// `c=2,m=4`
pub fn parse_profile(field: &str, raw: &str) -> Result<NilpotentProfile, CliError> {
    let pairs = parse_pairs(field, raw, &["c", "m"])?;
    let c: u32 = lookup(field, &pairs, "c")?
        .parse()
        .map_err(|_| CliError::input(format!("field {field}: c must be a nonnegative integer")))?;
    let m: u64 = lookup(field, &pairs, "m")?
        .parse()
        .map_err(|_| CliError::input(format!("field {field}: m must be a positive integer")))?;
    NilpotentProfile::new(c, m).map_err(|e| CliError::input(format!("field {field}: {e}")))
}

/// `p=2,u=1`
pub fn parse_pgroup(field: &str, raw: &str) -> Result<(u64, u32), CliError> {
    let pairs = parse_pairs(field, raw, &["p", "u"])?;
    let p: u64 = lookup(field, &pairs, "p")?
        .parse()
        .map_err(|_| CliError::input(format!("field {field}: p must be a positive integer")))?;
    let u: u32 = lookup(field, &pairs, "u")?
        .parse()
        .map_err(|_| CliError::input(format!("field {field}: u must be a positive integer")))?;
    Ok((p, u))
}

/// A positive integer or `inf`.
pub fn parse_exponent(field: &str, raw: &str) -> Result<Exponent, CliError> {
    if raw.trim() == "inf" {
        return Ok(Exponent::Infinite);
    }
    match raw.trim().parse::<u64>() {
        Ok(n) if n >= 1 => Ok(Exponent::Finite(n)),
        _ => Err(CliError::input(format!(
            "field {field}: expected a positive integer or \"inf\", got {raw:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_shape_round_trip() {
        let shape = parse_compact_shape("C3^inf x C2^7").unwrap();
        assert_eq!(shape.to_string(), "C2^7 x C3^inf");
        let json = serde_json::to_string(&shape).unwrap();
        let via_json = parse_shape("shape", &json).unwrap();
        assert_eq!(via_json, shape);
    }

    #[test]
    fn compact_shape_splits_composite_orders() {
        let c6 = parse_compact_shape("C6").unwrap();
        assert_eq!(c6, AbelianShape::normalize(&[6]).unwrap());
        let c12sq = parse_compact_shape("C12^2").unwrap();
        assert_eq!(c12sq, AbelianShape::normalize(&[12, 12]).unwrap());
    }

    #[test]
    fn compact_shape_unbounded_marker() {
        let shape = parse_compact_shape("unbounded").unwrap();
        assert!(shape.is_unbounded());
        let shape = parse_compact_shape("C2 x unbounded").unwrap();
        assert!(shape.is_unbounded());
        assert_eq!(shape.summands().len(), 1);
    }

    #[test]
    fn compact_shape_errors() {
        assert!(parse_compact_shape("").is_err());
        assert!(parse_compact_shape("D4").is_err());
        assert!(parse_compact_shape("C2 C3").is_err());
        assert!(parse_compact_shape("C2 x").is_err());
        assert!(parse_compact_shape("C0").is_err());
        assert!(parse_compact_shape("C2^").is_err());
    }

    #[test]
    fn profile_and_pgroup_parsing() {
        let p = parse_profile("profile", "c=2,m=4").unwrap();
        assert_eq!((p.class(), p.exponent()), (2, 4));
        let p = parse_profile("profile", "m=9,c=1").unwrap();
        assert_eq!((p.class(), p.exponent()), (1, 9));
        assert!(parse_profile("profile", "c=2").is_err());
        assert!(parse_profile("profile", "c=0,m=4").is_err());
        assert_eq!(parse_pgroup("pgroup", "p=3,u=2").unwrap(), (3, 2));
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(parse_exponent("m", "6").unwrap(), Exponent::Finite(6));
        assert_eq!(parse_exponent("m", "inf").unwrap(), Exponent::Infinite);
        assert!(parse_exponent("m", "0").is_err());
        assert!(parse_exponent("m", "-3").is_err());
    }
}
