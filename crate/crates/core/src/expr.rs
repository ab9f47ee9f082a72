//! Group expressions: the symbolic description a [`ConcreteGroup`] is
//! materialized from.
//!
//! [`ConcreteGroup`]: crate::group::ConcreteGroup

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;

/// A finite group built from cyclic groups via direct product, direct power,
/// and wreath product.
///
/// The JSON encoding (with the `serde` feature) is
/// `{"cyclic": n}`, `{"direct": [e, …]}`, `{"power": {"base": e, "k": k}}`,
/// `{"wreath": {"bottom": e, "top": e}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GroupExpr {
    /// Cyclic group of order `n ≥ 1`.
    #[cfg_attr(feature = "serde", serde(rename = "cyclic"))]
    Cyclic(u64),
    /// Direct product of a nonempty list of groups.
    #[cfg_attr(feature = "serde", serde(rename = "direct"))]
    DirectProduct(Vec<GroupExpr>),
    /// Direct product of `k ≥ 0` copies of `base` (`k = 0` is the trivial group).
    #[cfg_attr(feature = "serde", serde(rename = "power"))]
    DirectPower { base: Box<GroupExpr>, k: u64 },
    /// Wreath product: the base group `bottom^top` extended by `top`
    /// permuting the coordinates.
    #[cfg_attr(feature = "serde", serde(rename = "wreath"))]
    Wreath {
        bottom: Box<GroupExpr>,
        top: Box<GroupExpr>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("invalid expression: {0}")]
    Invalid(&'static str),
    #[error("expression order overflows the 64-bit range")]
    Overflow,
}

impl GroupExpr {
    pub fn cyclic(n: u64) -> Self {
        GroupExpr::Cyclic(n)
    }

    pub fn direct(parts: impl IntoIterator<Item = GroupExpr>) -> Self {
        GroupExpr::DirectProduct(parts.into_iter().collect())
    }

    pub fn power(base: GroupExpr, k: u64) -> Self {
        GroupExpr::DirectPower {
            base: Box::new(base),
            k,
        }
    }

    pub fn wreath(bottom: GroupExpr, top: GroupExpr) -> Self {
        GroupExpr::Wreath {
            bottom: Box::new(bottom),
            top: Box::new(top),
        }
    }

    /// Predicted group order, computed without materialization.
    pub fn order(&self) -> Result<u64, ExprError> {
        match self {
            GroupExpr::Cyclic(0) => Err(ExprError::Invalid("cyclic order must be at least 1")),
            GroupExpr::Cyclic(n) => Ok(*n),
            GroupExpr::DirectProduct(parts) => {
                if parts.is_empty() {
                    return Err(ExprError::Invalid(
                        "direct product needs at least one factor",
                    ));
                }
                parts.iter().try_fold(1u64, |acc, part| {
                    acc.checked_mul(part.order()?).ok_or(ExprError::Overflow)
                })
            }
            GroupExpr::DirectPower { base, k } => {
                arith::checked_pow(base.order()?, *k).ok_or(ExprError::Overflow)
            }
            GroupExpr::Wreath { bottom, top } => {
                let b = bottom.order()?;
                let t = top.order()?;
                arith::checked_pow(b, t)
                    .and_then(|base| base.checked_mul(t))
                    .ok_or(ExprError::Overflow)
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::DirectProduct(parts) => {
                write!(f, "(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{part}")?;
                }
                write!(f, ")")
            }
            GroupExpr::DirectPower { base, k } => write!(f, "{base}^{k}"),
            GroupExpr::Wreath { bottom, top } => write!(f, "({bottom} wr {top})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_spec_examples() {
        assert_eq!(GroupExpr::cyclic(6).order(), Ok(6));
        let d4 = GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(2));
        assert_eq!(d4.order(), Ok(8));
        let w = GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(4));
        assert_eq!(w.order(), Ok(64));
    }

    #[test]
    fn degenerate_and_invalid_expressions() {
        assert_eq!(
            GroupExpr::cyclic(0).order(),
            Err(ExprError::Invalid("cyclic order must be at least 1"))
        );
        assert!(matches!(
            GroupExpr::direct([]).order(),
            Err(ExprError::Invalid(_))
        ));
        assert_eq!(GroupExpr::power(GroupExpr::cyclic(5), 0).order(), Ok(1));
        assert_eq!(
            GroupExpr::power(GroupExpr::cyclic(1), u64::MAX).order(),
            Ok(1)
        );
    }

    #[test]
    fn overflow_is_reported() {
        let huge = GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(64));
        assert_eq!(huge.order(), Err(ExprError::Overflow));
        let huge = GroupExpr::power(GroupExpr::cyclic(3), 41);
        assert_eq!(huge.order(), Err(ExprError::Overflow));
    }

    #[test]
    fn display_is_compact() {
        let w = GroupExpr::wreath(
            GroupExpr::direct([GroupExpr::cyclic(2), GroupExpr::cyclic(3)]),
            GroupExpr::power(GroupExpr::cyclic(2), 3),
        );
        assert_eq!(w.to_string(), "((C2 x C3) wr C2^3)");
    }

    #[cfg(feature = "serde")]
    #[test]
    fn json_encoding_matches_the_wire_format() {
        let w = GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(4));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"wreath":{"bottom":{"cyclic":2},"top":{"cyclic":4}}}"#
        );
        let back: GroupExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);

        let p: GroupExpr =
            serde_json::from_str(r#"{"power":{"base":{"cyclic":2},"k":3}}"#).unwrap();
        assert_eq!(p, GroupExpr::power(GroupExpr::cyclic(2), 3));
        let d: GroupExpr =
            serde_json::from_str(r#"{"direct":[{"cyclic":2},{"cyclic":3}]}"#).unwrap();
        assert_eq!(d.order(), Ok(6));
    }
}
