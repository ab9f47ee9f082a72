//! Finite-group engine and variety criteria for wreath products.
//!
//! The crate answers two kinds of questions:
//!
//! * **Concrete**: materialize a small finite group from an expression built
//!   out of cyclic groups, direct products/powers, and wreath products, and
//!   compute its structural invariants — order, exponent, lower central
//!   series, nilpotency class, Sylow and Hall subgroups ([`group`],
//!   [`subgroup`]). For wreath products of `p`-groups the nilpotency class is
//!   also available through a closed formula driven by the `K_p`-series of
//!   the top group ([`shield`]), and a brute-force oracle cross-checks the
//!   two routes ([`oracle`]).
//!
//! * **Symbolic**: decide, for a nilpotent group of finite exponent described
//!   by its class and exponent and an abelian group described by its
//!   decomposition into cyclic summands ([`shape`]), whether the wreath
//!   product of the two generates the full product of the varieties they
//!   generate ([`criteria`]). Verdicts name the exact cyclic direct powers the
//!   abelian group must contain and which of them are missing.
//!
//! The crate is `no_std` + `alloc`; everything is exact integer arithmetic.
//! All values are immutable after construction and all operations are pure,
//! so sharing across threads is safe.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod arith;
pub mod criteria;
pub mod expr;
pub mod group;
pub mod oracle;
pub mod shape;
pub mod shield;
pub mod subgroup;
pub mod table;
pub mod word;

pub use criteria::{Branch, CriterionError, Demand, NilpotentProfile, Verdict};
pub use expr::{ExprError, GroupExpr};
pub use group::{ConcreteGroup, Element, GroupError, GroupOps, DEFAULT_CAP};
pub use oracle::{ComparisonReport, ComparisonVerdict, OracleError, ShieldVsBrute, DEFAULT_BUDGET};
pub use shape::{AbelianShape, Exponent, Multiplicity, PrimePower, ShapeError, Summand};
pub use shield::{GammaProfile, KpSeries, ShieldError, ShieldParams};
pub use subgroup::{Subgroup, SubgroupView};
pub use table::TableGroup;
pub use word::{Letter, ReducedWord, Word, WordParseError};
