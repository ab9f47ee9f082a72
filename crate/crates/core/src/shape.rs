//! Symbolic abelian groups: a multiset of cyclic prime-power summands, each
//! with a finite or infinite multiplicity, plus a flag for groups whose
//! element orders are unbounded (or infinite).
//!
//! Shapes are kept canonical: summands sorted by `(prime, exponent)`,
//! duplicates merged, trivial summands dropped.

use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::expr::GroupExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime-power exponent must be at least 1")]
    ZeroExponent,
    #[error("invariant factors must be at least 1")]
    ZeroFactor,
    #[error("shape exponent overflows the 64-bit range")]
    Overflow,
    #[error("shape does not have finite exponent")]
    InfiniteExponent,
    #[error("shape is not a finite group (infinite multiplicities present)")]
    NotFinite,
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
}

/// A summand count: a natural number or infinity. Infinity compares above
/// every natural and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    fn saturating_add(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_add(b)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite),
            _ => Multiplicity::Infinite,
        }
    }
}

impl From<u64> for Multiplicity {
    fn from(n: u64) -> Self {
        Multiplicity::Finite(n)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(feature = "serde")]
mod mult_serde {
    use super::Multiplicity;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    impl Serialize for Multiplicity {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                Multiplicity::Finite(n) => s.serialize_u64(*n),
                Multiplicity::Infinite => s.serialize_str("inf"),
            }
        }
    }

    impl<'de> Deserialize<'de> for Multiplicity {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Raw {
                Number(u64),
                Text(alloc::string::String),
            }
            match Raw::deserialize(d)? {
                Raw::Number(n) => Ok(Multiplicity::Finite(n)),
                Raw::Text(t) if t == "inf" => Ok(Multiplicity::Infinite),
                Raw::Text(t) => Err(de::Error::custom(alloc::format!(
                    "multiplicity must be a number or \"inf\", got {t:?}"
                ))),
            }
        }
    }
}

/// A validated prime power `q^w` with `w ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimePower {
    #[cfg_attr(feature = "serde", serde(rename = "q"))]
    prime: u64,
    #[cfg_attr(feature = "serde", serde(rename = "w"))]
    exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self, ShapeError> {
        if !arith::is_prime(prime) {
            return Err(ShapeError::NotPrime(prime));
        }
        if exponent == 0 {
            return Err(ShapeError::ZeroExponent);
        }
        arith::checked_pow(prime, exponent as u64).ok_or(ShapeError::Overflow)?;
        Ok(PrimePower { prime, exponent })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The value `q^w`.
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.value())
    }
}

/// One canonical summand: `multiplicity` copies of the cyclic group of
/// order `prime^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summand {
    #[cfg_attr(feature = "serde", serde(rename = "q"))]
    pub prime: u64,
    #[cfg_attr(feature = "serde", serde(rename = "w"))]
    pub exponent: u32,
    #[cfg_attr(feature = "serde", serde(rename = "mult"))]
    pub multiplicity: Multiplicity,
}

/// Exponent of an abelian shape: finite, or infinite when element orders
/// are unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

#[cfg(feature = "serde")]
mod exp_serde {
    use super::Exponent;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    impl Serialize for Exponent {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                Exponent::Finite(n) => s.serialize_u64(*n),
                Exponent::Infinite => s.serialize_str("inf"),
            }
        }
    }

    impl<'de> Deserialize<'de> for Exponent {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Raw {
                Number(u64),
                Text(alloc::string::String),
            }
            match Raw::deserialize(d)? {
                Raw::Number(0) => Err(de::Error::custom("exponent must be at least 1")),
                Raw::Number(n) => Ok(Exponent::Finite(n)),
                Raw::Text(t) if t == "inf" => Ok(Exponent::Infinite),
                Raw::Text(t) => Err(de::Error::custom(alloc::format!(
                    "exponent must be a number or \"inf\", got {t:?}"
                ))),
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// Symbolic abelian group in primary decomposition.
///
/// JSON encoding (with the `serde` feature):
/// `{"summands": [{"q": 3, "w": 1, "mult": "inf"}, …], "unbounded": false}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(try_from = "raw::RawShape", into = "raw::RawShape")
)]
pub struct AbelianShape {
    summands: Vec<Summand>,
    unbounded: bool,
}

#[cfg(feature = "serde")]
mod raw {
    use super::*;
    use alloc::string::ToString;

    #[derive(serde::Serialize, serde::Deserialize)]
    pub struct RawShape {
        #[serde(default)]
        pub summands: Vec<Summand>,
        #[serde(default)]
        pub unbounded: bool,
    }

    impl TryFrom<RawShape> for AbelianShape {
        type Error = alloc::string::String;

        fn try_from(raw: RawShape) -> Result<Self, Self::Error> {
            AbelianShape::new(raw.summands, raw.unbounded).map_err(|e| e.to_string())
        }
    }

    impl From<AbelianShape> for RawShape {
        fn from(shape: AbelianShape) -> Self {
            RawShape {
                summands: shape.summands,
                unbounded: shape.unbounded,
            }
        }
    }
}

impl AbelianShape {
    /// Canonicalize and validate a summand list. Zero multiplicities are
    /// dropped, duplicate `(q, w)` entries merge (infinity absorbs), and the
    /// finite exponent must fit in u64 when `unbounded` is false.
    pub fn new(summands: Vec<Summand>, unbounded: bool) -> Result<Self, ShapeError> {
        let mut cleaned = Vec::with_capacity(summands.len());
        for s in summands {
            if s.multiplicity == Multiplicity::Finite(0) {
                continue;
            }
            PrimePower::new(s.prime, s.exponent)?;
            cleaned.push(s);
        }
        cleaned.sort_unstable_by_key(|s| (s.prime, s.exponent));
        let mut merged: Vec<Summand> = Vec::with_capacity(cleaned.len());
        for s in cleaned {
            match merged.last_mut() {
                Some(last) if last.prime == s.prime && last.exponent == s.exponent => {
                    last.multiplicity = last.multiplicity.saturating_add(s.multiplicity);
                }
                _ => merged.push(s),
            }
        }
        let shape = AbelianShape {
            summands: merged,
            unbounded,
        };
        if !unbounded {
            shape.finite_exponent().ok_or(ShapeError::Overflow)?;
        }
        Ok(shape)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianShape {
            summands: Vec::new(),
            unbounded: false,
        }
    }

    /// Split a list of invariant factors into prime-power summands. Factors
    /// equal to 1 are dropped.
    pub fn normalize(invariant_factors: &[u64]) -> Result<Self, ShapeError> {
        let mut summands = Vec::new();
        for &factor in invariant_factors {
            if factor == 0 {
                return Err(ShapeError::ZeroFactor);
            }
            for (p, e) in arith::factorize(factor) {
                summands.push(Summand {
                    prime: p,
                    exponent: e,
                    multiplicity: Multiplicity::Finite(1),
                });
            }
        }
        AbelianShape::new(summands, false)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_unbounded(&self) -> bool {
        self.unbounded
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty() && !self.unbounded
    }

    /// True when the shape describes a finite group: bounded exponent and no
    /// infinite multiplicities.
    pub fn is_finite(&self) -> bool {
        !self.unbounded && self.summands.iter().all(|s| !s.multiplicity.is_infinite())
    }

    /// True when every summand lives at prime `p` and the shape is bounded.
    pub fn is_p_primary(&self, p: u64) -> bool {
        !self.unbounded && self.summands.iter().all(|s| s.prime == p)
    }

    fn finite_exponent(&self) -> Option<u64> {
        self.summands.iter().try_fold(1u64, |acc, s| {
            arith::checked_lcm(acc, arith::checked_pow(s.prime, s.exponent as u64)?)
        })
    }

    /// The shape exponent: infinite for unbounded shapes, else the lcm of
    /// the summand orders (1 for the trivial shape).
    pub fn exponent(&self) -> Exponent {
        if self.unbounded {
            Exponent::Infinite
        } else {
            // Overflow was ruled out at construction.
            Exponent::Finite(self.finite_exponent().expect("validated at construction"))
        }
    }

    /// Per-prime maximal orders: for every prime `q` with a summand, the
    /// highest `q^w` occurring. Equals the prime-power decomposition of the
    /// finite exponent.
    pub fn prime_profile(&self) -> Vec<PrimePower> {
        let mut out: Vec<PrimePower> = Vec::new();
        for s in &self.summands {
            let pp = PrimePower {
                prime: s.prime,
                exponent: s.exponent,
            };
            match out.last_mut() {
                Some(last) if last.prime == s.prime => {
                    if s.exponent > last.exponent {
                        *last = pp;
                    }
                }
                _ => out.push(pp),
            }
        }
        out
    }

    /// The subgroup of elements of `p`-power order, as a shape.
    pub fn primary_component(&self, p: u64) -> Result<AbelianShape, ShapeError> {
        if self.unbounded {
            return Err(ShapeError::InfiniteExponent);
        }
        if !arith::is_prime(p) {
            return Err(ShapeError::NotPrime(p));
        }
        Ok(AbelianShape {
            summands: self
                .summands
                .iter()
                .copied()
                .filter(|s| s.prime == p)
                .collect(),
            unbounded: false,
        })
    }

    /// Number of cyclic summands of order at least `q^w` at the prime `q`.
    fn count_at_least(&self, order: PrimePower) -> Multiplicity {
        self.summands
            .iter()
            .filter(|s| s.prime == order.prime && s.exponent >= order.exponent)
            .fold(Multiplicity::Finite(0), |acc, s| {
                acc.saturating_add(s.multiplicity)
            })
    }

    /// Does the shape contain a direct power `C_{q^w}^count` as a subgroup?
    ///
    /// `C_{q^w}^k` embeds in an abelian group exactly when its `q`-component
    /// has at least `k` cyclic summands of order `≥ q^w`; `count = 0` is
    /// vacuously true.
    pub fn contains_direct_power(&self, order: PrimePower, count: Multiplicity) -> bool {
        self.count_at_least(order) >= count
    }

    /// Direct product of two shapes (summand multisets merge, unbounded
    /// flags or).
    pub fn direct_product(&self, other: &AbelianShape) -> AbelianShape {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().copied());
        AbelianShape::new(summands, self.unbounded || other.unbounded)
            .expect("product of valid shapes is valid")
    }

    /// Convert a finite shape to a group expression (a direct product of
    /// cyclic powers); the trivial shape becomes `C1`.
    pub fn to_group_expr(&self) -> Result<GroupExpr, ShapeError> {
        if !self.is_finite() {
            return Err(ShapeError::NotFinite);
        }
        if self.summands.is_empty() {
            return Ok(GroupExpr::cyclic(1));
        }
        let parts: Vec<GroupExpr> = self
            .summands
            .iter()
            .map(|s| {
                let order = s.prime.pow(s.exponent);
                match s.multiplicity {
                    Multiplicity::Finite(1) => GroupExpr::cyclic(order),
                    Multiplicity::Finite(k) => GroupExpr::power(GroupExpr::cyclic(order), k),
                    Multiplicity::Infinite => unreachable!("is_finite checked"),
                }
            })
            .collect();
        Ok(if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            GroupExpr::DirectProduct(parts)
        })
    }
}

impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "C1");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{}", s.prime.pow(s.exponent))?;
            if s.multiplicity != Multiplicity::Finite(1) {
                write!(f, "^{}", s.multiplicity)?;
            }
        }
        if self.unbounded {
            if !self.summands.is_empty() {
                write!(f, " x ")?;
            }
            write!(f, "unbounded")?;
        }
        Ok(())
    }
}

/// Largest divisor of `n` coprime with `m`, by stripping every common prime
/// from `n`.
pub fn coprime_part(n: u64, m: u64) -> u64 {
    debug_assert!(n >= 1 && m >= 1);
    let mut d = n;
    let mut g = arith::gcd(d, m);
    while g > 1 {
        d /= g;
        g = arith::gcd(d, m);
    }
    d
}

/// The shape `C_{p^v}^l × C_{p^{v-1}}^{t-l}`; requires `t ≥ l`. With
/// `v = 1` the second factor is trivial and is dropped.
pub fn make_z(l: u64, t: u64, p: u64, v: u32) -> Result<AbelianShape, ShapeError> {
    if t < l {
        return Err(ShapeError::BadParameters("make_z needs t >= l"));
    }
    if v == 0 {
        return Err(ShapeError::BadParameters("make_z needs v >= 1"));
    }
    let mut summands = Vec::new();
    summands.push(Summand {
        prime: p,
        exponent: v,
        multiplicity: Multiplicity::Finite(l),
    });
    if v > 1 {
        summands.push(Summand {
            prime: p,
            exponent: v - 1,
            multiplicity: Multiplicity::Finite(t - l),
        });
    }
    AbelianShape::new(summands, false)
}

/// The shape `C_{p^v}^{t-z}`; requires `t ≥ z`.
pub fn make_y(z: u64, t: u64, p: u64, v: u32) -> Result<AbelianShape, ShapeError> {
    if t < z {
        return Err(ShapeError::BadParameters("make_y needs t >= z"));
    }
    if v == 0 {
        return Err(ShapeError::BadParameters("make_y needs v >= 1"));
    }
    AbelianShape::new(
        alloc::vec![Summand {
            prime: p,
            exponent: v,
            multiplicity: Multiplicity::Finite(t - z),
        }],
        false,
    )
}
