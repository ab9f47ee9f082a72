//! Decision procedures for when a wreath product generates the full product
//! variety.
//!
//! All criteria reduce to per-prime demands on the abelian top group `B`,
//! normalized so that every prime `q` dividing `n = exp B` contributes one
//! demand: `c` copies of `C_{q^v}` when `q` is coprime to the bottom
//! exponent `m`, infinitely many copies when `q` divides `m` (`q^v` being
//! the highest power of `q` dividing `n`). Primes dividing `m` but not `n`
//! impose nothing. Verdicts carry the demand lists, so a failed check names
//! exactly what is missing.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::arith;
use crate::group::ConcreteGroup;
use crate::shape::{coprime_part, AbelianShape, Exponent, Multiplicity, PrimePower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CriterionError {
    #[error("a profile with class 0 must have exponent 1, and conversely")]
    InvalidProfile,
    #[error("shape is not a finite group")]
    NotFinite,
    #[error("shape is not {0}-primary or is unbounded")]
    NotPPrimary(u64),
    #[error("shape is trivial; a p-group shape of exponent >= p is required")]
    TrivialShape,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
}

/// What the criteria need to know about the bottom group: nilpotency class
/// `c` and exponent `m`. `c = 0` iff `m = 1` (the trivial group).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawProfile", into = "RawProfile"))]
pub struct NilpotentProfile {
    class: u32,
    exponent: u64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize, Clone, Copy)]
struct RawProfile {
    c: u32,
    m: u64,
}

#[cfg(feature = "serde")]
impl TryFrom<RawProfile> for NilpotentProfile {
    type Error = CriterionError;

    fn try_from(raw: RawProfile) -> Result<Self, Self::Error> {
        NilpotentProfile::new(raw.c, raw.m)
    }
}

#[cfg(feature = "serde")]
impl From<NilpotentProfile> for RawProfile {
    fn from(p: NilpotentProfile) -> Self {
        RawProfile {
            c: p.class,
            m: p.exponent,
        }
    }
}

impl NilpotentProfile {
    pub fn new(class: u32, exponent: u64) -> Result<Self, CriterionError> {
        if exponent == 0 || ((class == 0) != (exponent == 1)) {
            return Err(CriterionError::InvalidProfile);
        }
        Ok(NilpotentProfile { class, exponent })
    }

    /// Profile of a materialized nilpotent group.
    pub fn of_group(a: &ConcreteGroup) -> Result<Self, CriterionError> {
        let class = a.nilpotency_class().ok_or(CriterionError::NotNilpotent)?;
        NilpotentProfile::new(class, a.exponent())
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

/// Which clause of a criterion settled the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Branch {
    /// An exponent escape hatch fired: the top group is not of finite
    /// nonzero exponent (or, for the abelian criterion, the bottom exponent
    /// is infinite). No demands arise.
    InfiniteExponent,
    /// Finite exponents; the per-prime demands were evaluated.
    FiniteExponentCheck,
    /// Finite-groups criterion only: the exponents share a prime, which a
    /// finite top group can never repair.
    CoprimeFailure,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::InfiniteExponent => "infinite_exponent",
            Branch::FiniteExponentCheck => "finite_exponent_check",
            Branch::CoprimeFailure => "coprime_failure",
        }
    }
}

/// One required direct power `C_{order}^count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Demand {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub order: PrimePower,
    pub count: Multiplicity,
}

impl core::fmt::Display for Demand {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.count {
            Multiplicity::Finite(1) => write!(f, "{}", self.order),
            count => write!(f, "{}^{}", self.order, count),
        }
    }
}

/// Structured answer to a criterion: whether the variety equality holds,
/// which clause decided it, and the demand diagnostics (`missing` is empty
/// exactly when `holds`).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub holds: bool,
    pub branch: Branch,
    pub required: Vec<Demand>,
    pub missing: Vec<Demand>,
    pub narrative: String,
}

impl Verdict {
    fn infinite_exponent(narrative: String) -> Self {
        Verdict {
            holds: true,
            branch: Branch::InfiniteExponent,
            required: Vec::new(),
            missing: Vec::new(),
            narrative,
        }
    }

    fn from_demands(branch: Branch, required: Vec<Demand>, missing: Vec<Demand>) -> Self {
        let holds = missing.is_empty();
        let mut narrative = String::new();
        if holds {
            if required.is_empty() {
                let _ = write!(narrative, "holds: no demands arise");
                if branch == Branch::FiniteExponentCheck {
                    let _ = write!(narrative, " (trivial exponent or class)");
                }
            } else {
                let _ = write!(
                    narrative,
                    "holds: the top group contains every required direct power ({})",
                    DemandList(&required)
                );
            }
        } else {
            let _ = write!(
                narrative,
                "fails: the top group is missing {}",
                DemandList(&missing)
            );
            if branch == Branch::CoprimeFailure {
                let _ = write!(
                    narrative,
                    "; the exponents share a prime, so a finite top group cannot satisfy this"
                );
            }
        }
        Verdict {
            holds,
            branch,
            required,
            missing,
            narrative,
        }
    }
}

struct DemandList<'a>(&'a [Demand]);

impl core::fmt::Display for DemandList<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn split_demands(b: &AbelianShape, demands: Vec<Demand>) -> (Vec<Demand>, Vec<Demand>) {
    let missing = demands
        .iter()
        .copied()
        .filter(|d| !b.contains_direct_power(d.order, d.count))
        .collect();
    (demands, missing)
}

/// Main criterion: for a nilpotent bottom group of class `c` and finite
/// exponent `m`, and an abelian top group `B`, the wreath product generates
/// the product variety iff `B` is not of finite nonzero exponent, or `B`
/// meets the per-prime demands (count `c` at primes coprime to `m`,
/// infinitely many at primes dividing `m`).
pub fn criterion_main(a: &NilpotentProfile, b: &AbelianShape) -> Verdict {
    if b.exponent() == Exponent::Infinite {
        return Verdict::infinite_exponent(String::from(
            "holds: the top group is not of finite non-zero exponent",
        ));
    }
    let demands = b
        .prime_profile()
        .into_iter()
        .map(|order| Demand {
            order,
            count: if a.exponent.is_multiple_of(order.prime()) {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(a.class as u64)
            },
        })
        .collect();
    let (required, missing) = split_demands(b, demands);
    Verdict::from_demands(Branch::FiniteExponentCheck, required, missing)
}

/// The same predicate stated for a nilpotent variety of finite exponent in
/// place of the group: extensions by `B` generate the product variety under
/// exactly the condition of [`criterion_main`].
pub fn criterion_circle(variety: &NilpotentProfile, b: &AbelianShape) -> Verdict {
    criterion_main(variety, b)
}

/// `p`-group criterion: for a nontrivial `p`-group bottom of exponent `p^u`
/// and a `p`-primary top group `B` of exponent `p^v`, the equality holds iff
/// `B` contains `C_{p^v}^∞`.
pub fn criterion_pgroup(p: u64, u: u32, b: &AbelianShape) -> Result<Verdict, CriterionError> {
    if !arith::is_prime(p) {
        return Err(CriterionError::NotPrime(p));
    }
    if u == 0 {
        return Err(CriterionError::BadParameters("need u >= 1"));
    }
    if b.is_unbounded() || !b.is_p_primary(p) {
        return Err(CriterionError::NotPPrimary(p));
    }
    if b.is_trivial() {
        return Err(CriterionError::TrivialShape);
    }
    let v = b.prime_profile()[0];
    let demands = alloc::vec![Demand {
        order: v,
        count: Multiplicity::Infinite,
    }];
    let (required, missing) = split_demands(b, demands);
    Ok(Verdict::from_demands(
        Branch::FiniteExponentCheck,
        required,
        missing,
    ))
}

/// Finite-groups criterion: for finite nontrivial groups the equality holds
/// iff the exponents are coprime, the bottom is nilpotent and the top
/// abelian (carried by the input types), and the top contains `C_n^c`.
pub fn criterion_finite(a: &NilpotentProfile, b: &AbelianShape) -> Result<Verdict, CriterionError> {
    if !b.is_finite() {
        return Err(CriterionError::NotFinite);
    }
    let n = match b.exponent() {
        Exponent::Finite(n) => n,
        Exponent::Infinite => unreachable!("finite shapes have finite exponent"),
    };
    // C_n^c decomposed per prime.
    let count_demands: Vec<Demand> = b
        .prime_profile()
        .into_iter()
        .map(|order| Demand {
            order,
            count: Multiplicity::Finite(a.class as u64),
        })
        .collect();
    if arith::gcd(a.exponent, n) == 1 {
        let (required, missing) = split_demands(b, count_demands);
        Ok(Verdict::from_demands(
            Branch::FiniteExponentCheck,
            required,
            missing,
        ))
    } else {
        // A shared prime cannot be repaired by a finite top group; record
        // the unmeetable infinite demands at the common primes.
        let mut required = count_demands;
        for order in b.prime_profile() {
            if a.exponent.is_multiple_of(order.prime()) {
                required.push(Demand {
                    order,
                    count: Multiplicity::Infinite,
                });
            }
        }
        required.sort_unstable_by_key(|d| (d.order, d.count));
        let (required, missing) = split_demands(b, required);
        Ok(Verdict::from_demands(
            Branch::CoprimeFailure,
            required,
            missing,
        ))
    }
}

/// Abelian-by-abelian criterion, divisor form: the equality holds iff one of
/// the exponents is infinite or the top group contains `C_{n/d}^∞`, where
/// `d` is the largest divisor of `n` coprime with `m`.
pub fn criterion_abelian(m: Exponent, b: &AbelianShape) -> Verdict {
    let m = match m {
        Exponent::Infinite => {
            return Verdict::infinite_exponent(String::from(
                "holds: the bottom group is not of finite exponent",
            ))
        }
        Exponent::Finite(m) => m,
    };
    let n = match b.exponent() {
        Exponent::Infinite => {
            return Verdict::infinite_exponent(String::from(
                "holds: the top group is not of finite non-zero exponent",
            ))
        }
        Exponent::Finite(n) => n,
    };
    let over = n / coprime_part(n, m);
    let demands = b
        .prime_profile()
        .into_iter()
        .filter(|order| over.is_multiple_of(order.prime()))
        .map(|order| Demand {
            order,
            count: Multiplicity::Infinite,
        })
        .collect();
    let (required, missing) = split_demands(b, demands);
    Verdict::from_demands(Branch::FiniteExponentCheck, required, missing)
}

/// Abelian-by-abelian criterion, per-prime form: for every common prime `p`
/// of the exponents, the `p`-primary component of the top group must carry
/// infinitely many summands `C_{p^v}`.
pub fn criterion_abelian_by_common_primes(m: Exponent, b: &AbelianShape) -> Verdict {
    let m = match m {
        Exponent::Infinite => {
            return Verdict::infinite_exponent(String::from(
                "holds: the bottom group is not of finite exponent",
            ))
        }
        Exponent::Finite(m) => m,
    };
    if b.exponent() == Exponent::Infinite {
        return Verdict::infinite_exponent(String::from(
            "holds: the top group is not of finite non-zero exponent",
        ));
    }
    let mut required = Vec::new();
    let mut missing = Vec::new();
    for order in b.prime_profile() {
        if m % order.prime() != 0 {
            continue;
        }
        let demand = Demand {
            order,
            count: Multiplicity::Infinite,
        };
        required.push(demand);
        let component = b
            .primary_component(order.prime())
            .expect("bounded shape has primary components");
        if !component.contains_direct_power(order, Multiplicity::Infinite) {
            missing.push(demand);
        }
    }
    Verdict::from_demands(Branch::FiniteExponentCheck, required, missing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Summand;
    use alloc::vec;

    fn s(q: u64, w: u32, mult: Multiplicity) -> Summand {
        Summand {
            prime: q,
            exponent: w,
            multiplicity: mult,
        }
    }

    fn fin(n: u64) -> Multiplicity {
        Multiplicity::Finite(n)
    }

    fn shape(summands: Vec<Summand>) -> AbelianShape {
        AbelianShape::new(summands, false).unwrap()
    }

    fn d4_profile() -> NilpotentProfile {
        NilpotentProfile::new(2, 4).unwrap()
    }

    #[test]
    fn profile_invariant() {
        assert!(NilpotentProfile::new(0, 1).is_ok());
        assert!(NilpotentProfile::new(1, 2).is_ok());
        assert_eq!(
            NilpotentProfile::new(0, 4),
            Err(CriterionError::InvalidProfile)
        );
        assert_eq!(
            NilpotentProfile::new(2, 1),
            Err(CriterionError::InvalidProfile)
        );
        assert_eq!(
            NilpotentProfile::new(1, 0),
            Err(CriterionError::InvalidProfile)
        );
    }

    #[test]
    fn main_criterion_dihedral_against_c6() {
        // Demands for (c=2, m=4) against exponent 6: C_2^inf and C_3^2.
        let b = shape(vec![s(2, 1, fin(1)), s(3, 1, fin(1))]);
        let v = criterion_main(&d4_profile(), &b);
        assert!(!v.holds);
        assert_eq!(v.branch, Branch::FiniteExponentCheck);
        assert_eq!(v.required.len(), 2);
        assert_eq!(v.missing.len(), 2);
    }

    #[test]
    fn main_criterion_mixed_positive_and_negative() {
        // C_3^inf x C_2^7 meets C_3^2 but misses C_2^inf.
        let b = shape(vec![s(3, 1, Multiplicity::Infinite), s(2, 1, fin(7))]);
        let v = criterion_main(&d4_profile(), &b);
        assert!(!v.holds);
        assert_eq!(v.missing.len(), 1);
        assert_eq!(v.missing[0].order.prime(), 2);

        // C_3^inf x C_2^inf meets both demands.
        let b = shape(vec![
            s(3, 1, Multiplicity::Infinite),
            s(2, 1, Multiplicity::Infinite),
        ]);
        assert!(criterion_main(&d4_profile(), &b).holds);
    }

    #[test]
    fn main_criterion_unbounded_shape_holds() {
        let b = AbelianShape::new(vec![s(2, 1, fin(1))], true).unwrap();
        let v = criterion_main(&d4_profile(), &b);
        assert!(v.holds);
        assert_eq!(v.branch, Branch::InfiniteExponent);
        assert!(v.required.is_empty());
    }

    #[test]
    fn main_criterion_trivial_cases() {
        let trivial_a = NilpotentProfile::new(0, 1).unwrap();
        let b = shape(vec![s(5, 1, fin(1))]);
        assert!(criterion_main(&trivial_a, &b).holds);

        let a = NilpotentProfile::new(3, 8).unwrap();
        assert!(criterion_main(&a, &AbelianShape::trivial()).holds);
    }

    #[test]
    fn pgroup_criterion_spec_examples() {
        let b = shape(vec![s(2, 2, Multiplicity::Infinite)]);
        assert!(criterion_pgroup(2, 1, &b).unwrap().holds);

        let b = shape(vec![s(2, 2, fin(5)), s(2, 1, Multiplicity::Infinite)]);
        assert!(!criterion_pgroup(2, 1, &b).unwrap().holds);

        let b = shape(vec![s(3, 1, fin(1))]);
        assert!(!criterion_pgroup(3, 2, &b).unwrap().holds);

        let mixed = shape(vec![s(2, 1, fin(1)), s(3, 1, fin(1))]);
        assert_eq!(
            criterion_pgroup(2, 1, &mixed),
            Err(CriterionError::NotPPrimary(2))
        );
        assert_eq!(
            criterion_pgroup(2, 1, &AbelianShape::trivial()),
            Err(CriterionError::TrivialShape)
        );
        assert_eq!(
            criterion_pgroup(6, 1, &mixed),
            Err(CriterionError::NotPrime(6))
        );
    }

    #[test]
    fn finite_criterion_spec_examples() {
        let a = NilpotentProfile::new(2, 3).unwrap();
        let c2 = shape(vec![s(2, 1, fin(1))]);
        assert!(!criterion_finite(&a, &c2).unwrap().holds);

        for k in [2u64, 3, 9] {
            let b = shape(vec![s(2, 1, fin(k))]);
            assert!(criterion_finite(&a, &b).unwrap().holds, "k = {k}");
        }

        let a = NilpotentProfile::new(1, 2).unwrap();
        let v = criterion_finite(&a, &c2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.branch, Branch::CoprimeFailure);
        assert!(!v.missing.is_empty());

        let inf = AbelianShape::new(vec![s(2, 1, Multiplicity::Infinite)], false).unwrap();
        assert_eq!(criterion_finite(&a, &inf), Err(CriterionError::NotFinite));
    }

    #[test]
    fn abelian_criterion_spec_examples() {
        let b = shape(vec![s(2, 1, Multiplicity::Infinite)]);
        assert!(criterion_abelian(Exponent::Finite(4), &b).holds);

        let b = shape(vec![s(3, 1, fin(5))]);
        assert!(criterion_abelian(Exponent::Finite(2), &b).holds);

        let any = shape(vec![s(7, 2, fin(1))]);
        let v = criterion_abelian(Exponent::Infinite, &any);
        assert!(v.holds);
        assert_eq!(v.branch, Branch::InfiniteExponent);

        // Negative case: common prime with only finitely many top summands.
        let b = shape(vec![s(2, 1, fin(9))]);
        assert!(!criterion_abelian(Exponent::Finite(2), &b).holds);
    }

    #[test]
    fn verdict_invariants() {
        let b = shape(vec![s(2, 1, fin(1)), s(3, 1, fin(1))]);
        let v = criterion_main(&d4_profile(), &b);
        assert_eq!(v.holds, v.missing.is_empty());
        // Every required demand sits at a prime dividing the exponent.
        for d in &v.required {
            assert_eq!(6 % d.order.prime(), 0);
        }
    }

    #[cfg(feature = "serde")]
    #[test]
    fn verdict_json_shape() {
        let b = shape(vec![s(2, 1, fin(1)), s(3, 1, fin(1))]);
        let v = criterion_main(&d4_profile(), &b);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["holds"], false);
        assert_eq!(json["branch"], "finite_exponent_check");
        assert_eq!(json["required"][0]["q"], 2);
        assert_eq!(json["required"][0]["count"], "inf");
        assert!(json["narrative"].as_str().unwrap().contains("missing"));
        let back: Verdict = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }
}
