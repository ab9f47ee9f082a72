//! Nilpotency class of wreath products of `p`-groups via the `K_p`-series.
//!
//! For a finite `p`-group `B` the series is
//! `K_i(B) = ⟨ γ_r(B)^(p^j) : r·p^j ≥ i ⟩`, descending in `i`. Its quotient
//! sizes yield the parameters `(depth, e(·), a, b)`, and together with the
//! per-term exponents `s(h)` of the bottom group's lower central series they
//! determine the nilpotency class of `A wr B` as
//! `max_h { a·h + (s(h)−1)·b }`. The brute-force route in [`crate::oracle`]
//! checks this formula elementwise on materialized groups.

use alloc::vec::Vec;

pub use num_rational::Ratio;

use crate::arith;
use crate::group::{ConcreteGroup, GroupError, GroupOps};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShieldError {
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { p: u64, order: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the trivial group has no profile here")]
    TrivialGroup,
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}

/// The `K_p`-series of a finite `p`-group, including the final trivial term.
pub struct KpSeries<'g> {
    prime: u64,
    terms: Vec<Subgroup<'g>>,
    depth: u32,
}

impl<'g> KpSeries<'g> {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Terms `K_1 ⊇ K_2 ⊇ … ⊇ K_{depth+1} = 1`.
    pub fn terms(&self) -> &[Subgroup<'g>] {
        &self.terms
    }

    /// Largest `i` with `K_i` nontrivial (0 for the trivial group).
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn term_orders(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// Parameters derived from the `K_p`-series of a nontrivial `p`-group `B`:
/// `p^e(s) = |K_s / K_{s+1}|`, `a = 1 + (p−1)·Σ s·e(s)`, `b = (p−1)·depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShieldParams {
    prime: u64,
    depth: u32,
    e: Vec<u32>,
    a: u64,
    b: u64,
}

impl ShieldParams {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `e(s)` for `s = 1..=depth`.
    pub fn e(&self, s: u32) -> u32 {
        self.e[s as usize - 1]
    }

    pub fn e_values(&self) -> &[u32] {
        &self.e
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }
}

/// Lower-central-series exponent profile of a nontrivial nilpotent
/// `p`-group: `p^s(h)` is the exponent of `γ_h`, for `h = 1..=class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaProfile {
    prime: u64,
    class: u32,
    s: Vec<u32>,
}

impl GammaProfile {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    /// `s(h)` for `h = 1..=class`.
    pub fn s(&self, h: u32) -> u32 {
        self.s[h as usize - 1]
    }

    pub fn s_values(&self) -> &[u32] {
        &self.s
    }

    /// `α = s(class)`, the log-exponent of the last nontrivial term.
    pub fn alpha(&self) -> u32 {
        *self.s.last().expect("class >= 1")
    }
}

fn require_p_group(g: &ConcreteGroup, p: u64) -> Result<(), ShieldError> {
    if !arith::is_prime(p) {
        return Err(ShieldError::NotPrime(p));
    }
    if arith::p_part(g.order(), p) != g.order() {
        return Err(ShieldError::NotPGroup {
            p,
            order: g.order(),
        });
    }
    Ok(())
}

fn log_p(mut n: u64, p: u64) -> Result<u32, ShieldError> {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    if n != 1 {
        return Err(ShieldError::Internal("quotient size is not a p-power"));
    }
    Ok(e)
}

/// Compute the `K_p`-series of a finite `p`-group.
///
/// `K_i` is generated, over all pairs `(r, j)` with `r·p^j ≥ i`, by the
/// `p^j`-th powers of the elements of `γ_r(B)`. For fixed `r` only the least
/// such `j` matters, since higher powers are powers of lower ones.
pub fn kp_series(b: &ConcreteGroup, p: u64) -> Result<KpSeries<'_>, ShieldError> {
    require_p_group(b, p)?;
    let gammas = b.lower_central_series();
    if !gammas.last().unwrap().is_trivial() {
        return Err(ShieldError::Internal("p-group reported as non-nilpotent"));
    }

    let mut terms: Vec<Subgroup<'_>> = Vec::new();
    let mut i = 1u64;
    loop {
        let mut powers: Vec<usize> = Vec::new();
        for (idx, gamma) in gammas.iter().enumerate() {
            if gamma.is_trivial() {
                break;
            }
            let r = idx as u64 + 1;
            // least j with r * p^j >= i
            let mut pj = 1u64;
            while r * pj < i {
                pj *= p;
            }
            if pj >= gamma.exponent() {
                continue; // p^j-th powers are all trivial
            }
            powers.extend(gamma.members().iter().map(|&g| b.power(g, pj as i64)));
        }
        let term = b.subgroup_generated(powers);
        let trivial = term.is_trivial();
        if let Some(prev) = terms.last() {
            if term.order() > prev.order() {
                return Err(ShieldError::Internal("series not descending"));
            }
        }
        terms.push(term);
        if trivial {
            break;
        }
        i += 1;
    }
    let depth = terms.len() as u32 - 1;
    Ok(KpSeries {
        prime: p,
        terms,
        depth,
    })
}

/// Shield parameters of a nontrivial finite `p`-group.
pub fn shield_params(b: &ConcreteGroup, p: u64) -> Result<ShieldParams, ShieldError> {
    let series = kp_series(b, p)?;
    if series.depth == 0 {
        return Err(ShieldError::TrivialGroup);
    }
    let mut e = Vec::with_capacity(series.depth as usize);
    for s in 0..series.depth as usize {
        let quotient = series.terms[s].order() / series.terms[s + 1].order();
        e.push(log_p(quotient, p)?);
    }
    let sum: u64 = e
        .iter()
        .enumerate()
        .map(|(idx, &es)| (idx as u64 + 1) * es as u64)
        .sum();
    Ok(ShieldParams {
        prime: p,
        depth: series.depth,
        a: 1 + (p - 1) * sum,
        b: (p - 1) * series.depth as u64,
        e,
    })
}

/// Exponent profile of the lower central series of a nontrivial `p`-group.
pub fn gamma_profile(a: &ConcreteGroup, p: u64) -> Result<GammaProfile, ShieldError> {
    require_p_group(a, p)?;
    if a.order() == 1 {
        return Err(ShieldError::TrivialGroup);
    }
    let gammas = a.lower_central_series();
    if !gammas.last().unwrap().is_trivial() {
        return Err(ShieldError::Internal("p-group reported as non-nilpotent"));
    }
    let class = gammas.len() as u32 - 1;
    let s = gammas[..class as usize]
        .iter()
        .map(|gamma| log_p(gamma.exponent(), p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GammaProfile { prime: p, class, s })
}

/// Nilpotency class of `A wr B` for nontrivial finite `p`-groups, by the
/// closed formula `max_h { a·h + (s(h)−1)·b }`.
pub fn shield_class(a: &ConcreteGroup, b: &ConcreteGroup, p: u64) -> Result<u64, ShieldError> {
    let profile = gamma_profile(a, p)?;
    let params = shield_params(b, p)?;
    Ok(shield_class_from(&profile, &params))
}

/// The class formula on precomputed inputs.
pub fn shield_class_from(profile: &GammaProfile, params: &ShieldParams) -> u64 {
    (1..=profile.class())
        .map(|h| params.a() * h as u64 + (profile.s(h) as u64 - 1) * params.b())
        .max()
        .expect("class >= 1")
}

fn check_bound_params(p: u64, v: u32, alpha: u32, c: u64) -> Result<(), ShieldError> {
    if !arith::is_prime(p) {
        return Err(ShieldError::NotPrime(p));
    }
    if v == 0 || alpha == 0 || c == 0 {
        return Err(ShieldError::BadParameters(
            "need v >= 1, alpha >= 1, c >= 1",
        ));
    }
    Ok(())
}

/// First class bound, exactly:
/// `c + c·t·(p−1)·((1−p^(v−1))/(1−p) + (l/t)·p^(v−1)) + (α−1)(p−1)p^(v−1)`.
///
/// For all sufficiently large `t` this is the nilpotency class of a wreath
/// product whose top group is `C_{p^v}^l × C_{p^{v−1}}^(t−l)` and whose
/// bottom group has class `c` with `p^α` the exponent of its last
/// nontrivial lower central term; for small `t` it is a pure formula
/// evaluation, no class claim attached. Always an integer in value (the
/// `t` in `l/t` cancels), but returned as a rational so callers can assert
/// that.
pub fn bound1(
    c: u64,
    t: u64,
    l: u64,
    p: u64,
    v: u32,
    alpha: u32,
) -> Result<Ratio<i128>, ShieldError> {
    check_bound_params(p, v, alpha, c)?;
    if t == 0 || t < l {
        return Err(ShieldError::BadParameters("bound1 needs t >= 1 and t >= l"));
    }
    let (c, t, l, p) = (c as i128, t as i128, l as i128, p as i128);
    let geom = arith::geometric_sum(p, v - 1); // (1 - p^(v-1)) / (1 - p)
    let pv1 = p.pow(v - 1);
    let middle = Ratio::from_integer(c * t * (p - 1))
        * (Ratio::from_integer(geom) + Ratio::new(l, t) * Ratio::from_integer(pv1));
    Ok(Ratio::from_integer(c) + middle + Ratio::from_integer((alpha as i128 - 1) * (p - 1) * pv1))
}

/// Second class bound:
/// `c + c(t−z)(p−1)·(1−p^v)/(1−p) + (α−1)(p−1)p^(v−1)`.
///
/// The counterpart of [`bound1`] for a top group `C_{p^v}^(t−z)` over a
/// `z`-generator bottom group; again exact as a class only for all
/// sufficiently large `t`.
pub fn bound2(c: u64, t: u64, z: u64, p: u64, v: u32, alpha: u32) -> Result<i128, ShieldError> {
    check_bound_params(p, v, alpha, c)?;
    if t < z {
        return Err(ShieldError::BadParameters("bound2 needs t >= z"));
    }
    let (c, t, z, p) = (c as i128, t as i128, z as i128, p as i128);
    let geom = arith::geometric_sum(p, v); // (1 - p^v) / (1 - p)
    Ok(c + c * (t - z) * (p - 1) * geom + (alpha as i128 - 1) * (p - 1) * p.pow(v - 1))
}

/// Least `t ≥ max(z, l, 1)` with `bound2(c,t,z,…) > bound1(c,t,l,…)`.
///
/// The difference is affine in `t` with slope `c(p−1)p^(v−1) > 0`:
/// `bound2 − bound1 = c(p−1)·(p^(v−1)(t−l) − z·(1+p+…+p^(v−1)))`, so the
/// crossover always exists and solves in closed form. This is the formal
/// sign change of the formulas; since the bounds are classes only for
/// large `t`, it is not by itself a certified separation witness.
pub fn crossover(c: u64, z: u64, l: u64, p: u64, v: u32, alpha: u32) -> Result<u64, ShieldError> {
    check_bound_params(p, v, alpha, c)?;
    let pv1 = (p as i128).pow(v - 1);
    let geom_v = arith::geometric_sum(p as i128, v);
    // smallest t with p^(v-1) * (t - l) > z * geom_v
    let threshold = l as i128 + (z as i128 * geom_v).div_euclid(pv1) + 1;
    let t_min = z.max(l).max(1) as i128;
    Ok(threshold.max(t_min) as u64)
}
