//! Brute-force ground truth: exhaustive law checking, bounded variety
//! comparison, and the Shield-formula vs lower-central-series cross-check.
//!
//! Law checking is exhaustive over all assignments of group elements to the
//! word's variables, so every answer is a certificate, never a heuristic.
//! What is bounded is the *window*: `laws_up_to` and
//! `compare_varieties_upto` only examine freely reduced words up to a given
//! length, and an indistinguishability report claims nothing beyond that
//! window.

use alloc::vec;
use alloc::vec::Vec;

use crate::expr::GroupExpr;
use crate::group::{ConcreteGroup, GroupError, GroupOps};
use crate::shield::{self, ShieldError};
use crate::word::{Letter, ReducedWord, Word};

/// Default evaluation-step budget for enumerative checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("budget exceeded: {needed} evaluation steps needed, {budget} allowed")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Shield(#[from] ShieldError),
}

fn checked_assignments(order: u64, arity: u32) -> Option<u64> {
    let mut n = 1u64;
    for _ in 0..arity {
        n = n.checked_mul(order)?;
    }
    Some(n)
}

fn budget_check(steps: Option<u64>, budget: u64) -> Result<u64, OracleError> {
    match steps {
        Some(n) if n <= budget => Ok(n),
        Some(n) => Err(OracleError::BudgetExceeded { needed: n, budget }),
        None => Err(OracleError::BudgetExceeded {
            needed: u64::MAX,
            budget,
        }),
    }
}

/// Is `w` a law of `g`, i.e. does it evaluate to the identity under every
/// assignment? Exhaustive; the budget is `|G|^arity · node_count(w)`.
pub fn is_law<G: GroupOps + ?Sized>(w: &Word, g: &G, budget: u64) -> Result<bool, OracleError> {
    let arity = w.arity();
    let assignments = checked_assignments(g.order(), arity);
    budget_check(
        assignments.and_then(|n| n.checked_mul(w.node_count())),
        budget,
    )?;
    let n = g.order() as usize;
    let mut assignment = vec![g.identity(); arity as usize];
    let total = assignments.unwrap();
    for mut code in 0..total {
        for slot in assignment.iter_mut() {
            *slot = (code % n as u64) as usize;
            code /= n as u64;
        }
        if w.evaluate(g, &assignment) != g.identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Count of reduced words over `arity` variables of length `1..=max_len`.
fn reduced_word_count(arity: u32, max_len: u32) -> Option<u64> {
    if arity == 0 || max_len == 0 {
        return Some(0);
    }
    let k = 2 * arity as u64;
    let mut total = 0u64;
    let mut level = k;
    for _ in 0..max_len {
        total = total.checked_add(level)?;
        level = level.checked_mul(k - 1)?;
    }
    Some(total)
}

/// All laws of `g` among the nonempty freely reduced words over `x1..x_arity`
/// of length at most `max_len`, sorted by length then lexicographically
/// (`x1 < x1⁻¹ < x2 < …`). Budget: `|G|^arity · word count`.
pub fn laws_up_to<G: GroupOps + ?Sized>(
    g: &G,
    arity: u32,
    max_len: u32,
    budget: u64,
) -> Result<Vec<ReducedWord>, OracleError> {
    let assignments = checked_assignments(g.order(), arity);
    let words = reduced_word_count(arity, max_len);
    budget_check(
        assignments.and_then(|a| words.and_then(|w| a.checked_mul(w))),
        budget,
    )?;
    let total = assignments.unwrap() as usize;
    let n = g.order() as usize;

    // Per-assignment values of every letter.
    let letters: Vec<Letter> = (1..=arity)
        .flat_map(|v| {
            [
                Letter {
                    var: v,
                    inverse: false,
                },
                Letter {
                    var: v,
                    inverse: true,
                },
            ]
        })
        .collect();
    let mut letter_values = vec![0usize; total * letters.len()];
    for code in 0..total {
        let mut rest = code;
        let mut values = vec![0usize; arity as usize];
        for v in values.iter_mut() {
            *v = rest % n;
            rest /= n;
        }
        for (li, l) in letters.iter().enumerate() {
            let raw = values[l.var as usize - 1];
            letter_values[code * letters.len() + li] = if l.inverse { g.invert(raw) } else { raw };
        }
    }

    // Depth-first walk over reduced words, carrying prefix products for all
    // assignments at once.
    let mut laws = Vec::new();
    let identity = g.identity();
    let mut prefix: Vec<Vec<usize>> = vec![vec![identity; total]];
    let mut path: Vec<usize> = Vec::new(); // letter indices
    let mut next_letter = vec![0usize; max_len as usize + 1];
    loop {
        let depth = path.len();
        if depth < max_len as usize && next_letter[depth] < letters.len() {
            let li = next_letter[depth];
            next_letter[depth] += 1;
            // No adjacent cancellation: skip the inverse of the last letter.
            if let Some(&prev) = path.last() {
                if letters[prev].is_inverse_of(letters[li]) {
                    continue;
                }
            }
            let current = &prefix[depth];
            let mut next = Vec::with_capacity(total);
            let mut all_identity = true;
            for (code, &p) in current.iter().enumerate() {
                let value = g.compose(p, letter_values[code * letters.len() + li]);
                all_identity &= value == identity;
                next.push(value);
            }
            path.push(li);
            prefix.push(next);
            next_letter[path.len()] = 0;
            if all_identity {
                laws.push(ReducedWord::reduce(path.iter().map(|&i| letters[i])));
            }
        } else {
            if path.pop().is_none() {
                break;
            }
            prefix.pop();
        }
    }
    laws.sort_unstable_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| letter_key(a).cmp(&letter_key(b)))
    });
    Ok(laws)
}

fn letter_key(w: &ReducedWord) -> Vec<(u32, bool)> {
    w.letters().iter().map(|l| (l.var, l.inverse)).collect()
}

/// Outcome of a bounded variety comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComparisonVerdict {
    /// Some examined word is a law of exactly one group.
    Distinguished {
        witness: ReducedWord,
        /// True when the witness is a law of the first group.
        law_of_first: bool,
    },
    /// Every examined word is a law of both groups or of neither.
    IndistinguishableUpTo(u32),
}

/// Partition of the examined words that are laws of at least one group.
/// This is a semi-decision: `IndistinguishableUpTo(L)` claims nothing about
/// longer words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub arity: u32,
    pub max_len: u32,
    pub only_first: Vec<ReducedWord>,
    pub only_second: Vec<ReducedWord>,
    pub both: Vec<ReducedWord>,
    pub verdict: ComparisonVerdict,
}

/// Compare the laws of two groups over the bounded word window.
pub fn compare_varieties_upto<G1, G2>(
    g1: &G1,
    g2: &G2,
    arity: u32,
    max_len: u32,
    budget: u64,
) -> Result<ComparisonReport, OracleError>
where
    G1: GroupOps + ?Sized,
    G2: GroupOps + ?Sized,
{
    let half = budget / 2;
    let laws1 = laws_up_to(g1, arity, max_len, half)?;
    let laws2 = laws_up_to(g2, arity, max_len, half)?;
    let set1: alloc::collections::BTreeSet<_> = laws1.iter().cloned().collect();
    let set2: alloc::collections::BTreeSet<_> = laws2.iter().cloned().collect();
    let only_first: Vec<ReducedWord> = laws1
        .iter()
        .filter(|w| !set2.contains(*w))
        .cloned()
        .collect();
    let only_second: Vec<ReducedWord> = laws2
        .iter()
        .filter(|w| !set1.contains(*w))
        .cloned()
        .collect();
    let both: Vec<ReducedWord> = laws1
        .iter()
        .filter(|w| set2.contains(*w))
        .cloned()
        .collect();
    let verdict = match (only_first.first(), only_second.first()) {
        (Some(w), _) => ComparisonVerdict::Distinguished {
            witness: w.clone(),
            law_of_first: true,
        },
        (None, Some(w)) => ComparisonVerdict::Distinguished {
            witness: w.clone(),
            law_of_first: false,
        },
        (None, None) => ComparisonVerdict::IndistinguishableUpTo(max_len),
    };
    Ok(ComparisonReport {
        arity,
        max_len,
        only_first,
        only_second,
        both,
        verdict,
    })
}

/// Shield formula vs brute force on one wreath product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShieldVsBrute {
    /// Class from the closed formula.
    pub predicted: u64,
    /// Class from the lower central series of the materialized product.
    pub observed: u64,
    pub agree: bool,
}

/// Compute the nilpotency class of `bottom wr top` twice — by the Shield
/// formula and by materializing the wreath product — and compare.
pub fn shield_vs_brute(
    bottom: &GroupExpr,
    top: &GroupExpr,
    p: u64,
    cap: u64,
) -> Result<ShieldVsBrute, OracleError> {
    let a = ConcreteGroup::materialize(bottom.clone(), cap)?;
    let b = ConcreteGroup::materialize(top.clone(), cap)?;
    let predicted = shield::shield_class(&a, &b, p)?;
    let product = ConcreteGroup::materialize(GroupExpr::wreath(bottom.clone(), top.clone()), cap)?;
    let observed = product.nilpotency_class().ok_or(GroupError::Internal(
        "wreath product of p-groups must be nilpotent",
    ))? as u64;
    Ok(ShieldVsBrute {
        predicted,
        observed,
        agree: predicted == observed,
    })
}
