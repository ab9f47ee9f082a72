//! Subgroups of a materialized group and the structural series built on
//! them.
//!
//! Closure is breadth-first orbit enumeration over a generator list. The
//! generator list is grown incrementally: a candidate is kept only when it
//! falls outside the closure so far, so at most `log2 |G|` generators
//! survive and re-closing stays cheap. Candidate iteration order is fixed,
//! which makes member sets and generator lists deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::group::{ConcreteGroup, GroupError, GroupOps};

/// A subgroup of a parent [`ConcreteGroup`]: sorted member indices plus the
/// reduced generator list that produced them.
#[derive(Clone)]
pub struct Subgroup<'g> {
    group: &'g ConcreteGroup,
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    pub fn parent(&self) -> &'g ConcreteGroup {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    /// Member indices, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Reduced generating set, in discovery order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.group.order()
    }

    /// lcm of the member orders.
    pub fn exponent(&self) -> u64 {
        self.members
            .iter()
            .map(|&m| self.group.element_order(m))
            .fold(1, |acc, o| {
                arith::checked_lcm(acc, o).expect("exponent fits u64")
            })
    }

    /// Exhaustive conjugation check.
    pub fn is_normal(&self) -> bool {
        self.group.elements().all(|x| {
            self.members
                .iter()
                .all(|&h| self.contains(self.group.conjugate(h, x)))
        })
    }

    /// Relabel the members as a standalone group `0..order`.
    pub fn as_group(&self) -> SubgroupView<'g> {
        let mut local = vec![u32::MAX; self.group.order() as usize];
        for (i, &m) in self.members.iter().enumerate() {
            local[m] = i as u32;
        }
        SubgroupView {
            group: self.group,
            members: self.members.clone(),
            local,
        }
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

// Keep Debug small: subgroups of big groups would otherwise dump thousands
// of indices into assertion output.
impl core::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Subgroup(order {})", self.order())
    }
}

/// A subgroup re-indexed as a group in its own right; identity is local
/// index 0.
pub struct SubgroupView<'g> {
    group: &'g ConcreteGroup,
    members: Vec<usize>,
    local: Vec<u32>,
}

impl SubgroupView<'_> {
    /// Parent index of local element `a`.
    pub fn global(&self, a: usize) -> usize {
        self.members[a]
    }
}

impl GroupOps for SubgroupView<'_> {
    fn order(&self) -> u64 {
        self.members.len() as u64
    }

    fn identity(&self) -> usize {
        0
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.local[self.group.compose(self.members[a], self.members[b])] as usize
    }

    fn invert(&self, a: usize) -> usize {
        self.local[self.group.invert(self.members[a])] as usize
    }

    fn element_order(&self, a: usize) -> u64 {
        self.group.element_order(self.members[a])
    }
}

/// Breadth-first closure of `gens` inside `group`; returns (sorted members,
/// membership mask).
fn close(group: &ConcreteGroup, gens: &[usize]) -> (Vec<usize>, Vec<bool>) {
    let mut in_set = vec![false; group.order() as usize];
    in_set[0] = true;
    let mut members = vec![0usize];
    let mut head = 0;
    while head < members.len() {
        let e = members[head];
        head += 1;
        for &g in gens {
            let f = group.compose(e, g);
            if !in_set[f] {
                in_set[f] = true;
                members.push(f);
            }
        }
    }
    members.sort_unstable();
    (members, in_set)
}

impl ConcreteGroup {
    /// Subgroup generated by `candidates`. Candidates already inside the
    /// running closure are skipped, so the stored generator list is reduced.
    pub fn subgroup_generated<'g>(
        &'g self,
        candidates: impl IntoIterator<Item = usize>,
    ) -> Subgroup<'g> {
        let mut generators: Vec<usize> = Vec::new();
        let (mut members, mut in_set) = close(self, &generators);
        for c in candidates {
            if !in_set[c] {
                generators.push(c);
                (members, in_set) = close(self, &generators);
            }
        }
        Subgroup {
            group: self,
            members,
            generators,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        self.subgroup_generated([])
    }

    /// The whole group as a subgroup, generated by the structural set.
    pub fn whole_subgroup(&self) -> Subgroup<'_> {
        let members: Vec<usize> = self.elements().collect();
        Subgroup {
            group: self,
            members,
            generators: self.generators().to_vec(),
        }
    }

    /// Lower central series `γ_1 = G ⊇ γ_2 = [G, G] ⊇ …`, with
    /// `γ_{r+1} = ⟨[g, x] : g generating γ_r, x ∈ G⟩`. The list stops at
    /// the first stable term, so it ends either at the trivial subgroup or
    /// at the nontrivial stable tail of a non-nilpotent group.
    pub fn lower_central_series(&self) -> Vec<Subgroup<'_>> {
        let mut series = vec![self.whole_subgroup()];
        loop {
            let prev = series.last().unwrap();
            if prev.is_trivial() {
                break;
            }
            let mut commutators = Vec::new();
            for &s in prev.generators() {
                for x in self.elements() {
                    commutators.push(self.commutator(s, x));
                }
            }
            let next = self.subgroup_generated(commutators);
            if next.members == prev.members {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Smallest `c` with `γ_{c+1}` trivial, or `None` when the series
    /// stabilizes above the trivial subgroup.
    pub fn nilpotency_class(&self) -> Option<u32> {
        let series = self.lower_central_series();
        series
            .last()
            .unwrap()
            .is_trivial()
            .then(|| series.len() as u32 - 1)
    }

    /// Sylow `p`-subgroup of a nilpotent group: the set of elements of
    /// `p`-power order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup<'_>, GroupError> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if self.nilpotency_class().is_none() {
            return Err(GroupError::NotNilpotent);
        }
        let members: Vec<usize> = self
            .elements()
            .filter(|&e| is_p_power(self.element_order(e), p))
            .collect();
        let expected = arith::p_part(self.order(), p);
        self.verified_subgroup(members, expected)
    }

    /// Hall subgroup of a nilpotent group for a set of primes: the product
    /// of the corresponding Sylow subgroups.
    pub fn hall_subgroup(&self, primes: &[u64]) -> Result<Subgroup<'_>, GroupError> {
        for &p in primes {
            if !arith::is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
        }
        if self.nilpotency_class().is_none() {
            return Err(GroupError::NotNilpotent);
        }
        let members: Vec<usize> = self
            .elements()
            .filter(|&e| {
                let mut o = self.element_order(e);
                for &p in primes {
                    while o % p == 0 {
                        o /= p;
                    }
                }
                o == 1
            })
            .collect();
        let expected = primes
            .iter()
            .map(|&p| arith::p_part(self.order(), p))
            .product();
        self.verified_subgroup(members, expected)
    }

    fn verified_subgroup(
        &self,
        members: Vec<usize>,
        expected_order: u64,
    ) -> Result<Subgroup<'_>, GroupError> {
        let sub = self.subgroup_generated(members.iter().copied());
        if sub.order() != members.len() as u64 || sub.order() != expected_order {
            return Err(GroupError::Internal(
                "torsion elements did not close onto the expected subgroup",
            ));
        }
        Ok(sub)
    }

    /// Subgroup generated by all k-th powers.
    pub fn power_subgroup(&self, k: u64) -> Result<Subgroup<'_>, GroupError> {
        if k == 0 {
            return Err(GroupError::BadParameters("power subgroup needs k >= 1"));
        }
        let k = (k % self.exponent().max(1)) as i64;
        Ok(self.subgroup_generated(self.elements().map(|e| self.power(e, k))))
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::GroupExpr;
    use crate::group::DEFAULT_CAP;

    fn c(n: u64) -> GroupExpr {
        GroupExpr::cyclic(n)
    }

    fn mat(expr: GroupExpr) -> ConcreteGroup {
        ConcreteGroup::materialize(expr, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn lcs_of_abelian_groups_is_two_steps() {
        let g = mat(GroupExpr::direct([c(4), c(9)]));
        let series = g.lower_central_series();
        assert_eq!(series.len(), 2);
        assert!(series[0].is_whole_group());
        assert!(series[1].is_trivial());
        assert_eq!(g.nilpotency_class(), Some(1));
    }

    #[test]
    fn lcs_of_dihedral_wreath() {
        // C_2 wr C_2 is D_4: class 2, series of length 3.
        let g = mat(GroupExpr::wreath(c(2), c(2)));
        let series = g.lower_central_series();
        assert_eq!(series.len(), 3);
        assert_eq!(series[1].order(), 2);
        assert!(series[2].is_trivial());
        assert_eq!(g.nilpotency_class(), Some(2));
    }

    #[test]
    fn lcs_of_c3_wr_c3() {
        let g = mat(GroupExpr::wreath(c(3), c(3)));
        let orders: Vec<u64> = g.lower_central_series().iter().map(|s| s.order()).collect();
        assert_eq!(orders, [81, 9, 3, 1]);
        assert_eq!(g.nilpotency_class(), Some(3));
    }

    #[test]
    fn trivial_group_has_class_zero() {
        let g = mat(c(1));
        assert_eq!(g.nilpotency_class(), Some(0));
        assert_eq!(g.lower_central_series().len(), 1);
    }

    #[test]
    fn non_p_group_top_is_not_nilpotent() {
        let g = mat(GroupExpr::wreath(c(2), c(6)));
        assert_eq!(g.nilpotency_class(), None);
        let tail = g.lower_central_series();
        assert!(!tail.last().unwrap().is_trivial());
        assert!(matches!(g.sylow_subgroup(2), Err(GroupError::NotNilpotent)));
    }

    #[test]
    fn sylow_spec_examples() {
        assert_eq!(mat(c(6)).sylow_subgroup(2).unwrap().order(), 2);
        let g = mat(GroupExpr::direct([c(4), c(9)]));
        assert_eq!(g.sylow_subgroup(3).unwrap().order(), 9);
        assert_eq!(mat(c(8)).sylow_subgroup(3).unwrap().order(), 1);
        assert!(matches!(
            mat(c(8)).sylow_subgroup(6),
            Err(GroupError::NotPrime(6))
        ));
    }

    #[test]
    fn hall_spec_examples() {
        assert_eq!(mat(c(30)).hall_subgroup(&[2, 3]).unwrap().order(), 6);
        assert_eq!(mat(c(30)).hall_subgroup(&[7]).unwrap().order(), 1);
        let g = mat(GroupExpr::direct([c(4), c(3), c(25)]));
        assert_eq!(g.hall_subgroup(&[2, 5]).unwrap().order(), 100);
    }

    #[test]
    fn power_subgroup_spec_examples() {
        assert_eq!(mat(c(4)).power_subgroup(2).unwrap().order(), 2);
        let g = mat(GroupExpr::power(c(2), 3));
        assert!(g.power_subgroup(2).unwrap().is_trivial());
        assert_eq!(mat(c(9)).power_subgroup(3).unwrap().order(), 3);
        assert!(matches!(
            mat(c(4)).power_subgroup(0),
            Err(GroupError::BadParameters(_))
        ));
    }

    #[test]
    fn closure_is_deterministic_and_reduced() {
        let g = mat(GroupExpr::direct([c(2), c(2), c(2)]));
        let all: Vec<usize> = g.elements().collect();
        let sub = g.subgroup_generated(all.iter().copied());
        assert!(sub.is_whole_group());
        // Redundant candidates are dropped: 3 generators suffice for C_2^3.
        assert_eq!(sub.generators().len(), 3);
        let again = g.subgroup_generated(all.iter().copied());
        assert_eq!(sub.generators(), again.generators());
        assert_eq!(sub.members(), again.members());
    }

    #[test]
    fn subgroup_view_relabels_cleanly() {
        let g = mat(c(12));
        let sub = g.subgroup_generated([g.power(1, 3)]); // C_4 inside C_12
        assert_eq!(sub.order(), 4);
        let view = sub.as_group();
        assert_eq!(view.order(), 4);
        assert_eq!(view.identity(), 0);
        for a in 0..4 {
            for b in 0..4 {
                let global = g.compose(view.global(a), view.global(b));
                assert_eq!(view.global(view.compose(a, b)), global);
            }
        }
        assert_eq!(sub.exponent(), 4);
    }
}
