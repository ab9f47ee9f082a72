//! Groups given by an explicit multiplication table, for fixture groups
//! that have no expression form (the quaternion group, most importantly).

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{GroupError, GroupOps};

/// A small finite group defined by its full multiplication table.
/// Construction validates the group axioms exhaustively, so the table size
/// is capped.
pub struct TableGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

const MAX_TABLE_ORDER: usize = 512;

impl TableGroup {
    /// Build from `mul[a][b] = a·b` over element indices `0..order`.
    pub fn from_table(mul_rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = mul_rows.len();
        if order == 0 {
            return Err(GroupError::BadParameters(
                "a group has at least one element",
            ));
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::BadParameters(
                "table groups are capped at order 512",
            ));
        }
        let mut mul = vec![0u32; order * order];
        for (a, row) in mul_rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::BadParameters(
                    "multiplication table must be square",
                ));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::BadParameters("table entry out of range"));
                }
                mul[a * order + b] = v as u32;
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::BadParameters("table has no identity element"))?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::BadParameters("table element has no inverse"))?;
            inv.push(b as u32);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::BadParameters("table is not associative"));
                    }
                }
            }
        }
        Ok(TableGroup {
            order,
            mul,
            inv,
            identity,
        })
    }

    /// The quaternion group of order 8: `{±1, ±i, ±j, ±k}` with
    /// `i² = j² = k² = ijk = −1`. Element `2s + axis_code` encodes sign `s`
    /// and symbol `1, i, j, k`.
    pub fn quaternion() -> Self {
        // (sign, axis): axis 0 = 1, 1 = i, 2 = j, 3 = k.
        fn mul_units(a: usize, b: usize) -> (bool, usize) {
            match (a, b) {
                (0, x) => (false, x),
                (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        }
        let idx = |negative: bool, axis: usize| (negative as usize) * 4 + axis;
        let mut rows = vec![vec![0usize; 8]; 8];
        for sa in 0..2usize {
            for xa in 0..4 {
                for sb in 0..2usize {
                    for xb in 0..4 {
                        let (flip, axis) = mul_units(xa, xb);
                        let negative = (sa == 1) ^ (sb == 1) ^ flip;
                        rows[idx(sa == 1, xa)][idx(sb == 1, xb)] = idx(negative, axis);
                    }
                }
            }
        }
        TableGroup::from_table(&rows).expect("quaternion table is a group")
    }
}

impl GroupOps for TableGroup {
    fn order(&self) -> u64 {
        self.order as u64
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    fn invert(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_structure() {
        let q8 = TableGroup::quaternion();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.identity(), 0);
        // One element of order 2 (−1), six of order 4.
        let orders: Vec<u64> = (0..8).map(|a| q8.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        // i · j = k, j · i = −k.
        assert_eq!(q8.compose(1, 2), 3);
        assert_eq!(q8.compose(2, 1), 7);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Z_3 with one corrupted entry is no longer a group.
        let mut rows: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        assert!(TableGroup::from_table(&rows).is_ok());
        rows[1][1] = 1;
        assert!(TableGroup::from_table(&rows).is_err());
        assert!(TableGroup::from_table(&[]).is_err());
        assert!(TableGroup::from_table(&[vec![0, 0], vec![0, 0]]).is_err());
    }
}
