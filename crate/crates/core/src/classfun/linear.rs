//! Homomorphisms to `{1, -1}`.
//!
//! A sign assignment to the generators extends to a homomorphism exactly when
//! it is consistent along every edge `g → g·s` of the Cayley graph. Writing
//! each element's value as the product of generator signs along a spanning
//! tree path turns these consistency conditions into linear equations over
//! GF(2), whose solution space is the set of all such homomorphisms.

use std::collections::VecDeque;
use std::sync::Arc;

use super::function::ClassFunction;
use crate::error::{Error, Result};
use crate::par;
use crate::permcore::PermutationGroup;

/// Every homomorphism `G → {1, -1}`, trivial character first, the rest in
/// lexicographic order of their class values (with `-1 < 1`).
pub fn linear_pm1_characters(group: &Arc<PermutationGroup>) -> Result<Vec<ClassFunction>> {
    let gens = group.generators();
    if gens.len() > 64 {
        return Err(Error::InvalidParameter(
            "sign characters are limited to groups given by at most 64 generators".into(),
        ));
    }
    let paths = tree_paths(group);
    let gen_idx: Vec<usize> = gens
        .iter()
        .map(|s| group.index_of(s.images()).expect("generator in group"))
        .collect();
    let relations = par::fold_range(
        group.order(),
        XorBasis::default,
        |basis, g| {
            for (i, &s) in gen_idx.iter().enumerate() {
                let h = group.mul(g, s);
                basis.insert(paths[g] ^ paths[h] ^ (1u64 << i));
            }
        },
        |mut a, b| {
            for row in b.rows {
                a.insert(row);
            }
            a
        },
    );
    let solutions = relations.null_space(gens.len());
    let reps = &group.classes().rep_indices;
    let mut chars: Vec<Vec<i64>> = (0..1u64 << solutions.len())
        .map(|mask| {
            let assignment = solutions
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .fold(0u64, |acc, (_, v)| acc ^ v);
            reps.iter()
                .map(|&r| {
                    if (paths[r] & assignment).count_ones().is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect();
    chars.sort_by(|a, b| {
        let ta = a.iter().all(|&v| v == 1);
        let tb = b.iter().all(|&v| v == 1);
        tb.cmp(&ta).then_with(|| a.cmp(b))
    });
    chars
        .iter()
        .map(|v| ClassFunction::from_integers(group.clone(), v))
        .collect()
}

/// For each element, the set of generators (as a bitmask, mod 2) on a
/// breadth-first path from the identity.
fn tree_paths(group: &PermutationGroup) -> Vec<u64> {
    let gens: Vec<usize> = group
        .generators()
        .iter()
        .map(|s| group.index_of(s.images()).expect("generator in group"))
        .collect();
    let mut paths = vec![u64::MAX; group.order()];
    paths[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let h = group.mul(g, s);
            if paths[h] == u64::MAX {
                paths[h] = paths[g] ^ (1u64 << i);
                queue.push_back(h);
            }
        }
    }
    debug_assert!(paths.iter().all(|&p| p != u64::MAX) || gens.len() == 64);
    paths
}

/// Row space over GF(2), rows kept with distinct leading bits.
#[derive(Default)]
struct XorBasis {
    rows: Vec<u64>,
}

impl XorBasis {
    fn insert(&mut self, mut v: u64) {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        if v != 0 {
            self.rows.push(v);
            self.rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }

    /// Basis of `{a : popcount(a & row) even for every row}` in `vars` bits.
    fn null_space(&self, vars: usize) -> Vec<u64> {
        // Reduced row echelon form keyed by the highest set bit.
        let mut rows = self.rows.clone();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        for i in 0..rows.len() {
            let lead = 63 - rows[i].leading_zeros();
            for j in 0..rows.len() {
                if j != i && rows[j] >> lead & 1 == 1 {
                    rows[j] ^= rows[i];
                }
            }
        }
        let pivots: Vec<u32> = rows.iter().map(|r| 63 - r.leading_zeros()).collect();
        (0..vars as u32)
            .filter(|b| !pivots.contains(b))
            .map(|free| {
                let mut v = 1u64 << free;
                for (r, &p) in rows.iter().zip(&pivots) {
                    if r >> free & 1 == 1 {
                        v |= 1u64 << p;
                    }
                }
                v
            })
            .collect()
    }
}
