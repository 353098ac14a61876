//! Exhaustive minimum-base search.
//!
//! Iterative deepening over the target length. Inside a depth the search is
//! depth-first, tries one point per orbit of the current stabilizer (points
//! it fixes are skipped since they leave the stabilizer unchanged), and
//! abandons a branch once `|stabilizer| > domain_size ^ remaining`: adding a
//! point divides the stabilizer order by at most the orbit length.

use serde::{Deserialize, Serialize};

use super::action::GroupAction;
use crate::error::Result;
use crate::par;

/// A base, in the order the search found it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseWitness {
    pub points: Vec<usize>,
}

impl BaseWitness {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

/// A base of minimum length for a faithful action.
pub fn min_base_search(action: &GroupAction) -> Result<BaseWitness> {
    action.ensure_faithful()?;
    let mut depth = 0;
    loop {
        if let Some(w) = search_base(action, depth) {
            return Ok(w);
        }
        depth += 1;
    }
}

/// Searches for a base of length at most `max_len`, returning the first one
/// found in ascending point order. `None` certifies that no such base exists.
pub fn search_base(action: &GroupAction, max_len: usize) -> Option<BaseWitness> {
    let all = action.all_elements();
    if all.len() == 1 {
        return Some(BaseWitness { points: vec![] });
    }
    if max_len == 0 || exceeds_bound(all.len(), action.domain_size(), max_len) {
        return None;
    }
    let branches = moved_orbit_reps(action, &all);
    par::find_map_first(&branches, |&w| {
        let stab = action.filter_fixing(&all, w);
        let mut path = vec![w];
        descend(action, &stab, max_len - 1, &mut path).then_some(BaseWitness { points: path })
    })
}

fn descend(action: &GroupAction, stab: &[u32], remaining: usize, path: &mut Vec<usize>) -> bool {
    if stab.len() == 1 {
        return true;
    }
    if remaining == 0 || exceeds_bound(stab.len(), action.domain_size(), remaining) {
        return false;
    }
    for w in moved_orbit_reps(action, stab) {
        let next = action.filter_fixing(stab, w);
        path.push(w);
        if descend(action, &next, remaining - 1, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Least point of each orbit of length > 1.
pub(crate) fn moved_orbit_reps(action: &GroupAction, elements: &[u32]) -> Vec<usize> {
    action
        .orbit_representatives(elements)
        .into_iter()
        .filter(|&w| action.orbit_under(elements, w).len() > 1)
        .collect()
}

/// True if a stabilizer of this order cannot be reduced to the identity with
/// `remaining` more points.
fn exceeds_bound(order: usize, domain: usize, remaining: usize) -> bool {
    let mut cap: u128 = 1;
    for _ in 0..remaining {
        cap = cap.saturating_mul(domain as u128);
        if cap >= order as u128 {
            return false;
        }
    }
    order as u128 > cap
}

/// Checks that the pointwise stabilizer of `points` is trivial.
pub fn is_base(action: &GroupAction, points: &[usize]) -> Result<bool> {
    Ok(action.pointwise_stabilizer_indices(points)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::permcore::action::*;
    use crate::permcore::group::{generate_group, DEFAULT_CAP};

    #[test]
    fn symmetric_natural_needs_n_minus_one() {
        for n in 1..=6 {
            let a = natural_action(Arc::new(symmetric_group(n, DEFAULT_CAP).unwrap()));
            let b = min_base_search(&a).unwrap();
            assert_eq!(b.size(), n - 1, "S_{n}");
            assert!(is_base(&a, &b.points).unwrap());
        }
    }

    #[test]
    fn dihedral_needs_two() {
        for n in 3..=9 {
            let a = dihedral_action(n, DEFAULT_CAP).unwrap();
            assert_eq!(min_base_search(&a).unwrap().size(), 2);
        }
    }

    #[test]
    fn pgl2_7_needs_three() {
        let a = pgl2_action(7, DEFAULT_CAP).unwrap();
        let b = min_base_search(&a).unwrap();
        assert_eq!(b.points, vec![0, 1, 2]);
        assert!(search_base(&a, 2).is_none());
    }

    #[test]
    fn regular_action_needs_one() {
        let a = natural_action(Arc::new(cyclic_group(3, DEFAULT_CAP).unwrap()));
        assert_eq!(min_base_search(&a).unwrap().points, vec![0]);
    }

    #[test]
    fn trivial_group_has_empty_base() {
        let a = natural_action(Arc::new(generate_group(2, vec![], DEFAULT_CAP).unwrap()));
        assert_eq!(min_base_search(&a).unwrap().size(), 0);
    }

    #[test]
    fn unfaithful_action_rejected() {
        let a = ksubset_action(3, 3, true, DEFAULT_CAP).unwrap();
        assert!(matches!(
            min_base_search(&a),
            Err(Error::NotFaithful { .. })
        ));
    }

    #[test]
    fn bound() {
        assert!(exceeds_bound(10, 3, 2));
        assert!(!exceeds_bound(9, 3, 2));
        assert!(!exceeds_bound(usize::MAX, 1000, 10));
    }
}
