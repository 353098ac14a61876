use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::par;

/// Default upper bound on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 10_000_000;

/// A finite permutation group with all of its elements enumerated.
///
/// Element 0 is always the identity. Groups built by [`generate_group`] list
/// their elements in breadth-first order from the identity, multiplying by
/// the generators on the right in the order given.
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    classes: OnceLock<ConjugacyClasses>,
}

/// Conjugacy classes of a [`PermutationGroup`].
///
/// Class 0 is the identity class. The remaining classes are sorted by size,
/// then by the position of their representative in the element list; the
/// representative is the earliest element of its class.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub rep_indices: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Enumerates the group generated by `generators` acting on `degree` points.
///
/// An empty generator list yields the trivial group.
pub fn generate_group(
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
) -> Result<PermutationGroup> {
    for g in &generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0u32)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &generators {
            let h = elements[i].compose_unchecked(s);
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(h.clone(), elements.len() as u32);
            queue.push_back(elements.len());
            elements.push(h);
        }
    }
    Ok(PermutationGroup {
        degree,
        generators,
        elements,
        index,
        classes: OnceLock::new(),
    })
}

impl PermutationGroup {
    /// Wraps an element list already known to be closed, identity first.
    pub(crate) fn from_closed_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements[0].is_identity());
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Self {
            degree,
            generators,
            elements,
            index,
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, images: &[u32]) -> Option<usize> {
        self.index.get(images).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose_unchecked(&self.elements[b]);
        self.index[&p] as usize
    }

    /// Index of `x g x⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        let p = self.elements[x].conjugate_of(&self.elements[g]);
        self.index[&p] as usize
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| compute_classes(self))
    }

    pub fn num_classes(&self) -> usize {
        self.classes().len()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.classes()
            .representatives
            .iter()
            .map(Permutation::order)
            .fold(1, num_integer::lcm)
    }

    /// Class containing the `k`-th power of the representative of class `c`.
    pub fn power_class(&self, c: usize, k: usize) -> usize {
        let classes = self.classes();
        let rep = &classes.representatives[c];
        let mut acc = Permutation::identity(self.degree);
        for _ in 0..k % rep.order() {
            acc = acc.compose_unchecked(rep);
        }
        classes.class_of[self.index[&acc] as usize] as usize
    }

    /// Class containing the inverse of the representative of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let classes = self.classes();
        let inv = classes.representatives[c].inverse();
        classes.class_of[self.index[&inv] as usize] as usize
    }

    /// Order of the centralizer of an element of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.classes().sizes[c]
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Conjugacy classes of `group` (computed once and cached on the group).
pub fn conjugacy_classes(group: &PermutationGroup) -> &ConjugacyClasses {
    group.classes()
}

fn compute_classes(group: &PermutationGroup) -> ConjugacyClasses {
    let n = group.order();
    let mut class_of = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        class_of[start] = id;
        let mut members = vec![start as u32];
        let mut cursor = 0;
        while cursor < members.len() {
            let g = &group.elements[members[cursor] as usize];
            cursor += 1;
            for s in &group.generators {
                let h = s.conjugate_of(g);
                let j = group.index[&h] as usize;
                if class_of[j] == u32::MAX {
                    class_of[j] = id;
                    members.push(j as u32);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }
    // `start` ascends, so members[0] of each class is its earliest element.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order[1..].sort_by_key(|&c| (raw[c].len(), raw[c][0]));
    let mut relabel = vec![0u32; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = relabel[*c as usize];
    }
    let members: Vec<Vec<u32>> = order.iter().map(|&c| std::mem::take(&mut raw[c])).collect();
    ConjugacyClasses {
        representatives: members
            .iter()
            .map(|m| group.elements[m[0] as usize].clone())
            .collect(),
        rep_indices: members.iter().map(|m| m[0] as usize).collect(),
        sizes: members.iter().map(Vec::len).collect(),
        class_of,
        members,
    }
}

/// A subgroup of an enumerated group, also enumerated as a group in its own
/// right (elements listed in the parent's order).
pub struct Subgroup {
    parent: Arc<PermutationGroup>,
    indices: Vec<usize>,
    group: Arc<PermutationGroup>,
    fusion: OnceLock<Vec<usize>>,
    conjugation_counts: OnceLock<Vec<Vec<u64>>>,
}

impl Subgroup {
    /// Builds the subgroup with the given parent element indices. The set must
    /// be closed under multiplication; pointwise stabilizers always are.
    pub fn from_indices(parent: Arc<PermutationGroup>, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        debug_assert_eq!(indices.first(), Some(&0));
        let elements: Vec<Permutation> =
            indices.iter().map(|&i| parent.element(i).clone()).collect();
        let generators = greedy_generators(&parent, &indices);
        let group = Arc::new(PermutationGroup::from_closed_elements(
            parent.degree(),
            generators,
            elements,
        ));
        Self {
            parent,
            indices,
            group,
            fusion: OnceLock::new(),
            conjugation_counts: OnceLock::new(),
        }
    }

    /// Checks closure before building; used for subgroups supplied by callers.
    pub fn try_from_indices(parent: Arc<PermutationGroup>, indices: Vec<usize>) -> Result<Self> {
        let mut member = vec![false; parent.order()];
        for &i in &indices {
            if i >= parent.order() {
                return Err(Error::InvalidParameter(format!(
                    "element index {i} out of range"
                )));
            }
            member[i] = true;
        }
        if !member[0] {
            return Err(Error::InvalidParameter(
                "subgroup must contain the identity".into(),
            ));
        }
        let set: Vec<usize> = (0..parent.order()).filter(|&i| member[i]).collect();
        let closed = par::all_range(set.len(), |a| {
            set.iter().all(|&b| member[parent.mul(set[a], b)])
        });
        if !closed {
            return Err(Error::InvalidParameter("element set is not closed".into()));
        }
        Ok(Self::from_indices(parent, set))
    }

    pub fn whole(parent: Arc<PermutationGroup>) -> Self {
        let all = (0..parent.order()).collect();
        Self::from_indices(parent, all)
    }

    pub fn parent(&self) -> &Arc<PermutationGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    /// Parent indices of the subgroup's elements, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.len() == 1
    }

    /// For each class of the subgroup, the parent class containing it.
    pub fn fusion(&self) -> &[usize] {
        self.fusion.get_or_init(|| {
            let pc = self.parent.classes();
            self.group
                .classes()
                .rep_indices
                .iter()
                .map(|&r| pc.class_of[self.indices[r]] as usize)
                .collect()
        })
    }

    /// `counts[c][d]` is the number of `x` in the parent with `x g_c x⁻¹` in
    /// class `d` of the subgroup, where `g_c` represents parent class `c`.
    /// Evaluated by conjugating each representative by every parent element.
    pub fn conjugation_counts(&self) -> &[Vec<u64>] {
        self.conjugation_counts.get_or_init(|| {
            let parent = &self.parent;
            let to_sub = self.parent_to_sub();
            let sub_classes = self.group.classes();
            let h = sub_classes.len();
            parent
                .classes()
                .representatives
                .iter()
                .map(|g| {
                    par::fold_range(
                        parent.order(),
                        || vec![0u64; h],
                        |acc, x| {
                            let y = parent.element(x).conjugate_of(g);
                            if let Some(k) = to_sub[parent.index[&y] as usize] {
                                acc[sub_classes.class_of[k as usize] as usize] += 1;
                            }
                        },
                        |mut a, b| {
                            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                            a
                        },
                    )
                })
                .collect()
        })
    }

    /// Maps each parent element index to its index in the subgroup, if any.
    pub fn parent_to_sub(&self) -> Vec<Option<u32>> {
        let mut map = vec![None; self.parent.order()];
        for (k, &i) in self.indices.iter().enumerate() {
            map[i] = Some(k as u32);
        }
        map
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent_order", &self.parent.order())
            .field("order", &self.order())
            .finish()
    }
}

/// Walks the (closed) index set in order, keeping each element not already in
/// the subgroup generated by the earlier picks.
fn greedy_generators(parent: &PermutationGroup, indices: &[usize]) -> Vec<Permutation> {
    let mut in_span = vec![false; parent.order()];
    in_span[0] = true;
    let mut span = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    for &i in indices {
        if in_span[i] {
            continue;
        }
        gens.push(i);
        // Re-close: every current element times every generator.
        let mut cursor = 0;
        while cursor < span.len() {
            let a = span[cursor];
            cursor += 1;
            for &s in &gens {
                let b = parent.mul(a, s);
                if !in_span[b] {
                    in_span[b] = true;
                    span.push(b);
                }
            }
        }
        if span.len() == indices.len() {
            break;
        }
    }
    gens.into_iter()
        .map(|i| parent.element(i).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermutationGroup {
        let t = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let c = Permutation::from_images(vec![1, 2, 0]).unwrap();
        generate_group(3, vec![t, c], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = generate_group(3, vec![], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.num_classes(), 1);
    }

    #[test]
    fn s3_order_and_classes() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        let cl = g.classes();
        assert_eq!(cl.sizes, vec![1, 2, 3]);
        assert_eq!(cl.representatives[1].cycle_type(), vec![3]);
        assert_eq!(cl.representatives[2].cycle_type(), vec![2, 1]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn dihedral_generators_give_order_2n() {
        let n = 5;
        let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        let g = generate_group(n, vec![rot, refl], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 10);
    }

    #[test]
    fn cap_is_enforced() {
        let t = Permutation::from_images(vec![1, 0, 2, 3]).unwrap();
        let c = Permutation::from_images(vec![1, 2, 3, 0]).unwrap();
        let err = generate_group(4, vec![t, c], 10).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 10 });
    }

    #[test]
    fn generator_degree_checked() {
        let t = Permutation::from_images(vec![1, 0]).unwrap();
        assert!(matches!(
            generate_group(3, vec![t], DEFAULT_CAP),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn power_and_inverse_classes() {
        let g = s3();
        assert_eq!(g.power_class(1, 2), 1);
        assert_eq!(g.power_class(1, 3), 0);
        assert_eq!(g.power_class(2, 2), 0);
        assert_eq!(g.inverse_class(1), 1);
    }

    #[test]
    fn subgroup_generators_span_it() {
        let g = Arc::new(s3());
        let stab: Vec<usize> = (0..g.order())
            .filter(|&i| g.element(i).apply(2) == 2)
            .collect();
        let h = Subgroup::from_indices(g.clone(), stab);
        assert_eq!(h.order(), 2);
        assert_eq!(h.group().generators().len(), 1);
        assert_eq!(h.fusion(), &[0, 2]);
        let t = (0..6).find(|&i| g.element(i).order() == 2).unwrap();
        let c = (0..6).find(|&i| g.element(i).order() == 3).unwrap();
        assert!(Subgroup::try_from_indices(g.clone(), vec![0, t, c]).is_err());
        let c2 = g.mul(c, c);
        assert_eq!(
            Subgroup::try_from_indices(g, vec![0, c, c2])
                .unwrap()
                .order(),
            3
        );
    }
}
