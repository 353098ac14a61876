use std::collections::HashMap;
use std::sync::Arc;

use super::group::{generate_group, PermutationGroup, Subgroup};
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::par;

/// How domain points are presented to people.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainLabels {
    /// Plain 0-based points.
    Points,
    /// Sorted 0-based k-subsets of the underlying point set.
    Subsets(Vec<Vec<usize>>),
    /// Projective line over GF(q): point 0 is `[1:0]`, point `x + 1` is `[x:1]`.
    ProjectiveLine(u64),
}

/// An action of an enumerated group on `{0, …, domain_size - 1}`, tabulated
/// for every element.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: Arc<PermutationGroup>,
    domain_size: usize,
    table: Arc<[u32]>,
    labels: DomainLabels,
}

impl GroupAction {
    /// Tabulates `apply` over every element and point.
    pub fn from_fn<F>(
        group: Arc<PermutationGroup>,
        domain_size: usize,
        labels: DomainLabels,
        apply: F,
    ) -> Self
    where
        F: Fn(&Permutation, usize) -> usize + Send + Sync,
    {
        let rows = par::map_slice(group.elements(), |g| {
            (0..domain_size)
                .map(|w| apply(g, w) as u32)
                .collect::<Vec<u32>>()
        });
        let table: Arc<[u32]> = rows.into_iter().flatten().collect();
        Self {
            group,
            domain_size,
            table,
            labels,
        }
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn labels(&self) -> &DomainLabels {
        &self.labels
    }

    /// Image of `point` under the element with index `element`.
    #[inline]
    pub fn apply(&self, element: usize, point: usize) -> usize {
        self.table[element * self.domain_size + point] as usize
    }

    pub fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.domain_size {
            return Err(Error::PointOutOfRange {
                point,
                size: self.domain_size,
            });
        }
        Ok(())
    }

    /// The permutation of the domain induced by an element.
    pub fn image_permutation(&self, element: usize) -> Permutation {
        let row = &self.table[element * self.domain_size..(element + 1) * self.domain_size];
        Permutation::from_raw(row.into())
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        self.orbit_under(&self.all_elements(), point)
    }

    /// Orbit of `point` under an explicit element set, ascending.
    pub fn orbit_under(&self, elements: &[u32], point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.domain_size];
        for &g in elements {
            seen[self.apply(g as usize, point)] = true;
        }
        (0..self.domain_size).filter(|&w| seen[w]).collect()
    }

    /// Least point of each orbit of `elements`, ascending.
    pub fn orbit_representatives(&self, elements: &[u32]) -> Vec<usize> {
        let mut seen = vec![false; self.domain_size];
        let mut reps = Vec::new();
        for w in 0..self.domain_size {
            if seen[w] {
                continue;
            }
            reps.push(w);
            for &g in elements {
                seen[self.apply(g as usize, w)] = true;
            }
        }
        reps
    }

    pub fn is_transitive(&self) -> bool {
        self.domain_size <= 1 || self.orbit(0).len() == self.domain_size
    }

    /// Elements acting trivially on the domain.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| (0..self.domain_size).all(|w| self.apply(g, w) == w))
            .collect()
    }

    pub fn is_faithful(&self) -> bool {
        (1..self.group.order()).all(|g| (0..self.domain_size).any(|w| self.apply(g, w) != w))
    }

    pub fn ensure_faithful(&self) -> Result<()> {
        let kernel = self.kernel().len();
        if kernel != 1 {
            return Err(Error::NotFaithful { kernel });
        }
        Ok(())
    }

    /// Number of domain points fixed by an element.
    pub fn fixed_points(&self, element: usize) -> usize {
        (0..self.domain_size)
            .filter(|&w| self.apply(element, w) == w)
            .count()
    }

    pub(crate) fn all_elements(&self) -> Vec<u32> {
        (0..self.group.order() as u32).collect()
    }

    /// Members of `elements` fixing `point`.
    pub(crate) fn filter_fixing(&self, elements: &[u32], point: usize) -> Vec<u32> {
        elements
            .iter()
            .copied()
            .filter(|&g| self.apply(g as usize, point) == point)
            .collect()
    }

    /// Element indices of the pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer_indices(&self, points: &[usize]) -> Result<Vec<u32>> {
        let mut current = self.all_elements();
        for &w in points {
            self.check_point(w)?;
            current = self.filter_fixing(&current, w);
        }
        Ok(current)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<Subgroup> {
        self.pointwise_stabilizer(&[point])
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<Subgroup> {
        let idx = self.pointwise_stabilizer_indices(points)?;
        Ok(Subgroup::from_indices(
            self.group.clone(),
            idx.into_iter().map(|i| i as usize).collect(),
        ))
    }

    /// Human-readable label of a point: k-subsets are printed 1-based.
    pub fn point_label(&self, point: usize) -> String {
        match &self.labels {
            DomainLabels::Points => point.to_string(),
            DomainLabels::Subsets(subsets) => {
                let inner: Vec<String> =
                    subsets[point].iter().map(|x| (x + 1).to_string()).collect();
                format!("{{{}}}", inner.join(","))
            }
            DomainLabels::ProjectiveLine(_) => {
                if point == 0 {
                    "[1:0]".to_string()
                } else {
                    format!("[{}:1]", point - 1)
                }
            }
        }
    }
}

/// The group acting on `{0, …, degree-1}` through its own permutations.
pub fn natural_action(group: Arc<PermutationGroup>) -> GroupAction {
    let degree = group.degree();
    GroupAction::from_fn(group, degree, DomainLabels::Points, |g, w| g.apply(w))
}

/// `S_n` generated by a transposition and an `n`-cycle, at degree `n`.
pub fn symmetric_group(n: usize, cap: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        if n > 2 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
    }
    generate_group(n, gens, cap)
}

/// `A_n` generated by the 3-cycles `(0 1 i)`.
pub fn alternating_group(n: usize, cap: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    generate_group(n, gens, cap)
}

/// The cyclic group generated by an `n`-cycle.
pub fn cyclic_group(n: usize, cap: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    generate_group(n, vec![rot], cap)
}

/// `S_n` acting on its `k`-subsets (lexicographic order). Requires `n ≥ 2k`
/// unless `allow_small_n` is set.
pub fn ksubset_action(n: usize, k: usize, allow_small_n: bool, cap: usize) -> Result<GroupAction> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n (got n = {n}, k = {k})"
        )));
    }
    if n < 2 * k && !allow_small_n {
        return Err(Error::SubsetHypothesis { n, k });
    }
    let group = Arc::new(symmetric_group(n, cap)?);
    let subsets = k_subsets(n, k);
    let rank: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let domain = subsets.len();
    let subsets_for_fn = subsets.clone();
    Ok(GroupAction::from_fn(
        group,
        domain,
        DomainLabels::Subsets(subsets),
        move |g, w| {
            let mut image: Vec<usize> = subsets_for_fn[w].iter().map(|&x| g.apply(x)).collect();
            image.sort_unstable();
            rank[&image]
        },
    ))
}

/// All `k`-subsets of `{0, …, n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&c| factors.iter().all(|&f| pow_mod(c, (q - 1) / f, q) != 1))
        .expect("prime fields have primitive roots")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `PGL₂(q)` on the `q + 1` points of the projective line, for prime `q`.
///
/// Generated by the maps `x ↦ x + 1`, `x ↦ cx` (c a primitive root) and
/// `x ↦ 1/x`.
pub fn pgl2_action(q: u64, cap: usize) -> Result<GroupAction> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let degree = (q + 1) as usize;
    let c = primitive_root(q);
    // Point 0 is infinity, point x + 1 is the affine point x.
    let mobius = |f: &dyn Fn(Option<u64>) -> Option<u64>| -> Result<Permutation> {
        let images = (0..degree)
            .map(|p| {
                let x = if p == 0 { None } else { Some(p as u64 - 1) };
                match f(x) {
                    None => 0,
                    Some(y) => y as usize + 1,
                }
            })
            .collect();
        Permutation::from_images(images)
    };
    let translate = mobius(&|x| x.map(|x| (x + 1) % q))?;
    let scale = mobius(&|x| x.map(|x| x * c % q))?;
    let invert = mobius(&|x| match x {
        None => Some(0),
        Some(0) => None,
        Some(x) => Some(pow_mod(x, q - 2, q)),
    })?;
    let group = Arc::new(generate_group(degree, vec![translate, scale, invert], cap)?);
    Ok(GroupAction::from_fn(
        group,
        degree,
        DomainLabels::ProjectiveLine(q),
        |g, w| g.apply(w),
    ))
}

/// The dihedral group of order `2n` on the vertices of an `n`-gon, `n ≥ 3`.
pub fn dihedral_action(n: usize, cap: usize) -> Result<GroupAction> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "dihedral degree must be at least 3 (got {n})"
        )));
    }
    let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    let group = Arc::new(generate_group(n, vec![rot, refl], cap)?);
    Ok(natural_action(group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::group::DEFAULT_CAP;

    #[test]
    fn trivial_group_actions() {
        let g = Arc::new(generate_group(1, vec![], DEFAULT_CAP).unwrap());
        let a = natural_action(g);
        assert!(a.is_transitive());
        assert_eq!(a.point_stabilizer(0).unwrap().order(), 1);
        let g2 = Arc::new(generate_group(2, vec![], DEFAULT_CAP).unwrap());
        assert!(!natural_action(g2).is_transitive());
    }

    #[test]
    fn natural_action_transports_points() {
        let a = natural_action(Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap()));
        for g in 0..6 {
            for w in 0..3 {
                assert_eq!(a.apply(g, w), a.group().element(g).apply(w));
            }
        }
        assert_eq!(a.apply(0, 2), 2);
    }

    #[test]
    fn ksubset_domain_sizes() {
        assert_eq!(
            ksubset_action(4, 2, false, DEFAULT_CAP)
                .unwrap()
                .domain_size(),
            6
        );
        let s2 = ksubset_action(2, 1, false, DEFAULT_CAP).unwrap();
        assert_eq!(s2.domain_size(), 2);
        assert_eq!(s2.group().order(), 2);
        let a = ksubset_action(8, 4, false, DEFAULT_CAP).unwrap();
        assert_eq!(a.domain_size(), 70);
        assert!(a.is_transitive());
    }

    #[test]
    fn ksubset_hypothesis_and_override() {
        assert_eq!(
            ksubset_action(5, 3, false, DEFAULT_CAP).unwrap_err(),
            Error::SubsetHypothesis { n: 5, k: 3 }
        );
        assert_eq!(
            ksubset_action(5, 3, true, DEFAULT_CAP)
                .unwrap()
                .domain_size(),
            10
        );
        assert!(ksubset_action(3, 0, true, DEFAULT_CAP).is_err());
    }

    #[test]
    fn k_subsets_are_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn pgl2_orders() {
        let a = pgl2_action(7, DEFAULT_CAP).unwrap();
        assert_eq!((a.domain_size(), a.group().order()), (8, 336));
        let a = pgl2_action(2, DEFAULT_CAP).unwrap();
        assert_eq!((a.domain_size(), a.group().order()), (3, 6));
        let a = pgl2_action(3, DEFAULT_CAP).unwrap();
        assert_eq!((a.domain_size(), a.group().order()), (4, 24));
        assert_eq!(pgl2_action(9, DEFAULT_CAP).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn pgl2_7_stabilizers() {
        let a = pgl2_action(7, DEFAULT_CAP).unwrap();
        for w in 0..8 {
            assert_eq!(a.point_stabilizer(w).unwrap().order(), 42);
        }
        assert_eq!(a.pointwise_stabilizer(&[0, 3, 5]).unwrap().order(), 1);
        assert_eq!(a.pointwise_stabilizer(&[6, 1]).unwrap().order(), 6);
        assert_eq!(a.point_label(0), "[1:0]");
        assert_eq!(a.point_label(4), "[3:1]");
    }

    #[test]
    fn dihedral_orders_and_stabilizers() {
        assert_eq!(dihedral_action(3, DEFAULT_CAP).unwrap().group().order(), 6);
        let d4 = dihedral_action(4, DEFAULT_CAP).unwrap();
        assert_eq!(d4.group().order(), 8);
        assert_eq!(d4.group().num_classes(), 5);
        let d12 = dihedral_action(12, DEFAULT_CAP).unwrap();
        assert_eq!(d12.group().order(), 24);
        for w in 0..12 {
            assert_eq!(d12.point_stabilizer(w).unwrap().order(), 2);
        }
        assert!(dihedral_action(2, DEFAULT_CAP).is_err());
    }

    #[test]
    fn pointwise_stabilizer_edges() {
        let a = natural_action(Arc::new(symmetric_group(4, DEFAULT_CAP).unwrap()));
        assert_eq!(a.pointwise_stabilizer(&[]).unwrap().order(), 24);
        assert_eq!(a.pointwise_stabilizer(&[0, 1, 2, 3]).unwrap().order(), 1);
        assert!(matches!(
            a.pointwise_stabilizer(&[4]),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn faithfulness() {
        assert!(ksubset_action(6, 3, false, DEFAULT_CAP)
            .unwrap()
            .is_faithful());
        let unfaithful = ksubset_action(3, 3, true, DEFAULT_CAP).unwrap();
        assert_eq!(unfaithful.kernel().len(), 6);
        assert!(unfaithful.ensure_faithful().is_err());
    }

    #[test]
    fn subset_labels_are_one_based() {
        let a = ksubset_action(4, 2, false, DEFAULT_CAP).unwrap();
        assert_eq!(a.point_label(0), "{1,2}");
    }

    #[test]
    fn small_groups() {
        assert_eq!(alternating_group(5, DEFAULT_CAP).unwrap().order(), 60);
        assert_eq!(cyclic_group(7, DEFAULT_CAP).unwrap().order(), 7);
        assert_eq!(symmetric_group(1, DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(symmetric_group(2, DEFAULT_CAP).unwrap().order(), 2);
    }
}
