use std::borrow::Borrow;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree || seen[x] {
                return Err(Error::NotABijection { degree });
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_raw(images: Box<[u32]>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Self { images }
    }

    /// Builds a permutation from disjoint cycles given as 0-based point lists.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::NotABijection { degree });
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `(self ∘ other)(ω) = self(other(ω))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    /// `self ∘ g ∘ self⁻¹`, computed without forming the inverse.
    #[inline]
    pub(crate) fn conjugate_of(&self, g: &Self) -> Self {
        let mut images = vec![0u32; self.degree()].into_boxed_slice();
        for w in 0..self.degree() {
            images[self.images[w] as usize] = self.images[g.images[w] as usize];
        }
        Self { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.degree()].into_boxed_slice();
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Self { images }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }
}

impl Borrow<[u32]> for Permutation {
    fn borrow(&self) -> &[u32] {
        &self.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let q = p(&[1, 0, 2]);
        assert_eq!(Permutation::identity(3).compose(&q).unwrap(), q);
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = p(&[1, 0]);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));
    }

    #[test]
    fn three_cycle_squared_is_inverse() {
        let c = p(&[1, 2, 0]);
        let sq = c.compose(&c).unwrap();
        assert_eq!(sq, c.inverse());
        assert_eq!(sq, p(&[2, 0, 1]));
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let ab = a.compose(&b).unwrap();
        for w in 0..3 {
            assert_eq!(ab.apply(w), a.apply(b.apply(w)));
        }
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = p(&[0, 1]).compose(&p(&[0, 1, 2])).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn conjugate_matches_explicit_product() {
        let x = p(&[2, 0, 3, 1]);
        let g = p(&[1, 0, 2, 3]);
        let explicit = x.compose(&g).unwrap().compose(&x.inverse()).unwrap();
        assert_eq!(x.conjugate_of(&g), explicit);
    }

    #[test]
    fn cycle_data() {
        let g = Permutation::from_cycles(6, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(g.cycles(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(g.cycle_type(), vec![3, 2, 1]);
        assert_eq!(g.order(), 6);
        assert!(!g.is_even());
        assert_eq!(g.fixed_points(), 1);
        assert_eq!(g.to_string(), "(0 1)(2 3 4)");
    }
}
