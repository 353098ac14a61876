use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::par;
use crate::permcore::{GroupAction, PermutationGroup, Subgroup};

/// A function on the conjugacy classes of a group, with exact values in
/// `ℚ(ζ_e)` for `e` the group exponent.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<PermutationGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// Values are moved into `ℚ(ζ_e)`, `e` the group exponent; each must lie
    /// in that field.
    pub fn new(group: Arc<PermutationGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        let r = group.num_classes();
        if values.len() != r {
            return Err(Error::InvalidParameter(format!(
                "expected {r} class values, got {}",
                values.len()
            )));
        }
        let e = group.exponent();
        let values = values
            .into_iter()
            .map(|v| {
                v.lift(num_integer::lcm(e, v.conductor()))
                    .descend(e)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("value {v} does not lie in Q(E({e}))"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { group, values })
    }

    pub fn from_integers(group: Arc<PermutationGroup>, values: &[i64]) -> Result<Self> {
        let e = group.exponent();
        Self::new(
            group,
            values
                .iter()
                .map(|&v| Cyclotomic::from_integer(e, v))
                .collect(),
        )
    }

    pub fn trivial(group: Arc<PermutationGroup>) -> Self {
        let e = group.exponent();
        let values = vec![Cyclotomic::one(e); group.num_classes()];
        Self { group, values }
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn conductor(&self) -> usize {
        self.group.exponent()
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn is_trivial(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.is_rational() && v.coeffs()[0].is_one())
    }

    /// True when every value is `1` or `-1`.
    pub fn is_sign_valued(&self) -> bool {
        let one = BigInt::one();
        self.values.iter().all(|v| {
            v.to_integer()
                .is_some_and(|n| n == one || n == -one.clone())
        })
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// `self^l`, with `self^0` the trivial character.
    pub fn power(&self, l: u32) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.pow(l)).collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn to_json(&self) -> ClassFunctionJson {
        let classes = self.group.classes();
        ClassFunctionJson {
            conductor: self.conductor(),
            classes: self
                .values
                .iter()
                .enumerate()
                .map(|(c, v)| ClassValueJson {
                    size: classes.sizes[c],
                    rep_cycles: classes.representatives[c].cycles(),
                    value: v.coeff_strings(),
                })
                .collect(),
        }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.values.iter().map(ToString::to_string))
            .finish()
    }
}

/// Serialized form of a class function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunctionJson {
    pub conductor: usize,
    pub classes: Vec<ClassValueJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValueJson {
    pub size: usize,
    pub rep_cycles: Vec<Vec<usize>>,
    /// Power-basis coefficients over `ζ_conductor`, as `"p"` or `"p/q"`.
    pub value: Vec<String>,
}

impl ClassFunctionJson {
    /// Rebuilds the class function on `group`, checking that the class sizes
    /// line up.
    pub fn to_class_function(&self, group: Arc<PermutationGroup>) -> Result<ClassFunction> {
        let classes = group.classes();
        if self.classes.len() != classes.len()
            || self
                .classes
                .iter()
                .zip(&classes.sizes)
                .any(|(c, &s)| c.size != s)
        {
            return Err(Error::Parse("class layout does not match the group".into()));
        }
        let values = self
            .classes
            .iter()
            .map(|c| {
                let coeffs = c
                    .value
                    .iter()
                    .map(|s| {
                        s.parse::<BigRational>()
                            .map_err(|e| Error::Parse(e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Cyclotomic::from_coeffs(self.conductor, coeffs)
                    .ok_or_else(|| Error::Parse("wrong number of coefficients".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(group, values)
    }
}

/// `|G|⁻¹ Σ_g f1(g) · conj(f2(g))`, summed class by class.
pub fn inner_product(f1: &ClassFunction, f2: &ClassFunction) -> Result<Cyclotomic> {
    f1.same_group(f2)?;
    let sizes = &f1.group.classes().sizes;
    let terms = par::map_range(sizes.len(), |c| {
        let t = &f1.values[c] * &f2.values[c].conj();
        t.scale(&BigRational::from_integer(sizes[c].into()))
    });
    let total = terms
        .iter()
        .fold(Cyclotomic::zero(f1.conductor()), |acc, t| &acc + t);
    Ok(total.scale(&BigRational::new(BigInt::one(), f1.group.order().into())))
}

/// Number of fixed points of each class representative.
pub fn permutation_character(action: &GroupAction) -> ClassFunction {
    let group = action.group().clone();
    let values: Vec<i64> = group
        .classes()
        .rep_indices
        .iter()
        .map(|&g| action.fixed_points(g) as i64)
        .collect();
    ClassFunction::from_integers(group, &values).expect("class count matches")
}

/// Restriction to a subgroup: each subgroup class takes the value of the
/// parent class containing it.
pub fn restrict(f: &ClassFunction, sub: &Subgroup) -> Result<ClassFunction> {
    if !Arc::ptr_eq(f.group(), sub.parent()) {
        return Err(Error::GroupMismatch);
    }
    let values = sub.fusion().iter().map(|&c| f.values[c].clone()).collect();
    ClassFunction::new(sub.group().clone(), values)
}

/// Induction to the parent group:
/// `α↑(g) = |H|⁻¹ Σ_{x ∈ G, x g x⁻¹ ∈ H} α(x g x⁻¹)`.
pub fn induce(alpha: &ClassFunction, sub: &Subgroup) -> Result<ClassFunction> {
    if !Arc::ptr_eq(alpha.group(), sub.group()) {
        return Err(Error::GroupMismatch);
    }
    let parent = sub.parent().clone();
    let e = parent.exponent();
    let inv_order = BigRational::new(BigInt::one(), sub.order().into());
    let values = sub
        .conjugation_counts()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .fold(Cyclotomic::zero(e), |acc, (d, &n)| {
                    &acc + &alpha.values[d].scale(&BigRational::from_integer(n.into()))
                })
                .scale(&inv_order)
        })
        .collect();
    ClassFunction::new(parent, values)
}

/// Parity of each class representative as `±1`.
pub fn sign_character(group: Arc<PermutationGroup>) -> ClassFunction {
    let values: Vec<i64> = group
        .classes()
        .representatives
        .iter()
        .map(|g| if g.is_even() { 1 } else { -1 })
        .collect();
    ClassFunction::from_integers(group, &values).expect("class count matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::*;

    fn s3_natural() -> GroupAction {
        natural_action(Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap()))
    }

    fn int(v: &Cyclotomic) -> i64 {
        i64::try_from(v.to_integer().unwrap()).unwrap()
    }

    // Class order in S3 is (identity, 3-cycles, transpositions).

    #[test]
    fn trivial_has_unit_norm() {
        let a = s3_natural();
        let one = ClassFunction::trivial(a.group().clone());
        assert_eq!(int(&inner_product(&one, &one).unwrap()), 1);
    }

    #[test]
    fn s3_sign_against_powers_of_chi() {
        let a = s3_natural();
        let chi = permutation_character(&a);
        assert_eq!(
            chi.values().iter().map(int).collect::<Vec<_>>(),
            vec![3, 0, 1]
        );
        let sgn = sign_character(a.group().clone());
        assert_eq!(int(&inner_product(&sgn, &chi).unwrap()), 0);
        let chi2 = chi.power(2);
        assert_eq!(
            chi2.values().iter().map(int).collect::<Vec<_>>(),
            vec![9, 0, 1]
        );
        assert_eq!(int(&inner_product(&sgn, &chi2).unwrap()), 1);
    }

    #[test]
    fn powers_zero_and_one() {
        let chi = permutation_character(&s3_natural());
        assert!(chi.power(0).is_trivial());
        assert_eq!(chi.power(1), chi);
    }

    #[test]
    fn induce_trivial_from_point_stabilizer() {
        let a = s3_natural();
        let h = a.point_stabilizer(0).unwrap();
        let one_h = ClassFunction::trivial(h.group().clone());
        let ind = induce(&one_h, &h).unwrap();
        assert_eq!(
            ind.values().iter().map(int).collect::<Vec<_>>(),
            vec![3, 0, 1]
        );
        assert_eq!(ind, permutation_character(&a));
    }

    #[test]
    fn restriction_of_sign() {
        let a = natural_action(Arc::new(symmetric_group(4, DEFAULT_CAP).unwrap()));
        let h = a.point_stabilizer(3).unwrap();
        let res = restrict(&sign_character(a.group().clone()), &h).unwrap();
        assert_eq!(res, sign_character(h.group().clone()));
        let one = restrict(&ClassFunction::trivial(a.group().clone()), &h).unwrap();
        assert!(one.is_trivial());
    }

    #[test]
    fn sign_values() {
        let g = Arc::new(symmetric_group(5, DEFAULT_CAP).unwrap());
        let sgn = sign_character(g.clone());
        let cl = g.classes();
        for (c, rep) in cl.representatives.iter().enumerate() {
            let expect = if rep.cycle_type() == vec![5] {
                1
            } else if rep.cycle_type() == vec![2, 1, 1, 1] {
                -1
            } else if rep.is_identity() {
                1
            } else {
                continue;
            };
            assert_eq!(int(sgn.value(c)), expect);
        }
    }

    #[test]
    fn group_mismatch() {
        let a = s3_natural();
        let b = s3_natural();
        let f = ClassFunction::trivial(a.group().clone());
        let g = ClassFunction::trivial(b.group().clone());
        assert_eq!(inner_product(&f, &g).unwrap_err(), Error::GroupMismatch);
        assert_eq!(f.product(&g).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn json_round_trip() {
        let a = s3_natural();
        let chi = permutation_character(&a);
        let json = chi.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: ClassFunctionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_class_function(a.group().clone()).unwrap(), chi);
        assert_eq!(json.classes[2].rep_cycles.len(), 1);
    }
}
