//! Exact character tables.
//!
//! Central characters are found as common eigenvectors of the class
//! multiplication matrices over a prime field `GF(p)` with `p ≡ 1 (mod e)`,
//! `e` the group exponent, and `p > 2√|G|`. Character values mod `p` are then
//! lifted to `ℚ(ζ_e)` by recovering, for each class, the eigenvalue
//! multiplicities of a representing matrix from the values on its powers.
//! Every table is checked for exact row and column orthogonality before it is
//! returned.

pub mod modp;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classfun::{inner_product, ClassFunction, ClassFunctionJson, Cyclotomic};
use crate::error::{Error, Result};
use crate::par;
use crate::permcore::PermutationGroup;
use modp::{prime_above, Fp};

/// The irreducible characters of a group.
#[derive(Clone)]
pub struct CharacterTable {
    group: Arc<PermutationGroup>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn get(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Index of an irreducible equal to `f`, if any.
    pub fn position(&self, f: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|x| x == f)
    }

    pub fn to_json(&self) -> CharacterTableJson {
        let classes = self.group.classes();
        CharacterTableJson {
            order: self.group.order(),
            conductor: self.group.exponent(),
            classes: (0..classes.len())
                .map(|c| ClassInfoJson {
                    size: classes.sizes[c],
                    rep_cycles: classes.representatives[c].cycles(),
                    cycle_type: classes.representatives[c].cycle_type(),
                })
                .collect(),
            irreducibles: self
                .irreducibles
                .iter()
                .zip(&self.degrees)
                .map(|(chi, &degree)| IrreducibleJson {
                    degree,
                    display: chi.values().iter().map(ToString::to_string).collect(),
                    character: chi.to_json(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub order: usize,
    pub conductor: usize,
    pub classes: Vec<ClassInfoJson>,
    pub irreducibles: Vec<IrreducibleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfoJson {
    pub size: usize,
    pub rep_cycles: Vec<Vec<usize>>,
    pub cycle_type: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleJson {
    pub degree: u64,
    pub display: Vec<String>,
    pub character: ClassFunctionJson,
}

/// Computes and verifies the full character table of `group`.
pub fn character_table(group: &Arc<PermutationGroup>) -> Result<CharacterTable> {
    let order = group.order() as u64;
    let r = group.num_classes();
    let e = group.exponent() as u64;
    let field = Fp::new(prime_above(e, 2 * (order as f64).sqrt().ceil() as u64));

    let omegas = central_characters(group, field)?;
    if omegas.len() != r {
        return Err(Error::TableVerification(format!(
            "found {} central characters for {r} classes",
            omegas.len()
        )));
    }
    let zeta = field.pow(field.primitive_root(), (field.p - 1) / e);
    let powers = power_maps(group);
    let mut rows: Vec<(u64, ClassFunction)> = omegas
        .iter()
        .map(|omega| lift_character(group, field, zeta, &powers, omega))
        .collect::<Result<_>>()?;
    rows.sort_by(|(da, a), (db, b)| {
        b.is_trivial()
            .cmp(&a.is_trivial())
            .then(da.cmp(db))
            .then_with(|| {
                a.values()
                    .iter()
                    .zip(b.values())
                    .map(|(x, y)| x.cmp_coeffs(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    let (degrees, irreducibles) = rows.into_iter().unzip();
    let table = CharacterTable {
        group: group.clone(),
        irreducibles,
        degrees,
    };
    verify_table(&table)?;
    Ok(table)
}

/// `structure[j][k][l]` = number of `x ∈ C_j` with `x⁻¹ g_l ∈ C_k`, mod p.
fn class_structure_constants(group: &PermutationGroup, field: Fp) -> Vec<Vec<Vec<u64>>> {
    let classes = group.classes();
    let r = classes.len();
    par::map_range(r, |j| {
        let mut counts = vec![vec![0u64; r]; r];
        for &x in &classes.members[j] {
            let xinv = group.element(x as usize).inverse();
            for (l, rep) in classes.representatives.iter().enumerate() {
                let y = xinv.compose(rep).expect("same degree");
                let k = classes.class_of[group.index_of(y.images()).expect("closed")] as usize;
                counts[k][l] += 1;
            }
        }
        for row in counts.iter_mut() {
            for v in row.iter_mut() {
                *v %= field.p;
            }
        }
        counts
    })
}

/// Simultaneous eigenvectors `ω` of the class matrices, normalized so that
/// `ω[0] = 1`; `ω[l] = |C_l| χ(g_l) / χ(1)` mod p.
fn central_characters(group: &PermutationGroup, field: Fp) -> Result<Vec<Vec<u64>>> {
    let r = group.num_classes();
    let structure = class_structure_constants(group, field);
    // Each space is an RREF basis (rows) with its pivot columns.
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![field.rref(identity)];
    for matrix in structure.iter().skip(1) {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for (basis, pivots) in spaces {
            if basis.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            next.extend(split_space(field, matrix, &basis, &pivots)?);
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|(basis, _)| {
            if basis.len() != 1 {
                return Err(Error::TableVerification(
                    "class matrices failed to separate an eigenspace".into(),
                ));
            }
            let v = &basis[0];
            if v[0] == 0 {
                return Err(Error::TableVerification(
                    "eigenvector vanishes at the identity".into(),
                ));
            }
            let inv = field.inv(v[0]);
            Ok(v.iter().map(|&x| field.mul(x, inv)).collect())
        })
        .collect()
}

/// A subspace in reduced echelon form with its pivot columns.
type Space = (Vec<Vec<u64>>, Vec<usize>);

/// Splits a subspace into the eigenspaces of `matrix` restricted to it.
fn split_space(
    field: Fp,
    matrix: &[Vec<u64>],
    basis: &[Vec<u64>],
    pivots: &[usize],
) -> Result<Vec<Space>> {
    let r = matrix.len();
    let d = basis.len();
    // Column i of `restricted` holds the coordinates of matrix·basis[i].
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|k| (0..r).fold(0, |acc, l| field.add(acc, field.mul(matrix[k][l], b[l]))))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|i2| (0..d).map(|i| images[i][pivots[i2]]).collect())
        .collect();
    let eigenvalues = field.roots(&field.char_poly(&restricted));
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { field.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let coords = field.null_space(&shifted, d);
        total += coords.len();
        let vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                (0..r)
                    .map(|l| (0..d).fold(0, |acc, i| field.add(acc, field.mul(c[i], basis[i][l]))))
                    .collect()
            })
            .collect();
        out.push(field.rref(vectors));
    }
    if total != d {
        return Err(Error::TableVerification(
            "class matrix is not diagonalizable over the chosen prime field".into(),
        ));
    }
    Ok(out)
}

/// `powers[c][k]` is the class of `g_c^k` for `k` below the order of `g_c`.
fn power_maps(group: &PermutationGroup) -> Vec<Vec<usize>> {
    let classes = group.classes();
    par::map_slice(&classes.representatives, |rep| {
        let mut out = Vec::with_capacity(rep.order());
        let mut acc = crate::permcore::Permutation::identity(group.degree());
        for _ in 0..rep.order() {
            out.push(classes.class_of[group.index_of(acc.images()).expect("closed")] as usize);
            acc = acc.compose(rep).expect("same degree");
        }
        out
    })
}

fn lift_character(
    group: &Arc<PermutationGroup>,
    field: Fp,
    zeta: u64,
    powers: &[Vec<usize>],
    omega: &[u64],
) -> Result<(u64, ClassFunction)> {
    let classes = group.classes();
    let order = group.order() as u64;
    let e = group.exponent();
    // Σ_l ω_l ω_{l*} / |C_l| = |G| / χ(1)².
    let s = (0..classes.len()).fold(0, |acc, l| {
        let inv_l = group.inverse_class(l);
        let term = field.mul(
            field.mul(omega[l], omega[inv_l]),
            field.inv(field.from_usize(classes.sizes[l])),
        );
        field.add(acc, term)
    });
    if s == 0 {
        return Err(Error::TableVerification(
            "degenerate central character".into(),
        ));
    }
    let d2 = field.mul(field.from_usize(order as usize), field.inv(s));
    let degree = (1..=(order as f64).sqrt() as u64 + 1)
        .find(|&d| order.is_multiple_of(d) && field.mul(d, d) == d2)
        .ok_or_else(|| Error::TableVerification("no admissible character degree".into()))?;
    let modp_values: Vec<u64> = (0..classes.len())
        .map(|l| {
            field.mul(
                field.mul(omega[l], degree),
                field.inv(field.from_usize(classes.sizes[l])),
            )
        })
        .collect();
    let values = (0..classes.len())
        .map(|l| {
            let o = powers[l].len();
            let step = e / o;
            let zo_inv = field.inv(field.pow(zeta, step as u64));
            let o_inv = field.inv(o as u64);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for s in 0..o {
                let w = field.pow(zo_inv, s as u64);
                let sum = (0..o).fold(0, |acc, k| {
                    field.add(
                        acc,
                        field.mul(modp_values[powers[l][k]], field.pow(w, k as u64)),
                    )
                });
                let mult = field.mul(sum, o_inv);
                if mult > degree {
                    return Err(Error::TableVerification(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                total += mult;
                if mult > 0 {
                    terms.push((s * step, BigRational::from_integer(mult.into())));
                }
            }
            if total != degree {
                return Err(Error::TableVerification(
                    "eigenvalue multiplicities do not sum to the degree".into(),
                ));
            }
            Ok(Cyclotomic::from_power_terms(e, terms))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, ClassFunction::new(group.clone(), values)?))
}

/// Exact row and column orthogonality plus the degree checks.
fn verify_table(table: &CharacterTable) -> Result<()> {
    let group = &table.group;
    let r = group.num_classes();
    let order = group.order() as u64;
    if table.len() != r {
        return Err(Error::TableVerification(
            "wrong number of irreducibles".into(),
        ));
    }
    if !table.irreducibles[0].is_trivial() {
        return Err(Error::TableVerification(
            "first row is not the trivial character".into(),
        ));
    }
    if table.degrees.iter().map(|d| d * d).sum::<u64>() != order
        || table.degrees.iter().any(|d| !order.is_multiple_of(*d))
    {
        return Err(Error::TableVerification(
            "degrees inconsistent with the group order".into(),
        ));
    }
    let rows_ok = par::all_range(r * r, |ij| {
        let (i, j) = (ij / r, ij % r);
        if j < i {
            return true;
        }
        let ip = inner_product(&table.irreducibles[i], &table.irreducibles[j]).expect("same group");
        ip == Cyclotomic::from_integer(ip.conductor(), i64::from(i == j))
    });
    if !rows_ok {
        return Err(Error::TableVerification("row orthogonality fails".into()));
    }
    let sizes = &group.classes().sizes;
    let cols_ok = par::all_range(r * r, |ab| {
        let (a, b) = (ab / r, ab % r);
        if b < a {
            return true;
        }
        let sum = table
            .irreducibles
            .iter()
            .fold(Cyclotomic::zero(group.exponent()), |acc, chi| {
                &acc + &(chi.value(a) * &chi.value(b).conj())
            });
        let expect = if a == b {
            (order / sizes[a] as u64) as i64
        } else {
            0
        };
        sum == Cyclotomic::from_integer(sum.conductor(), expect)
    });
    if !cols_ok {
        return Err(Error::TableVerification(
            "column orthogonality fails".into(),
        ));
    }
    Ok(())
}

/// Multiplicities `⟨f, χ_i⟩` of each irreducible in a character `f`.
pub fn constituent_multiplicity(f: &ClassFunction, table: &CharacterTable) -> Result<Vec<u64>> {
    if !Arc::ptr_eq(f.group(), table.group()) {
        return Err(Error::GroupMismatch);
    }
    let mults = table
        .irreducibles
        .iter()
        .map(|chi| {
            let ip = inner_product(f, chi)?;
            let m = ip
                .to_rational()
                .filter(|q| q.is_integer() && !q.is_negative())
                .ok_or_else(|| Error::NotACharacter(format!("multiplicity {ip}")))?;
            m.to_integer()
                .to_u64()
                .ok_or_else(|| Error::NotACharacter("multiplicity too large".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    // Reassemble to confirm f lies in the span of the irreducibles.
    let mut rebuilt = ClassFunction::trivial(f.group().clone()).scale(&BigRational::zero());
    for (chi, &m) in table.irreducibles.iter().zip(&mults) {
        if m > 0 {
            rebuilt = rebuilt.sum(&chi.scale(&BigRational::from_integer(BigInt::from(m))))?;
        }
    }
    if &rebuilt != f {
        return Err(Error::NotACharacter(
            "not a combination of irreducibles".into(),
        ));
    }
    Ok(mults)
}

/// Irreducibles of degree one with all values `±1`.
pub fn sign_valued_linear(table: &CharacterTable) -> Vec<ClassFunction> {
    table
        .irreducibles
        .iter()
        .filter(|chi| chi.degree().to_integer() == Some(BigInt::one()) && chi.is_sign_valued())
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfun::{permutation_character, sign_character};
    use crate::permcore::*;

    fn int_rows(t: &CharacterTable) -> Vec<Vec<i64>> {
        t.irreducibles()
            .iter()
            .map(|chi| {
                chi.values()
                    .iter()
                    .map(|v| v.to_integer().unwrap().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn c2_table() {
        let g = Arc::new(symmetric_group(2, DEFAULT_CAP).unwrap());
        let t = character_table(&g).unwrap();
        assert_eq!(int_rows(&t), vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn s3_table() {
        let g = Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap());
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // Classes: identity, 3-cycles, transpositions.
        assert_eq!(
            int_rows(&t),
            vec![vec![1, 1, 1], vec![1, 1, -1], vec![2, -1, 0]]
        );
        assert_eq!(t.get(1), &sign_character(g.clone()));
    }

    #[test]
    fn trivial_group_table() {
        let g = Arc::new(generate_group(2, vec![], DEFAULT_CAP).unwrap());
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn cyclic_groups_have_root_of_unity_values() {
        for n in [3usize, 5, 7] {
            let g = Arc::new(cyclic_group(n, DEFAULT_CAP).unwrap());
            let t = character_table(&g).unwrap();
            assert_eq!(t.len(), n);
            assert!(t.degrees().iter().all(|&d| d == 1));
            assert!(t.irreducibles()[1..]
                .iter()
                .any(|chi| !chi.value(1).is_rational()));
        }
    }

    #[test]
    fn pgl2_7_stabilizer_has_seven() {
        let a = pgl2_action(7, DEFAULT_CAP).unwrap();
        let h = a.point_stabilizer(0).unwrap();
        let t = character_table(h.group()).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 1, 1, 6]);
        let tg = character_table(a.group()).unwrap();
        assert_eq!(tg.len(), a.group().num_classes());
        assert_eq!(tg.len(), 9);
    }

    #[test]
    fn decomposition() {
        let a = natural_action(Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap()));
        let t = character_table(a.group()).unwrap();
        let chi = permutation_character(&a);
        assert_eq!(constituent_multiplicity(&chi, &t).unwrap(), vec![1, 0, 1]);
        assert_eq!(
            constituent_multiplicity(&ClassFunction::trivial(a.group().clone()), &t).unwrap(),
            vec![1, 0, 0]
        );
        for (i, irr) in t.irreducibles().iter().enumerate() {
            let m = constituent_multiplicity(irr, &t).unwrap();
            assert_eq!(m, (0..3).map(|j| u64::from(i == j)).collect::<Vec<_>>());
        }
        let bad = ClassFunction::from_integers(a.group().clone(), &[1, 0, 0]).unwrap();
        assert!(matches!(
            constituent_multiplicity(&bad, &t),
            Err(Error::NotACharacter(_))
        ));
    }
}
