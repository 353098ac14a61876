//! Base size by three independent routes: exhaustive search, the vanishing
//! of `⟨φ, χ^l⟩` for a base-controlling sign character `φ`, and the distance
//! from `1_H` to `φ↓H` in the Kuelshammer graph.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classfun::{
    inner_product, linear_pm1_characters, permutation_character, restrict, ClassFunction,
    ClassFunctionJson, Cyclotomic,
};
use crate::error::{Error, Result};
use crate::kuelshammer::{build_graph, KuelshammerGraph};
use crate::par;
use crate::permcore::base::moved_orbit_reps;
use crate::permcore::{min_base_search, BaseWitness, GroupAction, Subgroup};

/// A point set whose pointwise stabilizer is nontrivial yet inside `ker φ`.
pub fn base_control_violation(
    action: &GroupAction,
    phi: &ClassFunction,
) -> Result<Option<Vec<usize>>> {
    action.ensure_faithful()?;
    check_sign_homomorphism(action, phi)?;
    let group = action.group();
    let class_of = &group.classes().class_of;
    let one = Cyclotomic::one(1);
    let in_kernel: Vec<bool> = class_of
        .iter()
        .map(|&c| *phi.value(c as usize) == one)
        .collect();

    // Stabilizers reached through points in the same orbit are conjugate, and
    // both triviality and containment in the normal subgroup ker φ survive
    // conjugation, so one point per orbit suffices.
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack = vec![(Vec::new(), action.all_elements())];
    while let Some((points, stab)) = stack.pop() {
        if stab.len() == 1 {
            continue;
        }
        if stab.iter().all(|&g| in_kernel[g as usize]) {
            return Ok(Some(points));
        }
        for w in moved_orbit_reps(action, &stab) {
            let next = action.filter_fixing(&stab, w);
            if seen.insert(next.clone()) {
                let mut p = points.clone();
                p.push(w);
                stack.push((p, next));
            }
        }
    }
    Ok(None)
}

/// True when a point tuple is a base exactly when `φ` is trivial on its
/// pointwise stabilizer.
pub fn is_base_controlling(action: &GroupAction, phi: &ClassFunction) -> Result<bool> {
    Ok(base_control_violation(action, phi)?.is_none())
}

fn check_sign_homomorphism(action: &GroupAction, phi: &ClassFunction) -> Result<()> {
    if !std::sync::Arc::ptr_eq(phi.group(), action.group()) {
        return Err(Error::GroupMismatch);
    }
    if !phi.is_sign_valued() || !linear_pm1_characters(action.group())?.contains(phi) {
        return Err(Error::NotSignValued);
    }
    Ok(())
}

/// First base-controlling character among the group's `±1` characters.
pub fn find_base_controlling(action: &GroupAction) -> Result<Option<ClassFunction>> {
    action.ensure_faithful()?;
    for phi in linear_pm1_characters(action.group())? {
        if is_base_controlling(action, &phi)? {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// `⟨φ, χ^l⟩` for `l = 0, 1, …, l_max`, with `χ` the permutation character.
pub fn power_inner_products(
    action: &GroupAction,
    phi: &ClassFunction,
    l_max: usize,
) -> Result<Vec<Cyclotomic>> {
    let chi = permutation_character(action);
    let mut power = ClassFunction::trivial(action.group().clone());
    let mut out = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        if l > 0 {
            power = power.product(&chi)?;
        }
        out.push(inner_product(phi, &power)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharFormulaResult {
    pub size: usize,
    /// The first nonzero `⟨φ, χ^l⟩`.
    pub value: Cyclotomic,
}

/// Least `l ≤ l_max` with `⟨φ, χ^l⟩ ≠ 0`. `l_max` defaults to the domain size.
pub fn base_size_char_formula(
    action: &GroupAction,
    phi: &ClassFunction,
    l_max: Option<usize>,
) -> Result<CharFormulaResult> {
    let l_max = l_max.unwrap_or(action.domain_size()).max(1);
    let chi = permutation_character(action);
    let mut power = ClassFunction::trivial(action.group().clone());
    for l in 0..=l_max {
        if l > 0 {
            power = power.product(&chi)?;
        }
        let value = inner_product(phi, &power)?;
        if !value.is_zero() {
            return Ok(CharFormulaResult { size: l, value });
        }
    }
    Err(Error::NoNonzeroPower { l_max })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuelshammerResult {
    pub size: usize,
    /// Distance from `1_H` to `φ↓H`.
    pub d: usize,
    pub diameter: usize,
}

/// Graph route with `H` the stabilizer of point 0.
pub fn base_size_kuelshammer(
    action: &GroupAction,
    phi: &ClassFunction,
) -> Result<KuelshammerResult> {
    base_size_kuelshammer_at(action, phi, 0)
}

pub fn base_size_kuelshammer_at(
    action: &GroupAction,
    phi: &ClassFunction,
    point: usize,
) -> Result<KuelshammerResult> {
    let (sub, graph) = stabilizer_graph(action, point)?;
    kuelshammer_distance(&graph, &sub, phi)
}

/// The Kuelshammer graph of a transitive faithful action, taken at the
/// stabilizer of `point`.
pub fn stabilizer_graph(
    action: &GroupAction,
    point: usize,
) -> Result<(Subgroup, KuelshammerGraph)> {
    action.check_point(point)?;
    action.ensure_faithful()?;
    if !action.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let sub = action.point_stabilizer(point)?;
    let graph = build_graph(&sub)?;
    Ok((sub, graph))
}

/// Reads `d(1_H, φ↓H)` off a built graph and checks it against the diameter.
pub fn kuelshammer_distance(
    graph: &KuelshammerGraph,
    sub: &Subgroup,
    phi: &ClassFunction,
) -> Result<KuelshammerResult> {
    let target = restrict(phi, sub)?;
    let v = graph
        .vertex_of(&target)
        .ok_or_else(|| Error::NotACharacter("φ↓H is not an irreducible character of H".into()))?;
    let d = graph.distance(0, v);
    let diameter = graph.diameter();
    if d != diameter {
        return Err(Error::TheoremViolation(format!(
            "diameter {diameter} differs from d(1_H, φ↓H) = {d}"
        )));
    }
    Ok(KuelshammerResult {
        size: d + 1,
        d,
        diameter,
    })
}

/// Which computations `base_size_with` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub search: bool,
    pub character: bool,
    pub kuelshammer: bool,
}

impl Methods {
    pub const ALL: Methods = Methods {
        search: true,
        character: true,
        kuelshammer: true,
    };
}

#[derive(Debug, Clone)]
pub struct BaseSizeReport {
    pub search: Option<BaseWitness>,
    pub char_formula: Option<CharFormulaResult>,
    pub kuelshammer: Option<KuelshammerResult>,
    pub phi_used: Option<ClassFunction>,
    pub agree: bool,
    /// Why a requested method did not run.
    pub notes: Vec<String>,
}

impl BaseSizeReport {
    /// Sizes of the methods that ran, in the order search, character, graph.
    pub fn sizes(&self) -> Vec<usize> {
        [
            self.search.as_ref().map(BaseWitness::size),
            self.char_formula.as_ref().map(|r| r.size),
            self.kuelshammer.map(|r| r.size),
        ]
        .into_iter()
        .flatten()
        .collect()
    }

    /// The common size, if at least one method ran and all agree.
    pub fn size(&self) -> Option<usize> {
        let sizes = self.sizes();
        (self.agree && !sizes.is_empty()).then(|| sizes[0])
    }

    pub fn to_json(&self) -> BaseSizeReportJson {
        BaseSizeReportJson {
            search: self.search.as_ref().map(|w| SearchJson {
                size: w.size(),
                witness: w.points.clone(),
            }),
            char_formula: self.char_formula.as_ref().map(|r| CharFormulaJson {
                size: r.size,
                value: r.value.to_string(),
            }),
            kuelshammer: self.kuelshammer,
            phi_used: self.phi_used.as_ref().map(ClassFunction::to_json),
            agree: self.agree,
            notes: self.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSizeReportJson {
    pub search: Option<SearchJson>,
    pub char_formula: Option<CharFormulaJson>,
    pub kuelshammer: Option<KuelshammerResult>,
    pub phi_used: Option<ClassFunctionJson>,
    pub agree: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub size: usize,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharFormulaJson {
    pub size: usize,
    pub value: String,
}

/// All three methods.
pub fn base_size_all(action: &GroupAction) -> Result<BaseSizeReport> {
    base_size_with(action, Methods::ALL, None)
}

/// Runs the selected methods. The character methods need a base-controlling
/// `φ`; the graph method also needs a transitive action. Methods that cannot
/// run are left absent and explained in `notes`.
pub fn base_size_with(
    action: &GroupAction,
    methods: Methods,
    l_max: Option<usize>,
) -> Result<BaseSizeReport> {
    action.ensure_faithful()?;
    let wants_phi = methods.character || methods.kuelshammer;
    let (search, phi) = par::join(
        || methods.search.then(|| min_base_search(action)).transpose(),
        || {
            if wants_phi {
                find_base_controlling(action)
            } else {
                Ok(None)
            }
        },
    );
    let search = search?;
    let phi = phi?;

    let mut notes = Vec::new();
    let mut char_formula = None;
    let mut kuelshammer = None;
    match &phi {
        None if wants_phi => {
            notes.push("no base-controlling homomorphism; character methods skipped".into())
        }
        None => {}
        Some(phi) => {
            let transitive = action.is_transitive();
            if methods.kuelshammer && !transitive {
                notes.push("action is not transitive; graph method skipped".into());
            }
            let (cf, kg) = par::join(
                || {
                    methods
                        .character
                        .then(|| base_size_char_formula(action, phi, l_max))
                        .transpose()
                },
                || {
                    (methods.kuelshammer && transitive)
                        .then(|| base_size_kuelshammer(action, phi))
                        .transpose()
                },
            );
            char_formula = cf?;
            kuelshammer = kg?;
        }
    }

    let mut report = BaseSizeReport {
        search,
        char_formula,
        kuelshammer,
        phi_used: phi,
        agree: true,
        notes,
    };
    let sizes = report.sizes();
    report.agree = sizes.windows(2).all(|w| w[0] == w[1]);
    Ok(report)
}
