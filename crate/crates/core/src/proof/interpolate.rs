//! Interpolant extraction: given a derivation of Γ, Π ⇒ Δ where the free
//! variables of Γ and of Π ∪ Δ are disjoint, produce a sentence χ with
//! derivations of Γ ⇒ χ and Π, χ ⇒ Δ, neither using more quantifier rules
//! per branch than the original.

use super::{
    check_derivation, instantiate, ms_remove, ms_union, Calculus, Derivation, ProofError, Rule,
    Sequent,
};
use crate::syntax::{BinOp, Constant, FOFormula, Var};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Which half of the antecedent partition a formula occurrence belongs to:
/// `Gamma` feeds the interpolant's left derivation, `Pi` stays with the
/// succedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Gamma,
    Pi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationResult {
    pub interpolant: FOFormula,
    /// Proves Γ-side ⇒ χ.
    pub left: Derivation,
    /// Proves Π-side, χ ⇒ Δ.
    pub right: Derivation,
    pub md_original: usize,
    pub md_left: usize,
    pub md_right: usize,
}

fn free_vars_of(ms: &[FOFormula]) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    for f in ms {
        out.extend(f.free_vars());
    }
    out
}

/// All side assignments of the antecedent that satisfy the variable
/// disjointness precondition.
pub fn admissible_partitions(s: &Sequent) -> Vec<Vec<Side>> {
    let n = s.antecedent.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let sides: Vec<Side> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { Side::Gamma } else { Side::Pi })
            .collect();
        if partition_admissible(s, &sides) {
            out.push(sides);
        }
    }
    out
}

fn partition_admissible(s: &Sequent, sides: &[Side]) -> bool {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for (f, side) in s.antecedent.iter().zip(sides) {
        match side {
            Side::Gamma => left.extend(f.free_vars()),
            Side::Pi => right.extend(f.free_vars()),
        }
    }
    if let Some(delta) = &s.succedent {
        right.extend(delta.free_vars());
    }
    left.is_disjoint(&right)
}

pub fn interpolate(
    d: &Derivation,
    partition: &[Side],
    calculus: Calculus,
) -> Result<InterpolationResult, ProofError> {
    let s = &d.conclusion;
    if partition.len() != s.antecedent.len() {
        return Err(ProofError::PartitionLength {
            got: partition.len(),
            expected: s.antecedent.len(),
        });
    }
    if !partition_admissible(s, partition) {
        let left = free_vars_of(
            &s.antecedent
                .iter()
                .zip(partition)
                .filter(|(_, side)| **side == Side::Gamma)
                .map(|(f, _)| f.clone())
                .collect::<Vec<_>>(),
        );
        let mut right = free_vars_of(
            &s.antecedent
                .iter()
                .zip(partition)
                .filter(|(_, side)| **side == Side::Pi)
                .map(|(f, _)| f.clone())
                .collect::<Vec<_>>(),
        );
        right.extend(s.succedent.iter().flat_map(|f| f.free_vars()));
        let shared = left.intersection(&right).next().copied().unwrap();
        return Err(ProofError::SharedVariable(super::display_var(shared)));
    }
    check_derivation(d, calculus)?;

    let mut gamma = Vec::new();
    let mut pi = Vec::new();
    for (f, side) in s.antecedent.iter().zip(partition) {
        match side {
            Side::Gamma => gamma.push(f.clone()),
            Side::Pi => pi.push(f.clone()),
        }
    }
    let (interpolant, left, right) = interp(d, &gamma, &pi)?;

    // Theorem-shaped postconditions; a failure here is a bug, not bad input.
    assert!(interpolant.is_sentence(), "interpolant {interpolant} is not a sentence");
    assert_eq!(left.conclusion, mk(gamma, Some(interpolant.clone())));
    assert_eq!(
        right.conclusion,
        mk(ms_union(&pi, std::slice::from_ref(&interpolant)), s.succedent.clone())
    );
    check_derivation(&left, calculus)?;
    check_derivation(&right, calculus)?;
    let (md_original, md_left, md_right) = (d.md(), left.md(), right.md());
    assert!(md_left <= md_original && md_right <= md_original);
    Ok(InterpolationResult { interpolant, left, right, md_original, md_left, md_right })
}

fn mk(mut antecedent: Vec<FOFormula>, succedent: Option<FOFormula>) -> Sequent {
    antecedent.sort();
    Sequent { antecedent, succedent }
}

fn id(phi: FOFormula) -> Derivation {
    Derivation::new(mk(vec![phi.clone()], Some(phi)), Rule::Id, vec![])
}

fn with(ms: &[FOFormula], extra: FOFormula) -> Vec<FOFormula> {
    ms_union(ms, std::slice::from_ref(&extra))
}

fn fuse(a: &FOFormula, b: &FOFormula) -> FOFormula {
    FOFormula::bin(BinOp::Fuse, a.clone(), b.clone())
}

/// Splits `premise_context` out of the pair (gamma, pi): each occurrence is
/// drawn from gamma when available, else from pi; returns the drawn halves
/// and the leftovers.
#[allow(clippy::type_complexity)]
fn split_context(
    gamma: &[FOFormula],
    pi: &[FOFormula],
    premise_context: &[FOFormula],
) -> (Vec<FOFormula>, Vec<FOFormula>, Vec<FOFormula>, Vec<FOFormula>) {
    let mut g_rest = gamma.to_vec();
    let mut p_rest = pi.to_vec();
    let mut g_taken = Vec::new();
    let mut p_taken = Vec::new();
    for f in premise_context {
        if let Some(pos) = g_rest.iter().position(|g| g == f) {
            g_taken.push(g_rest.remove(pos));
        } else {
            let pos = p_rest.iter().position(|g| g == f).expect("premise context must split");
            p_taken.push(p_rest.remove(pos));
        }
    }
    (g_taken, p_taken, g_rest, p_rest)
}

type Extraction = (FOFormula, Derivation, Derivation);

fn interp(d: &Derivation, gamma: &[FOFormula], pi: &[FOFormula]) -> Result<Extraction, ProofError> {
    let delta = d.conclusion.succedent.clone();

    // Γ-side empty: χ = ∏() = e; the right half is the whole derivation
    // under one (e⇒).
    if gamma.is_empty() {
        let chi = FOFormula::Const(Constant::E);
        let left = Derivation::new(mk(vec![], Some(chi.clone())), Rule::ERight, vec![]);
        let right = Derivation::new(
            mk(with(pi, chi.clone()), delta),
            Rule::ELeft,
            vec![d.clone()],
        );
        return Ok((chi, left, right));
    }

    let on_gamma = |f: &FOFormula| gamma.contains(f);

    match &d.rule {
        Rule::Id => {
            // gamma nonempty, so the lone formula sits on the Γ side and is a
            // sentence by admissibility
            let phi = gamma[0].clone();
            Ok((phi.clone(), id(phi.clone()), id(phi)))
        }
        Rule::FLeft => {
            let f = FOFormula::Const(Constant::F);
            let right = Derivation::new(mk(vec![f.clone()], None), Rule::FLeft, vec![]);
            Ok((f.clone(), id(f), right))
        }
        Rule::ERight => unreachable!("(⇒e) has an empty antecedent"),
        Rule::ELeft => {
            let e = FOFormula::Const(Constant::E);
            if on_gamma(&e) {
                let g = ms_remove(gamma, &e).unwrap();
                let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::ELeft,
                    vec![left],
                );
                Ok((chi, left, right))
            } else {
                let p = ms_remove(pi, &e).unwrap();
                let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta),
                    Rule::ELeft,
                    vec![right],
                );
                Ok((chi, left, right))
            }
        }
        Rule::FRight => {
            let (chi, left, right) = interp(&d.premises[0], gamma, pi)?;
            let right =
                Derivation::new(mk(with(pi, chi.clone()), delta), Rule::FRight, vec![right]);
            Ok((chi, left, right))
        }
        Rule::ImpRight => {
            let Some(FOFormula::Bin(BinOp::Imp, a, _)) = &delta else { unreachable!() };
            let p = with(pi, (**a).clone());
            let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
            let right =
                Derivation::new(mk(with(pi, chi.clone()), delta), Rule::ImpRight, vec![right]);
            Ok((chi, left, right))
        }
        Rule::FuseLeft { principal } => {
            let FOFormula::Bin(BinOp::Fuse, a, b) = principal else { unreachable!() };
            let parts = [(**a).clone(), (**b).clone()];
            if on_gamma(principal) {
                let g = ms_union(&ms_remove(gamma, principal).unwrap(), &parts);
                let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::FuseLeft { principal: principal.clone() },
                    vec![left],
                );
                Ok((chi, left, right))
            } else {
                let p = ms_union(&ms_remove(pi, principal).unwrap(), &parts);
                let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta),
                    Rule::FuseLeft { principal: principal.clone() },
                    vec![right],
                );
                Ok((chi, left, right))
            }
        }
        Rule::AndLeft { principal, which } => {
            let FOFormula::Bin(BinOp::Meet, a, b) = principal else { unreachable!() };
            let kept = if *which == 0 { (**a).clone() } else { (**b).clone() };
            let rule = Rule::AndLeft { principal: principal.clone(), which: *which };
            if on_gamma(principal) {
                let g = with(&ms_remove(gamma, principal).unwrap(), kept);
                let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                let left =
                    Derivation::new(mk(gamma.to_vec(), Some(chi.clone())), rule, vec![left]);
                Ok((chi, left, right))
            } else {
                let p = with(&ms_remove(pi, principal).unwrap(), kept);
                let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                let right = Derivation::new(mk(with(pi, chi.clone()), delta), rule, vec![right]);
                Ok((chi, left, right))
            }
        }
        Rule::OrRight { which } => {
            let Some(FOFormula::Bin(BinOp::Join, a, b)) = &delta else { unreachable!() };
            let kept = if *which == 0 { (**a).clone() } else { (**b).clone() };
            let _ = kept;
            let (chi, left, right) = interp(&d.premises[0], gamma, pi)?;
            let right = Derivation::new(
                mk(with(pi, chi.clone()), delta),
                Rule::OrRight { which: *which },
                vec![right],
            );
            Ok((chi, left, right))
        }
        Rule::Contract { principal } => {
            let rule = Rule::Contract { principal: principal.clone() };
            if on_gamma(principal) {
                let g = with(gamma, principal.clone());
                let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                let left =
                    Derivation::new(mk(gamma.to_vec(), Some(chi.clone())), rule, vec![left]);
                Ok((chi, left, right))
            } else {
                let p = with(pi, principal.clone());
                let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                let right = Derivation::new(mk(with(pi, chi.clone()), delta), rule, vec![right]);
                Ok((chi, left, right))
            }
        }
        Rule::Weaken => {
            let premise = &d.premises[0].conclusion;
            let (g_kept, p_kept, g_dropped, p_dropped) =
                split_context(gamma, pi, &premise.antecedent);
            let (chi, mut left, mut right) = interp(&d.premises[0], &g_kept, &p_kept)?;
            if !g_dropped.is_empty() {
                left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::Weaken,
                    vec![left],
                );
            }
            if !p_dropped.is_empty() || premise.succedent != delta {
                right = Derivation::new(
                    mk(with(pi, chi.clone()), delta.clone()),
                    Rule::Weaken,
                    vec![right],
                );
            }
            Ok((chi, left, right))
        }
        Rule::AllRight { eigen } => {
            let (chi, left, right) = interp(&d.premises[0], gamma, pi)?;
            let right = Derivation::new(
                mk(with(pi, chi.clone()), delta),
                Rule::AllRight { eigen: *eigen },
                vec![right],
            );
            Ok((chi, left, right))
        }
        Rule::ExLeft { principal, eigen } => {
            let inst = instantiate(principal, *eigen)?;
            let rule = Rule::ExLeft { principal: principal.clone(), eigen: *eigen };
            if on_gamma(principal) {
                let g = with(&ms_remove(gamma, principal).unwrap(), inst);
                let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                let left =
                    Derivation::new(mk(gamma.to_vec(), Some(chi.clone())), rule, vec![left]);
                Ok((chi, left, right))
            } else {
                let p = with(&ms_remove(pi, principal).unwrap(), inst);
                let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                let right = Derivation::new(mk(with(pi, chi.clone()), delta), rule, vec![right]);
                Ok((chi, left, right))
            }
        }
        Rule::AllLeft { principal, term } => {
            let inst = instantiate(principal, *term)?;
            let rule = Rule::AllLeft { principal: principal.clone(), term: *term };
            let pi_delta_vars = {
                let mut v = free_vars_of(pi);
                v.extend(delta.iter().flat_map(|f| f.free_vars()));
                v
            };
            let gamma_vars = free_vars_of(gamma);
            if on_gamma(principal) {
                let g_rest = ms_remove(gamma, principal).unwrap();
                if pi_delta_vars.contains(term) {
                    // the instantiated copy belongs with Π: χ gains a ∀-factor
                    let p = with(pi, inst);
                    let (chi0, left0, right0) = interp(&d.premises[0], &g_rest, &p)?;
                    let chi = fuse(&chi0, principal);
                    let left = Derivation::new(
                        mk(gamma.to_vec(), Some(chi.clone())),
                        Rule::FuseRight,
                        vec![left0, id(principal.clone())],
                    );
                    let all_node = Derivation::new(
                        mk(with(&with(pi, chi0), principal.clone()), delta.clone()),
                        rule,
                        vec![right0],
                    );
                    let right = Derivation::new(
                        mk(with(pi, chi.clone()), delta),
                        Rule::FuseLeft { principal: chi.clone() },
                        vec![all_node],
                    );
                    Ok((chi, left, right))
                } else {
                    let g = with(&g_rest, inst);
                    let (chi, left, right) = interp(&d.premises[0], &g, pi)?;
                    let left =
                        Derivation::new(mk(gamma.to_vec(), Some(chi.clone())), rule, vec![left]);
                    Ok((chi, left, right))
                }
            } else {
                let p_rest = ms_remove(pi, principal).unwrap();
                if gamma_vars.contains(term) {
                    // the instantiated copy belongs with Γ: χ gains a ∀-guard
                    let g = with(gamma, inst);
                    let (chi0, left0, right0) = interp(&d.premises[0], &g, &p_rest)?;
                    let chi = FOFormula::bin(BinOp::Imp, principal.clone(), chi0.clone());
                    let all_node = Derivation::new(
                        mk(with(gamma, principal.clone()), Some(chi0.clone())),
                        rule,
                        vec![left0],
                    );
                    let left = Derivation::new(
                        mk(gamma.to_vec(), Some(chi.clone())),
                        Rule::ImpRight,
                        vec![all_node],
                    );
                    let right = Derivation::new(
                        mk(with(pi, chi.clone()), delta),
                        Rule::ImpLeft { principal: chi.clone() },
                        vec![id(principal.clone()), right0],
                    );
                    Ok((chi, left, right))
                } else {
                    let p = with(&p_rest, inst);
                    let (chi, left, right) = interp(&d.premises[0], gamma, &p)?;
                    let right =
                        Derivation::new(mk(with(pi, chi.clone()), delta), rule, vec![right]);
                    Ok((chi, left, right))
                }
            }
        }
        Rule::ExRight { term } => {
            let Some(ex) = &delta else { unreachable!() };
            let rule = Rule::ExRight { term: *term };
            if free_vars_of(gamma).contains(term) {
                // witness comes from the Γ side: swap roles for the premise
                let (chi0, pi_left, gamma_right) = interp(&d.premises[0], pi, gamma)?;
                let chi = FOFormula::bin(BinOp::Imp, chi0.clone(), ex.clone());
                let ex_node = Derivation::new(
                    mk(with(gamma, chi0.clone()), Some(ex.clone())),
                    rule,
                    vec![gamma_right],
                );
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::ImpRight,
                    vec![ex_node],
                );
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta.clone()),
                    Rule::ImpLeft { principal: chi.clone() },
                    vec![pi_left, id(ex.clone())],
                );
                Ok((chi, left, right))
            } else {
                let (chi, left, right) = interp(&d.premises[0], gamma, pi)?;
                let right =
                    Derivation::new(mk(with(pi, chi.clone()), delta), rule, vec![right]);
                Ok((chi, left, right))
            }
        }
        Rule::AndRight => {
            let Some(FOFormula::Bin(BinOp::Meet, _, _)) = &delta else { unreachable!() };
            let (chi1, a1, a2) = interp(&d.premises[0], gamma, pi)?;
            let (chi2, b1, b2) = interp(&d.premises[1], gamma, pi)?;
            let chi = FOFormula::bin(BinOp::Meet, chi1.clone(), chi2.clone());
            let left = Derivation::new(
                mk(gamma.to_vec(), Some(chi.clone())),
                Rule::AndRight,
                vec![a1, b1],
            );
            let weaken_to_chi = |sub: Derivation, which: u8, goal: FOFormula| {
                Derivation::new(
                    mk(with(pi, chi.clone()), Some(goal)),
                    Rule::AndLeft { principal: chi.clone(), which },
                    vec![sub],
                )
            };
            let (ga, gb) = match &delta {
                Some(FOFormula::Bin(BinOp::Meet, a, b)) => ((**a).clone(), (**b).clone()),
                _ => unreachable!(),
            };
            let right = Derivation::new(
                mk(with(pi, chi.clone()), delta),
                Rule::AndRight,
                vec![weaken_to_chi(a2, 0, ga), weaken_to_chi(b2, 1, gb)],
            );
            Ok((chi, left, right))
        }
        Rule::OrLeft { principal } => {
            let FOFormula::Bin(BinOp::Join, a, b) = principal else { unreachable!() };
            let parts = [(**a).clone(), (**b).clone()];
            if on_gamma(principal) {
                let g_rest = ms_remove(gamma, principal).unwrap();
                let (chi1, a1, a2) = interp(&d.premises[0], &with(&g_rest, parts[0].clone()), pi)?;
                let (chi2, b1, b2) = interp(&d.premises[1], &with(&g_rest, parts[1].clone()), pi)?;
                let chi = FOFormula::bin(BinOp::Join, chi1.clone(), chi2.clone());
                let inject = |sub: Derivation, which: u8, part: FOFormula| {
                    Derivation::new(
                        mk(with(&g_rest, part), Some(chi.clone())),
                        Rule::OrRight { which },
                        vec![sub],
                    )
                };
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::OrLeft { principal: principal.clone() },
                    vec![inject(a1, 0, parts[0].clone()), inject(b1, 1, parts[1].clone())],
                );
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta),
                    Rule::OrLeft { principal: chi.clone() },
                    vec![a2, b2],
                );
                Ok((chi, left, right))
            } else {
                let p_rest = ms_remove(pi, principal).unwrap();
                let (chi1, a1, a2) = interp(&d.premises[0], gamma, &with(&p_rest, parts[0].clone()))?;
                let (chi2, b1, b2) = interp(&d.premises[1], gamma, &with(&p_rest, parts[1].clone()))?;
                let chi = FOFormula::bin(BinOp::Meet, chi1.clone(), chi2.clone());
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::AndRight,
                    vec![a1, b1],
                );
                let select = |sub: Derivation, which: u8, part: FOFormula| {
                    Derivation::new(
                        mk(with(&with(&p_rest, part), chi.clone()), delta.clone()),
                        Rule::AndLeft { principal: chi.clone(), which },
                        vec![sub],
                    )
                };
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta.clone()),
                    Rule::OrLeft { principal: principal.clone() },
                    vec![select(a2, 0, parts[0].clone()), select(b2, 1, parts[1].clone())],
                );
                Ok((chi, left, right))
            }
        }
        Rule::FuseRight => {
            let Some(FOFormula::Bin(BinOp::Fuse, a, b)) = &delta else { unreachable!() };
            let p1 = &d.premises[0].conclusion;
            let (g1, pi1, g2, pi2) = split_context(gamma, pi, &p1.antecedent);
            let (chi1, a1, a2) = interp(&d.premises[0], &g1, &pi1)?;
            let (chi2, b1, b2) = interp(&d.premises[1], &g2, &pi2)?;
            let chi = fuse(&chi1, &chi2);
            let left = Derivation::new(
                mk(gamma.to_vec(), Some(chi.clone())),
                Rule::FuseRight,
                vec![a1, b1],
            );
            let inner = Derivation::new(
                mk(ms_union(&with(&ms_union(&pi1, &pi2), chi1.clone()), &[chi2.clone()]), delta.clone()),
                Rule::FuseRight,
                vec![a2, b2],
            );
            let _ = (a, b);
            let right = Derivation::new(
                mk(with(pi, chi.clone()), delta),
                Rule::FuseLeft { principal: chi.clone() },
                vec![inner],
            );
            Ok((chi, left, right))
        }
        Rule::ImpLeft { principal } => {
            let FOFormula::Bin(BinOp::Imp, a, b) = principal else { unreachable!() };
            let p1 = &d.premises[0].conclusion;
            let gamma_side = on_gamma(principal);
            let (g_ctx, p_ctx) = if gamma_side {
                (ms_remove(gamma, principal).unwrap(), pi.to_vec())
            } else {
                (gamma.to_vec(), ms_remove(pi, principal).unwrap())
            };
            let (g1, pi1, g2, pi2) = split_context(&g_ctx, &p_ctx, &p1.antecedent);
            if gamma_side {
                // left premise interpolates with the roles swapped
                let (chi1, e1, e2) = interp(&d.premises[0], &pi1, &g1)?;
                let (chi2, f1, f2) =
                    interp(&d.premises[1], &with(&g2, (**b).clone()), &pi2)?;
                let chi = FOFormula::bin(BinOp::Imp, chi1.clone(), chi2.clone());
                let imp_node = Derivation::new(
                    mk(
                        with(&with(&ms_union(&g1, &g2), chi1.clone()), principal.clone()),
                        Some(chi2.clone()),
                    ),
                    Rule::ImpLeft { principal: principal.clone() },
                    vec![e2, f1],
                );
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::ImpRight,
                    vec![imp_node],
                );
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta),
                    Rule::ImpLeft { principal: chi.clone() },
                    vec![e1, f2],
                );
                Ok((chi, left, right))
            } else {
                let (chi1, a1, a2) = interp(&d.premises[0], &g1, &pi1)?;
                let (chi2, b1, b2) =
                    interp(&d.premises[1], &g2, &with(&pi2, (**b).clone()))?;
                let _ = a;
                let chi = fuse(&chi1, &chi2);
                let left = Derivation::new(
                    mk(gamma.to_vec(), Some(chi.clone())),
                    Rule::FuseRight,
                    vec![a1, b1],
                );
                let imp_node = Derivation::new(
                    mk(
                        with(
                            &with(&with(&ms_union(&pi1, &pi2), chi1.clone()), chi2.clone()),
                            principal.clone(),
                        ),
                        delta.clone(),
                    ),
                    Rule::ImpLeft { principal: principal.clone() },
                    vec![a2, b2],
                );
                let right = Derivation::new(
                    mk(with(pi, chi.clone()), delta),
                    Rule::FuseLeft { principal: chi.clone() },
                    vec![imp_node],
                );
                Ok((chi, left, right))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{prove, SearchConfig, SearchOutcome};
    use crate::syntax::parse_fo;

    fn derive(src: &str, calculus: Calculus) -> Derivation {
        match prove(&Sequent::parse(src).unwrap(), &SearchConfig::new(calculus)) {
            SearchOutcome::Derivable(d) => d,
            other => panic!("{src}: {other:?}"),
        }
    }

    #[test]
    fn forall_instantiation_yields_a_fused_guard() {
        // Γ = {∀xP₀(x)}, Π = ∅, Δ = P₀(x₁): the instantiated copy lands on
        // the Π side, so χ = e · ∀xP₀(x)
        let d = derive("A x P0(x) |- P0(x1)", Calculus::FLe);
        let r = interpolate(&d, &[Side::Gamma], Calculus::FLe).unwrap();
        assert_eq!(r.interpolant, parse_fo("e * A x P0(x)").unwrap());
        assert!(r.md_left <= r.md_original && r.md_right <= r.md_original);
    }

    #[test]
    fn empty_gamma_side_gives_the_unit() {
        let d = derive("A x P0(x) |- P0(x1)", Calculus::FLe);
        let r = interpolate(&d, &[Side::Pi], Calculus::FLe).unwrap();
        assert_eq!(r.interpolant, parse_fo("e").unwrap());
    }

    #[test]
    fn shared_variable_is_rejected() {
        let d = derive("P0(x), P1(x) |- P0(x) * P1(x)", Calculus::FLe);
        assert_eq!(
            interpolate(&d, &[Side::Gamma, Side::Pi], Calculus::FLe),
            Err(ProofError::SharedVariable("x".into()))
        );
    }

    #[test]
    fn partition_length_is_checked() {
        let d = derive("|- e", Calculus::FLe);
        assert_eq!(
            interpolate(&d, &[Side::Gamma], Calculus::FLe),
            Err(ProofError::PartitionLength { got: 1, expected: 0 })
        );
    }

    #[test]
    fn admissible_partitions_respect_disjointness() {
        let s = Sequent::parse("P0(x), A x P1(x) |- P0(x)").unwrap();
        let parts = admissible_partitions(&s);
        // the sentence ∀xP₁(x) can sit on either side; P₀(x) shares x with Δ
        // and must stay on the Π side
        assert_eq!(parts.len(), 2);
        for p in &parts {
            let x_pos = s
                .antecedent
                .iter()
                .position(|f| f == &parse_fo("P0(x)").unwrap())
                .unwrap();
            assert_eq!(p[x_pos], Side::Pi);
        }
    }

    #[test]
    fn every_partition_interpolates_on_sample_sequents() {
        let samples = [
            ("A x P0(x), P1(x2) |- P0(x1) * P1(x2)", Calculus::FLe),
            ("E x P0(x) |- E x (P0(x) \\/ P1(x))", Calculus::FLe),
            ("A x P0(x) |- P0(x1) * P0(x1)", Calculus::FLec),
            ("P0(x1), P1(x2) |- P1(x2)", Calculus::FLew),
        ];
        for (src, calculus) in samples {
            let d = derive(src, calculus);
            let parts = admissible_partitions(&d.conclusion);
            assert!(!parts.is_empty(), "{src}");
            for part in parts {
                let r = interpolate(&d, &part, calculus).unwrap();
                assert!(r.interpolant.is_sentence());
                assert!(r.md_left <= r.md_original && r.md_right <= r.md_original, "{src}");
            }
        }
    }
}
