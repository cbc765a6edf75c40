//! Backward proof search. For FLe/FLew every backward rule application
//! strictly shrinks the total formula size (weakening is restricted to
//! proper sub-multisets), so exhaustive search terminates and a negative
//! answer is complete. FLec contraction grows sequents and is metered by a
//! per-branch budget; running out yields `BoundExhausted` instead of a
//! negative verdict.

use super::{
    check_derivation, instantiate, ms_insert, ms_remove, Calculus, Derivation, ProofError, Rule,
    Sequent,
};
use crate::syntax::{BinOp, Constant, FOFormula, Quantifier, Var};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub calculus: Calculus,
    /// Maximum (c) applications per branch; ignored outside FLec.
    pub contraction_budget: u32,
    /// Safety net on recursion depth.
    pub depth_cap: u32,
}

impl SearchConfig {
    pub fn new(calculus: Calculus) -> SearchConfig {
        SearchConfig { calculus, contraction_budget: 2, depth_cap: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Derivable(Derivation),
    /// The whole finite backward search space was exhausted.
    NotDerivable,
    /// Failure that consumed the contraction budget or depth cap somewhere.
    BoundExhausted,
}

impl SearchOutcome {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SearchOutcome::Derivable(d) => Some(d),
            _ => None,
        }
    }
}

pub fn prove(s: &Sequent, cfg: &SearchConfig) -> SearchOutcome {
    let mut searcher = Searcher { cfg: *cfg, memo: HashMap::new() };
    let budget = if cfg.calculus == Calculus::FLec { cfg.contraction_budget } else { 0 };
    let (found, exhausted) = searcher.solve(s, budget, 0);
    match found {
        Some(d) => {
            debug_assert_eq!(check_derivation(&d, cfg.calculus), Ok(()));
            SearchOutcome::Derivable(d)
        }
        None if exhausted => SearchOutcome::BoundExhausted,
        None => SearchOutcome::NotDerivable,
    }
}

struct Searcher {
    cfg: SearchConfig,
    memo: HashMap<(Sequent, u32), (Option<Derivation>, bool)>,
}

/// One backward move: the rule plus the premises to solve (with their
/// contraction budgets).
struct Move {
    rule: Rule,
    premises: Vec<(Sequent, u32)>,
}

fn seq(antecedent: Vec<FOFormula>, succedent: Option<FOFormula>) -> Sequent {
    let mut antecedent = antecedent;
    antecedent.sort();
    Sequent { antecedent, succedent }
}

impl Searcher {
    fn solve(&mut self, s: &Sequent, budget: u32, depth: u32) -> (Option<Derivation>, bool) {
        if let Some(hit) = self.memo.get(&(s.clone(), budget)) {
            return hit.clone();
        }
        if depth >= self.cfg.depth_cap {
            return (None, true);
        }
        let mut exhausted = false;
        let mut found = None;
        for mv in self.moves(s, budget) {
            debug_assert!(
                matches!(mv.rule, Rule::Contract { .. })
                    || mv.premises.iter().all(|(p, _)| p.size() < s.size()),
                "backward move must shrink the sequent ({})",
                mv.rule.tag()
            );
            let mut subs = Vec::with_capacity(mv.premises.len());
            let mut ok = true;
            for (premise, sub_budget) in &mv.premises {
                let (sub, sub_exhausted) = self.solve(premise, *sub_budget, depth + 1);
                exhausted |= sub_exhausted;
                match sub {
                    Some(d) => subs.push(d),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                found = Some(Derivation::new(s.clone(), mv.rule, subs));
                break;
            }
        }
        if found.is_none()
            && self.cfg.calculus == Calculus::FLec
            && budget == 0
            && !s.antecedent.is_empty()
        {
            // a contraction move was available but not taken
            exhausted = true;
        }
        let result = (found, exhausted);
        self.memo.insert((s.clone(), budget), result.clone());
        result
    }

    fn moves(&self, s: &Sequent, budget: u32) -> Vec<Move> {
        let mut out = Vec::new();
        let ant = &s.antecedent;
        let succ = &s.succedent;

        // axioms
        if ant.len() == 1 && succ.as_ref() == Some(&ant[0]) {
            return vec![Move { rule: Rule::Id, premises: vec![] }];
        }
        if ant.as_slice() == [FOFormula::Const(Constant::F)] && succ.is_none() {
            return vec![Move { rule: Rule::FLeft, premises: vec![] }];
        }
        if ant.is_empty() && *succ == Some(FOFormula::Const(Constant::E)) {
            return vec![Move { rule: Rule::ERight, premises: vec![] }];
        }

        let occurring: Vec<Var> = s.occurring_vars().into_iter().collect();

        // left rules, one per distinct antecedent formula
        let mut seen: Option<&FOFormula> = None;
        for phi in ant {
            if seen == Some(phi) {
                continue;
            }
            seen = Some(phi);
            let rest = ms_remove(ant, phi).unwrap();
            match phi {
                FOFormula::Const(Constant::E) => out.push(Move {
                    rule: Rule::ELeft,
                    premises: vec![(seq(rest, succ.clone()), budget)],
                }),
                FOFormula::Bin(BinOp::Fuse, a, b) => {
                    let mut p = rest.clone();
                    ms_insert(&mut p, (**a).clone());
                    ms_insert(&mut p, (**b).clone());
                    out.push(Move {
                        rule: Rule::FuseLeft { principal: phi.clone() },
                        premises: vec![(seq(p, succ.clone()), budget)],
                    });
                }
                FOFormula::Bin(BinOp::Meet, a, b) => {
                    for (which, part) in [(0u8, a), (1, b)] {
                        let mut p = rest.clone();
                        ms_insert(&mut p, (**part).clone());
                        out.push(Move {
                            rule: Rule::AndLeft { principal: phi.clone(), which },
                            premises: vec![(seq(p, succ.clone()), budget)],
                        });
                    }
                }
                FOFormula::Bin(BinOp::Join, a, b) => {
                    let mut p0 = rest.clone();
                    ms_insert(&mut p0, (**a).clone());
                    let mut p1 = rest.clone();
                    ms_insert(&mut p1, (**b).clone());
                    out.push(Move {
                        rule: Rule::OrLeft { principal: phi.clone() },
                        premises: vec![
                            (seq(p0, succ.clone()), budget),
                            (seq(p1, succ.clone()), budget),
                        ],
                    });
                }
                FOFormula::Bin(BinOp::Imp, a, b) => {
                    for mask in 0u32..(1 << rest.len()) {
                        let (gamma1, mut gamma2): (Vec<_>, Vec<_>) = split_by_mask(&rest, mask);
                        ms_insert(&mut gamma2, (**b).clone());
                        out.push(Move {
                            rule: Rule::ImpLeft { principal: phi.clone() },
                            premises: vec![
                                (seq(gamma1, Some((**a).clone())), budget),
                                (seq(gamma2, succ.clone()), budget),
                            ],
                        });
                    }
                }
                FOFormula::Quant(Quantifier::All, _) => {
                    for &t in &occurring {
                        let Ok(inst) = instantiate(phi, t) else { continue };
                        let mut p = rest.clone();
                        ms_insert(&mut p, inst);
                        out.push(Move {
                            rule: Rule::AllLeft { principal: phi.clone(), term: t },
                            premises: vec![(seq(p, succ.clone()), budget)],
                        });
                    }
                }
                FOFormula::Quant(Quantifier::Ex, _) => {
                    let eigen = s.fresh_var();
                    if let Ok(inst) = instantiate(phi, eigen) {
                        let mut p = rest.clone();
                        ms_insert(&mut p, inst);
                        out.push(Move {
                            rule: Rule::ExLeft { principal: phi.clone(), eigen },
                            premises: vec![(seq(p, succ.clone()), budget)],
                        });
                    }
                }
                _ => {}
            }
        }

        // right rules
        match succ {
            Some(FOFormula::Const(Constant::F)) => out.push(Move {
                rule: Rule::FRight,
                premises: vec![(seq(ant.clone(), None), budget)],
            }),
            Some(FOFormula::Bin(BinOp::Imp, a, b)) => {
                let mut p = ant.clone();
                ms_insert(&mut p, (**a).clone());
                out.push(Move {
                    rule: Rule::ImpRight,
                    premises: vec![(seq(p, Some((**b).clone())), budget)],
                });
            }
            Some(FOFormula::Bin(BinOp::Meet, a, b)) => out.push(Move {
                rule: Rule::AndRight,
                premises: vec![
                    (seq(ant.clone(), Some((**a).clone())), budget),
                    (seq(ant.clone(), Some((**b).clone())), budget),
                ],
            }),
            Some(FOFormula::Bin(BinOp::Join, a, b)) => {
                for (which, part) in [(0u8, a), (1, b)] {
                    out.push(Move {
                        rule: Rule::OrRight { which },
                        premises: vec![(seq(ant.clone(), Some((**part).clone())), budget)],
                    });
                }
            }
            Some(FOFormula::Bin(BinOp::Fuse, a, b)) => {
                for mask in 0u32..(1 << ant.len()) {
                    let (gamma1, gamma2) = split_by_mask(ant, mask);
                    out.push(Move {
                        rule: Rule::FuseRight,
                        premises: vec![
                            (seq(gamma1, Some((**a).clone())), budget),
                            (seq(gamma2, Some((**b).clone())), budget),
                        ],
                    });
                }
            }
            Some(q @ FOFormula::Quant(Quantifier::All, _)) => {
                let eigen = s.fresh_var();
                if let Ok(inst) = instantiate(q, eigen) {
                    out.push(Move {
                        rule: Rule::AllRight { eigen },
                        premises: vec![(seq(ant.clone(), Some(inst)), budget)],
                    });
                }
            }
            Some(q @ FOFormula::Quant(Quantifier::Ex, _)) => {
                for &t in &occurring {
                    let Ok(inst) = instantiate(q, t) else { continue };
                    out.push(Move {
                        rule: Rule::ExRight { term: t },
                        premises: vec![(seq(ant.clone(), Some(inst)), budget)],
                    });
                }
            }
            _ => {}
        }

        // structural rules
        if self.cfg.calculus == Calculus::FLew {
            for mask in 0u32..(1 << ant.len()) {
                let (kept, dropped) = split_by_mask(ant, mask);
                let mut succ_options: Vec<Option<FOFormula>> = Vec::new();
                if succ.is_some() {
                    // dropping the succedent is always a proper weakening
                    succ_options.push(None);
                    if !dropped.is_empty() {
                        succ_options.push(succ.clone());
                    }
                } else if !dropped.is_empty() {
                    succ_options.push(None);
                }
                for sub_succ in succ_options {
                    out.push(Move {
                        rule: Rule::Weaken,
                        premises: vec![(seq(kept.clone(), sub_succ), budget)],
                    });
                }
            }
        }
        if self.cfg.calculus == Calculus::FLec && budget > 0 {
            let mut seen: Option<&FOFormula> = None;
            for phi in ant {
                if seen == Some(phi) {
                    continue;
                }
                seen = Some(phi);
                let mut p = ant.clone();
                ms_insert(&mut p, phi.clone());
                out.push(Move {
                    rule: Rule::Contract { principal: phi.clone() },
                    premises: vec![(seq(p, succ.clone()), budget - 1)],
                });
            }
        }
        out
    }
}

fn split_by_mask(v: &[FOFormula], mask: u32) -> (Vec<FOFormula>, Vec<FOFormula>) {
    let mut selected = Vec::new();
    let mut rest = Vec::new();
    for (i, f) in v.iter().enumerate() {
        if mask >> i & 1 == 1 {
            selected.push(f.clone());
        } else {
            rest.push(f.clone());
        }
    }
    (selected, rest)
}

/// Applies the renaming "free `mid` becomes `fresh`, then free `from`
/// becomes `mid`" to every formula and rule datum in the tree; used to move
/// a derivation between variants of the same sequent.
pub fn rename_derivation(
    d: &Derivation,
    from: Var,
    mid: Var,
    fresh: Var,
    calculus: Calculus,
) -> Result<Derivation, ProofError> {
    let mut occurring = d.conclusion.occurring_vars();
    collect_tree_vars(d, &mut occurring);
    if occurring.contains(&fresh) {
        return Err(ProofError::NotFresh(super::display_var(fresh)));
    }
    let renamed = rename_node(d, from, mid, fresh)?;
    check_derivation(&renamed, calculus)?;
    Ok(renamed)
}

fn collect_tree_vars(d: &Derivation, out: &mut std::collections::BTreeSet<Var>) {
    out.extend(d.conclusion.occurring_vars());
    match &d.rule {
        Rule::AllLeft { term, .. } | Rule::ExRight { term } => {
            out.insert(*term);
        }
        Rule::AllRight { eigen } | Rule::ExLeft { eigen, .. } => {
            out.insert(*eigen);
        }
        _ => {}
    }
    for p in &d.premises {
        collect_tree_vars(p, out);
    }
}

fn rename_node(d: &Derivation, from: Var, mid: Var, fresh: Var) -> Result<Derivation, ProofError> {
    let var = |v: Var| {
        if v == mid {
            fresh
        } else if v == from {
            mid
        } else {
            v
        }
    };
    let formula = |f: &FOFormula| -> Result<FOFormula, ProofError> {
        Ok(f.substitute(mid, fresh)?.substitute(from, mid)?)
    };
    let antecedent = d.conclusion.antecedent.iter().map(&formula).collect::<Result<Vec<_>, _>>()?;
    let succedent = d.conclusion.succedent.as_ref().map(&formula).transpose()?;
    let rule = match &d.rule {
        Rule::ImpLeft { principal } => Rule::ImpLeft { principal: formula(principal)? },
        Rule::FuseLeft { principal } => Rule::FuseLeft { principal: formula(principal)? },
        Rule::AndLeft { principal, which } => {
            Rule::AndLeft { principal: formula(principal)?, which: *which }
        }
        Rule::OrLeft { principal } => Rule::OrLeft { principal: formula(principal)? },
        Rule::Contract { principal } => Rule::Contract { principal: formula(principal)? },
        Rule::AllLeft { principal, term } => {
            Rule::AllLeft { principal: formula(principal)?, term: var(*term) }
        }
        Rule::ExLeft { principal, eigen } => {
            Rule::ExLeft { principal: formula(principal)?, eigen: var(*eigen) }
        }
        Rule::AllRight { eigen } => Rule::AllRight { eigen: var(*eigen) },
        Rule::ExRight { term } => Rule::ExRight { term: var(*term) },
        other => other.clone(),
    };
    let premises = d
        .premises
        .iter()
        .map(|p| rename_node(p, from, mid, fresh))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation::new(seq(antecedent, succedent), rule, premises))
}
