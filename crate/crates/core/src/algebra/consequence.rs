//! Bounded semantic consequence: exhaustive evaluation over a finite battery
//! of algebras (equational) or over all structures up to a size bound
//! (first-order). A "holds" verdict is always relative to what was searched.

use super::structure::{eval_fo, eval_modal, Assignment, Structure};
use super::{AlgebraError, FiniteAlgebra, ModalExpansion};
use crate::syntax::{Equation, FOFormula, ModalFormula, Theory};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountermodelDetail {
    /// Equational side: the violating variable assignment.
    Assignment(Assignment),
    /// First-order side: the violating structure and the witness world.
    Structure { structure: Structure, world: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Countermodel {
    /// Position of the algebra in the supplied battery.
    pub algebra_index: usize,
    pub detail: CountermodelDetail,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsequenceVerdict {
    /// No countermodel within the searched bounds.
    Holds { algebras_checked: usize, candidates_checked: u64 },
    Fails(Countermodel),
    /// The structure enumeration would exceed the configured budget.
    BudgetExceeded { budget: u64, needed: u64 },
}

impl ConsequenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConsequenceVerdict::Holds { .. })
    }
}

fn all_tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = (base as u64).pow(len as u32);
    (0..count).map(move |mut flat| {
        let mut tuple = vec![0usize; len];
        for k in (0..len).rev() {
            tuple[k] = (flat % base as u64) as usize;
            flat /= base as u64;
        }
        tuple
    })
}

/// `Σ ⊨ α ≈ β` over the supplied battery: for each modal expansion, every
/// assignment to the occurring variables either falsifies a premise or
/// satisfies the conclusion.
pub fn equational_consequence(
    algebras: &[ModalExpansion],
    sigma: &Theory<ModalFormula>,
    conclusion: &Equation<ModalFormula>,
) -> Result<ConsequenceVerdict, AlgebraError> {
    let mut vars: BTreeSet<u32> = conclusion.lhs.variables();
    vars.extend(conclusion.rhs.variables());
    for eq in sigma {
        vars.extend(eq.lhs.variables());
        vars.extend(eq.rhs.variables());
    }
    let vars: Vec<u32> = vars.into_iter().collect();

    let mut checked = 0u64;
    for (algebra_index, m) in algebras.iter().enumerate() {
        for tuple in all_tuples(m.base.size, vars.len()) {
            checked += 1;
            let mut v = Assignment::empty_for(&m.base);
            for (&var, &value) in vars.iter().zip(&tuple) {
                v.values.insert(var, value);
            }
            let premises_hold = sigma.iter().try_fold(true, |acc, eq| {
                Ok::<_, AlgebraError>(acc && eval_modal(m, &v, &eq.lhs)? == eval_modal(m, &v, &eq.rhs)?)
            })?;
            if !premises_hold {
                continue;
            }
            let lhs_value = eval_modal(m, &v, &conclusion.lhs)?;
            let rhs_value = eval_modal(m, &v, &conclusion.rhs)?;
            if lhs_value != rhs_value {
                let cm = Countermodel {
                    algebra_index,
                    detail: CountermodelDetail::Assignment(v.clone()),
                    lhs_value,
                    rhs_value,
                };
                debug_assert_eq!(eval_modal(m, &v, &conclusion.lhs)?, lhs_value);
                return Ok(ConsequenceVerdict::Fails(cm));
            }
        }
    }
    Ok(ConsequenceVerdict::Holds { algebras_checked: algebras.len(), candidates_checked: checked })
}

/// An equation holds in a structure when both sides evaluate equally at
/// every world.
fn eq_valid(s: &Structure, eq: &Equation<FOFormula>) -> Result<bool, AlgebraError> {
    for u in 0..s.domain {
        if eval_fo(s, u, &eq.lhs)? != eval_fo(s, u, &eq.rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T ⊨ φ ≈ ψ` over all structures with the given bases and domain size at
/// most `max_s`, interpreting exactly the predicates that occur. The budget
/// caps the number of structures per (base, domain-size) pair.
pub fn fo_consequence(
    bases: &[FiniteAlgebra],
    max_s: usize,
    t: &Theory<FOFormula>,
    conclusion: &Equation<FOFormula>,
    budget: u64,
) -> Result<ConsequenceVerdict, AlgebraError> {
    let mut preds: BTreeSet<u32> = conclusion.lhs.predicates();
    preds.extend(conclusion.rhs.predicates());
    for eq in t {
        preds.extend(eq.lhs.predicates());
        preds.extend(eq.rhs.predicates());
    }
    let preds: Vec<u32> = preds.into_iter().collect();

    let mut checked = 0u64;
    for (algebra_index, base) in bases.iter().enumerate() {
        for domain in 1..=max_s {
            let cells = preds.len() * domain;
            let needed = (base.size as u64).checked_pow(cells as u32).unwrap_or(u64::MAX);
            if needed > budget {
                return Ok(ConsequenceVerdict::BudgetExceeded { budget, needed });
            }
            for tuple in all_tuples(base.size, cells) {
                checked += 1;
                let mut interpretation = BTreeMap::new();
                for (k, &p) in preds.iter().enumerate() {
                    interpretation.insert(p, tuple[k * domain..(k + 1) * domain].to_vec());
                }
                let s = Structure::new(base.clone(), domain, interpretation)?;
                let premises_valid =
                    t.iter().try_fold(true, |acc, eq| Ok::<_, AlgebraError>(acc && eq_valid(&s, eq)?))?;
                if !premises_valid {
                    continue;
                }
                for world in 0..domain {
                    let lhs_value = eval_fo(&s, world, &conclusion.lhs)?;
                    let rhs_value = eval_fo(&s, world, &conclusion.rhs)?;
                    if lhs_value != rhs_value {
                        return Ok(ConsequenceVerdict::Fails(Countermodel {
                            algebra_index,
                            detail: CountermodelDetail::Structure { structure: s, world },
                            lhs_value,
                            rhs_value,
                        }));
                    }
                }
            }
        }
    }
    Ok(ConsequenceVerdict::Holds { algebras_checked: bases.len(), candidates_checked: checked })
}

/// Re-evaluates a reported countermodel from scratch; used as a self-check
/// before surfacing verdicts to callers.
pub fn countermodel_is_genuine(
    cm: &Countermodel,
    modal: Option<(&ModalExpansion, &Equation<ModalFormula>)>,
    fo: Option<&Equation<FOFormula>>,
) -> Result<bool, AlgebraError> {
    match (&cm.detail, modal, fo) {
        (CountermodelDetail::Assignment(v), Some((m, eq)), _) => {
            Ok(eval_modal(m, v, &eq.lhs)? == cm.lhs_value
                && eval_modal(m, v, &eq.rhs)? == cm.rhs_value
                && cm.lhs_value != cm.rhs_value)
        }
        (CountermodelDetail::Structure { structure, world }, _, Some(eq)) => {
            Ok(eval_fo(structure, *world, &eq.lhs)? == cm.lhs_value
                && eval_fo(structure, *world, &eq.rhs)? == cm.rhs_value
                && cm.lhs_value != cm.rhs_value)
        }
        _ => Err(AlgebraError::InvalidInput("countermodel kind does not match query".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, lukasiewicz3, lukasiewicz3_modal};
    use crate::syntax::{parse_fo, parse_modal};

    fn modal_eq(lhs: &str, rhs: &str) -> Equation<ModalFormula> {
        Equation::new(parse_modal(lhs).unwrap(), parse_modal(rhs).unwrap())
    }

    fn fo_eq(lhs: &str, rhs: &str) -> Equation<FOFormula> {
        Equation::new(parse_fo(lhs).unwrap(), parse_fo(rhs).unwrap())
    }

    #[test]
    fn diamond_fusion_equation_refuted_on_l3() {
        let battery = vec![lukasiewicz3_modal()];
        let eq = modal_eq("dia p0 * dia p0", "dia (p0 * p0)");
        match equational_consequence(&battery, &vec![], &eq).unwrap() {
            ConsequenceVerdict::Fails(cm) => {
                assert_eq!(cm.algebra_index, 0);
                assert_eq!((cm.lhs_value, cm.rhs_value), (2, 0));
                match &cm.detail {
                    CountermodelDetail::Assignment(v) => assert_eq!(v.get(0), 1),
                    other => panic!("unexpected detail {other:?}"),
                }
                assert!(countermodel_is_genuine(&cm, Some((&battery[0], &eq)), None).unwrap());
            }
            other => panic!("expected countermodel, got {other:?}"),
        }
    }

    #[test]
    fn premise_entails_itself() {
        let battery = vec![lukasiewicz3_modal()];
        let eq = modal_eq("box p0", "p0 /\\ box p1");
        let verdict = equational_consequence(&battery, &vec![eq.clone()], &eq).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn box_idempotence_holds_on_the_battery() {
        let battery = vec![lukasiewicz3_modal(), ModalExpansion::identity(boolean2())];
        let eq = modal_eq("box box p0", "box p0");
        assert!(equational_consequence(&battery, &vec![], &eq).unwrap().holds());
    }

    #[test]
    fn universal_atom_refuted_on_boolean_two_worlds() {
        let eq = fo_eq("A x P0(x)", "P0(x)");
        match fo_consequence(&[boolean2()], 2, &vec![], &eq, 1_000_000).unwrap() {
            ConsequenceVerdict::Fails(cm) => {
                match &cm.detail {
                    CountermodelDetail::Structure { structure, world } => {
                        // only a non-constant interpretation separates the sides
                        let table = &structure.interpretation[&0];
                        assert_eq!(structure.domain, 2);
                        assert_ne!(table[0], table[1]);
                        assert_eq!(cm.lhs_value, 0);
                        assert_eq!(cm.rhs_value, table[*world]);
                    }
                    other => panic!("unexpected detail {other:?}"),
                }
                assert!(countermodel_is_genuine(&cm, None, Some(&eq)).unwrap());
            }
            other => panic!("expected countermodel, got {other:?}"),
        }
    }

    #[test]
    fn exists_distributes_over_fusion_on_chains() {
        // holds at this bound because Ł₃ is totally ordered
        let eq = fo_eq("E x P0(x) * E x P0(x)", "E x (P0(x) * P0(x))");
        let verdict = fo_consequence(&[lukasiewicz3()], 2, &vec![], &eq, 1_000_000).unwrap();
        assert!(verdict.holds(), "{verdict:?}");
    }

    #[test]
    fn fo_premise_entails_itself() {
        let eq = fo_eq("A x P0(x)", "P0(x) \\/ P1(x)");
        let verdict = fo_consequence(&[boolean2()], 2, &vec![eq.clone()], &eq, 1_000_000).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn tiny_budget_is_reported() {
        // holds through domain 2; domain 3 needs 27 structures > 10
        let eq = fo_eq("E x P0(x) * E x P0(x)", "E x (P0(x) * P0(x))");
        match fo_consequence(&[lukasiewicz3()], 3, &vec![], &eq, 10).unwrap() {
            ConsequenceVerdict::BudgetExceeded { budget: 10, .. } => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }
}
