//! Structures interpreting one-variable formulas, evaluations of modal
//! formulas, and the conversions between the two pictures.

use super::modal::{decode_point, encode_point, is_full_functional};
use super::{full_functional, AlgebraError, FiniteAlgebra, ModalExpansion, CONST_E};
use crate::syntax::{BinOp, Constant, FOFormula, ModalFormula, Modality, Quantifier, Var};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A structure over a finite lattice-based algebra: a nonempty domain
/// `{0,…,domain−1}` and, for each interpreted predicate index, a function
/// from the domain into the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub base: FiniteAlgebra,
    pub domain: usize,
    pub interpretation: BTreeMap<u32, Vec<usize>>,
}

impl Structure {
    pub fn new(
        base: FiniteAlgebra,
        domain: usize,
        interpretation: BTreeMap<u32, Vec<usize>>,
    ) -> Result<Structure, AlgebraError> {
        if domain == 0 {
            return Err(AlgebraError::EmptyWorldSet);
        }
        for table in interpretation.values() {
            if table.len() != domain {
                return Err(AlgebraError::InvalidInput(format!(
                    "predicate table has length {}, domain has size {domain}",
                    table.len()
                )));
            }
            for &value in table {
                if value >= base.size {
                    return Err(AlgebraError::ElementOutOfRange(value));
                }
            }
        }
        Ok(Structure { base, domain, interpretation })
    }
}

/// Maps propositional-variable indices to algebra elements. Variables
/// outside the finite support get `default`; evaluation only inspects
/// occurring variables, so the default is never observable for formulas
/// whose variables are all assigned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub values: BTreeMap<u32, usize>,
    pub default: usize,
}

impl Assignment {
    /// Default element: the unit `e` when present, else the lattice bottom
    /// if one exists, else 0.
    pub fn empty_for(algebra: &FiniteAlgebra) -> Assignment {
        let default = algebra
            .constant(CONST_E)
            .ok()
            .or_else(|| (0..algebra.size).find(|&b| (0..algebra.size).all(|x| algebra.leq(b, x))))
            .unwrap_or(0);
        Assignment { values: BTreeMap::new(), default }
    }

    pub fn with(mut self, var: u32, value: usize) -> Assignment {
        self.values.insert(var, value);
        self
    }

    pub fn get(&self, var: u32) -> usize {
        self.values.get(&var).copied().unwrap_or(self.default)
    }
}

/// Homomorphic evaluation of a modal formula using `m`'s tables.
pub fn eval_modal(m: &ModalExpansion, v: &Assignment, alpha: &ModalFormula) -> Result<usize, AlgebraError> {
    Ok(match alpha {
        ModalFormula::Var(i) => v.get(*i),
        ModalFormula::Const(c) => m.base.constant(match c {
            Constant::F => super::CONST_F,
            Constant::E => CONST_E,
        })?,
        ModalFormula::Bin(op, lhs, rhs) => {
            let l = eval_modal(m, v, lhs)?;
            let r = eval_modal(m, v, rhs)?;
            let name = match op {
                BinOp::Meet => super::MEET,
                BinOp::Join => super::JOIN,
                BinOp::Fuse => super::FUSE,
                BinOp::Imp => super::IMP,
            };
            m.base.apply(name, &[l, r])?
        }
        ModalFormula::Modal(Modality::Box, inner) => m.bx(eval_modal(m, v, inner)?),
        ModalFormula::Modal(Modality::Diamond, inner) => m.dia(eval_modal(m, v, inner)?),
    })
}

/// `⟦φ⟧ᔆᵤ` for a one-variable formula: predicates read the interpretation at
/// the current world, quantifiers are meets/joins over the whole domain.
pub fn eval_fo(s: &Structure, u: usize, phi: &FOFormula) -> Result<usize, AlgebraError> {
    if u >= s.domain {
        return Err(AlgebraError::ElementOutOfRange(u));
    }
    Ok(match phi {
        FOFormula::Atom(i, var) => {
            let world = match var {
                Var::X => u,
                Var::Free(j) => return Err(AlgebraError::NotFm1(*j)),
            };
            s.interpretation
                .get(i)
                .ok_or(AlgebraError::UninterpretedPredicate(*i))?[world]
        }
        FOFormula::Const(c) => s.base.constant(match c {
            Constant::F => super::CONST_F,
            Constant::E => CONST_E,
        })?,
        FOFormula::Bin(op, lhs, rhs) => {
            let l = eval_fo(s, u, lhs)?;
            let r = eval_fo(s, u, rhs)?;
            let name = match op {
                BinOp::Meet => super::MEET,
                BinOp::Join => super::JOIN,
                BinOp::Fuse => super::FUSE,
                BinOp::Imp => super::IMP,
            };
            s.base.apply(name, &[l, r])?
        }
        FOFormula::Quant(q, body) => {
            let mut acc = eval_fo(s, 0, body)?;
            for v in 1..s.domain {
                let next = eval_fo(s, v, body)?;
                acc = match q {
                    Quantifier::All => s.base.meet(acc, next),
                    Quantifier::Ex => s.base.join(acc, next),
                };
            }
            acc
        }
    })
}

/// A structure over `A` with domain `W` becomes an evaluation into the full
/// functional algebra `A^W`: each predicate table *is* the assigned function.
pub fn structure_to_evaluation(s: &Structure) -> Result<(ModalExpansion, Assignment), AlgebraError> {
    let power = full_functional(&s.base, s.domain)?;
    let mut v = Assignment::empty_for(&power.base);
    for (&i, table) in &s.interpretation {
        v.values.insert(i, encode_point(s.base.size, table));
    }
    Ok((power, v))
}

/// Inverse of [`structure_to_evaluation`]: `m` must be exactly the full
/// functional algebra over `base` with `w` worlds; the assigned functions
/// become predicate tables.
pub fn evaluation_to_structure(
    m: &ModalExpansion,
    base: &FiniteAlgebra,
    w: usize,
    v: &Assignment,
) -> Result<Structure, AlgebraError> {
    if !is_full_functional(m, base, w) {
        return Err(AlgebraError::NotFullFunctional);
    }
    let mut interpretation = BTreeMap::new();
    for (&i, &value) in &v.values {
        if value >= m.base.size {
            return Err(AlgebraError::ElementOutOfRange(value));
        }
        interpretation.insert(i, decode_point(base.size, w, value));
    }
    Structure::new(base.clone(), w, interpretation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, lukasiewicz3_modal};
    use crate::syntax::{parse_fo, parse_modal};

    fn boolean_structure() -> Structure {
        // S = {u, v} with I(P₀)(u) = 1, I(P₀)(v) = 0
        Structure::new(boolean2(), 2, BTreeMap::from([(0, vec![1, 0])])).unwrap()
    }

    #[test]
    fn quantifiers_are_meets_and_joins_over_the_domain() {
        let s = boolean_structure();
        for u in 0..2 {
            assert_eq!(eval_fo(&s, u, &parse_fo("A x P0(x)").unwrap()), Ok(0));
            assert_eq!(eval_fo(&s, u, &parse_fo("E x P0(x)").unwrap()), Ok(1));
        }
    }

    #[test]
    fn atom_reads_the_interpretation_at_the_current_world() {
        let s = boolean_structure();
        let p = parse_fo("P0(x)").unwrap();
        assert_eq!(eval_fo(&s, 0, &p), Ok(1));
        assert_eq!(eval_fo(&s, 1, &p), Ok(0));
    }

    #[test]
    fn uninterpreted_predicate_is_an_error() {
        let s = boolean_structure();
        assert_eq!(
            eval_fo(&s, 0, &parse_fo("P7(x)").unwrap()),
            Err(AlgebraError::UninterpretedPredicate(7))
        );
    }

    #[test]
    fn diamond_does_not_commute_with_fusion_on_l3() {
        let m = lukasiewicz3_modal();
        let v = Assignment::empty_for(&m.base).with(0, 1);
        assert_eq!(eval_modal(&m, &v, &parse_modal("dia p0 * dia p0").unwrap()), Ok(2));
        assert_eq!(eval_modal(&m, &v, &parse_modal("dia (p0 * p0)").unwrap()), Ok(0));
    }

    #[test]
    fn unit_constant_evaluates_to_e() {
        let m = lukasiewicz3_modal();
        let v = Assignment::empty_for(&m.base);
        assert_eq!(eval_modal(&m, &v, &parse_modal("e").unwrap()), Ok(2));
    }

    #[test]
    fn modal_evaluation_in_the_functional_boolean_square() {
        let ff = full_functional(&boolean2(), 2).unwrap();
        // p₀ ↦ function (1,0), encoded as index 2
        let v = Assignment::empty_for(&ff.base).with(0, 2);
        // □(1,0) ∨ ◇(1,0) = (0,0) ∨ (1,1) = (1,1), encoded 3
        assert_eq!(eval_modal(&ff, &v, &parse_modal("box p0 \\/ dia p0").unwrap()), Ok(3));
    }

    #[test]
    fn structure_becomes_assignment_into_the_power_algebra() {
        let (power, v) = structure_to_evaluation(&boolean_structure()).unwrap();
        assert_eq!(power.base.size, 4);
        assert_eq!(v.get(0), 2); // (1,0)
    }

    #[test]
    fn conversion_roundtrip_is_identity() {
        let s = boolean_structure();
        let (power, v) = structure_to_evaluation(&s).unwrap();
        let back = evaluation_to_structure(&power, &s.base, s.domain, &v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn evaluation_to_structure_rejects_non_functional_algebras() {
        let m = lukasiewicz3_modal();
        let v = Assignment::empty_for(&m.base);
        assert_eq!(
            evaluation_to_structure(&m, &m.base, 1, &v),
            Err(AlgebraError::NotFullFunctional)
        );
    }

    #[test]
    fn star_translation_commutes_with_evaluation() {
        // Cor 3.5(a) shape: ⟦φ⟧ᔆᵤ equals coordinate u of the star-translate's
        // value under the converted evaluation.
        let s = boolean_structure();
        let (power, v) = structure_to_evaluation(&s).unwrap();
        for src in ["A x P0(x)", "E x P0(x)", "P0(x) -> A x P0(x)", "A x (P0(x) * P0(x)) \\/ e"] {
            let phi = parse_fo(src).unwrap();
            let alpha = phi.star().unwrap();
            let value = eval_modal(&power, &v, &alpha).unwrap();
            let coords = decode_point(s.base.size, s.domain, value);
            for u in 0..s.domain {
                assert_eq!(eval_fo(&s, u, &phi).unwrap(), coords[u], "{src} at world {u}");
            }
        }
    }
}
