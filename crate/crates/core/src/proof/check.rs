//! Local-correctness checking of derivation trees.

use super::{instantiate, ms_remove, ms_sub, ms_union, Calculus, Derivation, ProofError, Rule};
use crate::syntax::{BinOp, Constant, FOFormula, Quantifier};

fn fail(path: &[usize], reason: impl Into<String>) -> ProofError {
    ProofError::InvalidRule { path: path.to_vec(), reason: reason.into() }
}

/// Validates every node of `d`: premise counts, multiset arithmetic of the
/// contexts, principal-formula decomposition, quantifier side conditions,
/// and calculus membership of the structural rules. Reports the first
/// violating node with its path (premise indices from the root).
pub fn check_derivation(d: &Derivation, calculus: Calculus) -> Result<(), ProofError> {
    let mut path = Vec::new();
    check_node(d, calculus, &mut path)
}

fn expect_premises(d: &Derivation, n: usize, path: &[usize]) -> Result<(), ProofError> {
    if d.premises.len() != n {
        return Err(fail(
            path,
            format!("rule {} expects {n} premises, found {}", d.rule.tag(), d.premises.len()),
        ));
    }
    Ok(())
}

fn check_node(d: &Derivation, calculus: Calculus, path: &mut Vec<usize>) -> Result<(), ProofError> {
    let c = &d.conclusion;
    if c.antecedent.iter().chain(&c.succedent).any(|f| !f.is_fm1_plus()) {
        return Err(fail(path, "conclusion contains a formula outside Fm¹⁺"));
    }
    if !c.antecedent.windows(2).all(|w| w[0] <= w[1]) {
        return Err(fail(path, "antecedent is not in canonical (sorted) order"));
    }

    match &d.rule {
        Rule::Id => {
            expect_premises(d, 0, path)?;
            if !(c.antecedent.len() == 1 && c.succedent.as_ref() == Some(&c.antecedent[0])) {
                return Err(fail(path, "(id) requires φ ⇒ φ"));
            }
        }
        Rule::FLeft => {
            expect_premises(d, 0, path)?;
            if c.antecedent != [FOFormula::Const(Constant::F)] || c.succedent.is_some() {
                return Err(fail(path, "(f⇒) requires f ⇒"));
            }
        }
        Rule::ERight => {
            expect_premises(d, 0, path)?;
            if !c.antecedent.is_empty() || c.succedent != Some(FOFormula::Const(Constant::E)) {
                return Err(fail(path, "(⇒e) requires ⇒ e"));
            }
        }
        Rule::ELeft => {
            expect_premises(d, 1, path)?;
            let p = &d.premises[0].conclusion;
            let rest = ms_remove(&c.antecedent, &FOFormula::Const(Constant::E))
                .ok_or_else(|| fail(path, "(e⇒) conclusion has no antecedent occurrence of e"))?;
            if p.antecedent != rest || p.succedent != c.succedent {
                return Err(fail(path, "(e⇒) premise must be the conclusion without one e"));
            }
        }
        Rule::FRight => {
            expect_premises(d, 1, path)?;
            let p = &d.premises[0].conclusion;
            if c.succedent != Some(FOFormula::Const(Constant::F)) {
                return Err(fail(path, "(⇒f) conclusion succedent must be f"));
            }
            if p.succedent.is_some() || p.antecedent != c.antecedent {
                return Err(fail(path, "(⇒f) premise must be the conclusion with empty succedent"));
            }
        }
        Rule::ImpLeft { principal } => {
            expect_premises(d, 2, path)?;
            let FOFormula::Bin(BinOp::Imp, phi, psi) = principal else {
                return Err(fail(path, "(→⇒) principal must be an implication"));
            };
            let p1 = &d.premises[0].conclusion;
            let p2 = &d.premises[1].conclusion;
            if p1.succedent.as_ref() != Some(&**phi) {
                return Err(fail(path, "(→⇒) first premise must conclude the antecedent of →"));
            }
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(→⇒) principal missing from the conclusion"))?;
            let p2_rest = ms_remove(&p2.antecedent, psi)
                .ok_or_else(|| fail(path, "(→⇒) second premise lacks the consequent of →"))?;
            if ms_union(&p1.antecedent, &p2_rest) != rest || p2.succedent != c.succedent {
                return Err(fail(path, "(→⇒) contexts do not split the conclusion"));
            }
        }
        Rule::ImpRight => {
            expect_premises(d, 1, path)?;
            let Some(FOFormula::Bin(BinOp::Imp, phi, psi)) = &c.succedent else {
                return Err(fail(path, "(⇒→) succedent must be an implication"));
            };
            let p = &d.premises[0].conclusion;
            let expected = ms_union(&c.antecedent, std::slice::from_ref(phi));
            if p.antecedent != expected || p.succedent.as_ref() != Some(&**psi) {
                return Err(fail(path, "(⇒→) premise must move the antecedent of → left"));
            }
        }
        Rule::FuseLeft { principal } => {
            expect_premises(d, 1, path)?;
            let FOFormula::Bin(BinOp::Fuse, phi, psi) = principal else {
                return Err(fail(path, "(·⇒) principal must be a fusion"));
            };
            let p = &d.premises[0].conclusion;
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(·⇒) principal missing from the conclusion"))?;
            let expected = ms_union(&rest, &[(**phi).clone(), (**psi).clone()]);
            if p.antecedent != expected || p.succedent != c.succedent {
                return Err(fail(path, "(·⇒) premise must split the fusion"));
            }
        }
        Rule::FuseRight => {
            expect_premises(d, 2, path)?;
            let Some(FOFormula::Bin(BinOp::Fuse, phi, psi)) = &c.succedent else {
                return Err(fail(path, "(⇒·) succedent must be a fusion"));
            };
            let p1 = &d.premises[0].conclusion;
            let p2 = &d.premises[1].conclusion;
            if p1.succedent.as_ref() != Some(&**phi) || p2.succedent.as_ref() != Some(&**psi) {
                return Err(fail(path, "(⇒·) premises must conclude the two factors"));
            }
            if ms_union(&p1.antecedent, &p2.antecedent) != c.antecedent {
                return Err(fail(path, "(⇒·) contexts do not split the conclusion"));
            }
        }
        Rule::AndLeft { principal, which } => {
            expect_premises(d, 1, path)?;
            let FOFormula::Bin(BinOp::Meet, phi0, phi1) = principal else {
                return Err(fail(path, "(∧⇒ᵢ) principal must be a meet"));
            };
            let kept = if *which == 0 { phi0 } else { phi1 };
            let p = &d.premises[0].conclusion;
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(∧⇒ᵢ) principal missing from the conclusion"))?;
            let expected = ms_union(&rest, std::slice::from_ref(kept));
            if p.antecedent != expected || p.succedent != c.succedent {
                return Err(fail(path, "(∧⇒ᵢ) premise must keep the selected conjunct"));
            }
        }
        Rule::AndRight => {
            expect_premises(d, 2, path)?;
            let Some(FOFormula::Bin(BinOp::Meet, phi, psi)) = &c.succedent else {
                return Err(fail(path, "(⇒∧) succedent must be a meet"));
            };
            for (p, part) in d.premises.iter().zip([phi, psi]) {
                let p = &p.conclusion;
                if p.antecedent != c.antecedent || p.succedent.as_ref() != Some(&**part) {
                    return Err(fail(path, "(⇒∧) premises must share the context"));
                }
            }
        }
        Rule::OrLeft { principal } => {
            expect_premises(d, 2, path)?;
            let FOFormula::Bin(BinOp::Join, phi, psi) = principal else {
                return Err(fail(path, "(∨⇒) principal must be a join"));
            };
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(∨⇒) principal missing from the conclusion"))?;
            for (p, part) in d.premises.iter().zip([phi, psi]) {
                let p = &p.conclusion;
                let expected = ms_union(&rest, std::slice::from_ref(part));
                if p.antecedent != expected || p.succedent != c.succedent {
                    return Err(fail(path, "(∨⇒) premises must case-split the join"));
                }
            }
        }
        Rule::OrRight { which } => {
            expect_premises(d, 1, path)?;
            let Some(FOFormula::Bin(BinOp::Join, phi0, phi1)) = &c.succedent else {
                return Err(fail(path, "(⇒∨ᵢ) succedent must be a join"));
            };
            let kept = if *which == 0 { phi0 } else { phi1 };
            let p = &d.premises[0].conclusion;
            if p.antecedent != c.antecedent || p.succedent.as_ref() != Some(&**kept) {
                return Err(fail(path, "(⇒∨ᵢ) premise must conclude the selected disjunct"));
            }
        }
        Rule::AllLeft { principal, term } => {
            expect_premises(d, 1, path)?;
            if quantifier_is(principal) != Some(Quantifier::All) {
                return Err(fail(path, "(∀⇒) principal must be universally quantified"));
            }
            if !c.occurring_vars().contains(term) {
                return Err(fail(
                    path,
                    format!("(∀⇒) side condition (i): term {} does not occur in the conclusion", super::display_var(*term)),
                ));
            }
            let inst = instantiate(principal, *term)?;
            let p = &d.premises[0].conclusion;
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(∀⇒) principal missing from the conclusion"))?;
            let expected = ms_union(&rest, std::slice::from_ref(&inst));
            if p.antecedent != expected || p.succedent != c.succedent {
                return Err(fail(path, "(∀⇒) premise must instantiate the principal"));
            }
        }
        Rule::AllRight { eigen } => {
            expect_premises(d, 1, path)?;
            let Some(succ) = &c.succedent else {
                return Err(fail(path, "(⇒∀) requires a succedent"));
            };
            if quantifier_is(succ) != Some(Quantifier::All) {
                return Err(fail(path, "(⇒∀) succedent must be universally quantified"));
            }
            if c.free_vars().contains(eigen) {
                return Err(fail(
                    path,
                    format!("(⇒∀) side condition (ii): eigenvariable {} is free in the conclusion", super::display_var(*eigen)),
                ));
            }
            let inst = instantiate(succ, *eigen)?;
            let p = &d.premises[0].conclusion;
            if p.antecedent != c.antecedent || p.succedent.as_ref() != Some(&inst) {
                return Err(fail(path, "(⇒∀) premise must conclude the instantiated body"));
            }
        }
        Rule::ExLeft { principal, eigen } => {
            expect_premises(d, 1, path)?;
            if quantifier_is(principal) != Some(Quantifier::Ex) {
                return Err(fail(path, "(∃⇒) principal must be existentially quantified"));
            }
            if c.free_vars().contains(eigen) {
                return Err(fail(
                    path,
                    format!("(∃⇒) side condition (ii): eigenvariable {} is free in the conclusion", super::display_var(*eigen)),
                ));
            }
            let inst = instantiate(principal, *eigen)?;
            let p = &d.premises[0].conclusion;
            let rest = ms_remove(&c.antecedent, principal)
                .ok_or_else(|| fail(path, "(∃⇒) principal missing from the conclusion"))?;
            let expected = ms_union(&rest, std::slice::from_ref(&inst));
            if p.antecedent != expected || p.succedent != c.succedent {
                return Err(fail(path, "(∃⇒) premise must instantiate the principal"));
            }
        }
        Rule::ExRight { term } => {
            expect_premises(d, 1, path)?;
            let Some(succ) = &c.succedent else {
                return Err(fail(path, "(⇒∃) requires a succedent"));
            };
            if quantifier_is(succ) != Some(Quantifier::Ex) {
                return Err(fail(path, "(⇒∃) succedent must be existentially quantified"));
            }
            if !c.occurring_vars().contains(term) {
                return Err(fail(
                    path,
                    format!("(⇒∃) side condition (i): term {} does not occur in the conclusion", super::display_var(*term)),
                ));
            }
            let inst = instantiate(succ, *term)?;
            let p = &d.premises[0].conclusion;
            if p.antecedent != c.antecedent || p.succedent.as_ref() != Some(&inst) {
                return Err(fail(path, "(⇒∃) premise must conclude the instantiated body"));
            }
        }
        Rule::Weaken => {
            if calculus != Calculus::FLew {
                return Err(fail(path, "(w) is only available in FLew"));
            }
            expect_premises(d, 1, path)?;
            let p = &d.premises[0].conclusion;
            if ms_sub(&c.antecedent, &p.antecedent).is_none() {
                return Err(fail(path, "(w) premise antecedent must be a sub-multiset"));
            }
            let succ_ok = p.succedent == c.succedent || p.succedent.is_none();
            if !succ_ok {
                return Err(fail(path, "(w) cannot replace a nonempty succedent"));
            }
            if p.antecedent == c.antecedent && p.succedent == c.succedent {
                return Err(fail(path, "(w) must weaken properly"));
            }
        }
        Rule::Contract { principal } => {
            if calculus != Calculus::FLec {
                return Err(fail(path, "(c) is only available in FLec"));
            }
            expect_premises(d, 1, path)?;
            if !c.antecedent.contains(principal) {
                return Err(fail(path, "(c) principal missing from the conclusion"));
            }
            let p = &d.premises[0].conclusion;
            let expected = ms_union(&c.antecedent, std::slice::from_ref(principal));
            if p.antecedent != expected || p.succedent != c.succedent {
                return Err(fail(path, "(c) premise must duplicate the principal"));
            }
        }
    }

    for (i, premise) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, calculus, path)?;
        path.pop();
    }
    Ok(())
}

fn quantifier_is(f: &FOFormula) -> Option<Quantifier> {
    super::quantifier_of(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::Sequent;
    use crate::syntax::{parse_fo, Var};

    fn seq(src: &str) -> Sequent {
        Sequent::parse(src).unwrap()
    }

    #[test]
    fn unit_axiom_checks() {
        let d = Derivation::new(seq("|- e"), Rule::ERight, vec![]);
        assert_eq!(check_derivation(&d, Calculus::FLe), Ok(()));
    }

    #[test]
    fn forall_instantiation_checks() {
        let d = Derivation::new(
            seq("A x P0(x) |- P0(x1)"),
            Rule::AllLeft { principal: parse_fo("A x P0(x)").unwrap(), term: Var::Free(1) },
            vec![Derivation::new(seq("P0(x1) |- P0(x1)"), Rule::Id, vec![])],
        );
        assert_eq!(check_derivation(&d, Calculus::FLe), Ok(()));
        assert_eq!(d.md(), 1);
    }

    #[test]
    fn eigenvariable_free_in_conclusion_is_rejected() {
        // ⇒∀ with eigenvariable x₀ while x₀ is free in the antecedent
        let d = Derivation::new(
            seq("P1(x0) |- A x P0(x)"),
            Rule::AllRight { eigen: Var::Free(0) },
            vec![Derivation::new(seq("P1(x0) |- P0(x0)"), Rule::Weaken, vec![])],
        );
        match check_derivation(&d, Calculus::FLe) {
            Err(ProofError::InvalidRule { path, reason }) => {
                assert_eq!(path, Vec::<usize>::new());
                assert!(reason.contains("side condition (ii)"), "{reason}");
            }
            other => panic!("expected side-condition error, got {other:?}"),
        }
    }

    #[test]
    fn instantiation_term_must_occur() {
        let d = Derivation::new(
            seq("A x P0(x) |- P0(x1)"),
            Rule::AllLeft { principal: parse_fo("A x P0(x)").unwrap(), term: Var::Free(5) },
            vec![Derivation::new(seq("P0(x5) |- P0(x1)"), Rule::Id, vec![])],
        );
        match check_derivation(&d, Calculus::FLe) {
            Err(ProofError::InvalidRule { reason, .. }) => {
                assert!(reason.contains("side condition (i)"), "{reason}");
            }
            other => panic!("expected side-condition error, got {other:?}"),
        }
    }

    #[test]
    fn structural_rules_are_calculus_gated() {
        let w = Derivation::new(
            seq("P0(x) |- P0(x)"),
            Rule::Weaken,
            vec![Derivation::new(seq("P0(x) |- P0(x)"), Rule::Id, vec![])],
        );
        // improper weakening rejected even in FLew
        assert!(check_derivation(&w, Calculus::FLew).is_err());

        let w2 = Derivation::new(
            seq("P0(x), P1(x) |- P0(x)"),
            Rule::Weaken,
            vec![Derivation::new(seq("P0(x) |- P0(x)"), Rule::Id, vec![])],
        );
        assert_eq!(check_derivation(&w2, Calculus::FLew), Ok(()));
        assert!(check_derivation(&w2, Calculus::FLe).is_err());
        assert!(check_derivation(&w2, Calculus::FLec).is_err());
    }

    #[test]
    fn error_paths_point_into_the_tree() {
        let bad_leaf = Derivation::new(seq("P0(x) |- P1(x)"), Rule::Id, vec![]);
        let root = Derivation::new(
            seq("P0(x) /\\ P0(x) |- P1(x)"),
            Rule::AndLeft { principal: parse_fo("P0(x) /\\ P0(x)").unwrap(), which: 0 },
            vec![bad_leaf],
        );
        match check_derivation(&root, Calculus::FLe) {
            Err(ProofError::InvalidRule { path, .. }) => assert_eq!(path, vec![0]),
            other => panic!("expected nested failure, got {other:?}"),
        }
    }
}
