//! Property tests for the structural invariants: translation inverses,
//! substitution behavior, multiset canonicalization, and JSON stability.

use monolat::algebra::{algebra_from_json, algebra_to_json, chain, enumerate_lattices};
use monolat::proof::Sequent;
use monolat::syntax::{BinOp, Constant, FOFormula, ModalFormula, Quantifier, Var};
use proptest::prelude::*;

fn modal_formula() -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        (0u32..3).prop_map(ModalFormula::Var),
        Just(ModalFormula::Const(Constant::E)),
        Just(ModalFormula::Const(Constant::F)),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), any::<u8>()).prop_map(|(a, b, k)| {
                let op = [BinOp::Meet, BinOp::Join, BinOp::Fuse, BinOp::Imp][(k % 4) as usize];
                ModalFormula::bin(op, a, b)
            }),
            inner.clone().prop_map(ModalFormula::boxed),
            inner.prop_map(ModalFormula::diamond),
        ]
    })
}

fn fm1_formula() -> impl Strategy<Value = FOFormula> {
    modal_formula().prop_map(|a| a.circle())
}

proptest! {
    #[test]
    fn star_and_circle_are_mutually_inverse(alpha in modal_formula()) {
        prop_assert_eq!(alpha.circle().star().unwrap(), alpha);
    }

    #[test]
    fn circle_lands_in_the_one_variable_fragment(alpha in modal_formula()) {
        prop_assert!(alpha.circle().is_fm1());
    }

    #[test]
    fn parse_inverts_display_modal(alpha in modal_formula()) {
        let rendered = alpha.to_string();
        prop_assert_eq!(monolat::syntax::parse_modal(&rendered).unwrap(), alpha);
    }

    #[test]
    fn parse_inverts_display_fo(phi in fm1_formula()) {
        let rendered = phi.to_string();
        prop_assert_eq!(monolat::syntax::parse_fo(&rendered).unwrap(), phi);
    }

    #[test]
    fn substituting_a_fresh_variable_is_invertible(phi in fm1_formula()) {
        // x ↦ x9 on an Fm¹ formula touches exactly the free occurrences
        let renamed = phi.substitute(Var::X, Var::Free(9)).unwrap();
        prop_assert_eq!(renamed.substitute(Var::Free(9), Var::X).unwrap(), phi);
    }

    #[test]
    fn sequent_antecedents_are_canonically_sorted(
        formulas in proptest::collection::vec(fm1_formula(), 0..4)
    ) {
        let s = Sequent::new(formulas, None).unwrap();
        prop_assert!(s.antecedent.windows(2).all(|w| w[0] <= w[1]));
        // rebuilding from a permutation yields the same sequent
        let mut reversed = s.antecedent.clone();
        reversed.reverse();
        prop_assert_eq!(Sequent::new(reversed, None).unwrap(), s);
    }

    #[test]
    fn node_count_is_positive_and_additive(phi in fm1_formula(), psi in fm1_formula()) {
        let combined = FOFormula::bin(BinOp::Meet, phi.clone(), psi.clone());
        prop_assert_eq!(combined.node_count(), 1 + phi.node_count() + psi.node_count());
    }

    #[test]
    fn quantifying_binds_the_variable(phi in fm1_formula()) {
        let closed = FOFormula::quant(Quantifier::All, phi).unwrap();
        prop_assert!(closed.is_sentence());
    }

    #[test]
    fn algebra_json_roundtrips(n in 1usize..4) {
        for a in enumerate_lattices(n) {
            let json = algebra_to_json(&a);
            prop_assert_eq!(algebra_from_json(&json).unwrap(), a);
        }
        let c = chain(n);
        prop_assert_eq!(algebra_from_json(&algebra_to_json(&c)).unwrap(), c);
    }
}
