//! Finite lattice-ordered algebras as operation tables, their modal
//! expansions, brute-force semantics, and bounded consequence checking.
//!
//! Everything here is desk-scale and exhaustive: algebras are finite, so the
//! lattice reduct is automatically complete, and every "holds" verdict of a
//! consequence check is relative to the finite battery and bounds supplied.

mod amalgam;
mod consequence;
mod enumerate;
mod json;
mod modal;
mod structure;

pub use amalgam::{is_superamalgam, search_functional_embedding, EmbeddingOutcome,
    SuperamalgamReport, VFormation};
pub use consequence::{
    countermodel_is_genuine, equational_consequence, fo_consequence, ConsequenceVerdict,
    Countermodel, CountermodelDetail,
};
pub use enumerate::{
    chain, enumerate_fle_algebras, enumerate_lattices, enumerate_modal_expansions,
    enumerate_modal_expansions_raw, enumerate_subuniverses,
};
pub use json::{algebra_from_json, algebra_to_json, expansion_from_json, expansion_to_json};
pub use modal::{
    adjoint_modalities, box_image, check_m_axioms, correspondence_roundtrip, decode_point,
    encode_point, full_functional, is_full_functional, is_relatively_complete, verify_subuniverse,
    AxiomCheck, CorrespondenceInput, MAxiomReport, ModalExpansion,
};
pub use structure::{
    eval_fo, eval_modal, evaluation_to_structure, structure_to_evaluation, Assignment, Structure,
};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const MEET: &str = "meet";
pub const JOIN: &str = "join";
pub const FUSE: &str = "fuse";
pub const IMP: &str = "imp";
pub const CONST_F: &str = "f";
pub const CONST_E: &str = "e";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operation `{0}` is missing")]
    MissingOp(String),
    #[error("operation `{name}` has a table of length {got}, expected {expected}")]
    BadTableSize { name: String, got: usize, expected: usize },
    #[error("operation `{name}` has out-of-range entry {value} at index {index}")]
    EntryOutOfRange { name: String, index: usize, value: usize },
    #[error("subset is not closed under `{op}`: applied to {args:?} gives {result}")]
    NotASubuniverse { op: String, args: Vec<usize>, result: usize },
    #[error("subset is not relatively complete at element {0}")]
    NotRelativelyComplete(usize),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("the world set W must be nonempty")]
    EmptyWorldSet,
    #[error("predicate P{0} is not interpreted")]
    UninterpretedPredicate(u32),
    #[error("formula is outside Fm¹ (free variable x{0} occurs)")]
    NotFm1(u32),
    #[error("modal expansion is not the full functional algebra over the given base")]
    NotFullFunctional,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("input algebra fails its validity check: {0}")]
    InvalidInput(String),
}

/// An operation given by its full table, row-major with the first argument
/// most significant: `table[a_1 * n^(k-1) + ... + a_k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTable {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl OpTable {
    pub fn constant(value: usize) -> OpTable {
        OpTable { arity: 0, table: vec![value] }
    }

    pub fn unary(table: Vec<usize>) -> OpTable {
        OpTable { arity: 1, table }
    }

    pub fn binary_from(n: usize, f: impl Fn(usize, usize) -> usize) -> OpTable {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(f(a, b));
            }
        }
        OpTable { arity: 2, table }
    }

    pub fn apply(&self, n: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let mut idx = 0;
        for &a in args {
            idx = idx * n + a;
        }
        self.table[idx]
    }
}

/// A finite algebra over a lattice-oriented signature: universe `{0,…,n−1}`,
/// named operation tables. `meet` and `join` are required; `fuse`, `imp` and
/// the constants `f`, `e` (arity-0 operations) are optional, as are extra
/// named operations of any arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub size: usize,
    pub ops: BTreeMap<String, OpTable>,
}

/// One failed law with a witness tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub law: String,
    pub witness: Vec<usize>,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, law: impl Into<String>, witness: &[usize]) {
        self.failures.push(CheckFailure { law: law.into(), witness: witness.to_vec() });
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            write!(f, "pass")
        } else {
            for failure in &self.failures {
                writeln!(f, "{failure}")?;
            }
            Ok(())
        }
    }
}

/// Residuated-lattice variants: plain FL_e, FL_ew (`f ≤ x ≤ e`), and
/// FL_ec (`x ≤ x·x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FleVariant {
    Plain,
    W,
    C,
}

impl FiniteAlgebra {
    pub fn new(size: usize) -> FiniteAlgebra {
        FiniteAlgebra { size, ops: BTreeMap::new() }
    }

    /// A pure-lattice algebra from its meet/join functions.
    pub fn lattice_from(n: usize, meet: impl Fn(usize, usize) -> usize, join: impl Fn(usize, usize) -> usize) -> FiniteAlgebra {
        let mut a = FiniteAlgebra::new(n);
        a.ops.insert(MEET.into(), OpTable::binary_from(n, meet));
        a.ops.insert(JOIN.into(), OpTable::binary_from(n, join));
        a
    }

    pub fn op(&self, name: &str) -> Result<&OpTable, AlgebraError> {
        self.ops.get(name).ok_or_else(|| AlgebraError::MissingOp(name.into()))
    }

    pub fn apply(&self, name: &str, args: &[usize]) -> Result<usize, AlgebraError> {
        Ok(self.op(name)?.apply(self.size, args))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.ops[MEET].apply(self.size, &[a, b])
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.ops[JOIN].apply(self.size, &[a, b])
    }

    pub fn fuse(&self, a: usize, b: usize) -> usize {
        self.ops[FUSE].apply(self.size, &[a, b])
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.ops[IMP].apply(self.size, &[a, b])
    }

    pub fn constant(&self, name: &str) -> Result<usize, AlgebraError> {
        Ok(self.op(name)?.table[0])
    }

    /// The lattice order `a ≤ b :⟺ a ∧ b = a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn has_fle_signature(&self) -> bool {
        [MEET, JOIN, FUSE, IMP, CONST_F, CONST_E].iter().all(|&n| self.ops.contains_key(n))
    }

    /// Table well-formedness: sizes and entry ranges for every operation.
    pub fn check_tables(&self) -> Result<(), AlgebraError> {
        for (name, op) in &self.ops {
            let expected = self.size.pow(op.arity as u32);
            if op.table.len() != expected {
                return Err(AlgebraError::BadTableSize {
                    name: name.clone(),
                    got: op.table.len(),
                    expected,
                });
            }
            for (index, &value) in op.table.iter().enumerate() {
                if value >= self.size {
                    return Err(AlgebraError::EntryOutOfRange { name: name.clone(), index, value });
                }
            }
        }
        Ok(())
    }

    /// Checks the lattice identities for `meet`/`join` and consistency of the
    /// derived order with `join`. Failures are report content, with witnesses.
    pub fn check_lattice(&self) -> CheckReport {
        let mut report = CheckReport::default();
        if let Err(e) = self.check_tables() {
            report.fail(format!("tables: {e}"), &[]);
            return report;
        }
        for required in [MEET, JOIN] {
            if !self.ops.contains_key(required) {
                report.fail(format!("missing operation `{required}`"), &[]);
            }
        }
        if !report.ok() {
            return report;
        }
        let n = self.size;
        for a in 0..n {
            if self.meet(a, a) != a {
                report.fail("idempotence x∧x ≈ x", &[a]);
            }
            if self.join(a, a) != a {
                report.fail("idempotence x∨x ≈ x", &[a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    report.fail("commutativity x∧y ≈ y∧x", &[a, b]);
                }
                if self.join(a, b) != self.join(b, a) {
                    report.fail("commutativity x∨y ≈ y∨x", &[a, b]);
                }
                if self.meet(a, self.join(a, b)) != a {
                    report.fail("absorption x∧(x∨y) ≈ x", &[a, b]);
                }
                if self.join(a, self.meet(a, b)) != a {
                    report.fail("absorption x∨(x∧y) ≈ x", &[a, b]);
                }
                // order consistency: a∧b = a ⟺ a∨b = b
                if (self.meet(a, b) == a) != (self.join(a, b) == b) {
                    report.fail("order consistency x∧y ≈ x ⟺ x∨y ≈ y", &[a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        report.fail("associativity of ∧", &[a, b, c]);
                    }
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        report.fail("associativity of ∨", &[a, b, c]);
                    }
                }
            }
        }
        report
    }

    /// Checks the FL_e-algebra laws: commutative monoid with unit `e`,
    /// residuation `a·b ≤ c ⟺ a ≤ b→c`, and the variant inequalities.
    pub fn check_fle(&self, variant: FleVariant) -> Result<CheckReport, AlgebraError> {
        for name in [FUSE, IMP, CONST_F, CONST_E] {
            self.op(name)?;
        }
        let mut report = self.check_lattice();
        if !report.ok() {
            return Ok(report);
        }
        let n = self.size;
        let e = self.constant(CONST_E)?;
        for a in 0..n {
            if self.fuse(a, e) != a {
                report.fail("unit x·e ≈ x", &[a]);
            }
            for b in 0..n {
                if self.fuse(a, b) != self.fuse(b, a) {
                    report.fail("commutativity of ·", &[a, b]);
                }
                for c in 0..n {
                    if self.fuse(self.fuse(a, b), c) != self.fuse(a, self.fuse(b, c)) {
                        report.fail("associativity of ·", &[a, b, c]);
                    }
                    if self.leq(self.fuse(a, b), c) != self.leq(a, self.imp(b, c)) {
                        report.fail("residuation x·y ≤ z ⟺ x ≤ y→z", &[a, b, c]);
                    }
                }
            }
        }
        match variant {
            FleVariant::Plain => {}
            FleVariant::W => {
                let f = self.constant(CONST_F)?;
                for a in 0..n {
                    if !self.leq(f, a) {
                        report.fail("integrality f ≤ x", &[a]);
                    }
                    if !self.leq(a, e) {
                        report.fail("integrality x ≤ e", &[a]);
                    }
                }
            }
            FleVariant::C => {
                for a in 0..n {
                    if !self.leq(a, self.fuse(a, a)) {
                        report.fail("square-increase x ≤ x·x", &[a]);
                    }
                }
            }
        }
        Ok(report)
    }
}

/// The three-element Łukasiewicz chain `0 < ½ < 1` in the FL_e signature
/// (elements 0, 1, 2 standing for 0, ½, 1), with `x·y = max(0, x+y−1)` and
/// `x→y = min(1, 1−x+y)`.
pub fn lukasiewicz3() -> FiniteAlgebra {
    let n = 3;
    let mut a = FiniteAlgebra::new(n);
    a.ops.insert(MEET.into(), OpTable::binary_from(n, |x, y| x.min(y)));
    a.ops.insert(JOIN.into(), OpTable::binary_from(n, |x, y| x.max(y)));
    // indices scaled by 2: value = idx/2, so x·y = max(0, x+y-2)
    a.ops.insert(FUSE.into(), OpTable::binary_from(n, |x, y| (x + y).saturating_sub(2)));
    a.ops.insert(IMP.into(), OpTable::binary_from(n, |x, y| (2 - x + y).min(2)));
    a.ops.insert(CONST_F.into(), OpTable::constant(0));
    a.ops.insert(CONST_E.into(), OpTable::constant(2));
    a
}

/// The Ł₃ modal expansion with `□0 = □½ = ◇0 = 0` and `□1 = ◇½ = ◇1 = 1`.
pub fn lukasiewicz3_modal() -> ModalExpansion {
    ModalExpansion {
        base: lukasiewicz3(),
        box_table: vec![0, 0, 2],
        diamond_table: vec![0, 2, 2],
    }
}

/// The two-element Boolean algebra in the FL_e signature (`· = ∧`).
pub fn boolean2() -> FiniteAlgebra {
    let n = 2;
    let mut a = FiniteAlgebra::new(n);
    a.ops.insert(MEET.into(), OpTable::binary_from(n, |x, y| x.min(y)));
    a.ops.insert(JOIN.into(), OpTable::binary_from(n, |x, y| x.max(y)));
    a.ops.insert(FUSE.into(), OpTable::binary_from(n, |x, y| x.min(y)));
    a.ops.insert(IMP.into(), OpTable::binary_from(n, |x, y| if x <= y { 1 } else { y }));
    a.ops.insert(CONST_F.into(), OpTable::constant(0));
    a.ops.insert(CONST_E.into(), OpTable::constant(1));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_chain_is_a_lattice() {
        let a = FiniteAlgebra::lattice_from(2, |x, y| x.min(y), |x, y| x.max(y));
        assert!(a.check_lattice().ok());
    }

    #[test]
    fn non_commutative_meet_reported_with_witness() {
        let mut a = FiniteAlgebra::lattice_from(2, |x, y| x.min(y), |x, y| x.max(y));
        // corrupt: 0∧1 = 1 while 1∧0 = 0
        a.ops.get_mut(MEET).unwrap().table[1] = 1;
        let report = a.check_lattice();
        assert!(!report.ok());
        assert!(report
            .failures
            .iter()
            .any(|f| f.law.contains("commutativity x∧y") && f.witness == vec![0, 1]));
    }

    #[test]
    fn three_chain_passes_and_order_is_chain() {
        let a = chain(3);
        assert!(a.check_lattice().ok());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(a.leq(x, y), x <= y);
            }
        }
    }

    #[test]
    fn lukasiewicz3_is_fle_and_flew_but_not_flec() {
        let l3 = lukasiewicz3();
        assert!(l3.check_fle(FleVariant::Plain).unwrap().ok());
        assert!(l3.check_fle(FleVariant::W).unwrap().ok());
        let report = l3.check_fle(FleVariant::C).unwrap();
        assert!(!report.ok());
        // witness x = ½ (index 1): ½·½ = 0 so ½ ≰ ½·½
        assert!(report
            .failures
            .iter()
            .any(|f| f.law.contains("square-increase") && f.witness == vec![1]));
    }

    #[test]
    fn boolean2_passes_all_variants() {
        let b = boolean2();
        for v in [FleVariant::Plain, FleVariant::W, FleVariant::C] {
            assert!(b.check_fle(v).unwrap().ok());
        }
    }

    #[test]
    fn corrupted_imp_yields_residuation_witness() {
        let mut l3 = lukasiewicz3();
        // corrupt → at (½, 0): true value is ½→0 = min(1, 1−½+0) = ½, force 0
        l3.ops.get_mut(IMP).unwrap().table[3] = 0;
        let report = l3.check_fle(FleVariant::Plain).unwrap();
        // recomputed by hand: ½·½ = 0 ≤ 0 but ½ ≰ ½→0 = 0, so the triple
        // (½, ½, 0) violates residuation.
        assert!(report
            .failures
            .iter()
            .any(|f| f.law.contains("residuation") && f.witness == vec![1, 1, 0]));
    }

    #[test]
    fn missing_fuse_is_an_error() {
        let a = chain(2);
        assert_eq!(a.check_fle(FleVariant::Plain), Err(AlgebraError::MissingOp(FUSE.into())));
    }
}
