//! Formula syntax for the one-variable first-order language and its modal
//! counterpart, together with the mutually inverse translations between them.
//!
//! Two formula languages share the connectives `∧ ∨ · →` and constants
//! `f`, `e`:
//!
//! * [`ModalFormula`]: propositional variables `p_i` plus modalities `□ ◇`.
//! * [`FOFormula`]: unary atoms `P_i(v)` plus quantifiers `∀x ∃x` binding the
//!   single variable `x`. Extra free variables `x_i` may occur, but never
//!   inside a quantifier scope (the `Fm¹⁺` discipline); this is enforced by
//!   the quantifier constructors.

mod parse;
mod print;

pub use parse::{
    parse_fo, parse_fo_equation, parse_modal, parse_modal_equation, parse_sequent_text, ParseError,
};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// The bound variable `x` or a free variable `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    /// The unique quantifiable variable `x`.
    X,
    /// The free variable `x_i`.
    Free(u32),
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Free(i) => write!(f, "x{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BinOp {
    Meet,
    Join,
    Fuse,
    Imp,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Meet, BinOp::Join, BinOp::Fuse, BinOp::Imp];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Meet => "∧",
            BinOp::Join => "∨",
            BinOp::Fuse => "·",
            BinOp::Imp => "→",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Constant {
    F,
    E,
}

impl Constant {
    pub fn symbol(self) -> &'static str {
        match self {
            Constant::F => "f",
            Constant::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantifier {
    All,
    Ex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Modality {
    Box,
    Diamond,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("formula is not in Fm¹: free variable {0} occurs")]
    NotFm1(Var),
    #[error("free variable {0} occurs inside a quantifier scope")]
    QuantifierScope(Var),
    #[error("substituting {from} by {to} would capture an occurrence")]
    Capture { from: Var, to: Var },
    #[error("renaming target {0} already occurs")]
    NotFresh(Var),
}

/// Propositional modal formulas over variables `p_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModalFormula {
    Var(u32),
    Const(Constant),
    Bin(BinOp, Box<ModalFormula>, Box<ModalFormula>),
    Modal(Modality, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn bin(op: BinOp, lhs: ModalFormula, rhs: ModalFormula) -> ModalFormula {
        ModalFormula::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn boxed(inner: ModalFormula) -> ModalFormula {
        ModalFormula::Modal(Modality::Box, Box::new(inner))
    }

    pub fn diamond(inner: ModalFormula) -> ModalFormula {
        ModalFormula::Modal(Modality::Diamond, Box::new(inner))
    }

    pub fn node_count(&self) -> usize {
        match self {
            ModalFormula::Var(_) | ModalFormula::Const(_) => 1,
            ModalFormula::Bin(_, l, r) => 1 + l.node_count() + r.node_count(),
            ModalFormula::Modal(_, a) => 1 + a.node_count(),
        }
    }

    /// Indices of the propositional variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<u32>) {
        match self {
            ModalFormula::Var(i) => {
                out.insert(*i);
            }
            ModalFormula::Const(_) => {}
            ModalFormula::Bin(_, l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            ModalFormula::Modal(_, a) => a.collect_variables(out),
        }
    }

    /// The translation `(-)°` into the one-variable first-order language.
    pub fn circle(&self) -> FOFormula {
        match self {
            ModalFormula::Var(i) => FOFormula::Atom(*i, Var::X),
            ModalFormula::Const(c) => FOFormula::Const(*c),
            ModalFormula::Bin(op, l, r) => FOFormula::bin(*op, l.circle(), r.circle()),
            ModalFormula::Modal(Modality::Box, a) => {
                FOFormula::Quant(Quantifier::All, Box::new(a.circle()))
            }
            ModalFormula::Modal(Modality::Diamond, a) => {
                FOFormula::Quant(Quantifier::Ex, Box::new(a.circle()))
            }
        }
    }
}

/// One-variable first-order formulas in `Fm¹⁺`: quantifiers bind only `x`
/// and no `x_i` occurs inside a quantifier scope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FOFormula {
    /// Unary atom `P_i(v)`.
    Atom(u32, Var),
    Const(Constant),
    Bin(BinOp, Box<FOFormula>, Box<FOFormula>),
    /// `∀x φ` or `∃x φ`; the body must contain no free variable `x_i`.
    Quant(Quantifier, Box<FOFormula>),
}

impl FOFormula {
    pub fn bin(op: BinOp, lhs: FOFormula, rhs: FOFormula) -> FOFormula {
        FOFormula::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    /// Builds `∀x body` / `∃x body`, rejecting bodies that mention any `x_i`.
    pub fn quant(q: Quantifier, body: FOFormula) -> Result<FOFormula, SyntaxError> {
        if let Some(v) = body.first_free_indexed() {
            return Err(SyntaxError::QuantifierScope(v));
        }
        Ok(FOFormula::Quant(q, Box::new(body)))
    }

    pub fn forall(body: FOFormula) -> Result<FOFormula, SyntaxError> {
        FOFormula::quant(Quantifier::All, body)
    }

    pub fn exists(body: FOFormula) -> Result<FOFormula, SyntaxError> {
        FOFormula::quant(Quantifier::Ex, body)
    }

    fn first_free_indexed(&self) -> Option<Var> {
        match self {
            FOFormula::Atom(_, v @ Var::Free(_)) => Some(*v),
            FOFormula::Atom(_, Var::X) | FOFormula::Const(_) => None,
            FOFormula::Bin(_, l, r) => l.first_free_indexed().or_else(|| r.first_free_indexed()),
            FOFormula::Quant(_, b) => b.first_free_indexed(),
        }
    }

    /// Checks the `Fm¹⁺` scope condition on an arbitrarily built tree.
    pub fn is_fm1_plus(&self) -> bool {
        match self {
            FOFormula::Atom(..) | FOFormula::Const(_) => true,
            FOFormula::Bin(_, l, r) => l.is_fm1_plus() && r.is_fm1_plus(),
            FOFormula::Quant(_, b) => b.first_free_indexed().is_none() && b.is_fm1_plus(),
        }
    }

    /// Member of `Fm¹`: no `x_i` occurs at all.
    pub fn is_fm1(&self) -> bool {
        match self {
            FOFormula::Atom(_, Var::Free(_)) => false,
            FOFormula::Atom(_, Var::X) | FOFormula::Const(_) => true,
            FOFormula::Bin(_, l, r) => l.is_fm1() && r.is_fm1(),
            FOFormula::Quant(_, b) => b.is_fm1(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            FOFormula::Atom(..) | FOFormula::Const(_) => 1,
            FOFormula::Bin(_, l, r) => 1 + l.node_count() + r.node_count(),
            FOFormula::Quant(_, b) => 1 + b.node_count(),
        }
    }

    /// Free variables; `x` is bound by any enclosing quantifier.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Var>) {
        match self {
            FOFormula::Atom(_, v) => {
                out.insert(*v);
            }
            FOFormula::Const(_) => {}
            FOFormula::Bin(_, l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
            // x is bound below; x_i cannot occur below in Fm¹⁺.
            FOFormula::Quant(_, _) => {}
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Variables with any occurrence, free or bound (`x` counts as occurring
    /// in `∀x φ` even when it has no free occurrence).
    pub fn occurring_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_occurring(&mut out);
        out
    }

    fn collect_occurring(&self, out: &mut BTreeSet<Var>) {
        match self {
            FOFormula::Atom(_, v) => {
                out.insert(*v);
            }
            FOFormula::Const(_) => {}
            FOFormula::Bin(_, l, r) => {
                l.collect_occurring(out);
                r.collect_occurring(out);
            }
            FOFormula::Quant(_, b) => {
                out.insert(Var::X);
                b.collect_occurring(out);
            }
        }
    }

    /// Predicate indices occurring in the formula.
    pub fn predicates(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut BTreeSet<u32>) {
        match self {
            FOFormula::Atom(i, _) => {
                out.insert(*i);
            }
            FOFormula::Const(_) => {}
            FOFormula::Bin(_, l, r) => {
                l.collect_predicates(out);
                r.collect_predicates(out);
            }
            FOFormula::Quant(_, b) => b.collect_predicates(out),
        }
    }

    /// Replaces every free occurrence of `from` by `to` (capture-avoiding).
    pub fn substitute(&self, from: Var, to: Var) -> Result<FOFormula, SyntaxError> {
        if from == to {
            return Ok(self.clone());
        }
        self.subst_rec(from, to, false)
    }

    fn subst_rec(&self, from: Var, to: Var, in_scope: bool) -> Result<FOFormula, SyntaxError> {
        match self {
            FOFormula::Atom(i, v) if *v == from => {
                if in_scope {
                    // A free occurrence of `from` under a quantifier can only
                    // be x_i (x is bound there), which Fm¹⁺ forbids; if we see
                    // one anyway, substituting x in would be a capture.
                    if to == Var::X {
                        return Err(SyntaxError::Capture { from, to });
                    }
                }
                Ok(FOFormula::Atom(*i, to))
            }
            FOFormula::Atom(..) | FOFormula::Const(_) => Ok(self.clone()),
            FOFormula::Bin(op, l, r) => Ok(FOFormula::bin(
                *op,
                l.subst_rec(from, to, in_scope)?,
                r.subst_rec(from, to, in_scope)?,
            )),
            FOFormula::Quant(q, b) => {
                if from == Var::X {
                    // x is bound below: nothing free to replace.
                    Ok(self.clone())
                } else {
                    Ok(FOFormula::Quant(*q, Box::new(b.subst_rec(from, to, true)?)))
                }
            }
        }
    }

    /// The translation `(-)∗` into the modal language; requires `Fm¹`.
    pub fn star(&self) -> Result<ModalFormula, SyntaxError> {
        match self {
            FOFormula::Atom(i, Var::X) => Ok(ModalFormula::Var(*i)),
            FOFormula::Atom(_, v @ Var::Free(_)) => Err(SyntaxError::NotFm1(*v)),
            FOFormula::Const(c) => Ok(ModalFormula::Const(*c)),
            FOFormula::Bin(op, l, r) => Ok(ModalFormula::bin(*op, l.star()?, r.star()?)),
            FOFormula::Quant(Quantifier::All, b) => Ok(ModalFormula::boxed(b.star()?)),
            FOFormula::Quant(Quantifier::Ex, b) => Ok(ModalFormula::diamond(b.star()?)),
        }
    }
}

/// An equation `lhs ≈ rhs` between two formulas of the same syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation<F> {
    pub lhs: F,
    pub rhs: F,
}

impl<F: Clone> Equation<F> {
    pub fn new(lhs: F, rhs: F) -> Self {
        Equation { lhs, rhs }
    }
}

impl Equation<FOFormula> {
    /// `φ ≤ ψ` stored in the expanded form `φ ∧ ψ ≈ φ`.
    pub fn leq(lhs: FOFormula, rhs: FOFormula) -> Self {
        Equation {
            lhs: FOFormula::bin(BinOp::Meet, lhs.clone(), rhs),
            rhs: lhs,
        }
    }
}

impl Equation<ModalFormula> {
    pub fn leq(lhs: ModalFormula, rhs: ModalFormula) -> Self {
        Equation {
            lhs: ModalFormula::bin(BinOp::Meet, lhs.clone(), rhs),
            rhs: lhs,
        }
    }
}

impl<F: std::fmt::Display> std::fmt::Display for Equation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

/// A finite list of equations.
pub type Theory<F> = Vec<Equation<F>>;
