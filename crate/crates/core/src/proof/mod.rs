//! Cut-free sequent calculi for the one-variable language: derivation
//! checking, backward proof search, and interpolant extraction.

mod check;
mod interpolate;
mod search;

pub use check::check_derivation;
pub use interpolate::{admissible_partitions, interpolate, InterpolationResult, Side};
pub use search::{prove, rename_derivation, SearchConfig, SearchOutcome};

use crate::algebra::{fo_consequence, AlgebraError, ConsequenceVerdict, FiniteAlgebra};
use crate::syntax::{BinOp, Constant, Equation, FOFormula, Quantifier, SyntaxError, Var};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The three calculi: base (exchange only), with weakening, with contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Calculus {
    FLe,
    FLew,
    FLec,
}

impl std::fmt::Display for Calculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Calculus::FLe => "FLe",
            Calculus::FLew => "FLew",
            Calculus::FLec => "FLec",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("node at path {path:?}: {reason}")]
    InvalidRule { path: Vec<usize>, reason: String },
    #[error("sequent formula is outside Fm¹⁺")]
    NotFm1Plus,
    #[error("partition assigns {got} sides for {expected} antecedent formulas")]
    PartitionLength { got: usize, expected: usize },
    #[error("partition is inadmissible: `{0}` is free on both sides")]
    SharedVariable(String),
    #[error("variable `{0}` is not fresh for the derivation")]
    NotFresh(String),
}

/// `Γ ⇒ Δ` with a multiset antecedent (kept sorted as its canonical form)
/// and an at-most-singleton succedent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub antecedent: Vec<FOFormula>,
    pub succedent: Option<FOFormula>,
}

impl Sequent {
    pub fn new(mut antecedent: Vec<FOFormula>, succedent: Option<FOFormula>) -> Result<Sequent, ProofError> {
        if antecedent.iter().chain(&succedent).any(|f| !f.is_fm1_plus()) {
            return Err(ProofError::NotFm1Plus);
        }
        antecedent.sort();
        Ok(Sequent { antecedent, succedent })
    }

    pub fn parse(src: &str) -> Result<Sequent, ProofError> {
        let (antecedent, succedent) = crate::syntax::parse_sequent_text(src).map_err(|e| {
            ProofError::InvalidRule { path: vec![], reason: e.to_string() }
        })?;
        Sequent::new(antecedent, succedent)
    }

    /// Total node count of all formulas; the termination measure for
    /// backward search in FLe/FLew.
    pub fn size(&self) -> usize {
        self.antecedent.iter().chain(&self.succedent).map(|f| f.node_count()).sum()
    }

    /// Variables with any occurrence, free or bound, anywhere in the sequent.
    pub fn occurring_vars(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        for f in self.antecedent.iter().chain(&self.succedent) {
            out.extend(f.occurring_vars());
        }
        out
    }

    pub fn free_vars(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        for f in self.antecedent.iter().chain(&self.succedent) {
            out.extend(f.free_vars());
        }
        out
    }

    /// The smallest-index `x_i` not occurring in the sequent.
    pub fn fresh_var(&self) -> Var {
        let used = self.occurring_vars();
        Var::Free((0..).find(|&i| !used.contains(&Var::Free(i))).unwrap())
    }
}

impl std::fmt::Display for Sequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, phi) in self.antecedent.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{phi}")?;
        }
        if self.antecedent.is_empty() {
            write!(f, "⇒")?;
        } else {
            write!(f, " ⇒")?;
        }
        if let Some(psi) = &self.succedent {
            write!(f, " {psi}")?;
        }
        Ok(())
    }
}

/// A rule application; left-rule variants carry their principal formula,
/// quantifier rules their instantiating term or eigenvariable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `φ ⇒ φ`
    Id,
    /// `f ⇒`
    FLeft,
    /// `⇒ e`
    ERight,
    /// `Γ ⇒ Δ ⊢ Γ, e ⇒ Δ`
    ELeft,
    /// `Γ ⇒ ⊢ Γ ⇒ f`
    FRight,
    /// `Γ₁ ⇒ φ and Γ₂, ψ ⇒ Δ ⊢ Γ₁, Γ₂, φ→ψ ⇒ Δ`
    ImpLeft { principal: FOFormula },
    /// `Γ, φ ⇒ ψ ⊢ Γ ⇒ φ→ψ`
    ImpRight,
    /// `Γ, φ, ψ ⇒ Δ ⊢ Γ, φ·ψ ⇒ Δ`
    FuseLeft { principal: FOFormula },
    /// `Γ₁ ⇒ φ and Γ₂ ⇒ ψ ⊢ Γ₁, Γ₂ ⇒ φ·ψ`
    FuseRight,
    /// `Γ, φ_which ⇒ Δ ⊢ Γ, φ₀∧φ₁ ⇒ Δ`
    AndLeft { principal: FOFormula, which: u8 },
    /// `Γ ⇒ φ and Γ ⇒ ψ ⊢ Γ ⇒ φ∧ψ`
    AndRight,
    /// `Γ, φ ⇒ Δ and Γ, ψ ⇒ Δ ⊢ Γ, φ∨ψ ⇒ Δ`
    OrLeft { principal: FOFormula },
    /// `Γ ⇒ φ_which ⊢ Γ ⇒ φ₀∨φ₁`
    OrRight { which: u8 },
    /// `Γ, φ(t) ⇒ Δ ⊢ Γ, ∀xφ(x) ⇒ Δ`, t occurring in the conclusion
    AllLeft { principal: FOFormula, term: Var },
    /// `Γ ⇒ φ(y) ⊢ Γ ⇒ ∀xφ(x)`, y not free in the conclusion
    AllRight { eigen: Var },
    /// `Γ, φ(y) ⇒ Δ ⊢ Γ, ∃xφ(x) ⇒ Δ`, y not free in the conclusion
    ExLeft { principal: FOFormula, eigen: Var },
    /// `Γ ⇒ φ(t) ⊢ Γ ⇒ ∃xφ(x)`, t occurring in the conclusion
    ExRight { term: Var },
    /// FLew only: premise antecedent a sub-multiset, succedent kept or added
    Weaken,
    /// FLec only: `Γ, φ, φ ⇒ Δ ⊢ Γ, φ ⇒ Δ`
    Contract { principal: FOFormula },
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Id => "id",
            Rule::FLeft => "f⇒",
            Rule::ERight => "⇒e",
            Rule::ELeft => "e⇒",
            Rule::FRight => "⇒f",
            Rule::ImpLeft { .. } => "→⇒",
            Rule::ImpRight => "⇒→",
            Rule::FuseLeft { .. } => "·⇒",
            Rule::FuseRight => "⇒·",
            Rule::AndLeft { which: 0, .. } => "∧⇒₁",
            Rule::AndLeft { .. } => "∧⇒₂",
            Rule::AndRight => "⇒∧",
            Rule::OrLeft { .. } => "∨⇒",
            Rule::OrRight { which: 0 } => "⇒∨₁",
            Rule::OrRight { .. } => "⇒∨₂",
            Rule::AllLeft { .. } => "∀⇒",
            Rule::AllRight { .. } => "⇒∀",
            Rule::ExLeft { .. } => "∃⇒",
            Rule::ExRight { .. } => "⇒∃",
            Rule::Weaken => "w",
            Rule::Contract { .. } => "c",
        }
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(
            self,
            Rule::AllLeft { .. } | Rule::AllRight { .. } | Rule::ExLeft { .. } | Rule::ExRight { .. }
        )
    }
}

pub(crate) fn display_var(v: Var) -> String {
    match v {
        Var::X => "x".into(),
        Var::Free(i) => format!("x{i}"),
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())?;
        match self {
            Rule::ImpLeft { principal }
            | Rule::FuseLeft { principal }
            | Rule::AndLeft { principal, .. }
            | Rule::OrLeft { principal }
            | Rule::Contract { principal } => write!(f, " [{principal}]"),
            Rule::AllLeft { principal, term } => write!(f, " [{principal}; t={}]", display_var(*term)),
            Rule::ExLeft { principal, eigen } => {
                write!(f, " [{principal}; y={}]", display_var(*eigen))
            }
            Rule::AllRight { eigen } => write!(f, " [y={}]", display_var(*eigen)),
            Rule::ExRight { term } => write!(f, " [t={}]", display_var(*term)),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(conclusion: Sequent, rule: Rule, premises: Vec<Derivation>) -> Derivation {
        Derivation { conclusion, rule, premises }
    }

    /// Maximum number of quantifier-rule applications on any branch.
    pub fn md(&self) -> usize {
        let here = usize::from(self.rule.is_quantifier());
        here + self.premises.iter().map(Derivation::md).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    fn render(&self, indent: usize, out: &mut String) {
        use std::fmt::Write;
        let _ = writeln!(out, "{:indent$}{}   ({})", "", self.conclusion, self.rule, indent = indent);
        for p in &self.premises {
            p.render(indent + 2, out);
        }
    }
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        self.render(0, &mut out);
        f.write_str(out.trim_end_matches('\n'))
    }
}

/// `∏Γ`: left-associated fusion in canonical multiset order; `∏() = e`.
pub fn prod(gamma: &[FOFormula]) -> FOFormula {
    let mut it = gamma.iter().cloned();
    match it.next() {
        None => FOFormula::Const(Constant::E),
        Some(first) => it.fold(first, |acc, phi| FOFormula::bin(BinOp::Fuse, acc, phi)),
    }
}

/// `∑Δ`: the single succedent formula, or `f` when empty.
pub fn sum(delta: Option<&FOFormula>) -> FOFormula {
    delta.cloned().unwrap_or(FOFormula::Const(Constant::F))
}

/// Sound-direction bridge: a derivable `Fm¹` sequent must yield no
/// countermodel for `∏Γ ≤ ∑Δ` over the battery.
pub fn soundness_bridge(
    s: &Sequent,
    bases: &[FiniteAlgebra],
    max_s: usize,
    budget: u64,
) -> Result<ConsequenceVerdict, AlgebraError> {
    for f in s.antecedent.iter().chain(&s.succedent) {
        if !f.is_fm1() {
            let i = f
                .occurring_vars()
                .into_iter()
                .find_map(|v| match v {
                    Var::Free(i) => Some(i),
                    Var::X => None,
                })
                .unwrap_or(0);
            return Err(AlgebraError::NotFm1(i));
        }
    }
    let eq = Equation::<FOFormula>::leq(prod(&s.antecedent), sum(s.succedent.as_ref()));
    fo_consequence(bases, max_s, &vec![], &eq, budget)
}

// ---- multiset helpers over sorted vectors ----

pub(crate) fn ms_insert(v: &mut Vec<FOFormula>, f: FOFormula) {
    let pos = v.partition_point(|g| g <= &f);
    v.insert(pos, f);
}

pub(crate) fn ms_remove(v: &[FOFormula], f: &FOFormula) -> Option<Vec<FOFormula>> {
    let pos = v.iter().position(|g| g == f)?;
    let mut out = v.to_vec();
    out.remove(pos);
    Some(out)
}

/// `a − b` if `b ⊆ a` as multisets.
pub(crate) fn ms_sub(a: &[FOFormula], b: &[FOFormula]) -> Option<Vec<FOFormula>> {
    let mut rest = a.to_vec();
    for f in b {
        let pos = rest.iter().position(|g| g == f)?;
        rest.remove(pos);
    }
    Some(rest)
}

pub(crate) fn ms_union(a: &[FOFormula], b: &[FOFormula]) -> Vec<FOFormula> {
    let mut out = a.to_vec();
    for f in b {
        ms_insert(&mut out, f.clone());
    }
    out
}

/// `∀xφ(x)`, `∃xφ(x)`: the premise formula obtained by plugging `v` in for
/// the bound variable.
pub(crate) fn instantiate(quantified: &FOFormula, v: Var) -> Result<FOFormula, ProofError> {
    match quantified {
        FOFormula::Quant(_, body) => Ok(body.substitute(Var::X, v)?),
        _ => Err(ProofError::InvalidRule {
            path: vec![],
            reason: format!("`{quantified}` is not a quantified formula"),
        }),
    }
}

pub(crate) fn quantifier_of(f: &FOFormula) -> Option<Quantifier> {
    match f {
        FOFormula::Quant(q, _) => Some(*q),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_fo;

    #[test]
    fn prod_and_sum_of_empty() {
        assert_eq!(prod(&[]), FOFormula::Const(Constant::E));
        assert_eq!(sum(None), FOFormula::Const(Constant::F));
    }

    #[test]
    fn prod_of_two_is_fusion() {
        let phi = parse_fo("P0(x)").unwrap();
        let psi = parse_fo("P1(x)").unwrap();
        assert_eq!(prod(&[phi.clone(), psi.clone()]), FOFormula::bin(BinOp::Fuse, phi, psi));
    }

    #[test]
    fn sequent_parsing_and_display() {
        let s = Sequent::parse("P0(x), A x P1(x) |- P0(x) * P1(x)").unwrap();
        assert_eq!(s.antecedent.len(), 2);
        let printed = s.to_string();
        let reparsed = Sequent::parse(&printed).unwrap();
        assert_eq!(s, reparsed);
    }

    #[test]
    fn antecedent_is_canonically_sorted() {
        let a = Sequent::parse("P1(x), P0(x) |-").unwrap();
        let b = Sequent::parse("P0(x), P1(x) |-").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fresh_var_skips_occurring_indices() {
        let s = Sequent::parse("P0(x0), P1(x2) |-").unwrap();
        assert_eq!(s.fresh_var(), Var::Free(1));
    }

    #[test]
    fn md_is_a_branch_maximum() {
        // ∀xP₀(x) ⇒ P₀(x₁) via (∀⇒): md = 1
        let leaf = Derivation::new(Sequent::parse("P0(x1) |- P0(x1)").unwrap(), Rule::Id, vec![]);
        let root = Derivation::new(
            Sequent::parse("A x P0(x) |- P0(x1)").unwrap(),
            Rule::AllLeft { principal: parse_fo("A x P0(x)").unwrap(), term: Var::Free(1) },
            vec![leaf],
        );
        assert_eq!(root.md(), 1);
    }
}
