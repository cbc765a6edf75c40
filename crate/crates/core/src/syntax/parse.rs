//! Recursive-descent parser for both formula languages.
//!
//! ASCII and UTF-8 spellings are both accepted:
//!
//! ```text
//! /\  ∧      \/  ∨      *  ·      ->  →
//! box □      dia ◇      A  ∀      E   ∃
//! P0(x)  P1(x2)  p0  f  e
//! ```
//!
//! Precedence, loosest first: `->` (right-associative), `\/`, `/\`, `*`;
//! modalities and quantifiers bind tightest.

use super::{BinOp, Constant, Equation, FOFormula, ModalFormula, Modality, Quantifier, Var};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Bin(BinOp),
    Modal(Modality),
    Quant(Quantifier),
    Const(Constant),
    PropVar(u32),
    Pred(u32),
    Var(Var),
    Turnstile,
    Approx,
    Leq,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let (tok, len) = if rest.starts_with("/\\") {
            (Tok::Bin(BinOp::Meet), 2)
        } else if rest.starts_with("\\/") {
            (Tok::Bin(BinOp::Join), 2)
        } else if rest.starts_with("->") {
            (Tok::Bin(BinOp::Imp), 2)
        } else if rest.starts_with("|-") {
            (Tok::Turnstile, 2)
        } else if rest.starts_with("<=") {
            (Tok::Leq, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                '*' | '·' => (Tok::Bin(BinOp::Fuse), c.len_utf8()),
                '∧' => (Tok::Bin(BinOp::Meet), c.len_utf8()),
                '∨' => (Tok::Bin(BinOp::Join), c.len_utf8()),
                '→' => (Tok::Bin(BinOp::Imp), c.len_utf8()),
                '□' => (Tok::Modal(Modality::Box), c.len_utf8()),
                '◇' => (Tok::Modal(Modality::Diamond), c.len_utf8()),
                '∀' => (Tok::Quant(Quantifier::All), c.len_utf8()),
                '∃' => (Tok::Quant(Quantifier::Ex), c.len_utf8()),
                '⇒' => (Tok::Turnstile, c.len_utf8()),
                '≈' | '=' => (Tok::Approx, c.len_utf8()),
                '≤' => (Tok::Leq, c.len_utf8()),
                _ if c.is_ascii_alphabetic() => {
                    let mut j = i + 1;
                    while j < src.len() && bytes[j].is_ascii_alphanumeric() {
                        j += 1;
                    }
                    let word = &src[i..j];
                    let tok = match word {
                        "box" => Tok::Modal(Modality::Box),
                        "dia" => Tok::Modal(Modality::Diamond),
                        "A" => Tok::Quant(Quantifier::All),
                        "E" => Tok::Quant(Quantifier::Ex),
                        "f" => Tok::Const(Constant::F),
                        "e" => Tok::Const(Constant::E),
                        "x" => Tok::Var(Var::X),
                        _ => {
                            let (head, digits) = word.split_at(1);
                            let index = || {
                                digits.parse::<u32>().map_err(|_| ParseError {
                                    pos: i,
                                    msg: format!("unknown token `{word}`"),
                                })
                            };
                            match head {
                                "P" if !digits.is_empty() => Tok::Pred(index()?),
                                "p" if !digits.is_empty() => Tok::PropVar(index()?),
                                "x" if !digits.is_empty() => Tok::Var(Var::Free(index()?)),
                                _ => return err(i, format!("unknown token `{word}`")),
                            }
                        }
                    };
                    (tok, word.len())
                }
                _ => return err(i, format!("unexpected character `{c}`")),
            }
        };
        toks.push((i, tok));
        i += len;
    }
    Ok(toks)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser { lexer: Lexer { src, toks: lex(src)? }, at: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lexer.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.lexer
            .toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or(self.lexer.src.len())
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lexer.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn at_end(&self) -> bool {
        self.at == self.lexer.toks.len()
    }

    // Precedence climbing; `->` is right-associative, the rest left.
    fn modal_expr(&mut self, min: u8) -> Result<ModalFormula, ParseError> {
        let mut lhs = self.modal_unary()?;
        while let Some(Tok::Bin(op)) = self.peek() {
            let op = *op;
            let p = bin_prec(op);
            if p < min {
                break;
            }
            self.next();
            let rhs = self.modal_expr(if op == BinOp::Imp { p } else { p + 1 })?;
            lhs = ModalFormula::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn modal_unary(&mut self) -> Result<ModalFormula, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Modal(m)) => Ok(ModalFormula::Modal(m, Box::new(self.modal_unary()?))),
            Some(Tok::PropVar(i)) => Ok(ModalFormula::Var(i)),
            Some(Tok::Const(c)) => Ok(ModalFormula::Const(c)),
            Some(Tok::LParen) => {
                let inner = self.modal_expr(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Quant(_)) => err(pos, "quantifier in a modal formula (use box/dia)"),
            Some(Tok::Pred(_)) => err(pos, "predicate atom in a modal formula (use p<i>)"),
            _ => err(pos, "expected a modal formula"),
        }
    }

    fn fo_expr(&mut self, min: u8) -> Result<FOFormula, ParseError> {
        let mut lhs = self.fo_unary()?;
        while let Some(Tok::Bin(op)) = self.peek() {
            let op = *op;
            let p = bin_prec(op);
            if p < min {
                break;
            }
            self.next();
            let rhs = self.fo_expr(if op == BinOp::Imp { p } else { p + 1 })?;
            lhs = FOFormula::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn fo_unary(&mut self) -> Result<FOFormula, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Quant(q)) => {
                let vpos = self.pos();
                match self.next() {
                    Some(Tok::Var(Var::X)) => {}
                    Some(Tok::Var(v @ Var::Free(_))) => {
                        return err(vpos, format!("quantifier over free-variable symbol {v}"))
                    }
                    _ => return err(vpos, "expected the bound variable x after a quantifier"),
                }
                let body = self.fo_unary()?;
                let bpos = vpos;
                FOFormula::quant(q, body).map_err(|e| ParseError { pos: bpos, msg: e.to_string() })
            }
            Some(Tok::Pred(i)) => {
                self.expect(Tok::LParen, "`(` after predicate")?;
                let vpos = self.pos();
                let v = match self.next() {
                    Some(Tok::Var(v)) => v,
                    _ => return err(vpos, "expected a variable inside a predicate atom"),
                };
                self.expect(Tok::RParen, "`)` after predicate argument")?;
                Ok(FOFormula::Atom(i, v))
            }
            Some(Tok::Const(c)) => Ok(FOFormula::Const(c)),
            Some(Tok::LParen) => {
                let inner = self.fo_expr(0)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Modal(_)) => err(pos, "modality in a first-order formula (use A x/E x)"),
            Some(Tok::PropVar(_)) => err(pos, "propositional variable in a first-order formula"),
            _ => err(pos, "expected a first-order formula"),
        }
    }
}

fn bin_prec(op: BinOp) -> u8 {
    match op {
        BinOp::Imp => 1,
        BinOp::Join => 2,
        BinOp::Meet => 3,
        BinOp::Fuse => 4,
    }
}

pub fn parse_modal(src: &str) -> Result<ModalFormula, ParseError> {
    let mut p = Parser::new(src)?;
    let phi = p.modal_expr(0)?;
    if !p.at_end() {
        return err(p.pos(), "trailing input after formula");
    }
    Ok(phi)
}

pub fn parse_fo(src: &str) -> Result<FOFormula, ParseError> {
    let mut p = Parser::new(src)?;
    let phi = p.fo_expr(0)?;
    if !p.at_end() {
        return err(p.pos(), "trailing input after formula");
    }
    Ok(phi)
}

/// Parses `Γ |- Δ` (also `Γ ⇒ Δ`): comma-separated antecedent, then an
/// optional single succedent formula. Either side may be empty.
pub fn parse_sequent_text(src: &str) -> Result<(Vec<FOFormula>, Option<FOFormula>), ParseError> {
    let mut p = Parser::new(src)?;
    let mut antecedent = Vec::new();
    if !matches!(p.peek(), Some(Tok::Turnstile)) {
        loop {
            antecedent.push(p.fo_expr(0)?);
            match p.peek() {
                Some(Tok::Comma) => {
                    p.next();
                }
                _ => break,
            }
        }
    }
    p.expect(Tok::Turnstile, "`|-`")?;
    let succedent = if p.at_end() { None } else { Some(p.fo_expr(0)?) };
    if !p.at_end() {
        return err(p.pos(), "trailing input after sequent");
    }
    Ok((antecedent, succedent))
}

/// Parses `lhs ≈ rhs` (also `=`), or `lhs ≤ rhs` / `lhs <= rhs` which is
/// stored in the expanded form `lhs ∧ rhs ≈ lhs`.
pub fn parse_modal_equation(src: &str) -> Result<Equation<ModalFormula>, ParseError> {
    let mut p = Parser::new(src)?;
    let lhs = p.modal_expr(0)?;
    let pos = p.pos();
    let leq = match p.next() {
        Some(Tok::Approx) => false,
        Some(Tok::Leq) => true,
        _ => return err(pos, "expected `≈` or `≤`"),
    };
    let rhs = p.modal_expr(0)?;
    if !p.at_end() {
        return err(p.pos(), "trailing input after equation");
    }
    Ok(if leq { Equation::<ModalFormula>::leq(lhs, rhs) } else { Equation::new(lhs, rhs) })
}

pub fn parse_fo_equation(src: &str) -> Result<Equation<FOFormula>, ParseError> {
    let mut p = Parser::new(src)?;
    let lhs = p.fo_expr(0)?;
    let pos = p.pos();
    let leq = match p.next() {
        Some(Tok::Approx) => false,
        Some(Tok::Leq) => true,
        _ => return err(pos, "expected `≈` or `≤`"),
    };
    let rhs = p.fo_expr(0)?;
    if !p.at_end() {
        return err(p.pos(), "trailing input after equation");
    }
    Ok(if leq { Equation::<FOFormula>::leq(lhs, rhs) } else { Equation::new(lhs, rhs) })
}
