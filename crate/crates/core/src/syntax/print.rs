//! Canonical pretty-printer: UTF-8 symbols, minimal parentheses.
//!
//! Precedence (loosest to tightest): `→` (right-associative), `∨`, `∧`, `·`,
//! modalities/quantifiers. `parse(print(φ)) = φ` for every formula.

use super::{BinOp, FOFormula, ModalFormula, Modality, Quantifier};
use std::fmt::{self, Display, Formatter, Write};

fn prec(op: BinOp) -> u8 {
    match op {
        BinOp::Imp => 1,
        BinOp::Join => 2,
        BinOp::Meet => 3,
        BinOp::Fuse => 4,
    }
}

const PREC_UNARY: u8 = 5;

impl Display for ModalFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_modal(self, 0, f)
    }
}

fn write_modal(phi: &ModalFormula, min: u8, f: &mut Formatter<'_>) -> fmt::Result {
    match phi {
        ModalFormula::Var(i) => write!(f, "p{i}"),
        ModalFormula::Const(c) => f.write_str(c.symbol()),
        ModalFormula::Modal(m, a) => {
            if PREC_UNARY < min {
                f.write_char('(')?;
            }
            f.write_str(match m {
                Modality::Box => "□",
                Modality::Diamond => "◇",
            })?;
            write_modal(a, PREC_UNARY, f)?;
            if PREC_UNARY < min {
                f.write_char(')')?;
            }
            Ok(())
        }
        ModalFormula::Bin(op, l, r) => {
            let p = prec(*op);
            if p < min {
                f.write_char('(')?;
            }
            let (lp, rp) = if *op == BinOp::Imp { (p + 1, p) } else { (p, p + 1) };
            write_modal(l, lp, f)?;
            write!(f, " {} ", op.symbol())?;
            write_modal(r, rp, f)?;
            if p < min {
                f.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for FOFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_fo(self, 0, f)
    }
}

fn write_fo(phi: &FOFormula, min: u8, f: &mut Formatter<'_>) -> fmt::Result {
    match phi {
        FOFormula::Atom(i, v) => write!(f, "P{i}({v})"),
        FOFormula::Const(c) => f.write_str(c.symbol()),
        FOFormula::Quant(q, b) => {
            if PREC_UNARY < min {
                f.write_char('(')?;
            }
            f.write_str(match q {
                Quantifier::All => "∀x ",
                Quantifier::Ex => "∃x ",
            })?;
            write_fo(b, PREC_UNARY, f)?;
            if PREC_UNARY < min {
                f.write_char(')')?;
            }
            Ok(())
        }
        FOFormula::Bin(op, l, r) => {
            let p = prec(*op);
            if p < min {
                f.write_char('(')?;
            }
            let (lp, rp) = if *op == BinOp::Imp { (p + 1, p) } else { (p, p + 1) };
            write_fo(l, lp, f)?;
            write!(f, " {} ", op.symbol())?;
            write_fo(r, rp, f)?;
            if p < min {
                f.write_char(')')?;
            }
            Ok(())
        }
    }
}
