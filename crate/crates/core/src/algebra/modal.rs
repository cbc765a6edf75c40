//! Modal expansions of finite lattice-ordered algebras and the
//! correspondence with relatively complete subalgebras.

use super::{AlgebraError, FiniteAlgebra, FleVariant, OpTable};
use serde::{Deserialize, Serialize};

/// A finite algebra together with unary `□`/`◇` tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalExpansion {
    pub base: FiniteAlgebra,
    pub box_table: Vec<usize>,
    pub diamond_table: Vec<usize>,
}

impl ModalExpansion {
    pub fn identity(base: FiniteAlgebra) -> ModalExpansion {
        let n = base.size;
        ModalExpansion {
            base,
            box_table: (0..n).collect(),
            diamond_table: (0..n).collect(),
        }
    }

    pub fn bx(&self, a: usize) -> usize {
        self.box_table[a]
    }

    pub fn dia(&self, a: usize) -> usize {
        self.diamond_table[a]
    }
}

/// Result of one modal-axiom check: `witness` is `None` on pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    /// Primitive axioms define m-L-lattices; the rest are consequences.
    pub primitive: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MAxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl MAxiomReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn primitives_ok(&self) -> bool {
        self.checks.iter().filter(|c| c.primitive).all(|c| c.witness.is_none())
    }

    pub fn failing(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| c.witness.is_some()).collect()
    }
}

impl std::fmt::Display for MAxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{}: pass", c.name)?,
                Some(w) => writeln!(f, "{}: FAIL at {:?}", c.name, w)?,
            }
        }
        Ok(())
    }
}

/// Checks the m-lattice axioms L1–L3 for both modalities and `⋆_□` for every
/// signature operation, plus the derived laws L4, L5, `⋆_◇`, and (for bases
/// in the full FL_e signature that satisfy residuation) L6.
pub fn check_m_axioms(m: &ModalExpansion) -> MAxiomReport {
    let a = &m.base;
    let n = a.size;
    let mut checks = Vec::new();
    let push = |checks: &mut Vec<AxiomCheck>, name: &str, primitive: bool, witness: Option<Vec<usize>>| {
        checks.push(AxiomCheck { name: name.into(), primitive, witness });
    };

    let first = |pred: &dyn Fn(usize) -> bool| (0..n).find(|&x| !pred(x)).map(|x| vec![x]);
    let first2 = |pred: &dyn Fn(usize, usize) -> bool| {
        for x in 0..n {
            for y in 0..n {
                if !pred(x, y) {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    };

    push(&mut checks, "L1_box: □x ∧ x ≈ □x", true, first(&|x| a.meet(m.bx(x), x) == m.bx(x)));
    push(&mut checks, "L1_dia: ◇x ∨ x ≈ ◇x", true, first(&|x| a.join(m.dia(x), x) == m.dia(x)));
    push(
        &mut checks,
        "L2_box: □(x∧y) ≈ □x ∧ □y",
        true,
        first2(&|x, y| m.bx(a.meet(x, y)) == a.meet(m.bx(x), m.bx(y))),
    );
    push(
        &mut checks,
        "L2_dia: ◇(x∨y) ≈ ◇x ∨ ◇y",
        true,
        first2(&|x, y| m.dia(a.join(x, y)) == a.join(m.dia(x), m.dia(y))),
    );
    push(&mut checks, "L3_box: □◇x ≈ ◇x", true, first(&|x| m.bx(m.dia(x)) == m.dia(x)));
    push(&mut checks, "L3_dia: ◇□x ≈ □x", true, first(&|x| m.dia(m.bx(x)) == m.bx(x)));

    // (⋆_□) and the derived (⋆_◇) for every operation in the signature.
    for (name, op) in &a.ops {
        push(
            &mut checks,
            &format!("star_box[{name}]: □({name}(□x̄)) ≈ {name}(□x̄)"),
            true,
            star_witness(m, op, true),
        );
        push(
            &mut checks,
            &format!("star_dia[{name}]: ◇({name}(◇x̄)) ≈ {name}(◇x̄)"),
            false,
            star_witness(m, op, false),
        );
    }

    push(&mut checks, "L4_box: □□x ≈ □x", false, first(&|x| m.bx(m.bx(x)) == m.bx(x)));
    push(&mut checks, "L4_dia: ◇◇x ≈ ◇x", false, first(&|x| m.dia(m.dia(x)) == m.dia(x)));
    push(
        &mut checks,
        "L5_box: x ≤ y ⟹ □x ≤ □y",
        false,
        first2(&|x, y| !a.leq(x, y) || a.leq(m.bx(x), m.bx(y))),
    );
    push(
        &mut checks,
        "L5_dia: x ≤ y ⟹ ◇x ≤ ◇y",
        false,
        first2(&|x, y| !a.leq(x, y) || a.leq(m.dia(x), m.dia(y))),
    );

    if a.has_fle_signature() && a.check_fle(FleVariant::Plain).map(|r| r.ok()).unwrap_or(false) {
        push(
            &mut checks,
            "L6_box: □(x → □y) ≈ ◇x → □y",
            false,
            first2(&|x, y| m.bx(a.imp(x, m.bx(y))) == a.imp(m.dia(x), m.bx(y))),
        );
        push(
            &mut checks,
            "L6_dia: □(□x → y) ≈ □x → □y",
            false,
            first2(&|x, y| m.bx(a.imp(m.bx(x), y)) == a.imp(m.bx(x), m.bx(y))),
        );
    }

    MAxiomReport { checks }
}

fn star_witness(m: &ModalExpansion, op: &OpTable, boxed: bool) -> Option<Vec<usize>> {
    let n = m.base.size;
    let modal = |x: usize| if boxed { m.bx(x) } else { m.dia(x) };
    let mut args = vec![0usize; op.arity];
    loop {
        let mapped: Vec<usize> = args.iter().map(|&x| modal(x)).collect();
        let inner = op.apply(n, &mapped);
        if modal(inner) != inner {
            return Some(args);
        }
        // next tuple
        let mut k = op.arity;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            args[k] += 1;
            if args[k] < n {
                break;
            }
            args[k] = 0;
        }
    }
}

/// The image `□A = {□a | a ∈ A}`, verified to be a subuniverse equal to the
/// `◇`-image and to satisfy the max/min adjoint characterization.
pub fn box_image(m: &ModalExpansion) -> Result<Vec<usize>, AlgebraError> {
    let a = &m.base;
    let n = a.size;
    let mut image: Vec<usize> = m.box_table.clone();
    image.sort_unstable();
    image.dedup();
    let mut dia_image: Vec<usize> = m.diamond_table.clone();
    dia_image.sort_unstable();
    dia_image.dedup();
    if image != dia_image {
        return Err(AlgebraError::InvalidInput(format!(
            "□A = {image:?} differs from ◇A = {dia_image:?}"
        )));
    }
    verify_subuniverse(a, &image)?;
    for x in 0..n {
        let below: Vec<usize> = image.iter().copied().filter(|&b| a.leq(b, x)).collect();
        if !below.contains(&m.bx(x)) || below.iter().any(|&b| !a.leq(b, m.bx(x))) {
            return Err(AlgebraError::InvalidInput(format!(
                "□{x} is not max{{b ∈ □A | b ≤ {x}}}"
            )));
        }
        let above: Vec<usize> = image.iter().copied().filter(|&b| a.leq(x, b)).collect();
        if !above.contains(&m.dia(x)) || above.iter().any(|&b| !a.leq(m.dia(x), b)) {
            return Err(AlgebraError::InvalidInput(format!(
                "◇{x} is not min{{b ∈ □A | {x} ≤ b}}"
            )));
        }
    }
    Ok(image)
}

/// Errs when `subset` is not closed under some operation.
pub fn verify_subuniverse(a: &FiniteAlgebra, subset: &[usize]) -> Result<(), AlgebraError> {
    for &x in subset {
        if x >= a.size {
            return Err(AlgebraError::ElementOutOfRange(x));
        }
    }
    let s = subset.len();
    for (name, op) in &a.ops {
        if op.arity > 0 && s == 0 {
            continue;
        }
        let count = s.pow(op.arity as u32).max(1);
        for flat in 0..count {
            let mut rest = flat;
            let mut args = vec![0usize; op.arity];
            for k in (0..op.arity).rev() {
                args[k] = subset[rest % s];
                rest /= s;
            }
            let result = op.apply(a.size, &args);
            if !subset.contains(&result) {
                return Err(AlgebraError::NotASubuniverse { op: name.clone(), args, result });
            }
        }
    }
    Ok(())
}

/// True iff every element of `a` has a greatest lower bound and a least
/// upper bound inside the subuniverse `subset`.
pub fn is_relatively_complete(a: &FiniteAlgebra, subset: &[usize]) -> Result<bool, AlgebraError> {
    verify_subuniverse(a, subset)?;
    Ok(adjoints(a, subset).is_some())
}

fn adjoints(a: &FiniteAlgebra, subset: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = a.size;
    let mut box0 = Vec::with_capacity(n);
    let mut dia0 = Vec::with_capacity(n);
    for x in 0..n {
        let below: Vec<usize> = subset.iter().copied().filter(|&b| a.leq(b, x)).collect();
        let max = below.iter().copied().find(|&m| below.iter().all(|&b| a.leq(b, m)))?;
        let above: Vec<usize> = subset.iter().copied().filter(|&b| a.leq(x, b)).collect();
        let min = above.iter().copied().find(|&m| above.iter().all(|&b| a.leq(m, b)))?;
        box0.push(max);
        dia0.push(min);
    }
    Some((box0, dia0))
}

/// `□₀a = max{b ∈ A₀ | b ≤ a}`, `◇₀a = min{b ∈ A₀ | a ≤ b}`.
pub fn adjoint_modalities(a: &FiniteAlgebra, subset: &[usize]) -> Result<ModalExpansion, AlgebraError> {
    verify_subuniverse(a, subset)?;
    let (box_table, diamond_table) = adjoints(a, subset).ok_or_else(|| {
        let bad = (0..a.size)
            .find(|&x| {
                let below: Vec<usize> = subset.iter().copied().filter(|&b| a.leq(b, x)).collect();
                !below.iter().any(|&m| below.iter().all(|&b| a.leq(b, m)))
            })
            .unwrap_or(0);
        AlgebraError::NotRelativelyComplete(bad)
    })?;
    Ok(ModalExpansion { base: a.clone(), box_table, diamond_table })
}

pub enum CorrespondenceInput<'a> {
    Modal(&'a ModalExpansion),
    Pair(&'a FiniteAlgebra, &'a [usize]),
}

/// Round-trips the two correspondence maps: modal expansion → (algebra,
/// □-image) → adjoint modalities, and pair → modalities → □-image.
pub fn correspondence_roundtrip(input: CorrespondenceInput<'_>) -> Result<bool, AlgebraError> {
    match input {
        CorrespondenceInput::Modal(m) => {
            if !check_m_axioms(m).primitives_ok() {
                return Err(AlgebraError::InvalidInput("modal axioms fail".into()));
            }
            let image = box_image(m)?;
            let rebuilt = adjoint_modalities(&m.base, &image)?;
            Ok(rebuilt.box_table == m.box_table && rebuilt.diamond_table == m.diamond_table)
        }
        CorrespondenceInput::Pair(a, subset) => {
            if !is_relatively_complete(a, subset)? {
                return Err(AlgebraError::InvalidInput("subset not relatively complete".into()));
            }
            let m = adjoint_modalities(a, subset)?;
            let image = box_image(&m)?;
            let mut want = subset.to_vec();
            want.sort_unstable();
            want.dedup();
            Ok(image == want)
        }
    }
}

/// Decodes a function `W → A` from its index in the power algebra: base-`n`
/// digits with coordinate 0 most significant.
pub fn decode_point(n: usize, w: usize, index: usize) -> Vec<usize> {
    let mut digits = vec![0usize; w];
    let mut rest = index;
    for k in (0..w).rev() {
        digits[k] = rest % n;
        rest /= n;
    }
    digits
}

pub fn encode_point(n: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// The full functional m-L-lattice `A^W`: pointwise operations on tuples,
/// `□f = const ⋀_v f(v)` and `◇f = const ⋁_v f(v)`.
pub fn full_functional(a: &FiniteAlgebra, w: usize) -> Result<ModalExpansion, AlgebraError> {
    if w == 0 {
        return Err(AlgebraError::EmptyWorldSet);
    }
    let n = a.size;
    let size = n.pow(w as u32);
    let mut power = FiniteAlgebra::new(size);
    for (name, op) in &a.ops {
        let len = size.pow(op.arity as u32);
        let mut table = Vec::with_capacity(len);
        let mut args = vec![0usize; op.arity];
        for flat in 0..len {
            // decode the argument indices from flat (most significant first)
            let mut rest = flat;
            for k in (0..op.arity).rev() {
                args[k] = rest % size;
                rest /= size;
            }
            let tuples: Vec<Vec<usize>> = args.iter().map(|&i| decode_point(n, w, i)).collect();
            let mut out = Vec::with_capacity(w);
            for v in 0..w {
                let coord_args: Vec<usize> = tuples.iter().map(|t| t[v]).collect();
                out.push(op.apply(n, &coord_args));
            }
            table.push(encode_point(n, &out));
        }
        power.ops.insert(name.clone(), OpTable { arity: op.arity, table });
    }
    let mut box_table = Vec::with_capacity(size);
    let mut diamond_table = Vec::with_capacity(size);
    for i in 0..size {
        let t = decode_point(n, w, i);
        let meet_all = t.iter().copied().reduce(|x, y| a.meet(x, y)).unwrap();
        let join_all = t.iter().copied().reduce(|x, y| a.join(x, y)).unwrap();
        box_table.push(encode_point(n, &vec![meet_all; w]));
        diamond_table.push(encode_point(n, &vec![join_all; w]));
    }
    Ok(ModalExpansion { base: power, box_table, diamond_table })
}

/// True iff `m` is exactly `full_functional(inner, w)`.
pub fn is_full_functional(m: &ModalExpansion, inner: &FiniteAlgebra, w: usize) -> bool {
    full_functional(inner, w).map(|ff| ff == *m).unwrap_or(false)
}
