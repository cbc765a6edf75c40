//! V-formations, the superamalgamation condition, and a bounded search for
//! embeddings into full functional algebras.

use super::modal::full_functional;
use super::{AlgebraError, CheckFailure, FiniteAlgebra, ModalExpansion, OpTable};
use serde::{Deserialize, Serialize};

/// A V-formation: embeddings `f₁: A→B₁`, `f₂: A→B₂` and maps `g₁: B₁→C`,
/// `g₂: B₂→C`, all given as element tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VFormation {
    pub a: FiniteAlgebra,
    pub b1: FiniteAlgebra,
    pub b2: FiniteAlgebra,
    pub c: FiniteAlgebra,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperamalgamReport {
    pub failures: Vec<CheckFailure>,
}

impl SuperamalgamReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_map(
    label: &str,
    src: &FiniteAlgebra,
    tgt: &FiniteAlgebra,
    map: &[usize],
    failures: &mut Vec<CheckFailure>,
) -> Result<(), AlgebraError> {
    if map.len() != src.size {
        return Err(AlgebraError::SignatureMismatch(format!(
            "{label} has {} entries for a source of size {}",
            map.len(),
            src.size
        )));
    }
    for &v in map {
        if v >= tgt.size {
            return Err(AlgebraError::ElementOutOfRange(v));
        }
    }
    for x in 0..src.size {
        for y in 0..x {
            if map[x] == map[y] {
                failures.push(CheckFailure {
                    law: format!("{label} injective"),
                    witness: vec![y, x],
                });
            }
        }
    }
    for (name, op) in &src.ops {
        let tgt_op = tgt.op(name).map_err(|_| {
            AlgebraError::SignatureMismatch(format!("target of {label} lacks operation `{name}`"))
        })?;
        if tgt_op.arity != op.arity {
            return Err(AlgebraError::SignatureMismatch(format!(
                "arity of `{name}` differs across {label}"
            )));
        }
        let count = src.size.pow(op.arity as u32);
        for flat in 0..count {
            let mut rest = flat;
            let mut args = vec![0usize; op.arity];
            for k in (0..op.arity).rev() {
                args[k] = rest % src.size;
                rest /= src.size;
            }
            let mapped: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            if map[op.apply(src.size, &args)] != tgt_op.apply(tgt.size, &mapped) {
                failures.push(CheckFailure {
                    law: format!("{label} preserves `{name}`"),
                    witness: args,
                });
            }
        }
    }
    Ok(())
}

/// Checks that all four maps are injective homomorphisms, that the square
/// commutes, and that whenever `g₁(b₁) ≤ g₂(b₂)` (or symmetrically) some
/// `a ∈ A` interpolates: `b₁ ≤ f₁(a)` and `f₂(a) ≤ b₂`.
pub fn is_superamalgam(v: &VFormation) -> Result<SuperamalgamReport, AlgebraError> {
    let mut failures = Vec::new();
    check_map("f1", &v.a, &v.b1, &v.f1, &mut failures)?;
    check_map("f2", &v.a, &v.b2, &v.f2, &mut failures)?;
    check_map("g1", &v.b1, &v.c, &v.g1, &mut failures)?;
    check_map("g2", &v.b2, &v.c, &v.g2, &mut failures)?;
    for x in 0..v.a.size {
        if v.g1[v.f1[x]] != v.g2[v.f2[x]] {
            failures.push(CheckFailure { law: "g1∘f1 = g2∘f2".into(), witness: vec![x] });
        }
    }
    if !failures.is_empty() {
        return Ok(SuperamalgamReport { failures });
    }
    for b1 in 0..v.b1.size {
        for b2 in 0..v.b2.size {
            if v.c.leq(v.g1[b1], v.g2[b2])
                && !(0..v.a.size).any(|a| v.b1.leq(b1, v.f1[a]) && v.b2.leq(v.f2[a], b2))
            {
                failures.push(CheckFailure {
                    law: "interpolation: g1(b1) ≤ g2(b2) needs b1 ≤ f1(a), f2(a) ≤ b2".into(),
                    witness: vec![b1, b2],
                });
            }
            if v.c.leq(v.g2[b2], v.g1[b1])
                && !(0..v.a.size).any(|a| v.b2.leq(b2, v.f2[a]) && v.b1.leq(v.f1[a], b1))
            {
                failures.push(CheckFailure {
                    law: "interpolation: g2(b2) ≤ g1(b1) needs b2 ≤ f2(a), f1(a) ≤ b1".into(),
                    witness: vec![b1, b2],
                });
            }
        }
    }
    Ok(SuperamalgamReport { failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingOutcome {
    /// `map[x]` is the image of `x` inside `full_functional(bases[base_index], worlds)`.
    Found { base_index: usize, worlds: usize, map: Vec<usize> },
    NotFoundWithinBounds,
    BudgetExceeded { budget: u64 },
}

/// The modal expansion with `□`/`◇` adjoined as ordinary unary operations,
/// so that plain homomorphisms of the result preserve the modalities too.
fn with_modal_ops(m: &ModalExpansion) -> FiniteAlgebra {
    let mut a = m.base.clone();
    a.ops.insert("__box".into(), OpTable::unary(m.box_table.clone()));
    a.ops.insert("__dia".into(), OpTable::unary(m.diamond_table.clone()));
    a
}

fn search(
    src: &FiniteAlgebra,
    tgt: &FiniteAlgebra,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    next: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<usize>>, ()> {
    if next == src.size {
        return Ok(Some(map.iter().map(|v| v.unwrap()).collect()));
    }
    'candidate: for image in 0..tgt.size {
        if used[image] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(());
        }
        map[next] = Some(image);
        used[image] = true;
        // verify every op application whose arguments and result are all
        // within the assigned prefix {0,…,next}
        for (name, op) in &src.ops {
            let tgt_op = &tgt.ops[name];
            let count = (next + 1).pow(op.arity as u32);
            for flat in 0..count {
                let mut rest = flat;
                let mut args = vec![0usize; op.arity];
                for k in (0..op.arity).rev() {
                    args[k] = rest % (next + 1);
                    rest /= next + 1;
                }
                if op.arity > 0 && !args.contains(&next) && next > 0 {
                    continue; // already verified at an earlier level
                }
                let result = op.apply(src.size, &args);
                if result > next {
                    continue;
                }
                let mapped: Vec<usize> = args.iter().map(|&x| map[x].unwrap()).collect();
                if map[result].unwrap() != tgt_op.apply(tgt.size, &mapped) {
                    map[next] = None;
                    used[image] = false;
                    continue 'candidate;
                }
            }
        }
        match search(src, tgt, map, used, next + 1, nodes, budget)? {
            Some(found) => return Ok(Some(found)),
            None => {
                map[next] = None;
                used[image] = false;
            }
        }
    }
    Ok(None)
}

/// Exhaustive bounded search for an injective homomorphism (preserving `□`
/// and `◇`) from `m` into `full_functional(base, w)` for each supplied base
/// and each `w ≤ max_w`. `budget` caps the total backtracking nodes.
pub fn search_functional_embedding(
    m: &ModalExpansion,
    bases: &[FiniteAlgebra],
    max_w: usize,
    budget: u64,
) -> Result<EmbeddingOutcome, AlgebraError> {
    let src = with_modal_ops(m);
    let mut nodes = 0u64;
    for (base_index, base) in bases.iter().enumerate() {
        for worlds in 1..=max_w {
            let ff = full_functional(base, worlds)?;
            if ff.base.size < m.base.size {
                continue;
            }
            let tgt = with_modal_ops(&ff);
            if src.ops.keys().any(|k| !tgt.ops.contains_key(k))
                || src.ops.iter().any(|(k, op)| tgt.ops[k].arity != op.arity)
            {
                return Err(AlgebraError::SignatureMismatch(format!(
                    "base {base_index} does not share the expansion's signature"
                )));
            }
            let mut map = vec![None; src.size];
            let mut used = vec![false; tgt.size];
            match search(&src, &tgt, &mut map, &mut used, 0, &mut nodes, budget) {
                Ok(Some(found)) => {
                    return Ok(EmbeddingOutcome::Found { base_index, worlds, map: found })
                }
                Ok(None) => {}
                Err(()) => return Ok(EmbeddingOutcome::BudgetExceeded { budget }),
            }
        }
    }
    Ok(EmbeddingOutcome::NotFoundWithinBounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{chain, lukasiewicz3, lukasiewicz3_modal, ModalExpansion};

    fn identity_formation(a: FiniteAlgebra) -> VFormation {
        let id: Vec<usize> = (0..a.size).collect();
        VFormation {
            b1: a.clone(),
            b2: a.clone(),
            c: a.clone(),
            f1: id.clone(),
            f2: id.clone(),
            g1: id.clone(),
            g2: id,
            a,
        }
    }

    #[test]
    fn identity_formation_is_a_superamalgam() {
        let v = identity_formation(chain(3));
        assert!(is_superamalgam(&v).unwrap().ok());
    }

    #[test]
    fn diamond_with_incomparable_arms_is_a_superamalgam() {
        // C = diamond ⊥ < a,b < ⊤; A = {⊥,⊤}; B₁ = {⊥,a,⊤}; B₂ = {⊥,b,⊤}
        let c = super::super::modal::tests::diamond_lattice();
        let two = chain(2);
        let three = chain(3);
        let v = VFormation {
            a: two,
            b1: three.clone(),
            b2: three,
            c,
            f1: vec![0, 2],
            f2: vec![0, 2],
            g1: vec![0, 1, 3],
            g2: vec![0, 2, 3],
        };
        assert!(is_superamalgam(&v).unwrap().ok());
    }

    #[test]
    fn non_homomorphic_map_is_reported() {
        let mut v = identity_formation(chain(3));
        v.f1 = vec![0, 0, 2]; // not injective, and breaks nothing else
        let report = is_superamalgam(&v).unwrap();
        assert!(report.failures.iter().any(|f| f.law == "f1 injective"));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let mut v = identity_formation(chain(3));
        v.g2 = vec![0, 1];
        assert!(matches!(is_superamalgam(&v), Err(AlgebraError::SignatureMismatch(_))));
    }

    #[test]
    fn identity_expansion_embeds_into_itself() {
        let m = ModalExpansion::identity(chain(2));
        match search_functional_embedding(&m, &[chain(2)], 1, 1_000_000).unwrap() {
            EmbeddingOutcome::Found { base_index: 0, worlds: 1, map } => {
                assert_eq!(map, vec![0, 1]);
            }
            other => panic!("expected embedding, got {other:?}"),
        }
    }

    #[test]
    fn three_chain_m_lattice_embeds_into_the_functional_square() {
        // the lattice reduct of the Ł₃ example: 3-chain with □½ = 0, ◇½ = 1
        let m = ModalExpansion {
            base: chain(3),
            box_table: vec![0, 0, 2],
            diamond_table: vec![0, 2, 2],
        };
        match search_functional_embedding(&m, &[chain(3)], 2, 10_000_000).unwrap() {
            EmbeddingOutcome::Found { base_index: 0, worlds, map } => {
                assert_eq!(worlds, 2, "no embedding exists with one world");
                // verify independently: the map preserves □ and ◇
                let ff = full_functional(&chain(3), 2).unwrap();
                for x in 0..3 {
                    assert_eq!(map[m.bx(x)], ff.bx(map[x]));
                    assert_eq!(map[m.dia(x)], ff.dia(map[x]));
                }
            }
            other => panic!("expected embedding, got {other:?}"),
        }
    }

    #[test]
    fn fle_signature_blocks_the_functional_embedding_over_l3() {
        // with fusion and the constants in the signature, no h works: h(½)
        // must square to h(0) (coordinates ≤ ½) yet ◇h(½) must be h(1)
        let m = lukasiewicz3_modal();
        assert_eq!(
            search_functional_embedding(&m, &[lukasiewicz3()], 2, 10_000_000).unwrap(),
            EmbeddingOutcome::NotFoundWithinBounds
        );
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let m = lukasiewicz3_modal();
        match search_functional_embedding(&m, &[lukasiewicz3()], 2, 3).unwrap() {
            EmbeddingOutcome::BudgetExceeded { budget: 3 } => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }
}
