//! Exhaustive enumeration of small algebras, used both as test oracles and
//! as battery generators. All orders are deterministic: lexicographic in the
//! underlying element indices / table encodings.

use super::modal::{adjoint_modalities, check_m_axioms, verify_subuniverse};
use super::{FiniteAlgebra, FleVariant, ModalExpansion, OpTable, CONST_E, CONST_F, FUSE, IMP, JOIN, MEET};

/// The `n`-element chain `0 < 1 < … < n−1` as a pure lattice.
pub fn chain(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::lattice_from(n, |x, y| x.min(y), |x, y| x.max(y))
}

/// All labeled lattices on `{0,…,n−1}`: every partial order in which each
/// pair has a greatest lower and least upper bound, as meet/join tables.
/// Feasible for n ≤ 4 or so (2^(n(n−1)) strict-order candidates).
pub fn enumerate_lattices(n: usize) -> Vec<FiniteAlgebra> {
    assert!(n >= 1, "need at least one element");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << pairs.len()) {
        // strict[i][j] ⟺ i < j in the candidate order
        let mut strict = vec![vec![false; n]; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                strict[i][j] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if strict[i][j] && strict[j][i] {
                    continue 'mask;
                }
                for k in 0..n {
                    if strict[i][j] && strict[j][k] && !strict[i][k] {
                        continue 'mask;
                    }
                }
            }
        }
        let leq = |a: usize, b: usize| a == b || strict[a][b];
        let mut meet_table = Vec::with_capacity(n * n);
        let mut join_table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq(c, a) && leq(c, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&c| leq(a, c) && leq(b, c)).collect();
                let glb = lower.iter().copied().find(|&m| lower.iter().all(|&c| leq(c, m)));
                let lub = upper.iter().copied().find(|&m| upper.iter().all(|&c| leq(m, c)));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet_table.push(g);
                        join_table.push(l);
                    }
                    _ => continue 'mask,
                }
            }
        }
        let mut a = FiniteAlgebra::new(n);
        a.ops.insert(MEET.into(), OpTable { arity: 2, table: meet_table });
        a.ops.insert(JOIN.into(), OpTable { arity: 2, table: join_table });
        out.push(a);
    }
    out
}

/// All nonempty subsets of the universe closed under every operation,
/// ordered lexicographically by the subset bitmask.
pub fn enumerate_subuniverses(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size;
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if verify_subuniverse(a, &subset).is_ok() {
            out.push(subset);
        }
    }
    out
}

/// All modal expansions of `a`, via the subalgebra correspondence: each
/// relatively complete subuniverse induces exactly one expansion.
pub fn enumerate_modal_expansions(a: &FiniteAlgebra) -> Vec<ModalExpansion> {
    enumerate_subuniverses(a)
        .into_iter()
        .filter_map(|subset| adjoint_modalities(a, &subset).ok())
        .collect()
}

/// Independent oracle for [`enumerate_modal_expansions`]: scan every pair of
/// unary tables and keep the ones passing the modal axioms directly.
pub fn enumerate_modal_expansions_raw(a: &FiniteAlgebra) -> Vec<ModalExpansion> {
    let n = a.size;
    let count = (n as u64).pow(n as u32);
    let decode = |mut flat: u64| {
        let mut table = vec![0usize; n];
        for k in (0..n).rev() {
            table[k] = (flat % n as u64) as usize;
            flat /= n as u64;
        }
        table
    };
    let mut out = Vec::new();
    for b in 0..count {
        let box_table = decode(b);
        for d in 0..count {
            let m = ModalExpansion { base: a.clone(), box_table: box_table.clone(), diamond_table: decode(d) };
            if check_m_axioms(&m).primitives_ok() {
                out.push(m);
            }
        }
    }
    out
}

/// All FL_e-algebras of size exactly `n` (optionally filtered to a variant),
/// built by extending each labeled lattice with every commutative monoid
/// table that admits a residuum, and every choice of `f`.
pub fn enumerate_fle_algebras(n: usize, variant: FleVariant) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    for lattice in enumerate_lattices(n) {
        let leq = |a: usize, b: usize| lattice.meet(a, b) == a;
        let fuse_count = (n as u64).pow((n * n) as u32);
        'fuse: for flat in 0..fuse_count {
            let mut table = vec![0usize; n * n];
            let mut rest = flat;
            for k in (0..n * n).rev() {
                table[k] = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            let fuse = |a: usize, b: usize| table[a * n + b];
            for a in 0..n {
                for b in 0..a {
                    if fuse(a, b) != fuse(b, a) {
                        continue 'fuse;
                    }
                }
            }
            let Some(e) = (0..n).find(|&e| (0..n).all(|a| fuse(a, e) == a)) else {
                continue;
            };
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if fuse(fuse(a, b), c) != fuse(a, fuse(b, c)) {
                            continue 'fuse;
                        }
                    }
                }
            }
            // residuum: b→c must be the maximum of {a | a·b ≤ c}, and that
            // set must be its down-set
            let mut imp_table = vec![0usize; n * n];
            for b in 0..n {
                for c in 0..n {
                    let sat: Vec<usize> = (0..n).filter(|&a| leq(fuse(a, b), c)).collect();
                    let Some(m) = sat.iter().copied().find(|&m| sat.iter().all(|&a| leq(a, m)))
                    else {
                        continue 'fuse;
                    };
                    if (0..n).filter(|&a| leq(a, m)).count() != sat.len() {
                        continue 'fuse;
                    }
                    imp_table[b * n + c] = m;
                }
            }
            for f in 0..n {
                let mut alg = lattice.clone();
                alg.ops.insert(FUSE.into(), OpTable { arity: 2, table: table.clone() });
                alg.ops.insert(IMP.into(), OpTable { arity: 2, table: imp_table.clone() });
                alg.ops.insert(CONST_F.into(), OpTable::constant(f));
                alg.ops.insert(CONST_E.into(), OpTable::constant(e));
                if alg.check_fle(variant).map(|r| r.ok()).unwrap_or(false) {
                    out.push(alg);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, lukasiewicz3, lukasiewicz3_modal};

    #[test]
    fn labeled_lattice_counts_up_to_four() {
        // n = 1: trivial; n = 2, 3: only chains (2 and 6 labelings);
        // n = 4: 24 chains + 12 labeled diamonds
        assert_eq!(enumerate_lattices(1).len(), 1);
        assert_eq!(enumerate_lattices(2).len(), 2);
        assert_eq!(enumerate_lattices(3).len(), 6);
        assert_eq!(enumerate_lattices(4).len(), 36);
    }

    #[test]
    fn every_enumerated_lattice_checks() {
        for a in enumerate_lattices(4) {
            assert!(a.check_lattice().ok());
        }
    }

    #[test]
    fn lukasiewicz3_subuniverses() {
        // constants force 0 and 2 into every subuniverse
        assert_eq!(enumerate_subuniverses(&lukasiewicz3()), vec![vec![0, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn boolean_has_one_expansion() {
        let expansions = enumerate_modal_expansions(&boolean2());
        assert_eq!(expansions.len(), 1);
        assert_eq!(expansions[0], ModalExpansion::identity(boolean2()));
    }

    #[test]
    fn lukasiewicz3_has_the_two_known_expansions() {
        let expansions = enumerate_modal_expansions(&lukasiewicz3());
        assert_eq!(expansions.len(), 2);
        assert!(expansions.contains(&lukasiewicz3_modal()));
        assert!(expansions.contains(&ModalExpansion::identity(lukasiewicz3())));
    }

    #[test]
    fn correspondence_agrees_with_raw_table_scan() {
        for base in [boolean2(), lukasiewicz3(), chain(3)] {
            let mut via_subalgebras = enumerate_modal_expansions(&base);
            let mut raw = enumerate_modal_expansions_raw(&base);
            via_subalgebras.sort_by(|a, b| (&a.box_table, &a.diamond_table).cmp(&(&b.box_table, &b.diamond_table)));
            raw.sort_by(|a, b| (&a.box_table, &a.diamond_table).cmp(&(&b.box_table, &b.diamond_table)));
            assert_eq!(via_subalgebras, raw);
        }
    }

    #[test]
    fn fle_enumeration_contains_the_known_algebras() {
        let two = enumerate_fle_algebras(2, FleVariant::Plain);
        assert!(two.contains(&boolean2()));
        let three = enumerate_fle_algebras(3, FleVariant::Plain);
        assert!(three.contains(&lukasiewicz3()));
        for alg in &three {
            assert!(alg.check_fle(FleVariant::Plain).unwrap().ok());
        }
        // variant filters are genuine restrictions
        let three_c = enumerate_fle_algebras(3, FleVariant::C);
        assert!(three_c.len() < three.len());
        assert!(!three_c.contains(&lukasiewicz3()));
    }
}
