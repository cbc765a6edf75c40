//! End-to-end acceptance suite. Each test prints a single `criterion N: pass`
//! line on success; any failure panics with a witness.

use monolat::algebra::{
    check_m_axioms, correspondence_roundtrip, decode_point, enumerate_fle_algebras,
    enumerate_lattices, enumerate_modal_expansions, enumerate_modal_expansions_raw, eval_fo,
    eval_modal, full_functional, lukasiewicz3_modal, search_functional_embedding,
    structure_to_evaluation, ConsequenceVerdict, CorrespondenceInput, EmbeddingOutcome,
    FiniteAlgebra, FleVariant, Structure,
};
use monolat::proof::{
    admissible_partitions, interpolate, prove, soundness_bridge, Calculus, SearchConfig,
    SearchOutcome, Sequent,
};
use monolat::syntax::{
    parse_fo_equation, parse_modal_equation, BinOp, Constant, FOFormula, ModalFormula, Quantifier,
    Var,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Example: Ł₃ with □ = {0,0,1}, ◇ = {0,1,1} (indices 0 = 0, 1 = ½, 2 = 1).
#[test]
fn criterion_1_lukasiewicz_example() {
    let m = lukasiewicz3_modal();

    let plain = m.base.check_fle(FleVariant::Plain).unwrap();
    assert!(plain.ok(), "Ł₃ residuated-lattice laws: {plain}");

    let c = m.base.check_fle(FleVariant::C).unwrap();
    assert!(
        c.failures.iter().any(|f| f.law.contains("square-increase") && f.witness == vec![1]),
        "square-increase must fail exactly at ½: {c}"
    );

    let axioms = check_m_axioms(&m);
    assert!(axioms.ok(), "modal axioms on Ł₃: {axioms}");

    let eq = parse_modal_equation("dia p0 * dia p0 = dia (p0 * p0)").unwrap();
    let verdict =
        monolat::algebra::equational_consequence(std::slice::from_ref(&m), &vec![], &eq).unwrap();
    let ConsequenceVerdict::Fails(cm) = verdict else {
        panic!("◇x·◇x ≈ ◇(x·x) must be refuted on Ł₃, got {verdict:?}");
    };
    assert_eq!((cm.lhs_value, cm.rhs_value), (2, 0), "◇½·◇½ = 1 ≠ 0");
    match &cm.detail {
        monolat::algebra::CountermodelDetail::Assignment(v) => {
            assert_eq!(v.values.get(&0), Some(&1), "witness must be x = ½")
        }
        other => panic!("expected an assignment witness, got {other:?}"),
    }
    println!("criterion 1: pass");
}

/// Every power algebra A^W carries a valid modal structure.
#[test]
fn criterion_2_full_functional_axioms() {
    let mut bases: Vec<FiniteAlgebra> = Vec::new();
    for n in 1..=4 {
        bases.extend(enumerate_lattices(n));
    }
    let lattice_count = bases.len();
    for n in 1..=3 {
        bases.extend(enumerate_fle_algebras(n, FleVariant::Plain));
    }
    assert!(lattice_count == 45, "expected 45 lattices of size ≤ 4, got {lattice_count}");

    let mut checked = 0usize;
    for (i, base) in bases.iter().enumerate() {
        for w in 1..=3 {
            let m = full_functional(base, w).unwrap();
            let report = check_m_axioms(&m);
            assert!(report.ok(), "base #{i}, W = {w}: {report}");
            checked += 1;
        }
    }
    println!("criterion 2: pass ({checked} power algebras)");
}

/// The subalgebra ↔ modal-expansion correspondence is bijective and the
/// adjoint-based enumeration matches brute-force table search.
#[test]
fn criterion_3_correspondence_roundtrip() {
    let mut expansions = 0usize;
    for n in 1..=4 {
        for lattice in enumerate_lattices(n) {
            let via_subalgebras = enumerate_modal_expansions(&lattice);
            let raw = enumerate_modal_expansions_raw(&lattice);
            let mut a: Vec<_> =
                via_subalgebras.iter().map(|m| (m.box_table.clone(), m.diamond_table.clone())).collect();
            let mut b: Vec<_> =
                raw.iter().map(|m| (m.box_table.clone(), m.diamond_table.clone())).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "size {n}: adjoint and raw enumerations disagree");
            for m in &via_subalgebras {
                assert_eq!(correspondence_roundtrip(CorrespondenceInput::Modal(m)), Ok(true));
                expansions += 1;
            }
        }
    }
    println!("criterion 3: pass ({expansions} expansions)");
}

fn random_fm1_sig(rng: &mut ChaCha8Rng, depth: usize, full_signature: bool) -> FOFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 if full_signature => FOFormula::Const(Constant::E),
            1 if full_signature => FOFormula::Const(Constant::F),
            _ => FOFormula::Atom(rng.gen_range(0..2), Var::X),
        };
    }
    let ops: &[BinOp] = if full_signature {
        &[BinOp::Meet, BinOp::Join, BinOp::Fuse, BinOp::Imp]
    } else {
        &[BinOp::Meet, BinOp::Join]
    };
    match rng.gen_range(0..2 + ops.len()) {
        0 => FOFormula::quant(Quantifier::All, random_fm1_sig(rng, depth - 1, full_signature))
            .unwrap(),
        1 => FOFormula::quant(Quantifier::Ex, random_fm1_sig(rng, depth - 1, full_signature))
            .unwrap(),
        k => FOFormula::bin(
            ops[k - 2],
            random_fm1_sig(rng, depth - 1, full_signature),
            random_fm1_sig(rng, depth - 1, full_signature),
        ),
    }
}

fn random_fm1(rng: &mut ChaCha8Rng, depth: usize) -> FOFormula {
    random_fm1_sig(rng, depth, true)
}

fn random_modal(rng: &mut ChaCha8Rng, depth: usize) -> ModalFormula {
    random_fm1(rng, depth).star().unwrap()
}

/// Structure evaluation agrees coordinate-wise with modal evaluation of the
/// star translate, and validity transfers both ways.
#[test]
fn criterion_4_structure_vs_power_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3501);
    let mut bases: Vec<FiniteAlgebra> = Vec::new();
    for n in 1..=3 {
        bases.extend(enumerate_lattices(n));
    }
    bases.push(monolat::algebra::lukasiewicz3());

    let mut pairs = 0usize;
    while pairs < 120 {
        let base = bases[rng.gen_range(0..bases.len())].clone();
        let domain = rng.gen_range(1..=3);
        let mut interpretation = BTreeMap::new();
        for p in 0..2u32 {
            interpretation
                .insert(p, (0..domain).map(|_| rng.gen_range(0..base.size)).collect::<Vec<_>>());
        }
        let s = Structure::new(base.clone(), domain, interpretation).unwrap();
        let (m, v) = structure_to_evaluation(&s).unwrap();

        let full_signature = base.has_fle_signature();
        let phi = random_fm1_sig(&mut rng, 5, full_signature);
        let psi = random_fm1_sig(&mut rng, 5, full_signature);
        let enc_phi = eval_modal(&m, &v, &phi.star().unwrap()).unwrap();
        let enc_psi = eval_modal(&m, &v, &psi.star().unwrap()).unwrap();
        let dec_phi = decode_point(base.size, domain, enc_phi);
        let dec_psi = decode_point(base.size, domain, enc_psi);
        for u in 0..domain {
            assert_eq!(
                eval_fo(&s, u, &phi).unwrap(),
                dec_phi[u],
                "world {u}: {phi} disagrees with its star translate"
            );
        }
        // validity transfer for φ ≈ ψ, both directions
        let fo_valid = (0..domain)
            .all(|u| eval_fo(&s, u, &phi).unwrap() == eval_fo(&s, u, &psi).unwrap());
        assert_eq!(fo_valid, dec_phi == dec_psi, "{phi} ≈ {psi}");
        pairs += 1;
    }
    println!("criterion 4: pass ({pairs} pairs)");
}

// mixes closed and open formulas so the admissible partitions vary
fn sequent_formula(rng: &mut ChaCha8Rng, depth: usize) -> FOFormula {
    let mut f = random_fm1(rng, depth);
    if rng.gen_bool(0.35) {
        // ground the free variable to x1 or x2 when possible
        let v = Var::Free(rng.gen_range(1..=2));
        if let Ok(g) = f.substitute(Var::X, v) {
            f = g;
        }
    }
    f
}

fn random_sequent(rng: &mut ChaCha8Rng) -> Sequent {
    let n = rng.gen_range(0..=2);
    let mut antecedent: Vec<FOFormula> = (0..n).map(|_| sequent_formula(rng, 2)).collect();
    let succedent = if rng.gen_bool(0.85) { Some(sequent_formula(rng, 2)) } else { None };

    // half the time, make derivability likely by echoing antecedent material
    if rng.gen_bool(0.5) {
        if let Some(phi) = antecedent.first().cloned() {
            let succ = match rng.gen_range(0..3) {
                0 => phi,
                1 => FOFormula::bin(BinOp::Join, phi, sequent_formula(rng, 1)),
                _ => {
                    antecedent.push(sequent_formula(rng, 1));
                    FOFormula::bin(BinOp::Fuse, phi, antecedent.last().unwrap().clone())
                }
            };
            return Sequent::new(antecedent, Some(succ)).unwrap();
        }
    }
    Sequent::new(antecedent, succedent).unwrap()
}

fn corpus(calculus: Calculus, want: usize, seed: u64) -> Vec<(Sequent, monolat::proof::Derivation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SearchConfig::new(calculus);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < want {
        attempts += 1;
        assert!(attempts < 200_000, "corpus generation stalled for {calculus}");
        let s = random_sequent(&mut rng);
        if s.antecedent.len() > 3 {
            continue;
        }
        if let SearchOutcome::Derivable(d) = prove(&s, &cfg) {
            out.push((s, d));
        }
    }
    out
}

/// Interpolation succeeds on every admissible partition of every corpus
/// derivation, within the quantifier-depth bound.
#[test]
fn criterion_5_interpolation_metatheorem() {
    let mut total = 0usize;
    for (calculus, seed) in
        [(Calculus::FLe, 0x6201), (Calculus::FLew, 0x6202), (Calculus::FLec, 0x6203)]
    {
        for (s, d) in corpus(calculus, 200, seed) {
            for partition in admissible_partitions(&s) {
                let r = interpolate(&d, &partition, calculus)
                    .unwrap_or_else(|e| panic!("{calculus}: {s}: {e}"));
                assert!(r.interpolant.is_sentence());
                assert!(r.md_left <= r.md_original && r.md_right <= r.md_original, "{s}");
                total += 1;
            }
        }
    }
    println!("criterion 5: pass ({total} interpolations)");
}

/// Derivable sequents have no countermodels over the matching batteries.
#[test]
fn criterion_6_soundness() {
    let batteries: [(Calculus, u64, Vec<FiniteAlgebra>); 3] = [
        (Calculus::FLe, 0x6201, (1..=3).flat_map(|n| enumerate_fle_algebras(n, FleVariant::Plain)).collect()),
        (Calculus::FLew, 0x6202, (1..=3).flat_map(|n| enumerate_fle_algebras(n, FleVariant::W)).collect()),
        (Calculus::FLec, 0x6203, (1..=3).flat_map(|n| enumerate_fle_algebras(n, FleVariant::C)).collect()),
    ];
    let mut checked = 0usize;
    for (calculus, seed, battery) in &batteries {
        assert!(!battery.is_empty());
        for (s, _) in corpus(*calculus, 200, *seed) {
            let fm1 = s.antecedent.iter().chain(&s.succedent).all(|f| f.is_fm1());
            if !fm1 {
                continue;
            }
            let verdict = soundness_bridge(&s, battery, 2, 1_000_000).unwrap();
            assert!(
                !matches!(verdict, ConsequenceVerdict::Fails(_)),
                "{calculus}: countermodel against derivable {s}: {verdict:?}"
            );
            checked += 1;
        }
    }
    println!("criterion 6: pass ({checked} sequents)");
}

/// Contraction and weakening are each separating, with battery countermodels
/// certifying the FLe negatives.
#[test]
fn criterion_7_calculus_separation() {
    let battery: Vec<FiniteAlgebra> =
        (1..=3).flat_map(|n| enumerate_fle_algebras(n, FleVariant::Plain)).collect();

    let contraction = Sequent::parse("P0(x) |- P0(x) * P0(x)").unwrap();
    assert_eq!(prove(&contraction, &SearchConfig::new(Calculus::FLe)), SearchOutcome::NotDerivable);
    assert!(matches!(
        prove(&contraction, &SearchConfig::new(Calculus::FLec)),
        SearchOutcome::Derivable(_)
    ));
    let verdict = soundness_bridge(&contraction, &battery, 2, 1_000_000).unwrap();
    assert!(
        matches!(verdict, ConsequenceVerdict::Fails(_)),
        "expected a battery countermodel for {contraction}, got {verdict:?}"
    );

    let weakening = Sequent::parse("|- P0(x) -> (P1(x) -> P0(x))").unwrap();
    assert_eq!(prove(&weakening, &SearchConfig::new(Calculus::FLe)), SearchOutcome::NotDerivable);
    assert!(matches!(
        prove(&weakening, &SearchConfig::new(Calculus::FLew)),
        SearchOutcome::Derivable(_)
    ));
    let verdict = soundness_bridge(&weakening, &battery, 2, 1_000_000).unwrap();
    assert!(
        matches!(verdict, ConsequenceVerdict::Fails(_)),
        "expected a battery countermodel for {weakening}, got {verdict:?}"
    );
    println!("criterion 7: pass");
}

/// The star and circle translations are mutually inverse.
#[test]
fn criterion_8_translation_roundtrips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0808);
    for _ in 0..1000 {
        let phi = random_fm1(&mut rng, 8);
        assert_eq!(phi.star().unwrap().circle(), phi, "(φ∗)∘ ≠ φ for {phi}");
    }
    for _ in 0..1000 {
        let alpha = random_modal(&mut rng, 8);
        assert_eq!(alpha.circle().star().unwrap(), alpha, "(α∘)∗ ≠ α for {alpha}");
    }
    println!("criterion 8: pass (2000 roundtrips)");
}

/// Every small m-lattice embeds into a full functional power algebra.
#[test]
fn criterion_9_functional_embeddings() {
    let targets: Vec<FiniteAlgebra> = (1..=4).flat_map(enumerate_lattices).collect();
    let mut embedded = 0usize;
    for n in 1..=3 {
        for lattice in enumerate_lattices(n) {
            for m in enumerate_modal_expansions(&lattice) {
                let outcome =
                    search_functional_embedding(&m, &targets, 3, 100_000_000).unwrap();
                assert!(
                    matches!(outcome, EmbeddingOutcome::Found { .. }),
                    "size {n}: expansion box={:?} diamond={:?}: {outcome:?}",
                    m.box_table,
                    m.diamond_table
                );
                embedded += 1;
            }
        }
    }
    println!("criterion 9: pass ({embedded} embeddings)");
}

/// Exercised alongside the acceptance run: parsing both equation styles.
#[test]
fn equation_parsers_accept_both_relations() {
    assert!(parse_fo_equation("A x P0(x) <= P0(x)").is_ok());
    assert!(parse_modal_equation("box p0 ≈ box box p0").is_ok());
}
