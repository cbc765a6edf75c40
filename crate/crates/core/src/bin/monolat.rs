//! Command-line front end: translation, proof search, interpolation,
//! algebra checking, and countermodel search over finite batteries.
//!
//! Exit codes: 0 success/holds, 1 refuted/countermodel/not derivable,
//! 2 bound exhausted, 3 input error.

use clap::{Parser, Subcommand, ValueEnum};
use monolat::algebra::{
    algebra_from_json, chain, enumerate_fle_algebras, enumerate_lattices,
    enumerate_modal_expansions, equational_consequence, expansion_from_json, expansion_to_json,
    fo_consequence, search_functional_embedding, AlgebraError, ConsequenceVerdict,
    EmbeddingOutcome, FiniteAlgebra, FleVariant, ModalExpansion,
};
use monolat::proof::{
    interpolate, prove, Calculus, SearchConfig, SearchOutcome, Sequent, Side,
};
use monolat::syntax::{
    parse_fo, parse_fo_equation, parse_modal, parse_modal_equation, FOFormula, ModalFormula,
    Theory,
};
use rayon::prelude::*;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "monolat", version, about = "one-variable lattice-valued logic toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for battery evaluation (order-stable merging).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CalcArg {
    Fle,
    Flew,
    Flec,
}

impl From<CalcArg> for Calculus {
    fn from(c: CalcArg) -> Calculus {
        match c {
            CalcArg::Fle => Calculus::FLe,
            CalcArg::Flew => Calculus::FLew,
            CalcArg::Flec => Calculus::FLec,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FleArg {
    Plain,
    W,
    C,
}

impl From<FleArg> for FleVariant {
    fn from(v: FleArg) -> FleVariant {
        match v {
            FleArg::Plain => FleVariant::Plain,
            FleArg::W => FleVariant::W,
            FleArg::C => FleVariant::C,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Eq,
    Fo,
}

#[derive(Subcommand)]
enum Cmd {
    /// Translate between one-variable first-order and modal formulas.
    Translate {
        formula: String,
        /// first-order → modal (∀ ↦ □, ∃ ↦ ◇, Pᵢ(x) ↦ pᵢ)
        #[arg(long, conflicts_with = "to_fo")]
        to_modal: bool,
        /// modal → first-order
        #[arg(long)]
        to_fo: bool,
    },
    /// Backward proof search for a sequent "Γ |- Δ".
    Prove {
        sequent: String,
        #[arg(long, value_enum, default_value = "fle")]
        calc: CalcArg,
        /// Contraction applications allowed per branch (flec only).
        #[arg(long, default_value_t = 2)]
        contraction_budget: u32,
    },
    /// Prove a sequent and extract an interpolant for a partition.
    Interpolate {
        sequent: String,
        #[arg(long, value_enum, default_value = "fle")]
        calc: CalcArg,
        /// Comma-separated antecedent indexes assigned to the Γ side
        /// (the rest go to Π); e.g. --gamma 0,2.
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 2)]
        contraction_budget: u32,
    },
    /// Validate an algebra file and optionally its modal axioms, residuated
    /// laws, or a modal equation.
    CheckAlgebra {
        file: PathBuf,
        /// Check L1–L5 (and L6 where applicable) plus ⋆ for every operation.
        #[arg(long)]
        m_axioms: bool,
        /// Check the residuated-lattice laws for the given variant.
        #[arg(long, value_enum)]
        fle: Option<FleArg>,
        /// Modal equation "α ≈ β" to test over the algebra.
        #[arg(long)]
        equation: Option<String>,
    },
    /// Enumerate all modal expansions of an algebra file.
    Expansions { file: PathBuf },
    /// Decide an equational or first-order consequence over a battery.
    Consequence {
        /// Conclusion equation "α ≈ β" (use --theory for premises).
        goal: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Built-in battery: chains:N, lattices:N, fle:N, flew:N, flec:N
        /// (all sizes up to N, deterministic order).
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Algebra files to add to the battery.
        #[arg(long = "battery")]
        files: Vec<PathBuf>,
        /// File of premise equations, one per line; # starts a comment.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Maximum structure domain size (fo mode).
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
        /// Cap on structures per (algebra, domain) pair (fo mode).
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Like consequence, but report the first countermodel in detail.
    Countermodel {
        goal: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long = "battery")]
        files: Vec<PathBuf>,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Search for an embedding of a modal-expansion file into a full
    /// functional algebra over battery bases.
    Embed {
        file: PathBuf,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long = "battery")]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_w: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("error: could not configure {jobs} worker threads");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    match &cli.cmd {
        Cmd::Translate { formula, to_modal, to_fo } => translate(cli, formula, *to_modal, *to_fo),
        Cmd::Prove { sequent, calc, contraction_budget } => {
            let (outcome, code) = search(sequent, *calc, *contraction_budget)?;
            if cli.json {
                let derivation = outcome.derivation();
                println!(
                    "{}",
                    json!({ "outcome": outcome_name(&outcome), "derivation": derivation })
                );
            } else {
                match &outcome {
                    SearchOutcome::Derivable(d) => println!("derivable\n{d}"),
                    SearchOutcome::NotDerivable => println!("not derivable"),
                    SearchOutcome::BoundExhausted => println!("bound exhausted"),
                }
            }
            Ok(code)
        }
        Cmd::Interpolate { sequent, calc, gamma, contraction_budget } => {
            run_interpolate(cli, sequent, *calc, gamma.as_deref(), *contraction_budget)
        }
        Cmd::CheckAlgebra { file, m_axioms, fle, equation } => {
            check_algebra(cli, file, *m_axioms, *fle, equation.as_deref())
        }
        Cmd::Expansions { file } => {
            let a = load_base(file)?;
            let expansions = enumerate_modal_expansions(&a);
            if cli.json {
                let items: Vec<_> = expansions.iter().map(expansion_to_json).collect();
                println!("{}", json!({ "count": items.len(), "expansions": items }));
            } else {
                println!("{} modal expansion(s)", expansions.len());
                for (i, m) in expansions.iter().enumerate() {
                    println!("#{i} box={:?} diamond={:?}", m.box_table, m.diamond_table);
                }
            }
            Ok(0)
        }
        Cmd::Consequence { goal, mode, gens, files, theory, max_domain, budget } => consequence(
            cli, goal, *mode, gens, files, theory.as_deref(), *max_domain, *budget, false,
        ),
        Cmd::Countermodel { goal, mode, gens, files, theory, max_domain, budget } => consequence(
            cli, goal, *mode, gens, files, theory.as_deref(), *max_domain, *budget, true,
        ),
        Cmd::Embed { file, gens, files, max_w, budget } => {
            let m = load_expansion(file)?;
            let bases = load_battery(gens, files)?;
            if bases.is_empty() {
                return Err("empty battery: pass --gen or --battery".into());
            }
            let outcome = search_functional_embedding(&m, &bases, *max_w, *budget)?;
            if cli.json {
                println!("{}", json!({ "outcome": outcome }));
            } else {
                match &outcome {
                    EmbeddingOutcome::Found { base_index, worlds, map } => {
                        println!("embedding into base #{base_index} with {worlds} world(s): {map:?}")
                    }
                    EmbeddingOutcome::NotFoundWithinBounds => println!("no embedding within bounds"),
                    EmbeddingOutcome::BudgetExceeded { budget } => {
                        println!("search budget {budget} exhausted")
                    }
                }
            }
            Ok(match outcome {
                EmbeddingOutcome::Found { .. } => 0,
                EmbeddingOutcome::NotFoundWithinBounds => 1,
                EmbeddingOutcome::BudgetExceeded { .. } => 2,
            })
        }
    }
}

fn translate(cli: &Cli, formula: &str, to_modal: bool, to_fo: bool) -> Result<u8, InputError> {
    if to_modal == to_fo {
        return Err("pass exactly one of --to-modal / --to-fo".into());
    }
    let (input, output) = if to_modal {
        let phi = parse_fo(formula)?;
        let alpha = phi.star()?;
        (phi.to_string(), alpha.to_string())
    } else {
        let alpha = parse_modal(formula)?;
        (alpha.to_string(), alpha.circle().to_string())
    };
    if cli.json {
        println!("{}", json!({ "input": input, "output": output }));
    } else {
        println!("{output}");
    }
    Ok(0)
}

fn search(sequent: &str, calc: CalcArg, budget: u32) -> Result<(SearchOutcome, u8), InputError> {
    let s = Sequent::parse(sequent)?;
    let cfg = SearchConfig { contraction_budget: budget, ..SearchConfig::new(calc.into()) };
    let outcome = prove(&s, &cfg);
    let code = match &outcome {
        SearchOutcome::Derivable(_) => 0,
        SearchOutcome::NotDerivable => 1,
        SearchOutcome::BoundExhausted => 2,
    };
    Ok((outcome, code))
}

fn outcome_name(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::Derivable(_) => "derivable",
        SearchOutcome::NotDerivable => "not-derivable",
        SearchOutcome::BoundExhausted => "bound-exhausted",
    }
}

fn run_interpolate(
    cli: &Cli,
    sequent: &str,
    calc: CalcArg,
    gamma: Option<&str>,
    budget: u32,
) -> Result<u8, InputError> {
    let (outcome, code) = search(sequent, calc, budget)?;
    let Some(d) = outcome.derivation() else {
        if cli.json {
            println!("{}", json!({ "outcome": outcome_name(&outcome) }));
        } else {
            println!("{}", outcome_name(&outcome));
        }
        return Ok(code);
    };
    let n = d.conclusion.antecedent.len();
    let mut partition = vec![Side::Pi; n];
    if let Some(spec) = gamma {
        for part in spec.split(',').filter(|p| !p.is_empty()) {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| InputError(format!("bad --gamma index {part:?}")))?;
            if i >= n {
                return Err(format!("--gamma index {i} out of range (antecedent has {n})").into());
            }
            partition[i] = Side::Gamma;
        }
    }
    let r = interpolate(d, &partition, calc.into())?;
    if cli.json {
        println!(
            "{}",
            json!({
                "outcome": "interpolated",
                "interpolant": r.interpolant.to_string(),
                "left": r.left,
                "right": r.right,
                "md": { "original": r.md_original, "left": r.md_left, "right": r.md_right },
            })
        );
    } else {
        println!("interpolant: {}", r.interpolant);
        println!("md: original {}, left {}, right {}", r.md_original, r.md_left, r.md_right);
        println!("-- left (Γ ⇒ χ) --\n{}", r.left);
        println!("-- right (Π, χ ⇒ Δ) --\n{}", r.right);
    }
    Ok(0)
}

fn load_json(path: &PathBuf) -> Result<serde_json::Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?)
}

fn load_base(path: &PathBuf) -> Result<FiniteAlgebra, InputError> {
    Ok(algebra_from_json(&load_json(path)?)?)
}

fn load_expansion(path: &PathBuf) -> Result<ModalExpansion, InputError> {
    Ok(expansion_from_json(&load_json(path)?)?)
}

/// `chains:N`, `lattices:N`, `fle:N`, `flew:N`, `flec:N` — every algebra of
/// size 1..=N in deterministic enumeration order — plus any files given.
fn load_battery(gens: &[String], files: &[PathBuf]) -> Result<Vec<FiniteAlgebra>, InputError> {
    let mut out = Vec::new();
    for gen in gens {
        let (kind, n) = gen
            .split_once(':')
            .ok_or_else(|| InputError(format!("bad --gen spec {gen:?} (want kind:N)")))?;
        let n: usize =
            n.parse().map_err(|_| InputError(format!("bad --gen size in {gen:?}")))?;
        for size in 1..=n {
            match kind {
                "chains" => out.push(chain(size)),
                "lattices" => out.extend(enumerate_lattices(size)),
                "fle" => out.extend(enumerate_fle_algebras(size, FleVariant::Plain)),
                "flew" => out.extend(enumerate_fle_algebras(size, FleVariant::W)),
                "flec" => out.extend(enumerate_fle_algebras(size, FleVariant::C)),
                _ => return Err(format!("unknown --gen kind {kind:?}").into()),
            }
        }
    }
    for f in files {
        out.push(load_base(f)?);
    }
    Ok(out)
}

fn load_theory_lines(path: &PathBuf) -> Result<Vec<String>, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn check_algebra(
    cli: &Cli,
    file: &PathBuf,
    m_axioms: bool,
    fle: Option<FleArg>,
    equation: Option<&str>,
) -> Result<u8, InputError> {
    let value = load_json(file)?;
    let expansion = if value.get("box").is_some() {
        Some(expansion_from_json(&value)?)
    } else {
        None
    };
    let base = match &expansion {
        Some(m) => m.base.clone(),
        None => algebra_from_json(&value)?,
    };

    let mut failed = false;
    let mut report = serde_json::Map::new();
    report.insert("size".into(), json!(base.size));

    if let Some(variant) = fle {
        let r = base.check_fle(variant.into())?;
        failed |= !r.ok();
        if !cli.json {
            println!("fle laws: {r}");
        }
        report.insert("fle".into(), json!(r));
    }
    if m_axioms {
        let m = expansion
            .as_ref()
            .ok_or_else(|| InputError("--m-axioms needs box/diamond tables".into()))?;
        let r = monolat::algebra::check_m_axioms(m);
        failed |= !r.ok();
        if !cli.json {
            print!("{r}");
        }
        report.insert("m_axioms".into(), json!(r));
    }
    if let Some(src) = equation {
        let m = expansion
            .as_ref()
            .ok_or_else(|| InputError("--equation needs box/diamond tables".into()))?;
        let eq = parse_modal_equation(src)?;
        let verdict =
            equational_consequence(std::slice::from_ref(m), &Theory::<ModalFormula>::new(), &eq)?;
        failed |= !verdict.holds();
        if !cli.json {
            print_verdict(&verdict, "equation");
        }
        report.insert("equation".into(), json!(verdict));
    }
    if cli.json {
        println!("{}", serde_json::Value::Object(report));
    } else if !failed {
        println!("ok");
    }
    Ok(if failed { 1 } else { 0 })
}

fn print_verdict(v: &ConsequenceVerdict, label: &str) {
    match v {
        ConsequenceVerdict::Holds { algebras_checked, candidates_checked } => println!(
            "{label} holds ({algebras_checked} algebra(s), {candidates_checked} candidate(s))"
        ),
        ConsequenceVerdict::Fails(cm) => println!(
            "{label} refuted in algebra #{}: lhs = {}, rhs = {}",
            cm.algebra_index, cm.lhs_value, cm.rhs_value
        ),
        ConsequenceVerdict::BudgetExceeded { budget, needed } => {
            println!("{label} undecided: needs {needed} candidates, budget {budget}")
        }
    }
}

/// Evaluates the per-algebra verdicts in parallel and merges them in input
/// order: the first countermodel wins, budget exhaustion next, else the
/// counts are summed.
fn merge_verdicts(parts: Vec<ConsequenceVerdict>) -> ConsequenceVerdict {
    let mut algebras = 0usize;
    let mut candidates = 0u64;
    let mut exhausted: Option<ConsequenceVerdict> = None;
    for (index, v) in parts.into_iter().enumerate() {
        match v {
            ConsequenceVerdict::Holds { algebras_checked, candidates_checked } => {
                algebras += algebras_checked;
                candidates += candidates_checked;
            }
            ConsequenceVerdict::Fails(mut cm) => {
                cm.algebra_index = index;
                return ConsequenceVerdict::Fails(cm);
            }
            v @ ConsequenceVerdict::BudgetExceeded { .. } => {
                exhausted.get_or_insert(v);
            }
        }
    }
    exhausted.unwrap_or(ConsequenceVerdict::Holds {
        algebras_checked: algebras,
        candidates_checked: candidates,
    })
}

#[allow(clippy::too_many_arguments)]
fn consequence(
    cli: &Cli,
    goal: &str,
    mode: ModeArg,
    gens: &[String],
    files: &[PathBuf],
    theory: Option<&std::path::Path>,
    max_domain: usize,
    budget: u64,
    detail: bool,
) -> Result<u8, InputError> {
    let bases = load_battery(gens, files)?;
    if bases.is_empty() {
        return Err("empty battery: pass --gen or --battery".into());
    }
    let theory_lines = match theory {
        Some(p) => load_theory_lines(&p.to_path_buf())?,
        None => Vec::new(),
    };

    let verdict = match mode {
        ModeArg::Eq => {
            let eq = parse_modal_equation(goal)?;
            let mut sigma: Theory<ModalFormula> = Theory::new();
            for line in &theory_lines {
                sigma.push(parse_modal_equation(line)?);
            }
            // every modal expansion of every base, in enumeration order
            let battery: Vec<ModalExpansion> =
                bases.iter().flat_map(enumerate_modal_expansions).collect();
            let parts = battery
                .par_iter()
                .map(|m| equational_consequence(std::slice::from_ref(m), &sigma, &eq))
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            merge_verdicts(parts)
        }
        ModeArg::Fo => {
            let eq = parse_fo_equation(goal)?;
            let mut t: Theory<FOFormula> = Theory::new();
            for line in &theory_lines {
                t.push(parse_fo_equation(line)?);
            }
            let parts = bases
                .par_iter()
                .map(|a| fo_consequence(std::slice::from_ref(a), max_domain, &t, &eq, budget))
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            merge_verdicts(parts)
        }
    };

    if cli.json {
        println!("{}", json!({ "verdict": verdict }));
    } else {
        print_verdict(&verdict, "goal");
        if detail {
            if let ConsequenceVerdict::Fails(cm) = &verdict {
                println!("{}", serde_json::to_string_pretty(&cm.detail).unwrap());
            }
        }
    }
    Ok(match verdict {
        ConsequenceVerdict::Holds { .. } => 0,
        ConsequenceVerdict::Fails(_) => 1,
        ConsequenceVerdict::BudgetExceeded { .. } => 2,
    })
}
