//! `skewcat`: enumerate, compare and normalise maps of free partially
//! normal skew monoidal categories.
//!
//! Exit codes: 0 on success, 1 when `equal` answers not-equal (or the
//! coherence audit fails), 2 on parse or type errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use skewcat_core::rewrite::Strategy;
use skewcat_core::{
    cat_equal, check_seq, count_derivations, focus, generate, hom_enumerate, parse_formula,
    parse_sequent, search, sexpr, try_rewrite_nf, FocSequent, NormalityFlags, Stoup,
    DEFAULT_STEP_CAP,
};

#[derive(Parser)]
#[command(name = "skewcat", version, about = "Proof search for skew monoidal categories")]
struct Cli {
    /// Emit line-delimited JSON instead of human-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Normality {
    /// Left-normal: the left unitor λ is invertible.
    #[arg(long)]
    ln: bool,
    /// Right-normal: the right unitor ρ is invertible.
    #[arg(long)]
    rn: bool,
    /// Associative-normal: the associator α is invertible.
    #[arg(long)]
    an: bool,
}

impl Normality {
    fn flags(self) -> NormalityFlags {
        NormalityFlags::new(self.ln, self.rn, self.an)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print every focused derivation of a sequent, then its count.
    Enumerate {
        #[command(flatten)]
        normality: Normality,
        /// Sequent, `S | Γ |- C` or the sugar `A |- C`; `-` reads stdin.
        sequent: String,
    },
    /// Print the number of focused derivations of a sequent.
    Count {
        #[command(flatten)]
        normality: Normality,
        sequent: String,
    },
    /// Decide whether two maps, given as s-expressions, are equal.
    Equal {
        #[command(flatten)]
        normality: Normality,
        left: String,
        right: String,
    },
    /// Print the focused normal form and the rewrite normal form of a
    /// sequent derivation given as an s-expression.
    Normalize {
        #[command(flatten)]
        normality: Normality,
        derivation: String,
    },
    /// Print categorical representatives of every map between two
    /// formulae.
    Hom {
        #[command(flatten)]
        normality: Normality,
        source: String,
        target: String,
    },
    /// Randomized coherence audit: Mac Lane counts at all flags on and
    /// thinness under ln+rn.
    Coherence {
        /// Largest number of atom occurrences per generated formula.
        #[arg(long, default_value_t = 5)]
        max_atoms: usize,
        /// PRNG seed; fixed seeds give byte-identical output.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Number of generated formula pairs.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Resolve a positional argument, reading stdin when it is `-`.
fn resolve(arg: &str, stdin_used: &mut bool) -> Result<String, String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    if *stdin_used {
        return Err("stdin (`-`) may be used for at most one argument".to_string());
    }
    *stdin_used = true;
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| format!("reading stdin: {e}"))?;
    Ok(buf.trim().to_string())
}

fn step_cap() -> Result<usize, String> {
    match std::env::var("SKEWCAT_MAX_STEPS") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("SKEWCAT_MAX_STEPS must be a number, got `{v}`")),
        Err(_) => Ok(DEFAULT_STEP_CAP),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let json = cli.json;
    let mut stdin_used = false;
    match cli.command {
        Command::Enumerate { normality, sequent } => {
            let flags = normality.flags();
            let text = resolve(&sequent, &mut stdin_used)?;
            let seq = parse_sequent(&text).map_err(|e| e.to_string())?;
            let results = search(flags, &FocSequent::root_of(&seq));
            for d in &results {
                let s = sexpr::print_foc(d);
                if json {
                    println!("{}", json!({"type": "derivation", "sexp": s}));
                } else {
                    println!("{s}");
                }
            }
            if json {
                println!("{}", json!({"type": "count", "value": results.len()}));
            } else {
                println!("count: {}", results.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { normality, sequent } => {
            let flags = normality.flags();
            let text = resolve(&sequent, &mut stdin_used)?;
            let seq = parse_sequent(&text).map_err(|e| e.to_string())?;
            let n = count_derivations(flags, &seq.stoup, &seq.context, &seq.succedent);
            if json {
                println!("{}", json!({"type": "count", "value": n}));
            } else {
                println!("{n}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equal { normality, left, right } => {
            let flags = normality.flags();
            let lt = resolve(&left, &mut stdin_used)?;
            let rt = resolve(&right, &mut stdin_used)?;
            let l = sexpr::parse_cat(&lt).map_err(|e| e.to_string())?;
            let r = sexpr::parse_cat(&rt).map_err(|e| e.to_string())?;
            let equal = cat_equal(&l, &r, flags).map_err(|e| e.to_string())?;
            if json {
                println!("{}", json!({"type": "equal", "value": equal}));
            } else {
                println!("{}", if equal { "equal" } else { "not-equal" });
            }
            Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Normalize { normality, derivation } => {
            let flags = normality.flags();
            let text = resolve(&derivation, &mut stdin_used)?;
            let d = sexpr::parse_seq(&text).map_err(|e| e.to_string())?;
            check_seq(&d, flags).map_err(|e| e.to_string())?;
            let focused = focus(&d, flags).map_err(|e| e.to_string())?;
            let cap = step_cap()?;
            let nf = try_rewrite_nf(&d, flags, Strategy::LeftmostInnermost, cap)
                .map_err(|e| e.to_string())?;
            if json {
                println!("{}", json!({"type": "focused", "sexp": sexpr::print_foc(&focused)}));
                println!("{}", json!({"type": "rewrite", "sexp": sexpr::print_seq(&nf)}));
            } else {
                println!("focused: {}", sexpr::print_foc(&focused));
                println!("rewrite: {}", sexpr::print_seq(&nf));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hom { normality, source, target } => {
            let flags = normality.flags();
            let st = resolve(&source, &mut stdin_used)?;
            let tt = resolve(&target, &mut stdin_used)?;
            let a = parse_formula(&st).map_err(|e| e.to_string())?;
            let c = parse_formula(&tt).map_err(|e| e.to_string())?;
            for h in hom_enumerate(flags, &a, &c) {
                let s = sexpr::print_cat(&h);
                if json {
                    println!("{}", json!({"type": "representative", "sexp": s}));
                } else {
                    println!("{s}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Coherence { max_atoms, seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0usize;
            for _ in 0..trials {
                let atoms = &generate::DEFAULT_ATOMS[..];
                let budget = rng.gen_range(0..=max_atoms);
                let a = generate::random_formula(&mut rng, atoms, budget);
                let c = if rng.gen_bool(0.5) {
                    generate::random_formula(&mut rng, atoms, budget)
                } else {
                    // Bias towards equal frontiers: reassociate and pad a.
                    pad_units(&mut rng, &a)
                };
                let all_on =
                    count_derivations(NormalityFlags::ALL, &Stoup::Just(a.clone()), &[], &c);
                let expect = usize::from(a.frontier() == c.frontier());
                if all_on != expect {
                    failures += 1;
                    report_failure(json, "mac-lane", &a, &c, all_on, expect);
                    continue;
                }
                let thin = count_derivations(
                    NormalityFlags::new(true, true, false),
                    &Stoup::Just(a.clone()),
                    &[],
                    &c,
                );
                if thin > 1 {
                    failures += 1;
                    report_failure(json, "thinness", &a, &c, thin, 1);
                }
            }
            let pass = failures == 0;
            if json {
                println!(
                    "{}",
                    json!({"type": "coherence", "trials": trials, "failures": failures,
                           "pass": pass})
                );
            } else {
                println!(
                    "coherence: {} trials, {} failures — {}",
                    trials,
                    failures,
                    if pass { "PASS" } else { "FAIL" }
                );
            }
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn report_failure(
    json: bool,
    kind: &str,
    a: &skewcat_core::Formula,
    c: &skewcat_core::Formula,
    got: usize,
    want: usize,
) {
    if json {
        println!(
            "{}",
            json!({"type": "failure", "kind": kind, "source": a.to_string(),
                   "target": c.to_string(), "count": got, "expected": want})
        );
    } else {
        println!("failure [{kind}]: {a} |- {c}: count {got}, expected {want}");
    }
}

/// A formula with the same frontier as `f`, built by re-associating its
/// atoms and sprinkling units.
fn pad_units(rng: &mut impl Rng, f: &skewcat_core::Formula) -> skewcat_core::Formula {
    use skewcat_core::Formula;
    let mut acc: Option<Formula> = None;
    for x in f.frontier() {
        let mut leaf = Formula::Atom(x);
        if rng.gen_bool(0.3) {
            leaf = if rng.gen_bool(0.5) {
                Formula::tensor(Formula::Unit, leaf)
            } else {
                Formula::tensor(leaf, Formula::Unit)
            };
        }
        acc = Some(match acc {
            None => leaf,
            Some(l) => {
                if rng.gen_bool(0.3) {
                    // Right-lean occasionally for shape variety.
                    match l {
                        Formula::Tensor(a, b) => Formula::tensor(
                            (*a).clone(),
                            Formula::tensor((*b).clone(), leaf),
                        ),
                        other => Formula::tensor(other, leaf),
                    }
                } else {
                    Formula::tensor(l, leaf)
                }
            }
        });
    }
    acc.unwrap_or(Formula::Unit)
}
