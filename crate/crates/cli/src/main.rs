use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use spforget::{
    answer_sets, answer_sets_to_json, equivalent, f_sem, forget_fast_traced, forget_sequence, forget_traced,
    fsp_target_models, generate_corpus, ht_models, ht_models_to_json, is_q_forgettable, normal_form, parse_program,
    program_distance, satisfies_omega, set_max_atoms, strongly_equivalent_over, verify_sp_with_limit, Atom, AtomSet,
    CorpusSpec, Error, Program, SpReport,
};

const ENV_MAX_ATOMS: &str = "SPFORGET_MAX_ATOMS";

/// Forgetting with strong persistence for extended logic programs.
///
/// Programs are read from files, or from standard input when the path is `-`.
/// Exit codes: 0 success or property true, 1 property false, 2 usage or parse
/// error, 3 enumeration limit exceeded.
#[derive(Parser)]
#[command(name = "spforget", version)]
struct Cli {
    /// Suppress human-readable output; only the exit code reports the result.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a program.
    Normalize { program: String },
    /// Forget an atom (or, with --atoms, several atoms one after another).
    Forget(ForgetArgs),
    /// List answer sets (default) or HT-models.
    Models(ModelsArgs),
    /// Check strong (default) or ordinary equivalence of two programs.
    Equiv(EquivArgs),
    /// Decide criterion Ω; exit 0 when it holds, 1 when it does not.
    Omega(OmegaArgs),
    /// Decide q-forgettability; exit 0 when forgettable, 1 otherwise.
    Qforgettable {
        #[arg(long)]
        atom: String,
        program: String,
    },
    /// Syntactic distance between two programs.
    Distance {
        p1: String,
        p2: String,
        /// Also print an optimal rule mapping.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Counter-model construction of the forgetting result.
    Fsem {
        /// Comma-separated atoms to forget.
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
        /// Normalize the result (off by default, which keeps the raw rule count).
        #[arg(long)]
        normalize: bool,
        program: String,
    },
    /// Compare answer sets before and after forgetting under enumerated contexts.
    VerifySp(VerifyArgs),
}

#[derive(Args)]
struct ForgetArgs {
    /// Atom to forget.
    #[arg(long, conflicts_with = "atoms", required_unless_present = "atoms")]
    atom: Option<String>,
    /// Comma-separated atoms, forgotten left to right.
    #[arg(long, value_delimiter = ',')]
    atoms: Option<Vec<String>>,
    /// Use only derivations 1a, 1b and 4; rejects programs that are not q-forgettable.
    #[arg(long)]
    fast: bool,
    /// Print every generated rule with the derivation that produced it.
    #[arg(long)]
    trace: bool,
    /// Compare HT-models of the result with the semantic target; exit 1 on mismatch.
    #[arg(long)]
    check_oracle: bool,
    program: String,
}

#[derive(Args)]
struct ModelsArgs {
    /// List HT-models.
    #[arg(long, conflicts_with = "as_")]
    ht: bool,
    /// List answer sets (the default).
    #[arg(long = "as")]
    as_: bool,
    /// Extra atoms to include in the signature.
    #[arg(long, value_delimiter = ',')]
    signature: Vec<String>,
    #[arg(long)]
    json: bool,
    program: String,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long, conflicts_with = "weak")]
    strong: bool,
    /// Ordinary equivalence: same answer sets.
    #[arg(long)]
    weak: bool,
    /// Extra atoms to include in the signature.
    #[arg(long, value_delimiter = ',')]
    signature: Vec<String>,
    p1: String,
    p2: String,
}

#[derive(Args)]
struct OmegaArgs {
    /// Comma-separated atoms to forget.
    #[arg(long, value_delimiter = ',', required = true)]
    atoms: Vec<String>,
    /// Extra atoms to include in the signature.
    #[arg(long, value_delimiter = ',')]
    signature: Vec<String>,
    #[arg(long)]
    json: bool,
    program: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "q")]
    atom: String,
    /// Context depth: 0 facts, 1 single rules, 2 rule pairs.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Seed for the generated corpus (ignored with a program file).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of generated programs besides the worked examples.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Lift the six-atom ceiling up to the global enumeration limit.
    #[arg(long)]
    accept_exponential_cost: bool,
    #[arg(long)]
    json: bool,
    /// Check one program instead of a generated corpus.
    program: Option<String>,
}

/// Failure of a subcommand, mapped onto the exit code.
enum Failure {
    Usage(String),
    Limit(String),
    False(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            Error::NotForgettable(_) => Failure::False(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read_program(path: &str) -> Result<Program, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    parse_program(&text).map_err(|e| Failure::Usage(format!("{path}:{e}")))
}

fn atom(name: &str) -> Result<Atom, Failure> {
    Atom::try_new(name).map_err(Failure::from)
}

fn atoms(names: &[String]) -> Result<AtomSet, Failure> {
    names.iter().map(|n| atom(n)).collect()
}

fn braces(set: &AtomSet) -> String {
    let names: Vec<&str> = set.iter().map(Atom::name).collect();
    format!("{{{}}}", names.join(", "))
}

fn verdict(holds: bool, yes: &str, no: &str) -> (String, bool) {
    (format!("{}\n", if holds { yes } else { no }), holds)
}

fn normalize(path: &str) -> Outcome {
    Ok((normal_form(&read_program(path)?).to_string(), true))
}

fn forget_cmd(args: &ForgetArgs) -> Outcome {
    let program = read_program(&args.program)?;
    let mut out = String::new();
    let list: Vec<Atom> = match (&args.atom, &args.atoms) {
        (Some(a), _) => vec![atom(a)?],
        (None, Some(list)) => list.iter().map(|a| atom(a)).collect::<Result<_, _>>()?,
        (None, None) => return Err(Failure::Usage("one of --atom or --atoms is required".into())),
    };
    if list.len() > 1 {
        eprintln!("warning: forgetting several atoms in sequence; strong persistence is only guaranteed per atom");
        if args.fast || args.trace || args.check_oracle {
            return Err(Failure::Usage("--fast, --trace and --check-oracle take a single --atom".into()));
        }
        return Ok((forget_sequence(&program, &list).to_string(), true));
    }
    let q = list[0];
    let (result, trace) = if args.fast { forget_fast_traced(&program, q)? } else { forget_traced(&program, q) };
    if args.trace {
        out.push_str("% generated before normalization\n");
        for line in trace.to_string().lines() {
            out.push_str(&format!("% {line}\n"));
        }
    }
    out.push_str(&result.to_string());
    if args.check_oracle {
        let target = fsp_target_models(&program, &[q].into())?;
        let ok = ht_models(&result, target.signature())? == target;
        out.push_str(&format!("% oracle: {}\n", if ok { "match" } else { "MISMATCH" }));
        return Ok((out, ok));
    }
    Ok((out, true))
}

fn models(args: &ModelsArgs) -> Outcome {
    let program = read_program(&args.program)?;
    let mut sig = program.signature();
    sig.extend(atoms(&args.signature)?);
    if args.ht {
        let models = ht_models(&program, &sig)?;
        if args.json {
            return Ok((ht_models_to_json(&models) + "\n", true));
        }
        let text: String =
            models.iter().map(|m| format!("<{}, {}>\n", braces(&m.here), braces(&m.there))).collect();
        return Ok((text, true));
    }
    let sets = answer_sets(&program.widened(sig.iter().copied()))?;
    if args.json {
        return Ok((answer_sets_to_json(&sig, &sets) + "\n", true));
    }
    Ok((sets.iter().map(|s| braces(s) + "\n").collect(), true))
}

fn equiv(args: &EquivArgs) -> Outcome {
    let (p1, p2) = (read_program(&args.p1)?, read_program(&args.p2)?);
    if args.weak {
        return Ok(verdict(equivalent(&p1, &p2)?, "equivalent", "not equivalent"));
    }
    let mut sig = p1.signature();
    sig.extend(p2.signature());
    sig.extend(atoms(&args.signature)?);
    Ok(verdict(strongly_equivalent_over(&p1, &p2, &sig)?, "strongly equivalent", "not strongly equivalent"))
}

fn omega(args: &OmegaArgs) -> Outcome {
    let program = read_program(&args.program)?.widened(atoms(&args.signature)?);
    let v = atoms(&args.atoms)?;
    let report = satisfies_omega(&program, &v)?;
    let names = |s: &AtomSet| s.iter().map(|a| a.name()).collect::<Vec<_>>();
    if args.json {
        let doc = json!({
            "forgotten": names(&report.forgotten),
            "satisfied": report.satisfied,
            "witness": report.witness.as_ref().map(names),
            "candidates": report.candidates.iter().map(|c| json!({
                "y": names(&c.y),
                "rel": c.rel.iter().map(names).collect::<Vec<_>>(),
                "families": c.families.iter().map(|(a, fam)| json!({
                    "a": names(a),
                    "r": fam.iter().map(names).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "has_least": c.has_least,
            })).collect::<Vec<_>>(),
        });
        return Ok((doc.to_string() + "\n", report.satisfied));
    }
    let mut out = format!("omega: {}\n", report.satisfied);
    if let Some(c) = report.witness_candidate() {
        out.push_str(&format!("witness Y = {}\n", braces(&c.y)));
        for (a, fam) in &c.families {
            let fam: Vec<String> = fam.iter().map(braces).collect();
            out.push_str(&format!("  A = {}: R = {{{}}}\n", braces(a), fam.join(", ")));
        }
    }
    Ok((out, report.satisfied))
}

fn qforgettable(name: &str, path: &str) -> Outcome {
    let q = atom(name)?;
    let holds = is_q_forgettable(&read_program(path)?, q);
    Ok(verdict(holds, &format!("{q}-forgettable"), &format!("not {q}-forgettable")))
}

fn distance(p1: &str, p2: &str, witness: bool, as_json: bool) -> Outcome {
    let d = program_distance(&read_program(p1)?, &read_program(p2)?);
    if as_json {
        let doc = serde_json::to_value(&d).expect("plain data serializes");
        return Ok((doc.to_string() + "\n", true));
    }
    let mut out = format!("{}\n", d.distance);
    if witness {
        for (r1, r2, c) in &d.pairs {
            out.push_str(&format!("{r1}  ->  {r2}  ({c})\n"));
        }
        for r in &d.unmatched_left {
            out.push_str(&format!("{r}  ->  -  ({})\n", r.size()));
        }
        for r in &d.unmatched_right {
            out.push_str(&format!("-  ->  {r}  ({})\n", r.size()));
        }
    }
    Ok((out, true))
}

fn fsem(names: &[String], normalize: bool, path: &str) -> Outcome {
    let program = read_program(path)?;
    let result = f_sem(&program, &atoms(names)?)?;
    let result = if normalize { normal_form(&result) } else { result };
    Ok((result.to_string(), true))
}

fn verify(args: &VerifyArgs) -> Outcome {
    let q = atom(&args.atom)?;
    let limit = if args.accept_exponential_cost { spforget::max_atoms() } else { spforget::harness::SP_GUARD };
    let corpus = match &args.program {
        Some(path) => vec![read_program(path)?],
        None => generate_corpus(&CorpusSpec { seed: args.seed, count: args.count, ..CorpusSpec::default() }),
    };
    let reports: Vec<SpReport> =
        corpus.iter().map(|p| verify_sp_with_limit(p, q, args.depth, limit)).collect::<Result<_, _>>()?;
    let ok = reports.iter().all(SpReport::passed);
    if args.json {
        let doc = if args.program.is_some() { json!(reports[0]) } else { json!(reports) };
        return Ok((doc.to_string() + "\n", ok));
    }
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        out.push_str(&format!(
            "#{i} {} omega={} contexts={} failures={} surplus={}\n",
            r.mode,
            r.omega,
            r.contexts_checked,
            r.failures.len(),
            r.surplus.len()
        ));
        for f in &r.failures {
            out.push_str(&format!("  FAIL R = {{{}}}\n", f.context.trim_end().replace('\n', " ")));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} programs, {failed} with failures\n", reports.len()));
    Ok((out, ok))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Normalize { program } => normalize(program),
        Command::Forget(args) => forget_cmd(args),
        Command::Models(args) => models(args),
        Command::Equiv(args) => equiv(args),
        Command::Omega(args) => omega(args),
        Command::Qforgettable { atom, program } => qforgettable(atom, program),
        Command::Distance { p1, p2, witness, json } => distance(p1, p2, *witness, *json),
        Command::Fsem { atoms, normalize, program } => fsem(atoms, *normalize, program),
        Command::VerifySp(args) => verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(ENV_MAX_ATOMS) {
        match v.parse::<usize>() {
            Ok(n) => set_max_atoms(n),
            Err(_) => {
                eprintln!("error: {ENV_MAX_ATOMS} must be a non-negative integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok((text, holds)) => {
            if !cli.quiet {
                let _ = io::stdout().write_all(text.as_bytes());
            }
            ExitCode::from(if holds { 0 } else { 1 })
        }
        Err(Failure::False(msg)) => {
            if !cli.quiet {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
