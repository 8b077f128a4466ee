//! `positroid`: boundary algebra presentations, model generation, the path
//! oracle and cross-checks from the command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use positroid_core::crosscheck::{crosscheck, Outcome};
use positroid_core::dimer::{consistency_check, decorated_permutation, validate_model, DimerError, DimerModel};
use positroid_core::necklace::necklace_from_permutation;
use positroid_core::perm::{connected_permutations, parse_permutation, DecoratedPermutation};
use positroid_core::plabic::{plabic_with_order, realize_with, BridgeOrder, PlabicError};
use positroid_core::presentation::{export_presentation, presentation, ExportFormat, QuiverPresentation, Symbol};
use positroid_core::rewrite::PathEngine;

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DISCONNECTED: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_INCONSISTENT: u8 = 5;

#[derive(Parser)]
#[command(name = "positroid", version, about = "Boundary algebras of positroids and their dimer models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print k, the necklace, the quiver and the relations of a permutation.
    Analyze {
        /// One-line notation, e.g. "2 5 6 1 3 4" or 256134; fixed points take + or -.
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a consistent dimer model realising a connected permutation.
    Generate {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[command(flatten)]
        order: OrderArgs,
        /// Emit the intermediate plabic graph instead of the model.
        #[arg(long)]
        plabic: bool,
    },
    /// Run the path oracle on a dimer model file.
    Oracle {
        model: PathBuf,
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"], conflicts_with = "all")]
        pair: Option<Vec<usize>>,
        #[arg(long)]
        all: bool,
        /// Also verify every relation of the model's presentation.
        #[arg(long)]
        relations: bool,
    },
    /// Compare the formulas with the oracle on generated models.
    Crosscheck {
        #[arg(num_args = 0.., conflicts_with = "enumerate")]
        perm: Vec<String>,
        /// Check every connected permutation of this size.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct OrderArgs {
    /// Peel the greatest admissible bridge instead of the least.
    #[arg(long, conflicts_with = "seed")]
    greatest: bool,
    /// Peel admissible bridges in a random order from this seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl OrderArgs {
    fn order(&self) -> BridgeOrder {
        match (self.greatest, self.seed) {
            (true, _) => BridgeOrder::Greatest,
            (_, Some(s)) => BridgeOrder::Seeded(s),
            _ => BridgeOrder::Least,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<String, Failure>;

/// Accepts spaced tokens or, for n <= 9, a run of digits with optional
/// `+`/`-` marks after fixed points.
fn read_permutation(parts: &[String]) -> Result<DecoratedPermutation, Failure> {
    let joined = parts.join(" ");
    let text = if parts.len() == 1 && !joined.contains(char::is_whitespace) {
        let mut spaced = String::new();
        for c in joined.chars() {
            if c.is_ascii_digit() && !spaced.is_empty() {
                spaced.push(' ');
            }
            spaced.push(c);
        }
        spaced
    } else {
        joined
    };
    parse_permutation(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("cannot parse permutation: {e}")))
}

fn connected(p: DecoratedPermutation) -> Result<DecoratedPermutation, Failure> {
    if p.is_connected() {
        Ok(p)
    } else {
        Err(Failure::new(EXIT_DISCONNECTED, format!("{p} is not connected")))
    }
}

fn analyze(parts: &[String], format: Format) -> CmdResult {
    let p = connected(read_permutation(parts)?)?;
    let qp = presentation(&p).map_err(|e| Failure::new(EXIT_MISMATCH, e.to_string()))?;
    Ok(match format {
        Format::Json => export_presentation(&qp, ExportFormat::Json),
        Format::Dot => export_presentation(&qp, ExportFormat::Dot),
        Format::Text => text_report(&p, &qp),
    })
}

fn text_report(p: &DecoratedPermutation, qp: &QuiverPresentation) -> String {
    let q = &qp.quiver;
    let mut s = String::new();
    let _ = writeln!(s, "permutation: {p}");
    let _ = writeln!(s, "n = {}, k = {}", q.n, q.k);
    let _ = writeln!(s, "necklace: {}", necklace_from_permutation(p));
    let list = |syms: Vec<Symbol>| {
        if syms.is_empty() {
            "none".to_string()
        } else {
            syms.iter().map(Symbol::to_string).collect::<Vec<_>>().join(" ")
        }
    };
    let _ = writeln!(s, "missing adjacent arrows: {}", list(q.missing()));
    let _ = writeln!(s, "nonadjacent arrows:");
    for d in &q.nonadjacent {
        let _ = writeln!(s, "  {} -> {}  {}:{}", d.from, d.to, d.x, d.y);
    }
    let _ = writeln!(s, "relations (extended quiver, up to cancellative closure):");
    for r in &qp.relations_circ {
        let _ = writeln!(s, "  {r}");
    }
    if !qp.substitutions.is_empty() {
        let _ = writeln!(s, "substitutions:");
        for sub in &qp.substitutions {
            let _ = writeln!(s, "  {} = {}", sub.symbol, sub.word);
        }
        let _ = writeln!(s, "relations (Gabriel quiver):");
        for r in &qp.relations_admissible {
            let _ = writeln!(s, "  {r}");
        }
    }
    s
}

fn generate(parts: &[String], order: BridgeOrder, plabic: bool) -> CmdResult {
    let p = connected(read_permutation(parts)?)?;
    if plabic {
        let g = plabic_with_order(&p, order).map_err(|e| Failure::new(EXIT_MISMATCH, e.to_string()))?;
        return Ok(g.to_json());
    }
    match realize_with(&p, order) {
        Ok(m) => Ok(m.to_json()),
        Err(PlabicError::NotConnected) => Err(Failure::new(EXIT_DISCONNECTED, format!("{p} is not connected"))),
        Err(e) => Err(Failure::new(EXIT_MISMATCH, e.to_string())),
    }
}

fn load_model(path: &PathBuf) -> Result<DimerModel, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let m = DimerModel::from_json(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    if let Err(violations) = validate_model(&m) {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v:?}")).collect();
        return Err(Failure::new(EXIT_INVALID, format!("invalid model:\n{}", lines.join("\n"))));
    }
    match consistency_check(&m) {
        Ok(()) => Ok(m),
        Err(DimerError::Bad(bad)) => {
            let lines: Vec<String> = bad.iter().map(|b| format!("  {b:?}")).collect();
            Err(Failure::new(EXIT_INCONSISTENT, format!("model is not consistent:\n{}", lines.join("\n"))))
        }
        Err(e) => Err(Failure::new(EXIT_INVALID, e.to_string())),
    }
}

fn oracle(path: &PathBuf, pair: Option<&[usize]>, all: bool, relations: bool) -> CmdResult {
    let m = load_model(path)?;
    let e = PathEngine::new(&m).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
    let err = |x: positroid_core::rewrite::RewriteError| Failure::new(EXIT_MISMATCH, x.to_string());
    let n = e.n();
    let pairs: Vec<(usize, usize)> = match pair {
        Some(&[a, b]) => {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Failure::new(EXIT_PARSE, format!("pair ({a}, {b}) is not two distinct vertices of 1..={n}")));
            }
            vec![(a, b)]
        }
        _ if all => (1..=n).flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b))).collect(),
        _ => Vec::new(),
    };
    let mut out = String::new();
    for (a, b) in pairs {
        let v = e.verdict(a, b).map_err(err)?;
        let kind = if v.arrow_defining { "arrow-defining" } else { "not arrow-defining" };
        let _ = writeln!(out, "{a} -> {b}: {kind}, X={} Y={}", v.x, v.y);
    }
    if relations {
        let p = decorated_permutation(&m).map_err(|e| Failure::new(EXIT_INCONSISTENT, e.to_string()))?;
        let qp = presentation(&p).map_err(|e| Failure::new(EXIT_MISMATCH, e.to_string()))?;
        let mut failed = 0;
        for r in qp.relations_circ.iter().chain(&qp.relations_admissible) {
            let ok = e.verify_relation(r).map_err(err)?;
            failed += usize::from(!ok);
            let _ = writeln!(out, "{r}: {}", if ok { "holds" } else { "FAILS" });
        }
        if failed > 0 {
            return Err(Failure::new(EXIT_MISMATCH, format!("{out}{failed} relations fail")));
        }
    }
    Ok(out)
}

fn run_crosscheck(parts: &[String], enumerate: Option<usize>, timing: bool) -> CmdResult {
    let start = Instant::now();
    let (input, perms) = match enumerate {
        Some(n) if (3..=9).contains(&n) => (format!("enumerate {n}"), connected_permutations(n)),
        Some(n) => return Err(Failure::new(EXIT_PARSE, format!("--enumerate takes 3..=9, got {n}"))),
        None if parts.is_empty() => return Err(Failure::new(EXIT_PARSE, "give a permutation or --enumerate N")),
        None => {
            let p = connected(read_permutation(parts)?)?;
            (p.to_string(), vec![p])
        }
    };
    let mut report = crosscheck("crosscheck", &input, &perms);
    if timing {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    match report.outcome {
        Outcome::Ok => Ok(report.to_json()),
        _ => {
            print!("{}", report.to_json());
            let problems = report.mismatches.len() + report.errors.len();
            Err(Failure::new(EXIT_MISMATCH, format!("crosscheck failed with {problems} problems")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Analyze { perm, format } => analyze(perm, *format),
        Command::Generate { perm, order, plabic } => generate(perm, order.order(), *plabic),
        Command::Oracle { model, pair, all, relations } => oracle(model, pair.as_deref(), *all, *relations),
        Command::Crosscheck { perm, enumerate, timing } => run_crosscheck(perm, *enumerate, *timing),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
