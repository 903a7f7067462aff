//! `permlab`: construct infinite permutations exactly, extract factors,
//! measure complexity, and check the periodicity and counting statements
//! the library implements.
//!
//! Exit codes: 0 success, 1 a verification failed (a theorem checker
//! found a counterexample, a crosscheck reported mismatches) or a
//! computation could not be completed, 2 usage error.

mod svg;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use permlab::analysis::{
    count_square_free, detect_period, factor_complexity, is_saturated, is_square,
    is_square_free, max_pattern_complexity, word_factor_complexity,
    word_max_pattern_complexity, ComplexityReport,
};
use permlab::automaton::{crosscheck, tm_automaton, PairAutomaton};
use permlab::finewilf::{
    env_budget, find_nongcd_witness, verify_coprime_theorem, verify_factor_theorem,
    word_period_classes,
};
use permlab::genperm::permutation_from_spec;
use permlab::patterns::{Pattern, PermutationView};
use permlab::words::InfiniteWord;
use permlab::Error as LibError;

const SPEC_HELP: &str = "\
Permutation specs:
  wordperm:<word>[;L=<lookahead>]   order of q-ary suffix values of a word
  sturmian:w=<word>,x=<r>,y=<r>[,a0=<r>]  steps +x on 0 and -y on 1
  periodic:n=<k>                    the 2-periodic integer family
  tmmorphic                         dyadic morphic stream
  monotone                          the identity order
Word specs:
  tm | pd | fib | mech:alpha=<r>[,rho=<r>] | morphic:0→01,1→10;seed=0 |
  ultper:u=<digits>,v=<digits> | random:seed=<u64>
Exact reals: 3, -3/4, sqrt2, (-1+1√5)/2
Automaton files: `k=<base>`, then `state <name> out {<|>|=} [initial]`
lines, then `edge <from> (<d1>,<d2>) <to>` lines; `#` starts a comment.
Exit codes: 0 ok, 1 verification/computation failure, 2 usage error.
Environment: PERMLAB_BUDGET overrides the enumeration node budget.";

#[derive(Parser)]
#[command(name = "permlab", version, about = "Infinite permutations, exactly", after_long_help = SPEC_HELP)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Node budget for backtracking enumerations (default: PERMLAB_BUDGET
    /// or 10_000_000)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized property sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the factor of a permutation as a rank pattern
    Factor(FactorArgs),
    /// Query one relation, or sample pairs for antisymmetry
    Gamma(GammaArgs),
    /// Factor or maximal pattern complexity of a permutation or word
    Complexity(ComplexityArgs),
    /// Search for the least period consistent with a scanned prefix
    Period(PeriodArgs),
    /// Periodicity interaction checks
    #[command(subcommand)]
    Finewilf(FinewilfCmd),
    /// Primitive-word counts and the maximal complexity table
    #[command(subcommand)]
    Makarov(MakarovCmd),
    /// Square patterns and square-free counts
    #[command(subcommand)]
    Squares(SquaresCmd),
    /// Pair automata over digit pairs
    #[command(subcommand)]
    Automaton(AutomatonCmd),
    /// Render the first points of a permutation as an SVG scatter
    Plot(PlotArgs),
}

#[derive(Args)]
struct FactorArgs {
    /// Permutation spec
    #[arg(long)]
    perm: String,
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long)]
    len: usize,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    perm: String,
    #[arg(long, conflicts_with = "sample")]
    i: Option<usize>,
    #[arg(long, conflicts_with = "sample", requires = "i")]
    j: Option<usize>,
    /// Sample this many random pairs below --bound and check antisymmetry
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 512)]
    bound: usize,
}

#[derive(Args)]
struct ComplexityArgs {
    #[arg(long, conflicts_with = "word")]
    perm: Option<String>,
    /// Word spec (measures word complexity instead)
    #[arg(long)]
    word: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::Factor)]
    kind: Kind,
    /// Pattern length (first row)
    #[arg(long)]
    n: usize,
    /// Last row's pattern length (defaults to --n)
    #[arg(long)]
    n_to: Option<usize>,
    /// Max window spread for maxpattern scans
    #[arg(long = "T", alias = "t", default_value_t = 24)]
    t: usize,
    /// Prefix scan bound
    #[arg(long = "M", alias = "m", default_value_t = 2000)]
    m: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Factor,
    Maxpattern,
}

#[derive(Args)]
struct PeriodArgs {
    #[arg(long)]
    perm: String,
    #[arg(long, default_value_t = 512)]
    m: usize,
    #[arg(long, default_value_t = 64)]
    t_max: usize,
}

#[derive(Subcommand)]
enum FinewilfCmd {
    /// Word period classes at the settling length and one below
    Words {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Verify the coprime monotonicity statement (or, with --n, the
    /// factor statement at that length)
    Perms {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Least p,q-periodic pattern of length n that is not gcd-periodic
    Witness {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum MakarovCmd {
    /// Rows (t, psi, enumeration oracle, p(t+1)) for t = 1..=max-n
    Table {
        #[arg(long, default_value_t = 12)]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum SquaresCmd {
    /// Square-free counts for lengths 1..=max-n
    Count {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Classify one pattern
    Check {
        #[arg(long)]
        pattern: String,
    },
}

#[derive(Subcommand)]
enum AutomatonCmd {
    /// Compare an automaton against a permutation below a bound
    Check {
        /// Automaton table file (defaults to the bundled Thue-Morse one)
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value = "wordperm:tm")]
        perm: String,
        #[arg(long, default_value_t = 512)]
        n: usize,
    },
    /// Print the bundled Thue-Morse automaton table
    Show,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, conflicts_with_all = ["pattern", "witness"])]
    perm: Option<String>,
    /// A finite pattern to plot directly
    #[arg(long, conflicts_with = "witness")]
    pattern: Option<String>,
    /// `p,q,n`: plot the least p,q-periodic non-gcd-periodic pattern
    #[arg(long)]
    witness: Option<String>,
    /// Number of points for --perm
    #[arg(long, default_value_t = 40)]
    n: usize,
    /// Output path (`-` for stdout)
    #[arg(long)]
    out: String,
}

/// Classified failure: distinguishes usage errors (exit 2) from
/// verification/computation failures (exit 1).
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<LibError> for Failure {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Parse(_) | LibError::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn envelope<T: Serialize>(command: &str, params: serde_json::Value, result: T) -> String {
    let doc = json!({
        "command": command,
        "params": params,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let budget = cli.budget.unwrap_or_else(env_budget);
    match &cli.command {
        Command::Factor(a) => factor_cmd(cli, a),
        Command::Gamma(a) => gamma_cmd(cli, a),
        Command::Complexity(a) => complexity_cmd(cli, a),
        Command::Period(a) => period_cmd(cli, a),
        Command::Finewilf(c) => finewilf_cmd(cli, c, budget),
        Command::Makarov(c) => makarov_cmd(cli, c),
        Command::Squares(c) => squares_cmd(cli, c),
        Command::Automaton(c) => automaton_cmd(cli, c),
        Command::Plot(a) => plot_cmd(a, budget),
    }
}

fn load_perm(spec: &str) -> Result<PermutationView, Failure> {
    Ok(permutation_from_spec(spec)?)
}

fn factor_cmd(cli: &Cli, a: &FactorArgs) -> Result<String, Failure> {
    let p = load_perm(&a.perm)?;
    let pat = p.factor(a.start, a.len)?;
    Ok(match cli.format {
        Format::Json => envelope(
            "factor",
            json!({"perm": a.perm, "start": a.start, "len": a.len}),
            json!({"pattern": pat}),
        ),
        _ => format!("{pat}\n"),
    })
}

fn gamma_cmd(cli: &Cli, a: &GammaArgs) -> Result<String, Failure> {
    let p = load_perm(&a.perm)?;
    if let Some(count) = a.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let bound = a.bound.max(2);
        let mut failures = Vec::new();
        for _ in 0..count {
            let i = rng.gen_range(0..bound);
            let mut j = rng.gen_range(0..bound);
            if i == j {
                j = (i + 1) % bound;
            }
            if p.gamma(i, j)? != p.gamma(j, i)?.flip() {
                failures.push((i, j));
            }
        }
        if !failures.is_empty() {
            return Err(Failure::Verification(format!(
                "antisymmetry failed at {} of {count} sampled pairs, first {:?}",
                failures.len(),
                failures[0]
            )));
        }
        return Ok(match cli.format {
            Format::Json => envelope(
                "gamma-sample",
                json!({"perm": a.perm, "sample": count, "bound": bound, "seed": cli.seed}),
                json!({"antisymmetric": true}),
            ),
            _ => format!("antisymmetry holds on {count} sampled pairs below {bound}\n"),
        });
    }
    let (i, j) = match (a.i, a.j) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(Failure::Usage("gamma needs --i and --j, or --sample".into())),
    };
    let rel = p.gamma(i, j)?;
    Ok(match cli.format {
        Format::Json => envelope(
            "gamma",
            json!({"perm": a.perm, "i": i, "j": j}),
            json!({"relation": rel.to_string()}),
        ),
        _ => format!("{rel}\n"),
    })
}

struct ComplexityRow {
    report: ComplexityReport,
    saturated: bool,
}

fn complexity_cmd(cli: &Cli, a: &ComplexityArgs) -> Result<String, Failure> {
    let n_to = a.n_to.unwrap_or(a.n);
    if n_to < a.n {
        return Err(Failure::Usage("--n-to must be at least --n".into()));
    }
    let source = match (&a.perm, &a.word) {
        (Some(p), None) => Source::Perm(load_perm(p)?),
        (None, Some(w)) => Source::Word(InfiniteWord::from_spec(w)?),
        _ => return Err(Failure::Usage("need exactly one of --perm or --word".into())),
    };
    let mut rows = Vec::new();
    for n in a.n..=n_to {
        let report = source.complexity(a.kind, n, a.t, a.m)?;
        let saturated = is_saturated(&report, |m, t| source.complexity(a.kind, n, t, m))?;
        rows.push(ComplexityRow { report, saturated });
    }
    render_complexity(cli, a, rows)
}

enum Source {
    Perm(PermutationView),
    Word(InfiniteWord),
}

impl Source {
    fn complexity(&self, kind: Kind, n: usize, t: usize, m: usize) -> permlab::Result<ComplexityReport> {
        match (self, kind) {
            (Source::Perm(p), Kind::Factor) => factor_complexity(p, n, m),
            (Source::Perm(p), Kind::Maxpattern) => max_pattern_complexity(p, n, t, m),
            (Source::Word(w), Kind::Factor) => word_factor_complexity(w, n, m),
            (Source::Word(w), Kind::Maxpattern) => word_max_pattern_complexity(w, n, t, m),
        }
    }
}

fn render_complexity(cli: &Cli, a: &ComplexityArgs, rows: Vec<ComplexityRow>) -> Result<String, Failure> {
    let kind = match a.kind {
        Kind::Factor => "factor",
        Kind::Maxpattern => "maxpattern",
    };
    match cli.format {
        Format::Csv => {
            let mut out = String::from("n,value,bound,M,T\n");
            for row in rows {
                let t_col = row
                    .report
                    .windows
                    .as_ref()
                    .map(|w| w.max_spread.to_string())
                    .unwrap_or_default();
                let bound = if row.saturated { "=" } else { ">=" };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.report.n, row.report.value, bound, row.report.scan_bound, t_col
                );
            }
            Ok(out)
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.report.n,
                        "value": row.report.value,
                        "bound": if row.saturated { "=" } else { ">=" },
                        "M": row.report.scan_bound,
                        "T": row.report.windows.as_ref().map(|w| w.max_spread),
                        "windows_tried": row.report.windows.as_ref().map(|w| w.tried),
                    })
                })
                .collect();
            Ok(envelope(
                "complexity",
                json!({"source": source_spec(a), "kind": kind, "T": a.t, "M": a.m}),
                items,
            ))
        }
        Format::Human => {
            let mut out = String::new();
            for row in rows {
                let rel = if row.saturated { "=" } else { ">=" };
                let _ = writeln!(
                    out,
                    "p_{kind}({}) {rel} {}   [M={}{}]",
                    row.report.n,
                    row.report.value,
                    row.report.scan_bound,
                    row.report
                        .windows
                        .as_ref()
                        .map(|w| format!(", T={}", w.max_spread))
                        .unwrap_or_default()
                );
            }
            Ok(out)
        }
    }
}

fn source_spec(a: &ComplexityArgs) -> String {
    a.perm.clone().or_else(|| a.word.clone()).unwrap_or_default()
}

fn period_cmd(cli: &Cli, a: &PeriodArgs) -> Result<String, Failure> {
    let p = load_perm(&a.perm)?;
    let found = detect_period(&p, a.m, a.t_max)?;
    Ok(match cli.format {
        Format::Json => envelope(
            "period",
            json!({"perm": a.perm, "M": a.m, "t_max": a.t_max}),
            json!({"period": found}),
        ),
        _ => match found {
            Some(t) => format!("period {t} consistent with the first {} positions\n", a.m),
            None => format!("no period <= {} is consistent with the prefix\n", a.t_max),
        },
    })
}

fn finewilf_cmd(cli: &Cli, c: &FinewilfCmd, budget: u64) -> Result<String, Failure> {
    match c {
        FinewilfCmd::Words { p, q } => {
            if *p == 0 || *q == 0 {
                return Err(Failure::Usage("periods must be positive".into()));
            }
            let g = gcd(*p, *q);
            let settle = p + q - g;
            let at = word_period_classes(settle, &[*p, *q]);
            let below = word_period_classes(settle - 1, &[*p, *q]);
            if !at.is_residues_mod(g) {
                return Err(Failure::Verification(format!(
                    "classes at length {settle} are not the residues mod {g}"
                )));
            }
            Ok(match cli.format {
                Format::Json => envelope(
                    "finewilf-words",
                    json!({"p": p, "q": q}),
                    json!({
                        "gcd": g,
                        "settling_length": settle,
                        "classes_at_bound": at.class_count(),
                        "classes_below": below.class_count(),
                        "tight": below.class_count() > g,
                    }),
                ),
                _ => format!(
                    "p={p} q={q} gcd={g}: {} classes (residues mod {g}) at length {settle}; \
                     {} classes at length {}\n",
                    at.class_count(),
                    below.class_count(),
                    settle - 1
                ),
            })
        }
        FinewilfCmd::Perms { p, q, n: Some(n) } => {
            let report = verify_factor_theorem(*p, *q, *n, budget)?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "finewilf-perms",
                    json!({"p": p, "q": q, "n": n}),
                    json!({
                        "gcd": report.gcd,
                        "factor_bound": report.factor_bound,
                        "patterns_checked": report.patterns_checked,
                    }),
                ),
                _ => format!(
                    "all {} {p},{q}-periodic patterns of length {n} have every factor of \
                     length <= {} {}-periodic\n",
                    report.patterns_checked, report.factor_bound, report.gcd
                ),
            })
        }
        FinewilfCmd::Perms { p, q, n: None } => {
            let report = verify_coprime_theorem(*p, *q, budget)?;
            let witness = report
                .witness_below
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_else(|| "none".into());
            Ok(match cli.format {
                Format::Json => envelope(
                    "finewilf-perms",
                    json!({"p": p, "q": q}),
                    json!({
                        "monotone_only_at": report.monotone_only_at,
                        "witness_below": report.witness_below,
                    }),
                ),
                _ => format!(
                    "monotone-only at length {}; witness at {}: {witness}\n",
                    report.monotone_only_at,
                    report.monotone_only_at - 1
                ),
            })
        }
        FinewilfCmd::Witness { p, q, n } => {
            let witness = find_nongcd_witness(*p, *q, *n, budget)?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "finewilf-witness",
                    json!({"p": p, "q": q, "n": n}),
                    json!({"witness": witness}),
                ),
                _ => match witness {
                    Some(w) => format!("{w}\n"),
                    None => "none\n".to_string(),
                },
            })
        }
    }
}

fn makarov_cmd(cli: &Cli, c: &MakarovCmd) -> Result<String, Failure> {
    let MakarovCmd::Table { max_n } = c;
    let rows = permlab::makarov::table(*max_n)?;
    match cli.format {
        Format::Json => Ok(envelope("makarov-table", json!({"max_n": max_n}), rows)),
        Format::Csv => {
            let mut out = String::from("t,psi,oracle,p\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.t,
                    r.psi,
                    r.oracle.map(|o| o.to_string()).unwrap_or_default(),
                    r.max_complexity
                );
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = String::from(
                "t      psi   oracle        p(t+1)   [reference shape: p(n+1) = 2^n(n-c+O(n*2^(-n/2))), c not computed]\n",
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<4} {:>8} {:>8} {:>13}",
                    r.t,
                    r.psi.to_string(),
                    r.oracle.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
                    r.max_complexity.to_string()
                );
            }
            Ok(out)
        }
    }
}

fn squares_cmd(cli: &Cli, c: &SquaresCmd) -> Result<String, Failure> {
    match c {
        SquaresCmd::Count { max_n } => {
            let counts: Vec<(usize, u64)> = (1..=*max_n)
                .map(|n| count_square_free(n).map(|c| (n, c)))
                .collect::<permlab::Result<_>>()?;
            Ok(match cli.format {
                Format::Json => envelope(
                    "squares-count",
                    json!({"max_n": max_n}),
                    counts
                        .iter()
                        .map(|(n, c)| json!({"n": n, "square_free": c}))
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => {
                    let mut out = String::from("n,square_free\n");
                    for (n, c) in counts {
                        let _ = writeln!(out, "{n},{c}");
                    }
                    out
                }
                Format::Human => {
                    let mut out = String::new();
                    for (n, c) in counts {
                        let _ = writeln!(out, "square-free({n}) = {c}");
                    }
                    out
                }
            })
        }
        SquaresCmd::Check { pattern } => {
            let pat: Pattern = pattern.parse()?;
            let (sq, sf) = (is_square(&pat), is_square_free(&pat));
            Ok(match cli.format {
                Format::Json => envelope(
                    "squares-check",
                    json!({"pattern": pattern}),
                    json!({"square": sq, "square_free": sf}),
                ),
                _ => format!("{pat}: square={sq} square-free={sf}\n"),
            })
        }
    }
}

fn automaton_cmd(cli: &Cli, c: &AutomatonCmd) -> Result<String, Failure> {
    match c {
        AutomatonCmd::Show => Ok(tm_automaton().to_table()),
        AutomatonCmd::Check { file, perm, n } => {
            let aut = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
                    PairAutomaton::from_table(&text)?
                }
                None => tm_automaton(),
            };
            let view = load_perm(perm)?;
            let mismatches = crosscheck(&aut, &view, *n)?;
            if !mismatches.is_empty() {
                return Err(Failure::Verification(format!(
                    "{} mismatching pairs below {n}, first {:?}",
                    mismatches.len(),
                    mismatches[0]
                )));
            }
            Ok(match cli.format {
                Format::Json => envelope(
                    "automaton-check",
                    json!({"perm": perm, "N": n}),
                    json!({"mismatches": 0}),
                ),
                _ => format!("automaton agrees with {perm} on all pairs below {n}\n"),
            })
        }
    }
}

fn plot_cmd(a: &PlotArgs, budget: u64) -> Result<String, Failure> {
    let (ranks, title): (Vec<u32>, String) = if let Some(spec) = &a.perm {
        if a.n == 0 || a.n > 10_000 {
            return Err(Failure::Usage("point count must lie in 1..=10000".into()));
        }
        let p = load_perm(spec)?;
        (p.rank_prefix(a.n)?, spec.clone())
    } else if let Some(pat) = &a.pattern {
        let pat: Pattern = pat.parse()?;
        (pat.ranks().iter().map(|r| r - 1).collect(), format!("pattern {pat}"))
    } else if let Some(w) = &a.witness {
        let parts: Vec<usize> = w
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("bad witness triple {w:?}"))))
            .collect::<Result<_, _>>()?;
        let [p, q, n] = parts[..] else {
            return Err(Failure::Usage("--witness needs p,q,n".into()));
        };
        let pat = find_nongcd_witness(p, q, n, budget)?
            .ok_or_else(|| Failure::Verification(format!("no witness for ({p},{q}) at length {n}")))?;
        (pat.ranks().iter().map(|r| r - 1).collect(), format!("{p},{q}-periodic witness, length {n}"))
    } else {
        return Err(Failure::Usage("plot needs --perm, --pattern or --witness".into()));
    };
    let doc = svg::scatter(&ranks, &title);
    if a.out == "-" {
        Ok(doc)
    } else {
        std::fs::write(&a.out, &doc)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", a.out)))?;
        Ok(format!("wrote {}\n", a.out))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
