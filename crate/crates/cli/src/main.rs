mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hesslab::engine::{CellOptions, Chart, HessenbergModel};
use hesslab::poly::Budget;
use hesslab::report::{
    check_report, run, verify_corpus, Query, QueryDocument, ReportDocument, RunOptions, CORPORA,
};
use hesslab::roots::{Root, System};
use hesslab::weyl::Permutation;
use hesslab::Error;

const EXIT_INPUT: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Parser)]
#[command(name = "hesslab", version, about = "Certify adjoint Hessenberg varieties against Schubert varieties")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Maximum degree reached during Gröbner computations.
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Maximum number of terms in any intermediate polynomial.
    #[arg(long, global = true)]
    budget_terms: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide B(x, H) = X_w. INPUT is a query document or a bare model ("-" reads stdin).
    Equality {
        input: PathBuf,
        /// Target permutation, e.g. 2143; required when INPUT is a bare model.
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum)]
        chart: Option<ChartArg>,
    },
    /// Torus fixed points of B(x, H).
    Profile { input: PathBuf },
    /// Fixed-point count for a nilpotent support in type A.
    Euler {
        input: PathBuf,
        /// Support pairs "i,j;k,l"; defaults to the strictly upper entries of x.
        #[arg(long)]
        support: Option<String>,
    },
    /// Poincaré polynomial of the Schubert variety X_w.
    Poincare { w: String },
    /// Lift a type C Hessenberg space to type A and check it.
    Lift { input: PathBuf },
    /// Highest-weight adjoint variety for the root ε_i − ε_j of sl_n.
    Hw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Count permutations of [n] avoiding a pattern.
    Avoiders {
        n: usize,
        #[arg(long, default_value = "4231")]
        pattern: String,
    },
    /// Run a shipped fixture corpus ("all" runs every corpus).
    VerifyCorpus { name: String },
    /// Re-verify every certificate in an equality report.
    CheckCertificate { report: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChartArg {
    FullRadical,
    Slice,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Chart {
        match c {
            ChartArg::FullRadical => Chart::FullRadical,
            ChartArg::Slice => Chart::Slice,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    Permutation::parse(s)
}

fn parse_support(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once(',').ok_or_else(|| Error::Parse(format!("bad pair {p:?}")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad index {a:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad index {b:?}")))?;
            Ok((a, b))
        })
        .collect()
}

/// Either a full query document or a bare model completed by `make`.
fn load_query(path: &PathBuf, make: impl Fn() -> Result<Option<Query>, Error>) -> Result<QueryDocument, Error> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut doc = if value.get("query").is_some() {
        QueryDocument::parse(&text)?
    } else {
        let model: HessenbergModel = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        let query = make()?.ok_or_else(|| Error::Schema("missing query arguments for a bare model".into()))?;
        QueryDocument { model: Some(model), query, budget: Budget::default(), seed: 0 }
    };
    if let Some(q) = make()? {
        if std::mem::discriminant(&q) != std::mem::discriminant(&doc.query) {
            return Err(Error::Schema("query kind does not match the subcommand".into()));
        }
        if matches!(q, Query::Equality { .. } | Query::Euler { support: Some(_) }) {
            doc.query = q;
        }
    }
    Ok(doc)
}

fn apply_overrides(doc: &mut QueryDocument, cli: &Cli) {
    if let Some(d) = cli.budget_degree {
        doc.budget.max_degree = d;
    }
    if let Some(t) = cli.budget_terms {
        doc.budget.max_terms = t;
    }
    if let Some(s) = cli.seed {
        doc.seed = s;
    }
}

fn emit_report(report: &ReportDocument, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("serializable")),
        Format::Table => print!("{}", render::report_table(report)),
    }
}

fn query_command(cli: &Cli) -> Result<Option<QueryDocument>, Error> {
    let bare = |query: Query| QueryDocument { model: None, query, budget: Budget::default(), seed: 0 };
    let doc = match &cli.command {
        Command::Equality { input, w, chart } => {
            let (w, chart) = (w.clone(), *chart);
            let mut doc = load_query(input, || {
                w.as_deref()
                    .map(|w| Ok(Query::Equality { w: parse_perm(w)?, chart: chart.map(Into::into).unwrap_or_default() }))
                    .transpose()
            })?;
            if let (Query::Equality { chart: c, .. }, Some(ch)) = (&mut doc.query, chart) {
                *c = ch.into();
            }
            doc
        }
        Command::Profile { input } => load_query(input, || Ok(Some(Query::Profile)))?,
        Command::Euler { input, support } => {
            let support = support.as_deref().map(parse_support).transpose()?;
            load_query(input, || Ok(Some(Query::Euler { support: support.clone() })))?
        }
        Command::Lift { input } => load_query(input, || Ok(Some(Query::Lift)))?,
        Command::Poincare { w } => bare(Query::Poincare { w: parse_perm(w)? }),
        Command::Hw { n, i, j } => bare(Query::Hw { gamma: Root::new(System::A, *n, *i, *j)? }),
        Command::Avoiders { n, pattern } => bare(Query::CountAvoiders { n: *n, pattern: parse_perm(pattern)? }),
        Command::VerifyCorpus { .. } | Command::CheckCertificate { .. } => return Ok(None),
    };
    Ok(Some(doc))
}

fn execute(cli: &Cli) -> Result<u8, Error> {
    if let Some(mut doc) = query_command(cli)? {
        apply_overrides(&mut doc, cli);
        let report = run(&doc, RunOptions { timings: cli.timings })?;
        emit_report(&report, cli.format);
        return Ok(report.exit_code() as u8);
    }
    let budget = Budget {
        max_degree: cli.budget_degree.unwrap_or(Budget::default().max_degree),
        max_terms: cli.budget_terms.unwrap_or(Budget::default().max_terms),
    };
    match &cli.command {
        Command::VerifyCorpus { name } => {
            let names: Vec<&str> = if name == "all" { CORPORA.to_vec() } else { vec![name.as_str()] };
            let opts = CellOptions { budget, seed: cli.seed.unwrap_or(0), ..CellOptions::default() };
            let mut all_ok = true;
            let mut summaries = Vec::new();
            for n in names {
                let s = verify_corpus(n, &opts)?;
                all_ok &= s.passed();
                summaries.push(s);
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summaries).expect("serializable")),
                Format::Table => summaries.iter().for_each(|s| print!("{}", render::corpus_table(s))),
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::CheckCertificate { report } => {
            let text = read_input(report)?;
            let doc: ReportDocument = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let summary = check_report(&doc, budget)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary).expect("serializable")),
                Format::Table => print!("{}", render::check_table(&summary)),
            }
            Ok(if summary.ok() { 0 } else { 1 })
        }
        _ => unreachable!("query subcommands handled above"),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("HESSLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
