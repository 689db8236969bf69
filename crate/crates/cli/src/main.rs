use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cinf::automata::{class_members, compact, l_automaton};
use cinf::calculus::{classify, derivative, derivative_chain, extend, extremal_primitives, primitives};
use cinf::dot::{automaton_dot, compact_dot, vca_dot, vuca_dot};
use cinf::forbidden::{build_trie, mf_set};
use cinf::repetitions::{census, default_max_total, kolakoski, repetitivity, shortest_gap, BoundReport};
use cinf::vertical::{build_vuca, canonical_minimal, reconstruct, vertical_repr, vuca_via_compaction};
use cinf::{golden, oracle, Error, Extremal, Frontier, Side, Word};

const SCHEMA: u32 = 1;
const MAX_TOTAL_ENV: &str = "CINF_MAX_TOTAL";

#[derive(Parser)]
#[command(name = "cinf", version, about = "Run-length derivatives and C-infinity words over {1,2}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtremalArg {
    Min,
    Max,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// First derivative, or the whole chain down to ε.
    Derive {
        word: String,
        #[arg(long)]
        all: bool,
    },
    /// C-infinity membership, height, root and extendability.
    Check {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Vertical representation U|V.
    Psi {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// The word with left frontier U and right frontier V.
    Unpsi { left: String, right: String },
    /// The minimal word of which WORD is a simple extension.
    Minimal { word: String },
    /// Maximal simple extension.
    Extend {
        word: String,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// All primitives, or the shortest/longest pair.
    Primitives {
        word: String,
        #[arg(long, value_enum)]
        extremal: Option<ExtremalArg>,
    },
    /// Minimal forbidden words of C^k.
    Mf {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Automaton of C^k, optionally compacted.
    Automaton {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        compact: bool,
        /// Graphviz output ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Ultra-compacted frontier automaton cut at a height.
    Vuca {
        #[arg(long)]
        height: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Derive from the compacted automaton instead of frontiers.
        #[arg(long)]
        via_compaction: bool,
        /// Graphviz output of the frontier-relabeled compacted automaton.
        #[arg(long)]
        vca_dot: Option<PathBuf>,
    },
    /// Shortest gap z with u z u in C-infinity.
    Gap {
        word: String,
        #[arg(long)]
        max_total: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// I(n), G(n) and the ratios against n^2.72.
    GapStats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Prefix of the Kolakoski word.
    Kolakoski {
        #[arg(long)]
        len: usize,
    },
    /// Squares, cubes and overlaps among short C-infinity words.
    Census {
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Runs every worked example with a known answer.
    PaperExamples {
        #[arg(long)]
        json: bool,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// C-infinity words up to a length.
    Cinf {
        #[arg(long)]
        n: usize,
    },
    /// C^k words up to a length.
    Ck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Minimal forbidden words of C^k from the definition.
    Mf {
        #[arg(long)]
        k: usize,
    },
    /// I(n) and G(n) by exhaustive search.
    Gaps {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSymbol { .. } | Error::InvalidFrontier(_) | Error::EmptyWord => {
                Failure::Usage(e.to_string())
            }
            Error::NotCInfinity { level } => {
                Failure::Domain(format!("not C-infinity (fails at level {})", level + 1))
            }
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn word(s: &str) -> Result<Word, Failure> {
    s.parse::<Word>().map_err(Failure::from)
}

fn frontier(s: &str) -> Result<Frontier, Failure> {
    s.parse::<Frontier>().map_err(Failure::from)
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn print_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&with_schema(v)).expect("serializable"));
}

fn is_stdout(path: &Option<PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

fn emit(path: &PathBuf, content: &str) -> io::Result<()> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(content.as_bytes())
    } else {
        fs::write(path, content)
    }
}

fn max_total_for(u: &Word, flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var(MAX_TOTAL_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_TOTAL_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default_max_total(u.len())),
    }
}

fn side_text(minimal: bool, maximal: bool) -> &'static str {
    match (minimal, maximal) {
        (true, true) => "minimal, maximal",
        (true, false) => "minimal",
        (false, true) => "maximal",
        (false, false) => "neither minimal nor maximal",
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Derive { word: w, all } => {
            let w = word(&w)?;
            if all {
                println!("{}", derivative_chain(&w)?);
            } else {
                println!("{}", derivative(&w)?);
            }
        }
        Command::Check { word: w, json } => {
            let w = word(&w)?;
            let chain = derivative_chain(&w)?;
            let profile = if w.is_empty() { None } else { Some(classify(&w)?) };
            if json {
                print_json(json!({
                    "word": w,
                    "cinf": true,
                    "height": chain.height(),
                    "root": chain.root(),
                    "profile": profile,
                }));
            } else {
                match chain.root() {
                    Some(r) => println!("C-infinity (height {}, root {r})", chain.height()),
                    None => println!("C-infinity (height 0)"),
                }
                if let Some(p) = profile {
                    println!("left: {}", side_text(p.left_minimal, p.left_maximal));
                    println!("right: {}", side_text(p.right_minimal, p.right_maximal));
                    println!("fully extendable: {}", p.fully_ext);
                }
            }
        }
        Command::Psi { word: w, json } => {
            let w = word(&w)?;
            let repr = vertical_repr(&w)?;
            if json {
                print_json(json!({ "word": w, "left": repr.left, "right": repr.right }));
            } else {
                println!("{repr}");
            }
        }
        Command::Unpsi { left, right } => {
            println!("{}", reconstruct(&frontier(&left)?, &frontier(&right)?)?);
        }
        Command::Minimal { word: w } => {
            println!("{}", canonical_minimal(&word(&w)?)?);
        }
        Command::Extend { word: w, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
                SideArg::Both => Side::Both,
            };
            println!("{}", extend(&word(&w)?, side)?);
        }
        Command::Primitives { word: w, extremal } => {
            let w = word(&w)?;
            match extremal {
                Some(mode) => {
                    let mode = match mode {
                        ExtremalArg::Min => Extremal::Min,
                        ExtremalArg::Max => Extremal::Max,
                    };
                    let (a, b) = extremal_primitives(&w, mode)?;
                    println!("{a}\n{b}");
                }
                None => {
                    let mut all: Vec<Word> = primitives(&w)?.into_iter().collect();
                    all.sort_by(|a, b| a.shortlex_cmp(b));
                    for p in all {
                        println!("{p}");
                    }
                }
            }
        }
        Command::Mf { k, format } => {
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let catalog = mf_set(k);
            match format {
                Format::Json => print_json(json!({ "k": k, "strata": catalog.strata() })),
                Format::Text => {
                    for (h, words) in catalog.strata() {
                        println!("# height {h}");
                        for w in words {
                            println!("{w}");
                        }
                    }
                }
            }
        }
        Command::Automaton { k, compact: compacted, dot, json } => {
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let a = l_automaton(&build_trie(&mf_set(k)));
            let summary = !is_stdout(&dot) && !is_stdout(&json);
            if compacted {
                let ca = compact(&a)?;
                if summary {
                    println!("states: {}", ca.len());
                    println!("edges: {}", ca.edges().len());
                    for (h, n) in ca.census() {
                        println!("height {h}: {n}");
                    }
                }
                if let Some(path) = dot {
                    emit(&path, &compact_dot(&ca))?;
                }
                if let Some(path) = json {
                    let states: Vec<Value> = ca
                        .states()
                        .iter()
                        .enumerate()
                        .map(|(i, s)| {
                            json!({
                                "id": i,
                                "minimal_word": s.minimal_word,
                                "maximal_extension": s.maximal_extension,
                                "height": s.height,
                                "root": s.root,
                                "chain": s.chain,
                                "class_sample": class_members(&ca, i, s.maximal_extension.len().min(8)),
                            })
                        })
                        .collect();
                    let doc = with_schema(json!({ "k": k, "states": states, "edges": ca.edges() }));
                    emit(&path, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
                }
            } else {
                if summary {
                    println!("states: {}", a.len());
                    println!("edges: {}", a.edges().count());
                }
                if let Some(path) = dot {
                    emit(&path, &automaton_dot(&a))?;
                }
                if let Some(path) = json {
                    let states: Vec<Value> = (0..a.len())
                        .map(|i| {
                            json!({
                                "id": i,
                                "label": a.label(i),
                                "failure": a.failure(i),
                            })
                        })
                        .collect();
                    let edges: Vec<Value> = a
                        .edges()
                        .map(|(p, x, t)| json!({ "source": p, "letter": x, "target": t.target, "kind": t.kind }))
                        .collect();
                    let doc = with_schema(json!({ "k": k, "states": states, "edges": edges }));
                    emit(&path, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
                }
            }
        }
        Command::Vuca { height, dot, via_compaction, vca_dot: vca } => {
            if height == 0 {
                return Err(Failure::Usage("--height must be at least 1".into()));
            }
            let v = if via_compaction {
                vuca_via_compaction(height)?
            } else {
                build_vuca(height)
            };
            if !is_stdout(&dot) && !is_stdout(&vca) {
                for (u, d, t) in v.edges() {
                    println!("{u} -{d}-> {t}");
                }
            }
            if let Some(path) = dot {
                emit(&path, &vuca_dot(&v))?;
            }
            if let Some(path) = vca {
                emit(&path, &vca_dot(height)?)?;
            }
        }
        Command::Gap { word: w, max_total, json } => {
            let u = word(&w)?;
            let budget = max_total_for(&u, max_total)?;
            let r = shortest_gap(&u, budget)?;
            if json {
                print_json(json!({ "u": r.u, "z": r.z, "gap": r.gap, "total": r.total }));
            } else {
                println!("z = {}", r.z);
                println!("gap = {}", r.gap);
                println!("uzu = {}", r.u.concat(&r.z).concat(&r.u));
            }
        }
        Command::GapStats { n, json } => {
            let table = repetitivity(n)?;
            let bound = BoundReport::from_table(&table);
            if json {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .zip(&bound.rows)
                    .map(|(r, b)| {
                        json!({
                            "n": r.n,
                            "words": r.words,
                            "I": r.min_gap,
                            "G": r.max_gap,
                            "witnesses": { "I": r.min_witness, "G": r.max_witness },
                            "max_total": r.max_total,
                            "ratio": b.ratio,
                        })
                    })
                    .collect();
                print_json(json!({
                    "n_max": n,
                    "rows": rows,
                    "exponent": bound.exponent,
                    "fitted_constant": bound.fitted_constant,
                }));
            } else {
                println!("n\twords\tI\tG\tmax|uzu|\tratio\tI-witness\tG-witness");
                for (r, b) in table.rows.iter().zip(&bound.rows) {
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{:.4}\t{}\t{}",
                        r.n, r.words, r.min_gap, r.max_gap, r.max_total, b.ratio, r.min_witness, r.max_witness
                    );
                }
                println!("fitted constant for n^{}: {:.4}", bound.exponent, bound.fitted_constant);
            }
        }
        Command::Kolakoski { len } => println!("{}", kolakoski(len)),
        Command::Census { max_len, json } => {
            let report = census(max_len);
            if json {
                print_json(serde_json::to_value(&report).expect("serializable"));
            } else {
                println!("words: {}", report.words);
                println!("squares: {}", report.squares);
                println!(
                    "square lengths: {}",
                    report.square_lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
                );
                println!("cubes: {}", report.cubes);
                println!("overlaps: {}", report.overlaps);
                match report.longest_overlap {
                    Some(l) => println!("longest overlap: {l}"),
                    None => println!("longest overlap: none"),
                }
            }
        }
        Command::PaperExamples { json } => {
            let outcomes = golden::run_all();
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            if json {
                let map: serde_json::Map<String, Value> =
                    outcomes.iter().map(|o| (o.id.to_string(), json!(o.pass))).collect();
                print_json(json!({ "results": map, "failed": failed }));
            } else {
                for o in &outcomes {
                    match &o.detail {
                        None => println!("PASS {}", o.id),
                        Some(d) => println!("FAIL {}: {d}", o.id),
                    }
                }
                println!("{} passed, {failed} failed", outcomes.len() - failed);
            }
            if failed > 0 {
                return Err(Failure::Domain(String::new()));
            }
        }
        Command::Oracle(cmd) => match cmd {
            OracleCommand::Cinf { n } => {
                for w in oracle::cinf_cursor(n) {
                    println!("{w}");
                }
            }
            OracleCommand::Ck { k, n } => {
                for w in oracle::enumerate_ck(k, n) {
                    println!("{w}");
                }
            }
            OracleCommand::Mf { k } => {
                if k == 0 {
                    return Err(Failure::Usage("--k must be at least 1".into()));
                }
                for w in oracle::brute_mf(k) {
                    println!("{w}");
                }
            }
            OracleCommand::Gaps { n } => {
                for r in oracle::brute_gap_table(n).rows {
                    println!("{}\t{}\t{}", r.n, r.min_gap, r.max_gap);
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            if !msg.is_empty() {
                println!("{msg}");
            }
            ExitCode::from(1)
        }
    }
}
