use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fc_heaps::{FcElement, Heap, Word};
use fc_heaps_cli::campaign::{self, parse_checks, CampaignConfig, Check};
use fc_heaps_cli::graph_spec::{GraphSource, LoadedGraph};
use fc_heaps_cli::reconstruct;
use fc_heaps_cli::report::HeapInfo;
use fc_heaps_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "fcheaps", version, about = "Heaps of fully commutative elements: boundary maps, TL bases, verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// `family:B5` (A, B, H, F, Ct, K<n>m<m>) or a graph definition file.
    #[arg(long)]
    graph: GraphSource,
}

#[derive(Args)]
struct CampaignArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Treat violations on a graph file as failures (built-in families always are).
    #[arg(long)]
    assert_star_reducible: bool,
    /// Include per-phase wall-clock times in the report.
    #[arg(long)]
    timings: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random words added to the lemma battery.
    #[arg(long, default_value_t = 200)]
    random_words: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Heap, boundary map and acyclicity report for one word.
    HeapInfo {
        #[command(flatten)]
        graph: GraphArg,
        word: String,
        /// Also write the heap as Graphviz DOT.
        #[arg(long)]
        dot: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run verification checks over every FC element up to --max-len.
    Verify {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Comma-separated subset of main_theorem, property_w,
        /// structure_constants, forbidden_configs, lemma_invariants.
        #[arg(long, default_value = "main_theorem,property_w")]
        checks: String,
    },
    /// Forbidden trace scan; same as `verify --checks forbidden_configs`.
    ForbiddenScan {
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Lemma battery; same as `verify --checks lemma_invariants`.
    LemmaInvariants {
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// The canonical basis element c_w in the t-basis.
    Cbasis {
        #[command(flatten)]
        graph: GraphArg,
        word: String,
    },
    /// Write the heap of a word as Graphviz DOT.
    Dot {
        #[command(flatten)]
        graph: GraphArg,
        word: String,
        out: String,
    },
    /// List FC elements by length.
    Enumerate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Search six-vertex bipartite graphs for the unsupported boundary vertex example.
    Reconstruct {
        /// Search log destination.
        #[arg(long, default_value = "data/six-vertex-search.log")]
        log: String,
        /// Definition file for the chosen graph.
        #[arg(long, default_value = "data/six-vertex-graph.txt")]
        graph_out: String,
    },
}

fn write_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

fn parse_word(graph: &LoadedGraph, text: &str) -> Result<Vec<usize>> {
    Ok(Word::parse(text, graph.graph.rank())?.letters().to_vec())
}

fn run_campaign(args: CampaignArgs, checks: std::collections::BTreeSet<Check>) -> Result<u8> {
    let mut cfg = CampaignConfig::new(args.graph.graph.load()?, args.max_len, checks);
    cfg.jobs = args.jobs;
    cfg.assert_star_reducible = args.assert_star_reducible;
    cfg.timings = args.timings;
    cfg.seed = args.seed;
    cfg.random_words = args.random_words;
    let report = campaign::run(&cfg)?;
    match &args.out {
        Some(path) => {
            report.write_to(path)?;
            print!("{}", report.summary());
        }
        None => print!("{}", report.to_json()?),
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::HeapInfo { graph, word, dot, json } => {
            let graph = graph.graph.load()?;
            let heap = Heap::of_word(&graph.graph, &parse_word(&graph, &word)?)?;
            let info = HeapInfo::new(&heap);
            if json {
                println!("{}", serde_json::to_string_pretty(&info)?);
            } else {
                print!("{}", info.render());
            }
            if let Some(path) = dot {
                write_file(&path, &heap.to_dot())?;
            }
        }
        Command::Verify { campaign, checks } => return run_campaign(campaign, parse_checks(&checks)?),
        Command::ForbiddenScan { campaign } => {
            return run_campaign(campaign, [Check::ForbiddenConfigs].into_iter().collect());
        }
        Command::LemmaInvariants { campaign } => {
            return run_campaign(campaign, [Check::LemmaInvariants].into_iter().collect());
        }
        Command::Cbasis { graph, word } => {
            let graph = graph.graph.load()?;
            let w = FcElement::new(&graph.graph, &parse_word(&graph, &word)?)?;
            let alg = fc_heaps::TlAlgebra::new(&graph.graph);
            let detail = alg.c_element_detail(&w)?;
            println!("c[{w}] =");
            print!("{}", detail.element);
            if let Some(s) = detail.s {
                println!("built from c[s{}] c[s{}*{w}]", s + 1, s + 1);
            }
            for (y, mu) in &detail.mu {
                println!("  minus {mu} * c[{y}]");
            }
        }
        Command::Dot { graph, word, out } => {
            let graph = graph.graph.load()?;
            let heap = Heap::of_word(&graph.graph, &parse_word(&graph, &word)?)?;
            write_file(&out, &heap.to_dot())?;
        }
        Command::Enumerate { graph, max_len } => {
            let graph = graph.graph.load()?;
            for (len, level) in fc_heaps::enumerate_fc_levels(&graph.graph, max_len).iter().enumerate() {
                let mut level = level.clone();
                level.sort();
                let words: Vec<String> = level.iter().map(ToString::to_string).collect();
                println!("{len} ({}): {}", words.len(), words.join(" "));
            }
        }
        Command::Reconstruct { log, graph_out } => {
            let outcome = reconstruct::search();
            write_file(&log, &outcome.log())?;
            match outcome.best() {
                Some(best) => {
                    write_file(&graph_out, &best.graph().to_definition())?;
                    print!("{}", best.graph().to_definition());
                }
                None => {
                    println!("no reconstruction found; see {log}");
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
