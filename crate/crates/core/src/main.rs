//! `tunnelkit`: statistics, bijections, corpus dumps, series
//! expansions, and verification suites for Dyck-path combinatorics.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use tunnelkit::config::Caps;
use tunnelkit::dyck::DyckPath;
use tunnelkit::perm::{self, Permutation};
use tunnelkit::series::{brute, gf, TruncatedSeries};
use tunnelkit::stats::{StatProfile, DYCK_CSV_HEADER};
use tunnelkit::verify::{self, Suite, SuiteParams};
use tunnelkit::zigzag;

const LONG_ABOUT: &str = "Exact combinatorics of Dyck paths: per-path statistics, the zigzag \
bijection family with inverses, array-walk bijections to pattern-avoiding permutations, exact \
truncated power series, and verification suites pinning every closed form to brute-force \
enumeration.

Caps and defaults live in one config block; override them with the environment variables \
TUNNELKIT_ENUM_CAP (default 16), TUNNELKIT_PERM_CAP (default 10), TUNNELKIT_ORDER (default 8), \
or with the per-command flags, which win over the environment.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.";

#[derive(Parser)]
#[command(name = "tunnelkit", version, about = "Dyck-path statistics, bijections, and exact series verification", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every statistic of one Dyck word.
    Stats(StatsArgs),
    /// Apply the zigzag map (or its inverse) to a Dyck word.
    Map(MapArgs),
    /// Dump a corpus of objects with their statistics.
    Corpus(CorpusArgs),
    /// Expand a generating function to a truncation order.
    Series(SeriesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct StatsArgs {
    /// Dyck word over u/d (U/D and 1/0 accepted).
    word: String,
    /// Emit JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
    /// Emit a CSV header plus one row.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Args)]
struct MapArgs {
    /// Dyck word over u/d (U/D and 1/0 accepted).
    word: String,
    /// Prefix offset of the map (0 gives the base map).
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Apply the inverse map instead.
    #[arg(long)]
    inverse: bool,
    /// Print the zigzag visit log and the labeled word.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusClass {
    /// Dyck paths of semilength n.
    Dyck,
    /// 321-avoiding permutations of size n.
    S321,
    /// 132-avoiding permutations of size n.
    S132,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct CorpusArgs {
    /// Object size (semilength for paths).
    n: usize,
    /// Which corpus to dump.
    #[arg(long, value_enum, default_value_t = CorpusClass::Dyck)]
    class: CorpusClass,
    /// Output format.
    #[arg(long, value_enum, default_value_t = CorpusFormat::Csv)]
    format: CorpusFormat,
    /// Raise the enumeration cap for this run.
    #[arg(long)]
    cap_override: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    /// Catalan numbers.
    Catalan,
    /// Dyck paths by centered/left/right tunnels and centered
    /// multitunnels (x, u, v, w).
    Gtilde,
    /// Dyck paths by hills, odd rises, even rises, returns (t, u, v, w).
    G,
    /// Offset tunnel classification with y marking the offset
    /// (t, u, v, w, y).
    F,
    /// 132-avoiders by fixed points and excedances (x, v).
    Fpexc132,
    /// 132-avoiders by fixed points, excedances, descents+1 (x, v, p).
    L,
    /// Nonempty paths by hills, boundary hills, rises, and windows
    /// (x, t, s, u, v, q).
    J,
    /// The quadratic's series root behind J (u, v, q).
    K,
}

#[derive(Args)]
struct SeriesArgs {
    /// Which generating function to expand.
    #[arg(value_enum)]
    name: SeriesName,
    /// Truncation order (defaults to TUNNELKIT_ORDER or 8).
    #[arg(long)]
    order: Option<usize>,
    /// Expand by brute-force enumeration instead of the closed form.
    #[arg(long)]
    brute: bool,
    /// Emit the JSON dump instead of the pretty form.
    #[arg(long)]
    json: bool,
    /// Raise the enumeration cap for this run.
    #[arg(long)]
    cap_override: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: theorem3 | theorem6 | lemma1 | lemma5 | bijectivity |
    /// rs | kra | alpha-beta | fp-exc | gf-G | gf-F | gf-L | gf-J | all.
    suite: String,
    /// Override the largest object size the suite sweeps.
    #[arg(long)]
    max_n: Option<usize>,
    /// Override the largest offset (or offset sweep bound) of the suite.
    #[arg(long)]
    max_r: Option<usize>,
    /// Override the series truncation order.
    #[arg(long)]
    order: Option<usize>,
    /// Raise the enumeration cap for this run.
    #[arg(long)]
    cap_override: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Stats(args) => cmd_stats(args),
        Command::Map(args) => cmd_map(args),
        Command::Corpus(args) => cmd_corpus(args, caps),
        Command::Series(args) => cmd_series(args, caps),
        Command::Verify(args) => cmd_verify(args, caps),
    }
}

fn parse_word(word: &str) -> Result<DyckPath, String> {
    DyckPath::parse(word).map_err(|e| e.to_string())
}

fn cmd_stats(args: StatsArgs) -> Result<ExitCode, String> {
    let path = parse_word(&args.word)?;
    let profile = StatProfile::of(&path);
    if args.json {
        let mut value = serde_json::to_value(&profile).map_err(|e| e.to_string())?;
        value["word"] = serde_json::Value::String(path.render());
        println!("{}", serde_json::to_string(&value).map_err(|e| e.to_string())?);
    } else if args.csv {
        println!("{DYCK_CSV_HEADER}");
        println!("{}", profile.csv_row(&path.render()));
    } else {
        println!(
            "word={} n={} h={} peaks={} valleys={} ret={} odr={} er={} ct={} lt={} rt={} cmt={} mu={} oc={} ih={} fh={}",
            path.render(),
            profile.n,
            profile.h,
            profile.peaks,
            profile.valleys,
            profile.ret,
            profile.odr,
            profile.er,
            profile.ct,
            profile.lt,
            profile.rt,
            profile.cmt,
            profile.mu,
            profile.oc,
            profile.ih,
            profile.fh,
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_map(args: MapArgs) -> Result<ExitCode, String> {
    let path = parse_word(&args.word)?;
    if args.inverse {
        let labeled =
            zigzag::build_labeled_word(&path, args.r).map_err(|e| e.to_string())?;
        if args.trace {
            println!("labeled word: {labeled}");
        }
        println!("{}", labeled.to_path().render());
    } else {
        let (image, log) = zigzag::phi_r_traced(&path, args.r).map_err(|e| e.to_string())?;
        if args.trace {
            for event in &log {
                println!(
                    "i={:<3} position={:<3} step={} -> {}",
                    event.index,
                    event.position,
                    match event.step {
                        tunnelkit::Step::Up => 'u',
                        tunnelkit::Step::Down => 'd',
                    },
                    if event.opens { "opens (u)" } else { "closes (d)" },
                );
            }
            let labeled = zigzag::build_labeled_word(&image, args.r)
                .map_err(|e| e.to_string())?;
            println!("labeled word of image: {labeled}");
        }
        println!("{}", image.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(args: CorpusArgs, mut caps: Caps) -> Result<ExitCode, String> {
    if let Some(cap) = args.cap_override {
        caps.enumeration_cap = cap;
        caps.perm_cap = cap;
    }
    match args.class {
        CorpusClass::Dyck => {
            let paths = tunnelkit::dyck::enumerate_paths_capped(args.n, caps.enumeration_cap)
                .map_err(|e| e.to_string())?;
            match args.format {
                CorpusFormat::Csv => {
                    println!("{DYCK_CSV_HEADER}");
                    for d in paths {
                        println!("{}", StatProfile::of(&d).csv_row(&d.render()));
                    }
                }
                CorpusFormat::Json => {
                    for d in paths {
                        let mut value = serde_json::to_value(StatProfile::of(&d))
                            .map_err(|e| e.to_string())?;
                        value["word"] = serde_json::Value::String(d.render());
                        println!("{}", serde_json::to_string(&value).map_err(|e| e.to_string())?);
                    }
                }
            }
        }
        CorpusClass::S321 | CorpusClass::S132 => {
            let pattern = match args.class {
                CorpusClass::S321 => Permutation::parse("321").expect("valid pattern"),
                _ => Permutation::parse("132").expect("valid pattern"),
            };
            let perms =
                perm::avoiders(args.n, &pattern, caps.perm_cap).map_err(|e| e.to_string())?;
            match args.format {
                CorpusFormat::Csv => {
                    println!("{}", perm::PERM_CSV_HEADER);
                    for pi in &perms {
                        println!("{}", perm::stats(pi).csv_row(pi));
                    }
                }
                CorpusFormat::Json => {
                    for pi in &perms {
                        let mut value =
                            serde_json::to_value(perm::stats(pi)).map_err(|e| e.to_string())?;
                        value["perm"] = serde_json::Value::String(pi.render());
                        value["n"] = serde_json::Value::from(pi.len());
                        println!("{}", serde_json::to_string(&value).map_err(|e| e.to_string())?);
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_series(args: SeriesArgs, mut caps: Caps) -> Result<ExitCode, String> {
    if let Some(cap) = args.cap_override {
        caps.enumeration_cap = cap;
        caps.perm_cap = cap;
    }
    let order = args.order.unwrap_or(caps.order);
    let cap = caps.enumeration_cap;
    let series: TruncatedSeries = if args.brute {
        match args.name {
            SeriesName::Catalan => brute::dyck_series(order, cap, |_| {
                tunnelkit::series::Mono::one()
            })
            .map_err(|e| e.to_string())?,
            SeriesName::Gtilde => {
                brute::dyck_series(order, cap, brute::tunnel_profile_mono)
                    .map_err(|e| e.to_string())?
            }
            SeriesName::G => brute::dyck_series(order, cap, brute::hill_profile_mono)
                .map_err(|e| e.to_string())?,
            SeriesName::F => {
                brute::dyck_offset_series(order, cap, brute::region_profile_mono)
                    .map_err(|e| e.to_string())?
            }
            SeriesName::Fpexc132 => {
                let pattern = Permutation::parse("132").expect("valid pattern");
                brute::avoider_series(order, caps.perm_cap, &pattern, false, brute::fp_exc_mono)
                    .map_err(|e| e.to_string())?
            }
            SeriesName::L => {
                let pattern = Permutation::parse("132").expect("valid pattern");
                brute::avoider_series(
                    order,
                    caps.perm_cap,
                    &pattern,
                    false,
                    brute::fp_exc_des_mono,
                )
                .map_err(|e| e.to_string())?
            }
            SeriesName::J | SeriesName::K => {
                return Err("no enumeration route is wired for this series".into());
            }
        }
    } else {
        match args.name {
            SeriesName::Catalan => gf::catalan_series(order),
            SeriesName::Gtilde => gf::tunnel_profile_series(order),
            SeriesName::G => gf::hill_profile_series(order),
            SeriesName::F => gf::region_profile_series(order),
            SeriesName::Fpexc132 => gf::fp_exc_series(order),
            SeriesName::L => gf::fp_exc_des_series(order),
            SeriesName::J => gf::window_series(order),
            SeriesName::K => gf::window_series_root(order).map_err(|e| e.to_string())?,
        }
    };
    if args.json {
        println!("{}", serde_json::to_string(&series.to_json()).map_err(|e| e.to_string())?);
    } else {
        println!("{series}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs, mut caps: Caps) -> Result<ExitCode, String> {
    if let Some(cap) = args.cap_override {
        caps.enumeration_cap = cap;
        caps.perm_cap = cap;
    }
    let suite: Suite = args.suite.parse().map_err(|e: verify::UnknownSuite| e.to_string())?;
    let params = SuiteParams {
        max_n: args.max_n,
        max_r: args.max_r,
        order: args.order,
    };
    let reports = verify::run(suite, params, caps).map_err(|e| e.to_string())?;
    let mut all_passed = true;
    for report in &reports {
        print!("{report}");
        println!("elapsed={}ms", report.elapsed.as_millis());
        all_passed &= report.passed();
    }
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
