use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mjvote::io::{
    ballots_to_csv, bracket_ballots_to_csv, parse_ballots, parse_bracket_ballots, render_bracket,
    render_result, ElectionConfig, OutputFormat, ValidationReport,
};
use mjvote::properties::{check_consistency, search_no_show, search_no_show_removal};
use mjvote::suite::{run_suite, SuiteOptions};
use mjvote::{bracket_elect, fixtures, rank, Error, Method, Result};

/// Majority Judgement and three-grade approval tallying.
#[derive(Parser)]
#[command(name = "mjvote", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Mj,
    Mj3,
    Approval3,
    Bracket,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Mj => Method::Mj,
            MethodArg::Mj3 => Method::Mj3,
            MethodArg::Approval3 => Method::Approval3,
            MethodArg::Bracket => Method::Bracket,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    GreaterSmalltown,
    SchoolOuting,
    SchoolOutingThreeGrade,
    ConsistencyCounterexample,
    BracketMixed,
    BracketBias,
}

#[derive(Subcommand)]
enum Command {
    /// Tally a ballot file.
    Tally {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        ballots: PathBuf,
        /// Overrides the method in the config.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check behavioural properties, on a ballot file or on the built-in suite.
    Check {
        #[arg(long, requires = "ballots")]
        config: Option<PathBuf>,
        #[arg(long, requires = "config")]
        ballots: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Seed for the random sweeps of the built-in suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest ballot count for partition checks.
        #[arg(long)]
        limit: Option<usize>,
        /// Number of random profiles in the consistency sweep.
        #[arg(long, default_value_t = 1000)]
        profiles: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Tally a built-in election, optionally writing its config and ballots.
    Demo {
        #[arg(long, value_enum)]
        fixture: Fixture,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Tally {
            config,
            ballots,
            method,
            format,
        } => tally(&config, &ballots, method.map(Into::into), format.into()),
        Command::Check {
            config: Some(config),
            ballots: Some(ballots),
            method,
            limit,
            format,
            ..
        } => check_file(&config, &ballots, method.map(Into::into), limit, format.into()),
        Command::Check {
            seed,
            limit,
            profiles,
            format,
            ..
        } => {
            let mut opts = SuiteOptions {
                seed,
                profiles,
                ..SuiteOptions::default()
            };
            if let Some(l) = limit {
                opts.partition_limit = l;
            }
            check_suite(opts, format.into())
        }
        Command::Demo {
            fixture,
            out,
            format,
        } => demo(fixture, out.as_deref(), format.into()),
    }
}

fn load_config(path: &Path, method: Option<Method>) -> Result<ElectionConfig> {
    let config = ElectionConfig::load(path)?;
    match method {
        Some(m) => config.with_method(m),
        None => Ok(config),
    }
}

fn report_validation(report: &ValidationReport) {
    if !report.is_ok() || !report.warnings.is_empty() || report.empty_input {
        eprint!("{}", report.summary());
    }
}

fn tally(config: &Path, ballots: &Path, method: Option<Method>, format: OutputFormat) -> Result<u8> {
    let config = load_config(config, method)?;
    if config.method == Method::Bracket {
        let (ballots, report) = parse_bracket_ballots(fs::File::open(ballots)?, &config)?;
        report_validation(&report);
        if !report.is_ok() {
            return Ok(1);
        }
        let result = bracket_elect(&config.candidates, &ballots)?;
        print!("{}", render_bracket(&result, format)?);
        return Ok(0);
    }
    let (ballots, report) = parse_ballots(ballots, &config)?;
    report_validation(&report);
    if !report.is_ok() {
        return Ok(1);
    }
    let profile = mjvote::model::build_profiles(&config.scale()?, &config.candidates, &ballots)?;
    let mut result = rank(config.method, &profile)?;
    if !config.options.report_ties {
        result.tie_groups.clear();
    }
    print!("{}", render_result(&result, format)?);
    Ok(0)
}

fn check_file(
    config: &Path,
    ballots: &Path,
    method: Option<Method>,
    limit: Option<usize>,
    format: OutputFormat,
) -> Result<u8> {
    let config = load_config(config, method)?;
    if config.method == Method::Bracket {
        return Err(Error::Config("property checks apply to grade ballots only".into()));
    }
    let (ballots, report) = parse_ballots(ballots, &config)?;
    report_validation(&report);
    if !report.is_ok() {
        return Ok(1);
    }
    let election = mjvote::Election {
        scale: config.scale()?,
        candidates: config.candidates.clone(),
        ballots,
    };
    let limit = limit.unwrap_or(config.options.partition_limit);

    let consistency = if config.method == Method::Mj3 || election.scale.len() == 3 {
        match check_consistency(&election, limit) {
            Ok(r) => Some(r),
            Err(Error::LimitExceeded { size, limit }) => {
                eprintln!(
                    "consistency skipped: {size} ballots exceed the partition limit of {limit}; \
                     use the built-in random sweep (check without --ballots) instead"
                );
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mut no_show = search_no_show_removal(&election, config.method)?;
    no_show.extend(search_no_show(&election.profile()?, config.method)?);

    let violated = consistency.as_ref().is_some_and(|r| !r.holds()) || !no_show.is_empty();
    match format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "method": config.method,
                "consistency": consistency,
                "no_show": no_show,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        _ => {
            if let Some(r) = &consistency {
                println!(
                    "consistency: {} splits, {} meet the premise, {} violations",
                    r.n_partitions_checked,
                    r.n_premise_satisfied,
                    r.violations.len()
                );
                for v in &r.violations {
                    println!(
                        "  split {:#b}: {} wins both parts ({:?}, {:?}) but the overall winner is {}",
                        v.partition,
                        v.candidate,
                        v.score_part1,
                        v.score_part2,
                        v.overall_winner.as_ref().map_or("nobody", |w| w.as_str())
                    );
                }
            }
            println!("no-show: {} counterexamples", no_show.len());
            for c in &no_show {
                println!(
                    "  {:?} ballot {:?}: {} overtaken by {}",
                    c.mode, c.ballot, c.favoured, c.overtaken_by
                );
            }
        }
    }
    Ok(if violated { 3 } else { 0 })
}

fn check_suite(opts: SuiteOptions, format: OutputFormat) -> Result<u8> {
    let outcomes = run_suite(opts)?;
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&outcomes)?),
        _ => {
            for o in &outcomes {
                let tag = if o.holds { "ok" } else { "VIOLATED" };
                println!("[{tag}] {}: {}", o.name, o.detail);
            }
        }
    }
    Ok(if outcomes.iter().all(|o| o.holds) { 0 } else { 3 })
}

fn demo(fixture: Fixture, out: Option<&Path>, format: OutputFormat) -> Result<u8> {
    let (config, ballots_csv, rendered) = match fixture {
        Fixture::BracketMixed | Fixture::BracketBias => {
            let (candidates, ballots) = match fixture {
                Fixture::BracketMixed => fixtures::bracket_mixed(),
                _ => {
                    let (c, b, _) = fixtures::bracket_bias();
                    (c, b)
                }
            };
            let result = bracket_elect(&candidates, &ballots)?;
            (
                ElectionConfig::new(Method::Bracket, None, candidates),
                bracket_ballots_to_csv(&ballots)?,
                render_bracket(&result, format)?,
            )
        }
        _ => {
            let (method, election) = match fixture {
                Fixture::GreaterSmalltown => (Method::Approval3, fixtures::greater_smalltown()),
                Fixture::SchoolOuting => (Method::Mj, fixtures::school_outing()),
                Fixture::SchoolOutingThreeGrade => (Method::Mj3, fixtures::school_outing_three_grade()),
                _ => (Method::Mj3, fixtures::consistency_counterexample()),
            };
            let result = rank(method, &election.profile()?)?;
            (
                ElectionConfig::new(method, Some(election.scale.clone()), election.candidates.clone()),
                ballots_to_csv(&election.ballots, &election.candidates)?,
                render_result(&result, format)?,
            )
        }
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("config.json"), config.to_json()? + "\n")?;
        fs::write(dir.join("ballots.csv"), ballots_csv)?;
    }
    print!("{rendered}");
    Ok(0)
}
