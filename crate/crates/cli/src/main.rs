use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ordim::dimension::dimension;
use ordim::distinguish::{make_distinguishing, separate_endpoints};
use ordim::poset::{is_realizer, Poset, Realizer};
use ordim::realizers::{realize_with, Construction};
use ordim::rep::{IntervalRepresentation, LengthConstraint};
use ordim::search::{dimension_survey, verify_bound, SearchSpace, SurveyOptions};
use ordim::{Error, Rational};

/// Inspect, realize, and search interval representations of finite orders.
///
/// Files use the plain text formats of the library: "poset v1", "rep v1",
/// and "realizer v1". All numbers are exact rationals like 3/2.
#[derive(Parser)]
#[command(name = "ordim", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report what class a poset or representation file falls into.
    Recognize {
        /// Poset or representation file; the header line decides which.
        file: PathBuf,
        /// Exit 1 when the input is not an interval order.
        #[arg(long)]
        require_interval: bool,
    },
    /// Print the order dimension of a poset file.
    Dim {
        file: PathBuf,
        /// Give up (exit 1) if the dimension exceeds this.
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
    /// Build a small realizer for a representation file.
    Realize {
        file: PathBuf,
        /// Construction to use: 01, two, multi, one-odd, c2, or range.
        #[arg(long)]
        class: String,
        /// Length ceiling, required with --class range.
        #[arg(long)]
        t: Option<String>,
        /// Apply the construction directly, skipping twin collapsing and
        /// endpoint separation.
        #[arg(long)]
        no_preprocess: bool,
    },
    /// Rewrite a representation so all endpoints are distinct.
    Distinguish {
        file: PathBuf,
        /// Length class the input must satisfy, e.g. "{0,1}" or "[1,2]".
        #[arg(long)]
        class: Option<String>,
    },
    /// Check that a realizer file realizes a poset file.
    Verify { poset: PathBuf, realizer: PathBuf },
    /// Survey dimensions over a grid space, or verify a construction on it.
    Search {
        /// Number of intervals.
        #[arg(long)]
        n: usize,
        /// Endpoints are multiples of 1/GRID.
        #[arg(long, default_value_t = 2)]
        grid: i64,
        /// Allowed lengths, e.g. "{1}" or "[1,2]".
        #[arg(long)]
        class: String,
        /// Dimension cap for the survey oracle.
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Record finished blocks here and resume from it if present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Patterns per checkpoint block.
        #[arg(long, default_value_t = 32)]
        block_size: usize,
        /// Stop after this many blocks, counting resumed ones.
        #[arg(long)]
        stop_after: Option<usize>,
        /// Verify this construction over the space instead of surveying.
        #[arg(long)]
        verify: Option<String>,
        /// Length ceiling, required with --verify range.
        #[arg(long)]
        t: Option<String>,
    },
}

/// Failure with the exit code it maps to: 1 for a property that does not
/// hold or a class violation, 2 for input that cannot be read or parsed.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn fail2(msg: String) -> Failure {
    Failure { code: 2, msg }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail2(format!("{}: {}", path.display(), e)))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_construction(class: &str, t: Option<&str>) -> Result<Construction, Failure> {
    match class {
        "01" => Ok(Construction::ZeroOne),
        "two" => Ok(Construction::TwoLengths),
        "multi" => Ok(Construction::MultiLengths),
        "one-odd" => Ok(Construction::OneOdd),
        "c2" => Ok(Construction::CTwo),
        "range" => {
            let t = t.ok_or_else(|| fail2("--t is required with --class range".into()))?;
            Ok(Construction::Range(Rational::parse(t)?))
        }
        other => Err(fail2(format!(
            "unknown class {:?}; expected 01, two, multi, one-odd, c2, or range",
            other
        ))),
    }
}

fn cmd_recognize(file: &PathBuf, require_interval: bool) -> Result<u8, Failure> {
    let text = read(file)?;
    let header = text.lines().next().unwrap_or("").trim();
    let p;
    if header == "rep v1" {
        let rep = IntervalRepresentation::parse_text(&text)?;
        p = rep.poset_of();
        println!("twin-free: {}", yn(rep.is_twin_free()));
        println!("distinguishing: {}", yn(rep.is_distinguishing()));
        println!("induced:");
        for line in p.to_text().lines() {
            println!("  {}", line);
        }
    } else {
        p = Poset::parse_text(&text)?;
    }
    let two_two = p.find_two_plus_two();
    match &two_two {
        Some(w) => println!(
            "interval order: no; witness: {} {} {} {}",
            w[0], w[1], w[2], w[3]
        ),
        None => println!("interval order: yes"),
    }
    match two_two.or_else(|| p.find_three_plus_one()) {
        Some(w) => println!(
            "semiorder: no; witness: {} {} {} {}",
            w[0], w[1], w[2], w[3]
        ),
        None => println!("semiorder: yes"),
    }
    if require_interval && !p.is_interval_order() {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_dim(file: &PathBuf, max_k: usize) -> Result<u8, Failure> {
    let p = Poset::parse_text(&read(file)?)?;
    match dimension(&p, max_k) {
        Ok(d) => {
            println!("{}", d);
            Ok(0)
        }
        Err(e @ Error::ExceedsCap { .. }) => {
            eprintln!("error: {}", e);
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_realize(
    file: &PathBuf,
    class: &str,
    t: Option<&str>,
    no_preprocess: bool,
) -> Result<u8, Failure> {
    let construction = parse_construction(class, t)?;
    let rep = IntervalRepresentation::parse_text(&read(file)?)?;
    let realizer = if no_preprocess {
        construction.apply(&rep)?
    } else {
        realize_with(&rep, &construction)?
    };
    // Belt and braces: never emit a family that fails verification.
    if !is_realizer(&rep.poset_of(), realizer.extensions())? {
        return Err(Failure {
            code: 1,
            msg: "construction produced a non-realizer".into(),
        });
    }
    eprintln!(
        "size {} bound {}",
        realizer.extensions().len(),
        construction.bound(&rep)
    );
    print!("{}", realizer.to_text());
    Ok(0)
}

fn cmd_distinguish(file: &PathBuf, class: Option<&str>) -> Result<u8, Failure> {
    let rep = IntervalRepresentation::parse_text(&read(file)?)?;
    let out = match class {
        Some(c) => make_distinguishing(&rep, &LengthConstraint::parse(c)?)?,
        None => separate_endpoints(&rep)?,
    };
    print!("{}", out.to_text());
    Ok(0)
}

fn cmd_verify(poset: &PathBuf, realizer: &PathBuf) -> Result<u8, Failure> {
    let p = Poset::parse_text(&read(poset)?)?;
    let r = Realizer::parse_text(&read(realizer)?)?;
    let ok = is_realizer(&p, r.extensions())?;
    println!("realizer: {}", yn(ok));
    Ok(if ok { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    grid: i64,
    class: &str,
    max_k: usize,
    checkpoint: Option<PathBuf>,
    block_size: usize,
    stop_after: Option<usize>,
    verify: Option<&str>,
    t: Option<&str>,
) -> Result<u8, Failure> {
    let space = SearchSpace::new(n, LengthConstraint::parse(class)?, grid)?;
    let start = Instant::now();
    let report = match verify {
        Some(name) => verify_bound(&space, &parse_construction(name, t)?)?,
        None => dimension_survey(
            &space,
            max_k,
            &SurveyOptions {
                block_size,
                checkpoint,
                stop_after_blocks: stop_after,
            },
        )?,
    };
    print!("{}", report.stable_text());
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    Ok(if report.violations.is_empty() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Recognize {
            file,
            require_interval,
        } => cmd_recognize(file, *require_interval),
        Command::Dim { file, max_k } => cmd_dim(file, *max_k),
        Command::Realize {
            file,
            class,
            t,
            no_preprocess,
        } => cmd_realize(file, class, t.as_deref(), *no_preprocess),
        Command::Distinguish { file, class } => cmd_distinguish(file, class.as_deref()),
        Command::Verify { poset, realizer } => cmd_verify(poset, realizer),
        Command::Search {
            n,
            grid,
            class,
            max_k,
            checkpoint,
            block_size,
            stop_after,
            verify,
            t,
        } => cmd_search(
            *n,
            *grid,
            class,
            *max_k,
            checkpoint.clone(),
            *block_size,
            *stop_after,
            verify.as_deref(),
            t.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
