use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use shipat::avoidance::{count_avoiders_brute_with, oeis_line, BRUTE_MAX_SIZE};
use shipat::covers::{classify_lower, upper_count};
use shipat::poset::DEFAULT_MAX_NODES;
use shipat::{
    count_avoiders_closed, count_lower_covers, export_dot, hasse, lower_covers, pattern,
    upper_covers, zeta, AvoidanceError, Containment, DyckPath, PatternFamily, ShiTableau,
};

mod verify;

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "shipat",
    version,
    about = "Pattern order on Shi tableaux and Dyck paths"
)]
struct Cli {
    /// Worker threads for brute-force enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower or upper covers of a path.
    Covers {
        #[arg(long, value_parser = parse_word)]
        path: DyckPath,
        #[arg(long, value_enum, default_value_t = Direction::Lower)]
        dir: Direction,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Avoider counts of a pattern family for tableau sizes 0..=n-max.
    CountAvoiders {
        #[arg(long, value_parser = parse_family)]
        family: PatternFamily,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Print the counts as one space-separated line instead of CSV.
        #[arg(long)]
        oeis: bool,
    },
    /// Image of a path under the zeta map.
    Zeta {
        #[arg(long, value_parser = parse_word)]
        path: DyckPath,
    },
    /// Cover graph of all paths up to a semilength.
    Poset {
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Refuse graphs with more nodes than this.
        #[arg(long, env = "SHIPAT_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
    },
    /// Region inequalities of a tableau given by its area vector.
    Region {
        #[arg(long, value_parser = parse_tableau)]
        area: ShiTableau,
    },
    /// Cross-check closed forms and characterizations against brute force.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Suite {
    Core,
    Covers,
    Avoidance,
    All,
}

fn parse_word(s: &str) -> Result<DyckPath, String> {
    s.parse().map_err(|e: shipat::ParseError| e.to_string())
}

fn parse_family(s: &str) -> Result<PatternFamily, String> {
    s.parse().map_err(|e: shipat::AvoidanceError| e.to_string())
}

fn parse_tableau(s: &str) -> Result<ShiTableau, String> {
    shipat::parse_area(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = io::BufWriter::new(io::stdout().lock());
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(EXIT_CHECK);
    }
    ExitCode::from(code)
}

type Outcome = Result<u8, Box<dyn std::error::Error>>;

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Covers { path, dir, method } => covers(&path, dir, method, out),
        Command::CountAvoiders {
            family,
            k,
            n_max,
            method,
            oeis,
        } => count_avoiders(family, k as usize, n_max, method, oeis, out),
        Command::Zeta { path } => {
            writeln!(out, "{}", zeta(&path))?;
            Ok(0)
        }
        Command::Poset {
            max_size,
            format: Format::Dot,
            max_nodes,
        } => {
            let graph = hasse(max_size, max_nodes)?;
            out.write_all(export_dot(&graph).as_bytes())?;
            Ok(0)
        }
        Command::Region { area } => {
            for ineq in area.region_inequalities() {
                writeln!(out, "{ineq}")?;
            }
            Ok(0)
        }
        Command::Verify { suite, n_max } => {
            let passed = verify::run(suite, n_max, out)?;
            Ok(if passed { 0 } else { EXIT_CHECK })
        }
    }
}

fn covers(path: &DyckPath, dir: Direction, method: Method, out: &mut impl Write) -> Outcome {
    let brute = match dir {
        Direction::Lower => lower_covers(path),
        Direction::Upper => upper_covers(path),
    };
    let (closed, branch) = match dir {
        Direction::Lower => (count_lower_covers(path), classify_lower(path).to_string()),
        Direction::Upper => {
            let c = upper_count(path);
            let tag = if c.fallback {
                format!("{} (brute fallback)", c.branch)
            } else {
                c.branch.to_string()
            };
            (c.value, tag)
        }
    };
    if method == Method::Brute {
        for q in &brute {
            writeln!(out, "{q}")?;
        }
    }
    match method {
        Method::Brute => writeln!(out, "count {}", brute.len())?,
        Method::Closed => writeln!(out, "count {closed}\nbranch {branch}")?,
        Method::Both => {
            let verdict = if closed == brute.len() {
                "AGREE"
            } else {
                "DISAGREE"
            };
            writeln!(
                out,
                "brute {}\nclosed {closed}\nbranch {branch}\n{verdict}",
                brute.len()
            )?;
            if closed != brute.len() {
                return Ok(EXIT_DISAGREE);
            }
        }
    }
    Ok(0)
}

fn count_avoiders(
    family: PatternFamily,
    k: usize,
    n_max: usize,
    method: Method,
    oeis: bool,
    out: &mut impl Write,
) -> Outcome {
    if method != Method::Closed && n_max > BRUTE_MAX_SIZE {
        return Err(AvoidanceError::ResourceLimit {
            requested: n_max,
            limit: BRUTE_MAX_SIZE,
        }
        .into());
    }
    let cache = Containment::new();
    let pat = pattern(family, k);
    let mut rows: Vec<(BigUint, Option<u64>)> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let brute = match method {
            Method::Closed => None,
            _ => Some(count_avoiders_brute_with(&cache, &pat, n, BRUTE_MAX_SIZE)?),
        };
        let count = match (method, brute) {
            (Method::Brute, Some(b)) => BigUint::from(b),
            _ => count_avoiders_closed(family, k, n),
        };
        rows.push((count, brute));
    }
    let disagree = method == Method::Both
        && rows
            .iter()
            .any(|(c, b)| b.map(BigUint::from).as_ref() != Some(c));
    if oeis {
        let terms: Vec<&BigUint> = rows.iter().map(|(c, _)| c).collect();
        writeln!(out, "{}", oeis_line(&terms))?;
    } else if method == Method::Both {
        writeln!(out, "n,count,count_brute,agree")?;
        for (n, (c, b)) in rows.iter().enumerate() {
            let b = b.expect("brute count computed");
            let verdict = if BigUint::from(b) == *c {
                "AGREE"
            } else {
                "DISAGREE"
            };
            writeln!(out, "{n},{c},{b},{verdict}")?;
        }
    } else {
        writeln!(out, "n,count")?;
        for (n, (c, _)) in rows.iter().enumerate() {
            writeln!(out, "{n},{c}")?;
        }
    }
    Ok(if disagree { EXIT_DISAGREE } else { 0 })
}
