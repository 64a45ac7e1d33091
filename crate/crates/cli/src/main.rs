//! `mmx` — exact solvers and empirical minimax/matching checks for 0/1
//! multimatrices and partitioned graphs.
//!
//! Exit codes: 0 success, 1 input error, 2 budget/guard exceeded,
//! 3 a violation verdict was produced (a duality gap, or a Hall
//! condition that disagrees with decomposability).

mod cmd;
mod hunt;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use mmx_core::error::Error;

use crate::hunt::{Claim, HuntSpec, Mode};

#[derive(Parser)]
#[command(
    name = "mmx",
    version,
    about = "Exact multimatrix and multipartite-graph solvers with verifiable certificates",
    after_help = "Exit codes: 0 ok, 1 input error, 2 budget/guard exceeded, 3 violation verdict.\n\
        Instances are cubic (extent k on every axis). To analyze a rectangular\n\
        0/1 matrix, zero-pad it to the square k x k shape first; padding rows\n\
        and columns of zeros changes neither determinantal monomials nor which\n\
        original 1s can be matched or covered together."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed for gen, random scans, and hunts.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Directory for counterexample artifacts (default: counterexamples/).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Vertex-count guard for the graph brute-force solvers (default 14).
    #[arg(long, global = true, value_name = "INT")]
    guard: Option<usize>,

    /// Work budget; the unit depends on the subcommand: expansion terms
    /// for det (default 10^7), count cap for monomial-count (10^6),
    /// instance cells for the cover/matching solvers (4096), tuples for
    /// assign --oracle (10^6), instances for gap-scan (65536).
    #[arg(long, global = true, value_name = "INT")]
    budget: Option<u128>,

    /// Suppress the report; results are still reflected in the exit code.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact multideterminant of a binary instance.
    Det { file: PathBuf },
    /// Least permutation tuple whose support lies on 1-cells.
    MonomialFind { file: PathBuf },
    /// Count of nonzero multideterminantal monomials (capped).
    MonomialCount { file: PathBuf },
    /// Pairwise Hall condition over all ordered part pairs.
    HallCheck { file: PathBuf },
    /// Decomposition into disjoint transversal cliques, if one exists.
    Decompose { file: PathBuf },
    /// Hall condition vs decomposability; exit 3 when they disagree.
    CheckT21 { file: PathBuf },
    /// Minimum number of lines containing all 1s.
    LineCover { file: PathBuf },
    /// Maximum number of 1s with no two on a line.
    LineMatching { file: PathBuf },
    /// Minimum number of r-planes containing all 1s.
    RplaneCover {
        file: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Maximum number of 1s with no two in an r-plane.
    RplaneMatching {
        file: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Cover vs matching duality gap; exit 3 when the gap is positive.
    Gap {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Gap distribution over a family of instances of one shape.
    GapScan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Instances to draw in random mode.
        #[arg(long, default_value_t = 256)]
        count: u64,
    },
    /// Exact axial assignment on a cost instance.
    Assign {
        file: PathBuf,
        /// Force full enumeration instead of branch and bound.
        #[arg(long)]
        oracle: bool,
    },
    /// Maximum matching and minimum vertex cover.
    CoverMatch { file: PathBuf },
    /// Minimum all-pairs separator and maximum disjoint path system.
    Menger { file: PathBuf },
    /// Matching vs cover duality; exit 3 when the gap is positive.
    CheckT43 { file: PathBuf },
    /// Separator vs disjoint-paths duality; exit 3 on a positive gap.
    CheckT51 { file: PathBuf },
    /// Write a seeded random instance to stdout (and --out, if given).
    #[command(subcommand)]
    Gen(GenKind),
    /// Stream random instances through a claim's checker and persist
    /// every violation; exit 3 when anything was found.
    Hunt {
        #[arg(long, value_enum)]
        claim: Claim,
        /// Part count (t21) or dimension count (t41/t42).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Part size (t21) or axis extent (t41/t42).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Free-axis count for t42.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Part sizes for t43/t51, e.g. --parts 1,1,1.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        /// Edge/one density of the generated instances.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Shrink each finding to a locally minimal instance.
        #[arg(long)]
        shrink: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random 0/1 instance.
    Multimatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Random integer-cost instance.
    Costmatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 9)]
        hi: i64,
    },
    /// Random partitioned graph.
    Graph {
        /// Part sizes, e.g. --parts 2,2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Also draw intra-part edges.
        #[arg(long)]
        intra: bool,
    },
}

/// Resolved global flags and per-subcommand budget defaults.
pub struct Limits {
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub guard: usize,
    pub budget: Option<u128>,
    pub quiet: bool,
}

impl Limits {
    pub fn artifact_dir(&self) -> &Path {
        self.out_dir
            .as_deref()
            .unwrap_or_else(|| Path::new("counterexamples"))
    }

    pub fn term_budget(&self) -> u128 {
        self.budget.unwrap_or(10_000_000)
    }

    pub fn count_cap(&self) -> u64 {
        self.budget
            .map(|b| b.min(u64::MAX as u128) as u64)
            .unwrap_or(1_000_000)
    }

    pub fn cell_budget(&self) -> usize {
        self.budget
            .map(|b| b.min(usize::MAX as u128) as usize)
            .unwrap_or(4096)
    }

    pub fn tuple_budget(&self) -> u128 {
        self.budget.unwrap_or(1_000_000)
    }

    pub fn scan_budget(&self) -> u64 {
        self.budget
            .map(|b| b.min(u64::MAX as u128) as u64)
            .unwrap_or(65_536)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let lim = Limits {
        seed: cli.seed.unwrap_or(0),
        out_dir: cli.out,
        guard: cli.guard.unwrap_or(14),
        budget: cli.budget,
        quiet: cli.quiet,
    };
    match run(cli.command, &lim) {
        Ok((text, finding)) => {
            if !lim.quiet {
                print!("{text}");
            }
            ExitCode::from(if finding { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("mmx: {e}");
            match e {
                Error::Input(_) | Error::Parse { .. } => ExitCode::from(1),
                Error::Budget { .. } => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command, lim: &Limits) -> mmx_core::Result<(String, bool)> {
    match command {
        Command::Det { file } => cmd::det(&file, lim),
        Command::MonomialFind { file } => cmd::monomial_find(&file),
        Command::MonomialCount { file } => cmd::monomial_count(&file, lim),
        Command::HallCheck { file } => cmd::hall_check(&file, lim),
        Command::Decompose { file } => cmd::decompose(&file, lim),
        Command::CheckT21 { file } => cmd::check_t21(&file, lim),
        Command::LineCover { file } => cmd::line_cover(&file, lim),
        Command::LineMatching { file } => cmd::line_matching(&file, lim),
        Command::RplaneCover { file, r } => cmd::rplane_cover(&file, r, lim),
        Command::RplaneMatching { file, r } => cmd::rplane_matching(&file, r, lim),
        Command::Gap { file, r } => cmd::gap(&file, r, lim),
        Command::GapScan {
            n,
            k,
            r,
            mode,
            count,
        } => hunt::gap_scan_cmd(n, k, r, mode, count, lim),
        Command::Assign { file, oracle } => cmd::assign(&file, oracle, lim),
        Command::CoverMatch { file } => cmd::cover_match(&file, lim),
        Command::Menger { file } => cmd::menger(&file, lim),
        Command::CheckT43 { file } => cmd::check_t43(&file, lim),
        Command::CheckT51 { file } => cmd::check_t51(&file, lim),
        Command::Gen(kind) => match kind {
            GenKind::Multimatrix { n, k, density } => hunt::gen_multimatrix(n, k, density, lim),
            GenKind::Costmatrix { n, k, lo, hi } => hunt::gen_costmatrix(n, k, lo, hi, lim),
            GenKind::Graph {
                parts,
                density,
                intra,
            } => hunt::gen_graph(&parts, density, intra, lim),
        },
        Command::Hunt {
            claim,
            n,
            k,
            r,
            parts,
            density,
            count,
            shrink,
        } => hunt::hunt_cmd(
            &HuntSpec {
                claim,
                n,
                k,
                r,
                parts,
                density,
                count,
                shrink,
            },
            lim,
        ),
    }
}
