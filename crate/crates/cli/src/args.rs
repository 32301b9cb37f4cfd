use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hdepth::IdentityId;

#[derive(Parser, Debug)]
#[command(
    name = "hdepth",
    version,
    about = "Exact Hilbert series and Hilbert depth of squarefree Veronese ideals and powers of the maximal ideal"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    pub format: OutputFormat,

    /// Suppress the banner line in plain output.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the canonical coarse Hilbert series and its first coefficients.
    Series(SeriesArgs),
    /// Compute the Hilbert depth by scanning the series and compare it with the closed form.
    Depth(IdealArgs),
    /// Run one identity verifier over a parameter range.
    Verify(VerifyArgs),
    /// Sweep an (n, d) or (n, s) grid, one row per cell.
    Table(TableArgs),
    /// Cross-check closed forms against brute-force enumeration.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Veronese,
    MaxPower,
    HatPower,
    GeneratedHatPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    Veronese,
    MaxPower,
}

/// Inclusive range written `lo..hi`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRange {
    pub lo: u32,
    pub hi: u32,
}

impl SweepRange {
    pub fn single(v: u32) -> Self {
        SweepRange { lo: v, hi: v }
    }

    /// Values of this range that fall inside `min..=max`.
    pub fn clipped(&self, min: u32, max: u32) -> impl Iterator<Item = u32> {
        self.lo.max(min)..=self.hi.min(max)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<u32>()
                .map_err(|e| format!("invalid integer `{v}`: {e}"))
        };
        let range = match s.split_once("..") {
            Some((lo, hi)) => SweepRange {
                lo: parse(lo)?,
                hi: parse(hi.strip_prefix('=').unwrap_or(hi))?,
            },
            None => SweepRange::single(parse(s)?),
        };
        if range.lo < 1 || range.lo > range.hi {
            return Err(format!("range `{s}` must satisfy 1 <= lo <= hi"));
        }
        Ok(range)
    }
}

impl fmt::Display for SweepRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Ideal family.
    #[arg(long, value_enum)]
    pub ideal: Family,

    /// Number of variables, a value or an inclusive range `lo..hi`.
    #[arg(long)]
    pub n: SweepRange,

    /// Generator degree of the Veronese ideal (default: all valid values).
    #[arg(long)]
    pub d: Option<SweepRange>,

    /// Power of the maximal ideal (default: 1..n).
    #[arg(long)]
    pub s: Option<SweepRange>,

    /// Cut parameter of the hat families (default: 1..n).
    #[arg(long)]
    pub t: Option<SweepRange>,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub ideal: IdealArgs,

    /// Print coefficients of T^0 through T^upto.
    #[arg(long, default_value_t = 10)]
    pub upto: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity to verify.
    #[arg(value_parser = parse_identity)]
    pub identity: IdentityId,

    /// Range of n; shorthand for --n 1..N.
    #[arg(long, conflicts_with = "n")]
    pub n_max: Option<u32>,

    /// Range of n.
    #[arg(long)]
    pub n: Option<SweepRange>,

    /// Range of d (clipped to 1..n for each n).
    #[arg(long)]
    pub d: Option<SweepRange>,

    /// Truncation order for coefficientwise checks (default: n + 10).
    #[arg(long)]
    pub k_max: Option<u32>,
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse()
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Family to sweep.
    #[arg(long, value_enum)]
    pub family: TableFamily,

    /// Range of n.
    #[arg(long)]
    pub n: SweepRange,

    /// Range of d for the Veronese family (clipped to 1..n).
    #[arg(long, conflicts_with = "s")]
    pub d: Option<SweepRange>,

    /// Range of s for the max-power family (clipped to 1..n).
    #[arg(long)]
    pub s: Option<SweepRange>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub ideal: IdealArgs,

    /// Compare coarse coefficients for k = 0..=k_max (default: n + 10).
    #[arg(long)]
    pub k_max: Option<u32>,

    /// Per-variable exponent bound of the fine-series box.
    #[arg(long = "box", default_value_t = 3)]
    pub bound: u32,
}
