use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eed_core::MetricKind;

#[derive(Parser, Debug)]
#[command(
    name = "eed",
    version,
    about = "Extended edit distance over SAX-symbolized time series"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Seed for randomized steps (index vantage selection).
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distance between two symbol strings written as letters a, b, c, ...
    Dist(DistArgs),
    /// SAX words for series given inline or in a UCR file.
    Symbolize(SymbolizeArgs),
    /// Leave-one-out grid search over alphabet size (and λ for EED).
    Tune(TuneArgs),
    /// 1-NN test error with fixed parameters.
    Eval(EvalArgs),
    /// Tune on train, evaluate on test, for every dataset and metric.
    Bench(BenchArgs),
    /// Exact nearest-neighbour and range queries over a file of strings.
    Index(IndexArgs),
}

#[derive(Args, Debug)]
pub struct DistArgs {
    /// ed, eed or lcss.
    #[arg(long, default_value = "eed", value_parser = parse_kind)]
    pub metric: MetricKind,
    /// Frequency factor for EED.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Alphabet size; letters beyond it are rejected.
    #[arg(long, default_value_t = 26)]
    pub alphabet: usize,
    pub first: String,
    pub second: String,
}

#[derive(Args, Debug)]
pub struct SymbolizeArgs {
    /// Alphabet size.
    #[arg(long)]
    pub alpha: usize,
    /// Compression ratio: a series of length n gets ceil(n / ratio) segments.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub ratio: u64,
    /// UCR file whose series are symbolized (labels are carried through).
    #[arg(long, conflicts_with = "values", required_unless_present = "values")]
    pub input: Option<PathBuf>,
    /// A single series as comma-separated values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Alphabet size or inclusive range lo..hi.
    #[arg(long, default_value = "3..10", value_parser = parse_range)]
    pub alpha: RangeInclusive<usize>,
    /// Comma-separated λ grid for EED.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    pub lambdas: Vec<f64>,
    /// Compression ratio (n / segments).
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub ratio: u64,
    /// Keep the λ grid as given even when the error is still falling at its end.
    #[arg(long)]
    pub no_extend: bool,
}

#[derive(Args, Debug)]
pub struct TuneArgs {
    #[arg(long)]
    pub train: PathBuf,
    /// ed, eed, sax, lcss or euclidean.
    #[arg(long, default_value = "eed", value_parser = parse_kind)]
    pub metric: MetricKind,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub train: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long, default_value = "eed", value_parser = parse_kind)]
    pub metric: MetricKind,
    /// Alphabet size (required for symbolic metrics).
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Frequency factor (required for EED).
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub ratio: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Dataset directories holding NAME_TRAIN and NAME_TEST files.
    #[arg(long, num_args = 1.., required_unless_present = "train")]
    pub data: Vec<PathBuf>,
    /// Explicit train file (with --test) instead of --data.
    #[arg(long, requires = "test", conflicts_with = "data")]
    pub train: Option<PathBuf>,
    #[arg(long, requires = "train")]
    pub test: Option<PathBuf>,
    /// Comma-separated metrics.
    #[arg(long, value_delimiter = ',', default_value = "ed,eed,sax", value_parser = parse_kind)]
    pub metrics: Vec<MetricKind>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also write the report to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IndexArgs {
    /// File with one string per line (blank lines ignored).
    #[arg(long)]
    pub items: PathBuf,
    /// ed or eed.
    #[arg(long, default_value = "eed", value_parser = parse_kind)]
    pub metric: MetricKind,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 26)]
    pub alphabet: usize,
    /// Query string; repeatable.
    #[arg(long = "query", required = true)]
    pub queries: Vec<String>,
    /// Also report every item within this distance.
    #[arg(long)]
    pub radius: Option<f64>,
}

fn parse_kind(s: &str) -> Result<MetricKind, String> {
    s.parse().map_err(|e: eed_core::Error| e.to_string())
}

/// `8` or `3..10` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("range {lo}..{hi} is empty"));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..10").unwrap(), 3..=10);
        assert_eq!(parse_range("3..=20").unwrap(), 3..=20);
        assert_eq!(parse_range("8").unwrap(), 8..=8);
        assert!(parse_range("10..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
