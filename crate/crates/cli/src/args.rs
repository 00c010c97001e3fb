use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::AlphabetSource;

/// Character-level ConvNet text classification.
#[derive(Debug, Parser)]
#[command(name = "charcnn", version)]
pub struct Cli {
    /// Log verbosity on stderr (error, warn, info, debug, trace).
    #[arg(long, global = true, default_value = "info")]
    pub log_level: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a labeled news dump into train/test CSVs and a manifest.
    BuildDataset(BuildDatasetArgs),
    /// Transliterate the texts of a CSV into pinyin.
    Transliterate(TransliterateArgs),
    /// Write an alphabet file (pinyin, or built from CSV texts).
    Alphabet(AlphabetArgs),
    /// Train a model and write a checkpoint.
    Train(TrainCmdArgs),
    /// Evaluate a checkpoint on a CSV.
    Eval(EvalArgs),
    /// Count the parameters of a configuration.
    Params(ParamsArgs),
    /// Train and evaluate a bag-of-words or n-gram baseline.
    Baseline(BaselineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PinyinFormat {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetFormat {
    Chinese,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Both,
}

#[derive(Debug, Args)]
pub struct PinyinDataArgs {
    /// Character-to-pinyin table (defaults to the bundled one).
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Segmentation lexicon (defaults to the bundled one).
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildDatasetArgs {
    /// SGML news dump.
    #[arg(long)]
    pub dump: PathBuf,
    /// `host-prefix<TAB>class` lines (defaults to the built-in Sogou map).
    #[arg(long)]
    pub domain_map: Option<PathBuf>,
    /// Output directory for train.csv, test.csv and manifest.tsv.
    #[arg(long)]
    pub out: PathBuf,
    /// Minimum text length in characters; 0 disables the filter.
    #[arg(long, default_value_t = charcnn_core::corpus::DEFAULT_MIN_LEN)]
    pub min_len: usize,
    #[arg(long, default_value_t = charcnn_core::corpus::DEFAULT_TEST_FRACTION)]
    pub test_frac: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Text encoding of the dump (any WHATWG label, e.g. gb18030).
    #[arg(long, default_value = "utf-8")]
    pub encoding: String,
    /// Keep Chinese text or transliterate it.
    #[arg(long, value_enum, default_value = "chinese")]
    pub format: DatasetFormat,
    #[command(flatten)]
    pub pinyin: PinyinDataArgs,
}

#[derive(Debug, Args)]
pub struct TransliterateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// `both` writes format A and format B for every record.
    #[arg(long, value_enum)]
    pub format: PinyinFormat,
    #[command(flatten)]
    pub pinyin: PinyinDataArgs,
}

#[derive(Debug, Args)]
pub struct AlphabetArgs {
    #[arg(long)]
    pub output: PathBuf,
    /// CSVs whose texts define the alphabet; without any, the pinyin
    /// alphabet is written.
    #[arg(long)]
    pub corpus: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "CNN3-FC2")]
    pub layout: String,
    /// `pinyin` or `file:PATH`.
    #[arg(long, default_value = "pinyin")]
    pub alphabet: AlphabetSource,
    /// Sequence length (1000 for pinyin, 250 for an alphabet file).
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub embed_dim: Option<usize>,
    #[arg(long)]
    pub feature_maps: Option<usize>,
    #[arg(long)]
    pub fc_hidden: Option<usize>,
    #[arg(long)]
    pub dropout: Option<f64>,
    #[arg(long)]
    pub l2: Option<f64>,
    /// Config override `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, default_value_t = 0.001)]
    pub lr: f64,
    #[arg(long, default_value_t = 128)]
    pub batch: usize,
    #[arg(long, default_value_t = 10)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TrainCmdArgs {
    #[arg(long)]
    pub train: PathBuf,
    /// Evaluated after every epoch when given.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Checkpoint path.
    #[arg(long)]
    pub output: PathBuf,
    /// Also write the epoch log here.
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub train_args: TrainArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Overrides the alphabet stored in the checkpoint.
    #[arg(long)]
    pub alphabet: Option<AlphabetSource>,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineMode {
    Bow,
    TfidfBow,
    Ngram,
    TfidfNgram,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long)]
    pub train: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long, value_enum)]
    pub mode: BaselineMode,
    #[arg(long, default_value_t = charcnn_core::baselines::DEFAULT_NGRAM)]
    pub ngram: usize,
    #[arg(long, default_value_t = charcnn_core::baselines::DEFAULT_VOCAB_SIZE)]
    pub vocab_size: usize,
    #[arg(long, default_value_t = 30)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.01)]
    pub lr: f64,
    #[arg(long, default_value_t = charcnn_core::nn::DEFAULT_L2)]
    pub l2: f64,
    #[arg(long, default_value_t = 32)]
    pub batch: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Segmentation lexicon for the bag-of-words modes.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Write the fitted vocabulary here.
    #[arg(long)]
    pub vocab_out: Option<PathBuf>,
}
