//! Argument parsing and validation into a [`CommandPlan`].

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use wordlab_core::counting::Lemma42Interp;
use wordlab_core::identity::{ClaimId, NegIndex, ParamRange};
use wordlab_core::palindromes::DEFAULT_TAIL;
use wordlab_core::source::WordSource;
use wordlab_core::sturmian::{parse_intercept, CFExpansion, QuadraticSlope, Variant};
use wordlab_core::thm51::{DensReading, DiffReading, SumReading, Thm51Config};
use wordlab_core::{Alphabet, Morphism, Quad, RecursiveSpec, Word, DEFAULT_BUDGET};

/// Failure before any output is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// `--help` or `--version`: print to stdout and exit 0.
    Display(String),
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Display(_) => 0,
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Display(s) => f.write_str(s),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Internal(s) => write!(f, "error: {s}"),
        }
    }
}

impl From<wordlab_core::Error> for CliError {
    fn from(e: wordlab_core::Error) -> Self {
        match e {
            wordlab_core::Error::ResourceLimit { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    /// `x,y,series` rows for plotting.
    PlotCsv,
}

#[derive(Parser, Debug)]
#[command(name = "wordlab", version, about = "Exact experiments on Fibonacci, Thue-Morse, Sturmian and related words")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write data to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Largest word the command may materialize, in symbols.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print a prefix of a word.
    Gen(GenArgs),
    /// Exact letter densities of a recursively defined word.
    Dens(DensArgs),
    /// Mean, median, std and correlations of the density series.
    Stats(StatsArgs),
    /// Count table or logarithmic bound table.
    Table(TableArgs),
    /// Thue-Morse counts and bound sweep.
    Tm(TmArgs),
    /// Mechanical and continued-fraction words.
    Sturmian(SturmianArgs),
    /// Palindromic prefixes and the palindrome density estimate.
    Pal(PalArgs),
    /// Evaluate an identity claim over a parameter range.
    Id(IdArgs),
    /// Words m, m^perp, m*, m^perp,* and the density fractions.
    Thm51(Thm51Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum System {
    Fibonacci,
    ThueMorse,
    Y,
    /// Blocks y_2 y_3 ... y_{n-1} (gen only).
    YStarBlocks,
    Recursive,
    Periodic,
    Morphic,
    Word,
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Defaults to fibonacci for word commands and y for count commands.
    #[arg(long, value_enum)]
    system: Option<System>,
    /// Alphabet size for digit words; inferred from the largest digit when absent.
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long)]
    seed0: Option<String>,
    #[arg(long)]
    seed1: Option<String>,
    #[arg(long)]
    period: Option<String>,
    #[arg(long, value_name = "PATH")]
    morphism_file: Option<PathBuf>,
    /// Seed letter of the morphic fixed point.
    #[arg(long, default_value_t = 0)]
    seed: u8,
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    length: Option<usize>,
    /// Block index for `--system y-star-blocks`.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug)]
struct DensArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 12)]
    n_max: u64,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 12)]
    n_max: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Table2,
    Lemma42,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InterpArg {
    A,
    B,
    C,
    All,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Table2)]
    kind: TableKind,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 2)]
    n_lo: u64,
    #[arg(long, default_value_t = 15)]
    n_hi: u64,
    /// Indices for the bound table, e.g. `2,7,12`.
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 7, 12])]
    n: Vec<u64>,
    #[arg(long, value_enum, default_value_t = InterpArg::All)]
    interp: InterpArg,
}

#[derive(Args, Debug)]
struct TmArgs {
    #[arg(long, default_value_t = 1 << 20)]
    n_max: u64,
    /// Report wall-clock time in `elapsed`.
    #[arg(long)]
    timing: bool,
    /// Also compare both decompositions against brute force up to this n.
    #[arg(long)]
    decomposition: Option<u64>,
    /// Exact counts of 0s and 1s among the first N symbols (any size).
    #[arg(long, value_name = "N")]
    count: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Floor,
    Ceil,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["slope", "cf", "search"])))]
struct SturmianArgs {
    /// `surd:p,q,d,r` or `cf:a1,a2,...`
    #[arg(long)]
    slope: Option<String>,
    /// `0`, `p/q`, `surd:p,q,d,r` or `=alpha`.
    #[arg(long, default_value = "0")]
    intercept: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Floor)]
    variant: VariantArg,
    /// Partial quotients for the block construction, e.g. `1,2|3` (after `|` repeats).
    #[arg(long)]
    cf: Option<String>,
    /// Block index for `--cf`.
    #[arg(long, allow_negative_numbers = true)]
    j: Option<i64>,
    /// Test the golden-ratio candidates against a Fibonacci prefix.
    #[arg(long)]
    search: bool,
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args, Debug)]
struct PalArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 100_000)]
    length: usize,
    #[arg(long, default_value_t = DEFAULT_TAIL)]
    tail: usize,
    /// Add the interior and doubled-bound checks.
    #[arg(long)]
    bounds: bool,
    /// Most lengths listed in the output; the full count is always given.
    #[arg(long, default_value_t = 40)]
    list: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NegArg {
    Negafibonacci,
    Absolute,
}

#[derive(Args, Debug)]
struct IdArgs {
    #[arg(long)]
    claim: String,
    /// `name=lo..hi`; bounds may use earlier names, e.g. `k=n+3..n+10`.
    #[arg(long, allow_hyphen_values = true)]
    range: Vec<String>,
    /// `name=value`.
    #[arg(long, allow_hyphen_values = true)]
    param: Vec<String>,
    #[arg(long, value_enum, default_value_t = NegArg::Negafibonacci)]
    neg_index: NegArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DensArg {
    SymbolValue,
    Frequency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SumArg {
    Undefined,
    Concatenate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiffArg {
    MaxRule,
    Pointwise,
}

#[derive(Args, Debug)]
struct Thm51Args {
    #[command(flatten)]
    source: SourceArgs,
    /// Prefix length when the word comes from `--system`.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, value_enum, default_value_t = DensArg::SymbolValue)]
    dens: DensArg,
    /// First 1-based position read by the symbol-value reading.
    #[arg(long, default_value_t = 1)]
    start: usize,
    /// Letter counted by the frequency reading.
    #[arg(long, default_value_t = 1)]
    letter: u8,
    #[arg(long, value_enum, default_value_t = SumArg::Undefined)]
    sum: SumArg,
    #[arg(long, value_enum, default_value_t = DiffArg::MaxRule)]
    diff: DiffArg,
}

/// A fully validated command.
#[derive(Clone, Debug)]
pub struct CommandPlan {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub budget: usize,
}

#[derive(Clone, Debug)]
pub enum Command {
    Gen { source: WordSource, length: usize },
    GenBlocks { spec: RecursiveSpec, n: u64 },
    Dens { name: String, spec: RecursiveSpec, n_max: u64 },
    Stats { name: String, spec: RecursiveSpec, n_max: u64 },
    Table2 { name: String, spec: RecursiveSpec, lo: u64, hi: u64 },
    Lemma42 { ns: Vec<u64>, interps: Vec<Lemma42Interp> },
    Tm { n_max: u64, timing: bool, decomposition: Option<u64>, count: Option<BigUint> },
    Mechanical { slope: QuadraticSlope, intercept: Quad, variant: Variant, length: usize },
    CfWord { cf: CFExpansion, j: Option<i64>, length: Option<usize> },
    SlopeSearch { length: usize },
    Pal { source: WordSource, length: usize, tail: usize, bounds: bool, list: usize },
    Id { claim: ClaimId, ranges: Vec<ParamRange>, neg: NegIndex },
    Thm51 { word: Word, config: Thm51Config },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } | Command::GenBlocks { .. } => "gen",
            Command::Dens { .. } => "dens",
            Command::Stats { .. } => "stats",
            Command::Table2 { .. } | Command::Lemma42 { .. } => "table",
            Command::Tm { .. } => "tm",
            Command::Mechanical { .. } | Command::CfWord { .. } | Command::SlopeSearch { .. } => "sturmian",
            Command::Pal { .. } => "pal",
            Command::Id { .. } => "id",
            Command::Thm51 { .. } => "thm51",
        }
    }

    fn plots(&self) -> bool {
        matches!(self, Command::Dens { .. } | Command::Table2 { .. })
    }
}

/// Parses `argv` (without the program name) into a validated plan.
pub fn parse_args<I, S>(argv: I) -> Result<CommandPlan, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("wordlab")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp
        | clap::error::ErrorKind::DisplayVersion
        | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => CliError::Display(e.to_string()),
        _ => CliError::Usage(e.to_string().trim_end().trim_start_matches("error: ").to_string()),
    })?;
    let command = match cli.command {
        Cmd::Gen(a) => gen_plan(a, cli.budget)?,
        Cmd::Dens(a) => {
            let (name, spec) = recursive_source(&a.source)?;
            Command::Dens { name, spec, n_max: a.n_max }
        }
        Cmd::Stats(a) => {
            let (name, spec) = recursive_source(&a.source)?;
            if spec.alphabet().size() != 3 {
                return Err(usage("stats needs a ternary recursion such as --system y"));
            }
            Command::Stats { name, spec, n_max: a.n_max }
        }
        Cmd::Table(a) => match a.kind {
            TableKind::Table2 => {
                let (name, spec) = recursive_source(&a.source)?;
                if a.n_lo < 2 || a.n_lo > a.n_hi {
                    return Err(usage(format!("--n-lo {} --n-hi {}: need 2 <= n-lo <= n-hi", a.n_lo, a.n_hi)));
                }
                Command::Table2 { name, spec, lo: a.n_lo, hi: a.n_hi }
            }
            TableKind::Lemma42 => {
                if a.source.system.is_some_and(|s| s != System::Y) {
                    return Err(usage("--kind lemma42 is defined for --system y only"));
                }
                if let Some(bad) = a.n.iter().find(|&&n| n < 2) {
                    return Err(usage(format!("--n {bad}: the bound needs n >= 2")));
                }
                let interps = match a.interp {
                    InterpArg::A => vec![Lemma42Interp::A],
                    InterpArg::B => vec![Lemma42Interp::B],
                    InterpArg::C => vec![Lemma42Interp::C],
                    InterpArg::All => Lemma42Interp::ALL.to_vec(),
                };
                Command::Lemma42 { ns: a.n, interps }
            }
        },
        Cmd::Tm(a) => {
            if a.n_max < 1 {
                return Err(usage("--n-max must be at least 1"));
            }
            if let Some(d) = a.decomposition {
                if !(1..=1 << 26).contains(&d) {
                    return Err(usage(format!("--decomposition {d}: need 1..=67108864")));
                }
            }
            let count = a
                .count
                .map(|s| s.parse::<BigUint>().map_err(|_| usage(format!("--count {s:?} is not a nonnegative integer"))))
                .transpose()?;
            Command::Tm { n_max: a.n_max, timing: a.timing, decomposition: a.decomposition, count }
        }
        Cmd::Sturmian(a) => sturmian_plan(a)?,
        Cmd::Pal(a) => {
            if a.tail == 0 {
                return Err(usage("--tail must be at least 1"));
            }
            if a.length < 2 {
                return Err(usage("--length must be at least 2"));
            }
            let source = word_source(&a.source)?;
            Command::Pal { source, length: a.length, tail: a.tail, bounds: a.bounds, list: a.list }
        }
        Cmd::Id(a) => {
            let claim = ClaimId::parse(&a.claim).map_err(|_| {
                let names: Vec<&str> = ClaimId::ALL.iter().map(|c| c.as_str()).collect();
                usage(format!("--claim {:?}: expected one of {}", a.claim, names.join(", ")))
            })?;
            let mut ranges = Vec::new();
            for r in &a.range {
                ranges.push(ParamRange::parse(r).map_err(|e| usage(format!("--range {r:?}: {e}")))?);
            }
            for p in &a.param {
                ranges.push(ParamRange::parse(p).map_err(|e| usage(format!("--param {p:?}: {e}")))?);
            }
            let neg = match a.neg_index {
                NegArg::Negafibonacci => NegIndex::Negafibonacci,
                NegArg::Absolute => NegIndex::Absolute,
            };
            Command::Id { claim, ranges, neg }
        }
        Cmd::Thm51(a) => {
            let word = if a.source.word.is_some() || a.source.system == Some(System::Word) {
                explicit_word(&a.source)?
            } else if let Some(len) = a.length {
                word_source(&a.source)?.prefix(len, cli.budget)?
            } else {
                return Err(usage("thm51 needs --word W, or --system with --length"));
            };
            if word.len() < 3 {
                return Err(usage(format!("m = {word:?} must have length at least 3")));
            }
            let dens = match a.dens {
                DensArg::SymbolValue => DensReading::SymbolValue { start: a.start },
                DensArg::Frequency => DensReading::Frequency { letter: a.letter },
            };
            let sum = match a.sum {
                SumArg::Undefined => SumReading::Undefined,
                SumArg::Concatenate => SumReading::Concatenate,
            };
            let diff = match a.diff {
                DiffArg::MaxRule => DiffReading::MaxRule,
                DiffArg::Pointwise => DiffReading::Pointwise,
            };
            Command::Thm51 { word, config: Thm51Config { dens, sum, diff } }
        }
    };
    if cli.format == Format::PlotCsv && !command.plots() {
        return Err(usage("--format plot-csv is available for dens and table --kind table2 only"));
    }
    Ok(CommandPlan { command, format: cli.format, out: cli.out, budget: cli.budget })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn gen_plan(a: GenArgs, budget: usize) -> Result<Command, CliError> {
    if a.source.system == Some(System::YStarBlocks) {
        let n = a.n.ok_or_else(|| usage("--system y-star-blocks needs --n"))?;
        if a.length.is_some() {
            return Err(usage("--length does not apply to --system y-star-blocks; use --n"));
        }
        return Ok(Command::GenBlocks { spec: RecursiveSpec::y(), n });
    }
    let length = a.length.ok_or_else(|| usage("gen needs --length"))?;
    if length > budget {
        return Err(CliError::Internal(format!("--length {length} exceeds the budget of {budget} symbols")));
    }
    Ok(Command::Gen { source: word_source(&a.source)?, length })
}

fn sturmian_plan(a: SturmianArgs) -> Result<Command, CliError> {
    let variant = match a.variant {
        VariantArg::Floor => Variant::Floor,
        VariantArg::Ceil => Variant::Ceil,
    };
    if let Some(s) = a.slope {
        let slope = QuadraticSlope::parse(&s).map_err(|e| usage(format!("--slope {s:?}: {e}")))?;
        let intercept =
            parse_intercept(&a.intercept, &slope).map_err(|e| usage(format!("--intercept {:?}: {e}", a.intercept)))?;
        let length = a.length.ok_or_else(|| usage("--slope needs --length"))?;
        return Ok(Command::Mechanical { slope, intercept, variant, length });
    }
    if let Some(s) = a.cf {
        let cf = CFExpansion::parse(s.strip_prefix("cf:").unwrap_or(&s)).map_err(|e| usage(format!("--cf {s:?}: {e}")))?;
        if a.j.is_none() == a.length.is_none() {
            return Err(usage("--cf needs exactly one of --j and --length"));
        }
        if a.j.is_some_and(|j| j < -1) {
            return Err(usage("--j must be at least -1"));
        }
        return Ok(Command::CfWord { cf, j: a.j, length: a.length });
    }
    let length = a.length.ok_or_else(|| usage("--search needs --length"))?;
    if length == 0 {
        return Err(usage("--length must be positive"));
    }
    Ok(Command::SlopeSearch { length })
}

fn alphabet_for(text: &[&str], explicit: Option<usize>) -> Result<Alphabet, CliError> {
    let k = match explicit {
        Some(k) => k,
        None => {
            let top = text
                .iter()
                .flat_map(|t| t.chars())
                .filter_map(|c| c.to_digit(10))
                .max()
                .unwrap_or(1);
            (top as usize + 1).max(2)
        }
    };
    Alphabet::sigma(k).map_err(|e| usage(format!("--alphabet {k}: {e}")))
}

fn digits(flag: &str, value: &Option<String>, alphabet: &Alphabet) -> Result<Word, CliError> {
    let text = value.as_deref().ok_or_else(|| usage(format!("this system needs --{flag}")))?;
    Word::parse(alphabet, text).map_err(|e| usage(format!("--{flag} {text:?}: {e}")))
}

fn explicit_word(s: &SourceArgs) -> Result<Word, CliError> {
    let text = s.word.as_deref().unwrap_or("");
    digits("word", &s.word, &alphabet_for(&[text], s.alphabet)?)
}

fn recursive_source(s: &SourceArgs) -> Result<(String, RecursiveSpec), CliError> {
    match s.system.unwrap_or(System::Y) {
        System::Y => Ok(("y".into(), RecursiveSpec::y())),
        System::Fibonacci => {
            let s2 = Alphabet::sigma(2)?;
            let spec = RecursiveSpec::new(Word::parse(&s2, "0")?, Word::parse(&s2, "01")?)?;
            Ok(("fibonacci".into(), spec))
        }
        System::Recursive => {
            let texts = [s.seed0.as_deref().unwrap_or(""), s.seed1.as_deref().unwrap_or("")];
            let sigma = alphabet_for(&texts, s.alphabet)?;
            let spec = RecursiveSpec::new(digits("seed0", &s.seed0, &sigma)?, digits("seed1", &s.seed1, &sigma)?)?;
            Ok((format!("recursive:{},{}", texts[0], texts[1]), spec))
        }
        other => Err(usage(format!(
            "--system {}: this command needs y or recursive",
            other.to_possible_value().expect("no skipped variants").get_name()
        ))),
    }
}

fn word_source(s: &SourceArgs) -> Result<WordSource, CliError> {
    Ok(match s.system.unwrap_or(System::Fibonacci) {
        System::Fibonacci => WordSource::Fibonacci,
        System::ThueMorse => WordSource::ThueMorse,
        System::Y => WordSource::Y,
        System::YStarBlocks => return Err(usage("--system y-star-blocks is only available to gen")),
        System::Recursive => WordSource::Recursive(recursive_source(s)?.1),
        System::Periodic => {
            let text = s.period.as_deref().unwrap_or("");
            let p = digits("period", &s.period, &alphabet_for(&[text], s.alphabet)?)?;
            if p.is_empty() {
                return Err(usage("--period must be nonempty"));
            }
            WordSource::Periodic(p)
        }
        System::Morphic => {
            let path = s.morphism_file.as_ref().ok_or_else(|| usage("--system morphic needs --morphism-file"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("--morphism-file {}: {e}", path.display())))?;
            let morphism =
                Morphism::parse(&text).map_err(|e| usage(format!("--morphism-file {}: {e}", path.display())))?;
            if !morphism.is_prolongable(s.seed) {
                return Err(usage(format!("--seed {}: the morphism is not prolongable on it", s.seed)));
            }
            WordSource::Morphic { morphism, seed: s.seed }
        }
        System::Word => WordSource::Explicit(explicit_word(s)?),
    })
}
