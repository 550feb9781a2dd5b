//! `katha` — concatenative Punjabi (Gurmukhi) text-to-speech at the command
//! line.
//!
//! Subcommands: `synth` renders text to a WAV file over a unit database and
//! corpus recording, `phonemes` shows how words segment into V/CV units,
//! `db` validates and builds unit databases, `corpus-gen` produces the
//! synthetic test corpus, and `inventory` reports phoneme inventory counts.
//!
//! Exit statuses: 0 success, 1 usage error, 2 input-file error, 3 validation
//! failure, 4 synthesis failure. Payload goes to stdout or the named output
//! files; diagnostics go to stderr.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use katha::inventory::PhonemeInventory;
use katha::synth::{synthesize, MissingPolicy, SynthesisOptions, SynthesisReport};
use katha::synthetic::{generate, CorpusPlan};
use katha::text::{normalize, tokenize, TokenKind};
use katha::unitdb::{Severity, UnitDatabase};
use katha::wav::{read_wav, write_wav};
use katha::{segment_word, AudioClip};

#[derive(Parser)]
#[command(
    name = "katha",
    version,
    about = "Concatenative Punjabi (Gurmukhi) text-to-speech toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize speech for Gurmukhi text into a WAV file.
    Synth(SynthArgs),
    /// Print the V/CV segmentation of each word.
    Phonemes(PhonemesArgs),
    /// Unit-database tooling.
    Db {
        #[command(subcommand)]
        command: DbCommand,
    },
    /// Generate the synthetic sine-burst corpus and its database.
    CorpusGen(CorpusGenArgs),
    /// Phoneme-inventory tooling.
    Inventory {
        #[command(subcommand)]
        command: InventoryCommand,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TextSource {
    /// UTF-8 text file to read.
    #[arg(long)]
    text: Option<PathBuf>,
    /// Read the text from standard input instead.
    #[arg(long)]
    stdin: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// Unit-database manifest.
    #[arg(long)]
    db: PathBuf,
    /// Corpus WAV recording the database indexes into.
    #[arg(long)]
    corpus: PathBuf,
    #[command(flatten)]
    input: TextSource,
    /// Output WAV path.
    #[arg(long)]
    out: PathBuf,
    /// Silence between words, milliseconds.
    #[arg(long, default_value_t = 0)]
    gap_ms: u32,
    /// What to do when a phoneme has no database entry.
    #[arg(long, value_enum, default_value_t = OnMissing::Skip)]
    on_missing: OnMissing,
    /// Write the run report here instead of standard error.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnMissing {
    Skip,
    Error,
}

#[derive(Args)]
struct PhonemesArgs {
    #[command(flatten)]
    input: TextSource,
    /// Inventory file; units it flags invalid are marked with `!`.
    #[arg(long)]
    inventory: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DbCommand {
    /// Check every database span against a corpus recording.
    Validate {
        /// Unit-database manifest.
        #[arg(long)]
        db: PathBuf,
        /// Corpus WAV recording.
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Build a canonical manifest from a label file.
    Build {
        /// Label file: manifest rows, magic line optional.
        #[arg(long)]
        labels: PathBuf,
        /// Output manifest path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CorpusGenArgs {
    /// Inventory file naming the valid phonemes.
    #[arg(long)]
    inventory: PathBuf,
    /// Burst length per phoneme, milliseconds.
    #[arg(long, default_value_t = 80, value_parser = clap::value_parser!(u32).range(1..))]
    unit_ms: u32,
    /// Silence between bursts, milliseconds.
    #[arg(long, default_value_t = 20)]
    guard_ms: u32,
    /// Output corpus WAV path.
    #[arg(long)]
    out_corpus: PathBuf,
    /// Output database manifest path.
    #[arg(long)]
    out_db: PathBuf,
}

#[derive(Subcommand)]
enum InventoryCommand {
    /// Print per-class totals: class, total, invalid, valid.
    Stats {
        /// Inventory file.
        #[arg(long)]
        inventory: PathBuf,
    },
}

/// Error carrying the exit status it maps to.
enum CliError {
    /// Bad flags or parameter domain: exit 1.
    Usage(String),
    /// Missing or malformed input file: exit 2.
    Input(String),
    /// Database does not validate against the corpus: exit 3.
    Validation(String),
    /// Synthesis aborted: exit 4.
    Synthesis(String),
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Synthesis(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Input(m)
            | CliError::Validation(m)
            | CliError::Synthesis(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version displays are not errors.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("katha: {}", err.message());
            ExitCode::from(err.status())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Phonemes(args) => cmd_phonemes(args),
        Command::Db { command } => match command {
            DbCommand::Validate { db, corpus } => cmd_db_validate(&db, &corpus),
            DbCommand::Build { labels, out } => cmd_db_build(&labels, &out),
        },
        Command::CorpusGen(args) => cmd_corpus_gen(args),
        Command::Inventory { command } => match command {
            InventoryCommand::Stats { inventory } => cmd_inventory_stats(&inventory),
        },
    }
}

// ---- input helpers ----------------------------------------------------

fn read_text(source: &TextSource) -> Result<String, CliError> {
    if source.stdin {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Input(format!("standard input: {e}")))?;
        String::from_utf8(buf)
            .map_err(|_| CliError::Input(String::from("standard input is not valid UTF-8")))
    } else {
        let path = source.text.as_ref().expect("clap enforces the input group");
        let bytes =
            fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))
    }
}

fn read_db(path: &Path) -> Result<UnitDatabase, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    UnitDatabase::load(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_corpus(path: &Path) -> Result<AudioClip, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    read_wav(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_inventory(path: &Path) -> Result<PhonemeInventory, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    PhonemeInventory::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

// ---- synth -------------------------------------------------------------

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let db = read_db(&args.db)?;
    let corpus = read_corpus(&args.corpus)?;

    let findings = db.validate(&corpus, None);
    let errors: Vec<_> = findings
        .iter()
        .filter(|f| f.severity == Severity::Error)
        .collect();
    if !errors.is_empty() {
        for finding in &errors {
            eprintln!(
                "{}\t{}\t{}\t{}",
                finding.severity,
                finding.kind,
                finding.label.as_deref().unwrap_or("-"),
                finding.message
            );
        }
        return Err(CliError::Validation(format!(
            "{}: {} error finding(s) against {}",
            args.db.display(),
            errors.len(),
            args.corpus.display()
        )));
    }

    let options = SynthesisOptions {
        gap_ms: args.gap_ms,
        on_missing: match args.on_missing {
            OnMissing::Skip => MissingPolicy::Skip,
            OnMissing::Error => MissingPolicy::Error,
        },
    };
    let (clip, report) = synthesize(&text, &db, &corpus, &options)
        .map_err(|e| CliError::Synthesis(e.to_string()))?;

    let wav_bytes = write_wav(&clip).map_err(|e| CliError::Synthesis(e.to_string()))?;
    write_file(&args.out, &wav_bytes)?;

    let report_text = render_report(&report, clip.len());
    match &args.report {
        Some(path) => write_file(path, report_text.as_bytes())?,
        None => eprint!("{report_text}"),
    }
    Ok(())
}

// Tab-separated key/value lines so CI can assert on the report.
fn render_report(report: &SynthesisReport, output_samples: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "words_processed\t{}", report.words_processed);
    let _ = writeln!(out, "units_emitted\t{}", report.units_emitted);
    let _ = writeln!(out, "skipped_count\t{}", report.skipped_phonemes.len());
    for skipped in &report.skipped_phonemes {
        let _ = writeln!(out, "skipped\t{} {}", skipped.word_index, skipped.label);
    }
    for diag in &report.diagnostics {
        let _ = writeln!(
            out,
            "diagnostic\t{} {} {} {}",
            diag.word_index, diag.diagnostic.kind, diag.diagnostic.position, diag.diagnostic.detail
        );
    }
    let _ = writeln!(out, "output_samples\t{output_samples}");
    let _ = writeln!(
        out,
        "output_duration_sec\t{:.6}",
        report.output_duration_sec
    );
    out
}

// ---- phonemes ----------------------------------------------------------

fn cmd_phonemes(args: PhonemesArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let inventory = args.inventory.as_deref().map(read_inventory).transpose()?;

    let normalized = normalize(&text);
    let mut stdout = String::new();
    let mut word_index = 0usize;
    for token in tokenize(&normalized) {
        if token.kind != TokenKind::Word {
            continue;
        }
        let segmentation = segment_word(token.text);
        let labels: Vec<String> = segmentation
            .phonemes
            .iter()
            .map(|p| {
                let label = p.label();
                match &inventory {
                    Some(inv) if !inv.is_valid(p) => format!("{label}!"),
                    _ => label,
                }
            })
            .collect();
        let _ = writeln!(stdout, "{}\t{}", token.text, labels.join(" "));
        for diag in &segmentation.diagnostics {
            eprintln!(
                "diagnostic\t{} {} {} {}",
                word_index, diag.kind, diag.position, diag.detail
            );
        }
        word_index += 1;
    }
    print!("{stdout}");
    Ok(())
}

// ---- db ----------------------------------------------------------------

fn cmd_db_validate(db_path: &Path, corpus_path: &Path) -> Result<(), CliError> {
    let db = read_db(db_path)?;
    let corpus = read_corpus(corpus_path)?;
    let findings = db.validate(&corpus, None);
    for finding in &findings {
        println!(
            "{}\t{}\t{}\t{}",
            finding.severity,
            finding.kind,
            finding.label.as_deref().unwrap_or("-"),
            finding.message
        );
    }
    let errors = findings
        .iter()
        .filter(|f| f.severity == Severity::Error)
        .count();
    if errors > 0 {
        return Err(CliError::Validation(format!("{errors} error finding(s)")));
    }
    Ok(())
}

fn cmd_db_build(labels_path: &Path, out_path: &Path) -> Result<(), CliError> {
    let text = fs::read_to_string(labels_path)
        .map_err(|e| CliError::Input(format!("{}: {e}", labels_path.display())))?;
    let db = UnitDatabase::build(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", labels_path.display())))?;
    write_file(out_path, db.save().as_bytes())
}

// ---- corpus-gen ----------------------------------------------------------

fn cmd_corpus_gen(args: CorpusGenArgs) -> Result<(), CliError> {
    let inventory = read_inventory(&args.inventory)?;
    let plan = CorpusPlan {
        unit_ms: args.unit_ms,
        guard_ms: args.guard_ms,
        ..CorpusPlan::default()
    };
    let (corpus, db) = generate(&inventory, &plan).map_err(|e| CliError::Usage(e.to_string()))?;

    // Stamp the manifest with the actual corpus file name.
    let corpus_name = args
        .out_corpus
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| String::from("corpus.wav"));
    let db = db.with_corpus_id(katha::unitdb::CorpusId {
        file_name: corpus_name,
        sample_rate: corpus.sample_rate(),
    });

    let wav_bytes = write_wav(&corpus).map_err(|e| CliError::Usage(e.to_string()))?;
    write_file(&args.out_corpus, &wav_bytes)?;
    write_file(&args.out_db, db.save().as_bytes())?;
    eprintln!(
        "wrote {} ({} units, {:.3} s) and {}",
        args.out_corpus.display(),
        db.len(),
        corpus.duration_seconds(),
        args.out_db.display()
    );
    Ok(())
}

// ---- inventory ----------------------------------------------------------

fn cmd_inventory_stats(path: &Path) -> Result<(), CliError> {
    let inventory = read_inventory(path)?;
    let counts = inventory.counts();
    let rows = [
        ("V", counts.v),
        ("V-nasal", counts.v_nasal),
        ("CV", counts.cv),
        ("CV-nasal", counts.cv_nasal),
        ("total", counts.overall()),
    ];
    for (name, class) in rows {
        println!(
            "{name}\t{}\t{}\t{}",
            class.total, class.invalid, class.valid
        );
    }
    Ok(())
}
