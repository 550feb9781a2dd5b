//! The full pipeline: text → tokens → phoneme units → database lookup →
//! corpus slices → one output waveform, plus a report of everything skipped.
//!
//! Batch output is built by running the streaming path into a vector, so the
//! two modes are sample-identical by construction. The streaming path never
//! buffers more than one unit slice (borrowed from the corpus) or one gap, so
//! peak memory is independent of text length.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::audio::{silence, span_to_range, AudioClip, AudioError};
use crate::phoneme::{segment_word, SegmentationDiagnostic};
use crate::text::{normalize, tokenize, TokenKind};
use crate::unitdb::UnitDatabase;

/// What to do when a segmented phoneme has no database entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Skip the unit and record it in the report.
    #[default]
    Skip,
    /// Abort with an error naming the word and label.
    Error,
}

/// Synthesis knobs. The defaults (no gap, skip missing units) mirror plain
/// concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SynthesisOptions {
    /// Silence inserted between consecutive words that both emitted audio.
    pub gap_ms: u32,
    /// Missing-unit policy.
    pub on_missing: MissingPolicy,
}

/// A phoneme that was segmented but had no database entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPhoneme {
    /// 0-based index among the word tokens.
    pub word_index: usize,
    /// Canonical label that was looked up.
    pub label: String,
}

/// A segmentation diagnostic tagged with the word it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordDiagnostic {
    /// 0-based index among the word tokens.
    pub word_index: usize,
    /// The diagnostic itself.
    pub diagnostic: SegmentationDiagnostic,
}

/// Per-run accounting.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynthesisReport {
    /// Word tokens seen.
    pub words_processed: usize,
    /// Unit slices actually emitted.
    pub units_emitted: usize,
    /// Units skipped for lack of a database entry, in occurrence order.
    pub skipped_phonemes: Vec<SkippedPhoneme>,
    /// Segmentation irregularities across all words.
    pub diagnostics: Vec<WordDiagnostic>,
    /// Emitted samples divided by the corpus rate.
    pub output_duration_sec: f64,
}

/// Synthesis failures.
#[derive(Debug, Clone, PartialEq)]
pub enum SynthesisError {
    /// `MissingPolicy::Error` hit a unit with no entry.
    MissingUnit {
        /// 0-based word index.
        word_index: usize,
        /// The absent label.
        label: String,
    },
    /// Database was built against a different rate than the corpus clip.
    SampleRateMismatch {
        /// Rate recorded in the database.
        db: u32,
        /// Rate of the corpus clip.
        corpus: u32,
    },
    /// A span did not fit the corpus (validate first to catch these early).
    Span {
        /// Label whose span failed.
        label: String,
        /// Underlying range failure.
        source: AudioError,
    },
    /// The sink refused samples; `pushed_samples` were delivered before the
    /// failure.
    Sink {
        /// Samples delivered before the failure.
        pushed_samples: usize,
        /// Sink's own description.
        message: String,
    },
}

impl fmt::Display for SynthesisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthesisError::MissingUnit { word_index, label } => {
                write!(f, "word {word_index}: no database entry for {label}")
            }
            SynthesisError::SampleRateMismatch { db, corpus } => {
                write!(
                    f,
                    "database rate {db} Hz does not match corpus rate {corpus} Hz"
                )
            }
            SynthesisError::Span { label, source } => {
                write!(f, "span of {label}: {source}")
            }
            SynthesisError::Sink {
                pushed_samples,
                message,
            } => write!(f, "sink failed after {pushed_samples} samples: {message}"),
        }
    }
}

impl core::error::Error for SynthesisError {}

/// Why a sink refused samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkError {
    message: String,
}

impl SinkError {
    /// Wraps a description of the failure.
    pub fn new(message: impl Into<String>) -> SinkError {
        SinkError {
            message: message.into(),
        }
    }
}

impl fmt::Display for SinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl core::error::Error for SinkError {}

/// Incremental consumer of synthesized samples. Chunks arrive in output
/// order; each is at most one unit slice or one inter-word gap long.
pub trait SampleSink {
    /// Accepts the next chunk.
    fn push(&mut self, samples: &[i16]) -> Result<(), SinkError>;
}

impl SampleSink for Vec<i16> {
    fn push(&mut self, samples: &[i16]) -> Result<(), SinkError> {
        self.extend_from_slice(samples);
        Ok(())
    }
}

impl<F> SampleSink for F
where
    F: FnMut(&[i16]) -> Result<(), SinkError>,
{
    fn push(&mut self, samples: &[i16]) -> Result<(), SinkError> {
        self(samples)
    }
}

/// Streams the synthesis of `text` over `db`/`corpus` into `sink` and
/// returns the report. The delivered sample sequence is exactly what
/// [`synthesize`] returns for the same inputs.
///
/// The gap rule: `gap_ms` of silence goes between consecutive *emitting*
/// words — a word all of whose units were skipped contributes neither audio
/// nor a gap.
pub fn synthesize_streaming<S: SampleSink>(
    text: &str,
    db: &UnitDatabase,
    corpus: &AudioClip,
    options: &SynthesisOptions,
    sink: &mut S,
) -> Result<SynthesisReport, SynthesisError> {
    let rate = corpus.sample_rate();
    if db.corpus_id().sample_rate != rate {
        return Err(SynthesisError::SampleRateMismatch {
            db: db.corpus_id().sample_rate,
            corpus: rate,
        });
    }

    let gap = silence(options.gap_ms, rate);
    let normalized = normalize(text);
    let mut report = SynthesisReport::default();
    let mut pushed = 0usize;
    let mut emitted_any = false;
    let mut word_index = 0usize;

    for token in tokenize(&normalized) {
        if token.kind != TokenKind::Word {
            continue;
        }
        let segmentation = segment_word(token.text);
        report
            .diagnostics
            .extend(
                segmentation
                    .diagnostics
                    .into_iter()
                    .map(|diagnostic| WordDiagnostic {
                        word_index,
                        diagnostic,
                    }),
            );

        // Resolve the whole word first so the gap decision precedes output.
        let mut found = Vec::with_capacity(segmentation.phonemes.len());
        for phoneme in &segmentation.phonemes {
            match db.lookup(phoneme) {
                Some(entry) => found.push(entry),
                None => {
                    let label = phoneme.label();
                    if options.on_missing == MissingPolicy::Error {
                        return Err(SynthesisError::MissingUnit { word_index, label });
                    }
                    report
                        .skipped_phonemes
                        .push(SkippedPhoneme { word_index, label });
                }
            }
        }

        if !found.is_empty() {
            if emitted_any && !gap.is_empty() {
                push_chunk(sink, gap.samples(), &mut pushed)?;
            }
            for entry in found {
                let range = span_to_range(entry.span, rate, corpus.len()).map_err(|source| {
                    SynthesisError::Span {
                        label: entry.label.clone(),
                        source,
                    }
                })?;
                push_chunk(sink, &corpus.samples()[range], &mut pushed)?;
                report.units_emitted += 1;
            }
            emitted_any = true;
        }
        word_index += 1;
    }

    report.words_processed = word_index;
    report.output_duration_sec = pushed as f64 / rate as f64;
    Ok(report)
}

fn push_chunk<S: SampleSink>(
    sink: &mut S,
    samples: &[i16],
    pushed: &mut usize,
) -> Result<(), SynthesisError> {
    sink.push(samples).map_err(|e| SynthesisError::Sink {
        pushed_samples: *pushed,
        message: format!("{e}"),
    })?;
    *pushed += samples.len();
    Ok(())
}

/// Runs the whole pipeline and collects the output into one clip at the
/// corpus rate. Deterministic: identical inputs give sample-identical output.
pub fn synthesize(
    text: &str,
    db: &UnitDatabase,
    corpus: &AudioClip,
    options: &SynthesisOptions,
) -> Result<(AudioClip, SynthesisReport), SynthesisError> {
    let mut samples: Vec<i16> = Vec::new();
    let report = synthesize_streaming(text, db, corpus, options, &mut samples)?;
    Ok((AudioClip::new(samples, corpus.sample_rate()), report))
}
