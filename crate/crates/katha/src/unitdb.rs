//! The phoneme-label → time-span database over one corpus recording.
//!
//! Storage is a line-based TSV manifest instead of an embedded database: the
//! entry count is bounded by the 780-label universe, so an in-memory map
//! serves every lookup, and the text form stays human-diffable. The writer is
//! canonical (label-sorted rows, six decimal places, LF endings); the reader
//! additionally tolerates comment lines and trailing carriage returns.
//!
//! ```text
//! #katha-unitdb v1
//! #corpus recording.wav 44100
//! C0A26-V0A08-O <TAB> ਦੀ <TAB> 0.500000 <TAB> 0.880000
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::audio::{span_to_range, AudioClip, TimeSpan, CANONICAL_SAMPLE_RATE};
use crate::inventory::PhonemeInventory;
use crate::phoneme::Phoneme;

/// First line of a unit-database manifest.
pub const UNITDB_MAGIC: &str = "#katha-unitdb v1";

/// Which recording the spans index into, stamped at build time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusId {
    /// File name of the corpus recording (informative; files get renamed).
    pub file_name: String,
    /// Sample rate the spans were marked against.
    pub sample_rate: u32,
}

/// One database row: a canonical label and its time span in the corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitEntry {
    /// Canonical phoneme label.
    pub label: String,
    /// Gurmukhi rendering, informative.
    pub display: String,
    /// Where the unit's sound lives in the corpus.
    pub span: TimeSpan,
}

/// Immutable label → entry map over a single corpus recording.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitDatabase {
    entries: BTreeMap<String, UnitEntry>,
    corpus_id: CorpusId,
}

impl UnitDatabase {
    /// Builds a database from entries, enforcing canonical and unique labels.
    pub fn from_entries(
        corpus_id: CorpusId,
        entries: Vec<UnitEntry>,
    ) -> Result<UnitDatabase, ManifestError> {
        let mut map = BTreeMap::new();
        for entry in entries {
            check_canonical(&entry.label, 0)?;
            let label = entry.label.clone();
            if map.insert(label.clone(), entry).is_some() {
                return Err(ManifestError::DuplicateLabel { label });
            }
        }
        Ok(UnitDatabase {
            entries: map,
            corpus_id,
        })
    }

    /// Parses a manifest. The first line must be the magic, the second the
    /// `#corpus` stamp; later `#` lines are comments.
    pub fn load(text: &str) -> Result<UnitDatabase, ManifestError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim_end_matches('\r') == UNITDB_MAGIC => {}
            _ => return Err(ManifestError::BadMagic),
        }
        let corpus_id = match lines.next() {
            Some((_, second)) => parse_corpus_line(second.trim_end_matches('\r'))
                .ok_or(ManifestError::BadCorpusLine)?,
            None => return Err(ManifestError::BadCorpusLine),
        };
        let mut db = UnitDatabase {
            entries: BTreeMap::new(),
            corpus_id,
        };
        for (idx, raw) in lines {
            let line = raw.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            db.insert_row(line, idx + 1)?;
        }
        Ok(db)
    }

    /// Parses a label file: the same row format as the manifest, but the
    /// magic line is optional, as annotation tools export bare rows. A
    /// `#corpus` line is honored when present; otherwise the corpus id is
    /// left unspecified at the canonical rate.
    pub fn build(text: &str) -> Result<UnitDatabase, ManifestError> {
        let mut db = UnitDatabase {
            entries: BTreeMap::new(),
            corpus_id: CorpusId {
                file_name: String::from("unspecified"),
                sample_rate: CANONICAL_SAMPLE_RATE,
            },
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            if line.starts_with('#') {
                if let Some(corpus_id) = parse_corpus_line(line) {
                    db.corpus_id = corpus_id;
                }
                continue;
            }
            db.insert_row(line, idx + 1)?;
        }
        Ok(db)
    }

    fn insert_row(&mut self, line: &str, number: usize) -> Result<(), ManifestError> {
        let mut fields = line.split('\t');
        let (label, display, start, end) = match (
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
        ) {
            (Some(l), Some(d), Some(s), Some(e), None) => (l, d, s, e),
            _ => {
                return Err(ManifestError::BadRow {
                    line: number,
                    reason: "expected 4 tab-separated fields",
                })
            }
        };
        check_canonical(label, number)?;
        let start_sec = parse_seconds(start, "start", number)?;
        let end_sec = parse_seconds(end, "end", number)?;
        let span = TimeSpan::new(start_sec, end_sec).map_err(|_| ManifestError::BadSpanOrder {
            line: number,
            start_sec,
            end_sec,
        })?;
        let entry = UnitEntry {
            label: label.to_string(),
            display: display.to_string(),
            span,
        };
        if self.entries.insert(label.to_string(), entry).is_some() {
            return Err(ManifestError::DuplicateLabel {
                label: label.to_string(),
            });
        }
        Ok(())
    }

    /// Serializes to the canonical manifest: magic, corpus stamp, then
    /// label-sorted rows with seconds at six decimal places. Byte
    /// deterministic.
    pub fn save(&self) -> String {
        let mut out = String::new();
        out.push_str(UNITDB_MAGIC);
        out.push('\n');
        out.push_str(&format!(
            "#corpus {} {}\n",
            self.corpus_id.file_name, self.corpus_id.sample_rate
        ));
        for entry in self.entries.values() {
            out.push_str(&format!(
                "{}\t{}\t{:.6}\t{:.6}\n",
                entry.label,
                entry.display,
                entry.span.start_sec(),
                entry.span.end_sec()
            ));
        }
        out
    }

    /// Entry for a phoneme, if its label was in the manifest. Absence is a
    /// value here — synthesis skips, it does not fail.
    pub fn lookup(&self, phoneme: &Phoneme) -> Option<&UnitEntry> {
        self.entries.get(&phoneme.label())
    }

    /// Entry by raw label.
    pub fn get(&self, label: &str) -> Option<&UnitEntry> {
        self.entries.get(label)
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when there are no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in label order.
    pub fn entries(&self) -> impl Iterator<Item = &UnitEntry> {
        self.entries.values()
    }

    /// The corpus stamp.
    pub fn corpus_id(&self) -> &CorpusId {
        &self.corpus_id
    }

    /// Same entries under a different corpus stamp.
    pub fn with_corpus_id(mut self, corpus_id: CorpusId) -> UnitDatabase {
        self.corpus_id = corpus_id;
        self
    }

    /// Checks every span against an actual corpus clip. Error findings mean
    /// synthesis over this pair may fail or play garbage: spans past the end
    /// of the recording, spans that round to zero samples, and a recorded
    /// rate that disagrees with the clip. Overlapping spans are legal
    /// (informative), as are labels an inventory flags invalid.
    pub fn validate(
        &self,
        corpus: &AudioClip,
        inventory: Option<&PhonemeInventory>,
    ) -> Vec<Finding> {
        let mut findings = Vec::new();
        if self.corpus_id.sample_rate != corpus.sample_rate() {
            findings.push(Finding {
                severity: Severity::Error,
                kind: FindingKind::SampleRateMismatch,
                label: None,
                message: format!(
                    "database expects {} Hz but corpus is {} Hz",
                    self.corpus_id.sample_rate,
                    corpus.sample_rate()
                ),
            });
        }
        let mut ranges: Vec<(usize, usize, &str)> = Vec::new();
        for entry in self.entries.values() {
            match span_to_range(entry.span, corpus.sample_rate(), corpus.len()) {
                Ok(range) => {
                    if range.is_empty() {
                        findings.push(Finding {
                            severity: Severity::Error,
                            kind: FindingKind::ZeroLengthSpan,
                            label: Some(entry.label.clone()),
                            message: format!(
                                "span {:.6}..{:.6} rounds to zero samples",
                                entry.span.start_sec(),
                                entry.span.end_sec()
                            ),
                        });
                    } else {
                        ranges.push((range.start, range.end, &entry.label));
                    }
                }
                Err(_) => findings.push(Finding {
                    severity: Severity::Error,
                    kind: FindingKind::SpanOutOfRange,
                    label: Some(entry.label.clone()),
                    message: format!(
                        "span {:.6}..{:.6} ends past the {:.6} s corpus",
                        entry.span.start_sec(),
                        entry.span.end_sec(),
                        corpus.duration_seconds()
                    ),
                }),
            }
            if let Some(inv) = inventory {
                let known_valid = inv.get(&entry.label).map(|e| e.valid).unwrap_or(false);
                if !known_valid {
                    findings.push(Finding {
                        severity: Severity::Info,
                        kind: FindingKind::NotInInventory,
                        label: Some(entry.label.clone()),
                        message: String::from("label is not a valid phoneme in the inventory"),
                    });
                }
            }
        }
        ranges.sort_unstable();
        for pair in ranges.windows(2) {
            let (_, a_end, a_label) = pair[0];
            let (b_start, _, b_label) = pair[1];
            if b_start < a_end {
                findings.push(Finding {
                    severity: Severity::Info,
                    kind: FindingKind::OverlappingSpans,
                    label: Some(a_label.to_string()),
                    message: format!("span overlaps the span of {b_label}"),
                });
            }
        }
        findings
    }
}

fn parse_corpus_line(line: &str) -> Option<CorpusId> {
    let rest = line.strip_prefix("#corpus ")?;
    // The file name may contain spaces; the rate is the last token.
    let (file_name, rate) = rest.rsplit_once(' ')?;
    let sample_rate: u32 = rate.parse().ok()?;
    if file_name.is_empty() || sample_rate == 0 {
        return None;
    }
    Some(CorpusId {
        file_name: file_name.to_string(),
        sample_rate,
    })
}

fn check_canonical(label: &str, line: usize) -> Result<(), ManifestError> {
    match Phoneme::parse_label(label) {
        Ok(p) if p.label() == label => Ok(()),
        _ => Err(ManifestError::BadLabel {
            line,
            label: label.to_string(),
        }),
    }
}

fn parse_seconds(text: &str, field: &'static str, line: usize) -> Result<f64, ManifestError> {
    let bad = || ManifestError::BadSeconds {
        line,
        field,
        value: text.to_string(),
    };
    let value: f64 = text.parse().map_err(|_| bad())?;
    if !value.is_finite() || value < 0.0 {
        return Err(bad());
    }
    Ok(value)
}

/// Rejection reasons for manifest and label-file parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum ManifestError {
    /// Missing or wrong first line.
    BadMagic,
    /// Missing or malformed `#corpus <file> <rate>` line.
    BadCorpusLine,
    /// A data row with the wrong shape.
    BadRow {
        /// 1-based line number.
        line: usize,
        /// What was wrong.
        reason: &'static str,
    },
    /// A label that is not in canonical form.
    BadLabel {
        /// 1-based line number (0 when built programmatically).
        line: usize,
        /// The offending label.
        label: String,
    },
    /// The same label twice.
    DuplicateLabel {
        /// The repeated label.
        label: String,
    },
    /// A seconds field that is not a non-negative finite number.
    BadSeconds {
        /// 1-based line number.
        line: usize,
        /// Which field.
        field: &'static str,
        /// The offending text.
        value: String,
    },
    /// Start at or after end.
    BadSpanOrder {
        /// 1-based line number.
        line: usize,
        /// Parsed start.
        start_sec: f64,
        /// Parsed end.
        end_sec: f64,
    },
}

impl fmt::Display for ManifestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifestError::BadMagic => {
                write!(f, "manifest must start with {UNITDB_MAGIC:?}")
            }
            ManifestError::BadCorpusLine => {
                write!(f, "expected '#corpus <file> <sample_rate>' on line 2")
            }
            ManifestError::BadRow { line, reason } => write!(f, "line {line}: {reason}"),
            ManifestError::BadLabel { line, label } => {
                write!(f, "line {line}: {label:?} is not a canonical phoneme label")
            }
            ManifestError::DuplicateLabel { label } => {
                write!(f, "duplicate label {label:?}")
            }
            ManifestError::BadSeconds { line, field, value } => {
                write!(
                    f,
                    "line {line}: {field} {value:?} is not a non-negative number"
                )
            }
            ManifestError::BadSpanOrder {
                line,
                start_sec,
                end_sec,
            } => write!(f, "line {line}: start {start_sec} not before end {end_sec}"),
        }
    }
}

impl core::error::Error for ManifestError {}

/// How bad a validation finding is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    /// Synthesis over this database/corpus pair is unsafe.
    Error,
    /// Worth knowing, but legal.
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Info => "info",
        })
    }
}

/// Category of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindingKind {
    /// Span ends past the corpus.
    SpanOutOfRange,
    /// Span rounds to zero samples.
    ZeroLengthSpan,
    /// Database rate differs from the corpus clip's rate.
    SampleRateMismatch,
    /// Two spans share samples (legal).
    OverlappingSpans,
    /// Label flagged invalid by the supplied inventory.
    NotInInventory,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FindingKind::SpanOutOfRange => "SpanOutOfRange",
            FindingKind::ZeroLengthSpan => "ZeroLengthSpan",
            FindingKind::SampleRateMismatch => "SampleRateMismatch",
            FindingKind::OverlappingSpans => "OverlappingSpans",
            FindingKind::NotInInventory => "NotInInventory",
        })
    }
}

/// One validation observation. Findings are data, not errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    /// Error or info.
    pub severity: Severity,
    /// Category.
    pub kind: FindingKind,
    /// The entry concerned, when the finding is per-entry.
    pub label: Option<String>,
    /// Human-readable description.
    pub message: String,
}
