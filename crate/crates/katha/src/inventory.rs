//! The generated phoneme universe and its validity flags.
//!
//! The universe is fixed by combinatorics: 10 vowels × 2 nasalization states
//! give 20 V units, and 38 consonants × 10 vowels × 2 give 760 CV units, 780
//! entries in all. Which of them are valid Punjabi phonemes is data, not
//! code: an inventory file flags each label, and [`generate_inventory`]
//! builds the same structure from an exclusion set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::phoneme::{LabelError, Phoneme};
use crate::text::{Consonant, Vowel};

/// Size of the generated universe: 20 V + 760 CV.
pub const UNIVERSE_SIZE: usize = 780;

/// First line of an inventory file.
pub const INVENTORY_MAGIC: &str = "#katha-inventory v1";

/// Per-label inventory data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InventoryEntry {
    /// Gurmukhi rendering, informative.
    pub display: String,
    /// Whether the phoneme is a valid Punjabi phoneme.
    pub valid: bool,
}

/// Tally for one (kind × nasalization) class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    /// Entries in the class.
    pub total: usize,
    /// Entries flagged valid.
    pub valid: usize,
    /// Entries flagged invalid.
    pub invalid: usize,
}

impl ClassCounts {
    fn add(&mut self, valid: bool) {
        self.total += 1;
        if valid {
            self.valid += 1;
        } else {
            self.invalid += 1;
        }
    }
}

/// Tallies for the four classes plus their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InventoryCounts {
    /// Vowel-only, oral.
    pub v: ClassCounts,
    /// Vowel-only, nasalized.
    pub v_nasal: ClassCounts,
    /// Consonant+vowel, oral.
    pub cv: ClassCounts,
    /// Consonant+vowel, nasalized.
    pub cv_nasal: ClassCounts,
}

impl InventoryCounts {
    /// Sum over the four classes.
    pub fn overall(&self) -> ClassCounts {
        ClassCounts {
            total: self.v.total + self.v_nasal.total + self.cv.total + self.cv_nasal.total,
            valid: self.v.valid + self.v_nasal.valid + self.cv.valid + self.cv_nasal.valid,
            invalid: self.v.invalid
                + self.v_nasal.invalid
                + self.cv.invalid
                + self.cv_nasal.invalid,
        }
    }
}

/// The full 780-entry universe with validity flags, keyed by canonical label.
/// Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeInventory {
    entries: BTreeMap<String, InventoryEntry>,
}

/// Every phoneme in the universe, in no particular order.
fn universe() -> impl Iterator<Item = Phoneme> {
    let vowels = Vowel::ALL;
    let v_units = vowels
        .into_iter()
        .flat_map(|v| [Phoneme::v(v, false), Phoneme::v(v, true)]);
    let cv_units = Consonant::all().flat_map(move |c| {
        vowels
            .into_iter()
            .flat_map(move |v| [Phoneme::cv(c, v, false), Phoneme::cv(c, v, true)])
    });
    v_units.chain(cv_units)
}

/// Enumerates all 780 combinations and flags the given labels invalid.
/// Rejects labels that do not parse canonically (parseable labels are in the
/// universe by construction).
pub fn generate_inventory(
    invalid_labels: &BTreeSet<String>,
) -> Result<PhonemeInventory, InventoryError> {
    for label in invalid_labels {
        Phoneme::parse_label(label).map_err(|source| InventoryError::BadExclusion {
            label: label.clone(),
            source,
        })?;
    }
    let entries = universe()
        .map(|p| {
            let label = p.label();
            let valid = !invalid_labels.contains(&label);
            (
                label,
                InventoryEntry {
                    display: p.display(),
                    valid,
                },
            )
        })
        .collect();
    Ok(PhonemeInventory { entries })
}

impl PhonemeInventory {
    /// The universe with every phoneme flagged valid.
    pub fn all_valid() -> PhonemeInventory {
        generate_inventory(&BTreeSet::new()).expect("empty exclusion set always valid")
    }

    /// Number of entries; always [`UNIVERSE_SIZE`].
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Never true; present for completeness.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for a canonical label.
    pub fn get(&self, label: &str) -> Option<&InventoryEntry> {
        self.entries.get(label)
    }

    /// True iff the phoneme's label is present and flagged valid.
    pub fn is_valid(&self, phoneme: &Phoneme) -> bool {
        self.entries
            .get(&phoneme.label())
            .map(|e| e.valid)
            .unwrap_or(false)
    }

    /// All entries in label order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &InventoryEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Labels flagged valid, in label order.
    pub fn valid_labels(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(|(_, e)| e.valid)
            .map(|(k, _)| k.as_str())
    }

    /// Per-class tallies.
    pub fn counts(&self) -> InventoryCounts {
        let mut counts = InventoryCounts::default();
        for (label, entry) in &self.entries {
            let p = Phoneme::parse_label(label).expect("inventory labels are canonical");
            let class = match (p.is_v(), p.nasal()) {
                (true, false) => &mut counts.v,
                (true, true) => &mut counts.v_nasal,
                (false, false) => &mut counts.cv,
                (false, true) => &mut counts.cv_nasal,
            };
            class.add(entry.valid);
        }
        counts
    }

    /// Parses an inventory file. The file must cover the whole universe:
    /// exactly one row per label, no strangers, no duplicates.
    pub fn parse(text: &str) -> Result<PhonemeInventory, InventoryError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim_end_matches('\r') == INVENTORY_MAGIC => {}
            _ => return Err(InventoryError::BadMagic),
        }
        let mut entries = BTreeMap::new();
        for (idx, raw) in lines {
            let line = raw.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let number = idx + 1;
            let mut fields = line.split('\t');
            let (label, display, valid) =
                match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some(l), Some(d), Some(v), None) => (l, d, v),
                    _ => {
                        return Err(InventoryError::BadRow {
                            line: number,
                            reason: "expected 3 tab-separated fields",
                        })
                    }
                };
            Phoneme::parse_label(label).map_err(|source| InventoryError::BadLabel {
                line: number,
                label: label.to_string(),
                source,
            })?;
            let valid = match valid {
                "1" => true,
                "0" => false,
                _ => {
                    return Err(InventoryError::BadRow {
                        line: number,
                        reason: "valid flag must be 1 or 0",
                    })
                }
            };
            let previous = entries.insert(
                label.to_string(),
                InventoryEntry {
                    display: display.to_string(),
                    valid,
                },
            );
            if previous.is_some() {
                return Err(InventoryError::DuplicateLabel {
                    label: label.to_string(),
                });
            }
        }
        if entries.len() != UNIVERSE_SIZE {
            return Err(InventoryError::Incomplete {
                present: entries.len(),
            });
        }
        Ok(PhonemeInventory { entries })
    }

    /// Serializes to the inventory TSV format: magic line, then one
    /// `label<TAB>display<TAB>valid` row per entry in label order. Byte
    /// deterministic.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(INVENTORY_MAGIC);
        out.push('\n');
        for (label, entry) in &self.entries {
            out.push_str(&format!(
                "{label}\t{}\t{}\n",
                entry.display,
                u8::from(entry.valid)
            ));
        }
        out
    }
}

/// Rejection reasons for inventory parsing and generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InventoryError {
    /// Missing or wrong first line.
    BadMagic,
    /// A data row with the wrong shape.
    BadRow {
        /// 1-based line number.
        line: usize,
        /// What was wrong.
        reason: &'static str,
    },
    /// A row label that is not canonical.
    BadLabel {
        /// 1-based line number.
        line: usize,
        /// The offending label.
        label: String,
        /// Parse failure detail.
        source: LabelError,
    },
    /// The same label twice.
    DuplicateLabel {
        /// The repeated label.
        label: String,
    },
    /// Not exactly one row per universe label.
    Incomplete {
        /// Distinct labels found.
        present: usize,
    },
    /// An exclusion passed to [`generate_inventory`] that does not parse.
    BadExclusion {
        /// The offending label.
        label: String,
        /// Parse failure detail.
        source: LabelError,
    },
}

impl fmt::Display for InventoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InventoryError::BadMagic => {
                write!(f, "inventory file must start with {INVENTORY_MAGIC:?}")
            }
            InventoryError::BadRow { line, reason } => write!(f, "line {line}: {reason}"),
            InventoryError::BadLabel {
                line,
                label,
                source,
            } => {
                write!(f, "line {line}: label {label:?}: {source}")
            }
            InventoryError::DuplicateLabel { label } => {
                write!(f, "duplicate label {label:?}")
            }
            InventoryError::Incomplete { present } => write!(
                f,
                "inventory must cover all {UNIVERSE_SIZE} labels, found {present}"
            ),
            InventoryError::BadExclusion { label, source } => {
                write!(f, "invalid-label entry {label:?}: {source}")
            }
        }
    }
}

impl core::error::Error for InventoryError {}
