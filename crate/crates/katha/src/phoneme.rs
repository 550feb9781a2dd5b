//! V/CV phoneme units and word segmentation.
//!
//! A unit is either a bare vowel (V) or a consonant fused with one of the 10
//! vowels (CV); either may be nasalized. [`segment_word`] walks a word's
//! scalars left to right: an independent vowel becomes a V unit, a consonant
//! takes the following matra or else the inherent vowel 'a', and a nasal sign
//! right after a completed unit nasalizes it. Irregular input never fails —
//! the scan skips what it cannot use and records a diagnostic for each skip.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::text::{classify, CharClass, Consonant, Vowel, BINDI, TIPPI};

/// A V or CV speech unit, optionally nasalized. The atom of concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phoneme {
    consonant: Option<Consonant>,
    vowel: Vowel,
    nasal: bool,
}

impl Phoneme {
    /// A vowel-only unit.
    pub fn v(vowel: Vowel, nasal: bool) -> Phoneme {
        Phoneme {
            consonant: None,
            vowel,
            nasal,
        }
    }

    /// A consonant+vowel unit.
    pub fn cv(consonant: Consonant, vowel: Vowel, nasal: bool) -> Phoneme {
        Phoneme {
            consonant: Some(consonant),
            vowel,
            nasal,
        }
    }

    /// The consonant, absent for V units.
    pub fn consonant(&self) -> Option<Consonant> {
        self.consonant
    }

    /// The vowel; every unit has one.
    pub fn vowel(&self) -> Vowel {
        self.vowel
    }

    /// Whether the unit is nasalized.
    pub fn nasal(&self) -> bool {
        self.nasal
    }

    /// True for vowel-only units.
    pub fn is_v(&self) -> bool {
        self.consonant.is_none()
    }

    /// Canonical label, e.g. `C0A26-V0A08-O` for ਦੀ and `C----V0A06-N` for
    /// nasalized ਆ. The vowel is written as the code point of its
    /// independent-letter form; the trailing flag is `N` (nasal) or `O`
    /// (oral). Labels are injective over units and [`Phoneme::parse_label`]
    /// inverts them exactly.
    pub fn label(&self) -> String {
        let flag = if self.nasal { 'N' } else { 'O' };
        let vowel_cp = self.vowel.independent() as u32;
        match self.consonant {
            Some(c) => format!("C{:04X}-V{:04X}-{}", c.code_point(), vowel_cp, flag),
            None => format!("C----V{:04X}-{}", vowel_cp, flag),
        }
    }

    /// Parses a canonical label. Strict: only the exact shape produced by
    /// [`Phoneme::label`] (uppercase hex, known consonant and vowel code
    /// points) is accepted, so parsing doubles as a canonical-form check.
    pub fn parse_label(label: &str) -> Result<Phoneme, LabelError> {
        let bytes = label.as_bytes();
        let (consonant, rest) = if let Some(rest) = label.strip_prefix("C----") {
            (None, rest)
        } else if bytes.len() == 13 && bytes[0] == b'C' && bytes[5] == b'-' {
            let cp = parse_hex4(&label[1..5])?;
            let ch = char::from_u32(cp).ok_or(LabelError::UnknownConsonant(cp))?;
            let consonant = Consonant::from_char(ch).ok_or(LabelError::UnknownConsonant(cp))?;
            (Some(consonant), &label[6..])
        } else {
            return Err(LabelError::Malformed);
        };
        // rest is now "V<4 hex>-<N|O>".
        let rb = rest.as_bytes();
        if rb.len() != 7 || rb[0] != b'V' || rb[5] != b'-' {
            return Err(LabelError::Malformed);
        }
        let vowel_cp = parse_hex4(&rest[1..5])?;
        let vowel_ch = char::from_u32(vowel_cp).ok_or(LabelError::UnknownVowel(vowel_cp))?;
        let vowel = Vowel::from_independent(vowel_ch).ok_or(LabelError::UnknownVowel(vowel_cp))?;
        let nasal = match rb[6] {
            b'N' => true,
            b'O' => false,
            _ => return Err(LabelError::Malformed),
        };
        Ok(Phoneme {
            consonant,
            vowel,
            nasal,
        })
    }

    /// Gurmukhi rendering, informative only: consonant, matra if any, then
    /// the nasal mark. Tippi is used after a, i, u, ū and bindi after the
    /// remaining vowels, following the usual orthographic split.
    pub fn display(&self) -> String {
        let mut out = String::new();
        match self.consonant {
            Some(c) => {
                out.push(c.as_char());
                if let Some(sign) = self.vowel.sign() {
                    out.push(sign);
                }
            }
            None => out.push(self.vowel.independent()),
        }
        if self.nasal {
            out.push(
                if matches!(self.vowel, Vowel::A | Vowel::I | Vowel::U | Vowel::Uu) {
                    TIPPI
                } else {
                    BINDI
                },
            );
        }
        out
    }
}

fn parse_hex4(s: &str) -> Result<u32, LabelError> {
    if s.len() != 4
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'A'..=b'F').contains(&b))
    {
        return Err(LabelError::Malformed);
    }
    u32::from_str_radix(s, 16).map_err(|_| LabelError::Malformed)
}

/// Rejection reasons for [`Phoneme::parse_label`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelError {
    /// The text does not have the `C....-V....-X` shape.
    Malformed,
    /// The consonant code point is not one of the 38 letters.
    UnknownConsonant(u32),
    /// The vowel code point is not an independent vowel letter.
    UnknownVowel(u32),
}

impl fmt::Display for LabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelError::Malformed => write!(f, "label is not in canonical C/V form"),
            LabelError::UnknownConsonant(cp) => {
                write!(f, "U+{cp:04X} is not a consonant letter")
            }
            LabelError::UnknownVowel(cp) => {
                write!(f, "U+{cp:04X} is not an independent vowel letter")
            }
        }
    }
}

impl core::error::Error for LabelError {}

/// What kind of irregularity the segmenter skipped over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// A scalar with no role in V/CV segmentation (digits, Latin, stray
    /// nukta, bare vowel carriers, ...).
    UnclassifiedChar,
    /// A vowel sign with no consonant directly before it.
    DanglingMatra,
    /// A nasal sign with no unit ending directly before it.
    DanglingNasal,
    /// A virama was consumed; the consonant before it kept its inherent
    /// vowel because there is no bare-consonant unit.
    ViramaPolicy,
    /// An adhak was consumed without doubling anything.
    AdhakIgnored,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DiagnosticKind::UnclassifiedChar => "UnclassifiedChar",
            DiagnosticKind::DanglingMatra => "DanglingMatra",
            DiagnosticKind::DanglingNasal => "DanglingNasal",
            DiagnosticKind::ViramaPolicy => "ViramaPolicy",
            DiagnosticKind::AdhakIgnored => "AdhakIgnored",
        };
        f.write_str(name)
    }
}

/// One skipped or specially handled scalar, with its scalar offset into the
/// word and a human-readable note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationDiagnostic {
    /// Scalar (not byte) offset within the word.
    pub position: usize,
    /// Category of the irregularity.
    pub kind: DiagnosticKind,
    /// Short note naming the scalar involved.
    pub detail: String,
}

/// Output of [`segment_word`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Segmentation {
    /// Emitted units, in scalar order.
    pub phonemes: Vec<Phoneme>,
    /// Irregularities, in scalar order.
    pub diagnostics: Vec<SegmentationDiagnostic>,
}

/// Segments one word into V/CV units. Never fails; every scalar is either
/// folded into a unit or skipped with a diagnostic.
///
/// Policies for irregular input: a consonant+virama pair becomes a CV unit
/// with the inherent vowel (the virama is consumed), an adhak flushes any
/// pending consonant and is dropped, and a nasal sign attaches only when the
/// scalar directly before it completed a unit — anything else dangles.
pub fn segment_word(word: &str) -> Segmentation {
    let mut seg = Segmentation::default();
    // Consonant seen but vowel not yet decided.
    let mut pending: Option<Consonant> = None;
    // Index of a unit whose source scalars end exactly at the current scan
    // position; a nasal sign here attaches to it.
    let mut attach: Option<usize> = None;

    let flush = |pending: &mut Option<Consonant>, seg: &mut Segmentation| {
        if let Some(c) = pending.take() {
            seg.phonemes.push(Phoneme::cv(c, Vowel::A, false));
        }
    };

    for (position, ch) in word.chars().enumerate() {
        match classify(ch) {
            CharClass::Consonant(c) => {
                flush(&mut pending, &mut seg);
                pending = Some(c);
                attach = None;
            }
            CharClass::VowelSign(v) => match pending.take() {
                Some(c) => {
                    seg.phonemes.push(Phoneme::cv(c, v, false));
                    attach = Some(seg.phonemes.len() - 1);
                }
                None => {
                    seg.diagnostics.push(SegmentationDiagnostic {
                        position,
                        kind: DiagnosticKind::DanglingMatra,
                        detail: format!("vowel sign {ch:?} has no preceding consonant"),
                    });
                    attach = None;
                }
            },
            CharClass::IndependentVowel(v) => {
                flush(&mut pending, &mut seg);
                seg.phonemes.push(Phoneme::v(v, false));
                attach = Some(seg.phonemes.len() - 1);
            }
            CharClass::NasalSign => {
                if let Some(c) = pending.take() {
                    // Bare consonant + nasal: ਮੰ is ਮ with inherent 'a', nasalized.
                    seg.phonemes.push(Phoneme::cv(c, Vowel::A, true));
                    attach = None;
                } else if let Some(idx) = attach.take() {
                    seg.phonemes[idx].nasal = true;
                } else {
                    seg.diagnostics.push(SegmentationDiagnostic {
                        position,
                        kind: DiagnosticKind::DanglingNasal,
                        detail: format!("nasal sign {ch:?} has no unit to attach to"),
                    });
                }
            }
            CharClass::Virama => {
                let detail = if pending.is_some() {
                    flush(&mut pending, &mut seg);
                    String::from("virama consumed; preceding consonant keeps inherent vowel")
                } else {
                    String::from("virama with no preceding consonant")
                };
                seg.diagnostics.push(SegmentationDiagnostic {
                    position,
                    kind: DiagnosticKind::ViramaPolicy,
                    detail,
                });
                attach = None;
            }
            CharClass::Adhak => {
                flush(&mut pending, &mut seg);
                seg.diagnostics.push(SegmentationDiagnostic {
                    position,
                    kind: DiagnosticKind::AdhakIgnored,
                    detail: String::from("adhak dropped; gemination is not modelled"),
                });
                attach = None;
            }
            CharClass::Nukta
            | CharClass::Digit
            | CharClass::Whitespace
            | CharClass::Punctuation
            | CharClass::Other => {
                flush(&mut pending, &mut seg);
                seg.diagnostics.push(SegmentationDiagnostic {
                    position,
                    kind: DiagnosticKind::UnclassifiedChar,
                    detail: format!("{ch:?} plays no part in a V/CV unit"),
                });
                attach = None;
            }
        }
    }
    flush(&mut pending, &mut seg);
    seg
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn cons(ch: char) -> Consonant {
        Consonant::from_char(ch).unwrap()
    }

    fn labels(word: &str) -> Vec<String> {
        segment_word(word)
            .phonemes
            .iter()
            .map(|p| p.label())
            .collect()
    }

    #[test]
    fn segments_five_letter_word_into_four_cv_units() {
        let seg = segment_word("ਹਰਦੀਪ");
        assert_eq!(
            seg.phonemes,
            vec![
                Phoneme::cv(cons('ਹ'), Vowel::A, false),
                Phoneme::cv(cons('ਰ'), Vowel::A, false),
                Phoneme::cv(cons('ਦ'), Vowel::Ii, false),
                Phoneme::cv(cons('ਪ'), Vowel::A, false),
            ]
        );
        assert!(seg.diagnostics.is_empty());
    }

    #[test]
    fn bare_consonant_plus_tippi_nasalizes_inherent_vowel() {
        let seg = segment_word("ਮੰ");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਮ'), Vowel::A, true)]);
    }

    #[test]
    fn single_independent_vowel_is_a_v_unit() {
        let seg = segment_word("ਆ");
        assert_eq!(seg.phonemes, vec![Phoneme::v(Vowel::Aa, false)]);
    }

    // ਸਿੰਘ: ਸ+ਿ makes a CV unit, the tippi right after it nasalizes it, and
    // the final ਘ takes the inherent vowel.
    #[test]
    fn segments_singh() {
        let seg = segment_word("ਸਿੰਘ");
        assert_eq!(
            seg.phonemes,
            vec![
                Phoneme::cv(cons('ਸ'), Vowel::I, true),
                Phoneme::cv(cons('ਘ'), Vowel::A, false),
            ]
        );
        assert!(seg.diagnostics.is_empty());
    }

    #[test]
    fn leading_matra_dangles() {
        let seg = segment_word("ੀਦ");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਦ'), Vowel::A, false)]);
        assert_eq!(seg.diagnostics.len(), 1);
        assert_eq!(seg.diagnostics[0].kind, DiagnosticKind::DanglingMatra);
        assert_eq!(seg.diagnostics[0].position, 0);
    }

    #[test]
    fn double_matra_dangles() {
        let seg = segment_word("ਦੀੀ");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਦ'), Vowel::Ii, false)]);
        assert_eq!(seg.diagnostics.len(), 1);
        assert_eq!(seg.diagnostics[0].kind, DiagnosticKind::DanglingMatra);
        assert_eq!(seg.diagnostics[0].position, 2);
    }

    #[test]
    fn double_nasal_dangles() {
        let seg = segment_word("ਮੰੰ");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਮ'), Vowel::A, true)]);
        assert_eq!(seg.diagnostics.len(), 1);
        assert_eq!(seg.diagnostics[0].kind, DiagnosticKind::DanglingNasal);
    }

    #[test]
    fn nasal_after_dangling_matra_dangles_too() {
        let seg = segment_word("ਦੀੀੰ");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਦ'), Vowel::Ii, false)]);
        let kinds: Vec<DiagnosticKind> = seg.diagnostics.iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            vec![DiagnosticKind::DanglingMatra, DiagnosticKind::DanglingNasal]
        );
    }

    #[test]
    fn virama_consumed_with_inherent_vowel() {
        // ਸ੍ਰੀ: the virama is dropped, ਸ keeps 'a', ਰ takes ī.
        let seg = segment_word("ਸ੍ਰੀ");
        assert_eq!(
            seg.phonemes,
            vec![
                Phoneme::cv(cons('ਸ'), Vowel::A, false),
                Phoneme::cv(cons('ਰ'), Vowel::Ii, false),
            ]
        );
        assert_eq!(seg.diagnostics.len(), 1);
        assert_eq!(seg.diagnostics[0].kind, DiagnosticKind::ViramaPolicy);
    }

    #[test]
    fn adhak_flushes_and_is_ignored() {
        // ਪੱਕਾ: gemination dropped, units are ਪ+a and ਕ+ā.
        let seg = segment_word("ਪੱਕਾ");
        assert_eq!(
            seg.phonemes,
            vec![
                Phoneme::cv(cons('ਪ'), Vowel::A, false),
                Phoneme::cv(cons('ਕ'), Vowel::Aa, false),
            ]
        );
        assert_eq!(seg.diagnostics.len(), 1);
        assert_eq!(seg.diagnostics[0].kind, DiagnosticKind::AdhakIgnored);
    }

    #[test]
    fn digits_and_latin_are_reported_not_fatal() {
        let seg = segment_word("ਦ7x");
        assert_eq!(seg.phonemes, vec![Phoneme::cv(cons('ਦ'), Vowel::A, false)]);
        assert_eq!(seg.diagnostics.len(), 2);
        assert!(seg
            .diagnostics
            .iter()
            .all(|d| d.kind == DiagnosticKind::UnclassifiedChar));
    }

    #[test]
    fn label_examples() {
        assert_eq!(
            Phoneme::cv(cons('ਦ'), Vowel::Ii, false).label(),
            "C0A26-V0A08-O"
        );
        assert_eq!(Phoneme::v(Vowel::Aa, true).label(), "C----V0A06-N");
    }

    #[test]
    fn parse_label_rejects_junk() {
        for bad in [
            "",
            "C0A26-V0A08",
            "c0a26-v0a08-o",
            "C0A26-V0A08-X",
            "C0A26-V0A26-O", // vowel slot holds a consonant code point
            "C0A05-V0A08-O", // consonant slot holds a vowel code point
            "C----V0A08-",
            "C---V0A08-O",
            "C0A26_V0A08-O",
        ] {
            assert!(Phoneme::parse_label(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn labels_of_word_example() {
        assert_eq!(
            labels("ਹਰਦੀਪ"),
            vec![
                "C0A39-V0A05-O",
                "C0A30-V0A05-O",
                "C0A26-V0A08-O",
                "C0A2A-V0A05-O"
            ]
        );
    }

    #[test]
    fn display_renders_units() {
        assert_eq!(Phoneme::cv(cons('ਦ'), Vowel::Ii, false).display(), "ਦੀ");
        assert_eq!(Phoneme::cv(cons('ਮ'), Vowel::A, true).display(), "ਮੰ");
        assert_eq!(Phoneme::v(Vowel::Aa, true).display(), "ਆਂ");
    }

    fn word_scalar() -> impl Strategy<Value = char> {
        let pool: Vec<char> = Consonant::all()
            .map(|c| c.as_char())
            .chain(Vowel::ALL.iter().map(|v| v.independent()))
            .chain(Vowel::ALL.iter().filter_map(|v| v.sign()))
            .chain([TIPPI, BINDI, '\u{0A4D}', '\u{0A71}', '\u{0A3C}', '੫', 'x'])
            .collect();
        proptest::sample::select(pool)
    }

    fn word() -> impl Strategy<Value = String> {
        proptest::collection::vec(word_scalar(), 0..40).prop_map(|cs| cs.into_iter().collect())
    }

    proptest! {
        // Unit count never exceeds the number of consonant and independent
        // vowel scalars; every unit draws from the closed letter sets.
        #[test]
        fn unit_count_bounded_by_letter_count(w in word()) {
            let seg = segment_word(&w);
            let letters = w
                .chars()
                .filter(|&c| matches!(
                    classify(c),
                    CharClass::Consonant(_) | CharClass::IndependentVowel(_)
                ))
                .count();
            prop_assert!(seg.phonemes.len() <= letters);
        }

        // A unit is nasal only if some nasal sign follows a consonant or
        // completes a unit; conversely words without nasal signs have none.
        #[test]
        fn nasal_only_with_nasal_sign(w in word()) {
            let seg = segment_word(&w);
            let has_nasal_sign = w.chars().any(|c| classify(c) == CharClass::NasalSign);
            if !has_nasal_sign {
                prop_assert!(seg.phonemes.iter().all(|p| !p.nasal()));
            }
        }

        #[test]
        fn segmentation_is_deterministic(w in word()) {
            prop_assert_eq!(segment_word(&w), segment_word(&w));
        }

        #[test]
        fn diagnostics_lie_within_word(w in word()) {
            let n = w.chars().count();
            for d in segment_word(&w).diagnostics {
                prop_assert!(d.position < n);
            }
        }

        #[test]
        fn label_round_trips(w in word()) {
            for p in segment_word(&w).phonemes {
                prop_assert_eq!(Phoneme::parse_label(&p.label()), Ok(p));
            }
        }
    }
}
