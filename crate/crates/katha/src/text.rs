//! Gurmukhi script handling: scalar classification, normalization, and word
//! tokenization.
//!
//! The Gurmukhi block is U+0A00–U+0A7F. The classifier knows 38 consonants
//! (32 core letters plus the 6 nukta letters ਸ਼ ਖ਼ ਗ਼ ਜ਼ ਫ਼ ਲ਼) and 10 vowels
//! (a ā i ī u ū e ai o au), each with an independent-letter form and, for all
//! but inherent 'a', a dependent sign (matra) form. Everything else falls into
//! a small set of mark, digit, separator, and catch-all classes.
//!
//! [`normalize`] rewrites two kinds of decomposed spellings to their
//! precomposed scalar: base letter + nukta (ਸ + ਼ → ਸ਼) and vowel carrier +
//! matra (ੲ + ੀ → ਈ). [`tokenize`] then splits normalized text into maximal
//! word and separator runs.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

/// Nasalization signs: tippi and bindi.
pub const TIPPI: char = '\u{0A70}';
/// See [`TIPPI`].
pub const BINDI: char = '\u{0A02}';
/// Vowel-suppression sign (halant).
pub const VIRAMA: char = '\u{0A4D}';
/// Gemination sign.
pub const ADHAK: char = '\u{0A71}';
/// Dot deriving the extended consonants.
pub const NUKTA: char = '\u{0A3C}';

const CARRIER_IRI: char = '\u{0A72}'; // ੲ
const CARRIER_URA: char = '\u{0A73}'; // ੳ

/// The 38 consonant letters: 32 core letters in alphabet order, then the 6
/// precomposed nukta letters.
const CONSONANT_CHARS: [char; 38] = [
    'ਸ', 'ਹ', // sa ha
    'ਕ', 'ਖ', 'ਗ', 'ਘ', 'ਙ', // velars
    'ਚ', 'ਛ', 'ਜ', 'ਝ', 'ਞ', // palatals
    'ਟ', 'ਠ', 'ਡ', 'ਢ', 'ਣ', // retroflexes
    'ਤ', 'ਥ', 'ਦ', 'ਧ', 'ਨ', // dentals
    'ਪ', 'ਫ', 'ਬ', 'ਭ', 'ਮ', // labials
    'ਯ', 'ਰ', 'ਲ', 'ਵ', 'ੜ', // semivowels and rra
    // Precomposed nukta letters ਸ਼ ਖ਼ ਗ਼ ਜ਼ ਫ਼ ਲ਼ (escaped: they decompose visually).
    '\u{0A36}', '\u{0A59}', '\u{0A5A}', '\u{0A5B}', '\u{0A5E}', '\u{0A33}',
];

/// One of the 38 consonant identities.
///
/// Values only exist for letters in the consonant table, so a `Consonant` is
/// always safe to serialize by code point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Consonant(char);

impl Consonant {
    /// Number of consonant identities.
    pub const COUNT: usize = CONSONANT_CHARS.len();

    /// Looks `ch` up in the consonant table.
    pub fn from_char(ch: char) -> Option<Consonant> {
        if CONSONANT_CHARS.contains(&ch) {
            Some(Consonant(ch))
        } else {
            None
        }
    }

    /// The letter itself.
    pub fn as_char(self) -> char {
        self.0
    }

    /// Unicode code point of the letter.
    pub fn code_point(self) -> u32 {
        self.0 as u32
    }

    /// All 38 consonants in table order.
    pub fn all() -> impl Iterator<Item = Consonant> {
        CONSONANT_CHARS.iter().copied().map(Consonant)
    }
}

/// One of the 10 vowel identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vowel {
    /// a (inherent / mukta)
    A,
    /// ā (kanna)
    Aa,
    /// i (sihari)
    I,
    /// ī (bihari)
    Ii,
    /// u (aunkar)
    U,
    /// ū (dulainkar)
    Uu,
    /// e (lavan)
    E,
    /// ai (dulavan)
    Ai,
    /// o (hora)
    O,
    /// au (kanaura)
    Au,
}

impl Vowel {
    /// All 10 vowels in the conventional order.
    pub const ALL: [Vowel; 10] = [
        Vowel::A,
        Vowel::Aa,
        Vowel::I,
        Vowel::Ii,
        Vowel::U,
        Vowel::Uu,
        Vowel::E,
        Vowel::Ai,
        Vowel::O,
        Vowel::Au,
    ];

    /// The independent-letter form (ਅ ਆ ਇ ...).
    pub fn independent(self) -> char {
        match self {
            Vowel::A => 'ਅ',
            Vowel::Aa => 'ਆ',
            Vowel::I => 'ਇ',
            Vowel::Ii => 'ਈ',
            Vowel::U => 'ਉ',
            Vowel::Uu => 'ਊ',
            Vowel::E => 'ਏ',
            Vowel::Ai => 'ਐ',
            Vowel::O => 'ਓ',
            Vowel::Au => 'ਔ',
        }
    }

    /// The dependent sign (matra) form; inherent 'a' has none.
    pub fn sign(self) -> Option<char> {
        match self {
            Vowel::A => None,
            Vowel::Aa => Some('ਾ'),
            Vowel::I => Some('ਿ'),
            Vowel::Ii => Some('ੀ'),
            Vowel::U => Some('ੁ'),
            Vowel::Uu => Some('ੂ'),
            Vowel::E => Some('ੇ'),
            Vowel::Ai => Some('ੈ'),
            Vowel::O => Some('ੋ'),
            Vowel::Au => Some('ੌ'),
        }
    }

    /// Maps an independent vowel letter back to its identity.
    pub fn from_independent(ch: char) -> Option<Vowel> {
        Vowel::ALL.iter().copied().find(|v| v.independent() == ch)
    }

    /// Maps a vowel sign back to its identity.
    pub fn from_sign(ch: char) -> Option<Vowel> {
        Vowel::ALL.iter().copied().find(|v| v.sign() == Some(ch))
    }
}

/// Class of a single Unicode scalar. [`classify`] is total: every scalar maps
/// to exactly one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    /// One of the 38 consonant letters.
    Consonant(Consonant),
    /// Independent vowel letter ਅ ਆ ਇ ਈ ਉ ਊ ਏ ਐ ਓ ਔ.
    IndependentVowel(Vowel),
    /// Dependent vowel sign (matra).
    VowelSign(Vowel),
    /// Tippi or bindi.
    NasalSign,
    /// Halant ੍.
    Virama,
    /// Gemination sign ੱ.
    Adhak,
    /// Combining dot ਼.
    Nukta,
    /// Gurmukhi ੦–੯ or ASCII 0–9.
    Digit,
    /// Any `char::is_whitespace` scalar.
    Whitespace,
    /// Word-breaking script punctuation: danda, double danda, and the
    /// Gurmukhi abbreviation sign.
    Punctuation,
    /// Everything else. Latin letters, Latin punctuation, emoji, and the
    /// bare vowel carriers ੲ ੳ all land here: they ride along inside word
    /// tokens and surface as segmentation diagnostics rather than breaking
    /// words.
    Other,
}

// Only the punctuation actually used to delimit Gurmukhi running text
// breaks words.
fn is_punctuation(ch: char) -> bool {
    matches!(ch, '।' | '॥' | '\u{0A76}')
}

/// Classifies a scalar. Pure and total; unknown scalars come back as
/// [`CharClass::Other`].
pub fn classify(ch: char) -> CharClass {
    if let Some(c) = Consonant::from_char(ch) {
        return CharClass::Consonant(c);
    }
    if let Some(v) = Vowel::from_independent(ch) {
        return CharClass::IndependentVowel(v);
    }
    if let Some(v) = Vowel::from_sign(ch) {
        return CharClass::VowelSign(v);
    }
    match ch {
        TIPPI | BINDI => CharClass::NasalSign,
        VIRAMA => CharClass::Virama,
        ADHAK => CharClass::Adhak,
        NUKTA => CharClass::Nukta,
        '0'..='9' | '\u{0A66}'..='\u{0A6F}' => CharClass::Digit,
        _ if ch.is_whitespace() => CharClass::Whitespace,
        _ if is_punctuation(ch) => CharClass::Punctuation,
        _ => CharClass::Other,
    }
}

// Base letter + nukta pairs that have a precomposed letter: ਸ਼ ਖ਼ ਗ਼ ਜ਼ ਫ਼ ਲ਼.
const NUKTA_COMPOSITIONS: [(char, char); 6] = [
    ('ਸ', '\u{0A36}'),
    ('ਖ', '\u{0A59}'),
    ('ਗ', '\u{0A5A}'),
    ('ਜ', '\u{0A5B}'),
    ('ਫ', '\u{0A5E}'),
    ('ਲ', '\u{0A33}'),
];

// Vowel carrier + matra pairs and their precomposed independent vowel.
const CARRIER_COMPOSITIONS: [(char, char, char); 9] = [
    ('ਅ', 'ਾ', 'ਆ'),
    ('ਅ', 'ੈ', 'ਐ'),
    ('ਅ', 'ੌ', 'ਔ'),
    (CARRIER_IRI, 'ਿ', 'ਇ'),
    (CARRIER_IRI, 'ੀ', 'ਈ'),
    (CARRIER_IRI, 'ੇ', 'ਏ'),
    (CARRIER_URA, 'ੁ', 'ਉ'),
    (CARRIER_URA, 'ੂ', 'ਊ'),
    (CARRIER_URA, 'ੋ', 'ਓ'),
];

fn compose_pair(first: char, second: char) -> Option<char> {
    if second == NUKTA {
        return NUKTA_COMPOSITIONS
            .iter()
            .find(|(base, _)| *base == first)
            .map(|(_, composed)| *composed);
    }
    CARRIER_COMPOSITIONS
        .iter()
        .find(|(carrier, sign, _)| *carrier == first && *sign == second)
        .map(|(_, _, composed)| *composed)
}

/// Rewrites decomposed spellings to their precomposed scalar: base + nukta
/// for the six nukta letters, and vowel carrier + matra for the nine
/// independent vowels written that way. All other scalars pass through.
///
/// Single left-to-right pass; composed outputs never start another pair, so
/// the function is idempotent. The output never has more scalars than the
/// input.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        match chars.peek().and_then(|&next| compose_pair(ch, next)) {
            Some(composed) => {
                out.push(composed);
                chars.next();
            }
            None => out.push(ch),
        }
    }
    out
}

/// Token kind: words carry phoneme-bearing text, separators carry the
/// whitespace and punctuation between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Maximal run of non-separator scalars.
    Word,
    /// Maximal run of whitespace and punctuation.
    Separator,
}

/// A tokenizer output span. `text` is the slice of the input covered by
/// `byte_span`; concatenating all token texts in order reproduces the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    /// Word or separator.
    pub kind: TokenKind,
    /// The covered text.
    pub text: &'a str,
    /// Byte offsets into the input.
    pub byte_span: Range<usize>,
}

fn is_separator(ch: char) -> bool {
    matches!(classify(ch), CharClass::Whitespace | CharClass::Punctuation)
}

/// Splits normalized text into alternating word and separator tokens. Token
/// spans are contiguous, disjoint, ordered, and cover the whole input; empty
/// input yields no tokens.
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = 0usize;
    let mut kind: Option<TokenKind> = None;
    for (pos, ch) in text.char_indices() {
        let this = if is_separator(ch) {
            TokenKind::Separator
        } else {
            TokenKind::Word
        };
        match kind {
            Some(k) if k == this => {}
            Some(k) => {
                tokens.push(Token {
                    kind: k,
                    text: &text[start..pos],
                    byte_span: start..pos,
                });
                start = pos;
                kind = Some(this);
            }
            None => kind = Some(this),
        }
    }
    if let Some(k) = kind {
        tokens.push(Token {
            kind: k,
            text: &text[start..],
            byte_span: start..text.len(),
        });
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn consonant_and_vowel_cardinality() {
        assert_eq!(Consonant::all().count(), 38);
        assert_eq!(Vowel::ALL.len(), 10);
        // Tables hold no duplicates.
        let mut chars: Vec<char> = Consonant::all().map(|c| c.as_char()).collect();
        chars.sort_unstable();
        chars.dedup();
        assert_eq!(chars.len(), 38);
    }

    #[test]
    fn classify_known_scalars() {
        assert_eq!(
            classify('ਦ'),
            CharClass::Consonant(Consonant::from_char('ਦ').unwrap())
        );
        assert_eq!(classify('ੀ'), CharClass::VowelSign(Vowel::Ii));
        assert_eq!(classify('\u{0A70}'), CharClass::NasalSign);
        assert_eq!(classify('\u{0A02}'), CharClass::NasalSign);
        assert_eq!(classify('ਆ'), CharClass::IndependentVowel(Vowel::Aa));
        assert_eq!(classify('੫'), CharClass::Digit);
        assert_eq!(classify('7'), CharClass::Digit);
        assert_eq!(classify(' '), CharClass::Whitespace);
        assert_eq!(classify('।'), CharClass::Punctuation);
        assert_eq!(classify('॥'), CharClass::Punctuation);
        assert_eq!(classify('x'), CharClass::Other);
        assert_eq!(classify(','), CharClass::Other);
        assert_eq!(classify('😀'), CharClass::Other);
        assert_eq!(classify(CARRIER_IRI), CharClass::Other);
    }

    #[test]
    fn classify_is_total_over_gurmukhi_block() {
        // Smoke-check the whole block plus some ASCII: no panics, one class each.
        for cp in 0x0A00..=0x0A7Fu32 {
            if let Some(ch) = char::from_u32(cp) {
                let _ = classify(ch);
            }
        }
    }

    #[test]
    fn normalize_composes_nukta() {
        assert_eq!(normalize("\u{0A38}\u{0A3C}"), "\u{0A36}");
        assert_eq!(normalize("ਜ\u{0A3C}ੀ"), "\u{0A5B}ੀ");
    }

    #[test]
    fn normalize_composes_carrier_vowels() {
        assert_eq!(normalize("ਅਾ"), "ਆ");
        assert_eq!(normalize("ੲੀ"), "ਈ");
        assert_eq!(normalize("ੳੂ"), "ਊ");
    }

    #[test]
    fn normalize_identity_on_composed_text() {
        assert_eq!(normalize("ਦੀ"), "ਦੀ");
        assert_eq!(normalize("ਹਰਦੀਪ ਸਿੰਘ"), "ਹਰਦੀਪ ਸਿੰਘ");
    }

    #[test]
    fn tokenize_splits_on_space() {
        let toks = tokenize("ਹਰਦੀਪ ਸਿੰਘ");
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[0].kind, TokenKind::Word);
        assert_eq!(toks[0].text, "ਹਰਦੀਪ");
        assert_eq!(toks[1].kind, TokenKind::Separator);
        assert_eq!(toks[1].text, " ");
        assert_eq!(toks[2].text, "ਸਿੰਘ");
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_splits_on_danda_not_latin_punctuation() {
        let toks = tokenize("ਜੀ, ਆ।");
        let kinds: Vec<TokenKind> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            [
                TokenKind::Word,
                TokenKind::Separator,
                TokenKind::Word,
                TokenKind::Separator
            ]
        );
        // The Latin comma stays inside the word; the danda separates.
        assert_eq!(toks[0].text, "ਜੀ,");
        assert_eq!(toks[1].text, " ");
        assert_eq!(toks[3].text, "।");
    }

    // Pool of scalars for random text: letters, marks, separators, junk.
    fn arbitrary_scalar() -> impl Strategy<Value = char> {
        let pool: Vec<char> = CONSONANT_CHARS
            .iter()
            .copied()
            .chain(Vowel::ALL.iter().map(|v| v.independent()))
            .chain(Vowel::ALL.iter().filter_map(|v| v.sign()))
            .chain([
                TIPPI,
                BINDI,
                VIRAMA,
                ADHAK,
                NUKTA,
                CARRIER_IRI,
                CARRIER_URA,
                ' ',
                '\n',
                '।',
                ',',
                '.',
                '7',
                '੫',
                'x',
                'Q',
                '😀',
            ])
            .collect();
        proptest::sample::select(pool)
    }

    fn arbitrary_text() -> impl Strategy<Value = String> {
        proptest::collection::vec(arbitrary_scalar(), 0..120)
            .prop_map(|chars| chars.into_iter().collect())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(text in arbitrary_text()) {
            let once = normalize(&text);
            prop_assert_eq!(normalize(&once), once.clone());
        }

        #[test]
        fn normalize_never_grows(text in arbitrary_text()) {
            prop_assert!(normalize(&text).chars().count() <= text.chars().count());
        }

        #[test]
        fn tokenize_partitions_input(text in arbitrary_text()) {
            let normalized = normalize(&text);
            let tokens = tokenize(&normalized);
            let mut rebuilt = String::new();
            let mut cursor = 0usize;
            for tok in &tokens {
                prop_assert_eq!(tok.byte_span.start, cursor);
                prop_assert_eq!(&normalized[tok.byte_span.clone()], tok.text);
                cursor = tok.byte_span.end;
                rebuilt.push_str(tok.text);
            }
            prop_assert_eq!(cursor, normalized.len());
            prop_assert_eq!(rebuilt, normalized);
        }

        #[test]
        fn word_tokens_contain_no_separators(text in arbitrary_text()) {
            let normalized = normalize(&text);
            for tok in tokenize(&normalized) {
                match tok.kind {
                    TokenKind::Word => prop_assert!(tok.text.chars().all(|c| !is_separator(c))),
                    TokenKind::Separator => prop_assert!(tok.text.chars().all(is_separator)),
                }
            }
        }
    }
}
