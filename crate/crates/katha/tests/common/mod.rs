//! Shared helpers for integration tests: a tiny deterministic RNG and a
//! random Gurmukhi text generator.

#![allow(dead_code)]

use katha::text::{Consonant, Vowel, BINDI, TIPPI};

/// SplitMix64: deterministic, seedable, and good enough for test data.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// True with probability num/den.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    pub fn i16(&mut self) -> i16 {
        self.next_u64() as i16
    }
}

/// One random word of 1–5 letter groups: mostly consonant [+ matra]
/// [+ nasal], sometimes an independent vowel [+ nasal].
pub fn random_word(rng: &mut SplitMix64) -> String {
    let consonants: Vec<char> = Consonant::all().map(|c| c.as_char()).collect();
    let mut word = String::new();
    for _ in 0..(1 + rng.below(5)) {
        if rng.chance(1, 6) {
            word.push(Vowel::ALL[rng.below(10)].independent());
        } else {
            word.push(consonants[rng.below(consonants.len())]);
            if rng.chance(1, 2) {
                if let Some(sign) = Vowel::ALL[rng.below(10)].sign() {
                    word.push(sign);
                }
            }
        }
        if rng.chance(1, 5) {
            word.push(if rng.chance(1, 2) { TIPPI } else { BINDI });
        }
    }
    word
}

/// A space-separated text of `words` random words.
pub fn random_text(rng: &mut SplitMix64, words: usize) -> String {
    (0..words)
        .map(|_| random_word(rng))
        .collect::<Vec<_>>()
        .join(" ")
}
