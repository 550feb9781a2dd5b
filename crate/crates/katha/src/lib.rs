//! Concatenative text-to-speech toolkit for Punjabi written in Gurmukhi
//! script.
//!
//! The pipeline: normalize the input and split it into word tokens, segment
//! each word into V/CV phoneme units, look every unit up in a database
//! mapping phoneme labels to time spans inside one corpus recording, slice
//! those spans out of the corpus, and concatenate the slices into the output
//! waveform. Units play exactly as recorded — no prosody, no resampling, no
//! crossfading — and anything that cannot be resolved is skipped and
//! reported, never fatal.
//!
//! The crate is `no_std` (with `alloc`): every operation here is a pure
//! transformation over text, bytes, or samples. File handling and the
//! command-line front end live in the companion `katha-cli` crate.
//!
//! ```
//! use katha::inventory::PhonemeInventory;
//! use katha::synth::{synthesize, SynthesisOptions};
//! use katha::synthetic::{generate, CorpusPlan};
//!
//! let inventory = PhonemeInventory::all_valid();
//! let (corpus, db) = generate(&inventory, &CorpusPlan::default()).unwrap();
//! let (clip, report) = synthesize("ਹਰਦੀਪ", &db, &corpus, &SynthesisOptions::default()).unwrap();
//! assert_eq!(report.units_emitted, 4);
//! assert_eq!(clip.len(), 4 * 3528);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod audio;
pub mod inventory;
pub mod phoneme;
pub mod synth;
pub mod synthetic;
pub mod text;
pub mod unitdb;
pub mod wav;

pub use audio::{AudioClip, TimeSpan, CANONICAL_SAMPLE_RATE};
pub use inventory::PhonemeInventory;
pub use phoneme::{segment_word, Phoneme};
pub use synth::{synthesize, synthesize_streaming, SynthesisOptions, SynthesisReport};
pub use unitdb::UnitDatabase;
