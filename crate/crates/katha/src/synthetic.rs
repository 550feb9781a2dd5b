//! Deterministic synthetic corpus: a recording in which every valid phoneme
//! owns a sine burst at its own frequency, plus the matching unit database.
//!
//! The i-th valid phoneme (label order) gets a burst at `200 + 10·i` Hz at
//! half full scale, `unit_ms` long, with `guard_ms` of silence before and
//! after every burst. Guards keep adjacent spans from touching, so slicing
//! off by even one sample shows up as leading or trailing silence, and
//! [`identify_unit`] can decode any correctly cut slice back to its label.
//! That makes full-pipeline output machine-checkable: synthesize, cut the
//! output at unit boundaries, identify each piece, compare to the segmenter.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use crate::audio::{ms_to_samples, AudioClip, TimeSpan};
use crate::inventory::PhonemeInventory;
use crate::unitdb::{CorpusId, UnitDatabase, UnitEntry};

const BASE_FREQUENCY_HZ: f64 = 200.0;
const FREQUENCY_STEP_HZ: f64 = 10.0;
const BURST_AMPLITUDE: f64 = 16384.0; // half of full scale
const MATCH_TOLERANCE_HZ: f64 = 2.0;

/// Layout of the synthetic corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusPlan {
    /// Burst length per phoneme, milliseconds.
    pub unit_ms: u32,
    /// Silence between bursts, milliseconds.
    pub guard_ms: u32,
    /// Samples per second.
    pub sample_rate: u32,
    /// Determinism tag; stamped into the generated corpus id.
    pub seed: u64,
}

impl Default for CorpusPlan {
    fn default() -> CorpusPlan {
        CorpusPlan {
            unit_ms: 80,
            guard_ms: 20,
            sample_rate: crate::audio::CANONICAL_SAMPLE_RATE,
            seed: 0,
        }
    }
}

/// Generation failures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenerateError {
    /// A plan field outside its domain.
    InvalidPlan(&'static str),
    /// No valid phonemes to lay out.
    EmptyInventory,
    /// The highest assigned frequency would reach the Nyquist limit.
    FrequencyAboveNyquist {
        /// Highest frequency the inventory needs.
        max_hz: f64,
        /// Nyquist limit of the plan's rate.
        limit_hz: f64,
    },
}

impl fmt::Display for GenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerateError::InvalidPlan(reason) => write!(f, "invalid corpus plan: {reason}"),
            GenerateError::EmptyInventory => write!(f, "inventory has no valid phonemes"),
            GenerateError::FrequencyAboveNyquist { max_hz, limit_hz } => write!(
                f,
                "inventory needs frequencies up to {max_hz} Hz, at or above Nyquist {limit_hz} Hz"
            ),
        }
    }
}

impl core::error::Error for GenerateError {}

/// Lays out one burst per valid phoneme and returns the corpus clip together
/// with the database mapping each label to its burst's exact span. Fully
/// deterministic for a given inventory and plan.
pub fn generate(
    inventory: &PhonemeInventory,
    plan: &CorpusPlan,
) -> Result<(AudioClip, UnitDatabase), GenerateError> {
    if plan.sample_rate == 0 {
        return Err(GenerateError::InvalidPlan("sample rate must be nonzero"));
    }
    if plan.unit_ms == 0 {
        return Err(GenerateError::InvalidPlan("unit length must be nonzero"));
    }
    let rate = plan.sample_rate;
    let unit_len = ms_to_samples(plan.unit_ms, rate);
    let guard_len = ms_to_samples(plan.guard_ms, rate);
    if unit_len == 0 {
        return Err(GenerateError::InvalidPlan(
            "unit length rounds to zero samples at this rate",
        ));
    }

    let labels: Vec<&str> = inventory.valid_labels().collect();
    if labels.is_empty() {
        return Err(GenerateError::EmptyInventory);
    }
    let max_hz = frequency_of(labels.len() - 1);
    let limit_hz = rate as f64 / 2.0;
    if max_hz >= limit_hz {
        return Err(GenerateError::FrequencyAboveNyquist { max_hz, limit_hz });
    }

    let total = labels.len() * unit_len + (labels.len() + 1) * guard_len;
    let mut samples: Vec<i16> = Vec::with_capacity(total);
    let mut entries = Vec::with_capacity(labels.len());

    samples.resize(guard_len, 0);
    for (index, label) in labels.iter().enumerate() {
        let frequency = frequency_of(index);
        let start_sample = samples.len();
        for n in 0..unit_len {
            let argument = TAU * frequency * n as f64 / rate as f64;
            samples.push(libm::round(BURST_AMPLITUDE * libm::sin(argument)) as i16);
        }
        samples.resize(samples.len() + guard_len, 0);
        let span = TimeSpan::new(
            start_sample as f64 / rate as f64,
            (start_sample + unit_len) as f64 / rate as f64,
        )
        .expect("burst spans are nonempty by construction");
        entries.push(UnitEntry {
            label: label.to_string(),
            display: inventory
                .get(label)
                .map(|e| e.display.clone())
                .unwrap_or_default(),
            span,
        });
    }

    let corpus_id = CorpusId {
        file_name: alloc::format!("synthetic-seed{}.wav", plan.seed),
        sample_rate: rate,
    };
    let db = UnitDatabase::from_entries(corpus_id, entries)
        .expect("valid labels are canonical and unique");
    Ok((AudioClip::new(samples, rate), db))
}

fn frequency_of(index: usize) -> f64 {
    BASE_FREQUENCY_HZ + FREQUENCY_STEP_HZ * index as f64
}

/// Decodes one burst-length slice back to its phoneme label by dominant
/// frequency. The frequency is estimated from interpolated zero crossings;
/// if no assigned frequency lies within ±2 Hz of the estimate (or the slice
/// has too few crossings, e.g. silence), the result is `None`.
pub fn identify_unit(
    clip: &AudioClip,
    plan: &CorpusPlan,
    inventory: &PhonemeInventory,
) -> Option<String> {
    if clip.sample_rate() != plan.sample_rate {
        return None;
    }
    let estimate = dominant_frequency(clip)?;
    let labels: Vec<&str> = inventory.valid_labels().collect();
    let slot = libm::round((estimate - BASE_FREQUENCY_HZ) / FREQUENCY_STEP_HZ);
    if slot < 0.0 || slot >= labels.len() as f64 {
        return None;
    }
    let index = slot as usize;
    if (estimate - frequency_of(index)).abs() <= MATCH_TOLERANCE_HZ {
        Some(labels[index].to_string())
    } else {
        None
    }
}

// Mean half-period between the first and last sign change, with linear
// interpolation at each crossing. Exact runs of zero samples put the
// crossing at the run's midpoint.
fn dominant_frequency(clip: &AudioClip) -> Option<f64> {
    let samples = clip.samples();
    let mut last_sign = 0i8;
    let mut last_index = 0usize;
    let mut first_crossing: Option<f64> = None;
    let mut last_crossing = 0.0f64;
    let mut crossings = 0usize;

    for (index, &value) in samples.iter().enumerate() {
        let sign = match value {
            v if v > 0 => 1i8,
            v if v < 0 => -1i8,
            _ => continue,
        };
        if last_sign != 0 && sign != last_sign {
            let position = if index == last_index + 1 {
                let a = samples[last_index] as f64;
                let b = value as f64;
                last_index as f64 + a / (a - b)
            } else {
                (last_index + index) as f64 / 2.0
            };
            crossings += 1;
            if first_crossing.is_none() {
                first_crossing = Some(position);
            }
            last_crossing = position;
        }
        last_sign = sign;
        last_index = index;
    }

    let first = first_crossing?;
    if crossings < 2 || last_crossing <= first {
        return None;
    }
    let half_periods = (crossings - 1) as f64;
    Some(clip.sample_rate() as f64 * half_periods / (2.0 * (last_crossing - first)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::slice;
    use crate::inventory::generate_inventory;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    // Inventory with exactly `keep` valid phonemes (label order).
    fn small_inventory(keep: usize) -> PhonemeInventory {
        let all = PhonemeInventory::all_valid();
        let excluded: BTreeSet<String> = all
            .entries()
            .skip(keep)
            .map(|(label, _)| label.to_string())
            .collect();
        generate_inventory(&excluded).unwrap()
    }

    #[test]
    fn single_phoneme_layout_matches_plan_arithmetic() {
        let inventory = small_inventory(1);
        let plan = CorpusPlan::default();
        let (corpus, db) = generate(&inventory, &plan).unwrap();
        // 20 ms + 80 ms + 20 ms at 44100 Hz.
        assert_eq!(corpus.len(), 882 + 3528 + 882);
        assert_eq!(db.len(), 1);
        let entry = db.entries().next().unwrap();
        assert_eq!(entry.span.start_sec(), 882.0 / 44100.0);
        assert_eq!(entry.span.end_sec(), 4410.0 / 44100.0);
        assert!((entry.span.start_sec() - 0.020).abs() < 1e-12);
        assert!((entry.span.end_sec() - 0.100).abs() < 1e-12);
    }

    #[test]
    fn generated_db_validates_cleanly() {
        let inventory = small_inventory(25);
        let (corpus, db) = generate(&inventory, &CorpusPlan::default()).unwrap();
        assert!(db.validate(&corpus, Some(&inventory)).is_empty());
    }

    #[test]
    fn generation_is_deterministic() {
        let inventory = small_inventory(10);
        let plan = CorpusPlan::default();
        let (corpus_a, db_a) = generate(&inventory, &plan).unwrap();
        let (corpus_b, db_b) = generate(&inventory, &plan).unwrap();
        assert_eq!(corpus_a, corpus_b);
        assert_eq!(db_a.save(), db_b.save());
    }

    #[test]
    fn identify_recovers_each_generated_unit() {
        let inventory = small_inventory(40);
        let plan = CorpusPlan::default();
        let (corpus, db) = generate(&inventory, &plan).unwrap();
        for entry in db.entries() {
            let cut = slice(&corpus, entry.span).unwrap();
            assert_eq!(
                identify_unit(&cut, &plan, &inventory).as_deref(),
                Some(entry.label.as_str()),
                "failed for {}",
                entry.label
            );
        }
    }

    #[test]
    fn identify_index_24_is_440_hz() {
        // f_24 = 200 + 240 = 440 Hz: a plain 440 Hz burst decodes to the
        // 25th valid label.
        let inventory = small_inventory(40);
        let plan = CorpusPlan::default();
        let rate = plan.sample_rate;
        let unit_len = 3528usize;
        let burst: Vec<i16> = (0..unit_len)
            .map(|n| libm::round(16384.0 * libm::sin(TAU * 440.0 * n as f64 / rate as f64)) as i16)
            .collect();
        let clip = AudioClip::new(burst, rate);
        let expected = inventory.valid_labels().nth(24).unwrap();
        assert_eq!(
            identify_unit(&clip, &plan, &inventory).as_deref(),
            Some(expected)
        );
    }

    #[test]
    fn identify_rejects_silence_and_off_grid_tones() {
        let inventory = small_inventory(10);
        let plan = CorpusPlan::default();
        let silence = AudioClip::new(vec![0; 3528], plan.sample_rate);
        assert_eq!(identify_unit(&silence, &plan, &inventory), None);

        // 205 Hz sits 5 Hz from both neighbours, outside the ±2 Hz gate.
        let off: Vec<i16> = (0..3528)
            .map(|n| libm::round(16384.0 * libm::sin(TAU * 205.0 * n as f64 / 44100.0)) as i16)
            .collect();
        assert_eq!(
            identify_unit(&AudioClip::new(off, 44100), &plan, &inventory),
            None
        );

        // A frequency beyond the last assigned slot is rejected too.
        let beyond: Vec<i16> = (0..3528)
            .map(|n| libm::round(16384.0 * libm::sin(TAU * 500.0 * n as f64 / 44100.0)) as i16)
            .collect();
        assert_eq!(
            identify_unit(&AudioClip::new(beyond, 44100), &plan, &inventory),
            None
        );
    }

    #[test]
    fn full_universe_duration_arithmetic() {
        let inventory = PhonemeInventory::all_valid();
        let plan = CorpusPlan::default();
        let (corpus, db) = generate(&inventory, &plan).unwrap();
        assert_eq!(db.len(), 780);
        assert_eq!(corpus.len(), 780 * 3528 + 781 * 882);
        let expected_sec = 780.0 * 0.080 + 781.0 * 0.020;
        assert!((corpus.duration_seconds() - expected_sec).abs() < 1e-9);
    }

    #[test]
    fn nyquist_guard() {
        let inventory = PhonemeInventory::all_valid();
        // 780 phonemes need up to 7990 Hz; a 4 kHz rate cannot host them.
        let plan = CorpusPlan {
            sample_rate: 4000,
            ..CorpusPlan::default()
        };
        assert!(matches!(
            generate(&inventory, &plan),
            Err(GenerateError::FrequencyAboveNyquist { .. })
        ));
    }

    #[test]
    fn empty_and_invalid_plans_rejected() {
        let none = small_inventory(0);
        assert_eq!(
            generate(&none, &CorpusPlan::default()),
            Err(GenerateError::EmptyInventory)
        );
        let inventory = small_inventory(1);
        let plan = CorpusPlan {
            unit_ms: 0,
            ..CorpusPlan::default()
        };
        assert!(matches!(
            generate(&inventory, &plan),
            Err(GenerateError::InvalidPlan(_))
        ));
    }
}
