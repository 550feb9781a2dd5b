//! Mono 16-bit PCM clips and the sample-exact operations over them.
//!
//! Seconds convert to sample indices by round-half-up at both ends of a
//! half-open interval; that rule is the single convention the whole toolkit
//! relies on for reproducible slicing. No operation ever changes a sample
//! value — audio is only selected and juxtaposed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

/// The corpus recording format's sample rate.
pub const CANONICAL_SAMPLE_RATE: u32 = 44100;

/// A mono sequence of signed 16-bit samples at a fixed rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AudioClip {
    samples: Vec<i16>,
    sample_rate: u32,
}

impl AudioClip {
    /// Wraps samples at the given rate.
    ///
    /// `sample_rate` must be nonzero; that is a constructor contract, not a
    /// runtime condition, so violation panics.
    pub fn new(samples: Vec<i16>, sample_rate: u32) -> AudioClip {
        assert!(sample_rate > 0, "sample rate must be nonzero");
        AudioClip {
            samples,
            sample_rate,
        }
    }

    /// A zero-sample clip.
    pub fn empty(sample_rate: u32) -> AudioClip {
        AudioClip::new(Vec::new(), sample_rate)
    }

    /// The samples.
    pub fn samples(&self) -> &[i16] {
        &self.samples
    }

    /// Consumes the clip, returning its samples.
    pub fn into_samples(self) -> Vec<i16> {
        self.samples
    }

    /// Samples per second.
    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// True when there are no samples.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Length divided by rate.
    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// A half-open time interval in seconds, `0 <= start < end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSpan {
    start_sec: f64,
    end_sec: f64,
}

impl TimeSpan {
    /// Validates and builds a span. Both endpoints must be finite,
    /// non-negative, and strictly ordered.
    pub fn new(start_sec: f64, end_sec: f64) -> Result<TimeSpan, AudioError> {
        if !(start_sec.is_finite()
            && end_sec.is_finite()
            && 0.0 <= start_sec
            && start_sec < end_sec)
        {
            return Err(AudioError::InvalidSpan { start_sec, end_sec });
        }
        Ok(TimeSpan { start_sec, end_sec })
    }

    /// Start, seconds.
    pub fn start_sec(&self) -> f64 {
        self.start_sec
    }

    /// End, seconds.
    pub fn end_sec(&self) -> f64 {
        self.end_sec
    }

    /// End minus start.
    pub fn duration_sec(&self) -> f64 {
        self.end_sec - self.start_sec
    }
}

/// Failures of the sample-domain operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AudioError {
    /// Span endpoints not finite, negative, or not strictly ordered.
    InvalidSpan {
        /// Offending start.
        start_sec: f64,
        /// Offending end.
        end_sec: f64,
    },
    /// Span ends past the end of the clip.
    SpanOutOfRange {
        /// Rounded end sample.
        end_sample: usize,
        /// Samples in the clip.
        clip_len: usize,
    },
    /// Concatenation input clips disagree on rate.
    MixedSampleRates {
        /// Rate of the first clip.
        first: u32,
        /// The disagreeing rate.
        other: u32,
    },
}

impl fmt::Display for AudioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AudioError::InvalidSpan { start_sec, end_sec } => {
                write!(f, "invalid time span {start_sec}..{end_sec}")
            }
            AudioError::SpanOutOfRange {
                end_sample,
                clip_len,
            } => write!(
                f,
                "span ends at sample {end_sample} but clip has {clip_len}"
            ),
            AudioError::MixedSampleRates { first, other } => {
                write!(f, "mixed sample rates {first} and {other}")
            }
        }
    }
}

impl core::error::Error for AudioError {}

// Round-half-up for non-negative values; saturates on overflow, which the
// range check downstream turns into SpanOutOfRange.
fn sample_index(sec: f64, rate: u32) -> usize {
    (sec * rate as f64 + 0.5) as usize
}

/// Converts a span to the half-open sample range it selects in a clip of
/// `len` samples at `rate`.
pub(crate) fn span_to_range(
    span: TimeSpan,
    rate: u32,
    len: usize,
) -> Result<Range<usize>, AudioError> {
    let start = sample_index(span.start_sec(), rate);
    let end = sample_index(span.end_sec(), rate);
    if end > len {
        return Err(AudioError::SpanOutOfRange {
            end_sample: end,
            clip_len: len,
        });
    }
    Ok(start..end)
}

/// Copies out the samples a span selects. A span that rounds to zero samples
/// yields an empty clip.
pub fn slice(clip: &AudioClip, span: TimeSpan) -> Result<AudioClip, AudioError> {
    let range = span_to_range(span, clip.sample_rate(), clip.len())?;
    Ok(AudioClip::new(
        clip.samples()[range].to_vec(),
        clip.sample_rate(),
    ))
}

/// Juxtaposes clips in order. No resampling, gain change, or crossfade; all
/// inputs must share one rate. An empty input list yields an empty clip at
/// the canonical rate.
pub fn concat(clips: &[AudioClip]) -> Result<AudioClip, AudioError> {
    let rate = match clips.first() {
        None => return Ok(AudioClip::empty(CANONICAL_SAMPLE_RATE)),
        Some(first) => first.sample_rate(),
    };
    let mut samples = Vec::with_capacity(clips.iter().map(AudioClip::len).sum());
    for clip in clips {
        if clip.sample_rate() != rate {
            return Err(AudioError::MixedSampleRates {
                first: rate,
                other: clip.sample_rate(),
            });
        }
        samples.extend_from_slice(clip.samples());
    }
    Ok(AudioClip::new(samples, rate))
}

/// Milliseconds to whole samples, rounding half up.
pub(crate) fn ms_to_samples(ms: u32, rate: u32) -> usize {
    ((ms as u64 * rate as u64 + 500) / 1000) as usize
}

/// A run of zero samples covering `duration_ms` at `sample_rate`.
pub fn silence(duration_ms: u32, sample_rate: u32) -> AudioClip {
    AudioClip::new(
        vec![0; ms_to_samples(duration_ms, sample_rate)],
        sample_rate,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ramp(len: usize, rate: u32) -> AudioClip {
        AudioClip::new((0..len).map(|i| (i % 30000) as i16).collect(), rate)
    }

    #[test]
    fn slice_half_second_window() {
        let clip = ramp(88200, 44100);
        let span = TimeSpan::new(0.5, 1.0).unwrap();
        let out = slice(&clip, span).unwrap();
        assert_eq!(out.len(), 22050);
        assert_eq!(out.samples(), &clip.samples()[22050..44100]);
    }

    #[test]
    fn slice_whole_clip_is_identity() {
        let clip = ramp(4410, 44100);
        let span = TimeSpan::new(0.0, clip.duration_seconds()).unwrap();
        assert_eq!(slice(&clip, span).unwrap(), clip);
    }

    #[test]
    fn slice_past_end_errors() {
        let clip = ramp(44100, 44100);
        let span = TimeSpan::new(0.0, 2.0).unwrap();
        assert_eq!(
            slice(&clip, span),
            Err(AudioError::SpanOutOfRange {
                end_sample: 88200,
                clip_len: 44100
            })
        );
    }

    #[test]
    fn invalid_spans_rejected() {
        assert!(TimeSpan::new(1.0, 1.0).is_err());
        assert!(TimeSpan::new(1.0, 0.5).is_err());
        assert!(TimeSpan::new(-0.1, 0.5).is_err());
        assert!(TimeSpan::new(0.0, f64::NAN).is_err());
        assert!(TimeSpan::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn concat_empty_and_singleton() {
        let empty = concat(&[]).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.sample_rate(), CANONICAL_SAMPLE_RATE);
        let a = ramp(100, 22050);
        assert_eq!(concat(core::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn concat_mixed_rates_errors() {
        let a = ramp(10, 44100);
        let b = ramp(10, 22050);
        assert_eq!(
            concat(&[a, b]),
            Err(AudioError::MixedSampleRates {
                first: 44100,
                other: 22050
            })
        );
    }

    #[test]
    fn silence_sample_counts() {
        assert_eq!(silence(0, 44100).len(), 0);
        assert_eq!(silence(1000, 44100).len(), 44100);
        assert_eq!(silence(100, 44100).len(), 4410);
        assert!(silence(100, 44100).samples().iter().all(|&s| s == 0));
    }

    proptest! {
        // Slice length always equals the difference of the rounded endpoints.
        #[test]
        fn slice_length_matches_rounding(
            len in 0usize..200_000,
            a in 0.0f64..2.0,
            b in 0.0f64..2.0,
        ) {
            prop_assume!(a != b);
            let (start, end) = if a < b { (a, b) } else { (b, a) };
            let rate = 44100u32;
            let clip = ramp(len, rate);
            let span = TimeSpan::new(start, end).unwrap();
            let expected_end = (end * rate as f64 + 0.5) as usize;
            let expected_start = (start * rate as f64 + 0.5) as usize;
            match slice(&clip, span) {
                Ok(out) => {
                    prop_assert!(expected_end <= len);
                    prop_assert_eq!(out.len(), expected_end - expected_start);
                }
                Err(AudioError::SpanOutOfRange { .. }) => prop_assert!(expected_end > len),
                Err(other) => prop_assert!(false, "unexpected error {other:?}"),
            }
        }

        // concat equals direct sequence append and is associative.
        #[test]
        fn concat_matches_manual_append(
            xs in proptest::collection::vec(any::<i16>(), 0..200),
            ys in proptest::collection::vec(any::<i16>(), 0..200),
            zs in proptest::collection::vec(any::<i16>(), 0..200),
        ) {
            let rate = 8000;
            let a = AudioClip::new(xs.clone(), rate);
            let b = AudioClip::new(ys.clone(), rate);
            let c = AudioClip::new(zs.clone(), rate);
            let mut manual = xs.clone();
            manual.extend_from_slice(&ys);
            manual.extend_from_slice(&zs);
            let abc = concat(&[a.clone(), b.clone(), c.clone()]).unwrap();
            prop_assert_eq!(abc.samples(), &manual[..]);
            let ab_c = concat(&[concat(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
            let a_bc = concat(&[a, concat(&[b, c]).unwrap()]).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            prop_assert_eq!(ab_c.samples(), &manual[..]);
        }

        // Slicing adjacent spans and concatenating equals slicing the union.
        #[test]
        fn adjacent_slices_concat_to_union(
            mids in proptest::collection::vec(0.0f64..1.0, 1..4),
        ) {
            let rate = 44100u32;
            let clip = ramp(44100, rate);
            let mut points: alloc::vec::Vec<f64> = mids;
            points.sort_by(|x, y| x.partial_cmp(y).unwrap());
            points.insert(0, 0.0);
            points.push(1.0);
            points.dedup();
            prop_assume!(points.len() >= 2);
            let mut parts = alloc::vec::Vec::new();
            for pair in points.windows(2) {
                if let Ok(span) = TimeSpan::new(pair[0], pair[1]) {
                    parts.push(slice(&clip, span).unwrap());
                }
            }
            prop_assume!(points.first() == Some(&0.0) && points.last() == Some(&1.0));
            let whole = slice(&clip, TimeSpan::new(0.0, 1.0).unwrap()).unwrap();
            prop_assert_eq!(concat(&parts).unwrap(), whole);
        }
    }
}
