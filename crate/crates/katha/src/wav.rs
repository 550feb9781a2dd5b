//! RIFF/WAVE PCM codec for the corpus format: 16-bit little-endian mono.
//!
//! The reader tolerates extra chunks (LIST, fact, ...) and either fmt/data
//! order; the writer always emits the canonical 44-byte layout, so
//! `write_wav(read_wav(f))` is byte-identical for canonically laid-out
//! files and `read_wav(write_wav(c))` returns `c` exactly.

use alloc::vec::Vec;
use core::fmt;

use crate::audio::AudioClip;

/// Rejection reasons for WAV decoding and encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavError {
    /// Not a RIFF container with a WAVE tag.
    NotWav,
    /// fmt chunk carries a compressed or otherwise non-PCM format tag.
    UnsupportedFormatTag(u16),
    /// Bits per sample other than 16.
    UnsupportedBitDepth(u16),
    /// Channel count other than 1.
    UnsupportedChannels(u16),
    /// fmt chunk declares a zero sample rate.
    InvalidSampleRate,
    /// A chunk (header or body) extends past the available bytes, or the
    /// data chunk holds a torn final sample.
    Truncated,
    /// No fmt chunk.
    MissingFmt,
    /// No data chunk.
    MissingData,
    /// Clip too long for the format's 32-bit size fields.
    TooLong,
}

impl fmt::Display for WavError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WavError::NotWav => write!(f, "not a RIFF/WAVE file"),
            WavError::UnsupportedFormatTag(tag) => {
                write!(f, "format tag {tag} is not uncompressed PCM")
            }
            WavError::UnsupportedBitDepth(bits) => {
                write!(f, "bit depth {bits} unsupported, expected 16")
            }
            WavError::UnsupportedChannels(n) => {
                write!(f, "{n} channels unsupported, expected mono")
            }
            WavError::InvalidSampleRate => write!(f, "sample rate must be nonzero"),
            WavError::Truncated => write!(f, "file ends inside a declared chunk"),
            WavError::MissingFmt => write!(f, "no fmt chunk"),
            WavError::MissingData => write!(f, "no data chunk"),
            WavError::TooLong => write!(f, "clip exceeds 32-bit RIFF size fields"),
        }
    }
}

impl core::error::Error for WavError {}

const PCM_FORMAT_TAG: u16 = 1;
const HEADER_LEN: usize = 44;

fn u16_at(bytes: &[u8], offset: usize) -> u16 {
    u16::from_le_bytes([bytes[offset], bytes[offset + 1]])
}

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes([
        bytes[offset],
        bytes[offset + 1],
        bytes[offset + 2],
        bytes[offset + 3],
    ])
}

/// Decodes a PCM 16-bit mono RIFF/WAVE file.
pub fn read_wav(bytes: &[u8]) -> Result<AudioClip, WavError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(WavError::NotWav);
    }
    let mut offset = 12usize;
    let mut sample_rate: Option<u32> = None;
    let mut data: Option<&[u8]> = None;
    while offset < bytes.len() {
        if bytes.len() - offset < 8 {
            return Err(WavError::Truncated);
        }
        let id = &bytes[offset..offset + 4];
        let size = u32_at(bytes, offset + 4) as usize;
        let body_start = offset + 8;
        if bytes.len() - body_start < size {
            return Err(WavError::Truncated);
        }
        let body = &bytes[body_start..body_start + size];
        match id {
            b"fmt " if sample_rate.is_none() => {
                if size < 16 {
                    return Err(WavError::Truncated);
                }
                let format_tag = u16_at(body, 0);
                if format_tag != PCM_FORMAT_TAG {
                    return Err(WavError::UnsupportedFormatTag(format_tag));
                }
                let channels = u16_at(body, 2);
                if channels != 1 {
                    return Err(WavError::UnsupportedChannels(channels));
                }
                let bits = u16_at(body, 14);
                if bits != 16 {
                    return Err(WavError::UnsupportedBitDepth(bits));
                }
                let rate = u32_at(body, 4);
                if rate == 0 {
                    return Err(WavError::InvalidSampleRate);
                }
                sample_rate = Some(rate);
            }
            b"data" if data.is_none() => {
                if !size.is_multiple_of(2) {
                    return Err(WavError::Truncated);
                }
                data = Some(body);
            }
            _ => {} // skip LIST, fact, and friends
        }
        // Chunk bodies are padded to even length.
        offset = body_start + size + (size % 2);
    }
    let rate = sample_rate.ok_or(WavError::MissingFmt)?;
    let body = data.ok_or(WavError::MissingData)?;
    let samples = body
        .chunks_exact(2)
        .map(|pair| i16::from_le_bytes([pair[0], pair[1]]))
        .collect();
    Ok(AudioClip::new(samples, rate))
}

/// Encodes a clip as a canonical RIFF/WAVE file: 44-byte header (16-byte fmt
/// chunk, then data), PCM 16-bit mono, little-endian, sizes exact, no extra
/// chunks or padding.
pub fn write_wav(clip: &AudioClip) -> Result<Vec<u8>, WavError> {
    let data_size = (clip.len() as u64)
        .checked_mul(2)
        .ok_or(WavError::TooLong)?;
    if data_size > (u32::MAX - 36) as u64 {
        return Err(WavError::TooLong);
    }
    let data_size = data_size as u32;
    let byte_rate = clip.sample_rate().checked_mul(2).ok_or(WavError::TooLong)?;

    let mut out = Vec::with_capacity(HEADER_LEN + data_size as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_size).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&PCM_FORMAT_TAG.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&clip.sample_rate().to_le_bytes());
    out.extend_from_slice(&byte_rate.to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_size.to_le_bytes());
    for sample in clip.samples() {
        out.extend_from_slice(&sample.to_le_bytes());
    }
    Ok(out)
}
