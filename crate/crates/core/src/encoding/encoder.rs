use super::Alphabet;
use crate::{Error, Result};

/// Input length for pinyin text.
pub const PINYIN_MAX_LENGTH: usize = 1000;
/// Input length for Chinese-character text.
pub const CHINESE_MAX_LENGTH: usize = 250;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncoderConfig {
    pub max_length: usize,
    pub reverse: bool,
}

impl EncoderConfig {
    pub fn new(max_length: usize) -> Result<Self> {
        if max_length == 0 {
            return Err(Error::invalid("max_length must be at least 1"));
        }
        Ok(EncoderConfig {
            max_length,
            reverse: true,
        })
    }
}

/// A quantised document with its 0-based class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSample {
    pub indices: Vec<u32>,
    pub label: usize,
}

impl EncodedSample {
    pub fn new(text: &str, label: usize, alphabet: &Alphabet, config: &EncoderConfig) -> Self {
        EncodedSample {
            indices: encode(text, alphabet, config),
            label,
        }
    }
}

/// Quantises `text` into exactly `max_length` indices.
///
/// The first `max_length` characters are kept, mapped to alphabet indices
/// (unknown characters become the blank index), reversed when
/// `config.reverse` is set, and right-padded with 0.
pub fn encode(text: &str, alphabet: &Alphabet, config: &EncoderConfig) -> Vec<u32> {
    let mut out: Vec<u32> = text
        .chars()
        .take(config.max_length)
        .map(|c| alphabet.index_or_blank(c))
        .collect();
    if config.reverse {
        out.reverse();
    }
    out.resize(config.max_length, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::build_pinyin_alphabet;

    #[test]
    fn reverse_then_pad() {
        let a = build_pinyin_alphabet();
        assert_eq!(
            encode("ab", &a, &EncoderConfig::new(5).unwrap()),
            vec![2, 1, 0, 0, 0]
        );
    }

    #[test]
    fn forward_order_when_not_reversed() {
        let a = build_pinyin_alphabet();
        let cfg = EncoderConfig {
            max_length: 4,
            reverse: false,
        };
        assert_eq!(encode("ab", &a, &cfg), vec![1, 2, 0, 0]);
    }

    #[test]
    fn oov_is_blank() {
        let a = build_pinyin_alphabet();
        let out = encode("a€", &a, &EncoderConfig::new(3).unwrap());
        assert_eq!(out, vec![42, 1, 0]);
    }

    #[test]
    fn truncation_keeps_prefix() {
        let a = build_pinyin_alphabet();
        let cfg = EncoderConfig::new(6).unwrap();
        let base = "zhongguo";
        assert_eq!(encode(base, &a, &cfg), encode("zhonggxxxxxxx", &a, &cfg));
        assert_eq!(encode(base, &a, &cfg).len(), 6);
        // first six chars "zhongg" reversed
        assert_eq!(a.decode(&encode(base, &a, &cfg)), "ggnohz");
    }

    #[test]
    fn empty_text_is_all_padding() {
        let a = build_pinyin_alphabet();
        assert_eq!(encode("", &a, &EncoderConfig::new(4).unwrap()), vec![0; 4]);
    }

    #[test]
    fn zero_length_rejected() {
        assert!(EncoderConfig::new(0).is_err());
    }
}
