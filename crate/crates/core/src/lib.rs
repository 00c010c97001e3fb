//! Character-level convolutional text classification.
//!
//! The crate covers the whole pipeline: turning raw text (Chinese characters
//! or pinyin) into fixed-length index sequences, a small ConvNet with
//! hand-written forward and backward passes, Adam training, dataset
//! construction from labeled news dumps, pinyin transliteration, and
//! bag-of-words / n-gram baselines.
//!
//! ```
//! use charcnn_core::encoding::{build_pinyin_alphabet, encode, EncoderConfig};
//!
//! let alphabet = build_pinyin_alphabet();
//! let config = EncoderConfig::new(5).unwrap();
//! assert_eq!(encode("ab", &alphabet, &config), vec![2, 1, 0, 0, 0]);
//! ```

// NaN-rejecting checks are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod corpus;
pub mod encoding;
mod error;
pub mod model;
pub mod nn;
pub mod pinyin;
mod tensor;

pub use error::{Error, Result};
pub use tensor::Tensor2D;

pub use encoding::{Alphabet, EmbeddingTable, EncoderConfig};
pub use model::{Layout, ModelConfig, ModelParams, TrainConfig};
pub use pinyin::{Format, Lexicon, PinyinTable};
