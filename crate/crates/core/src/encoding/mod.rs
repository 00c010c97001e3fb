//! Alphabets, fixed-length quantisation of text and the embedding lookup.

mod alphabet;
mod embedding;
mod encoder;

pub use alphabet::{build_corpus_alphabet, build_pinyin_alphabet, Alphabet, BLANK, PINYIN_SYMBOLS};
pub use embedding::{
    embed_backward, embed_forward, EmbeddingGrad, EmbeddingTable, DEFAULT_EMBED_DIM,
};
pub use encoder::{encode, EncodedSample, EncoderConfig, CHINESE_MAX_LENGTH, PINYIN_MAX_LENGTH};
