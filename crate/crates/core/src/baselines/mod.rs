//! Bag-of-words and character n-gram baselines: raw-count or TF-IDF
//! features over a top-V training vocabulary, classified by multinomial
//! logistic regression.

mod linear;
mod ngrams;
mod vocab;

pub use linear::{predict, train_linear, LinearClassifier, LinearTrainConfig};
pub use ngrams::{extract_ngrams, extract_words, Tokenizer};
pub use vocab::{featurize, fit_vocab, FeatureVocab, SparseVector, Weighting};

/// Default vocabulary size.
pub const DEFAULT_VOCAB_SIZE: usize = 50_000;
/// Default n for the character n-gram baseline.
pub const DEFAULT_NGRAM: usize = 5;
