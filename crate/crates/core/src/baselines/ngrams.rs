use crate::pinyin::{segment, Lexicon};
use crate::{Error, Result};

/// All contiguous character n-grams of `text`, with multiplicity, in order.
pub fn extract_ngrams(text: &str, n: usize) -> Result<Vec<String>> {
    if n == 0 {
        return Err(Error::invalid("n-gram size must be at least 1"));
    }
    let chars: Vec<char> = text.chars().collect();
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

/// Whitespace tokens, with tokens containing non-ASCII characters further
/// split by maximum matching. Pinyin text therefore yields its word groups
/// and Chinese text yields lexicon words.
pub fn extract_words(text: &str, lexicon: &Lexicon) -> Vec<String> {
    let mut words = Vec::new();
    for token in text.split_whitespace() {
        if token.is_ascii() {
            words.push(token.to_owned());
        } else {
            words.extend(segment(token, lexicon).into_iter().map(str::to_owned));
        }
    }
    words
}

/// How documents are split into terms.
#[derive(Debug, Clone, PartialEq)]
pub enum Tokenizer {
    /// Character n-grams; whitespace runs are collapsed to one space first.
    CharNgrams(usize),
    Words(Lexicon),
}

impl Tokenizer {
    pub fn terms(&self, text: &str) -> Result<Vec<String>> {
        match self {
            Tokenizer::CharNgrams(n) => {
                let collapsed = text.split_whitespace().collect::<Vec<_>>().join(" ");
                extract_ngrams(&collapsed, *n)
            }
            Tokenizer::Words(lexicon) => Ok(extract_words(text, lexicon)),
        }
    }
}
