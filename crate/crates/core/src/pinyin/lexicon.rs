use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::Result;

const BUNDLED_LEXICON: &str = include_str!("../../data/lexicon.txt");

/// Word list for maximum-matching segmentation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    words: HashSet<String>,
    /// Length of the longest word, in characters.
    max_word_len: usize,
}

impl Lexicon {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let words: HashSet<String> = words
            .into_iter()
            .map(Into::into)
            .filter(|w| !w.is_empty())
            .collect();
        let max_word_len = words.iter().map(|w| w.chars().count()).max().unwrap_or(0);
        Lexicon {
            words,
            max_word_len,
        }
    }

    /// Common words shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_reader(BUNDLED_LEXICON.as_bytes()).expect("bundled lexicon is valid UTF-8")
    }

    /// One word per line; surrounding whitespace is trimmed and empty lines skipped.
    pub fn from_reader<R: BufRead>(input: R) -> Result<Self> {
        let mut words = Vec::new();
        for line in input.lines() {
            let line = line?;
            let word = line.trim();
            if !word.is_empty() {
                words.push(word.to_owned());
            }
        }
        Ok(Self::new(words))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    Lexicon::from_reader(BufReader::new(File::open(path)?))
}

/// Greedy forward maximum matching. At each position the longest lexicon
/// word starting there is taken; otherwise a single character is emitted.
/// The returned slices concatenate back to `text`.
pub fn segment<'a>(text: &'a str, lexicon: &Lexicon) -> Vec<&'a str> {
    // Byte offsets of every char boundary, including the end.
    let bounds: Vec<usize> = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(text.len()))
        .collect();
    let n_chars = bounds.len() - 1;
    let mut words = Vec::new();
    let mut pos = 0;
    while pos < n_chars {
        let longest = lexicon.max_word_len.min(n_chars - pos);
        let take = (2..=longest)
            .rev()
            .find(|&len| lexicon.contains(&text[bounds[pos]..bounds[pos + len]]))
            .unwrap_or(1);
        words.push(&text[bounds[pos]..bounds[pos + take]]);
        pos += take;
    }
    words
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn longest_match_wins() {
        let lex = Lexicon::new(["ab", "abc", "b"]);
        assert_eq!(segment("abc", &lex), vec!["abc"]);
    }

    #[test]
    fn single_char_fallback() {
        let lex = Lexicon::new(["ab"]);
        assert_eq!(segment("abd", &lex), vec!["ab", "d"]);
    }

    #[test]
    fn empty_text() {
        assert!(segment("", &Lexicon::new(["ab"])).is_empty());
    }

    #[test]
    fn chinese_words() {
        let lex = Lexicon::new(["中国", "中国人", "人民"]);
        assert_eq!(segment("中国人民", &lex), vec!["中国人", "民"]);
        assert_eq!(lex.max_word_len(), 3);
    }

    #[test]
    fn bundled_lexicon_segments() {
        let lex = Lexicon::bundled();
        assert!(lex.len() > 10_000);
        assert_eq!(segment("我们喜欢足球", &lex).concat(), "我们喜欢足球");
        assert!(segment("我们喜欢足球", &lex).contains(&"足球"));
    }

    proptest! {
        #[test]
        fn concatenation_is_identity(
            text in "[ab中国人x ]{0,24}",
            words in prop::collection::vec("[ab中国人]{1,4}", 0..8),
        ) {
            let lex = Lexicon::new(words);
            prop_assert_eq!(segment(&text, &lex).concat(), text);
        }
    }
}
