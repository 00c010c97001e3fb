//! Dataset construction from labeled news dumps.
//!
//! The pipeline is `parse_dump -> label_by_domain -> filter_short -> split`,
//! optionally followed by pinyin transliteration or augmentation, and ends
//! in CSV files plus a manifest.

mod augment;
mod csv_io;
mod dump;
mod label;
mod manifest;
mod split;
mod synthetic;

pub use augment::{augment_pinyin, transliterate_records};
pub use csv_io::{read_csv, read_csv_file, write_csv, write_csv_file};
pub use dump::{parse_dump, DumpReader, RawDoc};
pub use label::{host_prefix, label_by_domain, DomainMap};
pub use manifest::{DatasetManifest, EncodingTag};
pub use split::{split, split_named, Split, DEFAULT_TEST_FRACTION};
pub use synthetic::{planted_trigram_corpus, SyntheticCorpus, SyntheticSpec};

/// Default minimum document length, in characters.
pub const DEFAULT_MIN_LEN: usize = 20;

/// Default class names, in label order.
pub const DEFAULT_CLASSES: [&str; 5] = [
    "sports",
    "finance",
    "alternating",
    "automobile",
    "technology",
];

/// A labeled document. `label` is 0-based in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub label: usize,
    pub text: String,
    pub url: Option<String>,
}

impl CorpusRecord {
    pub fn new(label: usize, text: impl Into<String>) -> Self {
        CorpusRecord {
            label,
            text: text.into(),
            url: None,
        }
    }
}

/// Keeps documents with at least `min_len` characters.
pub fn filter_short(text: &str, min_len: usize) -> bool {
    text.chars().count() >= min_len
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_filter_boundary() {
        let nineteen = "字".repeat(19);
        assert!(!filter_short(&nineteen, DEFAULT_MIN_LEN));
        assert!(filter_short(&format!("{nineteen}字"), DEFAULT_MIN_LEN));
        assert!(!filter_short("", DEFAULT_MIN_LEN));
        assert!(filter_short("", 0));
    }
}
