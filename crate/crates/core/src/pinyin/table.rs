use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::{Error, Result};

const BUNDLED_TABLE: &str = include_str!("../../data/pinyin_table.tsv");

/// Toneless syllable plus tone, `0` meaning the neutral tone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub syllable: String,
    pub tone: u8,
}

/// Single reading per character; polyphones keep whichever entry was
/// loaded last.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PinyinTable {
    entries: HashMap<char, Reading>,
}

impl PinyinTable {
    /// The table shipped with the crate (GB2312 level-1 characters).
    pub fn bundled() -> Self {
        Self::from_reader(BUNDLED_TABLE.as_bytes()).expect("bundled pinyin table is well formed")
    }

    /// Parses `char<TAB>syllable<TAB>tone` lines; blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_reader<R: BufRead>(input: R) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [ch, syllable, tone] = fields[..] else {
                return Err(Error::parse(
                    lineno,
                    format!("expected 3 tab-separated fields, got {}", fields.len()),
                ));
            };
            let mut chars = ch.chars();
            let ch = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::parse(
                        lineno,
                        format!("expected a single character, got {ch:?}"),
                    ))
                }
            };
            if syllable.is_empty() || !syllable.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(Error::parse(
                    lineno,
                    format!("syllable {syllable:?} is not lowercase ASCII"),
                ));
            }
            let tone: u8 =
                tone.parse().ok().filter(|t| *t <= 4).ok_or_else(|| {
                    Error::parse(lineno, format!("tone {tone:?} is not in 0..=4"))
                })?;
            let reading = Reading {
                syllable: syllable.to_owned(),
                tone,
            };
            if let Some(old) = entries.insert(ch, reading) {
                log::warn!(
                    "line {lineno}: duplicate entry for {ch} replaces {}{}",
                    old.syllable,
                    old.tone
                );
            }
        }
        Ok(PinyinTable { entries })
    }

    pub fn get(&self, ch: char) -> Option<&Reading> {
        self.entries.get(&ch)
    }

    pub fn contains(&self, ch: char) -> bool {
        self.entries.contains_key(&ch)
    }

    pub fn insert(&mut self, ch: char, syllable: &str, tone: u8) -> Result<()> {
        if syllable.is_empty() || !syllable.bytes().all(|b| b.is_ascii_lowercase()) || tone > 4 {
            return Err(Error::invalid(format!(
                "invalid reading {syllable:?} tone {tone}"
            )));
        }
        self.entries.insert(
            ch,
            Reading {
                syllable: syllable.to_owned(),
                tone,
            },
        );
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn load_pinyin_table(path: impl AsRef<Path>) -> Result<PinyinTable> {
    PinyinTable::from_reader(BufReader::new(File::open(path)?))
}
