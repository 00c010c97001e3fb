use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use crate::{Error, Result};

/// Default out-of-alphabet symbol. Any occurrence of it in input text also
/// encodes as blank, which keeps transliterated text and encoding consistent.
pub const BLANK: char = '\u{FFFD}';

/// Pinyin symbols in index order (1-based), excluding the trailing blank.
pub const PINYIN_SYMBOLS: &str = "abcdefghijklmnopqrstuvwxyz0123456789,.!? ";

const BLANK_MARKER: &str = "\tBLANK";

/// Ordered symbol set. Index 0 is reserved for padding; symbols occupy
/// `1..=size()`, and exactly one of them is the blank symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    blank_index: u32,
    index: HashMap<char, u32>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>, blank: char) -> Result<Self> {
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &ch) in symbols.iter().enumerate() {
            if index.insert(ch, i as u32 + 1).is_some() {
                return Err(Error::invalid(format!("duplicate alphabet symbol {ch:?}")));
            }
        }
        let blank_index = *index.get(&blank).ok_or_else(|| {
            Error::invalid(format!("blank symbol {blank:?} missing from alphabet"))
        })?;
        Ok(Alphabet {
            symbols,
            blank_index,
            index,
        })
    }

    /// Number of symbols, blank included, padding excluded.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn blank_index(&self) -> u32 {
        self.blank_index
    }

    pub fn blank_symbol(&self) -> char {
        self.symbols[self.blank_index as usize - 1]
    }

    pub fn index_of(&self, ch: char) -> Option<u32> {
        self.index.get(&ch).copied()
    }

    pub fn contains(&self, ch: char) -> bool {
        self.index.contains_key(&ch)
    }

    /// Index of `ch`, or the blank index for out-of-alphabet characters.
    pub fn index_or_blank(&self, ch: char) -> u32 {
        self.index_of(ch).unwrap_or(self.blank_index)
    }

    pub fn symbol(&self, index: u32) -> Option<char> {
        match index {
            0 => None,
            i => self.symbols.get(i as usize - 1).copied(),
        }
    }

    /// Maps indices back to symbols, skipping padding.
    pub fn decode(&self, indices: &[u32]) -> String {
        indices.iter().filter_map(|&i| self.symbol(i)).collect()
    }

    /// One symbol per line in index order; the blank line carries a
    /// trailing `\tBLANK`. LF endings, no BOM.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, ch) in self.symbols.iter().enumerate() {
            if i as u32 + 1 == self.blank_index {
                writeln!(out, "{ch}{BLANK_MARKER}")?;
            } else {
                writeln!(out, "{ch}")?;
            }
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("alphabet symbols are valid UTF-8")
    }

    pub fn read_from<R: BufRead>(mut input: R) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut blank = None;
        let mut line = String::new();
        let mut lineno = 0;
        loop {
            line.clear();
            if input.read_line(&mut line)? == 0 {
                break;
            }
            lineno += 1;
            let body = line.strip_suffix('\n').unwrap_or(&line);
            let (sym, is_blank) = match body.strip_suffix(BLANK_MARKER) {
                Some(s) => (s, true),
                None => (body, false),
            };
            let mut chars = sym.chars();
            let ch = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::parse(
                        lineno,
                        format!("expected one symbol, got {sym:?}"),
                    ))
                }
            };
            if is_blank {
                if blank.is_some() {
                    return Err(Error::parse(lineno, "second BLANK marker"));
                }
                blank = Some(ch);
            }
            symbols.push(ch);
        }
        let blank = blank.ok_or_else(|| Error::parse(lineno, "no symbol is marked BLANK"))?;
        Alphabet::new(symbols, blank).map_err(|e| Error::parse(lineno, e.to_string()))
    }
}

/// The 42-symbol pinyin alphabet: 26 lowercase letters, 10 digits,
/// `, . ! ?`, space, then the blank.
pub fn build_pinyin_alphabet() -> Alphabet {
    let symbols = PINYIN_SYMBOLS
        .chars()
        .chain(std::iter::once(BLANK))
        .collect();
    Alphabet::new(symbols, BLANK).expect("pinyin symbols are distinct")
}

/// Every distinct character of the corpus in code-point order, followed by
/// `blank`. Control characters (line breaks, tabs) are left out and encode
/// as blank.
pub fn build_corpus_alphabet<I, S>(corpus: I, blank: char) -> Result<Alphabet>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut seen = BTreeSet::new();
    for text in corpus {
        seen.extend(
            text.as_ref()
                .chars()
                .filter(|c| !c.is_control() && *c != blank),
        );
    }
    if seen.is_empty() {
        return Err(Error::invalid(
            "cannot build an alphabet from an empty corpus",
        ));
    }
    if blank.is_control() {
        return Err(Error::invalid("blank symbol cannot be a control character"));
    }
    let symbols = seen.into_iter().chain(std::iter::once(blank)).collect();
    Alphabet::new(symbols, blank)
}
