use super::{segment, Lexicon, PinyinTable};
use crate::encoding::{BLANK, PINYIN_SYMBOLS};

/// Tone placement in the rendered pinyin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    /// Tone digit fused to the syllable: `ma3`.
    A,
    /// Tone digit separated by a space: `ma 3`.
    B,
}

impl Format {
    pub fn tag(self) -> &'static str {
        match self {
            Format::A => "pinyinA",
            Format::B => "pinyinB",
        }
    }
}

/// Folds full-width ASCII variants (`，` `！` `ａ` ...) and the ideographic
/// full stop onto ASCII, then lowercases.
fn normalize(ch: char) -> char {
    let ch = match ch {
        '\u{3002}' => '.',
        '\u{FF01}'..='\u{FF5E}' => char::from_u32(ch as u32 - 0xFEE0).unwrap_or(ch),
        _ => ch,
    };
    ch.to_ascii_lowercase()
}

fn render_word(word: &str, table: &PinyinTable, format: Format, out: &mut String) {
    for ch in word.chars() {
        let reading = table.get(ch).expect("word comes from a table-covered run");
        out.push_str(&reading.syllable);
        if format == Format::B {
            out.push(' ');
        }
        out.push(char::from(b'0' + reading.tone));
    }
}

/// Renders `text` as pinyin.
///
/// Runs of table-covered characters are segmented and each word rendered
/// syllable by syllable with no internal spaces. Other non-whitespace runs
/// form one word each: characters in the pinyin alphabet pass through,
/// anything else becomes [`BLANK`]. Words are joined by single spaces;
/// whitespace in the input only separates words.
pub fn transliterate(text: &str, table: &PinyinTable, lexicon: &Lexicon, format: Format) -> String {
    let mut out = String::with_capacity(text.len() * 2);
    let push_sep = |out: &mut String| {
        if !out.is_empty() {
            out.push(' ');
        }
    };

    let mut rest = text;
    while let Some(first) = rest.chars().next() {
        if first.is_whitespace() {
            rest = rest.trim_start_matches(char::is_whitespace);
            continue;
        }
        let covered = table.contains(first);
        let end = rest
            .char_indices()
            .find(|&(_, c)| c.is_whitespace() || table.contains(c) != covered)
            .map_or(rest.len(), |(i, _)| i);
        let (run, tail) = rest.split_at(end);
        if covered {
            for word in segment(run, lexicon) {
                push_sep(&mut out);
                render_word(word, table, format, &mut out);
            }
        } else {
            push_sep(&mut out);
            out.extend(run.chars().map(|c| {
                let c = normalize(c);
                if c != ' ' && PINYIN_SYMBOLS.contains(c) {
                    c
                } else {
                    BLANK
                }
            }));
        }
        rest = tail;
    }
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn table() -> PinyinTable {
        let mut t = PinyinTable::default();
        t.insert('X', "ma", 3).unwrap();
        t.insert('Y', "li", 0).unwrap();
        t
    }

    #[test]
    fn format_a_fuses_tone() {
        assert_eq!(
            transliterate("X", &table(), &Lexicon::default(), Format::A),
            "ma3"
        );
    }

    #[test]
    fn format_b_separates_tone() {
        assert_eq!(
            transliterate("X", &table(), &Lexicon::default(), Format::B),
            "ma 3"
        );
    }

    #[test]
    fn word_gaps_follow_segmentation() {
        let joined = Lexicon::new(["XY"]);
        assert_eq!(transliterate("XY", &table(), &joined, Format::A), "ma3li0");
        assert_eq!(
            transliterate("XY", &table(), &Lexicon::default(), Format::A),
            "ma3 li0"
        );
        assert_eq!(
            transliterate("XY", &table(), &joined, Format::B),
            "ma 3li 0"
        );
    }

    #[test]
    fn uncovered_characters() {
        let t = table();
        let lex = Lexicon::default();
        assert_eq!(
            transliterate("X nba2018!", &t, &lex, Format::A),
            "ma3 nba2018!"
        );
        assert_eq!(transliterate("NBA", &t, &lex, Format::A), "nba");
        assert_eq!(transliterate("X，Y", &t, &lex, Format::A), "ma3 , li0");
        assert_eq!(
            transliterate("€€", &t, &lex, Format::A),
            format!("{BLANK}{BLANK}")
        );
        assert_eq!(transliterate("  \n ", &t, &lex, Format::A), "");
    }

    #[test]
    fn bundled_data() {
        let out = transliterate(
            "中国足球",
            &PinyinTable::bundled(),
            &Lexicon::bundled(),
            Format::A,
        );
        assert_eq!(out, "zhong1guo2 zu2qiu2");
    }

    fn strip(s: &str) -> String {
        s.chars()
            .filter(|c| !c.is_ascii_digit() && *c != ' ')
            .collect()
    }

    proptest! {
        #[test]
        fn formats_differ_only_in_tone_placement(text in "[XYab中 ]{0,20}") {
            let t = table();
            let lex = Lexicon::new(["XY", "YX"]);
            let a = transliterate(&text, &t, &lex, Format::A);
            let b = transliterate(&text, &t, &lex, Format::B);
            prop_assert_eq!(strip(&a), strip(&b));
        }

        #[test]
        fn covered_input_digit_placement(text in "[XY]{1,20}") {
            let t = table();
            let lex = Lexicon::new(["XY", "XXY"]);
            let a = transliterate(&text, &t, &lex, Format::A);
            for tok in a.split(' ') {
                prop_assert!(!tok.chars().all(|c| c.is_ascii_digit()), "isolated digit in {}", a);
            }
            let b = transliterate(&text, &t, &lex, Format::B);
            let chars: Vec<char> = b.chars().collect();
            for (i, c) in chars.iter().enumerate() {
                if c.is_ascii_digit() {
                    prop_assert!(i > 0 && chars[i - 1] == ' ', "digit not preceded by space in {}", b);
                }
            }
        }
    }
}
