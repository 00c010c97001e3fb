//! Chinese-character to pinyin transliteration.
//!
//! Segmentation is greedy forward maximum matching against a word list; each
//! character is then rendered from a single-reading table. Format A fuses the
//! tone digit onto the syllable (`ma3`), format B separates it (`ma 3`).
//! Words are separated by one space so the word gaps survive in the output.

mod lexicon;
mod table;
mod transliterate;

pub use lexicon::{load_lexicon, segment, Lexicon};
pub use table::{load_pinyin_table, PinyinTable, Reading};
pub use transliterate::{transliterate, Format};
