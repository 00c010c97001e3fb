use super::CorpusRecord;
use crate::pinyin::{transliterate, Format, Lexicon, PinyinTable};

/// Transliterates every record into `format`, keeping labels and order.
pub fn transliterate_records(
    records: &[CorpusRecord],
    table: &PinyinTable,
    lexicon: &Lexicon,
    format: Format,
) -> Vec<CorpusRecord> {
    records
        .iter()
        .map(|r| CorpusRecord {
            label: r.label,
            text: transliterate(&r.text, table, lexicon, format),
            url: r.url.clone(),
        })
        .collect()
}

/// Format-A and format-B renderings of every record, A first. Apply it to
/// each split separately so both variants of a document stay on the same
/// side.
pub fn augment_pinyin(
    records: &[CorpusRecord],
    table: &PinyinTable,
    lexicon: &Lexicon,
) -> Vec<CorpusRecord> {
    let mut out = Vec::with_capacity(records.len() * 2);
    for r in records {
        for format in [Format::A, Format::B] {
            out.push(CorpusRecord {
                label: r.label,
                text: transliterate(&r.text, table, lexicon, format),
                url: r.url.clone(),
            });
        }
    }
    out
}
