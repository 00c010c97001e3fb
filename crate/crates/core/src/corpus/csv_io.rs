use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::CorpusRecord;
use crate::{Error, Result};

/// Writes `label,"text"` lines: 1-based label, text always quoted with
/// doubled-quote escaping, LF endings.
pub fn write_csv<W: Write>(records: &[CorpusRecord], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for r in records {
        writeln!(out, "{},\"{}\"", r.label + 1, r.text.replace('"', "\"\""))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads `label,"text"` rows. Extra columns (title/body layouts) are joined
/// to the text with a space.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CorpusRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() < 2 {
            return Err(Error::parse(
                line,
                format!("expected `label,text`, got {} field(s)", row.len()),
            ));
        }
        let label: usize = row[0]
            .trim()
            .parse()
            .ok()
            .filter(|&l| l >= 1)
            .ok_or_else(|| {
                Error::parse(
                    line,
                    format!("label {:?} is not a positive integer", &row[0]),
                )
            })?;
        let text = row.iter().skip(1).collect::<Vec<_>>().join(" ");
        records.push(CorpusRecord::new(label - 1, text));
    }
    Ok(records)
}

pub fn write_csv_file(records: &[CorpusRecord], path: impl AsRef<Path>) -> Result<()> {
    write_csv(records, File::create(path)?)
}

pub fn read_csv_file(path: impl AsRef<Path>) -> Result<Vec<CorpusRecord>> {
    read_csv(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn to_string(records: &[CorpusRecord]) -> String {
        let mut buf = Vec::new();
        write_csv(records, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn one_based_quoted() {
        assert_eq!(to_string(&[CorpusRecord::new(2, "你好")]), "3,\"你好\"\n");
    }

    #[test]
    fn quotes_doubled() {
        assert_eq!(
            to_string(&[CorpusRecord::new(0, "say \"hi\"")]),
            "1,\"say \"\"hi\"\"\"\n"
        );
    }

    #[test]
    fn numeric_text_still_quoted() {
        assert_eq!(to_string(&[CorpusRecord::new(0, "2018")]), "1,\"2018\"\n");
    }

    #[test]
    fn malformed_row_has_line_number() {
        let input = "1,\"ok\"\n2,\"fine\"\nx,\"bad\"\n";
        match read_csv(input.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_csv("0,\"zero label\"\n".as_bytes()).is_err());
        assert!(read_csv("1\n".as_bytes()).is_err());
    }

    #[test]
    fn extra_columns_joined() {
        let r = read_csv("3,\"title\",\"body text\"\n".as_bytes()).unwrap();
        assert_eq!(r, vec![CorpusRecord::new(2, "title body text")]);
    }

    proptest! {
        #[test]
        fn round_trip(rows in prop::collection::vec((0usize..5, "[a-z中文 ,\"\n]{0,12}"), 0..20)) {
            let records: Vec<CorpusRecord> = rows.into_iter().map(|(l, t)| CorpusRecord::new(l, t)).collect();
            let text = to_string(&records);
            prop_assert_eq!(read_csv(text.as_bytes()).unwrap(), records);
        }
    }
}
