use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use super::CorpusRecord;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingTag {
    Chinese,
    PinyinA,
    PinyinB,
    Augmented,
}

impl fmt::Display for EncodingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingTag::Chinese => "chinese",
            EncodingTag::PinyinA => "pinyinA",
            EncodingTag::PinyinB => "pinyinB",
            EncodingTag::Augmented => "augmented",
        })
    }
}

impl FromStr for EncodingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chinese" => Ok(EncodingTag::Chinese),
            "pinyinA" => Ok(EncodingTag::PinyinA),
            "pinyinB" => Ok(EncodingTag::PinyinB),
            "augmented" => Ok(EncodingTag::Augmented),
            other => Err(Error::invalid(format!("unknown encoding tag {other:?}"))),
        }
    }
}

/// Sidecar summary of an emitted dataset, tab-separated:
///
/// ```text
/// encoding  chinese
/// class     1  sports  85  15
/// ...
/// total     425  75
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub classes: Vec<String>,
    pub encoding: EncodingTag,
    pub train_counts: Vec<usize>,
    pub test_counts: Vec<usize>,
}

fn histogram(records: &[CorpusRecord], n: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; n];
    for r in records {
        *counts.get_mut(r.label).ok_or_else(|| {
            Error::invalid(format!(
                "label {} outside the {n} manifest classes",
                r.label
            ))
        })? += 1;
    }
    Ok(counts)
}

impl DatasetManifest {
    pub fn from_splits(
        classes: Vec<String>,
        encoding: EncodingTag,
        train: &[CorpusRecord],
        test: &[CorpusRecord],
    ) -> Result<Self> {
        let n = classes.len();
        Ok(DatasetManifest {
            train_counts: histogram(train, n)?,
            test_counts: histogram(test, n)?,
            classes,
            encoding,
        })
    }

    pub fn train_total(&self) -> usize {
        self.train_counts.iter().sum()
    }

    pub fn test_total(&self) -> usize {
        self.test_counts.iter().sum()
    }

    /// Checks the counts against actual split contents.
    pub fn matches(&self, train: &[CorpusRecord], test: &[CorpusRecord]) -> bool {
        let n = self.classes.len();
        histogram(train, n).is_ok_and(|c| c == self.train_counts)
            && histogram(test, n).is_ok_and(|c| c == self.test_counts)
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "encoding\t{}", self.encoding)?;
        for (i, name) in self.classes.iter().enumerate() {
            writeln!(
                out,
                "class\t{}\t{name}\t{}\t{}",
                i + 1,
                self.train_counts[i],
                self.test_counts[i]
            )?;
        }
        writeln!(out, "total\t{}\t{}", self.train_total(), self.test_total())?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut encoding = None;
        let (mut classes, mut train_counts, mut test_counts) = (Vec::new(), Vec::new(), Vec::new());
        let mut total = None;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::parse(lineno, format!("bad count {s:?}")))
            };
            match fields[..] {
                ["encoding", tag] => {
                    encoding = Some(
                        tag.parse()
                            .map_err(|e: Error| Error::parse(lineno, e.to_string()))?,
                    )
                }
                ["class", idx, name, train, test] => {
                    if num(idx)? != classes.len() + 1 {
                        return Err(Error::parse(
                            lineno,
                            "class indices must be consecutive from 1",
                        ));
                    }
                    classes.push(name.to_owned());
                    train_counts.push(num(train)?);
                    test_counts.push(num(test)?);
                }
                ["total", train, test] => total = Some((num(train)?, num(test)?)),
                [""] => {}
                _ => {
                    return Err(Error::parse(
                        lineno,
                        format!("unrecognised manifest line {line:?}"),
                    ))
                }
            }
        }
        let encoding = encoding.ok_or_else(|| Error::parse(0, "manifest has no encoding line"))?;
        let manifest = DatasetManifest {
            classes,
            encoding,
            train_counts,
            test_counts,
        };
        if let Some(t) = total {
            if t != (manifest.train_total(), manifest.test_total()) {
                return Err(Error::parse(
                    0,
                    "manifest totals disagree with class counts",
                ));
            }
        }
        Ok(manifest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_round_trip() {
        let train = vec![
            CorpusRecord::new(0, "a"),
            CorpusRecord::new(1, "b"),
            CorpusRecord::new(1, "c"),
        ];
        let test = vec![CorpusRecord::new(1, "d")];
        let m = DatasetManifest::from_splits(
            vec!["x".into(), "y".into()],
            EncodingTag::Chinese,
            &train,
            &test,
        )
        .unwrap();
        assert_eq!(m.train_counts, vec![1, 2]);
        assert_eq!(m.test_counts, vec![0, 1]);
        assert!(m.matches(&train, &test));
        assert!(!m.matches(&test, &train));

        let mut buf = Vec::new();
        m.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "encoding\tchinese\nclass\t1\tx\t1\t0\nclass\t2\ty\t2\t1\ntotal\t3\t1\n"
        );
        assert_eq!(DatasetManifest::read_from(text.as_bytes()).unwrap(), m);
    }

    #[test]
    fn out_of_range_label() {
        let train = vec![CorpusRecord::new(3, "a")];
        assert!(
            DatasetManifest::from_splits(vec!["x".into()], EncodingTag::Chinese, &train, &[])
                .is_err()
        );
    }

    #[test]
    fn inconsistent_total_rejected() {
        let text = "encoding\tpinyinA\nclass\t1\tx\t1\t0\ntotal\t2\t0\n";
        assert!(DatasetManifest::read_from(text.as_bytes()).is_err());
    }
}
