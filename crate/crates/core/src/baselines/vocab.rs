use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use super::Tokenizer;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Count,
    TfIdf,
}

/// Top-V training terms with optional inverse document frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVocab {
    pub tokenizer: Tokenizer,
    terms: Vec<String>,
    index: HashMap<String, usize>,
    idf: Option<Vec<f64>>,
}

/// Sparse feature vector with strictly increasing column indices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl SparseVector {
    pub fn l2_normalized(&self) -> SparseVector {
        let norm = self.values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        SparseVector {
            indices: self.indices.clone(),
            values: self.values.iter().map(|v| v / norm).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> SparseVector {
        SparseVector {
            indices: self.indices.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }
}

/// `ln(N / (1 + df))` clamped at 0.
fn idf(n_docs: usize, df: usize) -> f64 {
    (n_docs as f64 / (1.0 + df as f64)).ln().max(0.0)
}

/// Keeps the `max_terms` most frequent terms of the training texts (total
/// occurrences, ties broken lexicographically). With [`Weighting::TfIdf`]
/// the document frequencies of the kept terms give their idf.
pub fn fit_vocab<S: AsRef<str>>(
    texts: &[S],
    tokenizer: Tokenizer,
    max_terms: usize,
    weighting: Weighting,
) -> Result<FeatureVocab> {
    if texts.is_empty() {
        return Err(Error::invalid(
            "cannot fit a vocabulary on an empty training split",
        ));
    }
    if max_terms == 0 {
        return Err(Error::invalid("vocabulary size must be at least 1"));
    }
    let mut freq: HashMap<String, usize> = HashMap::new();
    let mut df: HashMap<String, usize> = HashMap::new();
    for text in texts {
        let terms = tokenizer.terms(text.as_ref())?;
        let distinct: HashSet<&String> = terms.iter().collect();
        for t in distinct {
            *df.entry(t.clone()).or_default() += 1;
        }
        for t in terms {
            *freq.entry(t).or_default() += 1;
        }
    }
    let mut ranked: Vec<(String, usize)> = freq.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(max_terms);

    let terms: Vec<String> = ranked.into_iter().map(|(t, _)| t).collect();
    let idf = (weighting == Weighting::TfIdf)
        .then(|| terms.iter().map(|t| idf(texts.len(), df[t])).collect());
    Ok(FeatureVocab::new(tokenizer, terms, idf))
}

impl FeatureVocab {
    fn new(tokenizer: Tokenizer, terms: Vec<String>, idf: Option<Vec<f64>>) -> Self {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        FeatureVocab {
            tokenizer,
            terms,
            index,
            idf,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn idf(&self) -> Option<&[f64]> {
        self.idf.as_deref()
    }

    pub fn column(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    /// One term per line, with `\t<idf>` when idf values are present.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, term) in self.terms.iter().enumerate() {
            match &self.idf {
                Some(idf) => writeln!(out, "{term}\t{}", idf[i])?,
                None => writeln!(out, "{term}")?,
            }
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R, tokenizer: Tokenizer) -> Result<Self> {
        let mut terms = Vec::new();
        let mut idf = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            match line.split_once('\t') {
                Some((term, v)) => {
                    let v: f64 = v
                        .parse()
                        .map_err(|_| Error::parse(i + 1, format!("bad idf {v:?}")))?;
                    if !(v >= 0.0) {
                        return Err(Error::parse(i + 1, "idf must be >= 0"));
                    }
                    terms.push(term.to_owned());
                    idf.push(v);
                }
                None => terms.push(line),
            }
        }
        let idf = match idf.len() {
            0 => None,
            n if n == terms.len() => Some(idf),
            _ => return Err(Error::parse(0, "idf column present on some lines only")),
        };
        Ok(Self::new(tokenizer, terms, idf))
    }
}

/// Term counts of `text` over the vocabulary, optionally idf-weighted.
/// Out-of-vocabulary terms are ignored.
pub fn featurize(text: &str, vocab: &FeatureVocab, weighting: Weighting) -> Result<SparseVector> {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for term in vocab.tokenizer.terms(text)? {
        if let Some(col) = vocab.column(&term) {
            *counts.entry(col).or_default() += 1.0;
        }
    }
    if weighting == Weighting::TfIdf {
        let idf = vocab
            .idf
            .as_ref()
            .ok_or_else(|| Error::invalid("vocabulary was fitted without idf values"))?;
        for (col, v) in counts.iter_mut() {
            *v *= idf[*col];
        }
    }
    let (indices, values) = counts.into_iter().unzip();
    Ok(SparseVector { indices, values })
}
