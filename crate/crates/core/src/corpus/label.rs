use std::collections::BTreeMap;
use std::io::BufRead;

use url::Url;

use super::{CorpusRecord, RawDoc, DEFAULT_CLASSES};
use crate::{Error, Result};

/// Maps the first hostname label of a URL (`sports` in
/// `sports.sohu.com`) to a class index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainMap {
    classes: Vec<String>,
    prefixes: BTreeMap<String, usize>,
}

impl DomainMap {
    pub fn new(classes: Vec<String>, prefixes: BTreeMap<String, usize>) -> Result<Self> {
        if prefixes.is_empty() {
            return Err(Error::invalid("domain map is empty"));
        }
        if let Some((p, &c)) = prefixes.iter().find(|(_, &c)| c >= classes.len()) {
            return Err(Error::invalid(format!(
                "prefix {p:?} maps to unknown class {c}"
            )));
        }
        let prefixes = prefixes
            .into_iter()
            .map(|(p, c)| (p.to_ascii_lowercase(), c))
            .collect();
        Ok(DomainMap { classes, prefixes })
    }

    /// Sohu-style channel prefixes for the five default classes.
    pub fn sogou_default() -> Self {
        let pairs = [
            ("sports", 0),
            ("business", 1),
            ("money", 1),
            ("finance", 1),
            ("yule", 2),
            ("ent", 2),
            ("auto", 3),
            ("it", 4),
            ("tech", 4),
        ];
        Self::new(
            DEFAULT_CLASSES.iter().map(|s| s.to_string()).collect(),
            pairs.iter().map(|&(p, c)| (p.to_string(), c)).collect(),
        )
        .expect("default map is valid")
    }

    /// Parses `prefix<TAB>class name` lines. Classes are numbered in order of
    /// first appearance; `#` lines and blank lines are ignored.
    pub fn from_reader<R: BufRead>(input: R) -> Result<Self> {
        let mut classes: Vec<String> = Vec::new();
        let mut prefixes = BTreeMap::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((prefix, class)) = line.split_once('\t') else {
                return Err(Error::parse(i + 1, "expected `prefix<TAB>class`"));
            };
            let (prefix, class) = (prefix.trim(), class.trim());
            if prefix.is_empty() || class.is_empty() {
                return Err(Error::parse(i + 1, "empty prefix or class"));
            }
            let idx = match classes.iter().position(|c| c == class) {
                Some(idx) => idx,
                None => {
                    classes.push(class.to_owned());
                    classes.len() - 1
                }
            };
            prefixes.insert(prefix.to_owned(), idx);
        }
        Self::new(classes, prefixes)
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn lookup(&self, prefix: &str) -> Option<usize> {
        self.prefixes.get(&prefix.to_ascii_lowercase()).copied()
    }
}

/// First label of the URL's host, lowercased.
pub fn host_prefix(url: &str) -> Option<String> {
    let parsed = Url::parse(url.trim()).ok()?;
    let host = parsed.host_str()?;
    let first = host.split('.').next()?;
    (!first.is_empty()).then(|| first.to_ascii_lowercase())
}

/// Labels a document from its URL; unmapped or unparsable URLs give `None`.
pub fn label_by_domain(doc: &RawDoc, map: &DomainMap) -> Option<CorpusRecord> {
    let label = map.lookup(&host_prefix(&doc.url)?)?;
    Some(CorpusRecord {
        label,
        text: doc.content.clone(),
        url: Some(doc.url.clone()),
    })
}
