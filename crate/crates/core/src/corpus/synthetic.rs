use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CorpusRecord;
use crate::{Error, Result};

/// Shape of a planted-trigram corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub classes: usize,
    pub train_per_class: usize,
    pub test_per_class: usize,
    /// Document length in characters.
    pub doc_len: usize,
    /// Class-specific trigrams planted into every document.
    pub trigrams_per_doc: usize,
    /// Background characters.
    pub background: Vec<char>,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            classes: 5,
            train_per_class: 100,
            test_per_class: 20,
            doc_len: 100,
            trigrams_per_doc: 3,
            background: ('a'..='z').collect(),
            seed: 0,
        }
    }
}

/// Train and test records plus the planted trigrams.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub train: Vec<CorpusRecord>,
    pub test: Vec<CorpusRecord>,
    /// `trigrams[c]` are the distinct trigrams owned by class `c`.
    pub trigrams: Vec<Vec<String>>,
}

/// Random background text with each class's trigrams planted at random,
/// non-overlapping positions. Every class owns `trigrams_per_doc` distinct
/// trigrams, disjoint across classes, and each document contains all of
/// its class's trigrams once, in random order.
pub fn planted_trigram_corpus(spec: &SyntheticSpec) -> Result<SyntheticCorpus> {
    let k = spec.trigrams_per_doc;
    if spec.classes == 0 || spec.background.len() < 2 {
        return Err(Error::invalid(
            "need at least one class and two background characters",
        ));
    }
    if spec.doc_len < 3 * k {
        return Err(Error::invalid(format!(
            "documents of {} characters cannot hold {k} trigrams",
            spec.doc_len
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut trigrams: Vec<Vec<String>> = Vec::with_capacity(spec.classes);
    let mut seen = std::collections::HashSet::new();
    let possible = spec.background.len().pow(3);
    if spec.classes * k > possible {
        return Err(Error::invalid(
            "background alphabet too small for disjoint trigrams",
        ));
    }
    for _ in 0..spec.classes {
        let mut own = Vec::with_capacity(k);
        while own.len() < k {
            let t: String = (0..3)
                .map(|_| *spec.background.choose(&mut rng).unwrap())
                .collect();
            if seen.insert(t.clone()) {
                own.push(t);
            }
        }
        trigrams.push(own);
    }

    let make = |per_class: usize, rng: &mut ChaCha8Rng| -> Vec<CorpusRecord> {
        let mut out = Vec::with_capacity(per_class * spec.classes);
        for _ in 0..per_class {
            for (label, own) in trigrams.iter().enumerate() {
                out.push(CorpusRecord::new(label, document(spec, own, rng)));
            }
        }
        out
    };
    let train = make(spec.train_per_class, &mut rng);
    let test = make(spec.test_per_class, &mut rng);
    Ok(SyntheticCorpus {
        train,
        test,
        trigrams,
    })
}

fn document(spec: &SyntheticSpec, own: &[String], rng: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = (0..spec.doc_len)
        .map(|_| *spec.background.choose(rng).unwrap())
        .collect();
    // Pick k start slots among doc_len - 2k free positions, then spread
    // them out so planted trigrams never overlap.
    let k = own.len();
    let free = spec.doc_len - 3 * k;
    let mut offsets: Vec<usize> = (0..k).map(|_| rng.random_range(0..=free)).collect();
    offsets.sort_unstable();
    let mut order: Vec<&String> = own.iter().collect();
    order.shuffle(rng);
    for (slot, (off, tri)) in offsets.into_iter().zip(order).enumerate() {
        let start = off + 3 * slot;
        for (j, ch) in tri.chars().enumerate() {
            chars[start + j] = ch;
        }
    }
    chars.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_planting() {
        let spec = SyntheticSpec::default();
        let c = planted_trigram_corpus(&spec).unwrap();
        assert_eq!(c.train.len(), 500);
        assert_eq!(c.test.len(), 100);
        for r in c.train.iter().chain(&c.test) {
            assert_eq!(r.text.chars().count(), 100);
            for t in &c.trigrams[r.label] {
                assert!(r.text.contains(t.as_str()), "{t} missing from {}", r.text);
            }
        }
    }

    #[test]
    fn trigrams_disjoint_and_seeded() {
        let spec = SyntheticSpec::default();
        let a = planted_trigram_corpus(&spec).unwrap();
        let all: std::collections::HashSet<_> = a.trigrams.iter().flatten().collect();
        assert_eq!(all.len(), 15);
        assert_eq!(a, planted_trigram_corpus(&spec).unwrap());
        let other = planted_trigram_corpus(&SyntheticSpec { seed: 1, ..spec }).unwrap();
        assert_ne!(a.train, other.train);
    }

    #[test]
    fn too_short() {
        let spec = SyntheticSpec {
            doc_len: 8,
            ..SyntheticSpec::default()
        };
        assert!(planted_trigram_corpus(&spec).is_err());
    }
}
