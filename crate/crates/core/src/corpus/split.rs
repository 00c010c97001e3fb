use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CorpusRecord;
use crate::{Error, Result};

/// 86,597 of 577,314 documents went to the test split.
pub const DEFAULT_TEST_FRACTION: f64 = 0.15;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<CorpusRecord>,
    pub test: Vec<CorpusRecord>,
}

/// Stratified shuffle-split; see [`split_named`].
pub fn split(records: Vec<CorpusRecord>, test_fraction: f64, seed: u64) -> Result<Split> {
    split_named(records, test_fraction, seed, &[])
}

/// Per class, `round(n * test_fraction)` documents (at least one, at most
/// `n - 1`) chosen by a seeded shuffle go to the test split. Both splits
/// keep the input order. `class_names` is only used in error messages.
pub fn split_named(
    records: Vec<CorpusRecord>,
    test_fraction: f64,
    seed: u64,
    class_names: &[String],
) -> Result<Split> {
    if records.is_empty() {
        return Err(Error::invalid("cannot split an empty dataset"));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::invalid(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        by_class.entry(r.label).or_default().push(i);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_test = vec![false; records.len()];
    for (&label, members) in &mut by_class {
        let n = members.len();
        if n < 2 {
            let name = class_names
                .get(label)
                .map_or_else(|| format!("#{label}"), |s| format!("{s:?}"));
            return Err(Error::invalid(format!(
                "class {name} has {n} record(s); at least 2 are needed to split"
            )));
        }
        let n_test = ((n as f64 * test_fraction).round() as usize).clamp(1, n - 1);
        members.shuffle(&mut rng);
        for &i in &members[..n_test] {
            in_test[i] = true;
        }
    }

    let mut out = Split::default();
    for (record, test) in records.into_iter().zip(in_test) {
        if test {
            out.test.push(record);
        } else {
            out.train.push(record);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn records(labels: &[usize]) -> Vec<CorpusRecord> {
        labels
            .iter()
            .enumerate()
            .map(|(i, &l)| CorpusRecord::new(l, format!("doc {i}")))
            .collect()
    }

    #[test]
    fn single_class_arithmetic() {
        let s = split(records(&[0; 100]), 0.15, 1).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (85, 15));
    }

    #[test]
    fn deterministic() {
        let labels: Vec<usize> = (0..57).map(|i| i % 3).collect();
        assert_eq!(
            split(records(&labels), 0.15, 9).unwrap(),
            split(records(&labels), 0.15, 9).unwrap()
        );
        assert_ne!(
            split(records(&labels), 0.15, 9).unwrap(),
            split(records(&labels), 0.15, 10).unwrap()
        );
    }

    #[test]
    fn tiny_class_named_in_error() {
        let names = vec!["sports".to_string(), "finance".to_string()];
        let err = split_named(records(&[0, 0, 0, 1]), 0.15, 1, &names).unwrap_err();
        assert!(err.to_string().contains("\"finance\""), "{err}");
    }

    #[test]
    fn bad_inputs() {
        assert!(split(Vec::new(), 0.15, 1).is_err());
        assert!(split(records(&[0, 0]), 0.0, 1).is_err());
        assert!(split(records(&[0, 0]), 1.0, 1).is_err());
    }

    proptest! {
        #[test]
        fn partition_and_stratification(labels in prop::collection::vec(0usize..4, 2..200), seed in any::<u64>()) {
            let mut counts = [0usize; 4];
            labels.iter().for_each(|&l| counts[l] += 1);
            prop_assume!(counts.iter().all(|&c| c == 0 || c >= 2));

            let s = split(records(&labels), 0.15, seed).unwrap();
            let mut all: Vec<String> = s.train.iter().chain(&s.test).map(|r| r.text.clone()).collect();
            all.sort();
            let mut expected: Vec<String> = records(&labels).into_iter().map(|r| r.text).collect();
            expected.sort();
            prop_assert_eq!(all, expected);

            for (label, &n) in counts.iter().enumerate() {
                if n == 0 { continue; }
                let got = s.test.iter().filter(|r| r.label == label).count() as f64;
                prop_assert!((got - n as f64 * 0.15).abs() <= 1.0, "class {} n={} test={}", label, n, got);
            }
        }
    }
}
