use charcnn_core::baselines::{
    featurize, fit_vocab, predict, train_linear, LinearTrainConfig, SparseVector, Tokenizer,
    Weighting,
};
use charcnn_core::corpus::CorpusRecord;
use charcnn_core::pinyin::load_lexicon;
use charcnn_core::Lexicon;
use log::info;

use super::read_records;
use crate::args::{BaselineArgs, BaselineMode};
use crate::error::{CliError, CliResult};
use crate::io::{emit, require_file, write_atomic};

fn features(
    records: &[CorpusRecord],
    vocab: &charcnn_core::baselines::FeatureVocab,
    w: Weighting,
) -> CliResult<Vec<SparseVector>> {
    records
        .iter()
        .map(|r| Ok(featurize(&r.text, vocab, w)?.l2_normalized()))
        .collect()
}

pub fn run(args: &BaselineArgs) -> CliResult<()> {
    require_file(&args.train)?;
    require_file(&args.test)?;
    if let Some(p) = &args.lexicon {
        require_file(p)?;
    }
    let train = read_records(&args.train)?;
    let test = read_records(&args.test)?;

    let weighting = match args.mode {
        BaselineMode::Bow | BaselineMode::Ngram => Weighting::Count,
        BaselineMode::TfidfBow | BaselineMode::TfidfNgram => Weighting::TfIdf,
    };
    let tokenizer = match args.mode {
        BaselineMode::Ngram | BaselineMode::TfidfNgram => Tokenizer::CharNgrams(args.ngram),
        BaselineMode::Bow | BaselineMode::TfidfBow => Tokenizer::Words(match &args.lexicon {
            Some(p) => load_lexicon(p).map_err(|e| CliError::at(p, e))?,
            None => Lexicon::bundled(),
        }),
    };
    let texts: Vec<&str> = train.iter().map(|r| r.text.as_str()).collect();
    let vocab = fit_vocab(&texts, tokenizer, args.vocab_size, weighting)?;
    info!(
        "vocabulary of {} terms fitted on {} documents",
        vocab.len(),
        train.len()
    );
    if let Some(path) = &args.vocab_out {
        write_atomic(path, |out| {
            vocab.write_to(out).map_err(|e| CliError::at(path, e))
        })?;
    }

    let num_classes = train
        .iter()
        .chain(&test)
        .map(|r| r.label)
        .max()
        .unwrap_or(0)
        + 1;
    let cfg = LinearTrainConfig {
        epochs: args.epochs,
        learning_rate: args.lr,
        l2: args.l2,
        batch_size: args.batch,
        seed: args.seed,
    };
    let x_train = features(&train, &vocab, weighting)?;
    let y_train: Vec<usize> = train.iter().map(|r| r.label).collect();
    let clf = train_linear(
        &x_train,
        &y_train,
        vocab.len().max(1),
        num_classes.max(2),
        &cfg,
    )?;

    let error = |x: &[SparseVector], recs: &[CorpusRecord]| -> CliResult<f64> {
        let mut wrong = 0;
        for (v, r) in x.iter().zip(recs) {
            wrong += (predict(&clf, v)? != r.label) as usize;
        }
        Ok(wrong as f64 / recs.len().max(1) as f64)
    };
    let x_test = features(&test, &vocab, weighting)?;
    emit("vocab_size", vocab.len());
    emit("train_error", format!("{:.6}", error(&x_train, &train)?));
    emit("test_error", format!("{:.6}", error(&x_test, &test)?));
    Ok(())
}
