use std::fmt::Write as _;

use charcnn_core::corpus::CorpusRecord;
use charcnn_core::encoding::EncodedSample;
use charcnn_core::model::{build, train, write_checkpoint};
use charcnn_core::{Alphabet, EncoderConfig, ModelConfig};
use log::info;

use super::read_records;
use crate::args::TrainCmdArgs;
use crate::config::{model_config, train_config};
use crate::error::{CliError, CliResult};
use crate::io::{emit, require_file, write_atomic};

pub(crate) fn encode_all(
    records: &[CorpusRecord],
    alphabet: &Alphabet,
    cfg: &ModelConfig,
) -> CliResult<Vec<EncodedSample>> {
    let enc = EncoderConfig {
        reverse: cfg.reverse,
        ..EncoderConfig::new(cfg.max_length)?
    };
    if let Some(r) = records.iter().find(|r| r.label >= cfg.num_classes) {
        return Err(CliError::input(format!(
            "label {} outside the model's {} classes",
            r.label + 1,
            cfg.num_classes
        )));
    }
    Ok(records
        .iter()
        .map(|r| EncodedSample::new(&r.text, r.label, alphabet, &enc))
        .collect())
}

pub fn run(args: &TrainCmdArgs) -> CliResult<()> {
    require_file(&args.train)?;
    if let Some(p) = &args.test {
        require_file(p)?;
    }
    args.model.alphabet.validate()?;
    let alphabet = args.model.alphabet.load()?;
    let (mut cfg, explicit_classes) = model_config(&args.model, alphabet.size())?;
    let tc = train_config(&args.train_args, &args.model.set)?;

    let train_records = read_records(&args.train)?;
    let test_records = match &args.test {
        Some(p) => Some(read_records(p)?),
        None => None,
    };
    if !explicit_classes {
        let max_label = train_records
            .iter()
            .chain(test_records.iter().flatten())
            .map(|r| r.label)
            .max()
            .unwrap_or(0);
        cfg.num_classes = (max_label + 1).max(2);
        cfg.validate()?;
    }
    let data = encode_all(&train_records, &alphabet, &cfg)?;
    let test = test_records
        .as_deref()
        .map(|t| encode_all(t, &alphabet, &cfg))
        .transpose()?;

    info!(
        "training {} on {} samples ({} classes, alphabet {}, length {})",
        cfg.layout_name(),
        data.len(),
        cfg.num_classes,
        alphabet.size(),
        cfg.max_length
    );
    let mut params = build(&cfg, tc.seed)?;
    let mut log_text = String::new();
    let log = train(&mut params, &cfg, &tc, &data, test.as_deref(), |e| {
        let line = e.to_line();
        println!("{line}");
        let _ = writeln!(log_text, "{line}");
    })?;

    write_atomic(&args.output, |out| {
        write_checkpoint(out, &params, &cfg, Some(&alphabet))
            .map_err(|e| CliError::at(&args.output, e))
    })?;
    if let Some(path) = &args.log {
        write_atomic(path, |out| {
            out.write_all(log_text.as_bytes())
                .map_err(|e| CliError::at(path, e))
        })?;
    }
    if let Some(last) = log.last() {
        emit("train_error", format!("{:.6}", last.train_error));
        if let Some(t) = last.test_error {
            emit("test_error", format!("{t:.6}"));
        }
    }
    info!("checkpoint written to {}", args.output.display());
    Ok(())
}
