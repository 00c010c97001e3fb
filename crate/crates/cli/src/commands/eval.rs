use charcnn_core::encoding::build_pinyin_alphabet;
use charcnn_core::model::{evaluate, load_checkpoint};
use log::warn;

use super::read_records;
use super::train::encode_all;
use crate::args::EvalArgs;
use crate::error::{CliError, CliResult};
use crate::io::{emit, require_file};

pub fn run(args: &EvalArgs) -> CliResult<()> {
    require_file(&args.checkpoint)?;
    require_file(&args.data)?;
    if let Some(a) = &args.alphabet {
        a.validate()?;
    }
    let ck = load_checkpoint(&args.checkpoint).map_err(|e| CliError::at(&args.checkpoint, e))?;
    let alphabet = match (&args.alphabet, ck.alphabet) {
        (Some(src), _) => src.load()?,
        (None, Some(a)) => a,
        (None, None) => {
            warn!("checkpoint stores no alphabet; assuming the pinyin alphabet");
            build_pinyin_alphabet()
        }
    };
    if alphabet.size() != ck.config.alphabet_size {
        return Err(CliError::input(format!(
            "alphabet has {} symbols but the model expects {}",
            alphabet.size(),
            ck.config.alphabet_size
        )));
    }
    let records = read_records(&args.data)?;
    let data = encode_all(&records, &alphabet, &ck.config)?;
    let result = evaluate(&ck.params, &ck.config, &data)?;
    emit("error_rate", format!("{:.6}", result.error_rate));
    emit("errors", result.errors);
    emit("total", result.total);
    for (i, row) in result.confusion.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        emit(&format!("confusion.{}", i + 1), cells.join("\t"));
    }
    Ok(())
}
