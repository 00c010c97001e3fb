use charcnn_core::encoding::{build_corpus_alphabet, build_pinyin_alphabet, BLANK};

use super::read_records;
use crate::args::AlphabetArgs;
use crate::error::{CliError, CliResult};
use crate::io::{emit, require_file, write_atomic};

pub fn run(args: &AlphabetArgs) -> CliResult<()> {
    for p in &args.corpus {
        require_file(p)?;
    }
    let alphabet = if args.corpus.is_empty() {
        build_pinyin_alphabet()
    } else {
        let mut texts = Vec::new();
        for p in &args.corpus {
            texts.extend(read_records(p)?.into_iter().map(|r| r.text));
        }
        build_corpus_alphabet(texts.iter(), BLANK)?
    };
    write_atomic(&args.output, |out| {
        alphabet
            .write_to(out)
            .map_err(|e| CliError::at(&args.output, e))
    })?;
    emit("size", alphabet.size());
    Ok(())
}
