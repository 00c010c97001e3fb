pub mod alphabet;
pub mod baseline;
pub mod dataset;
pub mod eval;
pub mod params;
pub mod train;
pub mod transliterate;

use std::path::Path;

use charcnn_core::corpus::{read_csv_file, write_csv, CorpusRecord};
use charcnn_core::pinyin::{load_lexicon, load_pinyin_table};
use charcnn_core::{Lexicon, PinyinTable};

use crate::args::PinyinDataArgs;
use crate::error::{CliError, CliResult};
use crate::io::{require_file, write_atomic};

pub(crate) fn read_records(path: &Path) -> CliResult<Vec<CorpusRecord>> {
    require_file(path)?;
    read_csv_file(path).map_err(|e| CliError::at(path, e))
}

pub(crate) fn write_records(path: &Path, records: &[CorpusRecord]) -> CliResult<()> {
    write_atomic(path, |out| {
        write_csv(records, out).map_err(|e| CliError::at(path, e))
    })
}

impl PinyinDataArgs {
    pub(crate) fn validate(&self) -> CliResult<()> {
        for p in self.table.iter().chain(&self.lexicon) {
            require_file(p)?;
        }
        Ok(())
    }

    pub(crate) fn load(&self) -> CliResult<(PinyinTable, Lexicon)> {
        let table = match &self.table {
            Some(p) => load_pinyin_table(p).map_err(|e| CliError::at(p, e))?,
            None => PinyinTable::bundled(),
        };
        let lexicon = match &self.lexicon {
            Some(p) => load_lexicon(p).map_err(|e| CliError::at(p, e))?,
            None => Lexicon::bundled(),
        };
        Ok((table, lexicon))
    }
}
