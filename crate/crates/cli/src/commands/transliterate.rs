use charcnn_core::corpus::{augment_pinyin, transliterate_records};
use charcnn_core::Format;
use log::info;

use super::{read_records, write_records};
use crate::args::{PinyinFormat, TransliterateArgs};
use crate::error::CliResult;
use crate::io::emit;

pub fn run(args: &TransliterateArgs) -> CliResult<()> {
    args.pinyin.validate()?;
    let records = read_records(&args.input)?;
    let (table, lexicon) = args.pinyin.load()?;
    let out = match args.format {
        PinyinFormat::A => transliterate_records(&records, &table, &lexicon, Format::A),
        PinyinFormat::B => transliterate_records(&records, &table, &lexicon, Format::B),
        PinyinFormat::Both => augment_pinyin(&records, &table, &lexicon),
    };
    write_records(&args.output, &out)?;
    emit("records_in", records.len());
    emit("records_out", out.len());
    info!("wrote {}", args.output.display());
    Ok(())
}
