use std::fs::{self, File};
use std::io::BufReader;

use charcnn_core::corpus::{
    augment_pinyin, filter_short, label_by_domain, split_named, transliterate_records,
    DatasetManifest, DomainMap, DumpReader, EncodingTag,
};
use charcnn_core::Format;
use encoding_rs::Encoding;
use log::info;

use super::write_records;
use crate::args::{BuildDatasetArgs, DatasetFormat};
use crate::error::{CliError, CliResult};
use crate::io::{emit, require_file, write_atomic};

pub fn run(args: &BuildDatasetArgs) -> CliResult<()> {
    require_file(&args.dump)?;
    if let Some(p) = &args.domain_map {
        require_file(p)?;
    }
    args.pinyin.validate()?;
    let encoding = Encoding::for_label(args.encoding.as_bytes())
        .ok_or_else(|| CliError::input(format!("unknown text encoding {:?}", args.encoding)))?;
    if !(args.test_frac > 0.0 && args.test_frac < 1.0) {
        return Err(CliError::input(format!(
            "--test-frac must be in (0, 1), got {}",
            args.test_frac
        )));
    }

    let map = match &args.domain_map {
        Some(p) => {
            let f = File::open(p).map_err(|e| CliError::at(p, e))?;
            DomainMap::from_reader(BufReader::new(f)).map_err(|e| CliError::at(p, e))?
        }
        None => DomainMap::sogou_default(),
    };

    let file = File::open(&args.dump).map_err(|e| CliError::at(&args.dump, e))?;
    let mut reader = DumpReader::with_decoder(BufReader::new(file), move |bytes| {
        encoding.decode_without_bom_handling(bytes).0.into_owned()
    });
    let (mut docs, mut unlabeled, mut short) = (0usize, 0usize, 0usize);
    let mut records = Vec::new();
    for doc in reader.by_ref() {
        let doc = doc.map_err(|e| CliError::at(&args.dump, e))?;
        docs += 1;
        match label_by_domain(&doc, &map) {
            None => unlabeled += 1,
            Some(r) if !filter_short(&r.text, args.min_len) => short += 1,
            Some(r) => records.push(r),
        }
    }
    let skipped = reader.skipped();
    info!("{docs} documents parsed, {skipped} malformed blocks skipped, {unlabeled} unlabeled, {short} too short");

    let split = split_named(records, args.test_frac, args.seed, map.classes())?;
    let (train, test, tag) = match args.format {
        DatasetFormat::Chinese => (split.train, split.test, EncodingTag::Chinese),
        DatasetFormat::A | DatasetFormat::B => {
            let (table, lexicon) = args.pinyin.load()?;
            let (format, tag) = if args.format == DatasetFormat::A {
                (Format::A, EncodingTag::PinyinA)
            } else {
                (Format::B, EncodingTag::PinyinB)
            };
            (
                transliterate_records(&split.train, &table, &lexicon, format),
                transliterate_records(&split.test, &table, &lexicon, format),
                tag,
            )
        }
        DatasetFormat::Both => {
            let (table, lexicon) = args.pinyin.load()?;
            (
                augment_pinyin(&split.train, &table, &lexicon),
                augment_pinyin(&split.test, &table, &lexicon),
                EncodingTag::Augmented,
            )
        }
    };
    let manifest = DatasetManifest::from_splits(map.classes().to_vec(), tag, &train, &test)?;

    fs::create_dir_all(&args.out).map_err(|e| CliError::at(&args.out, e))?;
    write_records(&args.out.join("train.csv"), &train)?;
    write_records(&args.out.join("test.csv"), &test)?;
    let manifest_path = args.out.join("manifest.tsv");
    write_atomic(&manifest_path, |out| {
        manifest
            .write_to(out)
            .map_err(|e| CliError::at(&manifest_path, e))
    })?;

    emit("documents", docs);
    emit("skipped", skipped);
    emit("unlabeled", unlabeled);
    emit("too_short", short);
    let mut buf = Vec::new();
    manifest.write_to(&mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    info!(
        "wrote {} train and {} test records to {}",
        train.len(),
        test.len(),
        args.out.display()
    );
    Ok(())
}
