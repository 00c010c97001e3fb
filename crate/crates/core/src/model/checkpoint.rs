use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{ModelConfig, ModelParams};
use crate::encoding::Alphabet;
use crate::{Error, Result, Tensor2D};

const MAGIC: &[u8; 4] = b"HCNV";
pub const CHECKPOINT_VERSION: u32 = 1;
const ALPHABET_MARKER: &str = "[alphabet]\n";

/// A decoded checkpoint file.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub config: ModelConfig,
    pub params: ModelParams,
    pub alphabet: Option<Alphabet>,
}

/// Binary layout, little-endian throughout:
///
/// ```text
/// "HCNV" | version u32 | text_len u32 | text (config, optional alphabet)
/// then per array in canonical order:
///   name_len u32 | name | rows u32 | cols u32 | rows*cols f32
/// ```
pub fn write_checkpoint<W: Write>(
    out: W,
    params: &ModelParams,
    config: &ModelConfig,
    alphabet: Option<&Alphabet>,
) -> Result<()> {
    let mut out = BufWriter::new(out);
    let mut text = config.to_text();
    if let Some(a) = alphabet {
        text.push_str(ALPHABET_MARKER);
        text.push_str(&a.to_file_string());
    }
    out.write_all(MAGIC)?;
    out.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    write_len(&mut out, text.len())?;
    out.write_all(text.as_bytes())?;

    let mut result = Ok(());
    params.for_each_array(|a| {
        if result.is_err() {
            return;
        }
        result = (|| -> Result<()> {
            write_len(&mut out, a.name.len())?;
            out.write_all(a.name.as_bytes())?;
            write_len(&mut out, a.rows)?;
            write_len(&mut out, a.cols)?;
            for &v in a.data {
                out.write_all(&(v as f32).to_le_bytes())?;
            }
            Ok(())
        })();
    });
    result?;
    out.flush()?;
    Ok(())
}

fn write_len<W: Write>(out: &mut W, n: usize) -> Result<()> {
    let n = u32::try_from(n)
        .map_err(|_| Error::Checkpoint(format!("length {n} does not fit in u32")))?;
    out.write_all(&n.to_le_bytes())?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(Error::Checkpoint(format!("truncated while reading {what}")));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4, what)?.try_into().expect("4 bytes"),
        ))
    }
}

pub fn read_checkpoint<R: Read>(mut input: R) -> Result<Checkpoint> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let mut cur = Cursor {
        bytes: &bytes,
        pos: 0,
    };

    if cur.take(4, "magic")? != MAGIC {
        return Err(Error::Checkpoint(
            "bad magic bytes (not a checkpoint file)".into(),
        ));
    }
    let version = cur.u32("version")?;
    if version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!(
            "unsupported checkpoint version {version}; this build reads version {CHECKPOINT_VERSION}"
        )));
    }
    let text_len = cur.u32("config length")? as usize;
    let text = std::str::from_utf8(cur.take(text_len, "config text")?)
        .map_err(|_| Error::Checkpoint("config text is not UTF-8".into()))?;
    let (config_text, alphabet_text) = match text.find(ALPHABET_MARKER) {
        Some(i) => (&text[..i], Some(&text[i + ALPHABET_MARKER.len()..])),
        None => (text, None),
    };
    let config = ModelConfig::from_text(config_text)
        .map_err(|e| Error::Checkpoint(format!("config: {e}")))?;
    let alphabet = alphabet_text
        .map(|t| Alphabet::read_from(t.as_bytes()))
        .transpose()
        .map_err(|e| Error::Checkpoint(format!("alphabet: {e}")))?;
    if let Some(a) = &alphabet {
        if a.size() != config.alphabet_size {
            return Err(Error::Checkpoint(format!(
                "alphabet has {} symbols but config says {}",
                a.size(),
                config.alphabet_size
            )));
        }
    }

    let names = ModelParams::array_names(&config);
    let shapes = ModelParams::array_shapes(&config);
    let mut arrays = Vec::with_capacity(names.len());
    for (name, &(rows, cols)) in names.iter().zip(&shapes) {
        let name_len = cur.u32("array name length")? as usize;
        let found = cur.take(name_len, "array name")?;
        if found != name.as_bytes() {
            return Err(Error::Checkpoint(format!(
                "expected array `{name}`, found `{}`",
                String::from_utf8_lossy(found)
            )));
        }
        let (r, c) = (cur.u32("rows")? as usize, cur.u32("cols")? as usize);
        if (r, c) != (rows, cols) {
            return Err(Error::Checkpoint(format!(
                "array `{name}` is {r}x{c}, config implies {rows}x{cols}"
            )));
        }
        let payload = cur.take(rows * cols * 4, name)?;
        let data = payload
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().expect("4 bytes")) as f64)
            .collect();
        arrays.push(Tensor2D::from_vec(rows, cols, data)?);
    }
    if cur.pos != bytes.len() {
        return Err(Error::Checkpoint(format!(
            "{} trailing bytes",
            bytes.len() - cur.pos
        )));
    }
    let params =
        ModelParams::from_arrays(&config, arrays).map_err(|e| Error::Checkpoint(e.to_string()))?;
    Ok(Checkpoint {
        config,
        params,
        alphabet,
    })
}

pub fn save_checkpoint(
    path: impl AsRef<Path>,
    params: &ModelParams,
    config: &ModelConfig,
    alphabet: Option<&Alphabet>,
) -> Result<()> {
    write_checkpoint(File::create(path)?, params, config, alphabet)
}

pub fn load_checkpoint(path: impl AsRef<Path>) -> Result<Checkpoint> {
    read_checkpoint(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::build_pinyin_alphabet;
    use crate::model::{build, Layout};

    fn sample() -> (ModelParams, ModelConfig, Vec<u8>) {
        let mut cfg = ModelConfig::new(Layout::new(2, 2), 42, 12);
        cfg.feature_maps = 6;
        cfg.fc_hidden = 4;
        let p = build(&cfg, 5).unwrap();
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &p, &cfg, Some(&build_pinyin_alphabet())).unwrap();
        (p, cfg, buf)
    }

    #[test]
    fn round_trip_to_f32() {
        let (p, cfg, buf) = sample();
        let ck = read_checkpoint(&buf[..]).unwrap();
        assert_eq!(ck.config, cfg);
        assert_eq!(ck.params, p.rounded_to_f32());
        assert_eq!(ck.alphabet, Some(build_pinyin_alphabet()));
    }

    #[test]
    fn without_alphabet() {
        let (p, cfg, _) = sample();
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &p, &cfg, None).unwrap();
        assert_eq!(read_checkpoint(&buf[..]).unwrap().alphabet, None);
    }

    #[test]
    fn header_layout() {
        let (_, cfg, buf) = sample();
        assert_eq!(&buf[..4], b"HCNV");
        assert_eq!(&buf[4..8], &1u32.to_le_bytes());
        let text_len = u32::from_le_bytes(buf[8..12].try_into().unwrap()) as usize;
        assert!(std::str::from_utf8(&buf[12..12 + text_len])
            .unwrap()
            .starts_with(&cfg.to_text()));
    }

    #[test]
    fn corrupted_magic() {
        let (_, _, mut buf) = sample();
        buf[0] = b'X';
        let err = read_checkpoint(&buf[..]).unwrap_err().to_string();
        assert!(err.contains("magic"), "{err}");
    }

    #[test]
    fn future_version() {
        let (_, _, mut buf) = sample();
        buf[4..8].copy_from_slice(&2u32.to_le_bytes());
        let err = read_checkpoint(&buf[..]).unwrap_err().to_string();
        assert!(err.contains("version 2"), "{err}");
    }

    #[test]
    fn truncation_and_trailing_bytes() {
        let (_, _, buf) = sample();
        for cut in [3, 10, 40, buf.len() - 1] {
            assert!(
                matches!(read_checkpoint(&buf[..cut]), Err(Error::Checkpoint(_))),
                "cut {cut}"
            );
        }
        let mut extra = buf.clone();
        extra.push(0);
        assert!(read_checkpoint(&extra[..]).is_err());
    }
}
