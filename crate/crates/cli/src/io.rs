use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Fails with an input error unless `path` is an existing regular file.
pub fn require_file(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::input(format!("no such file: {}", path.display())))
    }
}

/// Writes `path` through a temporary file in the same directory that is
/// renamed into place only once `write` succeeds.
pub fn write_atomic<F>(path: &Path, write: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| CliError::at(dir, e))?;
    let tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::at(dir, e))?;
    {
        let mut out = BufWriter::new(tmp.as_file());
        write(&mut out)?;
        out.flush().map_err(|e| CliError::at(path, e))?;
    }
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::at(path, e))?;
    tmp.persist(path).map_err(|e| CliError::at(path, e.error))?;
    Ok(())
}

/// Machine-readable `key<TAB>value` line on stdout.
pub fn emit(key: &str, value: impl std::fmt::Display) {
    println!("{key}\t{value}");
}
