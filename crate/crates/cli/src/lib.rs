//! Batch front-end for the solver: run builtin problems to trace files,
//! score a directory of traces, and statistically compare two directories.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub mod compare;
pub mod discover;
pub mod eval;
pub mod run;

/// Environment variable that prefixes relative output directories, so batch
/// schedulers can redirect results without touching command lines.
pub const OUT_ENV: &str = "RDEX_OUT";

/// Applies [`OUT_ENV`] to a relative path; absolute paths pass through.
pub fn resolve_out_dir(out: &Path) -> PathBuf {
    if out.is_absolute() {
        return out.to_path_buf();
    }
    match std::env::var_os(OUT_ENV) {
        Some(prefix) if !prefix.is_empty() => PathBuf::from(prefix).join(out),
        _ => out.to_path_buf(),
    }
}

/// Writes via a temporary sibling then renames, so partial files never
/// appear under the final name.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming over {}", path.display()))?;
    Ok(())
}
