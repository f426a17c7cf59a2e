mod analyze;
mod generate;
mod sweep;
mod theory;
mod validate;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub use analyze::analyze;
pub use generate::generate;
pub use sweep::sweep;
pub use theory::{classify, theory};
pub use validate::validate;

/// What a command reports back to `main`.
pub enum Status {
    Ok,
    /// A requested check ran and did not pass.
    ChecksFailed,
}

/// JSON document wrapping a command's results with its settings.
#[derive(Serialize)]
pub struct Envelope<'a, C: Serialize, R: Serialize> {
    pub version: &'static str,
    pub command: &'static str,
    pub config: &'a C,
    #[serde(flatten)]
    pub result: R,
}

impl<'a, C: Serialize, R: Serialize> Envelope<'a, C, R> {
    pub fn new(command: &'static str, config: &'a C, result: R) -> Self {
        Envelope {
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            result,
        }
    }
}

pub fn output_path(out_dir: &Path, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    Ok(out_dir.join(name))
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    gpa_core::io::write_json(value, path)?;
    Ok(())
}

/// Writes a CSV file from a header and pre-formatted rows.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("{}", path.display()))?;
    let mut out = BufWriter::new(file);
    let io = |e| anyhow::Error::new(e).context(format!("{}", path.display()));
    writeln!(out, "{}", header.join(",")).map_err(io)?;
    for row in rows {
        writeln!(out, "{}", row.join(",")).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Formats an optional float; missing values become empty cells.
pub fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v}")).unwrap_or_default()
}
