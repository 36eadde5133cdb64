use std::fmt::Write as _;
use std::path::Path;

use super::ExperimentResults;
use crate::error::{Error, Result};
use crate::fmt::real;

pub const CSV_HEADER: &str = "x,rule,decision,satisfaction";

/// Records in stored order under the `x,rule,decision,satisfaction` header.
pub fn to_csv(results: &ExperimentResults) -> String {
    let mut out = String::with_capacity(32 * (results.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &results.records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            real(r.x),
            r.rule,
            r.decision,
            real(r.satisfaction)
        );
    }
    out
}

pub fn emit_csv(results: &ExperimentResults, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(results)).map_err(|e| Error::io(path, e))
}
