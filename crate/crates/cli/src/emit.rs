use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::report::{Report, Tabular};
use crate::CliError;

/// Renders `report` into bytes. JSON is pretty-printed with keys in
/// declaration order; CSV carries only the result table. Both end in LF.
pub fn render<T: Serialize + Tabular>(
    report: &Report<T>,
    format: Format,
) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(report)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let (header, rows) = report.result.table().ok_or_else(|| {
                CliError::Usage(format!(
                    "`{}` has no CSV form; use --format json",
                    report.meta.config.command
                ))
            })?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(&header)?;
            for row in rows {
                w.write_record(&row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

/// Writes the rendered report to `out` and returns the byte count.
pub fn emit_report<T: Serialize + Tabular>(
    report: &Report<T>,
    format: Format,
    out: &mut dyn Write,
) -> Result<usize, CliError> {
    let bytes = render(report, format)?;
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(bytes.len())
}
