use std::io::Write;

use crate::error::{Error, Result};

use super::Trajectory;

/// Digits after the point in the scientific format, giving 17 significant digits.
pub const CSV_FLOAT_DIGITS: usize = 16;

/// Writes `t`, the chart coordinates and every monitor series, one row per sample.
pub fn write_csv<W: Write>(tr: &Trajectory, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    header.extend(tr.chart.coordinate_names().iter().map(|s| s.to_string()));
    header.extend(tr.invariant_series.iter().map(|s| s.name.clone()));
    w.write_record(&header).map_err(io)?;
    let fmt = |v: f64| format!("{v:.prec$e}", prec = CSV_FLOAT_DIGITS);
    for (i, t) in tr.times.iter().enumerate() {
        let mut row = vec![fmt(*t)];
        row.extend(tr.states[i].coords.iter().map(|v| fmt(*v)));
        row.extend(tr.invariant_series.iter().map(|s| fmt(s.values[i])));
        w.write_record(&row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidArgument(format!("csv output failed: {e}")))
}
