//! CSV and JSON emitters.
//!
//! Numbers in CSV are written in scientific notation with 17 significant
//! digits, `.` as decimal separator and LF line endings.

use std::io::Write;

use serde::Serialize;

use crate::multiplier::MultiplierSeries;
use crate::path::PeriodState;
use crate::regions::RegionGrid;

/// 17 significant digits, locale-independent.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// `k,x,pi,i,regime`, one row per period.
pub fn write_path_csv<W: Write>(w: W, states: &[PeriodState]) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(["k", "x", "pi", "i", "regime"])?;
    for (k, s) in states.iter().enumerate() {
        out.write_record([
            k.to_string(),
            fmt_num(s.x),
            fmt_num(s.pi),
            fmt_num(s.i),
            s.regime.as_str().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `p,d,msv_count,kind,stability` in grid storage order (d-major). The
/// count column is empty for truncated-mode maps.
pub fn write_region_csv<W: Write>(w: W, grid: &RegionGrid) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(["p", "d", "msv_count", "kind", "stability"])?;
    for (p, d, label) in grid.cells() {
        out.write_record([
            fmt_num(p),
            fmt_num(d),
            label.msv_count.map(|c| c.to_string()).unwrap_or_default(),
            label.truncated_kind.as_str().to_string(),
            label.stability.as_str().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `ell,m,regime_context`.
pub fn write_multiplier_csv<W: Write>(w: W, series: &MultiplierSeries) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(["ell", "m", "regime_context"])?;
    for (i, m) in series.values.iter().enumerate() {
        let ell = i + 1;
        out.write_record([
            ell.to_string(),
            fmt_num(*m),
            series.entry_label(ell).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")
}
