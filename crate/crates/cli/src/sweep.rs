//! Classification over a rectangular `(a, b)` grid.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use vortmetric_core::metricity::{classify, ClassifyOptions, Model, Verdict};
use vortmetric_core::Real;

use crate::error::CliError;
use crate::format::{self, Format};

/// Cells are classified and written in blocks of this many `a`-rows, so an
/// interrupted sweep leaves only complete rows behind.
const ROWS_PER_BLOCK: usize = 8;

pub const MAX_CELLS: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub min: Real,
    pub max: Real,
    pub step: Real,
}

impl Axis {
    pub fn new(min: Real, max: Real, step: Real) -> Self {
        Axis { min, max, step }
    }

    /// `min + i·step` for `i = 0..=⌊(max − min)/step⌋`, exact when all three
    /// bounds are.
    pub fn values(&self) -> Result<Vec<Real>, CliError> {
        if self.step.signum() <= 0 || !self.step.is_finite() {
            return Err(CliError::usage("grid step must be positive"));
        }
        if self.max < self.min {
            return Err(CliError::usage("grid max must not be below min"));
        }
        let span = (&self.max - &self.min) / &self.step;
        let count = match &span {
            Real::Exact(q) => q.floor().to_integer().try_into().ok().map(|n: u64| n as usize + 1),
            Real::Float(x) => {
                let n = (x + 1e-9).floor();
                (n.is_finite() && n < MAX_CELLS as f64).then_some(n as usize + 1)
            }
        };
        let count = count.filter(|&n| n <= MAX_CELLS).ok_or_else(|| CliError::usage("grid is too large"))?;
        Ok((0..count).map(|i| &self.min + &(&Real::int(i as i64) * &self.step)).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub a: Axis,
    pub b: Axis,
}

impl Grid {
    /// `[-3, 3]²` with step `3/50`: 101 × 101 cells.
    pub fn default_square() -> Grid {
        let axis = Axis::new(Real::int(-3), Real::int(3), Real::ratio(3, 50));
        Grid { a: axis.clone(), b: axis }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub a: Real,
    pub b: Real,
    /// In [`Model::ALL`] order.
    pub verdicts: [Verdict; 3],
}

pub fn classify_cell(a: &Real, b: &Real, opts: &ClassifyOptions) -> Cell {
    Cell { a: a.clone(), b: b.clone(), verdicts: Model::ALL.map(|m| classify(m, a, b, opts)) }
}

/// Every cell, `a`-major then `b`, classified on the rayon pool.
pub fn sweep(grid: &Grid, opts: &ClassifyOptions) -> Result<Vec<Cell>, CliError> {
    let (avals, bvals) = axes(grid)?;
    Ok(avals.par_iter().flat_map_iter(|a| bvals.iter().map(move |b| classify_cell(a, b, opts))).collect())
}

fn axes(grid: &Grid) -> Result<(Vec<Real>, Vec<Real>), CliError> {
    let avals = grid.a.values()?;
    let bvals = grid.b.values()?;
    if avals.len().saturating_mul(bvals.len()) > MAX_CELLS {
        return Err(CliError::usage("grid is too large"));
    }
    Ok((avals, bvals))
}

pub fn csv_header() -> Vec<String> {
    let mut h = vec!["a".to_string(), "b".to_string()];
    for m in Model::ALL {
        let name = m.as_str().replace('-', "_");
        h.push(name.clone());
        h.push(format!("{name}_detail"));
    }
    h
}

pub fn csv_record(cell: &Cell) -> Vec<String> {
    let mut r = vec![format::real(&cell.a), format::real(&cell.b)];
    for v in &cell.verdicts {
        r.push(v.label().to_string());
        r.push(format::verdict_detail(v));
    }
    r
}

pub fn json_record(cell: &Cell) -> serde_json::Value {
    let verdicts: Vec<serde_json::Value> = Model::ALL
        .iter()
        .zip(&cell.verdicts)
        .map(|(m, v)| serde_json::json!({"model": m.as_str(), "verdict": v.label(), "detail": format::verdict_detail(v)}))
        .collect();
    serde_json::json!({"a": format::real_json(&cell.a), "b": format::real_json(&cell.b), "verdicts": verdicts})
}

/// Streams the sweep as CSV or JSON lines, flushing after every block of
/// rows. Returns the cells for callers that also want the plot.
pub fn write_sweep<W: Write>(grid: &Grid, opts: &ClassifyOptions, fmt: Format, out: W) -> Result<Vec<Cell>, CliError> {
    let (avals, bvals) = axes(grid)?;
    let mut cells = Vec::with_capacity(avals.len() * bvals.len());
    match fmt {
        Format::Json => {
            let mut out = out;
            for block in avals.chunks(ROWS_PER_BLOCK) {
                let rows = classify_block(block, &bvals, opts);
                for cell in &rows {
                    serde_json::to_writer(&mut out, &json_record(cell))?;
                    out.write_all(b"\n")?;
                }
                out.flush()?;
                cells.extend(rows);
            }
        }
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(csv_header())?;
            for block in avals.chunks(ROWS_PER_BLOCK) {
                let rows = classify_block(block, &bvals, opts);
                for cell in &rows {
                    w.write_record(csv_record(cell))?;
                }
                w.flush()?;
                cells.extend(rows);
            }
        }
    }
    Ok(cells)
}

fn classify_block(avals: &[Real], bvals: &[Real], opts: &ClassifyOptions) -> Vec<Cell> {
    avals.par_iter().flat_map_iter(|a| bvals.iter().map(move |b| classify_cell(a, b, opts))).collect()
}

fn colour(v: &Verdict) -> &'static str {
    match v {
        Verdict::Metric { .. } => "#2f9e44",
        Verdict::NonMetric { .. } => "#c92a2a",
        Verdict::Undetermined { .. } => "#f59f00",
    }
}

/// Heat map with one panel per model: `b` to the right, `a` upwards.
pub fn svg(cells: &[Cell], a_count: usize, b_count: usize) -> String {
    const CELL: usize = 4;
    const MARGIN: usize = 40;
    const GAP: usize = 30;
    let (pw, ph) = (b_count * CELL, a_count * CELL);
    let width = MARGIN + Model::ALL.len() * (pw + GAP);
    let height = MARGIN + ph + 60;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    for (panel, model) in Model::ALL.iter().enumerate() {
        let x0 = MARGIN + panel * (pw + GAP);
        let _ = writeln!(s, r#"<text x="{x0}" y="{}">{}</text>"#, MARGIN - 10, model.as_str());
        for (idx, cell) in cells.iter().enumerate() {
            let (i, j) = (idx / b_count.max(1), idx % b_count.max(1));
            let x = x0 + j * CELL;
            let y = MARGIN + ph - (i + 1) * CELL;
            let _ = writeln!(
                s,
                r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                colour(&cell.verdicts[panel])
            );
        }
        let _ = writeln!(s, r#"<rect x="{x0}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
        if let (Some(first), Some(last)) = (cells.first(), cells.last()) {
            let y = MARGIN + ph + 14;
            let _ = writeln!(s, r#"<text x="{x0}" y="{y}">b: {} .. {}</text>"#, format::real(&first.b), format::real(&last.b));
            let _ = writeln!(s, r#"<text x="{x0}" y="{}">a: {} .. {}</text>"#, y + 14, format::real(&first.a), format::real(&last.a));
        }
    }
    let legend_y = height - 12;
    for (k, (label, fill)) in [("metric", "#2f9e44"), ("non-metric", "#c92a2a"), ("undetermined", "#f59f00")].iter().enumerate() {
        let x = MARGIN + k * 130;
        let _ = writeln!(s, r#"<rect x="{x}" y="{}" width="10" height="10" fill="{fill}"/>"#, legend_y - 9);
        let _ = writeln!(s, r#"<text x="{}" y="{legend_y}">{label}</text>"#, x + 14);
    }
    s.push_str("</svg>\n");
    s
}
