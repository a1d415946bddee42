//! CSV emission and loading.
//!
//! Numbers use Rust's shortest round-trip formatting (`.` decimal point, no
//! grouping) and rows end in LF, so identical inputs give identical bytes.

use std::path::{Path, PathBuf};

use intrans_core::{RepetitionMetrics, ScatterReport, TournamentHistory};

use crate::error::{CliError, Result};

pub const TIMESERIES_HEADER: [&str; 8] =
    ["k", "player", "sc", "rt", "gp", "rank_sc", "rank_rt", "rank_gp"];

pub const SUBSTRATE_HEADER: [&str; 4] = ["index", "s", "f_obj", "f_sub"];

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("writing to memory cannot fail")
}

fn record<W: std::io::Write>(w: &mut csv::Writer<W>, fields: &[String]) {
    w.write_record(fields).expect("writing to memory cannot fail");
}

fn save(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(CliError::io(path))
}

/// One row per (retained instance, player). `rt` is the rating after the
/// instance's update, at full precision; players are numbered from 1.
pub fn render_timeseries_csv(history: &TournamentHistory) -> Vec<u8> {
    let mut w = writer();
    record(&mut w, &TIMESERIES_HEADER.map(String::from));
    for k in history.retained_range() {
        let sc = history.scores[k].values();
        let rt = history.rating_after(k).values();
        let gp = history.gp_at(k).expect("retained instance has gp");
        let [r_sc, r_rt, r_gp] = history.ranks_at(k).expect("retained instance has ranks");
        for i in 0..sc.len() {
            record(
                &mut w,
                &[
                    k.to_string(),
                    (i + 1).to_string(),
                    sc[i].to_string(),
                    rt[i].to_string(),
                    gp[i].to_string(),
                    r_sc.values()[i].to_string(),
                    r_rt.values()[i].to_string(),
                    r_gp.values()[i].to_string(),
                ],
            );
        }
    }
    finish(w)
}

pub fn write_timeseries_csv(history: &TournamentHistory, path: &Path) -> Result<()> {
    save(path, &render_timeseries_csv(history))
}

pub fn scatter_header() -> Vec<String> {
    ["N", "p_rand", "rep"]
        .iter()
        .chain(RepetitionMetrics::COLUMNS.iter())
        .map(|s| s.to_string())
        .collect()
}

pub fn summary_header() -> Vec<String> {
    let mut h: Vec<String> = ["N", "p_rand", "reps"].map(String::from).to_vec();
    for c in RepetitionMetrics::COLUMNS {
        h.push(format!("{c}_mean"));
        h.push(format!("{c}_lo"));
        h.push(format!("{c}_hi"));
    }
    h
}

/// Per-repetition rows and per-cell summary rows.
pub fn render_scatter_csv(report: &ScatterReport) -> (Vec<u8>, Vec<u8>) {
    let mut data = writer();
    record(&mut data, &scatter_header());
    let mut summary = writer();
    record(&mut summary, &summary_header());
    for cell in &report.cells {
        for (rep, m) in cell.reps.iter().enumerate() {
            let mut row = vec![
                cell.n_players.to_string(),
                cell.p_rand.to_string(),
                rep.to_string(),
            ];
            row.extend(m.values().iter().map(f64::to_string));
            record(&mut data, &row);
        }
        let mut row = vec![
            cell.n_players.to_string(),
            cell.p_rand.to_string(),
            cell.reps.len().to_string(),
        ];
        for ci in &cell.summary {
            row.push(ci.mean.to_string());
            row.push(ci.lo().to_string());
            row.push(ci.hi().to_string());
        }
        record(&mut summary, &row);
    }
    (finish(data), finish(summary))
}

/// Companion summary path: `dir/name.csv` becomes `dir/name_summary.csv`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}_summary.csv"))
}

/// Writes `path` and its `_summary.csv` companion; returns both paths.
pub fn write_scatter_csv(report: &ScatterReport, path: &Path) -> Result<[PathBuf; 2]> {
    let (data, summary) = render_scatter_csv(report);
    let spath = summary_path(path);
    save(path, &data)?;
    save(&spath, &summary)?;
    Ok([path.to_path_buf(), spath])
}

pub fn render_substrate_csv(points: &[f64], f_obj: &[f64], f_sub: &[f64]) -> Vec<u8> {
    let mut w = writer();
    record(&mut w, &SUBSTRATE_HEADER.map(String::from));
    for (i, ((s, o), f)) in points.iter().zip(f_obj).zip(f_sub).enumerate() {
        record(
            &mut w,
            &[i.to_string(), s.to_string(), o.to_string(), f.to_string()],
        );
    }
    finish(w)
}

/// A CSV file held as strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    pub fn from_bytes(bytes: &[u8], origin: &Path) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(bytes);
        let headers = r
            .headers()
            .map_err(CliError::csv(origin))?
            .iter()
            .map(String::from)
            .collect();
        let rows = r
            .records()
            .map(|rec| {
                rec.map(|rec| rec.iter().map(String::from).collect())
                    .map_err(CliError::csv(origin))
            })
            .collect::<Result<Vec<Vec<String>>>>()?;
        Ok(Table { headers, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(CliError::io(path))?;
        Self::from_bytes(&bytes, path)
    }
}
