//! CSV readers for the bundled data tables and writers for run outputs.
//!
//! Every float is written in its shortest round-trip form, so re-reading a
//! file recovers the exact values that were written.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use quietvoyage_core::env::HearingGroup;
use quietvoyage_core::noise::Audiogram;

use crate::error::{AppError, AppResult};

/// Shortest round-trip text for `x`, in exponent form when very small or large.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn open_reader(path: &Path) -> AppResult<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| AppError::io(path, e))?;
    Ok(csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file))
}

/// Reads a numeric table whose header must be exactly `header`.
pub fn read_numeric(path: &Path, header: &[&str]) -> AppResult<Vec<Vec<f64>>> {
    let mut rdr = open_reader(path)?;
    let found: Vec<String> = rdr
        .headers()
        .map_err(|e| AppError::parse(path, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found != header {
        return Err(AppError::parse(
            path,
            format!("expected header `{}`, found `{}`", header.join(","), found.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| AppError::parse(path, e))?;
        let line = k + 2;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| AppError::parse(path, format!("line {line}: `{s}` is not a number")))
            })
            .collect::<AppResult<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(AppError::parse(path, "no data rows"));
    }
    Ok(rows)
}

/// Two-column profile such as `range_nm,depth_m` or `depth_m,speed_ms`.
pub fn read_pairs(path: &Path, header: [&str; 2]) -> AppResult<Vec<(f64, f64)>> {
    Ok(read_numeric(path, &header)?.into_iter().map(|r| (r[0], r[1])).collect())
}

pub const AUDIOGRAM_HEADER: [&str; 6] = ["group", "alpha0_db", "p1_db", "p2_hz", "p3_hz", "p4"];

pub fn read_audiograms(path: &Path) -> AppResult<Vec<Audiogram>> {
    let mut rdr = open_reader(path)?;
    let found: Vec<String> = rdr
        .headers()
        .map_err(|e| AppError::parse(path, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found != AUDIOGRAM_HEADER {
        return Err(AppError::parse(
            path,
            format!("expected header `{}`", AUDIOGRAM_HEADER.join(",")),
        ));
    }
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| AppError::parse(path, e))?;
        let line = k + 2;
        let group: HearingGroup = rec[0]
            .parse()
            .map_err(|e| AppError::parse(path, format!("line {line}: {e}")))?;
        let num = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|_| AppError::parse(path, format!("line {line}: `{}` is not a number", &rec[i])))
        };
        out.push(Audiogram {
            group,
            alpha0_db: num(1)?,
            p1_db: num(2)?,
            p2_hz: num(3)?,
            p3_hz: num(4)?,
            p4: num(5)?,
        });
    }
    if out.is_empty() {
        return Err(AppError::parse(path, "no data rows"));
    }
    Ok(out)
}

pub const SFOC_HEADER: [&str; 2] = ["load_fraction", "sfoc_g_per_kwh"];
pub const CHART_HEADER: [&str; 3] = ["speed_length_ratio", "prismatic_coeff", "c_r"];
pub const RESISTANCE_HEADER: [&str; 2] = ["speed_kt", "resistance_kn"];
pub const BATHYMETRY_HEADER: [&str; 2] = ["range_nm", "depth_m"];
pub const SSP_HEADER: [&str; 2] = ["depth_m", "speed_ms"];

/// Writes `rows` under `header`, creating or truncating `path`.
pub fn write_table(path: &Path, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> AppResult<()> {
    let file = File::create(path).map_err(|e| AppError::io(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    let io_err = |e: csv::Error| AppError::io(path, std::io::Error::other(e));
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(&r).map_err(io_err)?;
    }
    w.flush().map_err(|e| AppError::io(path, e))?;
    Ok(())
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> AppResult<()> {
    let tmp = path.with_extension("tmp");
    let mut f = File::create(&tmp).map_err(|e| AppError::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| AppError::io(&tmp, e))?;
    f.sync_all().map_err(|e| AppError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| AppError::io(path, e))
}

/// One row of the Pareto export.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoRow {
    /// TOPSIS rank, 1 = trade-off solution.
    pub rank: usize,
    pub closeness: f64,
    pub j1_w_m2: f64,
    pub j1_db: f64,
    pub j2_mt: f64,
    pub eta_h: f64,
    pub normalized_j1: f64,
    pub normalized_j2: f64,
    pub speeds_kt: Vec<f64>,
}

pub const PARETO_FIXED: [&str; 8] = [
    "rank",
    "closeness",
    "j1_w_m2",
    "j1_db",
    "j2_mt",
    "eta_h",
    "normalized_j1",
    "normalized_j2",
];

fn pareto_header(n_legs: usize) -> Vec<String> {
    PARETO_FIXED
        .iter()
        .map(|s| s.to_string())
        .chain((1..=n_legs).map(|k| format!("v_{k}")))
        .collect()
}

pub fn write_pareto(path: &Path, rows: &[ParetoRow]) -> AppResult<()> {
    let n = rows.first().map_or(0, |r| r.speeds_kt.len());
    write_table(
        path,
        &pareto_header(n),
        rows.iter().map(|r| {
            let mut v = vec![
                r.rank.to_string(),
                fmt_f64(r.closeness),
                fmt_f64(r.j1_w_m2),
                fmt_f64(r.j1_db),
                fmt_f64(r.j2_mt),
                fmt_f64(r.eta_h),
                fmt_f64(r.normalized_j1),
                fmt_f64(r.normalized_j2),
            ];
            v.extend(r.speeds_kt.iter().map(|&x| fmt_f64(x)));
            v
        }),
    )
}

pub fn read_pareto(path: &Path) -> AppResult<Vec<ParetoRow>> {
    let mut rdr = open_reader(path)?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| AppError::parse(path, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    let n_legs = header.len().saturating_sub(PARETO_FIXED.len());
    if n_legs == 0 || header != pareto_header(n_legs) {
        return Err(AppError::parse(
            path,
            format!("expected header `{},v_1..v_n`", PARETO_FIXED.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| AppError::parse(path, e))?;
        let line = k + 2;
        let num = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|_| AppError::parse(path, format!("line {line}: `{}` is not a number", &rec[i])))
        };
        rows.push(ParetoRow {
            rank: rec[0]
                .parse()
                .map_err(|_| AppError::parse(path, format!("line {line}: bad rank `{}`", &rec[0])))?,
            closeness: num(1)?,
            j1_w_m2: num(2)?,
            j1_db: num(3)?,
            j2_mt: num(4)?,
            eta_h: num(5)?,
            normalized_j1: num(6)?,
            normalized_j2: num(7)?,
            speeds_kt: (8..8 + n_legs).map(num).collect::<AppResult<_>>()?,
        });
    }
    if rows.is_empty() {
        return Err(AppError::parse(path, "no data rows"));
    }
    Ok(rows)
}
