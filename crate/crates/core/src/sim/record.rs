use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::SimError;

pub const CSV_SCHEMA_LINE: &str = "#schema=1";
pub const CSV_HEADER: &str = "decoder,point,frames,frame_errors,bit_errors,ml_certified,fractional,avg_lp_solves,avg_cuts,avg_iterations,ms_per_frame";

/// Totals of one decoder at one channel point.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub decoder: String,
    pub point: f64,
    pub frames: usize,
    pub frame_errors: usize,
    pub bit_errors: usize,
    pub ml_certified: usize,
    /// Frames that ended on a fractional pseudocodeword.
    pub fractional: usize,
    pub avg_lp_solves: f64,
    pub avg_cuts: f64,
    pub avg_iterations: f64,
    pub ms_per_frame: f64,
}

impl SimRecord {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    pub fn ber(&self, n: usize) -> f64 {
        self.bit_errors as f64 / (self.frames * n) as f64
    }

    /// 95% Wilson interval on the frame error rate.
    pub fn fer_confidence(&self) -> (f64, f64) {
        wilson_interval(self.frame_errors, self.frames)
    }

    fn fields(&self) -> [String; 11] {
        [
            self.decoder.clone(),
            self.point.to_string(),
            self.frames.to_string(),
            self.frame_errors.to_string(),
            self.bit_errors.to_string(),
            self.ml_certified.to_string(),
            self.fractional.to_string(),
            format!("{:.4}", self.avg_lp_solves),
            format!("{:.4}", self.avg_cuts),
            format!("{:.4}", self.avg_iterations),
            format!("{:.6}", self.ms_per_frame),
        ]
    }

    pub fn to_csv_line(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(self.fields()).expect("writing to memory");
        let bytes = w.into_inner().expect("writing to memory");
        String::from_utf8(bytes).expect("fields are UTF-8").trim_end().to_string()
    }

    fn from_record(rec: &csv::StringRecord, line_no: usize) -> Result<Self, SimError> {
        let err = |msg: String| SimError::Csv { line: line_no, msg };
        if rec.len() != 11 {
            return Err(err(format!("expected 11 fields, found {}", rec.len())));
        }
        let int = |i: usize| rec[i].parse::<usize>().map_err(|_| err(format!("bad integer {:?}", &rec[i])));
        let real = |i: usize| rec[i].parse::<f64>().map_err(|_| err(format!("bad number {:?}", &rec[i])));
        Ok(Self {
            decoder: rec[0].to_string(),
            point: real(1)?,
            frames: int(2)?,
            frame_errors: int(3)?,
            bit_errors: int(4)?,
            ml_certified: int(5)?,
            fractional: int(6)?,
            avg_lp_solves: real(7)?,
            avg_cuts: real(8)?,
            avg_iterations: real(9)?,
            ms_per_frame: real(10)?,
        })
    }

    pub fn from_csv_line(line: &str, line_no: usize) -> Result<Self, SimError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(line.as_bytes());
        let rec = r
            .records()
            .next()
            .ok_or_else(|| SimError::Csv {
                line: line_no,
                msg: "empty line".into(),
            })?
            .map_err(|e| SimError::Csv {
                line: line_no,
                msg: e.to_string(),
            })?;
        Self::from_record(&rec, line_no)
    }
}

/// Wilson score interval at 95% confidence for `errors` out of `frames`.
pub fn wilson_interval(errors: usize, frames: usize) -> (f64, f64) {
    if frames == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = frames as f64;
    let p = errors as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if errors == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if errors == frames { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Append-only CSV of records, keyed by `(decoder, point)`.
#[derive(Debug)]
pub struct CsvLog {
    path: PathBuf,
    records: Vec<SimRecord>,
}

impl CsvLog {
    /// Opens `path`, reading any records already there. A missing file is
    /// an empty log; the header is written with the first record.
    pub fn open(path: &Path) -> Result<Self, SimError> {
        let mut records = Vec::new();
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            if !text.trim().is_empty() {
                let body = match text.split_once('\n') {
                    Some((first, rest)) if first.trim() == CSV_SCHEMA_LINE => rest,
                    _ => {
                        return Err(SimError::Csv {
                            line: 1,
                            msg: format!("expected {CSV_SCHEMA_LINE:?}"),
                        })
                    }
                };
                let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(body.as_bytes());
                let header = reader.headers().map_err(|e| SimError::Csv { line: 2, msg: e.to_string() })?;
                if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
                    return Err(SimError::Csv {
                        line: 2,
                        msg: "missing or unexpected header".into(),
                    });
                }
                for rec in reader.records() {
                    let rec = rec.map_err(|e| SimError::Csv { line: 0, msg: e.to_string() })?;
                    let line = rec.position().map_or(0, |p| p.line() as usize + 1);
                    records.push(SimRecord::from_record(&rec, line)?);
                }
            }
        }
        Ok(Self {
            path: path.to_path_buf(),
            records,
        })
    }

    pub fn records(&self) -> &[SimRecord] {
        &self.records
    }

    pub fn contains(&self, decoder: &str, point: f64) -> bool {
        self.records.iter().any(|r| r.decoder == decoder && r.point == point)
    }

    pub fn append(&mut self, record: SimRecord) -> Result<(), SimError> {
        let fresh = !self.path.exists() || std::fs::metadata(&self.path)?.len() == 0;
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        if fresh {
            writeln!(file, "{CSV_SCHEMA_LINE}")?;
            writeln!(file, "{CSV_HEADER}")?;
        }
        writeln!(file, "{}", record.to_csv_line())?;
        self.records.push(record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_examples() {
        assert_eq!(wilson_interval(0, 50).0, 0.0);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
        let width = |n: usize| {
            let (l, h) = wilson_interval(n / 10, n);
            h - l
        };
        assert!(width(100) > width(1000) && width(1000) > width(10_000));
        assert_eq!(wilson_interval(7, 7).1, 1.0);
    }

    #[test]
    fn csv_line_round_trip() {
        let r = SimRecord {
            decoder: "blpd".into(),
            point: 0.035,
            frames: 1000,
            frame_errors: 12,
            bit_errors: 40,
            ml_certified: 985,
            fractional: 11,
            avg_lp_solves: 1.0,
            avg_cuts: 0.0,
            avg_iterations: 0.0,
            ms_per_frame: 0.0,
        };
        assert_eq!(SimRecord::from_csv_line(&r.to_csv_line(), 3).unwrap(), r);
        let comma = SimRecord {
            decoder: "ocdd:8,2".into(),
            ..r
        };
        assert_eq!(comma.to_csv_line().split(',').next(), Some("\"ocdd:8"));
        assert_eq!(SimRecord::from_csv_line(&comma.to_csv_line(), 3).unwrap(), comma);
        assert!(SimRecord::from_csv_line("blpd,0.1,3", 3).is_err());
    }
}
