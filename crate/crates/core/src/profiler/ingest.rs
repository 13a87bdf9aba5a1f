//! CSV timing ingestion.
//!
//! Comma-separated, optional header, `n` and `t` columns chosen by 0-based
//! index or by header name. Rows with the same `n` are merged by median.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use super::{median_and_spread, MeasurementSeries, Sample, SeriesError, Source};

pub const MIN_ROWS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_string()),
        })
    }
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "#{i}"),
            ColumnRef::Name(s) => write!(f, "'{s}'"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimeUnit {
    #[default]
    Ns,
    Us,
    Ms,
    S,
}

impl TimeUnit {
    pub fn to_ns(self) -> f64 {
        match self {
            TimeUnit::Ns => 1.0,
            TimeUnit::Us => 1e3,
            TimeUnit::Ms => 1e6,
            TimeUnit::S => 1e9,
        }
    }
}

impl FromStr for TimeUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ns" => Ok(TimeUnit::Ns),
            "us" => Ok(TimeUnit::Us),
            "ms" => Ok(TimeUnit::Ms),
            "s" => Ok(TimeUnit::S),
            other => Err(format!("unknown time unit '{other}' (ns, us, ms, s)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvFormat {
    pub n_col: ColumnRef,
    pub t_col: ColumnRef,
    pub unit: TimeUnit,
}

impl Default for CsvFormat {
    fn default() -> Self {
        CsvFormat {
            n_col: ColumnRef::Index(0),
            t_col: ColumnRef::Index(1),
            unit: TimeUnit::Ns,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("row {row}: {message}")]
    Csv { row: u64, message: String },
    #[error("no column named {0} in header")]
    MissingColumn(ColumnRef),
    #[error("row {row}: cannot parse {column} value '{value}'")]
    Parse {
        row: u64,
        column: &'static str,
        value: String,
    },
    #[error("row {row}: runtime must be positive, got {value}")]
    NonPositiveTime { row: u64, value: f64 },
    #[error("need at least {MIN_ROWS} data rows, found {rows}")]
    TooFewRows { rows: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn ingest(path: &Path, format: &CsvFormat) -> Result<MeasurementSeries, IngestError> {
    let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ingest_reader(file, format, Source::File(path.to_path_buf()))
}

fn parse_n(field: &str) -> Option<u64> {
    if let Ok(n) = field.parse::<u64>() {
        return (n >= 1).then_some(n);
    }
    let x: f64 = field.parse().ok()?;
    (x >= 1.0 && x.fract() == 0.0 && x < u64::MAX as f64).then_some(x as u64)
}

fn resolve(col: &ColumnRef, header: Option<&csv::StringRecord>) -> Result<usize, IngestError> {
    match col {
        ColumnRef::Index(i) => Ok(*i),
        ColumnRef::Name(name) => header
            .and_then(|h| h.iter().position(|f| f == name))
            .ok_or_else(|| IngestError::MissingColumn(col.clone())),
    }
}

pub fn ingest_reader<R: Read>(
    reader: R,
    format: &CsvFormat,
    source: Source,
) -> Result<MeasurementSeries, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let named = matches!(format.n_col, ColumnRef::Name(_)) || matches!(format.t_col, ColumnRef::Name(_));

    let mut header: Option<csv::StringRecord> = None;
    let mut indices: Option<(usize, usize)> = None;
    let mut rows: Vec<(u64, f64)> = Vec::new();

    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| IngestError::Csv {
            row: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(i as u64 + 1, |p| p.line());
        if i == 0 && named {
            header = Some(record);
            continue;
        }
        let (ni, ti) = match indices {
            Some(ix) => ix,
            None => {
                let ix = (
                    resolve(&format.n_col, header.as_ref())?,
                    resolve(&format.t_col, header.as_ref())?,
                );
                indices = Some(ix);
                ix
            }
        };
        let n_field = record.get(ni).unwrap_or("");
        let t_field = record.get(ti).unwrap_or("");
        let n = parse_n(n_field);
        let t = t_field.parse::<f64>().ok().filter(|t| t.is_finite());
        if i == 0 && (n.is_none() || t.is_none()) {
            // unnamed header row
            continue;
        }
        let n = n.ok_or_else(|| IngestError::Parse {
            row,
            column: "n",
            value: n_field.to_string(),
        })?;
        let t = t.ok_or_else(|| IngestError::Parse {
            row,
            column: "t",
            value: t_field.to_string(),
        })?;
        if t <= 0.0 {
            return Err(IngestError::NonPositiveTime { row, value: t });
        }
        rows.push((n, t * format.unit.to_ns()));
    }

    if rows.len() < MIN_ROWS {
        return Err(IngestError::TooFewRows { rows: rows.len() });
    }
    let mut groups: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for (n, t) in rows {
        groups.entry(n).or_default().push(t);
    }
    let samples = groups
        .into_iter()
        .map(|(n, ts)| {
            let (t_ns, spread) = median_and_spread(&ts);
            Sample {
                n,
                t_ns,
                reps: None,
                spread,
            }
        })
        .collect();
    Ok(MeasurementSeries::new(samples, source)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, format: &CsvFormat) -> Result<MeasurementSeries, IngestError> {
        ingest_reader(text.as_bytes(), format, Source::Synthetic("csv".into()))
    }

    fn doubling_rows(header: &str) -> String {
        let mut s = String::from(header);
        for k in 10..18u32 {
            let n = 1u64 << k;
            s.push_str(&format!("{},{}\n", n, 5 * n + (k as u64) * 100));
        }
        s
    }

    #[test]
    fn plain_pairs_pass_through() {
        let s = load(&doubling_rows(""), &CsvFormat::default()).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s.samples()[0].n, 1024);
        assert_eq!(s.samples()[0].t_ns, 5120.0 + 1000.0);
        assert_eq!(s.samples()[0].reps, None);
    }

    #[test]
    fn header_is_detected_for_index_columns() {
        let s = load(&doubling_rows("size,time\n"), &CsvFormat::default()).unwrap();
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn named_columns_and_unit_scaling() {
        let mut text = String::from("label,size,ms\n");
        for k in 0..8u64 {
            text.push_str(&format!("run,{},{}\n", 100 * (k + 1), 0.5 * (k + 1) as f64));
        }
        let fmt = CsvFormat {
            n_col: "size".parse().unwrap(),
            t_col: "ms".parse().unwrap(),
            unit: TimeUnit::Ms,
        };
        let s = load(&text, &fmt).unwrap();
        assert_eq!(s.samples()[0].n, 100);
        assert_eq!(s.samples()[0].t_ns, 0.5e6);
        assert_eq!(s.samples()[7].t_ns, 4e6);
    }

    #[test]
    fn missing_named_column() {
        let fmt = CsvFormat {
            n_col: "size".parse().unwrap(),
            ..CsvFormat::default()
        };
        assert!(matches!(
            load(&doubling_rows("n,t\n"), &fmt),
            Err(IngestError::MissingColumn(_))
        ));
    }

    #[test]
    fn malformed_row_names_its_row() {
        let mut text = doubling_rows("n,t\n");
        text.push_str("n=abc,12\n");
        match load(&text, &CsvFormat::default()) {
            Err(IngestError::Parse { row, column, value }) => {
                assert_eq!(row, 10);
                assert_eq!(column, "n");
                assert_eq!(value, "n=abc");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn too_few_rows() {
        let text = "1,10\n2,20\n3,30\n";
        assert!(matches!(
            load(text, &CsvFormat::default()),
            Err(IngestError::TooFewRows { rows: 3 })
        ));
    }

    #[test]
    fn non_positive_time() {
        let mut text = doubling_rows("");
        text.push_str("5,0\n");
        assert!(matches!(
            load(&text, &CsvFormat::default()),
            Err(IngestError::NonPositiveTime { row: 9, .. })
        ));
    }

    #[test]
    fn unsorted_duplicates_merge_by_median() {
        let text = "8,3\n2,1\n8,9\n4,2\n8,4\n16,5\n32,6\n64,7\n128,8\n256,9\n";
        let s = load(text, &CsvFormat::default()).unwrap();
        let ns: Vec<u64> = s.samples().iter().map(|x| x.n).collect();
        assert_eq!(ns, vec![2, 4, 8, 16, 32, 64, 128, 256]);
        assert_eq!(s.samples()[2].t_ns, 4.0);
        assert!(s.samples()[2].spread > 0.0);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = ingest(Path::new("/nonexistent/timings.csv"), &CsvFormat::default()).unwrap_err();
        assert!(matches!(err, IngestError::Io { .. }));
    }
}
