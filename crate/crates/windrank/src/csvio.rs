//! The site-table CSV format: one row per site-month.
//!
//! Header:
//! `site,state,role,latitude,longitude,elevation,month,solar_radiation,air_temperature,relative_humidity,atmospheric_pressure,earth_temperature,wind_speed`
//!
//! Rows belonging to one site (keyed by `site` + `state`) may appear
//! anywhere in the file; each site must supply months 1..12 exactly
//! once. Loading validates every field against the observation bounds
//! and reports the offending line and field. Writing uses fixed decimal
//! precision per column so a table round-trips byte-identically.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use windrank_core::dataset::{DatasetError, MonthlyObservation, Role, SiteRecord};

pub const SITE_TABLE_HEADER: [&str; 13] = [
    "site",
    "state",
    "role",
    "latitude",
    "longitude",
    "elevation",
    "month",
    "solar_radiation",
    "air_temperature",
    "relative_humidity",
    "atmospheric_pressure",
    "earth_temperature",
    "wind_speed",
];

pub const COORDS_HEADER: [&str; 6] =
    ["site", "state", "role", "latitude", "longitude", "elevation"];

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: missing or malformed header: expected `{expected}`, found `{found}`")]
    MissingHeader { path: PathBuf, expected: String, found: String },
    #[error("{path}:{line}: field `{field}` has unparseable value `{value}`")]
    ParseField { path: PathBuf, line: u64, field: &'static str, value: String },
    #[error("{path}:{line}: {source}")]
    InvalidRow { path: PathBuf, line: u64, source: DatasetError },
    #[error("{path}:{line}: site `{site}` repeats month {month}")]
    DuplicateMonth { path: PathBuf, line: u64, site: String, month: u8 },
    #[error("{path}: site `{site}`: {source}")]
    InvalidSite { path: PathBuf, site: String, source: DatasetError },
    #[error("{path}: malformed CSV: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

impl TableError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // The file itself is unreadable or structurally broken.
            TableError::Io { .. }
            | TableError::MissingHeader { .. }
            | TableError::ParseField { .. }
            | TableError::Csv { .. } => 2,
            // The file parsed but the data violates domain invariants.
            TableError::InvalidRow { .. }
            | TableError::DuplicateMonth { .. }
            | TableError::InvalidSite { .. } => 1,
        }
    }
}

fn open(path: &Path) -> Result<File, TableError> {
    File::open(path).map_err(|source| TableError::Io { path: path.to_path_buf(), source })
}

fn check_header(
    path: &Path,
    reader: &mut csv::Reader<impl Read>,
    expected: &[&str],
) -> Result<(), TableError> {
    let missing = |found: String| TableError::MissingHeader {
        path: path.to_path_buf(),
        expected: expected.join(","),
        found,
    };
    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(_) => return Err(missing(String::from("<unreadable>"))),
    };
    if headers.len() != expected.len() || headers.iter().zip(expected).any(|(h, e)| h != *e) {
        return Err(missing(headers.iter().collect::<Vec<_>>().join(",")));
    }
    Ok(())
}

fn parse_f64(
    path: &Path,
    line: u64,
    field: &'static str,
    value: &str,
) -> Result<f64, TableError> {
    value.trim().parse().map_err(|_| TableError::ParseField {
        path: path.to_path_buf(),
        line,
        field,
        value: value.to_string(),
    })
}

struct SiteBuilder {
    record: SiteRecord,
    month_mask: u16,
}

/// Load and fully validate a site table.
pub fn load_site_table(path: &Path) -> Result<Vec<SiteRecord>, TableError> {
    read_site_table(open(path)?, path)
}

/// Like [`load_site_table`] over any reader; `path` is used in error
/// messages only.
pub fn read_site_table<R: Read>(reader: R, path: &Path) -> Result<Vec<SiteRecord>, TableError> {
    let mut csv_reader = csv::ReaderBuilder::new().from_reader(reader);
    check_header(path, &mut csv_reader, &SITE_TABLE_HEADER)?;

    let mut sites: Vec<SiteBuilder> = Vec::new();
    for record in csv_reader.records() {
        let record =
            record.map_err(|source| TableError::Csv { path: path.to_path_buf(), source })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| record.get(i).unwrap_or("").to_string();

        let month_raw = parse_f64(path, line, "month", &field(6))?;
        let observation = MonthlyObservation {
            month: month_raw as u8,
            solar_radiation: parse_f64(path, line, "solar_radiation", &field(7))?,
            air_temperature: parse_f64(path, line, "air_temperature", &field(8))?,
            relative_humidity: parse_f64(path, line, "relative_humidity", &field(9))?,
            atmospheric_pressure: parse_f64(path, line, "atmospheric_pressure", &field(10))?,
            earth_temperature: parse_f64(path, line, "earth_temperature", &field(11))?,
            wind_speed: parse_f64(path, line, "wind_speed", &field(12))?,
        };
        // Non-integer months are parse errors; integer months outside
        // 1..12 fall through to the bound check below.
        if month_raw.fract() != 0.0 {
            return Err(TableError::ParseField {
                path: path.to_path_buf(),
                line,
                field: "month",
                value: field(6),
            });
        }
        let name = field(0);
        let state = field(1);
        let role = Role::parse(&field(2))
            .map_err(|source| TableError::InvalidRow { path: path.to_path_buf(), line, source })?;
        let latitude = parse_f64(path, line, "latitude", &field(3))?;
        let longitude = parse_f64(path, line, "longitude", &field(4))?;
        let elevation = parse_f64(path, line, "elevation", &field(5))?;

        // Row-level bound check so the error names the exact line.
        observation.validate().map_err(|violation| TableError::InvalidRow {
            path: path.to_path_buf(),
            line,
            source: DatasetError::RangeViolation {
                site: name.clone(),
                month: Some(observation.month),
                violation,
            },
        })?;

        let builder = match sites
            .iter_mut()
            .find(|b| b.record.name == name && b.record.state == state)
        {
            Some(b) => b,
            None => {
                sites.push(SiteBuilder {
                    record: SiteRecord {
                        name: name.clone(),
                        state,
                        latitude,
                        longitude,
                        elevation,
                        role,
                        months: Vec::with_capacity(12),
                    },
                    month_mask: 0,
                });
                sites.last_mut().expect("just pushed")
            }
        };
        let bit = 1u16 << observation.month;
        if builder.month_mask & bit != 0 {
            return Err(TableError::DuplicateMonth {
                path: path.to_path_buf(),
                line,
                site: name,
                month: observation.month,
            });
        }
        builder.month_mask |= bit;
        builder.record.months.push(observation);
    }

    let mut records = Vec::with_capacity(sites.len());
    for mut builder in sites {
        builder.record.months.sort_by_key(|o| o.month);
        builder.record.validate().map_err(|source| TableError::InvalidSite {
            path: path.to_path_buf(),
            site: builder.record.name.clone(),
            source,
        })?;
        records.push(builder.record);
    }
    Ok(records)
}

/// Write a site table with the canonical column formatting.
pub fn write_site_table(path: &Path, sites: &[SiteRecord]) -> Result<(), TableError> {
    let mut out = String::new();
    out.push_str(&SITE_TABLE_HEADER.join(","));
    out.push('\n');
    for site in sites {
        for obs in &site.months {
            out.push_str(&format!(
                "{},{},{},{:.4},{:.4},{:.1},{},{:.1},{:.2},{:.1},{:.3},{:.2},{:.2}\n",
                site.name,
                site.state,
                site.role,
                site.latitude,
                site.longitude,
                site.elevation,
                obs.month,
                obs.solar_radiation,
                obs.air_temperature,
                obs.relative_humidity,
                obs.atmospheric_pressure,
                obs.earth_temperature,
                obs.wind_speed,
            ));
        }
    }
    let mut file = File::create(path)
        .map_err(|source| TableError::Io { path: path.to_path_buf(), source })?;
    file.write_all(out.as_bytes())
        .map_err(|source| TableError::Io { path: path.to_path_buf(), source })
}

/// A coordinates-only row, the input of the `fetch` command.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordRow {
    pub site: String,
    pub state: String,
    pub role: Role,
    pub latitude: f64,
    pub longitude: f64,
    pub elevation: f64,
}

/// Load a coordinates CSV (`site,state,role,latitude,longitude,elevation`).
pub fn load_coords(path: &Path) -> Result<Vec<CoordRow>, TableError> {
    let mut csv_reader = csv::ReaderBuilder::new().from_reader(open(path)?);
    check_header(path, &mut csv_reader, &COORDS_HEADER)?;
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record =
            record.map_err(|source| TableError::Csv { path: path.to_path_buf(), source })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| record.get(i).unwrap_or("").to_string();
        rows.push(CoordRow {
            site: field(0),
            state: field(1),
            role: Role::parse(&field(2)).map_err(|source| TableError::InvalidRow {
                path: path.to_path_buf(),
                line,
                source,
            })?,
            latitude: parse_f64(path, line, "latitude", &field(3))?,
            longitude: parse_f64(path, line, "longitude", &field(4))?,
            elevation: parse_f64(path, line, "elevation", &field(5))?,
        });
    }
    Ok(rows)
}
