//! Site meteorology records and their conversion to model-ready matrices.
//!
//! A [`SiteRecord`] is one geographic location with exactly twelve
//! monthly climatology observations. [`build_feature_matrix`] flattens a
//! list of sites into the fixed eight-column matrix the ranking and
//! training stages consume, and [`split_by_role`] partitions sites into
//! the training and testing groups. The split is always by site, never by
//! row, so held-out error measures spatial generalization.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::matrix::{FeatureMatrix, MatrixError, RowOrigin};

/// Canonical feature column order of the assessment matrix.
pub const FEATURE_NAMES: [&str; 8] = [
    "solar_radiation",
    "air_temperature",
    "relative_humidity",
    "latitude",
    "longitude",
    "atmospheric_pressure",
    "earth_temperature",
    "elevation",
];

/// How a site participates in model building.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Training,
    Testing,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::Training => "Training",
            Role::Testing => "Testing",
        }
    }

    /// Parse a role label, case-insensitively.
    pub fn parse(text: &str) -> Result<Self, DatasetError> {
        if text.eq_ignore_ascii_case("training") {
            Ok(Role::Training)
        } else if text.eq_ignore_ascii_case("testing") {
            Ok(Role::Testing)
        } else {
            Err(DatasetError::UnknownRole { role: String::from(text) })
        }
    }
}

impl core::fmt::Display for Role {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One month of averaged meteorology for a site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonthlyObservation {
    /// Month index, 1 (January) through 12 (December).
    pub month: u8,
    /// All-sky surface irradiance, W/m².
    pub solar_radiation: f64,
    /// Air temperature at 2 m, °C.
    pub air_temperature: f64,
    /// Relative humidity, percent.
    pub relative_humidity: f64,
    /// Surface atmospheric pressure, kPa.
    pub atmospheric_pressure: f64,
    /// Earth skin temperature, °C.
    pub earth_temperature: f64,
    /// Wind speed, m/s.
    pub wind_speed: f64,
}

/// A bound that one observation field violated.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldViolation {
    pub field: &'static str,
    pub value: f64,
    pub min: f64,
    pub max: f64,
}

impl core::fmt::Display for FieldViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} = {} outside [{}, {}]", self.field, self.value, self.min, self.max)
    }
}

impl MonthlyObservation {
    /// Check the field bounds: month in 1..=12, humidity in 0..=100,
    /// non-negative wind and radiation, positive pressure, finite values.
    pub fn validate(&self) -> Result<(), FieldViolation> {
        check("month", f64::from(self.month), 1.0, 12.0)?;
        check("solar_radiation", self.solar_radiation, 0.0, f64::INFINITY)?;
        check("air_temperature", self.air_temperature, f64::NEG_INFINITY, f64::INFINITY)?;
        check("relative_humidity", self.relative_humidity, 0.0, 100.0)?;
        check("atmospheric_pressure", self.atmospheric_pressure, f64::MIN_POSITIVE, f64::INFINITY)?;
        check("earth_temperature", self.earth_temperature, f64::NEG_INFINITY, f64::INFINITY)?;
        check("wind_speed", self.wind_speed, 0.0, f64::INFINITY)?;
        Ok(())
    }
}

fn check(field: &'static str, value: f64, min: f64, max: f64) -> Result<(), FieldViolation> {
    if value.is_finite() && value >= min && value <= max {
        Ok(())
    } else {
        Err(FieldViolation { field, value, min, max })
    }
}

/// One location with coordinates, elevation, model role and a full year
/// of monthly observations (sorted by month, each month exactly once).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteRecord {
    pub name: String,
    pub state: String,
    /// Degrees, [-90, 90].
    pub latitude: f64,
    /// Degrees, [-180, 180].
    pub longitude: f64,
    /// Meters above sea level.
    pub elevation: f64,
    pub role: Role,
    pub months: Vec<MonthlyObservation>,
}

impl SiteRecord {
    /// Validate coordinates, elevation and the twelve-month structure.
    pub fn validate(&self) -> Result<(), DatasetError> {
        let field = |violation: FieldViolation| DatasetError::RangeViolation {
            site: self.name.clone(),
            month: None,
            violation,
        };
        check("latitude", self.latitude, -90.0, 90.0).map_err(field)?;
        check("longitude", self.longitude, -180.0, 180.0).map_err(field)?;
        check("elevation", self.elevation, f64::NEG_INFINITY, f64::INFINITY).map_err(field)?;
        if self.months.len() != 12 {
            return Err(DatasetError::IncompleteSite {
                site: self.name.clone(),
                months: self.months.len(),
            });
        }
        for (i, obs) in self.months.iter().enumerate() {
            if usize::from(obs.month) != i + 1 {
                return Err(DatasetError::IncompleteSite {
                    site: self.name.clone(),
                    months: self.months.len(),
                });
            }
            obs.validate().map_err(|violation| DatasetError::RangeViolation {
                site: self.name.clone(),
                month: Some(obs.month),
                violation,
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatasetError {
    #[error("no sites given")]
    EmptyInput,
    #[error("site {site}: expected 12 months 1..12, found {months}")]
    IncompleteSite { site: String, months: usize },
    #[error("site {site}{}: {violation}", month.map(|m| alloc::format!(" month {m}")).unwrap_or_default())]
    RangeViolation { site: String, month: Option<u8>, violation: FieldViolation },
    #[error("unknown role {role:?}, expected \"Training\" or \"Testing\"")]
    UnknownRole { role: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Flatten validated sites into the canonical matrix: one row per
/// site-month, columns in [`FEATURE_NAMES`] order, wind speed as target.
pub fn build_feature_matrix(sites: &[SiteRecord]) -> Result<FeatureMatrix, DatasetError> {
    if sites.is_empty() {
        return Err(DatasetError::EmptyInput);
    }
    let mut data = Vec::with_capacity(sites.len() * 12 * FEATURE_NAMES.len());
    let mut target = Vec::with_capacity(sites.len() * 12);
    let mut origin = Vec::with_capacity(sites.len() * 12);
    for (site_index, site) in sites.iter().enumerate() {
        site.validate()?;
        for obs in &site.months {
            data.extend_from_slice(&[
                obs.solar_radiation,
                obs.air_temperature,
                obs.relative_humidity,
                site.latitude,
                site.longitude,
                obs.atmospheric_pressure,
                obs.earth_temperature,
                site.elevation,
            ]);
            target.push(obs.wind_speed);
            origin.push(RowOrigin { site: site_index, month: obs.month });
        }
    }
    let names = FEATURE_NAMES.iter().map(|&n| String::from(n)).collect();
    Ok(FeatureMatrix::from_parts(data, FEATURE_NAMES.len(), target, names, origin)?)
}

/// Partition sites into (training, testing), preserving input order.
///
/// An empty side is allowed but logged, since a model built from such a
/// split cannot be scored.
pub fn split_by_role(sites: &[SiteRecord]) -> (Vec<SiteRecord>, Vec<SiteRecord>) {
    let training: Vec<SiteRecord> =
        sites.iter().filter(|s| s.role == Role::Training).cloned().collect();
    let testing: Vec<SiteRecord> =
        sites.iter().filter(|s| s.role == Role::Testing).cloned().collect();
    if training.is_empty() {
        log::warn!("role split produced no training sites");
    }
    if testing.is_empty() {
        log::warn!("role split produced no testing sites");
    }
    (training, testing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    pub(crate) fn observation(month: u8) -> MonthlyObservation {
        MonthlyObservation {
            month,
            solar_radiation: 200.0 + f64::from(month),
            air_temperature: 25.0,
            relative_humidity: 60.0,
            atmospheric_pressure: 98.5,
            earth_temperature: 27.0,
            wind_speed: 3.0 + 0.1 * f64::from(month),
        }
    }

    pub(crate) fn site(name: &str, role: Role) -> SiteRecord {
        SiteRecord {
            name: name.to_string(),
            state: "State".to_string(),
            latitude: 20.0,
            longitude: 77.0,
            elevation: 450.0,
            role,
            months: (1..=12).map(observation).collect(),
        }
    }

    #[test]
    fn role_parsing() {
        assert_eq!(Role::parse("Training").unwrap(), Role::Training);
        assert_eq!(Role::parse("testing").unwrap(), Role::Testing);
        let err = Role::parse("Eval").unwrap_err();
        assert!(matches!(err, DatasetError::UnknownRole { ref role } if role == "Eval"));
    }

    #[test]
    fn humidity_out_of_range_names_field() {
        let mut obs = observation(3);
        obs.relative_humidity = 120.0;
        let violation = obs.validate().unwrap_err();
        assert_eq!(violation.field, "relative_humidity");
        assert_eq!(violation.value, 120.0);
    }

    #[test]
    fn site_requires_twelve_distinct_months() {
        let mut s = site("A", Role::Training);
        s.months.pop();
        assert!(matches!(s.validate(), Err(DatasetError::IncompleteSite { months: 11, .. })));

        let mut s = site("A", Role::Training);
        s.months[5].month = 7;
        assert!(matches!(s.validate(), Err(DatasetError::IncompleteSite { .. })));
    }

    #[test]
    fn matrix_shape_for_one_site() {
        let m = build_feature_matrix(&[site("A", Role::Training)]).unwrap();
        assert_eq!(m.n_rows(), 12);
        assert_eq!(m.n_cols(), 8);
        assert_eq!(m.target().len(), 12);
        assert_eq!(m.feature_names()[5], "atmospheric_pressure");
    }

    #[test]
    fn pressure_sits_in_column_five() {
        let sites = vec![site("A", Role::Training), site("B", Role::Testing)];
        let m = build_feature_matrix(&sites).unwrap();
        for row in 0..m.n_rows() {
            assert_eq!(m.value(row, 5), 98.5);
        }
    }

    #[test]
    fn shared_coordinates_replicate_across_rows() {
        let a = site("A", Role::Training);
        let mut b = site("B", Role::Training);
        b.latitude = a.latitude;
        b.longitude = a.longitude;
        b.elevation = a.elevation;
        let m = build_feature_matrix(&[a, b]).unwrap();
        assert_eq!(m.n_rows(), 24);
        for row in 0..24 {
            assert_eq!(m.value(row, 3), 20.0);
            assert_eq!(m.value(row, 4), 77.0);
            assert_eq!(m.value(row, 7), 450.0);
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(build_feature_matrix(&[]).unwrap_err(), DatasetError::EmptyInput);
    }

    #[test]
    fn split_partitions_in_order() {
        let sites = vec![
            site("A", Role::Training),
            site("B", Role::Testing),
            site("C", Role::Training),
        ];
        let (train, test) = split_by_role(&sites);
        assert_eq!(train.iter().map(|s| s.name.as_str()).collect::<Vec<_>>(), ["A", "C"]);
        assert_eq!(test.iter().map(|s| s.name.as_str()).collect::<Vec<_>>(), ["B"]);
        assert_eq!(train.len() + test.len(), sites.len());

        let (all_train, none) = split_by_role(&sites[..1]);
        assert_eq!(all_train.len(), 1);
        assert!(none.is_empty());
    }

    #[test]
    fn row_count_is_twelve_per_site() {
        for n in [1usize, 3, 5] {
            let sites: Vec<SiteRecord> =
                (0..n).map(|i| site(&format!("S{i}"), Role::Training)).collect();
            let m = build_feature_matrix(&sites).unwrap();
            assert_eq!(m.n_rows(), 12 * n);
        }
    }
}
