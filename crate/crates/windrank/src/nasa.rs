//! Client for the NASA POWER point-climatology service.
//!
//! One GET per site returns twelve monthly means for the requested
//! parameters. Responses are cached on disk (raw body plus a request
//! metadata sidecar), and a populated cache makes the client fully
//! offline: the test fixtures are committed cache entries. The cache
//! directory comes from [`CACHE_ENV`] unless set explicitly.
//!
//! Unit conversions into [`MonthlyObservation`]:
//! `ALLSKY_SFC_SW_DWN` arrives as kWh/m²/day and becomes W/m²
//! (x 1000/24); `T2M`, `RH2M`, `PS`, `TS` and `WS{10,50}M` are already
//! in °C, %, kPa, °C and m/s.

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use windrank_core::dataset::MonthlyObservation;

/// Environment variable naming the fetch cache directory.
pub const CACHE_ENV: &str = "WINDRANK_CACHE_DIR";

/// Public entry point of the climatology service.
pub const DEFAULT_BASE_URL: &str = "https://power.larc.nasa.gov/api/temporal/climatology/point";

const MONTH_KEYS: [&str; 12] =
    ["JAN", "FEB", "MAR", "APR", "MAY", "JUN", "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"];

/// POWER's fill value for missing data.
const FILL_VALUE: f64 = -999.0;

const KWH_PER_DAY_TO_WATTS: f64 = 1000.0 / 24.0;

/// Anemometer height of the requested wind speed parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindHeight {
    M10,
    M50,
}

impl WindHeight {
    pub fn parameter(&self) -> &'static str {
        match self {
            WindHeight::M10 => "WS10M",
            WindHeight::M50 => "WS50M",
        }
    }

    pub fn meters(&self) -> u32 {
        match self {
            WindHeight::M10 => 10,
            WindHeight::M50 => 50,
        }
    }

    pub fn from_meters(meters: u32) -> Option<Self> {
        match meters {
            10 => Some(WindHeight::M10),
            50 => Some(WindHeight::M50),
            _ => None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("coordinates ({latitude}, {longitude}) outside valid ranges")]
    InvalidCoordinate { latitude: f64, longitude: f64 },
    #[error("unparseable climatology response: {detail}")]
    UpstreamFormat { detail: String },
    #[error("climatology service unavailable after {attempts} attempt(s): {last_error}")]
    UpstreamUnavailable { attempts: u32, last_error: String },
    #[error("cache {path}: {source}")]
    Cache { path: PathBuf, source: std::io::Error },
}

/// Request metadata stored beside each cached response body.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RequestMeta {
    pub url: String,
    pub latitude: f64,
    pub longitude: f64,
    pub wind_parameter: String,
    pub source: String,
}

pub struct PowerClient {
    base_url: String,
    cache_dir: Option<PathBuf>,
    online: bool,
    max_attempts: u32,
    timeout: Duration,
}

impl Default for PowerClient {
    fn default() -> Self {
        Self::new()
    }
}

impl PowerClient {
    /// Online client; cache directory taken from [`CACHE_ENV`] when set.
    pub fn new() -> Self {
        Self {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            online: true,
            max_attempts: 3,
            timeout: Duration::from_secs(30),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Serve exclusively from the cache; a miss reports the service as
    /// unavailable instead of going to the network.
    pub fn offline(dir: impl Into<PathBuf>) -> Self {
        Self {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache_dir: Some(dir.into()),
            online: false,
            max_attempts: 0,
            timeout: Duration::from_secs(30),
        }
    }

    fn cache_paths(&self, latitude: f64, longitude: f64, height: WindHeight) -> Option<(PathBuf, PathBuf)> {
        self.cache_dir.as_ref().map(|dir| {
            let stem = format!(
                "power_lat{latitude:.3}_lon{longitude:.3}_{}",
                height.parameter().to_lowercase()
            );
            (dir.join(format!("{stem}.json")), dir.join(format!("{stem}.meta.json")))
        })
    }

    fn request_url(&self, latitude: f64, longitude: f64, height: WindHeight) -> String {
        format!(
            "{}?parameters=ALLSKY_SFC_SW_DWN,T2M,RH2M,PS,TS,{}&community=RE&longitude={}&latitude={}&format=JSON",
            self.base_url,
            height.parameter(),
            longitude,
            latitude,
        )
    }

    /// Twelve monthly climatology observations for a point.
    pub fn fetch_monthly_climatology(
        &self,
        latitude: f64,
        longitude: f64,
        height: WindHeight,
    ) -> Result<Vec<MonthlyObservation>, FetchError> {
        if !(-90.0..=90.0).contains(&latitude)
            || !(-180.0..=180.0).contains(&longitude)
            || !latitude.is_finite()
            || !longitude.is_finite()
        {
            return Err(FetchError::InvalidCoordinate { latitude, longitude });
        }

        if let Some((body_path, _)) = self.cache_paths(latitude, longitude, height) {
            if body_path.exists() {
                let body = std::fs::read(&body_path)
                    .map_err(|source| FetchError::Cache { path: body_path.clone(), source })?;
                log::debug!("cache hit: {}", body_path.display());
                return parse_power_response(&body, height);
            }
        }
        if !self.online {
            return Err(FetchError::UpstreamUnavailable {
                attempts: 0,
                last_error: format!(
                    "offline client and no cached response for ({latitude}, {longitude})"
                ),
            });
        }

        let url = self.request_url(latitude, longitude, height);
        let body = self.get_with_retries(&url)?;
        let observations = parse_power_response(&body, height)?;

        if let Some((body_path, meta_path)) = self.cache_paths(latitude, longitude, height) {
            if let Some(dir) = body_path.parent() {
                std::fs::create_dir_all(dir)
                    .map_err(|source| FetchError::Cache { path: dir.to_path_buf(), source })?;
            }
            std::fs::write(&body_path, &body)
                .map_err(|source| FetchError::Cache { path: body_path.clone(), source })?;
            let meta = RequestMeta {
                url: url.clone(),
                latitude,
                longitude,
                wind_parameter: height.parameter().to_string(),
                source: "nasa-power-climatology".to_string(),
            };
            let meta_json =
                serde_json::to_vec_pretty(&meta).expect("metadata serializes");
            std::fs::write(&meta_path, meta_json)
                .map_err(|source| FetchError::Cache { path: meta_path, source })?;
        }
        Ok(observations)
    }

    fn get_with_retries(&self, url: &str) -> Result<Vec<u8>, FetchError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let mut last_error = String::from("no attempts made");
        for attempt in 1..=self.max_attempts {
            match agent.get(url).call() {
                Ok(mut response) => {
                    match response.body_mut().read_to_vec() {
                        Ok(bytes) => return Ok(bytes),
                        Err(e) => last_error = format!("reading body: {e}"),
                    }
                }
                Err(e) => last_error = e.to_string(),
            }
            log::warn!("climatology request attempt {attempt} failed: {last_error}");
            if attempt < self.max_attempts {
                std::thread::sleep(Duration::from_millis(400 * u64::from(attempt)));
            }
        }
        Err(FetchError::UpstreamUnavailable { attempts: self.max_attempts, last_error })
    }
}

#[derive(Deserialize)]
struct PowerResponse {
    properties: PowerProperties,
}

#[derive(Deserialize)]
struct PowerProperties {
    parameter: HashMap<String, HashMap<String, f64>>,
}

/// Parse a raw POWER climatology response into twelve observations with
/// the crate's units.
pub fn parse_power_response(
    body: &[u8],
    height: WindHeight,
) -> Result<Vec<MonthlyObservation>, FetchError> {
    let response: PowerResponse = serde_json::from_slice(body)
        .map_err(|e| FetchError::UpstreamFormat { detail: e.to_string() })?;
    let parameters = &response.properties.parameter;

    let series = |name: &str| -> Result<[f64; 12], FetchError> {
        let values = parameters.get(name).ok_or_else(|| FetchError::UpstreamFormat {
            detail: format!("parameter {name} missing from response"),
        })?;
        let mut out = [0.0f64; 12];
        for (i, key) in MONTH_KEYS.iter().enumerate() {
            let v = *values.get(*key).ok_or_else(|| FetchError::UpstreamFormat {
                detail: format!("parameter {name} missing month {key}"),
            })?;
            if v == FILL_VALUE {
                return Err(FetchError::UpstreamFormat {
                    detail: format!("parameter {name} has fill value for {key}"),
                });
            }
            out[i] = v;
        }
        Ok(out)
    };

    let radiation = series("ALLSKY_SFC_SW_DWN")?;
    let air_temp = series("T2M")?;
    let humidity = series("RH2M")?;
    let pressure = series("PS")?;
    let earth_temp = series("TS")?;
    let wind = series(height.parameter())?;

    let mut months = Vec::with_capacity(12);
    for i in 0..12 {
        let observation = MonthlyObservation {
            month: (i + 1) as u8,
            solar_radiation: radiation[i] * KWH_PER_DAY_TO_WATTS,
            air_temperature: air_temp[i],
            relative_humidity: humidity[i],
            atmospheric_pressure: pressure[i],
            earth_temperature: earth_temp[i],
            wind_speed: wind[i],
        };
        observation.validate().map_err(|violation| FetchError::UpstreamFormat {
            detail: format!("month {}: {violation}", i + 1),
        })?;
        months.push(observation);
    }
    Ok(months)
}
