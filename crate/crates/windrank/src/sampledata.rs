//! The bundled sample dataset: 66 Indian wind-monitoring sites with a
//! year of monthly climatology each.
//!
//! This is a desk-scale reconstruction, not measured data. Coordinates
//! and elevations are plausible per-state values, and the monthly
//! meteorology comes from smooth seasonal models of the Indian climate
//! (monsoon humidity and cloud cover, barometric pressure with a winter
//! high and monsoon low, latitude- and elevation-dependent temperature)
//! plus seeded per-site noise. Monthly wind speed is driven by surface
//! pressure, solar radiation and relative humidity with irreducible
//! noise of roughly 1.3 m/s, so models fitted on it land in a realistic
//! error range. Regenerate `data/india_sites.csv` with the
//! `regen_sample_data` example; the bytes are deterministic.

use windrank_core::dataset::{MonthlyObservation, Role, SiteRecord};
use windrank_core::math;
use windrank_core::rng::{derive_seed, gaussian, seeded, uniform};

/// Seed of the bundled dataset. Changing it changes every committed
/// value, so treat it as part of the data format.
const DATASET_SEED: u64 = 20220523;

/// name, state, role, latitude, longitude, elevation m,
/// coastal factor [0,1], aridity factor [0,1].
struct SiteSpec(&'static str, &'static str, Role, f64, f64, f64, f64, f64);

use Role::{Testing, Training};

#[rustfmt::skip]
const SITES: [SiteSpec; 66] = [
    SiteSpec("Mount Harriet",    "Andaman and Nicobar", Testing,  11.72, 92.73, 175.0, 1.0, 0.0),
    SiteSpec("South Bay",        "Andaman and Nicobar", Training, 11.55, 92.71,  45.0, 1.0, 0.0),
    SiteSpec("Burgula",          "Andhra Pradesh",      Training, 16.78, 78.39, 295.0, 0.0, 0.3),
    SiteSpec("Chinnakaballi",    "Andhra Pradesh",      Training, 15.10, 77.62, 230.0, 0.0, 0.4),
    SiteSpec("Kotrathanda",      "Andhra Pradesh",      Training, 15.42, 78.10, 240.0, 0.0, 0.4),
    SiteSpec("Galikonda",        "Andhra Pradesh",      Training, 17.95, 82.84, 325.0, 0.2, 0.0),
    SiteSpec("Kotturu",          "Andhra Pradesh",      Training, 18.35, 83.78, 110.0, 0.5, 0.0),
    SiteSpec("Shahpuram",        "Andhra Pradesh",      Training, 16.32, 77.95, 215.0, 0.0, 0.3),
    SiteSpec("Siddanagatta",     "Andhra Pradesh",      Training, 14.65, 77.10, 265.0, 0.0, 0.4),
    SiteSpec("Singarikonda",     "Andhra Pradesh",      Training, 15.55, 79.85, 140.0, 0.4, 0.2),
    SiteSpec("Talaricherevu",    "Andhra Pradesh",      Training, 14.45, 77.85, 205.0, 0.0, 0.4),
    SiteSpec("Teranavalle",      "Andhra Pradesh",      Training, 15.80, 77.40, 225.0, 0.0, 0.4),
    SiteSpec("Tirumalayapalli",  "Andhra Pradesh",      Training, 14.20, 77.95, 290.0, 0.0, 0.3),
    SiteSpec("Vajrakarur 2",     "Andhra Pradesh",      Testing,  14.95, 77.35, 250.0, 0.0, 0.4),
    SiteSpec("P.Leikul",         "Assam",               Training, 26.10, 91.70,  80.0, 0.0, 0.0),
    SiteSpec("Dhrobana",         "Gujarat",             Training, 23.25, 69.67, 180.0, 0.3, 0.7),
    SiteSpec("Khambada",         "Gujarat",             Training, 21.95, 69.85, 120.0, 0.5, 0.5),
    SiteSpec("Lamba",            "Gujarat",             Training, 21.82, 69.42,  35.0, 0.9, 0.5),
    SiteSpec("Mahidad",          "Gujarat",             Training, 22.45, 70.85, 110.0, 0.2, 0.5),
    SiteSpec("Rojmal 2",         "Gujarat",             Training, 21.95, 71.35, 240.0, 0.1, 0.5),
    SiteSpec("Sadodar",          "Gujarat",             Training, 22.15, 69.30,  25.0, 0.9, 0.5),
    SiteSpec("Sangasar",         "Gujarat",             Training, 22.60, 70.10,  90.0, 0.3, 0.6),
    SiteSpec("Sinugra",          "Gujarat",             Training, 23.10, 70.25,  70.0, 0.4, 0.7),
    SiteSpec("Suwarda",          "Gujarat",             Training, 21.72, 69.98,  60.0, 0.6, 0.5),
    SiteSpec("Vadgam",           "Gujarat",             Training, 22.95, 71.80, 130.0, 0.0, 0.6),
    SiteSpec("Vandhya",          "Gujarat",             Training, 23.35, 68.95,  55.0, 0.7, 0.7),
    SiteSpec("Lodhrani",         "Gujarat",             Testing,  23.42, 69.95, 150.0, 0.2, 0.7),
    SiteSpec("Bidda",            "Jammu and Kashmir",   Training, 33.65, 74.85, 265.0, 0.0, 0.1),
    SiteSpec("Hulkoti",          "Karnataka",           Training, 15.43, 75.52, 310.0, 0.0, 0.2),
    SiteSpec("Jogimatti",        "Karnataka",           Training, 14.12, 76.40, 345.0, 0.0, 0.2),
    SiteSpec("Mannikeri",        "Karnataka",           Training, 15.15, 75.10, 335.0, 0.0, 0.2),
    SiteSpec("Mavingundi",       "Karnataka",           Training, 14.55, 74.85, 275.0, 0.2, 0.0),
    SiteSpec("Saundatti",        "Karnataka",           Training, 15.77, 75.12, 325.0, 0.0, 0.2),
    SiteSpec("Sogi",             "Karnataka",           Training, 14.95, 75.65, 295.0, 0.0, 0.2),
    SiteSpec("Topaldoddi",       "Karnataka",           Training, 14.80, 76.85, 255.0, 0.0, 0.3),
    SiteSpec("Anadurwadi Tanda", "Karnataka",           Training, 16.25, 75.85, 265.0, 0.0, 0.3),
    SiteSpec("Kaudiyal",         "Karnataka",           Training, 13.85, 75.95, 355.0, 0.0, 0.1),
    SiteSpec("Kajibilgi",        "Karnataka",           Testing,  16.35, 75.65, 250.0, 0.0, 0.3),
    SiteSpec("Ozhalapathy",      "Kerala",              Training, 10.68, 76.75, 180.0, 0.3, 0.0),
    SiteSpec("Chadayangulay",    "Kerala",              Training,  9.85, 77.15, 305.0, 0.0, 0.0),
    SiteSpec("Narasingam",       "Kerala",              Training, 10.05, 77.05, 280.0, 0.0, 0.0),
    SiteSpec("Pasavadigomva",    "Kerala",              Training,  9.55, 77.10, 295.0, 0.0, 0.0),
    SiteSpec("Pushpagiri",       "Kerala",              Testing,  12.65, 75.72, 355.0, 0.1, 0.0),
    SiteSpec("Banbir Kheri",     "Madhya Pradesh",      Training, 23.15, 76.05, 210.0, 0.0, 0.3),
    SiteSpec("Barkheri Bazar",   "Madhya Pradesh",      Training, 22.85, 76.55, 230.0, 0.0, 0.3),
    SiteSpec("Mamatkheda",       "Madhya Pradesh",      Training, 22.35, 75.45, 250.0, 0.0, 0.3),
    SiteSpec("Nachanbor",        "Madhya Pradesh",      Training, 22.62, 75.95, 240.0, 0.0, 0.3),
    SiteSpec("Nagda",            "Madhya Pradesh",      Training, 23.45, 75.42, 225.0, 0.0, 0.4),
    SiteSpec("Machaliya Ghat",   "Madhya Pradesh",      Training, 22.25, 74.85, 185.0, 0.0, 0.3),
    SiteSpec("Mandwa",           "Madhya Pradesh",      Training, 22.05, 75.10, 200.0, 0.0, 0.3),
    SiteSpec("Valiyarpani",      "Madhya Pradesh",      Testing,  22.95, 75.75, 235.0, 0.0, 0.3),
    SiteSpec("Ambral",           "Maharashtra",         Training, 20.95, 74.35, 295.0, 0.0, 0.2),
    SiteSpec("Khokadi",          "Maharashtra",         Training, 20.45, 73.95, 325.0, 0.0, 0.2),
    SiteSpec("Mahijalgaon",      "Maharashtra",         Training, 19.85, 75.35, 265.0, 0.0, 0.3),
    SiteSpec("Raipur",           "Maharashtra",         Training, 19.35, 74.55, 345.0, 0.0, 0.2),
    SiteSpec("Brahmanwel",       "Maharashtra",         Training, 20.92, 74.05, 280.0, 0.0, 0.2),
    SiteSpec("Chakla",           "Maharashtra",         Training, 20.30, 74.65, 305.0, 0.0, 0.2),
    SiteSpec("Jagmin",           "Maharashtra",         Training, 19.95, 73.75, 335.0, 0.1, 0.1),
    SiteSpec("Kamravad",         "Maharashtra",         Testing,  20.65, 74.95, 285.0, 0.0, 0.2),
    SiteSpec("Laimaton",         "Manipur",             Training, 24.72, 93.95, 335.0, 0.0, 0.0),
    SiteSpec("Balesar",          "Rajasthan",           Training, 26.25, 72.45, 185.0, 0.0, 0.9),
    SiteSpec("Kanod",            "Rajasthan",           Training, 26.95, 71.25, 220.0, 0.0, 1.0),
    SiteSpec("Akal",             "Rajasthan",           Training, 26.75, 70.95, 240.0, 0.0, 1.0),
    SiteSpec("Jhodol 2",         "Rajasthan",           Testing,  24.55, 73.45, 185.0, 0.0, 0.6),
    SiteSpec("Nayachar Island",  "West Bengal",         Training, 21.95, 88.05,   8.0, 1.0, 0.0),
    SiteSpec("Nijkasba",         "West Bengal",         Testing,  22.35, 88.35,  12.0, 0.8, 0.0),
];

// Climate model constants. The wind couplings below set how much of the
// wind signal each meteorological channel carries; the noise terms set
// the irreducible error floor of any model fitted on the data.

/// m/s of wind per kPa of terrain pressure deficit below the standard
/// atmosphere (hill sites are windier).
const TERRAIN_WIND: f64 = 0.18;
/// m/s of wind per kPa of seasonal pressure anomaly below the site mean
/// (monsoon lows bring wind).
const SYNOPTIC_WIND: f64 = 1.9;
/// m/s of wind per W/m² of irradiance below a clear-sky reference
/// (monsoon cloud cover comes with wind).
const CLOUD_WIND: f64 = 0.005;
/// m/s of wind per percent of humidity above a dry-season reference.
const HUMID_WIND: f64 = 0.004;
/// Standard deviation of the irreducible month-to-month wind noise, m/s.
const WIND_NOISE: f64 = 1.30;
/// Standard deviation of the catalogued-elevation error, m. Surface
/// pressure reflects the true site elevation; the elevation column is
/// the coarse catalogue value.
const ELEVATION_ERROR: f64 = 90.0;

/// Monsoon intensity bump, peaking in July.
fn monsoon(month: u8) -> f64 {
    let x = (f64::from(month) - 7.2) / 1.9;
    math::exp(-x * x)
}

/// Pre-monsoon heat bump, peaking late April / May.
fn spring(month: u8) -> f64 {
    let x = (f64::from(month) - 4.8) / 1.6;
    math::exp(-x * x)
}

/// Winter phase: +1 in January, -1 in July.
fn winter(month: u8) -> f64 {
    math::cos(2.0 * std::f64::consts::PI * (f64::from(month) - 1.0) / 12.0)
}

/// Round to a decimal precision that survives the CSV round trip: the
/// written table parses back to these exact bit patterns.
fn round_to(v: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    math::round(v * scale) / scale
}

/// Build the bundled 66-site dataset.
pub fn india_sites() -> Vec<SiteRecord> {
    SITES
        .iter()
        .enumerate()
        .map(|(index, spec)| {
            let SiteSpec(name, state, role, latitude, longitude, elevation, coastal, arid) = *spec;
            let mut site_rng = seeded(derive_seed(DATASET_SEED, index as u64));
            // Per-site offsets: mean sea-level pressure, local terrain
            // exposure (affects wind only), and the catalogue elevation
            // error (affects the elevation column only).
            let pressure_offset = uniform(&mut site_rng, -0.3, 0.3);
            let exposure = uniform(&mut site_rng, -0.22, 0.22);
            let catalog_elevation =
                (10.0 * math::round((elevation + gaussian(&mut site_rng, ELEVATION_ERROR)) / 10.0))
                    .max(0.0);

            let wet = 1.0 - 0.55 * arid + 0.15 * coastal;
            // Seasonal pressure wave: winter high, monsoon low (deeper in
            // wetter regions). The site-mean anomaly drives the synoptic
            // wind term.
            let pressure_wave =
                |month: u8| 0.6 * winter(month) - 0.8 * monsoon(month);
            let wave_mean = (1u8..=12).map(pressure_wave).sum::<f64>() / 12.0;

            let months = (1u8..=12)
                .map(|month| {
                    let mon = monsoon(month);
                    let spr = spring(month);
                    let win = winter(month);

                    // Irradiance in kWh/m²/day, then converted to W/m².
                    let clear_sky = 5.55 + 0.5 * spr - 0.06 * (latitude - 8.0)
                        - 0.25 * win * (latitude / 38.0);
                    let sr_kwh = clear_sky - 0.85 * mon * wet
                        + uniform(&mut site_rng, -0.35, 0.35);
                    let solar_radiation = sr_kwh * (1000.0 / 24.0);

                    let air_temperature = 27.2 - 0.42 * (latitude - 8.0)
                        - 6.5 * elevation / 1000.0
                        - 4.2 * win * (0.35 + latitude / 40.0)
                        + 3.1 * spr
                        - 1.8 * mon
                        + uniform(&mut site_rng, -0.5, 0.5);

                    let relative_humidity = (56.0 + 14.0 * mon * wet + 13.0 * coastal
                        - 25.0 * arid
                        - 3.0 * win
                        + uniform(&mut site_rng, -5.5, 5.5))
                    .clamp(12.0, 96.0);

                    let sea_level = 101.325 + pressure_offset;
                    let atmospheric_pressure = sea_level * math::exp(-elevation / 8435.0)
                        + pressure_wave(month)
                        + uniform(&mut site_rng, -0.04, 0.04);

                    let earth_temperature = air_temperature + 2.2 + 0.7 * spr - 0.4 * mon * wet
                        + uniform(&mut site_rng, -0.7, 0.7);

                    // Wind: terrain pressure deficit, synoptic monsoon
                    // lows, cloud cover and humidity all push it up.
                    let wind_speed = (1.6
                        + TERRAIN_WIND * (101.325 - atmospheric_pressure)
                        + SYNOPTIC_WIND * (wave_mean - pressure_wave(month))
                        + CLOUD_WIND * (208.0 - solar_radiation)
                        + HUMID_WIND * (relative_humidity - 52.0)
                        + exposure
                        + gaussian(&mut site_rng, WIND_NOISE))
                    .max(0.6);

                    MonthlyObservation {
                        month,
                        solar_radiation: round_to(solar_radiation, 1),
                        air_temperature: round_to(air_temperature, 2),
                        relative_humidity: round_to(relative_humidity, 1),
                        atmospheric_pressure: round_to(atmospheric_pressure, 3),
                        earth_temperature: round_to(earth_temperature, 2),
                        wind_speed: round_to(wind_speed, 2),
                    }
                })
                .collect();

            SiteRecord {
                name: name.to_string(),
                state: state.to_string(),
                latitude,
                longitude,
                elevation: catalog_elevation,
                role,
                months,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use windrank_core::dataset::split_by_role;

    #[test]
    fn dataset_shape_matches_the_study_layout() {
        let sites = india_sites();
        assert_eq!(sites.len(), 66);
        for site in &sites {
            site.validate().unwrap();
        }
        let (training, testing) = split_by_role(&sites);
        assert_eq!(training.len(), 57);
        assert_eq!(testing.len(), 9);
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(india_sites(), india_sites());
    }

    #[test]
    fn committed_csv_matches_generator() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../data/india_sites.csv");
        let committed = crate::csvio::load_site_table(&path).expect("bundled dataset loads");
        assert_eq!(committed, india_sites(), "data/india_sites.csv is stale; regenerate it");
    }

    #[test]
    fn values_look_physical() {
        for site in india_sites() {
            for obs in &site.months {
                assert!((100.0..350.0).contains(&obs.solar_radiation), "{}", obs.solar_radiation);
                assert!((-15.0..45.0).contains(&obs.air_temperature));
                assert!((75.0..103.0).contains(&obs.atmospheric_pressure));
                assert!((0.3..15.0).contains(&obs.wind_speed), "{}", obs.wind_speed);
            }
        }
    }
}
