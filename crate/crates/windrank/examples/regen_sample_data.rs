//! Regenerate the bundled sample dataset under `data/`.
//!
//! Writes `india_sites.csv` (the full site table) and
//! `india_coords.csv` (the coordinates-only file that `windrank fetch`
//! consumes to rebuild the table from the live climatology service).
//! Output is deterministic; a test asserts the committed files match.

use std::path::Path;

use windrank::csvio;
use windrank::sampledata::india_sites;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let data_dir = root.join("data");
    std::fs::create_dir_all(&data_dir).expect("create data dir");

    let sites = india_sites();
    let sites_path = data_dir.join("india_sites.csv");
    csvio::write_site_table(&sites_path, &sites).expect("write site table");

    let coords_path = data_dir.join("india_coords.csv");
    let mut coords = String::from("site,state,role,latitude,longitude,elevation\n");
    for site in &sites {
        coords.push_str(&format!(
            "{},{},{},{:.4},{:.4},{:.1}\n",
            site.name, site.state, site.role, site.latitude, site.longitude, site.elevation
        ));
    }
    std::fs::write(&coords_path, coords).expect("write coords table");

    println!("wrote {} and {}", sites_path.display(), coords_path.display());
}
