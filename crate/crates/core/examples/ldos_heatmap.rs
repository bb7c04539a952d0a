//! Segment density of states over frequency and separation.
//!
//! Writes `heatmap.csv` (first column omega, one column per L) into the
//! directory given as the first argument, or the working directory, and
//! prints the per-column maxima: even separations carry the sharp peaks.
//!
//! Usage: `cargo run --release --example ldos_heatmap [out_dir]`

use std::fmt::Write as _;
use std::path::PathBuf;

use wgr::cli::format_number;
use wgr::stationary::{heatmap, linspace};
use wgr::SystemParams;

fn main() -> wgr::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let p = SystemParams::degenerate(0.01, 0.1, 0).with_eta(1e-6);
    let ls: Vec<usize> = (0..=10).collect();
    let map = heatmap(&p, &linspace(0.005, 0.015, 2001), &ls)?;

    for (j, l) in ls.iter().enumerate() {
        let (w, v) = map.column_max(j).expect("in-band grid");
        println!("L = {l:>2}: max {v:>11.4e} at omega = {w:.7}");
    }

    let mut csv = String::from("omega");
    for l in &ls {
        let _ = write!(csv, ",{l}");
    }
    csv.push('\n');
    for (w, row) in map.omegas.iter().zip(&map.values) {
        csv.push_str(&format_number(*w));
        for v in row {
            csv.push(',');
            csv.push_str(&v.map_or("band_edge".into(), format_number));
        }
        csv.push('\n');
    }
    let path = dir.join("heatmap.csv");
    std::fs::write(&path, csv)?;
    println!("wrote {}", path.display());
    Ok(())
}
