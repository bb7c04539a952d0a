//! Resonator and segment densities of states around the mode frequency.
//!
//! For even `L` the segment density shows a Fano profile with a sharp peak
//! just below the mode frequency. The resonator density carries delta-like
//! weight from states that do not radiate into the waveguide.
//!
//! Usage: `cargo run --release --example density_of_states`

use wgr::stationary::{linspace, spectrum};
use wgr::SystemParams;

fn main() -> wgr::Result<()> {
    for l in [2, 3] {
        let p = SystemParams::degenerate(0.01, 0.1, l).with_eta(1e-6);
        let table = spectrum(&p, &linspace(0.0095, 0.0105, 20_001))?;
        let peak_w = table
            .rows
            .iter()
            .max_by(|a, b| a.rho_w.total_cmp(&b.rho_w))
            .unwrap();
        let peak_b = table
            .rows
            .iter()
            .max_by(|a, b| a.rho_between.total_cmp(&b.rho_between))
            .unwrap();
        println!("L = {l}");
        println!(
            "  resonator peak {:>12.4e} at {:.8}",
            peak_w.rho_w, peak_w.omega
        );
        println!(
            "  segment peak   {:>12.4e} at {:.8}",
            peak_b.rho_between, peak_b.omega
        );
        for w in [0.0096, 0.0099, 0.0101, 0.0104] {
            let r = table
                .rows
                .iter()
                .min_by(|a, b| (a.omega - w).abs().total_cmp(&(b.omega - w).abs()))
                .unwrap();
            println!(
                "  omega {:.4}: rho_w {:>10.4e}, rho_between {:>10.4e}",
                r.omega, r.rho_w, r.rho_between
            );
        }
    }
    Ok(())
}
