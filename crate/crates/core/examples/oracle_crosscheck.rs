//! Four independent routes to the same transmission amplitude.
//!
//! * the closed-form Green's function,
//! * the plane-wave matching solve,
//! * the closed form built from the coupling-site potentials,
//! * the propagator between the sites flanking the segment, from a dense
//!   lead-terminated resolvent.
//!
//! Usage: `cargo run --release --example oracle_crosscheck`

use wgr::oracle::{closed_form_amplitude, fisher_lee_transmission, transfer_transmission};
use wgr::stationary::transmission_amplitude;
use wgr::{Breaking, LatticeLayout, SystemParams};

fn main() -> wgr::Result<()> {
    let p = SystemParams {
        omega_a1: 0.2,
        omega_b1: -0.1,
        omega_a2: 0.05,
        omega_b2: 0.3,
        xi1: 0.25,
        separation: 5,
        ..SystemParams::default()
    }
    .with_breaking(Breaking::Inter, 0.01)
    .with_eta(1e-12);
    let layout = LatticeLayout::for_params(&p, 8)?;
    println!(" omega    |t| green    |d t| solve   |d t| closed   |d t| dense");
    for w in [-1.2, -0.3, 0.0, 0.12, 0.27, 1.4] {
        let t = transmission_amplitude(&p, w)?;
        let solve = transfer_transmission(&p, w)?;
        let closed = closed_form_amplitude(&p, w)?;
        let dense = fisher_lee_transmission(&p, &layout, w)?;
        println!(
            "{w:>6.2}   {:.8}   {:.2e}      {:.2e}       {:.2e}    (|r|^2+|t|^2-1 = {:.1e})",
            t.norm(),
            (solve.t - t).norm(),
            (closed - t).norm(),
            (dense - t).norm(),
            solve.flux() - 1.0
        );
    }
    Ok(())
}
