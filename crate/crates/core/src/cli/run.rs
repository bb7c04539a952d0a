//! Execution of a validated configuration and CSV output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::ThreadPoolBuilder;

use super::config::{GridSpec, InitialState, Mode, RunConfig};
use crate::dynamics::{
    antisym_w1, antisym_w1w2, gaussian_packet, propagate, Direction, LatticeState,
    PropagatorConfig, Sampling, Trajectory,
};
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, LatticeLayout, SystemParams};
use crate::stationary::{self, adaptive_grid, linspace, Heatmap, Refinement, SpectrumGrid};

/// Marks heatmap cells that could not be evaluated.
pub const BAND_EDGE_TOKEN: &str = "band_edge";

/// Formats a number with 17 significant digits, enough to round-trip an `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Fidelity direction reported for each initial state.
pub fn run_direction(initial: &InitialState) -> Direction {
    match initial {
        InitialState::AntisymW1 => Direction::W1ToW2,
        InitialState::AntisymW1W2 | InitialState::Packet { .. } => Direction::Pair,
    }
}

/// Tracks written files so a failed run leaves nothing behind.
struct Outputs {
    prefix: String,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn path(&self, suffix: &str) -> PathBuf {
        PathBuf::from(format!("{}_{suffix}", self.prefix))
    }

    fn write(&mut self, suffix: &str, contents: &str) -> Result<()> {
        let path = self.path(suffix);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        self.written.push(path.clone());
        fs::write(&path, contents)?;
        Ok(())
    }

    fn discard(&self) {
        for p in &self.written {
            let _ = fs::remove_file(p);
        }
    }
}

/// Runs a configuration and returns the files it wrote.
///
/// Grid work runs on a pool of `config.workers` threads. Every cell is a pure
/// function of its coordinates and results are gathered in grid order, so the
/// output does not depend on the worker count.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let pool = ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;
    let mut out = Outputs {
        prefix: config.output.clone(),
        written: Vec::new(),
    };
    let result = pool.install(|| execute(config, &mut out));
    match result {
        Ok(()) => Ok(out.written),
        Err(e) => {
            out.discard();
            Err(e)
        }
    }
}

fn execute(config: &RunConfig, out: &mut Outputs) -> Result<()> {
    let mut meta = meta_header(config);
    match config.mode {
        Mode::Spectrum | Mode::Dos => {
            let grid = config.grid.as_ref().ok_or_else(|| missing("grid"))?;
            let omegas = frequency_grid(&config.params, grid, config.mode)?;
            let table = stationary::spectrum(&config.params, &omegas)?;
            table.check_invariants()?;
            let _ = writeln!(meta, "grid_points = {}", omegas.len());
            out.write("spectrum.csv", &spectrum_csv(&table))?;
        }
        Mode::Heatmap => {
            let grid = config.grid.as_ref().ok_or_else(|| missing("grid"))?;
            let omegas = linspace(grid.omega_min, grid.omega_max, grid.count);
            let map = stationary::heatmap(&config.params, &omegas, &config.separations)?;
            let _ = writeln!(meta, "grid_points = {}", omegas.len());
            out.write("heatmap.csv", &heatmap_csv(&map))?;
        }
        Mode::Evolve => {
            let spec = config
                .dynamics
                .as_ref()
                .ok_or_else(|| missing("dynamics"))?;
            let layout = LatticeLayout::for_params(&config.params, spec.n_side)?;
            let h = build_hamiltonian(&config.params, &layout)?;
            let initial = initial_state(&layout, &spec.initial)?;
            let sampling = Sampling {
                samples: spec.samples,
                snapshot_times: spec.snapshot_times.clone(),
            };
            let traj = propagate(
                &initial,
                &h,
                spec.t_final,
                &sampling,
                &PropagatorConfig::default(),
            )?;
            let direction = run_direction(&spec.initial);
            let _ = writeln!(
                meta,
                "max_norm_drift = {}",
                format_number(traj.max_norm_drift())
            );
            out.write("traj.csv", &trajectory_csv(&traj, direction))?;
            for snap in &traj.snapshots {
                out.write(&format!("snapshot_{}.csv", snap.time), &snapshot_csv(snap))?;
            }
        }
    }
    out.write("meta.txt", &meta)
}

fn missing(what: &str) -> Error {
    Error::Validation(format!("configuration has no {what} section"))
}

fn initial_state(layout: &LatticeLayout, initial: &InitialState) -> Result<LatticeState> {
    match *initial {
        InitialState::Packet { sigma, x0, k0 } => gaussian_packet(layout, sigma, x0, k0),
        InitialState::AntisymW1 => Ok(antisym_w1(layout)),
        InitialState::AntisymW1W2 => Ok(antisym_w1w2(layout)),
    }
}

/// Uniform grid, optionally refined on transmission (`spectrum`) or on the
/// summed densities of states (`dos`).
fn frequency_grid(params: &SystemParams, grid: &GridSpec, mode: Mode) -> Result<Vec<f64>> {
    let coarse = linspace(grid.omega_min, grid.omega_max, grid.count);
    if !grid.adaptive {
        return Ok(coarse);
    }
    let refine = Refinement::default();
    match mode {
        Mode::Dos => adaptive_grid(&coarse, &refine, |w| {
            let e = stationary::eval_point(params, w)?;
            Ok(e.resonator_ldos() + e.between_ldos())
        }),
        _ => adaptive_grid(&coarse, &refine, |w| {
            stationary::transmission_probability(params, w)
        }),
    }
}

fn spectrum_csv(table: &SpectrumGrid) -> String {
    let mut s = String::from("omega,T,rho_w,rho_between\n");
    for r in &table.rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            format_number(r.omega),
            format_number(r.transmission),
            format_number(r.rho_w),
            format_number(r.rho_between)
        );
    }
    s
}

fn heatmap_csv(map: &Heatmap) -> String {
    let mut s = String::from("omega");
    for l in &map.separations {
        let _ = write!(s, ",{l}");
    }
    s.push('\n');
    for (w, row) in map.omegas.iter().zip(&map.values) {
        s.push_str(&format_number(*w));
        for v in row {
            s.push(',');
            match v {
                Some(v) => s.push_str(&format_number(*v)),
                None => s.push_str(BAND_EDGE_TOKEN),
            }
        }
        s.push('\n');
    }
    s
}

fn trajectory_csv(traj: &Trajectory, direction: Direction) -> String {
    let fidelity = traj.fidelity_series(direction);
    let overlap = traj.overlap_series(direction);
    let mut s = String::from(
        "t,left,right,between,occ_a1,occ_b1,occ_a2,occ_b2,fidelity_occ,fidelity_eq35\n",
    );
    for i in 0..traj.len() {
        let occ = traj.occupations(i);
        let cols = [
            traj.times[i],
            traj.left[i],
            traj.right[i],
            traj.between[i],
            occ[0],
            occ[1],
            occ[2],
            occ[3],
            fidelity[i],
            overlap[i],
        ];
        let line: Vec<String> = cols.iter().map(|&x| format_number(x)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

fn snapshot_csv(state: &LatticeState) -> String {
    let mut s = String::from("site,re,im\n");
    for (i, a) in state.amplitudes.iter().enumerate() {
        let _ = writeln!(s, "{i},{},{}", format_number(a.re), format_number(a.im));
    }
    s
}

fn meta_header(config: &RunConfig) -> String {
    let p = &config.params;
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("wgr_version", env!("CARGO_PKG_VERSION").to_string());
    kv("mode", config.mode.to_string());
    kv("omega_c", format_number(p.omega_c));
    kv("xi0", format_number(p.xi0));
    kv("xi1", format_number(p.xi1));
    kv("omega_a1", format_number(p.omega_a1));
    kv("omega_b1", format_number(p.omega_b1));
    kv("omega_a2", format_number(p.omega_a2));
    kv("omega_b2", format_number(p.omega_b2));
    kv("L", p.separation.to_string());
    kv("delta", format_number(p.delta));
    kv("breaking", p.breaking.to_string());
    kv("eta", format_number(p.eta));
    let eff = p.mode_frequencies();
    for (name, w) in ["a1", "b1", "a2", "b2"].iter().zip(eff) {
        kv(&format!("effective_omega_{name}"), format_number(w));
    }
    if let Some(g) = &config.grid {
        kv("omega_min", format_number(g.omega_min));
        kv("omega_max", format_number(g.omega_max));
        kv("omega_count", g.count.to_string());
        kv("adaptive", g.adaptive.to_string());
        if g.adaptive {
            let r = Refinement::default();
            kv("refine_tolerance", format_number(r.tolerance));
            kv("refine_min_spacing", format_number(r.min_spacing));
            kv("refine_max_depth", r.max_depth.to_string());
        }
    }
    if config.mode == Mode::Heatmap {
        let list: Vec<String> = config.separations.iter().map(usize::to_string).collect();
        kv("L_list", format!("[{}]", list.join(", ")));
        kv("band_edge_token", BAND_EDGE_TOKEN.to_string());
    }
    if let Some(d) = &config.dynamics {
        kv("n_side", d.n_side.to_string());
        kv("initial", d.initial.name().to_string());
        if let InitialState::Packet { sigma, x0, k0 } = d.initial {
            kv("sigma", format_number(sigma));
            kv("x0", format_number(x0));
            kv("k0", format_number(k0));
        }
        kv("t_final", format_number(d.t_final));
        kv("samples", d.samples.to_string());
        let snaps: Vec<String> = d.snapshot_times.iter().map(|t| format_number(*t)).collect();
        kv("snapshot_times", format!("[{}]", snaps.join(", ")));
        let pc = PropagatorConfig::default();
        kv("propagator", "chebyshev".to_string());
        kv("accuracy_per_unit_time", format_number(pc.accuracy));
        kv("max_step", format_number(pc.max_step));
        kv("fidelity_direction", run_direction(&d.initial).to_string());
    }
    kv("workers", config.workers.to_string());
    s
}

/// Output path for a given suffix, exposed for callers that read results back.
pub fn output_path(prefix: &str, suffix: &str) -> PathBuf {
    Path::new(&format!("{prefix}_{suffix}")).to_path_buf()
}
