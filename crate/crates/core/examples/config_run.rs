//! Drives the batch front end from an in-memory configuration.
//!
//! Parses a spectrum configuration, runs it on two workers and prints the
//! files written and the first rows of the table. The same document saved to
//! a file runs with `wgr spectrum --config <file> --out <prefix>`.
//!
//! Usage: `cargo run --release --example config_run [out_prefix]`

use wgr::cli::{parse_config, run};

const CONFIG: &str = r#"
mode = "spectrum"
xi1 = 0.1
omega_a1 = 0.01
omega_b1 = 0.01
omega_a2 = 0.01
omega_b2 = 0.01
L = 3
omega_min = 0.0
omega_max = 0.02
omega_count = 41
adaptive = true
"#;

fn main() -> wgr::Result<()> {
    let prefix = std::env::args().nth(1).unwrap_or_else(|| {
        std::env::temp_dir()
            .join("wgr_config_run")
            .display()
            .to_string()
    });
    let config = parse_config(CONFIG)?.with_output(prefix).with_workers(2);
    let files = run(&config)?;
    for f in &files {
        println!("wrote {}", f.display());
    }
    let table = std::fs::read_to_string(&files[0])?;
    for line in table.lines().take(6) {
        println!("{line}");
    }
    println!("... {} rows", table.lines().count() - 1);
    Ok(())
}
