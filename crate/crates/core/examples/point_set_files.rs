//! Read point-set JSON files, verify them and write one back out.
//!
//! Usage: `cargo run --example point_set_files [FILE...]`; without arguments the
//! bundled fixtures are used.

use std::path::PathBuf;

use projbound::cli::{render_verification, ReportFormat};
use projbound::verifier::default_tolerance;
use projbound::{circle_design, verify, PointSetFile, Result};

fn main() -> Result<()> {
    let mut files: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    if files.is_empty() {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let mut found: Vec<PathBuf> = std::fs::read_dir(&dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        found.sort();
        files = found;
    }
    for path in &files {
        println!("== {}", path.display());
        let (ps, p) = PointSetFile::read(path)?.into_point_set()?;
        let report = verify(&ps, p, default_tolerance(ps.len()))?;
        print!("{}", render_verification(&report, ReportFormat::Text, false));
    }

    let file = PointSetFile::from_point_set(&circle_design(4)?, 6);
    println!("== generated\n{}", file.to_json());
    Ok(())
}
