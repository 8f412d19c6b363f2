//! Figure data as CSV files in the system temp directory.

use std::fs::File;

use serde_json::json;
use ulam::figures::{figure2, figure3, figure4, figure5, figure6, GridSpec};
use ulam::output::{meta, write_csv};

pub fn run_example() -> ulam::Result<()> {
    let dir = std::env::temp_dir();
    let grid = GridSpec::new(-3.0, 3.0, 31)?;
    let tables = [
        ("figure2", figure2(&[0.25, 0.5, 1.0], 100_000)?),
        ("figure3", figure3(0.2, &[50, 100, 200])?),
        ("figure4", figure4(3.0, 1.0, grid, grid)?),
        ("figure5", figure5(grid, grid)?),
        ("figure6", figure6(1.0, grid, grid)?),
    ];
    for (name, table) in tables {
        let path = dir.join(format!("ulam_{name}.csv"));
        write_csv(&mut File::create(&path)?, &meta(name, json!({}), None), &table)?;
        println!("{name}: {} rows -> {}", table.len(), path.display());
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
