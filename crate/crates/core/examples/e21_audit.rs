//! Runs the same search under both E21 denominators and lists every point
//! graded differently.
//!
//!     cargo run --release --example e21_audit -- 5

use cuboid::search::{compare_forms, read_records, run, RunOptions, SearchSpace};
use cuboid::E21Form;

fn main() {
    let height = std::env::args()
        .nth(1)
        .map_or(5, |s| s.parse().expect("height"));
    let dir = std::env::temp_dir().join(format!("cuboid-audit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut runs = Vec::new();
    for form in [E21Form::Printed, E21Form::Common] {
        let out = dir.join(format!("{form}.jsonl"));
        let opts = RunOptions::new(4, dir.join(format!("{form}.cp")), &out);
        let summary = run(&SearchSpace::new(height).with_form(form), &opts).unwrap();
        println!("[{form}] levels {:?}", summary.counts.levels);
        runs.push(read_records(&out).unwrap());
    }
    print!("{}", compare_forms(&runs[0], &runs[1]));
}
