//! Searches a small grid with an interruption part way through, then
//! resumes from the checkpoint.
//!
//!     cargo run --release --example search_grid -- 6

use cuboid::search::{read_records, run, RunOptions, SearchSpace};

fn main() {
    let height = std::env::args()
        .nth(1)
        .map_or(6, |s| s.parse().expect("height"));
    let dir = std::env::temp_dir().join(format!("cuboid-search-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let space = SearchSpace::new(height);
    let mut opts = RunOptions::new(4, dir.join("checkpoint.txt"), dir.join("records.jsonl"));

    opts.max_blocks = Some(5);
    let partial = run(&space, &opts).unwrap();
    println!(
        "after interruption: {} of {} points",
        partial.cursor, partial.total
    );

    opts.max_blocks = None;
    let summary = run(&space, &opts).unwrap();
    print!("{summary}");

    let records = read_records(&opts.output).unwrap();
    if let Some(best) = records.iter().max_by_key(|r| r.level) {
        println!("highest record: {}", serde_json::to_string(best).unwrap());
    }
    println!("files in {}", dir.display());
}
