//! Runs the graded pipeline at a point and prints the verdict.
//!
//!     cargo run --example verify_point -- -2 1

use cuboid::cli::render_verdict;
use cuboid::rational::parse_rational;
use cuboid::{grade, E21Form, Params};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| {
        let s = args.get(i).map_or(default, String::as_str);
        parse_rational(s).expect("rational argument").value
    };
    let p = Params::new(get(0, "-2"), get(1, "1"));
    let verdict = grade(&p, E21Form::Printed);
    render_verdict(&verdict, &mut std::io::stdout()).unwrap();
    println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
}
