//! Evaluates the nine coefficients at a point under both E21 denominators.
//!
//!     cargo run --example coefficients -- 3/2 5

use cuboid::rational::parse_rational;
use cuboid::{eval_coefficients, E21Form, Params};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| {
        let s = args.get(i).map_or(default, String::as_str);
        parse_rational(s).expect("rational argument").value
    };
    let p = Params::new(get(0, "3/2"), get(1, "5"));
    println!("point {p}");
    for form in [E21Form::Printed, E21Form::Common] {
        match eval_coefficients(&p, form) {
            Ok(cs) => {
                println!("[{form}]");
                for (k, v) in cs.entries() {
                    println!("  {k} = {v}");
                }
            }
            Err(e) => println!("[{form}] {e}"),
        }
    }
}
