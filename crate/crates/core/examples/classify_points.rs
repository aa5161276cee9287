//! Classifies a few points against the singular factors, including points
//! generated on each of the two singular curves.
//!
//!     cargo run --example classify_points

use cuboid::rational::ratio;
use cuboid::singularity::{classify, factor_values, first_curve_b, second_curve_b};
use cuboid::Params;

fn main() {
    let c = ratio(7, 5);
    let mut points = vec![
        Params::new(ratio(1, 1), ratio(1, 1)),
        Params::new(ratio(1, 2), ratio(3, 1)),
        Params::new(ratio(0, 1), ratio(0, 1)),
        Params::new(ratio(2, 3), ratio(1, 2)),
    ];
    points.push(Params::new(first_curve_b(&c).unwrap(), c.clone()));
    points.push(Params::new(second_curve_b(&c).unwrap(), c));

    for p in points {
        let [f1, f2, q] = factor_values(&p);
        println!(
            "{p:<16} {:<24} factors: {f1}, {f2}, {q}",
            classify(&p).to_string()
        );
    }
}
