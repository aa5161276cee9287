//! Solves monic cubics over the rationals: one built from known roots, one
//! with an irrational root, one with a non-square discriminant.
//!
//!     cargo run --example solve_cubic

use cuboid::rational::ratio;
use cuboid::{rational_roots, CubicPoly};

fn main() {
    let cubics = [
        CubicPoly::from_roots(&[ratio(3, 7), ratio(-5, 2), ratio(11, 1)]),
        CubicPoly::from_roots(&[ratio(1, 2), ratio(1, 2), ratio(-4, 3)]),
        CubicPoly::new(ratio(0, 1), ratio(-2, 1), ratio(0, 1)),
        CubicPoly::new(ratio(0, 1), ratio(0, 1), ratio(-2, 1)),
    ];
    for q in &cubics {
        println!("{q}");
        println!("  discriminant {}", q.discriminant());
        match rational_roots(q) {
            Some(roots) => println!("  roots {roots}"),
            None => println!("  does not split over Q"),
        }
    }
}
