//! Throughput property: most nonsingular points stop at the discriminant
//! prefilter. Advisory; failing it signals a performance regression only.

use cuboid::coefficients::{E21Form, Params};
use cuboid::rational::Rational;
use cuboid::verifier::{grade, Reason};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn prefilter_rejects_most_nonsingular_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(95);
    let (mut nonsingular, mut rejected) = (0u32, 0u32);
    while nonsingular < 2000 {
        let b = Rational::new(
            rng.gen_range(-200i64..=200).into(),
            rng.gen_range(1i64..=200).into(),
        );
        let c = Rational::new(
            rng.gen_range(-200i64..=200).into(),
            rng.gen_range(1i64..=200).into(),
        );
        let v = grade(&Params::new(b, c), E21Form::Printed);
        if v.reason == Reason::Singular {
            continue;
        }
        nonsingular += 1;
        if v.reason == Reason::DiscNonsquare {
            rejected += 1;
        }
    }
    let share = f64::from(rejected) / f64::from(nonsingular);
    eprintln!("prefilter share: {share:.4}");
    assert!(share >= 0.95, "prefilter share {share}");
}
