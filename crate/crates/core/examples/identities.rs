//! Re-proves the singular-locus identities by exact polynomial expansion.
//!
//!     cargo run --example identities

use cuboid::identities;

fn main() {
    let mut ok = true;
    for r in identities::check_all() {
        println!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.identity);
        println!("    {}", r.statement);
        ok &= r.pass;
    }
    std::process::exit(if ok { 0 } else { 1 });
}
