use std::time::Instant;
use solenoid23::partition::{generator_profile, orbit_report};

fn main() {
    for &(a, b) in &[(1i64, 0i64), (0, 1), (1, 1), (-1, 2), (2, -1), (-1, -1), (1, -2), (-2, 1)] {
        let t = Instant::now();
        let p = generator_profile(a, b, 3, 10_000_000).unwrap();
        println!("profile ({a},{b}): {:?}  atoms at depth3: {}", t.elapsed(), p.reports[2].atom_count);
    }
    let t = Instant::now();
    let r = orbit_report(-1, 2, -3, 3, 10_000_000).unwrap();
    println!("scan (-1,2) depth 3 alone: {:?} ({} atoms)", t.elapsed(), r.atom_count);
}
