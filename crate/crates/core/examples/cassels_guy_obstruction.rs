//! The Brauer–Manin obstruction on 5x³ + 9y³ + 10z³ + 12t³ = 0 over ℚ(ζ₃):
//! local solvability everywhere, yet the invariants of the generating class
//! always sum to 2/3, so there is no global point.
//!
//! Run with `cargo run --release --example cassels_guy_obstruction -- [jobs]`.

use brauer_manin::azumaya::{cassels_guy_class, obstruction_verdict, PrecisionPolicy};
use brauer_manin::lines27::SurfaceCoefficients;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let jobs = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let coeffs = SurfaceCoefficients::new(5, 9, 10, 12)?;
    let policy = PrecisionPolicy { jobs, ..PrecisionPolicy::from_env()? };
    let report = obstruction_verdict(&coeffs, &[cassels_guy_class()], &policy)?;
    println!("H^1(k, Pic X) = {}", report.h1);
    for (place, ok) in &report.solvability {
        let answer = match ok {
            Some(true) => "yes",
            Some(false) => "no",
            None => "undecided",
        };
        println!("X(k_v) nonempty at {place}: {answer}");
    }
    for class in &report.classes {
        for p in &class.places {
            let attained: Vec<String> = p.attained.iter().map(|v| v.to_string()).collect();
            let runs: Vec<String> = p.runs.iter().map(|r| format!("N={} classes={}", r.precision, r.classes)).collect();
            println!(
                "{:>9} {:<16} attained {{{}}}  [{}]",
                p.place,
                format!("{:?}", p.method),
                attained.join(", "),
                runs.join("; ")
            );
        }
        let sum: Vec<String> = class.sumset.iter().map(|v| v.to_string()).collect();
        println!("sum of invariants: {{{}}}", sum.join(", "));
    }
    println!("verdict: {:?}", report.verdict);
    Ok(())
}
