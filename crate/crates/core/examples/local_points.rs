//! Residue classes of local points on `5x³ + 9y³ + 10z³ + 12t³ = 0`, with the
//! invariant of the Brauer class read off from its charts at each class.
//!
//! `cargo run --release --example local_points -- [prime] [precision] [jobs]`

use brauer_manin::azumaya::{cassels_guy_class, ChartEvaluator, PointEnumerator};
use brauer_manin::eisenstein::factor_rational_prime;
use brauer_manin::lines27::SurfaceCoefficients;
use std::collections::BTreeMap;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>());
    let p = args.next().transpose()?.unwrap_or(2);
    let n = args.next().transpose()?.unwrap_or(3) as u32;
    let jobs = args.next().transpose()?.unwrap_or(1) as usize;

    let surface = SurfaceCoefficients::new(5, 9, 10, 12)?;
    let place = factor_rational_prime(p)?.remove(0);
    let enumerator = PointEnumerator::new(&surface, &place, n)?;
    let evaluator = ChartEvaluator::new(&cassels_guy_class(), &place)?;
    let ring = enumerator.ring().clone();
    let parts = enumerator.scan(jobs, BTreeMap::<String, u64>::new, |tally, pt| {
        let key = match evaluator.invariant(&ring, pt) {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        *tally.entry(key).or_default() += 1;
        Ok(())
    })?;
    let mut total = BTreeMap::new();
    let (mut classes, mut unresolved) = (0, 0);
    for part in parts {
        classes += part.classes;
        unresolved += part.unresolved;
        for (k, v) in part.acc {
            *total.entry(k).or_insert(0u64) += v;
        }
    }
    println!("place {} mod pi^{n}: {classes} liftable classes, {unresolved} undecided", place.label());
    for (k, v) in total {
        println!("  invariant {k}: {v} classes");
    }
    Ok(())
}
