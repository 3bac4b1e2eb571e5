//! The 27 lines on a diagonal cubic: labels, intersection graph, Picard rank
//! and the orbits of `Gal(k(∛(b/a), ∛(c/a), ∛(d/a))/k)`.

use brauer_manin::lines27::{galois_data, gram_rank, line_configuration, SurfaceCoefficients};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let coeffs: SurfaceCoefficients = std::env::args().nth(1).unwrap_or_else(|| "1,1,1,2".into()).parse()?;
    let config = line_configuration();
    println!("rank of the 27x27 intersection matrix: {}", gram_rank(&config));
    for i in [0, 9, 18] {
        let names: Vec<String> = config.neighbours(i).iter().map(|&j| config.labels[j].to_string()).collect();
        println!("{} meets {}", config.labels[i], names.join(" "));
    }

    let galois = galois_data(&coeffs)?;
    println!("{coeffs}: Galois group of order {}, cube relations {:?}", galois.group.order(), galois.relations);
    let mut seen = [false; 27];
    for i in 0..27 {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<usize> = galois.line_perms.iter().map(|p| p[i]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.iter().for_each(|&j| seen[j] = true);
        let names: Vec<String> = orbit.iter().map(|&j| config.labels[j].to_string()).collect();
        println!("  orbit of size {}: {}", orbit.len(), names.join(" "));
    }
    Ok(())
}
