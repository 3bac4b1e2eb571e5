//! Places of `ℚ(ζ₃)`, residue rings and local invariants of cyclic algebras
//! `(u, θ)`: tame symbols at primes other than 3, the norm classifier over `√−3`,
//! and reciprocity of a global symbol.

use brauer_manin::eisenstein::{
    cyclic_invariant, factor_rational_prime, localize, place_over_three, tame_invariant_sum, EisensteinNumber,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [2, 3, 5, 7, 13] {
        for place in factor_rational_prime(p)? {
            println!("p = {p:>2}: {:?} place {:<10} residue field of size {}", place.kind, place.label(), place.residue_size);
        }
    }

    let theta = EisensteinNumber::fraction(2, 3);
    let wild = place_over_three();
    for (name, u) in [
        ("zeta", EisensteinNumber::zeta()),
        ("2", EisensteinNumber::from_ints(2, 0)),
        ("3+4zeta", EisensteinNumber::from_ints(3, 4)),
    ] {
        let local = localize(&u, &wild, 4)?;
        let inv = cyclic_invariant(&local, &theta, &wild)?;
        let away = tame_invariant_sum(&u, &theta)?;
        println!("u = {name:<8} inv over sqrt(-3) = {:<4} sum of tame invariants = {away}", inv.to_string());
    }
    for p in [7, 13] {
        let place = factor_rational_prime(p)?.remove(0);
        let u = localize(&EisensteinNumber::from_ints(p as i64, 0), &place, 2)?;
        println!("inv at {} of ({p}, 2/3) = {}", place.label(), cyclic_invariant(&u, &theta, &place)?);
    }
    Ok(())
}
