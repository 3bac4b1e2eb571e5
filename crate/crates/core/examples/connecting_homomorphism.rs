//! The connecting map `δ: H¹(G, Pic) → H²(G, K̄*/k̄*)` in the smallest model
//! that shows it: divisors `H, C, τC, ττC` on the surface over `K₀ = k(∛(2/3))`,
//! with the single relation `C + τC + ττC − 3H = div(f)`.
//!
//! ```text
//! 0 → ℤ·div(f) → ℤ⁴ = ⟨H, C, τC, ττC⟩ → ℤ⁴ / ℤ·div(f) → 0
//! ```
//!
//! The class `[C] + ω_X = [C] − [H]` has norm `div(f)`, so it is a 1-cocycle
//! on the cyclic group `⟨τ⟩`; `δ` sends it to the 2-cocycle picking out the
//! relation, i.e. to the generator of `H²(⟨τ⟩, ℤ) = ℤ/3`.

use brauer_manin::exactlin::{bigvec, IntMatrix};
use brauer_manin::groupcohom::{
    cohomology, connecting_homomorphism, cyclic_module, cyclic_one_cocycle, cyclic_two_cocycle, is_coboundary, GIntModule,
    ModuleSES,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // τ fixes H and cycles C → τC → ττC
    let tau = IntMatrix::from_rows_i64(&[vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
    let relation = bigvec(&[-3, 1, 1, 1]);
    let (group, divisors) = cyclic_module(&tau, 3, &[])?;
    let (_, classes) = cyclic_module(&tau, 3, std::slice::from_ref(&relation))?;
    let principal = GIntModule::trivial(&group, 1);
    let ses = ModuleSES::new(
        &group,
        principal.clone(),
        divisors,
        classes.clone(),
        IntMatrix::from_columns(&[relation], 4),
        IntMatrix::identity(4),
    )?;

    println!("H^1(<tau>, classes) = {}", cohomology(&group, &classes, 1)?.structure);
    println!("H^2(<tau>, Z)       = {}", cohomology(&group, &principal, 2)?.structure);

    let m = bigvec(&[-1, 1, 0, 0]);
    let c = cyclic_one_cocycle(&group, &classes, &m);
    let delta = connecting_homomorphism(&group, &ses, &c)?;
    let expected = cyclic_two_cocycle(&group, 1, &bigvec(&[1]));
    let diff = delta.add(&expected.scale(&(-1).into()));
    let agrees = is_coboundary(&group, &principal, &diff)?.is_some();
    println!("delta([C] - [H]) ~ relation cocycle: {agrees}");
    let trivial = is_coboundary(&group, &principal, &delta)?.is_some();
    println!("delta([C] - [H]) is a coboundary:    {trivial}");
    Ok(())
}
