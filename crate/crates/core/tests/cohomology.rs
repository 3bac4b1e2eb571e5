//! Inflation–restriction through the index-3 subgroup fixing ∛(2/3), and the
//! connecting map on the four-divisor model over `k(∛(2/3))`.

use brauer_manin::exactlin::{bigvec, IntMatrix};
use brauer_manin::groupcohom::{
    cohomology, connecting_homomorphism, cyclic_module, cyclic_one_cocycle, cyclic_two_cocycle, is_coboundary, GIntModule,
    ModuleSES,
};
use brauer_manin::lines27::{h1_picard, h1_through_subgroup, SurfaceCoefficients};

#[test]
fn h1_is_inflated_from_the_cyclic_quotient() {
    let s = SurfaceCoefficients::new(5, 9, 10, 12).unwrap();
    let h1 = h1_picard(&s).unwrap();
    assert_eq!(h1.result.structure.to_string(), "Z/3");
    let h = h1.galois.subgroup_fixing([-1, -1, 1]);
    assert_eq!(h.len(), 9);
    let check = h1_through_subgroup(&h1, &h).unwrap();
    assert_eq!(check.subgroup_order, 9);
    assert_eq!(check.quotient.to_string(), "Z/3");
    assert!(check.restricted.is_trivial());
}

#[test]
fn connecting_map_hits_the_relation_cocycle() {
    let tau = IntMatrix::from_rows_i64(&[vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
    let relation = bigvec(&[-3, 1, 1, 1]);
    let (group, divisors) = cyclic_module(&tau, 3, &[]).unwrap();
    let (_, classes) = cyclic_module(&tau, 3, std::slice::from_ref(&relation)).unwrap();
    let principal = GIntModule::trivial(&group, 1);
    let ses = ModuleSES::new(
        &group,
        principal.clone(),
        divisors,
        classes.clone(),
        IntMatrix::from_columns(&[relation], 4),
        IntMatrix::identity(4),
    )
    .unwrap();
    assert_eq!(cohomology(&group, &classes, 1).unwrap().structure.to_string(), "Z/3");
    assert_eq!(cohomology(&group, &principal, 2).unwrap().structure.to_string(), "Z/3");

    let c = cyclic_one_cocycle(&group, &classes, &bigvec(&[-1, 1, 0, 0]));
    let delta = connecting_homomorphism(&group, &ses, &c).unwrap();
    let expected = cyclic_two_cocycle(&group, 1, &bigvec(&[1]));
    let diff = delta.add(&expected.scale(&(-1).into()));
    assert!(is_coboundary(&group, &principal, &diff).unwrap().is_some());
    assert!(is_coboundary(&group, &principal, &delta).unwrap().is_none());
}
