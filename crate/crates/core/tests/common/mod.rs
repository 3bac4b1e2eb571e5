//! Randomized invariants of the cohomology, lattice, arithmetic and chart
//! layers, shared by the property and acceptance targets.

use brauer_manin::azumaya::{
    cassels_guy_class, obstruction_verdict, AzumayaClass, ChartEvaluator, ChartReading, LocalPointClass, PointEnumerator,
    PrecisionPolicy,
};
use brauer_manin::calibrate::{cubic_norm, k0, tau, TowerElement, TowerField};
use brauer_manin::eisenstein::{
    cyclic_invariant, factor_rational_prime, localize, place_over_three, tame_invariant_sum, EisensteinNumber, LocalRing, Place,
};
use brauer_manin::exactlin::{bigvec, smith_normal_form, IntMatrix};
use brauer_manin::groupcohom::{
    bar_differential, coboundary, cohomology, cyclic_cohomology, cyclic_module, is_coboundary, permutation_group_closure,
    Cochain, FiniteGroup, GIntModule,
};
use brauer_manin::lines27::SurfaceCoefficients;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use std::sync::OnceLock;

/// Cases per suite.
pub const CASES: u32 = 100;

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// A group generated by permutations of three points, acting on ℤ³ by
/// permutation matrices, optionally twisted by the sign character.
fn small_module(gens: &[Vec<usize>], twisted: bool) -> (FiniteGroup, GIntModule) {
    let (g, perms) = permutation_group_closure(gens, 6).unwrap();
    let base = GIntModule::permutation(&g, &perms).unwrap();
    if !twisted {
        return (g, base);
    }
    let action = (0..g.order()).map(|k| base.action(k).scale(&BigInt::from(sign(&perms[k])))).collect();
    let m = GIntModule::new(&g, 3, vec![], action).unwrap();
    (g, m)
}

fn permutation3() -> impl Strategy<Value = Vec<usize>> {
    Just(vec![0usize, 1, 2]).prop_shuffle()
}

fn random_cochain(degree: usize, g: &FiniteGroup, rank: usize, seed: &[i64]) -> Cochain {
    let len = (g.order() - 1).pow(degree as u32) * rank;
    let v: Vec<i64> = (0..len).map(|i| seed[i % seed.len()] * (1 + (i as i64 % 3)) - (i as i64 % 2)).collect();
    Cochain::from_normalized_vector(&bigvec(&v), degree, g.order(), rank)
}

fn tower_element(k: &TowerField, coeffs: &[(i64, i64)]) -> TowerElement {
    let r = k.radicands().len();
    let mut x = k.zero();
    for (idx, &(a, b)) in coeffs.iter().enumerate().take(3usize.pow(r as u32)) {
        let exps: Vec<usize> = (0..r).map(|i| idx / 3usize.pow(i as u32) % 3).collect();
        x = k.add(&x, &k.monomial(EisensteinNumber::from_ints(a, b), &exps).unwrap());
    }
    x
}

fn k1() -> TowerField {
    TowerField::new(vec![EisensteinNumber::fraction(2, 3), EisensteinNumber::fraction(9, 5)]).unwrap()
}

struct Fixture {
    place: Place,
    ring: LocalRing,
    classes: Vec<LocalPointClass>,
}

fn fixture(p: u64, n: u32) -> Fixture {
    let s = SurfaceCoefficients::new(5, 9, 10, 12).unwrap();
    let place = factor_rational_prime(p).unwrap().remove(0);
    let e = PointEnumerator::new(&s, &place, n).unwrap();
    let (classes, unresolved) = e.classes().unwrap();
    assert_eq!(unresolved, 0);
    Fixture { ring: e.ring().clone(), place, classes }
}

fn fixtures() -> &'static [Fixture; 2] {
    static F: OnceLock<[Fixture; 2]> = OnceLock::new();
    F.get_or_init(|| [fixture(2, 3), fixture(3, 5)])
}

fn invariant_of(class: &AzumayaClass, f: &Fixture, pt: &LocalPointClass) -> Option<String> {
    ChartEvaluator::new(class, &f.place).unwrap().invariant(&f.ring, pt).ok().map(|v| v.to_string())
}

fn report_json(c: [i64; 4], jobs: usize) -> String {
    let s = SurfaceCoefficients::new(c[0], c[1], c[2], c[3]).unwrap();
    let policy = PrecisionPolicy { cap: Some(2), jobs, ..PrecisionPolicy::default() };
    match obstruction_verdict(&s, &[], &policy) {
        Ok(r) => serde_json::to_string(&r).unwrap(),
        Err(e) => format!("error: {e}"),
    }
}

pub type Outcome = Result<(), String>;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    TestRunner::new(config()).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn bar_differential_squares_to_zero() -> Outcome {
    run((prop::collection::vec(permutation3(), 1..3), any::<bool>(), 0usize..2), |(gens, twisted, d)| {
        let (g, m) = small_module(&gens, twisted);
        if g.order() > 1 {
            let first = bar_differential(&g, &m, d);
            let second = bar_differential(&g, &m, d + 1);
            prop_assert!(second.mul(&first).is_zero());
        }
        Ok(())
    })
}

pub fn coboundaries_are_recognized() -> Outcome {
    let strategy = (prop::collection::vec(permutation3(), 1..3), any::<bool>(), 1usize..3, prop::collection::vec(-3i64..4, 1..8));
    run(strategy, |(gens, twisted, d, seed)| {
        let (g, m) = small_module(&gens, twisted);
        if g.order() > 1 {
            let b = random_cochain(d - 1, &g, m.rank(), &seed);
            let c = coboundary(&g, &m, &b).unwrap();
            let witness = is_coboundary(&g, &m, &c).unwrap();
            prop_assert!(witness.is_some());
            prop_assert_eq!(coboundary(&g, &m, &witness.unwrap()).unwrap(), c);
        }
        Ok(())
    })
}

/// `τ = ±P_σ` for a permutation σ of `rank ≤ 4` points.
fn signed_permutation() -> impl Strategy<Value = (Vec<usize>, bool)> {
    ((1usize..5).prop_flat_map(|r| Just((0..r).collect::<Vec<_>>()).prop_shuffle()), any::<bool>())
}

pub fn bar_and_cyclic_cohomology_agree() -> Outcome {
    let strategy = (signed_permutation(), any::<bool>(), prop::sample::select(vec![2usize, 3, 4, 6]), 1usize..3);
    run(strategy, |((sigma, negate), norm_relation, n, degree)| {
        let rank = sigma.len();
        let mut tau = IntMatrix::zeros(rank, rank);
        let s = if negate { -1 } else { 1 };
        for (i, &j) in sigma.iter().enumerate() {
            tau[(j, i)] = BigInt::from(s);
        }
        prop_assume!(tau.pow(n) == IntMatrix::identity(rank));
        let relations = if norm_relation { vec![bigvec(&vec![1; rank])] } else { vec![] };
        let (g, m) = cyclic_module(&tau, n, &relations).unwrap();
        let bar = cohomology(&g, &m, degree).unwrap().structure;
        let cyc = cyclic_cohomology(&tau, n, &relations, degree).unwrap().structure;
        prop_assert_eq!(bar, cyc);
        Ok(())
    })
}

pub fn smith_form_reconstructs() -> Outcome {
    run((1usize..6, 1usize..6, prop::collection::vec(-30i64..31, 25)), |(rows, cols, entries)| {
        let m = IntMatrix::from_rows_i64(&(0..rows).map(|i| entries[i * 5..i * 5 + cols].to_vec()).collect::<Vec<_>>());
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.mul(snf.u_inverse()), IntMatrix::identity(rows));
        prop_assert_eq!(snf.v.mul(snf.v_inverse()), IntMatrix::identity(cols));
        for i in 0..rows {
            for j in 0..cols {
                prop_assert!(i == j || snf.d[(i, j)].is_zero());
            }
        }
        for w in snf.invariants().windows(2) {
            prop_assert!(w[0] > BigInt::zero() && (&w[1] % &w[0]).is_zero());
        }
        Ok(())
    })
}

pub fn tower_inverse() -> Outcome {
    run((prop::collection::vec((-4i64..5, -4i64..5), 9), any::<bool>()), |(coeffs, two_radicals)| {
        let k = if two_radicals { k1() } else { k0() };
        let w = tower_element(&k, &coeffs);
        prop_assume!(!w.is_zero());
        let inv = k.inv(&w).unwrap();
        prop_assert_eq!(k.mul(&w, &inv), k.one());
        Ok(())
    })
}

pub fn norms_have_trivial_invariants() -> Outcome {
    run(prop::collection::vec((-3i64..4, -3i64..4), 3), |coeffs| {
        let k = k0();
        let w = tower_element(&k, &coeffs);
        prop_assume!(!w.is_zero());
        let n = cubic_norm(&w, &tau(), &k).unwrap();
        let n = n.as_base().expect("norm lies in k").clone();
        let theta = EisensteinNumber::fraction(2, 3);
        let wild = place_over_three();
        let local = localize(&n, &wild, 4).unwrap();
        prop_assert!(cyclic_invariant(&local, &theta, &wild).unwrap().is_zero());
        prop_assert!(tame_invariant_sum(&n, &theta).unwrap().is_zero());
        Ok(())
    })
}

pub fn charts_agree_at_every_class() -> Outcome {
    run((0usize..2, any::<prop::sample::Index>()), |(which, idx)| {
        let f = &fixtures()[which];
        let pt = &f.classes[idx.index(f.classes.len())];
        let readings = ChartEvaluator::new(&cassels_guy_class(), &f.place).unwrap().readings(&f.ring, pt).unwrap();
        let values: Vec<_> = readings
            .iter()
            .filter_map(|r| match r {
                ChartReading::Value(v) => Some(*v),
                _ => None,
            })
            .collect();
        prop_assert!(!values.is_empty());
        prop_assert!(values.iter().all(|v| *v == values[0]));
        Ok(())
    })
}

pub fn cube_scaling_preserves_invariants() -> Outcome {
    run((0usize..2, any::<prop::sample::Index>(), -6i64..7, -6i64..7), |(which, idx, x, y)| {
        prop_assume!((x, y) != (0, 0));
        let f = &fixtures()[which];
        let pt = &f.classes[idx.index(f.classes.len())];
        let base = cassels_guy_class();
        let scaled = base.scaled_by_cube(&EisensteinNumber::from_ints(x, y));
        prop_assert_eq!(invariant_of(&base, f, pt), invariant_of(&scaled, f, pt));
        Ok(())
    })
}

pub fn single_denominator_charts_agree() -> Outcome {
    run((0usize..2, any::<prop::sample::Index>(), 0usize..4), |(which, idx, d)| {
        let f = &fixtures()[which];
        let pt = &f.classes[idx.index(f.classes.len())];
        let base = cassels_guy_class();
        let full = invariant_of(&base, f, pt);
        if let Some(restricted) = invariant_of(&base.restricted_to_denominator(d), f, pt) {
            prop_assert_eq!(Some(restricted), full);
        }
        Ok(())
    })
}

pub fn enumeration_is_independent_of_jobs() -> Outcome {
    run((prop::array::uniform4(1i64..13), any::<bool>()), |(c, wild)| {
        let s = SurfaceCoefficients::new(c[0], c[1], c[2], c[3]).unwrap();
        let place = if wild { place_over_three() } else { factor_rational_prime(2).unwrap().remove(0) };
        let e = PointEnumerator::new(&s, &place, 2).unwrap();
        let (serial, _) = e.classes().unwrap();
        let parallel: Vec<LocalPointClass> = e
            .scan(4, Vec::new, |v: &mut Vec<LocalPointClass>, pt| {
                v.push(pt.clone());
                Ok(())
            })
            .unwrap()
            .into_iter()
            .flat_map(|p| p.acc)
            .collect();
        prop_assert_eq!(serial, parallel);
        Ok(())
    })
}

pub fn reports_are_independent_of_jobs() -> Outcome {
    run(prop::array::uniform4(1i64..13), |c| {
        prop_assert_eq!(report_json(c, 1), report_json(c, 4));
        Ok(())
    })
}

pub type Suite = (&'static str, fn() -> Outcome);

/// Every suite, by name, for callers that report on all of them.
#[allow(dead_code)] // read by the acceptance target only
pub const SUITES: [Suite; 11] = [
    ("boundary squares to zero", bar_differential_squares_to_zero),
    ("coboundary round trip", coboundaries_are_recognized),
    ("bar vs cyclic cohomology", bar_and_cyclic_cohomology_agree),
    ("smith form reconstruction", smith_form_reconstructs),
    ("tower inverses", tower_inverse),
    ("norms have trivial invariants", norms_have_trivial_invariants),
    ("charts agree at shared points", charts_agree_at_every_class),
    ("cube scaling invariance", cube_scaling_preserves_invariants),
    ("denominator invariance", single_denominator_charts_agree),
    ("enumeration independent of jobs", enumeration_is_independent_of_jobs),
    ("report independent of jobs", reports_are_independent_of_jobs),
];
