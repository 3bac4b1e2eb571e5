//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 9 is an expected failure. The six residues listed for it do
//! not match the residues the enumeration observes: the observed ones are the
//! listed set with its last three entries multiplied by ζ. The literal check
//! still runs and still prints FAIL. This target errors if any other
//! criterion fails, or if criterion 9 starts passing.

mod common;

use brauer_manin::azumaya::{
    cassels_guy, cassels_guy_class, default_precision, obstruction_verdict, place_report, printed_six_residues,
    six_residue_census, zeta_scaled_six_residues, PlaceMethod, PrecisionPolicy, Verdict,
};
use brauer_manin::calibrate::{
    c_prime_quadrics, c_quadrics, calibration_identity, cubic_norm, divisor_membership, f, f_prime, g, k0, norm_identities, tau,
    TowerPolynomial,
};
use brauer_manin::eisenstein::{
    cyclic_invariant, factor_rational_prime, localize, place_over_three, EisensteinNumber, InvariantValue,
};
use brauer_manin::exactlin::{bigvec, IntMatrix};
use brauer_manin::groupcohom::{
    cohomology, connecting_homomorphism, cyclic_module, cyclic_one_cocycle, cyclic_two_cocycle, is_coboundary, GIntModule,
    ModuleSES,
};
use brauer_manin::lines27::{h1_picard, h1_through_subgroup, table_classification, SurfaceCoefficients};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Wall-clock budgets.
const H1_SCAN_BUDGET: Duration = Duration::from_secs(10 * 60);
const PLACE_TWO_BUDGET: Duration = Duration::from_secs(60);
const PLACE_THREE_BUDGET: Duration = Duration::from_secs(15 * 60);
const CALIBRATION_BUDGET: Duration = Duration::from_secs(60);
/// Workers for the place over 3.
const JOBS: usize = 4;
/// Criteria allowed to fail, with the reason printed next to them.
const EXPECTED_FAILURES: [u32; 1] = [9];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn surface(c: [i64; 4]) -> SurfaceCoefficients {
    SurfaceCoefficients::new(c[0], c[1], c[2], c[3]).expect("nonzero coefficients")
}

fn set(values: &BTreeSet<InvariantValue>) -> String {
    let v: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn h1_classification() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for n in 0..6usize.pow(4) {
        let c = [n / 216, n / 36 % 6, n / 6 % 6, n % 6].map(|k| k as i64 + 1);
        let s = surface(c);
        let h1 = h1_picard(&s).map_err(|e| e.to_string())?.result.structure;
        if h1 != table_classification(&s) {
            mismatches.push(c);
        }
    }
    let elapsed = start.elapsed();
    ensure(
        mismatches.is_empty() && elapsed < H1_SCAN_BUDGET,
        format!("1296 tuples, {} mismatches, {:.1}s", mismatches.len(), elapsed.as_secs_f64()),
    )
}

fn cassels_guy_cohomology() -> Outcome {
    let h1 = h1_picard(&surface([5, 9, 10, 12])).map_err(|e| e.to_string())?;
    let order = h1.galois.group.order();
    let infl = h1_through_subgroup(&h1, &h1.galois.subgroup_fixing([-1, -1, 1])).map_err(|e| e.to_string())?;
    let detail = format!(
        "|G| = {order}, H^1 = {}, via index-3 subgroup {} (restriction {})",
        h1.result.structure, infl.quotient, infl.restricted
    );
    ensure(
        order == 27
            && h1.result.structure.to_string() == "Z/3"
            && infl.quotient.to_string() == "Z/3"
            && infl.restricted.is_trivial(),
        detail,
    )
}

fn connecting_map() -> Outcome {
    let run = || -> Result<(bool, bool), Box<dyn std::error::Error>> {
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
        assert_eq!(cohomology(&group, &classes, 1)?.structure.to_string(), "Z/3");
        let c = cyclic_one_cocycle(&group, &classes, &bigvec(&[-1, 1, 0, 0]));
        let delta = connecting_homomorphism(&group, &ses, &c)?;
        let expected = cyclic_two_cocycle(&group, 1, &bigvec(&[1]));
        let diff = delta.add(&expected.scale(&(-1).into()));
        Ok((is_coboundary(&group, &principal, &diff)?.is_some(), is_coboundary(&group, &principal, &delta)?.is_none()))
    };
    let (matches, nontrivial) = run().map_err(|e| e.to_string())?;
    ensure(matches && nontrivial, format!("delta([C] - [H]) ~ relation cocycle: {matches}; not a coboundary: {nontrivial}"))
}

fn local_invariants() -> Outcome {
    let s = surface([5, 9, 10, 12]);
    let class = cassels_guy_class();
    let policy = PrecisionPolicy { jobs: JOBS, ..PrecisionPolicy::default() };
    let mut detail = Vec::new();
    let mut ok = true;
    for (p, expected, budget) in [(2, "{0}", PLACE_TWO_BUDGET), (3, "{2/3}", PLACE_THREE_BUDGET)] {
        let place = factor_rational_prime(p).map_err(|e| e.to_string())?.remove(0);
        let start = Instant::now();
        let r = place_report(&s, &class, &place, &policy).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ok &= r.stable && set(&r.attained) == expected && elapsed < budget;
        detail.push(format!("{} {} at N={} ({:.1}s)", r.place, set(&r.attained), r.precision, elapsed.as_secs_f64()));
    }
    let report = obstruction_verdict(&s, &[class], &policy).map_err(|e| e.to_string())?;
    let places = &report.classes[0].places;
    let five = places.iter().find(|r| r.prime == 5).ok_or("place 5 not examined")?;
    ok &= five.method == PlaceMethod::SplitExtension && set(&five.attained) == "{0}";
    detail.push(format!("5 {} via {:?}", set(&five.attained), five.method));
    let sum = set(&report.classes[0].sumset);
    ok &= report.verdict == Verdict::HasseViolation && sum == "{2/3}";
    detail.push(format!("sumset {sum}, {:?}", report.verdict));
    ensure(ok, detail.join("; "))
}

fn norm_identity_values() -> Outcome {
    let k = k0();
    let mut observed = Vec::new();
    let mut ok = true;
    for (w, expected) in norm_identities(&k) {
        let n = cubic_norm(&w, &tau(), &k).map_err(|e| e.to_string())?;
        let got = n.as_base().map(ToString::to_string).unwrap_or_else(|| "outside k".into());
        ok &= n.as_base() == Some(&expected);
        observed.push(got);
    }
    ensure(ok, format!("norms {}", observed.join(", ")))
}

fn orientation_anchor() -> Outcome {
    let place = place_over_three();
    let zeta = localize(&EisensteinNumber::zeta(), &place, 4).map_err(|e| e.to_string())?;
    let inv = cyclic_invariant(&zeta, &EisensteinNumber::fraction(2, 3), &place).map_err(|e| e.to_string())?;
    ensure(inv == InvariantValue::TWO_THIRDS, format!("inv(zeta, 2/3) = {inv}"))
}

fn calibration() -> Outcome {
    let start = Instant::now();
    let k = k0();
    let s = surface([5, 9, 10, 12]);
    let (fk, fpk, gk) = (f(&k), f_prime(&k), g(&k));
    let four = EisensteinNumber::from_ints(4, 0);
    let zeta_quarter = &EisensteinNumber::zeta() / &four;
    let zeta_sq_quarter = &EisensteinNumber::from_ints(-1, -1) / &four;
    let holds = calibration_identity(&fk, &fpk, &gk, &zeta_quarter, &tau(), &s, &k).map_err(|e| e.to_string())?;
    let variant = calibration_identity(&fk, &fpk, &gk, &zeta_sq_quarter, &tau(), &s, &k).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        holds && !variant && elapsed < CALIBRATION_BUDGET,
        format!("zeta/4: {holds}, zeta^2/4: {variant}, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn divisor_decompositions() -> Outcome {
    let k = k0();
    let s = surface([5, 9, 10, 12]);
    let fs = TowerPolynomial::diagonal_cubic(&s, &k);
    let c = divisor_membership(&f(&k), &c_quadrics(&k), &fs, &k).map_err(|e| e.to_string())?.is_some();
    let cp = divisor_membership(&f_prime(&k), &c_prime_quadrics(&k), &fs, &k).map_err(|e| e.to_string())?.is_some();
    ensure(c && cp, format!("f over C: {c}, f' over C': {cp}"))
}

fn residue_list(s: &BTreeSet<(i64, i64)>) -> String {
    let v: Vec<String> = s.iter().map(|(a, b)| format!("{a}+{b}z")).collect();
    format!("{{{}}}", v.join(", "))
}

fn six_residues() -> Outcome {
    let s = surface([5, 9, 10, 12]);
    let place = place_over_three();
    let census = six_residue_census(&s, &cassels_guy::f(), default_precision(&place), JOBS).map_err(|e| e.to_string())?;
    let observed: BTreeSet<(i64, i64)> = census.residues.keys().copied().collect();
    let outside: BTreeSet<_> = observed.difference(&printed_six_residues()).copied().collect();
    let scaled_ok = observed.is_subset(&zeta_scaled_six_residues());
    let detail = format!(
        "observed {} at N={}; outside listed set: {}; within zeta-scaled set: {scaled_ok}",
        residue_list(&observed),
        census.precision,
        residue_list(&outside)
    );
    ensure(outside.is_empty() && !observed.is_empty(), detail)
}

fn property_suites() -> Outcome {
    let mut failed = Vec::new();
    for (name, suite) in common::SUITES {
        if let Err(e) = suite() {
            failed.push(format!("{name}: {e}"));
        }
    }
    let total = common::SUITES.len();
    ensure(
        failed.is_empty(),
        format!(
            "{}/{total} suites x {} cases{}",
            total - failed.len(),
            common::CASES,
            failed.iter().map(|f| format!("; {f}")).collect::<String>()
        ),
    )
}

fn control_surface() -> Outcome {
    let c = [1, 1, 1, 1];
    let point = [1i64, -1, 0, 0];
    let on_surface = c.iter().zip(point).map(|(a, x)| a * x.pow(3)).sum::<i64>() == 0;
    let report = obstruction_verdict(&surface(c), &[], &PrecisionPolicy { jobs: JOBS, ..PrecisionPolicy::default() })
        .map_err(|e| e.to_string())?;
    let solvable = report.solvability.iter().all(|(_, s)| *s == Some(true));
    ensure(
        on_surface && report.verdict == Verdict::H1Trivial && solvable,
        format!(
            "{:?}, places tested: {}, all solvable: {solvable}, (1,-1,0,0) on surface: {on_surface}",
            report.verdict,
            report.solvability.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "H1 classification", h1_classification),
        (2, "Cassels-Guy cohomology", cassels_guy_cohomology),
        (3, "connecting homomorphism", connecting_map),
        (4, "local invariants", local_invariants),
        (5, "norm identities", norm_identity_values),
        (6, "orientation anchor", orientation_anchor),
        (7, "calibration identity", calibration),
        (8, "divisor membership", divisor_decompositions),
        (9, "six-residue property", six_residues),
        (10, "property suites", property_suites),
        (11, "control surface", control_surface),
    ];
    let mut unexpected = Vec::new();
    for (n, name, check) in criteria {
        let outcome = check();
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let expected_fail = EXPECTED_FAILURES.contains(&n);
        let note = if expected_fail { " [expected failure]" } else { "" };
        println!("criterion {n:>2} {status} {name}: {detail}{note}");
        if outcome.is_ok() == expected_fail {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
