use super::chart::AzumayaClass;
use super::enumerate::{PointEnumerator, DEFAULT_NODE_BUDGET};
use super::evaluate::{residue_over_sqrt_minus_three, ChartEvaluator};
use super::AzumayaError;
use crate::eisenstein::{factor_rational_prime, prime_divisors, theta_is_local_cube, InvariantValue, Place, PlaceKind};
use crate::lines27::{h1_picard, SurfaceCoefficients};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Name of the environment variable bounding precision escalation.
pub const PRECISION_CAP_ENV: &str = "BM_PRECISION_CAP";

/// Starting precision: mod 8 over 2, mod `9√−3` over 3, 3 elsewhere.
pub fn default_precision(place: &Place) -> u32 {
    match place.p {
        2 => 3,
        3 => 5,
        _ => 3,
    }
}

/// How far precision may be raised before a place is declared inconclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    /// Starting precision per rational prime.
    pub overrides: BTreeMap<u64, u32>,
    /// Number of +2 steps allowed beyond the first recheck.
    pub max_escalations: u32,
    /// Absolute upper bound on the precision.
    pub cap: Option<u32>,
    pub node_budget: u64,
    pub jobs: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { overrides: BTreeMap::new(), max_escalations: 3, cap: None, node_budget: DEFAULT_NODE_BUDGET, jobs: 1 }
    }
}

impl PrecisionPolicy {
    /// Default policy with the cap read from `BM_PRECISION_CAP` if set.
    pub fn from_env() -> Result<Self, AzumayaError> {
        let mut p = Self::default();
        if let Ok(v) = std::env::var(PRECISION_CAP_ENV) {
            let cap: u32 = v.trim().parse().map_err(|_| AzumayaError::InvalidPrecisionCap(v.clone()))?;
            if cap == 0 {
                return Err(AzumayaError::InvalidPrecisionCap(v));
            }
            p.cap = Some(cap);
        }
        Ok(p)
    }

    /// Starting precision, never above the cap.
    pub fn start(&self, place: &Place) -> u32 {
        let n = self.overrides.get(&place.p).copied().unwrap_or_else(|| default_precision(place));
        self.cap.map_or(n, |c| n.min(c))
    }

    fn limit(&self, place: &Place) -> u32 {
        let natural = self.start(place) + 2 * (self.max_escalations + 1);
        self.cap.map_or(natural, |c| c.min(natural))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaceMethod {
    /// Good reduction and unramified class: points exist, invariant 0.
    GoodReduction,
    /// θ is a local cube: only solvability is searched.
    SplitExtension,
    Enumeration,
}

/// One pass at a fixed precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionRun {
    pub precision: u32,
    pub classes: u64,
    pub unresolved: u64,
    pub no_evaluable_chart: u64,
    pub attained: BTreeSet<InvariantValue>,
}

impl PrecisionRun {
    fn complete(&self) -> bool {
        self.unresolved == 0 && self.no_evaluable_chart == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceReport {
    pub place: String,
    pub prime: u64,
    pub kind: PlaceKind,
    pub method: PlaceMethod,
    pub solvable: bool,
    pub attained: BTreeSet<InvariantValue>,
    pub point_classes: u64,
    pub precision: u32,
    pub stable: bool,
    pub runs: Vec<PrecisionRun>,
}

impl PlaceReport {
    pub fn is_inconclusive(&self) -> bool {
        !self.stable
    }
}

fn run_once(
    coeffs: &SurfaceCoefficients,
    evaluator: &ChartEvaluator,
    place: &Place,
    precision: u32,
    policy: &PrecisionPolicy,
) -> Result<PrecisionRun, AzumayaError> {
    let e = PointEnumerator::new(coeffs, place, precision)?.with_budget(policy.node_budget);
    let ring = e.ring().clone();
    let parts = e.scan(
        policy.jobs,
        || (BTreeSet::new(), 0u64),
        |(seen, missing): &mut (BTreeSet<InvariantValue>, u64), pt| match evaluator.invariant(&ring, pt) {
            Ok(v) => {
                seen.insert(v);
                Ok(())
            }
            Err(AzumayaError::NoEvaluableChart { .. }) => {
                *missing += 1;
                Ok(())
            }
            Err(err) => Err(err),
        },
    )?;
    let mut run = PrecisionRun { precision, classes: 0, unresolved: 0, no_evaluable_chart: 0, attained: BTreeSet::new() };
    for p in parts {
        run.classes += p.classes;
        run.unresolved += p.unresolved;
        run.no_evaluable_chart += p.acc.1;
        run.attained.extend(p.acc.0);
    }
    Ok(run)
}

/// Whether the place needs analysis: over 3, over a prime of bad reduction, or
/// where the class may ramify.
pub fn bad_places(coeffs: &SurfaceCoefficients, class: Option<&AzumayaClass>) -> Result<Vec<Place>, AzumayaError> {
    let mut primes: BTreeSet<u64> = BTreeSet::from([3]);
    for c in coeffs.as_array() {
        primes.extend(prime_divisors(&BigInt::from(c)));
    }
    if let Some(class) = class {
        let support = |x: &crate::eisenstein::EisensteinNumber| {
            let (a, b, d) = x.integral_parts();
            prime_divisors(&((&a * &a - &a * &b + &b * &b) * &d))
        };
        primes.extend(support(&class.theta));
        for chart in &class.charts {
            primes.extend(support(&chart.constant));
            let content = chart
                .numerator
                .terms()
                .iter()
                .fold(BigInt::zero(), |g, (_, (a, b))| g.gcd(&BigInt::from(*a)).gcd(&BigInt::from(*b)));
            primes.extend(prime_divisors(&content));
        }
    }
    let mut out = Vec::new();
    for p in primes {
        out.extend(factor_rational_prime(p)?);
    }
    Ok(out)
}

fn report_from(place: &Place, method: PlaceMethod, runs: Vec<PrecisionRun>, stable: bool) -> PlaceReport {
    let last = runs.last().cloned();
    let solvable = runs.iter().any(|r| r.classes > 0);
    PlaceReport {
        place: place.label(),
        prime: place.p,
        kind: place.kind,
        method,
        solvable,
        attained: if stable { last.as_ref().map(|r| r.attained.clone()).unwrap_or_default() } else { BTreeSet::new() },
        point_classes: last.as_ref().map_or(0, |r| r.classes),
        precision: last.map_or(0, |r| r.precision),
        stable,
        runs,
    }
}

/// Searches for one liftable class, raising precision while the outcome is undecided.
fn solvability_runs(
    coeffs: &SurfaceCoefficients,
    place: &Place,
    policy: &PrecisionPolicy,
) -> Result<(Vec<PrecisionRun>, bool), AzumayaError> {
    let mut n = policy.start(place);
    let mut runs = Vec::new();
    while n <= policy.limit(place) {
        let e = PointEnumerator::new(coeffs, place, n)?.with_budget(policy.node_budget);
        let (found, unresolved) = e.first_class()?;
        let decided = found.is_some() || unresolved == 0;
        runs.push(PrecisionRun {
            precision: n,
            classes: u64::from(found.is_some()),
            unresolved,
            no_evaluable_chart: 0,
            attained: if found.is_some() { BTreeSet::from([InvariantValue::ZERO]) } else { BTreeSet::new() },
        });
        if decided {
            return Ok((runs, true));
        }
        n += 2;
    }
    Ok((runs, false))
}

/// Whether `X(k_v) ≠ ∅`.
pub fn local_solvability(coeffs: &SurfaceCoefficients, place: &Place, policy: &PrecisionPolicy) -> Result<bool, AzumayaError> {
    if !bad_places(coeffs, None)?.contains(place) {
        return Ok(true);
    }
    let (runs, decided) = solvability_runs(coeffs, place, policy)?;
    if !decided {
        return Err(AzumayaError::NoStabilization { place: place.label() });
    }
    Ok(runs.iter().any(|r| r.classes > 0))
}

/// Attained invariants of `class` on `X(k_v)`, checked stable under +2 precision.
pub fn place_report(
    coeffs: &SurfaceCoefficients,
    class: &AzumayaClass,
    place: &Place,
    policy: &PrecisionPolicy,
) -> Result<PlaceReport, AzumayaError> {
    if !bad_places(coeffs, Some(class))?.contains(place) {
        let run = PrecisionRun {
            precision: 0,
            classes: 1,
            unresolved: 0,
            no_evaluable_chart: 0,
            attained: BTreeSet::from([InvariantValue::ZERO]),
        };
        return Ok(report_from(place, PlaceMethod::GoodReduction, vec![run], true));
    }
    if theta_is_local_cube(&class.theta, place)? {
        let (runs, decided) = solvability_runs(coeffs, place, policy)?;
        return Ok(report_from(place, PlaceMethod::SplitExtension, runs, decided));
    }
    let evaluator = ChartEvaluator::new(class, place)?;
    let mut n = policy.start(place);
    let mut runs = vec![run_once(coeffs, &evaluator, place, n, policy)?];
    loop {
        let prev = runs.last().expect("nonempty").clone();
        if prev.classes == 0 && prev.unresolved == 0 {
            // no node survives: X(k_v) is empty
            return Ok(report_from(place, PlaceMethod::Enumeration, runs, true));
        }
        if n + 2 > policy.limit(place) {
            return Ok(report_from(place, PlaceMethod::Enumeration, runs, false));
        }
        n += 2;
        let next = run_once(coeffs, &evaluator, place, n, policy)?;
        let stable = prev.complete() && next.complete() && prev.attained == next.attained;
        runs.push(next);
        if stable {
            return Ok(report_from(place, PlaceMethod::Enumeration, runs, true));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HasseViolation,
    NoObstructionFromClass,
    WeakApproxObstructionOnly,
    NotLocallySolvable,
    H1Trivial,
    /// Some place did not stabilize within the precision budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub name: String,
    pub places: Vec<PlaceReport>,
    pub sumset: BTreeSet<InvariantValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub coefficients: SurfaceCoefficients,
    pub h1: String,
    /// `None` where the search did not stabilize.
    pub solvability: Vec<(String, Option<bool>)>,
    pub classes: Vec<ClassReport>,
    pub verdict: Verdict,
}

/// `{a + b : a ∈ A, b ∈ B}` in `(1/3)ℤ/ℤ`.
pub fn sumset(sets: &[&BTreeSet<InvariantValue>]) -> BTreeSet<InvariantValue> {
    sets.iter()
        .fold(BTreeSet::from([InvariantValue::ZERO]), |acc, s| acc.iter().flat_map(|a| s.iter().map(move |b| *a + *b)).collect())
}

/// Local solvability at every bad place, then the Brauer–Manin verdict for each class.
pub fn obstruction_verdict(
    coeffs: &SurfaceCoefficients,
    classes: &[AzumayaClass],
    policy: &PrecisionPolicy,
) -> Result<ObstructionReport, AzumayaError> {
    let h1 = h1_picard(coeffs)?.result.structure;
    let mut places: Vec<Place> = bad_places(coeffs, None)?;
    for c in classes {
        for p in bad_places(coeffs, Some(c))? {
            if !places.contains(&p) {
                places.push(p);
            }
        }
    }
    places.sort_by_key(|p| (p.p, p.uniformizer));
    let mut solvability = Vec::new();
    for p in &places {
        let (runs, decided) = solvability_runs(coeffs, p, policy)?;
        solvability.push((p.label(), decided.then(|| runs.iter().any(|r| r.classes > 0))));
    }
    let mut report = ObstructionReport {
        coefficients: *coeffs,
        h1: h1.to_string(),
        solvability,
        classes: vec![],
        verdict: Verdict::Inconclusive,
    };
    if report.solvability.iter().any(|(_, s)| *s == Some(false)) {
        report.verdict = Verdict::NotLocallySolvable;
        return Ok(report);
    }
    if report.solvability.iter().any(|(_, s)| s.is_none()) {
        return Ok(report);
    }
    if h1.is_trivial() {
        report.verdict = Verdict::H1Trivial;
        return Ok(report);
    }
    if classes.is_empty() {
        return Err(AzumayaError::MissingCharts { h1: h1.to_string() });
    }
    let mut inconclusive = false;
    for class in classes {
        let mut reports = Vec::new();
        for p in bad_places(coeffs, Some(class))? {
            let r = place_report(coeffs, class, &p, policy)?;
            inconclusive |= r.is_inconclusive();
            reports.push(r);
        }
        let sets: Vec<&BTreeSet<InvariantValue>> = reports.iter().map(|r| &r.attained).collect();
        let s = sumset(&sets);
        report.classes.push(ClassReport { name: class.name.clone(), places: reports, sumset: s });
    }
    report.verdict = if inconclusive {
        Verdict::Inconclusive
    } else if report.classes.iter().any(|c| !c.sumset.contains(&InvariantValue::ZERO)) {
        Verdict::HasseViolation
    } else if report.classes.iter().any(|c| c.sumset.len() > 1) {
        Verdict::WeakApproxObstructionOnly
    } else {
        Verdict::NoObstructionFromClass
    };
    Ok(report)
}

/// Residues of `f(x)/√−3 mod 9` over liftable classes at the place over 3 on the chart `x = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResidueCensus {
    pub precision: u32,
    pub residues: BTreeMap<(i64, i64), u64>,
    /// Classes where `v(f) ≠ 1` or `x` is not a unit.
    pub skipped: u64,
}

pub fn six_residue_census(
    coeffs: &SurfaceCoefficients,
    numerator: &super::chart::CubicForm,
    precision: u32,
    jobs: usize,
) -> Result<ResidueCensus, AzumayaError> {
    let place = crate::eisenstein::place_over_three();
    let e = PointEnumerator::new(coeffs, &place, precision)?;
    let ring = e.ring().clone();
    let parts = e.scan(
        jobs,
        || (BTreeMap::<(i64, i64), u64>::new(), 0u64),
        |(m, skipped), pt| {
            let r = (pt.chart == 0)
                .then(|| residue_over_sqrt_minus_three(&ring, numerator.evaluate_local(&ring, &pt.coordinates)))
                .flatten();
            match r {
                Some(key) => *m.entry(key).or_default() += 1,
                None => *skipped += 1,
            }
            Ok(())
        },
    )?;
    let mut out = ResidueCensus { precision, ..Default::default() };
    for p in parts {
        for (k, v) in p.acc.0 {
            *out.residues.entry(k).or_default() += v;
        }
        out.skipped += p.acc.1;
    }
    Ok(out)
}

/// The residues `{ζ, 4ζ, 7ζ, 3+ζ, 3+4ζ, 3+7ζ}` as pairs mod 9.
pub fn printed_six_residues() -> BTreeSet<(i64, i64)> {
    BTreeSet::from([(0, 1), (0, 4), (0, 7), (3, 1), (3, 4), (3, 7)])
}

/// `ζ · {1, 4, 7, 3+ζ, 3+4ζ, 3+7ζ}` as pairs mod 9.
pub fn zeta_scaled_six_residues() -> BTreeSet<(i64, i64)> {
    // ζ(a + bζ) = −b + (a − b)ζ
    [(1, 0), (4, 0), (7, 0), (3, 1), (3, 4), (3, 7)]
        .iter()
        .map(|&(a, b): &(i64, i64)| ((-b).rem_euclid(9), (a - b).rem_euclid(9)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azumaya::cassels_guy_class;

    #[test]
    fn bad_places_of_examples() {
        let primes = |c: [i64; 4]| -> Vec<u64> {
            let s = SurfaceCoefficients::new(c[0], c[1], c[2], c[3]).unwrap();
            let mut v: Vec<u64> = bad_places(&s, None).unwrap().iter().map(|p| p.p).collect();
            v.dedup();
            v
        };
        assert_eq!(primes([5, 9, 10, 12]), vec![2, 3, 5]);
        assert_eq!(primes([1, 1, 1, 1]), vec![3]);
        assert_eq!(primes([1, 1, 1, 2]), vec![2, 3]);
        let s = SurfaceCoefficients::new(5, 9, 10, 12).unwrap();
        let with: Vec<u64> = bad_places(&s, Some(&cassels_guy_class())).unwrap().iter().map(|p| p.p).collect();
        assert_eq!(with, vec![2, 3, 5]);
    }

    #[test]
    fn sumsets() {
        let a = BTreeSet::from([InvariantValue::ZERO]);
        let b = BTreeSet::from([InvariantValue::TWO_THIRDS]);
        assert_eq!(sumset(&[&a, &b]), b);
        let c = BTreeSet::from([InvariantValue::ONE_THIRD, InvariantValue::TWO_THIRDS]);
        assert_eq!(sumset(&[&b, &c]), BTreeSet::from([InvariantValue::ZERO, InvariantValue::ONE_THIRD]));
    }

    #[test]
    fn scaled_residues() {
        let s = zeta_scaled_six_residues();
        assert_eq!(s, BTreeSet::from([(0, 1), (0, 4), (0, 7), (8, 2), (5, 8), (2, 5)]));
    }
}
