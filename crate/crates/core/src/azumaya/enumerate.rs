//! Residue classes of local points on `a x³ + b y³ + c z³ + d t³ = 0`.
//!
//! Classes are explored as a tree: a node at level k is a class modulo `ϖ^k`
//! in one of four affine charts (first unit coordinate equal to 1, earlier
//! coordinates divisible by ϖ). With `w` the smallest valuation of a partial
//! derivative in the free coordinates, F is constant modulo `ϖ^{k+w}` on the
//! class whenever `w < k`, so the class contains a point of `X(k_v)` exactly
//! when `F ≡ 0 (mod ϖ^{k+w})` (Newton's method then converges inside it).
//! Nodes with `w ≥ k` are kept while `F ≡ 0 (mod ϖ^k)` and decided deeper.

use super::AzumayaError;
use crate::eisenstein::{LocalRing, Place, PlaceKind, Res};
use crate::lines27::SurfaceCoefficients;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on the number of tree nodes examined in one enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

/// `v(∂ᵢF) = w` for the free coordinate `i`; the class lifts by Newton's method in `xᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HenselCertificate {
    pub index: usize,
    pub valuation: u32,
}

/// A residue class modulo `ϖ^precision` containing points of `X(k_v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPointClass {
    pub place: Place,
    pub precision: u32,
    /// Representatives in the enumeration ring; `coordinates[chart] = 1`.
    pub coordinates: [Res; 4],
    /// Index of the coordinate normalized to 1.
    pub chart: usize,
    pub certificate: HenselCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Prune,
    Undetermined,
    Liftable(HenselCertificate),
}

/// Precomputed data for enumerating classes modulo `ϖ^N` at one place.
#[derive(Clone, Debug)]
pub struct PointEnumerator {
    place: Place,
    precision: u32,
    ring: LocalRing,
    coeffs: [Res; 4],
    /// `v(3aᵢ)`
    deriv_val: [u32; 4],
    digits: Vec<Res>,
    /// `ϖ^k` for `k < precision`
    powers: Vec<Res>,
    budget: u64,
}

/// Per-partition totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionTotals<A> {
    pub acc: A,
    /// Liftable classes at the final level.
    pub classes: u64,
    /// Final-level classes whose liftability is undecided at this precision.
    pub unresolved: u64,
}

impl PointEnumerator {
    pub fn new(coeffs: &SurfaceCoefficients, place: &Place, precision: u32) -> Result<Self, AzumayaError> {
        if precision == 0 {
            return Err(AzumayaError::InvalidPrecision(0));
        }
        // 2N + 1 leaves room for v(F) ≥ k + w with w < k ≤ N.
        let ring = LocalRing::new(place, 2 * precision + 1)?;
        let c = coeffs.as_array();
        let res: [Res; 4] = std::array::from_fn(|i| ring.from_pair(c[i], 0));
        let deriv_val = std::array::from_fn(|i| ring.valuation(ring.from_pair(3 * c[i], 0)));
        let digits = match place.kind {
            PlaceKind::Ramified => (0..3).map(|a| Res { a, b: 0 }).collect(),
            _ => ring.residue_field_reps(),
        };
        let powers = (0..precision).map(|k| ring.uniformizer_power(k)).collect();
        Ok(PointEnumerator {
            place: place.clone(),
            precision,
            ring,
            coeffs: res,
            deriv_val,
            digits,
            powers,
            budget: DEFAULT_NODE_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `F` at a representative.
    pub fn surface_value(&self, x: &[Res; 4]) -> Res {
        let r = &self.ring;
        (0..4).fold(Res::ZERO, |acc, i| r.add(acc, r.mul(self.coeffs[i], r.mul(x[i], r.mul(x[i], x[i])))))
    }

    fn status(&self, x: &[Res; 4], chart: usize, k: u32) -> Status {
        let r = &self.ring;
        let vf = r.valuation(self.surface_value(x));
        let mut best = HenselCertificate { index: usize::MAX, valuation: u32::MAX };
        for i in (0..4).filter(|&i| i != chart) {
            let w = self.deriv_val[i] + 2 * r.valuation(x[i]).min(k);
            if w < best.valuation {
                best = HenselCertificate { index: i, valuation: w };
            }
        }
        if best.valuation < k {
            if vf >= k + best.valuation {
                Status::Liftable(best)
            } else {
                Status::Prune
            }
        } else if vf >= k {
            Status::Undetermined
        } else {
            Status::Prune
        }
    }

    /// Level-1 nodes in a fixed order; each roots one partition.
    fn roots(&self) -> Vec<([Res; 4], usize)> {
        let mut out = Vec::new();
        for chart in 0..4 {
            let free: Vec<usize> = (chart + 1..4).collect();
            let n = self.digits.len().pow(free.len() as u32);
            for idx in 0..n {
                let mut x = [Res::ZERO; 4];
                x[chart] = Res::ONE;
                let mut rest = idx;
                for &i in &free {
                    x[i] = self.digits[rest % self.digits.len()];
                    rest /= self.digits.len();
                }
                if self.status(&x, chart, 1) != Status::Prune {
                    out.push((x, chart));
                }
            }
        }
        out
    }

    fn descend<A>(
        &self,
        x: [Res; 4],
        chart: usize,
        k: u32,
        counter: &AtomicU64,
        totals: &mut PartitionTotals<A>,
        visit: &(dyn Fn(&mut A, &LocalPointClass) -> Result<bool, AzumayaError> + Sync),
    ) -> Result<bool, AzumayaError> {
        if k == self.precision {
            match self.status(&x, chart, k) {
                Status::Prune => {}
                Status::Undetermined => totals.unresolved += 1,
                Status::Liftable(certificate) => {
                    totals.classes += 1;
                    let class = LocalPointClass { place: self.place.clone(), precision: k, coordinates: x, chart, certificate };
                    return visit(&mut totals.acc, &class);
                }
            }
            return Ok(false);
        }
        let free: [usize; 3] = match chart {
            0 => [1, 2, 3],
            1 => [0, 2, 3],
            2 => [0, 1, 3],
            _ => [0, 1, 2],
        };
        let nd = self.digits.len();
        let pk = self.powers[k as usize];
        let steps: Vec<Res> = self.digits.iter().map(|d| self.ring.mul(*d, pk)).collect();
        if counter.fetch_add((nd * nd * nd) as u64, Ordering::Relaxed) > self.budget {
            return Err(AzumayaError::EnumerationBudget { place: self.place.label(), precision: self.precision });
        }
        for s0 in &steps {
            for s1 in &steps {
                for s2 in &steps {
                    let mut y = x;
                    y[free[0]] = self.ring.add(y[free[0]], *s0);
                    y[free[1]] = self.ring.add(y[free[1]], *s1);
                    y[free[2]] = self.ring.add(y[free[2]], *s2);
                    if self.status(&y, chart, k + 1) == Status::Prune {
                        continue;
                    }
                    if self.descend(y, chart, k + 1, counter, totals, visit)? {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Visits every liftable class modulo `ϖ^N`, partitioned over `jobs` threads.
    /// Partition results are returned in a fixed order regardless of scheduling.
    pub fn scan<A: Send>(
        &self,
        jobs: usize,
        init: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &LocalPointClass) -> Result<(), AzumayaError> + Sync,
    ) -> Result<Vec<PartitionTotals<A>>, AzumayaError> {
        let roots = self.roots();
        let counter = AtomicU64::new(0);
        let visit = |a: &mut A, c: &LocalPointClass| visit(a, c).map(|_| false);
        let run = |(x, chart): &([Res; 4], usize)| -> Result<PartitionTotals<A>, AzumayaError> {
            let mut totals = PartitionTotals { acc: init(), classes: 0, unresolved: 0 };
            self.descend(*x, *chart, 1, &counter, &mut totals, &visit)?;
            Ok(totals)
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| AzumayaError::ThreadPool(e.to_string()))?;
        pool.install(|| roots.par_iter().map(run).collect())
    }

    /// All liftable classes (for small precisions), in enumeration order.
    pub fn classes(&self) -> Result<(Vec<LocalPointClass>, u64), AzumayaError> {
        let parts = self.scan(1, Vec::new, |v: &mut Vec<LocalPointClass>, c| {
            v.push(c.clone());
            Ok(())
        })?;
        let unresolved = parts.iter().map(|p| p.unresolved).sum();
        Ok((parts.into_iter().flat_map(|p| p.acc).collect(), unresolved))
    }

    /// The first liftable class in enumeration order, with the number of
    /// undecided classes met before it.
    pub fn first_class(&self) -> Result<(Option<LocalPointClass>, u64), AzumayaError> {
        let counter = AtomicU64::new(0);
        let mut unresolved = 0;
        let visit = |a: &mut Option<LocalPointClass>, c: &LocalPointClass| {
            *a = Some(c.clone());
            Ok(true)
        };
        for (x, chart) in self.roots() {
            let mut totals = PartitionTotals { acc: None, classes: 0, unresolved: 0 };
            self.descend(x, chart, 1, &counter, &mut totals, &visit)?;
            unresolved += totals.unresolved;
            if totals.acc.is_some() {
                return Ok((totals.acc, unresolved));
            }
        }
        Ok((None, unresolved))
    }
}

/// All liftable classes modulo `ϖ^N` (see [`PointEnumerator`]).
pub fn enumerate_local_points(
    coeffs: &SurfaceCoefficients,
    place: &Place,
    precision: u32,
) -> Result<Vec<LocalPointClass>, AzumayaError> {
    Ok(PointEnumerator::new(coeffs, place, precision)?.classes()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{factor_rational_prime, place_over_three};

    fn cg() -> SurfaceCoefficients {
        SurfaceCoefficients::new(5, 9, 10, 12).unwrap()
    }

    #[test]
    fn contains_one_one_one_zero_mod_eight() {
        let two = &factor_rational_prime(2).unwrap()[0];
        let e = PointEnumerator::new(&cg(), two, 3).unwrap();
        let (classes, unresolved) = e.classes().unwrap();
        assert_eq!(unresolved, 0);
        let r = e.ring();
        let target = [Res::ONE, Res::ONE, Res::ONE, Res::ZERO];
        let found = classes.iter().find(|c| (0..4).all(|i| r.congruent(c.coordinates[i], target[i], 3))).unwrap();
        assert_eq!(found.chart, 0);
    }

    #[test]
    fn every_class_satisfies_its_certificate() {
        let e = PointEnumerator::new(&cg(), &place_over_three(), 4).unwrap();
        let (classes, _) = e.classes().unwrap();
        assert!(!classes.is_empty());
        for c in classes {
            let w = c.certificate.valuation;
            assert!(w < c.precision);
            assert!(e.ring().valuation(e.surface_value(&c.coordinates)) >= c.precision + w);
        }
    }

    #[test]
    fn fermat_has_its_rational_point_mod_seven() {
        let s = SurfaceCoefficients::new(1, 1, 1, 1).unwrap();
        let seven = &factor_rational_prime(7).unwrap()[0];
        let e = PointEnumerator::new(&s, seven, 1).unwrap();
        let (classes, _) = e.classes().unwrap();
        let r = e.ring();
        let target = [Res::ONE, r.from_pair(-1, 0), Res::ZERO, Res::ZERO];
        assert!(classes.iter().any(|c| (0..4).all(|i| r.congruent(c.coordinates[i], target[i], 1))));
    }

    #[test]
    fn partitions_are_schedule_independent() {
        let two = &factor_rational_prime(2).unwrap()[0];
        let e = PointEnumerator::new(&cg(), two, 3).unwrap();
        let count = |jobs| {
            e.scan(
                jobs,
                || 0u64,
                |a, _| {
                    *a += 1;
                    Ok(())
                },
            )
            .unwrap()
            .iter()
            .map(|p| p.acc)
            .collect::<Vec<_>>()
        };
        assert_eq!(count(1), count(4));
    }
}
