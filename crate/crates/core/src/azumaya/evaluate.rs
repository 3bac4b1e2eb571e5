use super::chart::AzumayaClass;
use super::enumerate::LocalPointClass;
use super::AzumayaError;
use crate::eisenstein::{localize, CyclicSymbol, InvariantValue, LocalElement, LocalRing, Place, Res};

/// Unit precision the local symbol needs: 4 over 3 (`U₁/U₄`), 1 at tame places.
pub fn unit_resolution(place: &Place) -> u32 {
    if place.is_wild() {
        4
    } else {
        1
    }
}

/// One chart's reading at a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartReading {
    /// Numerator or denominator valuation too large for the class precision.
    NotEvaluable,
    Value(InvariantValue),
}

/// Evaluates every chart of a class at residue classes of one place.
#[derive(Clone, Debug)]
pub struct ChartEvaluator {
    class: AzumayaClass,
    place: Place,
    symbol: CyclicSymbol,
    /// Ring in which unit parts are read (precision `m_v`).
    unit_ring: LocalRing,
    constants: Vec<LocalElement>,
    m: u32,
}

impl ChartEvaluator {
    pub fn new(class: &AzumayaClass, place: &Place) -> Result<Self, AzumayaError> {
        let m = unit_resolution(place);
        let symbol = CyclicSymbol::new(&class.theta, place)?;
        let unit_ring = LocalRing::new(place, m)?;
        let constants = class.charts.iter().map(|c| localize(&c.constant, place, m)).collect::<Result<_, _>>()?;
        Ok(ChartEvaluator { class: class.clone(), place: place.clone(), symbol, unit_ring, constants, m })
    }

    pub fn class(&self) -> &AzumayaClass {
        &self.class
    }

    pub fn symbol(&self) -> &CyclicSymbol {
        &self.symbol
    }

    /// Reads every chart at `pt`, whose coordinates live in `ring`.
    pub fn readings(&self, ring: &LocalRing, pt: &LocalPointClass) -> Result<Vec<ChartReading>, AzumayaError> {
        if pt.place != self.place {
            return Err(AzumayaError::WrongPlace);
        }
        let limit = pt.precision.saturating_sub(self.m);
        let mut out = Vec::with_capacity(self.class.charts.len());
        for (chart, constant) in self.class.charts.iter().zip(&self.constants) {
            let num = chart.numerator.evaluate_local(ring, &pt.coordinates);
            let vn = ring.valuation(num);
            let xd = pt.coordinates[chart.denominator];
            let vx = ring.valuation(xd);
            if vn > limit || 3 * vx > limit {
                out.push(ChartReading::NotEvaluable);
                continue;
            }
            let r = &self.unit_ring;
            let un = ring.unit_part(num, vn);
            let ux = ring.unit_part(xd, vx);
            let un = r.from_pair(un.a, un.b);
            let ux = r.from_pair(ux.a, ux.b);
            let den = r.mul(ux, r.mul(ux, ux));
            let unit = r.mul(r.mul(constant.unit, un), r.inverse(den).ok_or(AzumayaError::WrongPlace)?);
            let value = LocalElement::new(r, constant.valuation + vn as i64 - 3 * vx as i64, unit, self.m);
            out.push(ChartReading::Value(self.symbol.invariant(&value)?));
        }
        Ok(out)
    }

    /// The invariant at `pt`: all evaluable charts must agree.
    pub fn invariant(&self, ring: &LocalRing, pt: &LocalPointClass) -> Result<InvariantValue, AzumayaError> {
        let readings = self.readings(ring, pt)?;
        let mut value = None;
        for (i, r) in readings.iter().enumerate() {
            if let ChartReading::Value(v) = r {
                match value {
                    None => value = Some((i, *v)),
                    Some((j, w)) if w != *v => {
                        return Err(AzumayaError::ChartDisagreement {
                            place: self.place.label(),
                            first: self.class.charts[j].name.clone(),
                            second: self.class.charts[i].name.clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
        value.map(|(_, v)| v).ok_or(AzumayaError::NoEvaluableChart { place: self.place.label(), precision: pt.precision })
    }
}

/// `inv_v A(x)` for a single class (builds the evaluator; use [`ChartEvaluator`] in loops).
pub fn invariant_at_point(class: &AzumayaClass, ring: &LocalRing, pt: &LocalPointClass) -> Result<InvariantValue, AzumayaError> {
    ChartEvaluator::new(class, &pt.place)?.invariant(ring, pt)
}

/// `g / √−3 mod 9` as a pair `(a, b)` with `0 ≤ a, b < 9`, when `v(g) = 1`.
pub fn residue_over_sqrt_minus_three(ring: &LocalRing, g: Res) -> Option<(i64, i64)> {
    if ring.valuation(g) != 1 {
        return None;
    }
    let u = ring.unit_part(g, 1);
    Some((u.a.rem_euclid(9), u.b.rem_euclid(9)))
}
