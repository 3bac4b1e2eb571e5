use super::config::RunConfig;
use super::document::{
    Agreement, ClassSummary, CocycleValue, CommandResult, H1Report, LineEntry, LinesReport, LocalReport, ObstructReport,
    ScanMismatch, ScanReport, SolvabilityEntry, Status,
};
use super::CliError;
use crate::azumaya::{bad_places, local_solvability, obstruction_verdict, place_report, AzumayaError, Verdict};
use crate::lines27::{galois_data, gram_rank, h1_picard, line_configuration, table_classification, Pairing, SurfaceCoefficients};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

pub fn cmd_h1(cfg: &RunConfig) -> Result<(CommandResult, Status), CliError> {
    let coeffs = cfg.surface()?;
    let h1 = h1_picard(&coeffs)?;
    let table = table_classification(&coeffs);
    let structure = &h1.result.structure;
    let agreement = if *structure == table { Agreement::Agree } else { Agreement::Disagree };
    let mut cocycles = Vec::new();
    for c in &h1.line_cocycles {
        let mut values = Vec::new();
        for (g, elt) in h1.galois.elements.iter().enumerate() {
            let lines = c
                .value(&[g])
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| CliError::Internal("cocycle entry overflows i64".into())))
                .collect::<Result<_, _>>()?;
            values.push(CocycleValue { g: *elt, lines });
        }
        cocycles.push(values);
    }
    let report = H1Report {
        structure: structure.to_string(),
        table: table.to_string(),
        agreement,
        galois_group_order: h1.galois.group.order(),
        cube_relations: h1.galois.relations.clone(),
        cocycles,
    };
    let status = if agreement == Agreement::Agree { Status::Ok } else { Status::Failed };
    Ok((CommandResult::H1(report), status))
}

fn ratio(num: i64, den: i64) -> String {
    let r = Ratio::new(num, den);
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Defining planes of a line: `u + ζ^r ∛(m) v = 0`.
fn planes(coeffs: &SurfaceCoefficients, pairing: Pairing, r: u8, s: u8) -> [String; 2] {
    let SurfaceCoefficients { a, b, c, d } = *coeffs;
    let plane = |u: &str, e: u8, num: i64, den: i64, v: &str| format!("{u} + zeta^{e}*cbrt({})*{v} = 0", ratio(num, den));
    match pairing {
        Pairing::P1 => [plane("x", r, b, a, "y"), plane("z", s, d, c, "t")],
        Pairing::P2 => [plane("x", r, c, a, "z"), plane("y", s, d, b, "t")],
        Pairing::P3 => [plane("x", r, d, a, "t"), plane("y", s, c, b, "z")],
    }
}

pub fn cmd_lines(cfg: &RunConfig) -> Result<(CommandResult, Status), CliError> {
    let coeffs = cfg.surface()?;
    let config = line_configuration();
    let galois = galois_data(&coeffs)?;
    let lines = config
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| LineEntry {
            index: i,
            label: l.to_string(),
            planes: planes(&coeffs, l.pairing, l.r, l.s),
            meets: config.neighbours(i),
        })
        .collect();
    let mut seen = [false; 27];
    let mut orbits = Vec::new();
    for i in 0..27 {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<usize> = galois.line_perms.iter().map(|p| p[i]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            seen[j] = true;
        }
        orbits.push(orbit.into_iter().map(|j| config.labels[j].to_string()).collect());
    }
    let report = LinesReport { lines, gram_rank: gram_rank(&config), galois_group_order: galois.group.order(), orbits };
    Ok((CommandResult::Lines(report), Status::Ok))
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<(CommandResult, Status), CliError> {
    let (lo, hi) = cfg.range.ok_or_else(|| CliError::Invalid("--range is required".into()))?;
    let width = (hi - lo + 1) as usize;
    let tuples: Vec<[i64; 4]> = (0..width.pow(4))
        .map(|n| [n / width.pow(3), n / width.pow(2) % width, n / width % width, n % width].map(|k| lo + k as i64))
        .collect();
    let total = tuples.len() as u64;
    let done = AtomicU64::new(0);
    let step = (total / 10).max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| CliError::Internal(e.to_string()))?;
    let results: Vec<Result<(String, String), CliError>> = pool.install(|| {
        tuples
            .par_iter()
            .map(|t| {
                let coeffs = SurfaceCoefficients::new(t[0], t[1], t[2], t[3])?;
                let h1 = h1_picard(&coeffs)?.result.structure.to_string();
                let table = table_classification(&coeffs).to_string();
                let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                if n.is_multiple_of(step) || n == total {
                    eprintln!("scan: {n}/{total}");
                }
                Ok((h1, table))
            })
            .collect()
    });
    let mut report = ScanReport { tuples: total, agree: 0, disagreements: Vec::new(), distribution: BTreeMap::new() };
    for (t, r) in tuples.iter().zip(results) {
        let (h1, table) = r?;
        if h1 == table {
            report.agree += 1;
        } else {
            report.disagreements.push(ScanMismatch { coefficients: *t, h1: h1.clone(), table });
        }
        *report.distribution.entry(h1).or_default() += 1;
    }
    let status = if report.disagreements.is_empty() { Status::Ok } else { Status::Failed };
    Ok((CommandResult::Scan(report), status))
}

pub fn cmd_local(cfg: &RunConfig) -> Result<(CommandResult, Status), CliError> {
    let coeffs = cfg.surface()?;
    let class = cfg.brauer_class()?;
    let h1 = h1_picard(&coeffs)?.result.structure;
    let places = cfg.target_places(class.as_ref())?;
    let policy = cfg.policy(&places)?;
    let mut report =
        LocalReport { h1: h1.to_string(), class: class.as_ref().map(ClassSummary::of), solvability: vec![], invariants: vec![] };
    let mut status = Status::Ok;
    match &class {
        Some(class) => {
            for place in &places {
                let r = place_report(&coeffs, class, place, &policy)?;
                if r.is_inconclusive() {
                    status = Status::Inconclusive;
                }
                report.invariants.push(r);
            }
        }
        None => {
            for place in &places {
                let solvable = match local_solvability(&coeffs, place, &policy) {
                    Ok(s) => Some(s),
                    Err(AzumayaError::NoStabilization { .. }) => {
                        status = Status::Inconclusive;
                        None
                    }
                    Err(e) => return Err(e.into()),
                };
                report.solvability.push(SolvabilityEntry { place: place.label(), solvable });
            }
            if !h1.is_trivial() {
                status = Status::MissingCharts;
            }
        }
    }
    Ok((CommandResult::Local(report), status))
}

pub fn cmd_obstruct(cfg: &RunConfig) -> Result<(CommandResult, Status), CliError> {
    if cfg.places.is_some() {
        return Err(CliError::Invalid("--place applies to `local`; `obstruct` examines every place that matters".into()));
    }
    let coeffs = cfg.surface()?;
    let class = cfg.brauer_class()?;
    let h1 = h1_picard(&coeffs)?.result.structure;
    let mut report = ObstructReport {
        h1: h1.to_string(),
        class: class.as_ref().map(ClassSummary::of),
        solvability: vec![],
        classes: vec![],
        verdict: None,
    };
    if !h1.is_trivial() && class.is_none() {
        return Ok((CommandResult::Obstruct(report), Status::MissingCharts));
    }
    let places = bad_places(&coeffs, class.as_ref())?;
    let policy = cfg.policy(&places)?;
    let classes: Vec<_> = class.into_iter().collect();
    let full = obstruction_verdict(&coeffs, &classes, &policy)?;
    report.solvability = full.solvability.into_iter().map(|(place, solvable)| SolvabilityEntry { place, solvable }).collect();
    report.classes = full.classes;
    report.verdict = Some(full.verdict);
    let status = if full.verdict == Verdict::Inconclusive { Status::Inconclusive } else { Status::Ok };
    Ok((CommandResult::Obstruct(report), status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_strings() {
        let c = SurfaceCoefficients::new(5, 9, 10, 12).unwrap();
        assert_eq!(
            planes(&c, Pairing::P1, 0, 2),
            ["x + zeta^0*cbrt(9/5)*y = 0".to_string(), "z + zeta^2*cbrt(6/5)*t = 0".to_string()]
        );
        assert_eq!(planes(&c, Pairing::P3, 1, 0)[1], "y + zeta^0*cbrt(10/9)*z = 0");
    }
}
