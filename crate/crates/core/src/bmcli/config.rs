use super::args::{CommonArgs, Format, LocalArgs, ScanArgs, SurfaceArgs};
use super::CliError;
use crate::azumaya::{bad_places, cassels_guy, cassels_guy_class, load_chart_file, AzumayaClass, PrecisionPolicy};
use crate::eisenstein::{factor_rational_prime, is_prime, Place};
use crate::lines27::SurfaceCoefficients;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Starting precision: one value for every place, refined per prime.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrecisionOverrides {
    pub all: Option<u32>,
    pub per_prime: BTreeMap<u64, u32>,
}

impl PrecisionOverrides {
    /// Parses items `N` or `P=N`.
    pub fn parse(items: &[String]) -> Result<Self, CliError> {
        let mut out = PrecisionOverrides::default();
        for item in items {
            let bad = || CliError::Invalid(format!("bad precision `{item}`: expected N or P=N with N >= 1"));
            let (p, n) = match item.split_once('=') {
                Some((p, n)) => (Some(p.trim().parse::<u64>().map_err(|_| bad())?), n),
                None => (None, item.as_str()),
            };
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            match p {
                Some(p) => {
                    out.per_prime.insert(p, n);
                }
                None => out.all = Some(n),
            }
        }
        Ok(out)
    }

    fn for_prime(&self, p: u64) -> Option<u32> {
        self.per_prime.get(&p).copied().or(self.all)
    }
}

/// Everything a subcommand needs, validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub coefficients: Option<SurfaceCoefficients>,
    /// Rational primes to restrict to (`local` only).
    pub places: Option<Vec<u64>>,
    pub precision: PrecisionOverrides,
    pub jobs: usize,
    pub charts: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timing: bool,
    pub range: Option<(i64, i64)>,
}

impl RunConfig {
    fn base(common: &CommonArgs) -> Result<Self, CliError> {
        if common.jobs == 0 {
            return Err(CliError::Invalid("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            coefficients: None,
            places: None,
            precision: PrecisionOverrides::default(),
            jobs: common.jobs,
            charts: None,
            out: common.out.clone(),
            format: common.format,
            timing: common.timing,
            range: None,
        })
    }

    pub fn from_common(common: &CommonArgs) -> Result<Self, CliError> {
        Self::base(common)
    }

    pub fn from_surface(args: &SurfaceArgs) -> Result<Self, CliError> {
        Ok(RunConfig { coefficients: Some(parse_coefficients(&args.coefficients)?), ..Self::base(&args.common)? })
    }

    pub fn from_scan(args: &ScanArgs) -> Result<Self, CliError> {
        Ok(RunConfig { range: Some(parse_range(&args.range)?), ..Self::base(&args.common)? })
    }

    pub fn from_local(args: &LocalArgs) -> Result<Self, CliError> {
        for &p in &args.place {
            if !is_prime(p) {
                return Err(CliError::Invalid(format!("--place {p} is not prime")));
            }
        }
        Ok(RunConfig {
            coefficients: Some(parse_coefficients(&args.coefficients)?),
            places: (!args.place.is_empty()).then(|| args.place.clone()),
            precision: PrecisionOverrides::parse(&args.precision)?,
            charts: args.charts.clone(),
            ..Self::base(&args.common)?
        })
    }

    pub fn surface(&self) -> Result<SurfaceCoefficients, CliError> {
        self.coefficients.ok_or_else(|| CliError::Invalid("coefficients are required".into()))
    }

    /// The chart file if given, the built-in class for `5,9,10,12`, else none.
    pub fn brauer_class(&self) -> Result<Option<AzumayaClass>, CliError> {
        if let Some(path) = &self.charts {
            return Ok(Some(load_chart_file(path)?));
        }
        let (a, b, c, d) = cassels_guy::COEFFICIENTS;
        let builtin = SurfaceCoefficients::new(a, b, c, d)?;
        Ok((self.coefficients == Some(builtin)).then(cassels_guy_class))
    }

    /// Places of the requested primes, or every place needing analysis.
    pub fn target_places(&self, class: Option<&AzumayaClass>) -> Result<Vec<Place>, CliError> {
        let coeffs = self.surface()?;
        let mut places = match &self.places {
            Some(primes) => {
                let mut v = Vec::new();
                for &p in primes {
                    v.extend(factor_rational_prime(p).map_err(crate::azumaya::AzumayaError::from)?);
                }
                v
            }
            None => bad_places(&coeffs, class)?,
        };
        places.sort_by_key(|p| (p.p, p.uniformizer));
        places.dedup();
        Ok(places)
    }

    /// Escalation policy: environment cap, precision overrides and job count.
    pub fn policy(&self, places: &[Place]) -> Result<PrecisionPolicy, CliError> {
        let mut policy = PrecisionPolicy::from_env()?;
        policy.jobs = self.jobs;
        for place in places {
            if let Some(n) = self.precision.for_prime(place.p) {
                if policy.cap.is_some_and(|c| n > c) {
                    return Err(CliError::Invalid(format!("precision {n} at {} exceeds the precision cap", place.label())));
                }
                policy.overrides.insert(place.p, n);
            }
        }
        Ok(policy)
    }
}

pub fn parse_coefficients(s: &str) -> Result<SurfaceCoefficients, CliError> {
    Ok(s.parse::<SurfaceCoefficients>()?)
}

/// `lo..hi`, inclusive, nonzero bounds.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Invalid(format!("bad range `{s}`: expected LO..HI with 1 <= LO <= HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo < 1 || hi < lo || hi > 1000 {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_items() {
        let p = PrecisionOverrides::parse(&["4".into(), "3=7".into()]).unwrap();
        assert_eq!(p.for_prime(3), Some(7));
        assert_eq!(p.for_prime(2), Some(4));
        assert!(PrecisionOverrides::parse(&["0".into()]).is_err());
        assert!(PrecisionOverrides::parse(&["x=3".into()]).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..6").unwrap(), (1, 6));
        assert_eq!(parse_range("2..=3").unwrap(), (2, 3));
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("5..3").is_err());
    }
}
