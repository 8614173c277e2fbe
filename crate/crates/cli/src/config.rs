//! Run configuration: an optional TOML file, overridden by command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use ffzeta::algebra::{Field, Model};
use ffzeta::geometry::Caps;
use ffzeta::padic::Base;
use ffzeta::zeta::Convention;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::Opts;

/// Problems with the configuration itself; reported with exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub k_max: Option<usize>,
    pub d_max: Option<usize>,
    pub n: Option<usize>,
    pub convention: Option<Convention>,
    pub divisor: Option<String>,
    pub series: Option<Vec<SeriesEntry>>,
    pub base: Option<Base>,
    pub tolerance: Option<String>,
    pub from_d: Option<usize>,
    pub ambient: Option<AmbientConfig>,
    pub variety: Option<VarietyConfig>,
    pub twist: Option<TwistConfig>,
    pub caps: Option<Caps>,
    pub output: Option<OutputConfig>,
}

/// Series coefficients may be written as integers or as decimal strings.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeriesEntry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientConfig {
    pub model: Model,
    pub p: u32,
    #[serde(default = "one")]
    pub r: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyConfig {
    pub source: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistConfig {
    pub rows: Vec<Vec<String>>,
    pub sigma: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
    /// CSV cells hold exact rationals instead of 6-digit decimals.
    pub exact: Option<bool>,
}

pub fn load(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// Everything a command needs, after merging file and flags.
#[derive(Debug)]
pub struct Settings {
    pub model: Model,
    pub field: Field,
    pub variety: Option<String>,
    pub twist_rows: Option<Vec<Vec<String>>>,
    pub sigma: Option<Vec<usize>>,
    pub k_max: usize,
    pub d_max: Option<usize>,
    pub n: usize,
    pub convention: Convention,
    pub divisor: Option<String>,
    pub series: Option<Vec<BigInt>>,
    pub base: Base,
    pub tolerance: Option<BigRational>,
    pub from_d: usize,
    pub caps: Caps,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub exact: bool,
}

/// `"1/100"`, `"0.01"` or `"2"`.
pub fn parse_rational(text: &str) -> Result<BigRational, ConfigError> {
    let text = text.trim();
    let err = || bad(format!("not a rational number: `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.contains(['-', '+']) {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(&digits).map_err(|_| err())?;
    Ok(BigRational::new(num, BigInt::from(10).pow(frac.len() as u32)))
}

fn parse_twist(text: &str) -> Vec<Vec<String>> {
    text.split(';')
        .map(|row| row.split(',').map(|e| e.trim().to_string()).collect())
        .collect()
}

fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>, ConfigError> {
    text.split(',')
        .map(|e| e.trim().parse().map_err(|_| bad(format!("bad {what} entry `{}`", e.trim()))))
        .collect()
}

fn field_from(q: Option<u32>, p: Option<u32>, r: Option<u32>) -> Result<Field, ConfigError> {
    let field = match (q, p) {
        (Some(q), None) => Field::with_order(q),
        (None, Some(p)) => Field::new(p, r.unwrap_or(1)),
        (Some(q), Some(p)) => {
            let f = Field::new(p, r.unwrap_or(1)).map_err(|e| bad(e.to_string()))?;
            if f.q() != q {
                return Err(bad(format!("q = {q} disagrees with p = {p}, r = {}", f.r())));
            }
            Ok(f)
        }
        (None, None) => Field::new(2, 1),
    };
    field.map_err(|e| bad(e.to_string()))
}

pub fn resolve(opts: &Opts) -> Result<Settings, ConfigError> {
    let file = match &opts.config {
        Some(path) => load(path)?,
        None => FileConfig::default(),
    };
    let model = opts
        .ambient
        .map(|a| a.model())
        .or(file.ambient.as_ref().map(|a| a.model))
        .unwrap_or(Model::ProjLine);
    let (fp, fr) = match (&file.ambient, opts.q.or(opts.p)) {
        (Some(a), None) => (Some(a.p), Some(a.r)),
        _ => (opts.p, opts.r),
    };
    let field = field_from(opts.q, fp, fr)?;
    let caps = {
        let mut c = file.caps.unwrap_or_default();
        if let Some(m) = opts.max_divisors {
            c.max_divisors = m;
        }
        if let Some(m) = opts.max_tuples {
            c.max_tuples = m;
        }
        if c.max_divisors == 0 || c.max_tuples == 0 {
            return Err(bad("caps must be positive"));
        }
        c
    };
    let series = match (&opts.series, file.series) {
        (Some(s), _) => Some(parse_list::<BigInt>(s, "series")?),
        (None, Some(entries)) => Some(
            entries
                .into_iter()
                .map(|e| match e {
                    SeriesEntry::Int(i) => Ok(BigInt::from(i)),
                    SeriesEntry::Text(t) => BigInt::from_str(t.trim()).map_err(|_| bad(format!("bad series entry `{t}`"))),
                })
                .collect::<Result<_, _>>()?,
        ),
        (None, None) => None,
    };
    let tolerance = match opts.tolerance.as_deref().or(file.tolerance.as_deref()) {
        Some(t) => {
            let t = parse_rational(t)?;
            if t.is_negative() {
                return Err(bad("tolerance must be non-negative"));
            }
            Some(t)
        }
        None => None,
    };
    let (twist_rows, sigma) = match (&opts.twist, file.twist) {
        (Some(t), _) => (Some(parse_twist(t)), None),
        (None, Some(t)) => (Some(t.rows), t.sigma),
        (None, None) => (None, None),
    };
    let sigma = match &opts.sigma {
        Some(s) => Some(parse_list::<usize>(s, "sigma")?),
        None => sigma,
    };
    let out = file.output.unwrap_or_default();
    Ok(Settings {
        model,
        field,
        variety: opts.variety.clone().or(file.variety.map(|v| v.source)),
        twist_rows,
        sigma,
        k_max: opts.kmax.or(file.k_max).unwrap_or(4),
        d_max: opts.dmax.or(file.d_max),
        n: opts.n.or(file.n).unwrap_or(1),
        convention: opts.convention.or(file.convention).unwrap_or_default(),
        divisor: opts.divisor.clone().or(file.divisor),
        series,
        base: opts.base.or(file.base).unwrap_or_default(),
        tolerance,
        from_d: opts.from_d.or(file.from_d).unwrap_or(3),
        caps,
        format: opts.format.or(out.format).unwrap_or_default(),
        output: opts.output.clone().or(out.path),
        exact: out.exact.unwrap_or(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/100").unwrap(), parse_rational("0.01").unwrap());
        assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn file_schema_rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("k_max = 2\nfoo = 1\n").is_err());
        let c: FileConfig = toml::from_str(
            "k_max = 2\nseries = [2, \"12\"]\n[ambient]\nmodel = \"p2\"\np = 2\n[caps]\nmax_tuples = 5\n",
        )
        .unwrap();
        assert_eq!(c.ambient.unwrap().model, Model::ProjPlane);
        assert_eq!(c.caps.unwrap().max_divisors, Caps::default().max_divisors);
    }
}
