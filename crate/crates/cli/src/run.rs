use ffzeta::algebra::{Form, Model, Poly};
use ffzeta::geometry::{Ambient, AmbientSpace};
use ffzeta::padic::{axkatz_system, axkatz_verify, growth_report, newton_polygon, ord};
use ffzeta::varieties::{decompose, TwistData, VarietyKind, VarietySpec};
use ffzeta::zeta::{
    euler_product_check, interval_identity, verify_reduction, wan_asymptotic, zeta_divisors, zeta_height, zeta_rr,
    Convention, TruncSeries,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Settings;
use crate::{ReportKind, VerifyKind, ZetaKind};

#[derive(Clone, Copy, Debug)]
pub enum Command {
    Zeta(ZetaKind),
    Verify(VerifyKind),
    Report(ReportKind),
}

impl Command {
    fn name(self) -> String {
        match self {
            Command::Zeta(k) => format!("zeta {}", kind_name(&k)),
            Command::Verify(k) => format!("verify {}", kind_name(&k)),
            Command::Report(k) => format!("report {}", kind_name(&k)),
        }
    }
}

fn kind_name<K: clap::ValueEnum>(k: &K) -> String {
    k.to_possible_value().expect("no skipped variants").get_name().to_string()
}

#[derive(Debug)]
pub enum RunError {
    Config(String),
    Lib(ffzeta::Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Lib(ffzeta::Error::CapExceeded { .. }) => 3,
            RunError::Lib(ffzeta::Error::Internal(_)) => 4,
            RunError::Lib(_) => 2,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => f.write_str(m),
            RunError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<ffzeta::Error> for RunError {
    fn from(e: ffzeta::Error) -> Self {
        RunError::Lib(e)
    }
}

type Res<T> = Result<T, RunError>;

fn config_err(msg: impl Into<String>) -> RunError {
    RunError::Config(msg.into())
}

/// A finished report: the JSON body, a CSV table, and the verdict for
/// commands that check something.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub passed: Option<bool>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn execute(cmd: Command, s: &Settings) -> Res<Report> {
    let mut report = match s.model {
        Model::ProjLine => run_in::<Poly>(cmd, s)?,
        Model::ProjPlane => run_in::<Form>(cmd, s)?,
    };
    let field = s.field;
    let body = std::mem::take(&mut report.json);
    let mut envelope = json!({
        "command": cmd.name(),
        "ambient": { "model": s.model.name(), "p": field.p(), "r": field.r(), "q": field.q() },
        "caps": to_value(&s.caps),
    });
    if let (Value::Object(env), Value::Object(b)) = (&mut envelope, body) {
        env.extend(b);
    }
    if let Some(p) = report.passed {
        envelope["passed"] = Value::Bool(p);
    }
    report.json = envelope;
    Ok(report)
}

fn variety<R: Ambient>(s: &Settings) -> Res<VarietySpec<R>> {
    let text = s.variety.as_deref().ok_or_else(|| config_err("this command needs --variety"))?;
    Ok(VarietySpec::parse(text, s.field)?)
}

fn twist<R: Ambient>(s: &Settings, n: usize) -> Res<TwistData<R>> {
    match &s.twist_rows {
        Some(rows) => Ok(TwistData::parse(rows, s.sigma.clone(), s.field)?),
        None => match &s.sigma {
            Some(sigma) => {
                let id = TwistData::<R>::identity(s.field, n);
                Ok(TwistData::new(id.matrix().to_vec(), sigma.clone())?)
            }
            None => Ok(TwistData::identity(s.field, n)),
        },
    }
}

fn projective_dim<R: Ambient>(y: &VarietySpec<R>) -> Res<usize> {
    match y.kind() {
        VarietyKind::Projective(n) => Ok(n),
        VarietyKind::Affine(_) => Err(config_err("this command needs a projective variety")),
    }
}

fn series_rows(series: &TruncSeries) -> Vec<Vec<String>> {
    series
        .decimal_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), c])
        .collect()
}

fn run_in<R: Ambient>(cmd: Command, s: &Settings) -> Res<Report> {
    let space = AmbientSpace::<R>::with_caps(s.field, s.caps);
    match cmd {
        Command::Zeta(ZetaKind::Divisors) => {
            let z = zeta_divisors(&space, s.k_max)?;
            let primes: Vec<usize> = (1..=s.k_max)
                .map(|k| space.prime_divisors(k as u32).map(|v| v.len()))
                .collect::<ffzeta::Result<_>>()?;
            Ok(Report {
                json: json!({
                    "kind": "divisors",
                    "convention": Value::Null,
                    "k_max": s.k_max,
                    "coeffs": to_value(&z),
                    "counts": { "effective_divisors": to_value(&z), "prime_divisors": primes },
                }),
                header: vec!["k", "coeff"],
                rows: series_rows(&z),
                passed: None,
            })
        }
        Command::Zeta(ZetaKind::Rr) => {
            let w = variety::<R>(s)?;
            let (z, counts) = zeta_rr(&w, &space, s.k_max)?;
            Ok(Report {
                json: json!({
                    "kind": "rr",
                    "convention": Value::Null,
                    "k_max": s.k_max,
                    "variety": w.to_string(),
                    "coeffs": to_value(&z),
                    "counts": { "per_degree": to_value(&counts.per_degree) },
                }),
                header: vec!["k", "coeff"],
                rows: series_rows(&z),
                passed: None,
            })
        }
        Command::Zeta(ZetaKind::Height) => {
            let y = variety::<R>(s)?;
            let tw = twist::<R>(s, projective_dim(&y)?)?;
            let d_max = s.d_max.unwrap_or(s.k_max);
            let (z, counts) = zeta_height(&y, &tw, &space, d_max, s.convention)?;
            Ok(Report {
                json: json!({
                    "kind": "height",
                    "convention": s.convention.name(),
                    "k_max": d_max,
                    "variety": y.to_string(),
                    "twist": twist_value(&tw),
                    "coeffs": to_value(&z),
                    "counts": {
                        "exact": to_value(&counts.series(Convention::Strict)),
                        "cumulative": to_value(&counts.series(Convention::Cumulative)),
                    },
                }),
                header: vec!["k", "coeff"],
                rows: series_rows(&z),
                passed: None,
            })
        }
        Command::Verify(VerifyKind::Reduction) => {
            let y = variety::<R>(s)?;
            let tw = twist::<R>(s, projective_dim(&y)?)?;
            let r = verify_reduction(&y, &tw, &space, s.k_max)?;
            let (strict, counts) = zeta_height(&y, &tw, &space, s.k_max, Convention::Strict)?;
            let cumulative = counts.series(Convention::Cumulative);
            let via_geometric = strict.mul(&TruncSeries::geometric(1, s.k_max));
            let conventions_agree = cumulative == via_geometric;
            let pieces: Vec<String> = decompose(&y, &tw)?.iter().map(|p| p.to_string()).collect();
            let rows = (0..=s.k_max)
                .map(|k| {
                    vec![
                        k.to_string(),
                        r.lhs.coeff(k).to_string(),
                        r.rhs.coeff(k).to_string(),
                        r.diff.coeff(k).to_string(),
                        cumulative.coeff(k).to_string(),
                    ]
                })
                .collect();
            Ok(Report {
                json: json!({
                    "variety": y.to_string(),
                    "twist": twist_value(&tw),
                    "piece_varieties": pieces,
                    "reduction": to_value(&r),
                    "convention_identity": {
                        "cumulative": to_value(&cumulative),
                        "strict_over_one_minus_t": to_value(&via_geometric),
                        "holds": conventions_agree,
                    },
                }),
                header: vec!["k", "lhs", "rhs", "diff", "cumulative"],
                rows,
                passed: Some(r.holds() && conventions_agree),
            })
        }
        Command::Verify(VerifyKind::Axkatz) => {
            let w = variety::<R>(s)?;
            let text = s.divisor.as_deref().ok_or_else(|| config_err("axkatz needs --divisor"))?;
            let e = space.parse_divisor(text)?;
            let sys = axkatz_system(&w, &space, &e)?;
            let r = axkatz_verify(&w, &space, &e)?;
            let g: Vec<String> = sys.g_polys.iter().map(|g| g.to_string()).collect();
            let mut json = to_value(&r);
            json["variety"] = Value::String(w.to_string());
            json["w_divisor"] = to_value(&sys.w);
            json["g_polys"] = to_value(&g);
            let show = |v: &Option<ffzeta::padic::Valuation>| v.as_ref().map_or("none".to_string(), |v| v.to_string());
            let rows = vec![
                vec!["s".into(), r.s.to_string()],
                vec!["r".into(), r.r_dim.to_string()],
                vec!["count_direct".into(), r.count_direct.to_string()],
                vec!["count_system".into(), r.count_system.to_string()],
                vec!["count_naive".into(), r.count_naive.to_string()],
                vec!["bound".into(), show(&r.bound)],
                vec!["ord_q".into(), r.ord_q.to_string()],
                vec!["passed".into(), r.passed().to_string()],
            ];
            Ok(Report {
                json,
                header: vec!["key", "value"],
                rows,
                passed: Some(r.passed()),
            })
        }
        Command::Verify(VerifyKind::Euler) => {
            let r = euler_product_check(&space, s.k_max)?;
            let rows = (0..=s.k_max)
                .map(|k| {
                    vec![
                        k.to_string(),
                        r.product.coeff(k).to_string(),
                        r.divisor_sum.coeff(k).to_string(),
                        r.diff.coeff(k).to_string(),
                    ]
                })
                .collect();
            Ok(Report {
                json: to_value(&r),
                header: vec!["k", "product", "divisor_sum", "diff"],
                rows,
                passed: Some(r.holds()),
            })
        }
        Command::Verify(VerifyKind::Interval) => {
            let w = variety::<R>(s)?;
            let pieces = match w.kind() {
                VarietyKind::Affine(_) => vec![w.clone()],
                VarietyKind::Projective(n) => decompose(&w, &twist::<R>(s, n)?)?,
            };
            let mut all = Vec::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for (i, p) in pieces.iter().enumerate() {
                let checked = interval_identity(p, &space, s.k_max)?;
                for row in &checked {
                    ok &= row.holds();
                    rows.push(vec![
                        i.to_string(),
                        row.divisor.to_string(),
                        row.s.to_string(),
                        row.h_sum.to_string(),
                        row.holds().to_string(),
                    ]);
                }
                all.push(json!({ "piece": i, "variety": p.to_string(), "rows": to_value(&checked) }));
            }
            Ok(Report {
                json: json!({ "variety": w.to_string(), "k_max": s.k_max, "pieces": all }),
                header: vec!["piece", "divisor", "s", "h_sum", "holds"],
                rows,
                passed: Some(ok),
            })
        }
        Command::Report(ReportKind::Wan) => {
            if s.model != Model::ProjLine {
                return Err(config_err("report wan runs over F_q(t); use --ambient p1"));
            }
            let d_max = s.d_max.unwrap_or(6);
            let r = wan_asymptotic(s.field.q(), s.n, d_max, s.caps)?;
            let mut json = to_value(&r);
            let mut passed = None;
            if let Some(tol) = &s.tolerance {
                let check = r.check(tol, s.from_d);
                json["check"] = json!({
                    "tolerance": to_value(&ffzeta::zeta::ExactRational::from(tol)),
                    "from_d": s.from_d,
                    "final_deviation_within_tolerance": check.final_deviation_within_tolerance,
                    "deviation_decreasing": check.deviation_decreasing,
                });
                passed = Some(check.passed());
            }
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    let pick = |e: &ffzeta::zeta::ExactRational| exact_or_decimal(e, s.exact);
                    vec![
                        row.d.to_string(),
                        row.exact.to_string(),
                        row.cumulative.to_string(),
                        pick(&row.leading_term),
                        pick(&row.ratio),
                        pick(&row.deviation),
                        pick(&row.exact_ratio),
                    ]
                })
                .collect();
            Ok(Report {
                json,
                header: vec!["d", "exact", "cumulative", "leading_term", "ratio", "deviation", "exact_ratio"],
                rows,
                passed,
            })
        }
        Command::Report(ReportKind::Growth) => {
            let w = variety::<R>(s)?;
            let r = growth_report(&w, &space, s.k_max)?;
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.k.to_string(),
                        row.divisors.to_string(),
                        row.min_ord_s.to_string(),
                        row.ord_m.to_string(),
                        exact_or_decimal(&row.reference, s.exact),
                        row.residual.as_ref().map_or("inf".into(), |x| exact_or_decimal(x, s.exact)),
                    ]
                })
                .collect();
            let mut json = to_value(&r);
            json["variety"] = Value::String(w.to_string());
            Ok(Report {
                json,
                header: vec!["k", "divisors", "min_ord_s", "ord_m", "reference", "residual"],
                rows,
                passed: None,
            })
        }
        Command::Report(ReportKind::Newton) => {
            let coeffs = s.series.clone().ok_or_else(|| config_err("newton needs --series"))?;
            let k_max = coeffs.len().saturating_sub(1);
            let series = TruncSeries::new(coeffs, k_max);
            let (p, r) = (s.field.p(), s.field.r());
            let np = newton_polygon(&series, p, r, s.base);
            let rows = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    vec![
                        k.to_string(),
                        c.to_string(),
                        ord(c, p, r, s.base).to_string(),
                        np.hull.iter().any(|h| h.0 == k).to_string(),
                    ]
                })
                .collect();
            let mut json = to_value(&np);
            json["series"] = to_value(&series);
            json["base"] = to_value(&s.base);
            Ok(Report {
                json,
                header: vec!["k", "coeff", "ord", "on_hull"],
                rows,
                passed: None,
            })
        }
    }
}

fn exact_or_decimal(e: &ffzeta::zeta::ExactRational, exact: bool) -> String {
    if !exact {
        return e.decimal.clone();
    }
    if e.den == "1" {
        e.num.clone()
    } else {
        format!("{}/{}", e.num, e.den)
    }
}

fn twist_value<R: Ambient>(tw: &TwistData<R>) -> Value {
    let rows: Vec<Vec<String>> = tw
        .matrix()
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect();
    json!({ "matrix": rows, "sigma": tw.sigma() })
}
