use serde_json::Value;

use super::args::{Format, InductiveArgs, ModelArgs, ModelKind, VoteArgs};
use super::output::{csv_row, fixed, json_line, num, object};
use super::{CliError, CliResult};
use crate::error::Error;
use crate::interval::{fmt_endpoint, ParamInterval};
use crate::models::{GammaScale, MlrFamily, NoncentralBeta, NoncentralChi2One, NormalLocation, WithThetaDomain};
use crate::nuisance::{
    anova_inductive_distribution, anova_vote_series, student_vote, GammaPairModel, GhostSample, NormalSummary,
};
use crate::specfun::Tolerance;
use crate::votes::{
    bilateral_vote_compatible, bilateral_vote_symmetric_normal, inductive_distribution, neutral_vote, BilateralSplit,
    OneSidedSplit, ParameterLaw, VoteResult,
};

const LABEL_Q0: &str = "p-value of H0";
const LABEL_Q1: &str = "p-value of H0'";

fn require<T>(v: Option<T>, flag: &str, model: ModelKind) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --model {}", model_name(model))))
}

fn model_name(m: ModelKind) -> &'static str {
    match m {
        ModelKind::Normal => "normal",
        ModelKind::Gamma => "gamma",
        ModelKind::Ncbeta => "ncbeta",
        ModelKind::Chi2 => "chi2",
        ModelKind::Anova => "anova",
        ModelKind::Student => "student",
    }
}

fn tolerance(m: &ModelArgs) -> CliResult<Tolerance> {
    let d = Tolerance::default();
    Tolerance::new(
        m.abs_tol.unwrap_or(d.abs_tol),
        m.series_tail.unwrap_or(d.series_tail),
        m.max_terms.unwrap_or(d.max_terms),
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

/// (p, q) from either --p/--q or --k/--l.
fn shape_pair(m: &ModelArgs) -> CliResult<(f64, f64)> {
    match (m.p, m.q, m.k, m.l) {
        (Some(p), Some(q), None, None) => Ok((p, q)),
        (None, None, Some(k), Some(l)) => Ok((0.5 * k, 0.5 * l)),
        _ => Err(CliError::Usage(format!(
            "--model {} needs either --p and --q or --k and --l",
            model_name(m.model)
        ))),
    }
}

fn family(m: &ModelArgs) -> CliResult<Box<dyn MlrFamily>> {
    let tol = tolerance(m)?;
    let base: Box<dyn MlrFamily> = match m.model {
        ModelKind::Normal => Box::new(NormalLocation::new(m.sigma)?),
        ModelKind::Gamma => Box::new(GammaScale::new(require(m.shape, "shape", m.model)?, m.scale_mult)?),
        ModelKind::Ncbeta => {
            let (p, q) = shape_pair(m)?;
            Box::new(NoncentralBeta::with_tolerance(p, q, tol)?)
        }
        ModelKind::Chi2 => Box::new(NoncentralChi2One::with_tolerance(tol)),
        ModelKind::Anova | ModelKind::Student => {
            return Err(CliError::Usage(format!(
                "--model {} is not a single-observation family",
                model_name(m.model)
            )))
        }
    };
    match &m.theta_domain {
        Some(text) => Ok(Box::new(WithThetaDomain::new(base, ParamInterval::parse(text)?)?)),
        None => Ok(base),
    }
}

fn anova_parts(m: &ModelArgs) -> CliResult<(GammaPairModel, GhostSample)> {
    let (p, q) = shape_pair(m)?;
    let model = GammaPairModel::new(p, q)?;
    let sample = GhostSample::new(require(m.t, "t", m.model)?, require(m.u, "u", m.model)?)?;
    Ok((model, sample))
}

fn student_summary(m: &ModelArgs) -> CliResult<NormalSummary> {
    Ok(NormalSummary::new(
        require(m.n, "n", m.model)?,
        require(m.mean, "mean", m.model)?,
        require(m.s2, "s2", m.model)?,
    )?)
}

/// The realization, as JSON and as a CSV cell.
fn realization(m: &ModelArgs) -> CliResult<(Value, String)> {
    Ok(match m.model {
        ModelKind::Anova => {
            let (_, s) = anova_parts(m)?;
            (
                object(vec![("t", num(s.t)), ("u", num(s.u))]),
                format!("t={};u={}", fixed(s.t), fixed(s.u)),
            )
        }
        ModelKind::Student => {
            let s = student_summary(m)?;
            (
                object(vec![
                    ("n", Value::from(s.n())),
                    ("mean", num(s.mean())),
                    ("s2", num(s.s2())),
                ]),
                format!("n={};mean={};s2={}", s.n(), fixed(s.mean()), fixed(s.s2())),
            )
        }
        _ => {
            let x = require(m.x, "x", m.model)?;
            (num(x), fixed(x))
        }
    })
}

fn model_tag(m: &ModelArgs) -> CliResult<String> {
    Ok(match m.model {
        ModelKind::Anova => {
            let (model, _) = anova_parts(m)?;
            format!("anova(p={}, q={})", model.p, model.q)
        }
        ModelKind::Student => format!("student(n={})", student_summary(m)?.n()),
        _ => family(m)?.tag(),
    })
}

fn parse_pair(text: &str) -> CliResult<(f64, f64)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("expected 'a,b', got '{text}'")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("'{s}' is not a number")))
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn vote(a: &VoteArgs, format: Format) -> CliResult<String> {
    let m = &a.model;
    let chosen = [
        a.one_sided.is_some(),
        a.bilateral.is_some(),
        a.symmetric_c.is_some(),
        a.theta.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(CliError::Usage(
            "give exactly one of --one-sided, --bilateral, --symmetric-c, --theta".into(),
        ));
    }

    let (hypothesis, result) = match m.model {
        ModelKind::Anova => {
            let theta = a
                .theta
                .ok_or_else(|| CliError::Usage("--model anova takes --theta (Theta0 = [0, theta])".into()))?;
            let (model, sample) = anova_parts(m)?;
            let q0 = anova_vote_series(&model, &sample, theta, tolerance(m)?)?;
            (format!("Theta0=[0,{theta}]"), VoteResult::from_q0(q0))
        }
        ModelKind::Student => {
            let b = a
                .one_sided
                .ok_or_else(|| CliError::Usage("--model student takes --one-sided".into()))?;
            let q1 = student_vote(&student_summary(m)?, b)?;
            (format!("Theta0=({b},inf)"), VoteResult::from_q1(q1))
        }
        _ => {
            let x = require(m.x, "x", m.model)?;
            if let Some(c) = a.symmetric_c {
                if m.model != ModelKind::Normal || m.theta_domain.is_some() {
                    return Err(CliError::Usage(
                        "--symmetric-c needs --model normal on the full line".into(),
                    ));
                }
                (
                    format!("symmetric c={c} lambda1={}", a.lambda1),
                    bilateral_vote_symmetric_normal(c, a.lambda1, x, m.sigma)?,
                )
            } else if let Some(text) = &a.bilateral {
                let (lo, hi) = parse_pair(text)?;
                let fam = family(m)?;
                let split = BilateralSplit::new(&*fam, lo, hi)?;
                (format!("Theta0=[{lo},{hi}]"), bilateral_vote_compatible(&split, x)?)
            } else if let Some(b) = a.one_sided {
                let fam = family(m)?;
                let split = OneSidedSplit::new(&*fam, b)?;
                let sup = fam.theta_domain();
                let close = if sup.upper_closed { ']' } else { ')' };
                (
                    format!("Theta0=({b},{}{close}", fmt_endpoint(sup.upper)),
                    neutral_vote(&split, x)?,
                )
            } else {
                return Err(CliError::Usage("--theta applies to --model anova only".into()));
            }
        }
    };

    let tag = model_tag(m)?;
    let (x_json, x_csv) = realization(m)?;
    Ok(match format {
        Format::Json => json_line(&object(vec![
            ("model", Value::from(tag)),
            ("hypothesis", Value::from(hypothesis)),
            ("x", x_json),
            ("q0", num(result.q0)),
            ("q1", num(result.q1)),
            (
                "labels",
                object(vec![("q0", Value::from(LABEL_Q0)), ("q1", Value::from(LABEL_Q1))]),
            ),
        ])),
        Format::Csv => {
            let mut s = csv_row(&["model", "hypothesis", "x", "q0", "q1"].map(String::from));
            s.push_str(&csv_row(&[tag, hypothesis, x_csv, fixed(result.q0), fixed(result.q1)]));
            s
        }
    })
}

fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let grid = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Lib(Error::Parse(format!("grid value '{}' is not a number", s.trim()))))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Usage("grid values must be finite".into()));
    }
    Ok(grid)
}

fn check_grid(grid: &[f64], dom: &ParamInterval) -> CliResult<()> {
    match grid.iter().find(|&&t| !dom.contains(t)) {
        Some(t) => Err(CliError::Usage(format!("grid value {t} outside Theta = {dom}"))),
        None => Ok(()),
    }
}

pub fn inductive(a: &InductiveArgs, format: Format) -> CliResult<String> {
    let m = &a.model;
    let grid = parse_grid(&a.grid)?;
    let values: Vec<f64> = match m.model {
        ModelKind::Anova => {
            check_grid(&grid, &ParamInterval::nonnegative())?;
            let (model, sample) = anova_parts(m)?;
            let law = anova_inductive_distribution(model, sample, tolerance(m)?)?;
            grid.iter().map(|&t| law.cdf_at(t)).collect::<Result<_, _>>()?
        }
        ModelKind::Student => {
            let s = student_summary(m)?;
            grid.iter().map(|&t| student_vote(&s, t)).collect::<Result<_, _>>()?
        }
        _ => {
            let fam = family(m)?;
            check_grid(&grid, &fam.theta_domain())?;
            let law = inductive_distribution(&*fam, require(m.x, "x", m.model)?)?;
            grid.iter().map(|&t| law.cdf_at(t)).collect::<Result<_, _>>()?
        }
    };

    let tag = model_tag(m)?;
    let (x_json, x_csv) = realization(m)?;
    Ok(match format {
        Format::Json => {
            let rows = grid
                .iter()
                .zip(&values)
                .map(|(&t, &v)| object(vec![("theta", num(t)), ("cdf", num(v))]))
                .collect();
            json_line(&object(vec![
                ("model", Value::from(tag)),
                ("x", x_json),
                ("rows", Value::Array(rows)),
            ]))
        }
        Format::Csv => {
            let mut s = format!("# {tag} x={x_csv}\n");
            s.push_str("theta,cdf\n");
            for (&t, &v) in grid.iter().zip(&values) {
                s.push_str(&csv_row(&[fixed(t), fixed(v)]));
            }
            s
        }
    })
}

/// Nested hypotheses Θ₀ around the realization x = 2.18 of N(θ, 1), with
/// the symmetric-vote p-values quoted to four decimals.
const NESTED_X: f64 = 2.18;
const NESTED_CASES: [(f64, f64, &str); 3] = [(0.5, 0.5, "0.0930"), (-0.5, 0.5, "0.0502"), (-0.82, 0.52, "0.0498")];

fn interval_label(lo: f64, hi: f64) -> String {
    if lo == hi {
        format!("{{{lo}}}")
    } else {
        format!("[{lo},{hi}]")
    }
}

pub fn demo_schervish(format: Format) -> CliResult<String> {
    let normal = NormalLocation::new(1.0)?;
    let mut symmetric = Vec::new();
    let mut compatible = Vec::new();
    for &(lo, hi, expected) in &NESTED_CASES {
        let c = 0.5 * (lo + hi);
        let half_width = 0.5 * (hi - lo);
        let sym = bilateral_vote_symmetric_normal(c, half_width, NESTED_X, 1.0)?;
        let comp = bilateral_vote_compatible(&BilateralSplit::new(&normal, lo, hi)?, NESTED_X)?;
        symmetric.push((interval_label(lo, hi), sym.q0, expected));
        compatible.push((interval_label(lo, hi), comp.q0));
    }
    let matches: Vec<bool> = symmetric.iter().map(|(_, v, e)| format!("{v:.4}") == *e).collect();
    let all_match = matches.iter().all(|&b| b);
    let comp_nondecreasing = compatible.windows(2).all(|w| w[0].1 <= w[1].1);
    let sym_nondecreasing = symmetric.windows(2).all(|w| w[0].1 <= w[1].1);

    let report = match format {
        Format::Json => {
            let sym_rows = symmetric
                .iter()
                .zip(&matches)
                .map(|((h, v, e), &ok)| {
                    object(vec![
                        ("hypothesis", Value::from(h.as_str())),
                        ("q0", num(*v)),
                        ("expected", Value::from(*e)),
                        ("match", Value::from(ok)),
                    ])
                })
                .collect();
            let comp_rows = compatible
                .iter()
                .map(|(h, v)| object(vec![("hypothesis", Value::from(h.as_str())), ("q0", num(*v))]))
                .collect();
            json_line(&object(vec![
                ("x", num(NESTED_X)),
                ("symmetric", Value::Array(sym_rows)),
                ("symmetric_nondecreasing", Value::from(sym_nondecreasing)),
                ("compatible", Value::Array(comp_rows)),
                ("compatible_nondecreasing", Value::from(comp_nondecreasing)),
            ]))
        }
        Format::Csv => {
            let mut s = csv_row(&["table", "hypothesis", "q0", "expected"].map(String::from));
            for (h, v, e) in &symmetric {
                s.push_str(&csv_row(&["symmetric".into(), h.clone(), fixed(*v), e.to_string()]));
            }
            for (h, v) in &compatible {
                s.push_str(&csv_row(&["compatible".into(), h.clone(), fixed(*v), String::new()]));
            }
            s
        }
    };
    if all_match && comp_nondecreasing {
        Ok(report)
    } else {
        let reason = if all_match {
            "compatible votes decrease under nesting"
        } else {
            "symmetric votes differ from the expected four-decimal values"
        };
        Err(CliError::Mismatch {
            report,
            reason: reason.into(),
        })
    }
}
