use serde_json::Value;

use super::args::{CheckArgs, Format};
use super::output::{csv_row, json_line, num, object};
use super::{CliError, CliResult};
use crate::interval::ParamInterval;
use crate::models::fixtures::TwoComponentLocationMixture;
use crate::models::{
    boundary_limits, mlr_verify, BoundaryProbes, GammaScale, MlrFamily, NoncentralBeta, NoncentralChi2One,
    NormalLocation, WithThetaDomain,
};
use crate::oracle::{
    default_theta_pairs, expert_check, uniformity_check, DecisionRule, ExpertVerdict, DEFAULT_SEARCH_BUDGET,
};
use crate::votes::LIMIT_TOL;

const MLR_TOL: f64 = 1e-9;

struct Outcome {
    name: String,
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn mlr_outcome(name: &str, fam: &dyn MlrFamily, thetas: &[f64], xs: &[f64], expect: bool) -> CliResult<Outcome> {
    let report = mlr_verify(fam, thetas, xs, MLR_TOL)?;
    let detail = match &report.violation {
        None => format!("{}: log ratio nondecreasing on the grid", fam.tag()),
        Some(v) => format!(
            "{}: log p({})/p({}) drops from {:.6} at x={} to {:.6} at x={}",
            fam.tag(),
            v.theta_hi,
            v.theta_lo,
            v.log_ratio_lo,
            v.x_lo,
            v.log_ratio_hi,
            v.x_hi
        ),
    };
    Ok(Outcome::new(name, report.holds == expect, detail))
}

fn limits_outcome(name: &str, fam: &dyn MlrFamily, x: f64, expect: bool) -> CliResult<Outcome> {
    let probes = BoundaryProbes::default_for(&fam.theta_domain());
    let report = boundary_limits(fam, x, &probes, LIMIT_TOL)?;
    let detail = report
        .failure()
        .unwrap_or_else(|| format!("{} at x={x}: limit conditions hold", fam.tag()));
    Ok(Outcome::new(name, report.passed() == expect, detail))
}

fn uniformity_outcome(name: &str, fam: &dyn MlrFamily, theta: f64, n: usize, seed: u64) -> CliResult<Outcome> {
    let r = uniformity_check(fam, theta, n, seed)?;
    Ok(Outcome::new(
        name,
        r.passed,
        format!(
            "{} theta={theta}: ks={:.6} critical={:.6} mean_q1={:.6}",
            fam.tag(),
            r.ks,
            r.critical,
            r.mean_q1
        ),
    ))
}

fn expert_outcome(name: &str, fam: &dyn MlrFamily, rule: &DecisionRule, boundary: f64) -> CliResult<Outcome> {
    let pairs = default_theta_pairs(fam, boundary);
    let verdict = expert_check(fam, rule, boundary, &pairs, DEFAULT_SEARCH_BUDGET)?;
    Ok(match verdict {
        ExpertVerdict::Pass { events_checked } => Outcome::new(
            name,
            true,
            format!("rule {rule}: no violating event among {events_checked}"),
        ),
        ExpertVerdict::Witness(w) => Outcome::new(name, false, format!("rule {rule}: witness {w}")),
    })
}

pub fn run(a: &CheckArgs, format: Format) -> CliResult<String> {
    let normal = NormalLocation::new(1.0)?;
    let gamma = GammaScale::new(2.0, 1.0)?;
    let ncbeta = NoncentralBeta::new(2.0, 3.0)?;
    let chi2 = NoncentralChi2One::new();
    let mixture = TwoComponentLocationMixture::new(6.0)?;
    let truncated = WithThetaDomain::new(normal, ParamInterval::parse("(0,1]")?)?;

    let positive_x = linspace(0.05, 8.0, 40);
    let mut outcomes = vec![
        mlr_outcome(
            "mlr:normal",
            &normal,
            &linspace(-2.0, 2.0, 5),
            &linspace(-4.0, 4.0, 33),
            true,
        )?,
        mlr_outcome("mlr:gamma", &gamma, &[0.5, 1.0, 2.0, 4.0], &positive_x, true)?,
        mlr_outcome("mlr:ncbeta", &ncbeta, &[0.0, 0.5, 1.0, 2.0], &positive_x, true)?,
        mlr_outcome("mlr:chi2", &chi2, &[0.0, 0.5, 1.0, 2.0], &positive_x, true)?,
        mlr_outcome(
            "mlr:mixture-fixture-fails",
            &mixture,
            &[0.0, 1.0],
            &linspace(-4.0, 10.0, 57),
            false,
        )?,
        limits_outcome("limits:normal", &normal, 2.18, true)?,
        limits_outcome("limits:gamma", &gamma, 1.5, true)?,
        limits_outcome("limits:truncated-fixture-fails", &truncated, 2.18, false)?,
        uniformity_outcome("uniformity:normal", &normal, 0.5, a.samples, a.seed)?,
        uniformity_outcome("uniformity:ncbeta", &ncbeta, 1.0, a.samples, a.seed)?,
    ];
    for t in [-1.0, 0.0, 1.3] {
        outcomes.push(expert_outcome(
            &format!("expert:threshold({t})"),
            &normal,
            &DecisionRule::threshold(t),
            0.0,
        )?);
    }
    if let Some(text) = &a.rule {
        let rule = DecisionRule::parse(text)?;
        outcomes.push(expert_outcome("expert:rule", &normal, &rule, a.boundary)?);
    }

    let all_passed = outcomes.iter().all(|o| o.passed);
    let report = match format {
        Format::Json => {
            let rows = outcomes
                .iter()
                .map(|o| {
                    object(vec![
                        ("name", Value::from(o.name.as_str())),
                        ("passed", Value::from(o.passed)),
                        ("detail", Value::from(o.detail.as_str())),
                    ])
                })
                .collect();
            json_line(&object(vec![
                ("seed", Value::from(a.seed)),
                ("samples", Value::from(a.samples)),
                ("boundary", num(a.boundary)),
                ("checks", Value::Array(rows)),
                ("passed", Value::from(all_passed)),
            ]))
        }
        Format::Csv => {
            let mut s = csv_row(&["name", "passed", "detail"].map(String::from));
            for o in &outcomes {
                s.push_str(&csv_row(&[o.name.clone(), o.passed.to_string(), o.detail.clone()]));
            }
            s
        }
    };
    if all_passed {
        Ok(report)
    } else {
        let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
        Err(CliError::Mismatch {
            report,
            reason: format!("failed checks: {}", failed.join(", ")),
        })
    }
}
