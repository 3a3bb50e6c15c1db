use clap::{Args, ValueEnum};
use serde_json::Value;

use quartic_lab::evaluate::{closed_form_t1, integral_quadrature, series_sum, IntegralParams};

use crate::error::CliError;
use crate::json::{float, object};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    Series,
    Closed,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::Closed => "closed",
        }
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Half-degree n of x^{2n}
    #[arg(long)]
    pub n: u32,
    /// Middle-coefficient scale; defaults to n
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub m: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: Method,
    /// Requested relative tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Term budget for the series
    #[arg(long, default_value_t = 20_000)]
    pub max_terms: usize,
}

pub fn evaluate(p: &IntegralParams, method: Method, tol: f64, max_terms: usize) -> Result<(f64, f64, usize), CliError> {
    Ok(match method {
        Method::Quadrature => {
            let q = integral_quadrature(p, tol)?;
            (q.value, q.error_estimate, q.evaluations)
        }
        Method::Series => {
            let s = series_sum(p, tol, max_terms)?;
            (s.value, s.tail_bound, s.terms_used)
        }
        Method::Closed => {
            if p.n != 2 || p.alpha != 2.0 {
                return Err(CliError::usage(
                    "the closed form covers only n = 2, alpha = 2",
                ));
            }
            let v = closed_form_t1(p.m, p.a)?;
            // exact rational part, so only a few roundings remain
            (v, 8.0 * f64::EPSILON * v.abs(), 0)
        }
    })
}

pub fn run(args: &EvalArgs) -> Result<Value, CliError> {
    let p = IntegralParams::new(args.n, args.alpha.unwrap_or(args.n as f64), args.m, args.a);
    if !(args.tol > 0.0) {
        return Err(CliError::usage("--tol must be positive"));
    }
    let (value, bound, count) = evaluate(&p, args.method, args.tol, args.max_terms)?;
    Ok(object([
        ("error_bound", float(bound)),
        ("method", Value::from(args.method.name())),
        (
            "params",
            object([
                ("a", float(p.a)),
                ("alpha", float(p.alpha)),
                ("m", Value::from(p.m)),
                ("n", Value::from(p.n)),
            ]),
        ),
        ("terms_or_evals", Value::from(count)),
        ("value", float(value)),
    ]))
}
