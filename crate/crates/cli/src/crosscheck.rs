use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use quartic_lab::evaluate::IntegralParams;

use crate::error::CliError;
use crate::eval::{evaluate, Method};
use crate::json::{float, float_text, object};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct CrosscheckArgs {
    /// Rows for m = 0..=m_max
    #[arg(long, default_value_t = 8)]
    pub m_max: u32,
    /// Comma-separated values of n; alpha = n in every row
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub n_set: Vec<u32>,
    /// Comma-separated values of a
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.9,-0.5,0,0.5,0.9")]
    pub a_grid: Vec<f64>,
    /// Read each grid value g as a = g·2/n, a fraction of the series radius
    #[arg(long)]
    pub a_relative: bool,
    /// Pass threshold for each row's max_rel_dev
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Tolerance requested from each evaluator
    #[arg(long, default_value_t = 1e-13)]
    pub eval_tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub params: IntegralParams,
    pub quad: f64,
    pub series: f64,
    pub closed: Option<f64>,
    pub max_rel_dev: f64,
}

impl Row {
    fn json(&self) -> Value {
        let p = &self.params;
        object([
            ("a", float(p.a)),
            ("alpha", float(p.alpha)),
            ("closed", self.closed.map_or(Value::Null, float)),
            ("m", p.m.into()),
            ("max_rel_dev", float(self.max_rel_dev)),
            ("n", p.n.into()),
            ("quad", float(self.quad)),
            ("series", float(self.series)),
        ])
    }

    fn csv(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{}",
            p.n,
            float_text(p.alpha),
            p.m,
            float_text(p.a),
            float_text(self.quad),
            float_text(self.series),
            self.closed.map(float_text).unwrap_or_default(),
            float_text(self.max_rel_dev)
        )
    }

    pub fn describe(&self) -> String {
        let p = &self.params;
        format!(
            "n={} alpha={} m={} a={} max_rel_dev={:.3e}",
            p.n, p.alpha, p.m, p.a, self.max_rel_dev
        )
    }
}

pub const CSV_HEADER: &str = "n,alpha,m,a,quad,series,closed,max_rel_dev";

fn grid(args: &CrosscheckArgs) -> Result<Vec<IntegralParams>, CliError> {
    let mut out = Vec::new();
    for &n in &args.n_set {
        if n == 0 {
            return Err(CliError::usage("n must be at least 1"));
        }
        for m in 0..=args.m_max {
            for &g in &args.a_grid {
                let a = if args.a_relative { g * 2.0 / n as f64 } else { g };
                let p = IntegralParams::new(n, n as f64, m, a);
                p.check_positivity()?;
                p.check_series()?;
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn run_row(p: &IntegralParams, eval_tol: f64) -> Result<Row, CliError> {
    let (quad, _, _) = evaluate(p, Method::Quadrature, eval_tol, 0)?;
    let (series, _, _) = evaluate(p, Method::Series, eval_tol, 20_000)?;
    let closed = if p.n == 2 && p.alpha == 2.0 {
        Some(evaluate(p, Method::Closed, eval_tol, 0)?.0)
    } else {
        None
    };
    let mut values = vec![quad, series];
    values.extend(closed);
    let mut dev = 0.0f64;
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            dev = dev.max(((x - y) / y).abs());
        }
    }
    Ok(Row {
        params: *p,
        quad,
        series,
        closed,
        max_rel_dev: dev,
    })
}

/// The rendered table and the worst row when any exceeds the threshold.
pub fn run(args: &CrosscheckArgs) -> Result<(String, Option<Row>), CliError> {
    let params = grid(args)?;
    // collect keeps grid order whatever the completion order
    let rows: Vec<Row> = params
        .par_iter()
        .map(|p| run_row(p, args.eval_tol))
        .collect::<Result<_, _>>()?;
    let worst = rows
        .iter()
        .fold(None::<&Row>, |w, r| match w {
            Some(w) if w.max_rel_dev >= r.max_rel_dev => Some(w),
            _ => Some(r),
        })
        .cloned();
    let failing = worst.clone().filter(|w| !(w.max_rel_dev <= args.tol));
    let text = match args.out {
        OutFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&r.csv());
                s.push('\n');
            }
            s.pop();
            s
        }
        OutFormat::Json => {
            let mut m = Map::new();
            m.insert("passed".into(), failing.is_none().into());
            m.insert("rows".into(), rows.iter().map(Row::json).collect());
            m.insert("tol".into(), float(args.tol));
            m.insert("worst".into(), worst.as_ref().map_or(Value::Null, Row::json));
            crate::json::render(&Value::Object(m))
        }
    };
    Ok((text, failing))
}
