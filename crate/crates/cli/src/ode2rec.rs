use std::path::PathBuf;

use clap::Args;
use serde_json::{Map, Value};

use quartic_lab::arith::rational::frac;
use quartic_lab::holonomic::grammar::{parse_operator, parse_triple_text};
use quartic_lab::holonomic::{ode_to_recurrence, unroll, DiffOp};

use crate::error::CliError;

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["op", "file"]))]
pub struct Ode2RecArgs {
    /// Operator text, e.g. "-4*m-3 - 4*a*(2*m+3)*D_a - 4*(a^2-1)*D_a^2"
    #[arg(long, allow_hyphen_values = true)]
    pub op: Option<String>,
    /// Triple file whose operator is translated
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Also unroll this many multipliers q_l (needs --m and --n)
    #[arg(long, requires_all = ["m", "n"])]
    pub unroll: Option<usize>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
}

pub fn run(args: &Ode2RecArgs) -> Result<Value, CliError> {
    let text = match (&args.op, &args.file) {
        (Some(op), _) => op.clone(),
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            parse_triple_text(&src)?.operator
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let (op, _) = DiffOp::from_expr(&parse_operator(&text)?)?;
    let rec = ode_to_recurrence(&op);
    let coeffs: Map<String, Value> = rec
        .terms()
        .iter()
        .map(|(k, p)| (k.to_string(), p.to_string().into()))
        .collect();
    let mut out = Map::new();
    out.insert("coefficients".into(), Value::Object(coeffs));
    out.insert("offsets".into(), rec.offsets().into());
    out.insert("operator".into(), op.to_string().into());
    out.insert("recurrence".into(), rec.to_string().into());
    if let (Some(count), Some(m), Some(n)) = (args.unroll, args.m, args.n) {
        if n < 1 {
            return Err(CliError::usage("--n must be at least 1"));
        }
        let s = unroll(&rec, m, &frac(1, n), count)?;
        let q: Vec<Value> = s.multipliers().iter().map(|q| q.to_string().into()).collect();
        out.insert("multipliers".into(), q.into());
    }
    Ok(Value::Object(out))
}
