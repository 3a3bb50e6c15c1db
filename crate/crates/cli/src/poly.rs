use clap::Args;
use serde_json::Value;

use quartic_lab::arith::rational::to_f64;
use quartic_lab::evaluate::boros_moll_coeffs;

use crate::json::float;

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub m: u32,
    /// Print only the exact coefficients
    #[arg(long)]
    pub exact: bool,
}

pub fn run(args: &PolyArgs) -> Value {
    let c = boros_moll_coeffs(args.m);
    let exact: Vec<Value> = c.coeffs.iter().map(|q| q.to_string().into()).collect();
    let mut fields = vec![
        ("coefficients", Value::Array(exact)),
        ("log_concave", c.is_log_concave().into()),
        ("m", args.m.into()),
        ("positive", c.all_positive().into()),
    ];
    if !args.exact {
        let floats = c.coeffs.iter().map(|q| float(to_f64(q))).collect();
        fields.push(("floats", Value::Array(floats)));
    }
    let mut map = serde_json::Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
