//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always
//! shown by `cargo test`.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_lab::arith::rational::{frac, int, to_f64};
use quartic_lab::evaluate::{
    boros_moll_coeffs, closed_form_t1, dn_convolution, integral_quadrature, polypart_check,
    series_sum, series_sum_exact, series_terms, unfolded_check, IntegralParams,
};
use quartic_lab::holonomic::fixtures::{resolve_family, quartic};
use quartic_lab::holonomic::grammar::parse_expr;
use quartic_lab::holonomic::recurrence::{ode_to_recurrence, unroll, IndexPoly};
use quartic_lab::holonomic::telescoping_residual;
use quartic_lab::special::{gamma, ln_gamma};

const SERIES_BUDGET: usize = 20_000;

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(u64) -> Outcome);

fn c1_quartic_certificate(_seed: u64) -> Outcome {
    let t = quartic();
    let start = Instant::now();
    let residual = telescoping_residual(&t.operator, &t.certificate, &t.integrand);
    let secs = start.elapsed().as_secs_f64();
    if !residual.is_zero() {
        return Err(format!("residual {residual}"));
    }
    if secs >= 1.0 {
        return Err(format!("residual is zero but took {secs:.2}s"));
    }
    Ok(format!("residual expands to 0 in {:.0} ms", secs * 1e3))
}

fn c2_quartic_recurrence(_seed: u64) -> Outcome {
    let rec = ode_to_recurrence(&quartic().operator);
    let ip = |cs: &[&str]| {
        IndexPoly::new(
            cs.iter()
                .map(|s| parse_expr(s).unwrap().as_poly().unwrap())
                .collect(),
        )
    };
    // (-4l^2 + (-8m-8)l - 4m - 3) c_l + (4l^2 + 12l + 8) c_{l+2} = 0
    let want0 = ip(&["-4*m-3", "-8*m-8", "-4"]);
    let want2 = ip(&["8", "12", "4"]);
    if rec.offsets() != vec![0, 2]
        || rec.coefficient(0) != Some(&want0)
        || rec.coefficient(2) != Some(&want2)
    {
        return Err(format!("got {rec}"));
    }
    Ok(rec.to_string())
}

fn c3_three_way(_seed: u64) -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    for m in 0..=8u32 {
        for a in [-0.9, -0.5, 0.0, 0.5, 0.9] {
            let p = IntegralParams::quartic(m, a);
            let q = integral_quadrature(&p, 1e-13).map_err(|e| e.to_string())?.value;
            let s = series_sum(&p, 1e-13, SERIES_BUDGET).map_err(|e| e.to_string())?.value;
            let c = closed_form_t1(m, a).map_err(|e| e.to_string())?;
            let dev = rel(s, q).max(rel(c, q));
            if dev > worst.0 {
                worst = (dev, format!("m={m} a={a}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if worst.0 > 1e-10 {
        return Err(format!("max deviation {:.3e} at {}", worst.0, worst.1));
    }
    Ok(format!(
        "45 points, max deviation {:.3e} ({}), {secs:.1}s",
        worst.0, worst.1
    ))
}

fn c4_general_n(_seed: u64) -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut count = 0;
    for n in [1u32, 3, 4, 5] {
        let nf = n as f64;
        // both printed grids: ±0.2·(2/n), ±0.25·(2/n), ±0.8·(2/n)
        let mut grid = vec![0.0];
        for s in [0.2, 0.25, 0.8] {
            grid.push(s * 2.0 / nf);
            grid.push(-s * 2.0 / nf);
        }
        for m in 0..=4u32 {
            for &a in &grid {
                let p = IntegralParams::new(n, nf, m, a);
                if p.check_series().is_err() || p.check_positivity().is_err() {
                    continue;
                }
                let q = integral_quadrature(&p, 1e-13).map_err(|e| e.to_string())?.value;
                let s = series_sum(&p, 1e-13, SERIES_BUDGET).map_err(|e| e.to_string())?.value;
                count += 1;
                let dev = rel(s, q);
                if dev > worst.0 {
                    worst = (dev, format!("n={n} m={m} a={a:.4}"));
                }
            }
        }
    }
    if worst.0 > 1e-9 {
        return Err(format!("max deviation {:.3e} at {}", worst.0, worst.1));
    }
    Ok(format!("{count} points, max deviation {:.3e} ({})", worst.0, worst.1))
}

fn c5_family_resolution(seed: u64) -> Outcome {
    let res = resolve_family(seed);
    let verified: Vec<&str> = res
        .verified()
        .iter()
        .map(|v| v.triple.name.as_str())
        .collect();
    let Some(winner) = res.unique() else {
        return Err(format!("verifying variants: {verified:?}"));
    };
    let rec = ode_to_recurrence(&winner.triple.operator);
    for n in [1i64, 3, 5] {
        for m in 0..=4i64 {
            let s = unroll(&rec, m, &frac(1, n), 33).map_err(|e| e.to_string())?;
            for l in 0..=30i64 {
                // ratio implied by the display: n²(l + 1/n)(l + 2m + 2 − 1/n) / (4(l+1)(l+2))
                let want = frac((n * l + 1) * (n * (l + 2 * m + 2) - 1), 4 * (l + 1) * (l + 2));
                if s.stride_ratio(l as usize) != Some(want) {
                    return Err(format!("ratio mismatch at n={n} m={m} l={l}"));
                }
            }
        }
    }
    let typos = winner.triple.notes.join("; ");
    Ok(format!(
        "only `{}` verifies; typos: {typos}",
        winner.triple.name
    ))
}

fn c6_anchors(_seed: u64) -> Outcome {
    let cases = [
        (IntegralParams::quartic(0, 1.0), PI / 4.0),
        (IntegralParams::new(1, 1.0, 0, 0.0), PI / 2.0),
        (IntegralParams::quartic(0, 0.0), PI / (2.0 * 2f64.sqrt())),
    ];
    let mut worst = 0.0f64;
    for (p, want) in cases {
        let q = integral_quadrature(&p, 1e-13).map_err(|e| e.to_string())?;
        worst = worst.max(rel(q.value, want));
    }
    if worst > 1e-11 {
        return Err(format!("max deviation {worst:.3e}"));
    }
    Ok(format!("max deviation {worst:.3e}"))
}

fn c7_polynomial(_seed: u64) -> Outcome {
    if boros_moll_coeffs(0).coeffs != vec![int(1)] {
        return Err("P_0 is not [1]".into());
    }
    if boros_moll_coeffs(1).coeffs != vec![frac(3, 2), int(1)] {
        return Err("P_1 is not [3/2, 1]".into());
    }
    let mut worst = 0.0f64;
    for m in 0..=6u32 {
        let c = boros_moll_coeffs(m);
        for (a, aq) in [(0.0, int(0)), (0.5, frac(1, 2))] {
            let q = integral_quadrature(&IntegralParams::quartic(m, a), 1e-13)
                .map_err(|e| e.to_string())?;
            let lhs = 2.0 / PI * (2.0 * (a + 1.0)).powf(m as f64 + 0.5) * q.value;
            worst = worst.max(rel(lhs, to_f64(&c.eval(&aq))));
        }
    }
    if worst > 1e-9 {
        return Err(format!("quadrature oracle deviation {worst:.3e}"));
    }
    let start = Instant::now();
    for m in 0..=20 {
        let c = boros_moll_coeffs(m);
        if !c.all_positive() || !c.is_log_concave() {
            return Err(format!("m={m} fails positivity or log-concavity"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        return Err(format!("exact run took {secs:.1}s"));
    }
    Ok(format!(
        "oracle deviation {worst:.3e}; m<=20 positive and log-concave in {:.0} ms",
        secs * 1e3
    ))
}

fn c8_polypart_dn(_seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    for m in 0..=3 {
        for a in [frac(1, 4), frac(1, 2), frac(3, 4)] {
            let r = polypart_check(m, &a, 800).map_err(|e| e.to_string())?;
            worst = worst.max(r.deviation);
        }
    }
    if worst > 1e-8 {
        return Err(format!("polypart deviation {worst:.3e}"));
    }
    let mut printed_ok = true;
    let mut cauchy_ok = true;
    for m in 0..=6u32 {
        for n_idx in 0..=m + 2 {
            let r = dn_convolution(n_idx, m, 40).map_err(|e| e.to_string())?;
            printed_ok &= r.printed_deviation <= 1e-9;
            cauchy_ok &= r.cauchy_deviation <= 1e-9;
        }
    }
    let verdict = match (printed_ok, cauchy_ok) {
        (true, true) => "both readings match (the sum over k+l=n is finite either way)",
        (true, false) => "only the printed finite sum matches",
        (false, true) => "only the full convolution matches",
        (false, false) => return Err("neither reading of d_n(m) matches".into()),
    };
    Ok(format!("polypart deviation {worst:.3e}; d_n(m): {verdict}"))
}

fn c9_alpha_substitution(_seed: u64) -> Outcome {
    let mut checked = 0;
    for n in [2u32, 3] {
        for alpha in [int(1), frac(1, 2), int(3)] {
            for m in 0..=3u32 {
                for a in [frac(1, 3), frac(-1, 2), frac(3, 10)] {
                    let folded = &alpha * &a / int(n as i64);
                    let lhs = series_terms(n, &alpha, m, &a, 40).map_err(|e| e.to_string())?;
                    let rhs = series_terms(n, &int(n as i64), m, &folded, 40)
                        .map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("terms differ at n={n} alpha={alpha} m={m} a={a}"));
                    }
                    let s1 = series_sum_exact(n, &alpha, m, &a, 1e-13, SERIES_BUDGET)
                        .map_err(|e| e.to_string())?;
                    let s2 = series_sum_exact(n, &int(n as i64), m, &folded, 1e-13, SERIES_BUDGET)
                        .map_err(|e| e.to_string())?;
                    if s1.value.to_bits() != s2.value.to_bits() {
                        return Err(format!("sums differ at n={n} alpha={alpha} m={m} a={a}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} parameter sets agree term for term"))
}

fn c10_numerics(seed: u64) -> Outcome {
    let g = gamma(0.5).map_err(|e| e.to_string())?;
    let mut worst = rel(g, PI.sqrt());
    worst = worst.max(
        (ln_gamma(0.5).map_err(|e| e.to_string())? - 0.5 * PI.ln()).abs(),
    );
    let refl = gamma(0.25).unwrap() * gamma(0.75).unwrap();
    worst = worst.max(rel(refl, PI * 2f64.sqrt()));
    for x in [0.3, 1.7, 4.25] {
        let g2x = gamma(2.0 * x).unwrap();
        let lhs = gamma(x).unwrap() * gamma(x + 0.5).unwrap();
        worst = worst.max(((lhs - 2f64.powf(1.0 - 2.0 * x) * PI.sqrt() * g2x) / g2x).abs());
    }
    if worst > 1e-12 {
        return Err(format!("gamma anchors off by {worst:.3e}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        let n = rng.gen_range(1..=5u32);
        let m = rng.gen_range(0..=4u32);
        let alpha = rng.gen_range(0.5..=n as f64);
        let a = rng.gen_range(-1.9 / alpha..3.0);
        let p = IntegralParams::new(n, alpha, m, a);
        let c = unfolded_check(&p, 1e-12, 1e3).map_err(|e| e.to_string())?;
        if !c.consistent() {
            return Err(format!("fold identity fails for {p:?}: {c:?}"));
        }
    }
    Ok(format!("gamma anchors within {worst:.3e}; fold identity holds on 10 draws"))
}

fn main() {
    let seed = quartic_lab::seed_from_env().expect("valid seed");
    let criteria: [Criterion; 10] = [
        ("quartic certificate verifies exactly", c1_quartic_certificate),
        ("quartic operator gives the printed recurrence", c2_quartic_recurrence),
        ("three-way agreement for the quartic", c3_three_way),
        ("general-n series against quadrature", c4_general_n),
        ("general-n variant resolution", c5_family_resolution),
        ("exact quadrature anchors", c6_anchors),
        ("P_m(a) coefficients", c7_polynomial),
        ("polypart and d_n(m) displays", c8_polypart_dn),
        ("alpha parameter substitution", c9_alpha_substitution),
        ("numerics hygiene", c10_numerics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run(seed) {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
