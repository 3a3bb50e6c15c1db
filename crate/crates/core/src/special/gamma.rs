use std::f64::consts::PI;

use super::SpecialError;

const G: f64 = 7.0;

/// Lanczos coefficients for g = 7.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Returns `(t, A)` with `Γ(x) = √(2π)·t^(x−1/2)·e^(−t)·A` for `x ≥ 1/2`.
fn lanczos_parts(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    (z + G + 0.5, acc)
}

fn check(x: f64) -> Result<(), SpecialError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecialError::NonPositive(format!("{x}")))
    }
}

pub fn ln_gamma(x: f64) -> Result<f64, SpecialError> {
    check(x)?;
    if x < 0.5 {
        // Γ(x) = Γ(x + 1)/x keeps the approximation in its accurate range
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let (t, a) = lanczos_parts(x);
    Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + a.ln())
}

pub fn gamma(x: f64) -> Result<f64, SpecialError> {
    check(x)?;
    if x < 0.5 {
        return Ok(gamma(x + 1.0)? / x);
    }
    if x > 140.0 {
        return Ok(ln_gamma(x)?.exp());
    }
    let (t, a) = lanczos_parts(x);
    // split the power so t^(x−1/2) cannot overflow before e^(−t) is applied
    let half = t.powf(0.5 * (x - 0.5));
    Ok((2.0 * PI).sqrt() * half * ((-t).exp() * half) * a)
}
