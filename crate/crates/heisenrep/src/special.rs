//! Small special-function kernel: log-Gamma with sign, signed Gamma,
//! and factorials. Lanczos approximation with reflection for negative
//! arguments; accuracy ~1e-14 relative on the ranges used here.

use crate::error::CoreError;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln|Γ(x)| together with the sign of Γ(x).
///
/// Errors at the poles x = 0, -1, -2, ...
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64), CoreError> {
    if x <= 0.0 && x == x.floor() {
        return Err(CoreError::GammaPole { arg: x });
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let (lg, s) = ln_gamma_signed(1.0 - x)?;
        let sin_pi_x = (std::f64::consts::PI * x).sin();
        let ln = std::f64::consts::PI.ln() - sin_pi_x.abs().ln() - lg;
        let sign = s * sin_pi_x.signum();
        return Ok((ln, sign));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let ln = 0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln();
    Ok((ln, 1.0))
}

/// Γ(x), including negative non-pole arguments.
pub fn gamma(x: f64) -> Result<f64, CoreError> {
    let (ln, sign) = ln_gamma_signed(x)?;
    Ok(sign * ln.exp())
}

/// ln(n!).
pub fn ln_factorial(n: usize) -> f64 {
    let mut acc = 0.0f64;
    for k in 2..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// n! as f64.
pub fn factorial(n: usize) -> f64 {
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5).unwrap() - sqrt_pi).abs() < 1e-13);
        assert!((gamma(1.5).unwrap() - sqrt_pi / 2.0).abs() < 1e-13);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-11);
    }

    #[test]
    fn gamma_negative_range_has_right_sign() {
        // Γ is negative on (-1, 0)
        let g = gamma(-0.4).unwrap();
        assert!(g < 0.0);
        // recurrence Γ(x+1) = x Γ(x)
        let g1 = gamma(0.6).unwrap();
        assert!((g * -0.4 - g1).abs() < 1e-12 * g1.abs());
    }

    #[test]
    fn gamma_pole_detected() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-3.0).is_err());
    }

    #[test]
    fn factorial_matches_gamma() {
        for n in 0..15usize {
            let byg = gamma(n as f64 + 1.0).unwrap();
            assert!((factorial(n) - byg).abs() < 1e-9 * byg.max(1.0));
        }
    }
}
