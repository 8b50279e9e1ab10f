//! Regularized incomplete gamma functions and the Gamma quantile.

use statrs::function::erf::erfc_inv;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

fn max_iter(a: f64) -> usize {
    1_000 + (40.0 * a.sqrt()) as usize
}

/// `exp(-x + a ln x - ln Gamma(a))`, the common prefactor of both expansions.
fn log_prefactor(a: f64, x: f64) -> f64 {
    -x + a * x.ln() - ln_gamma(a)
}

fn series_lower(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut denom = a;
    for _ in 0..max_iter(a) {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * log_prefactor(a, x).exp()
}

// modified Lentz evaluation of the continued fraction for Q(a, x)
fn continued_fraction_upper(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=max_iter(a) {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h * log_prefactor(a, x).exp()
}

/// `(P(a, x), Q(a, x))` for shape `a > 0` and `x >= 0`.
pub fn regularized_gamma(a: f64, x: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(x >= 0.0) {
        return Err(Error::Degenerate("incomplete gamma needs a > 0 and x >= 0"));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    if x < a + 1.0 {
        let p = series_lower(a, x).min(1.0);
        Ok((p, 1.0 - p))
    } else {
        let q = continued_fraction_upper(a, x).min(1.0);
        Ok((1.0 - q, q))
    }
}

fn log_density(a: f64, x: f64) -> f64 {
    (a - 1.0) * x.ln() - x - ln_gamma(a)
}

/// Standard normal upper quantile: `z` with `P(N(0,1) > z) = tail`.
pub(crate) fn normal_upper_quantile(tail: f64) -> f64 {
    std::f64::consts::SQRT_2 * erfc_inv(2.0 * tail)
}

/// `x` with `P(X > x) = tail` for `X ~ Gamma(shape, 1)`.
///
/// Newton iterations on whichever regularized function is the smaller one
/// (so deep tails keep their relative accuracy), safeguarded by a bracket.
pub fn gamma_upper_quantile(shape: f64, tail: f64) -> Result<f64> {
    if !(tail > 0.0 && tail < 1.0) {
        return Err(Error::out_of_range("target_pfa", tail, "(0, 1)"));
    }
    if !(shape > 0.0) {
        return Err(Error::out_of_range("gamma shape", shape, "> 0"));
    }
    if shape == 1.0 {
        return Ok(-tail.ln());
    }
    let use_upper = tail < 0.5;
    let target = if use_upper { tail } else { 1.0 - tail };
    // residual > 0 means x is too small
    let residual = |x: f64| -> Result<f64> {
        let (p, q) = regularized_gamma(shape, x)?;
        Ok(if use_upper { q - target } else { target - p })
    };

    // Wilson-Hilferty start
    let z = normal_upper_quantile(tail);
    let c = 1.0 / (9.0 * shape);
    let mut x = (shape * (1.0 - c + z * c.sqrt()).powi(3)).max(1e-3 * shape.min(1.0));

    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for _ in 0..200 {
        let r = residual(x)?;
        if r > 0.0 {
            lo = lo.max(x);
        } else {
            hi = hi.min(x);
        }
        // d/dx of the residual is -density in both branches
        let dens = log_density(shape, x).exp();
        let mut next = if dens > 0.0 { x + r / dens } else { f64::NAN };
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * x.max(1.0) };
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(TINY) {
            return Ok(next);
        }
        x = next;
        if hi.is_finite() && (hi - lo) <= 1e-15 * hi {
            return Ok(0.5 * (lo + hi));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_special_case() {
        let (p, q) = regularized_gamma(1.0, 2.0).unwrap();
        assert!((q - (-2f64).exp()).abs() < 1e-15);
        assert!((p + q - 1.0).abs() < 1e-15);
        for pfa in [1e-6, 1e-3, 0.1, 0.5, 0.9] {
            assert!((gamma_upper_quantile(1.0, pfa).unwrap() + pfa.ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn integer_shape_matches_poisson_sum() {
        // Q(k, x) = sum_{i<k} e^-x x^i / i!
        for &(k, x) in &[(3usize, 1.7f64), (10, 12.0), (25, 20.0), (40, 55.0)] {
            let mut term = (-x).exp();
            let mut sum = term;
            for i in 1..k {
                term *= x / i as f64;
                sum += term;
            }
            let (_, q) = regularized_gamma(k as f64, x).unwrap();
            assert!((q - sum).abs() < 1e-13 * sum.max(1e-300), "k={k} x={x}");
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &a in &[0.5, 2.5, 168.0, 2688.0, 53_760.0] {
            for &t in &[1e-6, 1e-3, 1e-2, 0.3, 0.5, 0.9] {
                let x = gamma_upper_quantile(a, t).unwrap();
                let (_, q) = regularized_gamma(a, x).unwrap();
                assert!((q / t - 1.0).abs() < 1e-9, "a={a} t={t} q={q}");
            }
        }
    }

    #[test]
    fn quantile_rejects_bad_probabilities() {
        assert!(gamma_upper_quantile(3.0, 0.0).is_err());
        assert!(gamma_upper_quantile(3.0, 1.0).is_err());
        assert!(gamma_upper_quantile(0.0, 0.5).is_err());
    }

    #[test]
    fn normal_quantile_reference() {
        assert!((normal_upper_quantile(0.5)).abs() < 1e-15);
        assert!((normal_upper_quantile(0.025) - 1.959_963_984_540_054).abs() < 1e-12);
    }
}
