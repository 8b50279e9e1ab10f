//! Tracy-Widom (beta = 2) quantile function.
//!
//! Monotone cubic (Fritsch-Carlson) interpolation of the quantile against
//! `logit(p)`, which is close to linear in both tails and keeps the
//! interpolant well conditioned over the whole table.

use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::tw2_table::TW2_KNOTS;

/// Probabilities outside this range are clamped.
pub const P_MIN: f64 = 1e-6;
pub const P_MAX: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantile {
    pub value: f64,
    pub clamped: bool,
}

struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

fn logit_of(cdf: f64, ccdf: f64) -> f64 {
    cdf.ln() - ccdf.ln()
}

fn logit(p: f64) -> f64 {
    p.ln() - (-p).ln_1p()
}

// one-sided three-point end slope with the usual shape-preserving limits
fn edge_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if d.signum() != m0.signum() {
        0.0
    } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

impl Pchip {
    fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let m: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut d = vec![0.0; n];
        for k in 1..n - 1 {
            if m[k - 1] * m[k] > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                d[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
            }
        }
        d[0] = edge_slope(h[0], h[1], m[0], m[1]);
        d[n - 1] = edge_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
        Pchip { x, y, d }
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let k = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        };
        let h = self.x[k + 1] - self.x[k];
        let s = (t - self.x[k]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y[k] + h10 * h * self.d[k] + h01 * self.y[k + 1] + h11 * h * self.d[k + 1]
    }
}

fn interpolant() -> &'static Pchip {
    static CELL: OnceLock<Pchip> = OnceLock::new();
    CELL.get_or_init(|| {
        let x = TW2_KNOTS.iter().map(|&(_, c, cc)| logit_of(c, cc)).collect();
        let y = TW2_KNOTS.iter().map(|&(s, _, _)| s).collect();
        Pchip::new(x, y)
    })
}

/// Quantile `q` with `F2(q) = p`.
pub fn tw2_quantile(p: f64) -> Result<Quantile> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::out_of_range("TW2 probability", p, "(0, 1)"));
    }
    let clamped = !(P_MIN..=P_MAX).contains(&p);
    if clamped {
        log::warn!("TW2 quantile requested at p = {p:e}, clamped to [{P_MIN:e}, 1 - {P_MIN:e}]");
    }
    let pc = p.clamp(P_MIN, P_MAX);
    Ok(Quantile {
        value: interpolant().eval(logit(pc)),
        clamped,
    })
}
