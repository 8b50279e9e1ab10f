//! Blanked-RE observations and their sufficient statistic.
//!
//! Both detectors depend on the samples only through the Gram matrix
//! `G = R R^H`. For Gaussian noise and Gaussian jamming symbols the Gram
//! matrix can be drawn directly: on a jammed blanked PRB the 168 columns are
//! `w_m + s_m h_J`; a unitary rotation in RE space that maps `s` onto its
//! first coordinate leaves the noise white and concentrates the jammer in a
//! single column `w' + |s| h_J`. The remaining white columns form a complex
//! Wishart matrix, drawn with the Bartlett decomposition.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::channel::standard_complex_normal;
use crate::error::{Error, Result};

/// Jammer seen on one blanked PRB.
#[derive(Debug, Clone, Copy)]
pub struct JammedPrb<'a> {
    /// Jammer channel across all antennas, including large-scale gain.
    pub channel: &'a [Complex64],
    /// Jammer symbol variance per RE.
    pub power_per_re: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlankedObservation {
    samples: DMatrix<Complex64>,
    noise_var_per_re: f64,
}

impl BlankedObservation {
    pub fn new(samples: DMatrix<Complex64>, noise_var_per_re: f64) -> Result<Self> {
        if samples.nrows() == 0 || samples.ncols() == 0 {
            return Err(Error::Degenerate("empty blanked observation"));
        }
        if !(noise_var_per_re > 0.0) {
            return Err(Error::out_of_range("noise_var_per_re", noise_var_per_re, "> 0"));
        }
        Ok(Self {
            samples,
            noise_var_per_re,
        })
    }

    pub fn samples(&self) -> &DMatrix<Complex64> {
        &self.samples
    }

    pub fn n_ant(&self) -> usize {
        self.samples.nrows()
    }

    pub fn n_re(&self) -> usize {
        self.samples.ncols()
    }

    pub fn noise_var_per_re(&self) -> f64 {
        self.noise_var_per_re
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn gram(&self) -> Gram {
        Gram {
            matrix: &self.samples * self.samples.adjoint(),
            n_re: self.n_re(),
            noise_var_per_re: self.noise_var_per_re,
        }
    }
}

/// `R R^H` of a blanked observation together with its dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    pub matrix: DMatrix<Complex64>,
    pub n_re: usize,
    pub noise_var_per_re: f64,
}

impl Gram {
    pub fn n_ant(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Concatenates the REs of another observation of the same antennas
    /// (multi-slot accumulation).
    pub fn accumulate(&mut self, other: &Gram) -> Result<()> {
        if other.n_ant() != self.n_ant() {
            return Err(Error::Degenerate("accumulating observations of different arrays"));
        }
        if (other.noise_var_per_re / self.noise_var_per_re - 1.0).abs() > 1e-12 {
            return Err(Error::Degenerate("accumulating observations with different noise levels"));
        }
        self.matrix += &other.matrix;
        self.n_re += other.n_re;
        Ok(())
    }
}

/// Unit-noise draws of a blanked observation, rescalable to any jammer power.
///
/// Holding the standardized draws fixed while sweeping the jammer power gives
/// common random numbers across the sweep.
#[derive(Debug, Clone)]
pub enum ObservationDraw {
    Sufficient {
        /// `L L^H` of a unit complex Wishart with `n_re - n_jammed` columns.
        white: DMatrix<Complex64>,
        /// Per jammed PRB: the unit noise column and the symbol energy `|s|^2`
        /// of unit-variance symbols.
        rotated: Vec<(Vec<Complex64>, f64)>,
        n_re: usize,
    },
    Samples {
        /// `n_ant x n_re` unit noise; jammed PRBs occupy the leading columns.
        noise: DMatrix<Complex64>,
        /// Unit-variance jammer symbols per jammed PRB.
        symbols: Vec<Vec<Complex64>>,
        n_re_per_prb: usize,
    },
}

fn unit_wishart_gram<R: Rng + ?Sized>(n_ant: usize, dof: usize, rng: &mut R) -> DMatrix<Complex64> {
    if dof == 0 {
        return DMatrix::zeros(n_ant, n_ant);
    }
    if dof < n_ant {
        let x = DMatrix::from_fn(n_ant, dof, |_, _| standard_complex_normal(rng));
        return &x * x.adjoint();
    }
    // Bartlett: L lower triangular, |L_ii|^2 ~ Gamma(dof - i, 1), L_ij ~ CN(0, 1)
    let mut l = DMatrix::<Complex64>::zeros(n_ant, n_ant);
    for i in 0..n_ant {
        let shape = (dof - i) as f64;
        let g = Gamma::new(shape, 1.0).expect("positive shape");
        l[(i, i)] = Complex64::new(g.sample(rng).sqrt(), 0.0);
        for j in 0..i {
            l[(i, j)] = standard_complex_normal(rng);
        }
    }
    &l * l.adjoint()
}

impl ObservationDraw {
    /// Sufficient-statistic draw for `n_re` blanked REs, `n_jammed` of whose
    /// PRBs carry jamming.
    pub fn sufficient<R: Rng + ?Sized>(
        n_ant: usize,
        n_re: usize,
        n_jammed: usize,
        n_re_per_prb: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if n_jammed * n_re_per_prb > n_re {
            return Err(Error::Degenerate("more jammed REs than blanked REs"));
        }
        let white = unit_wishart_gram(n_ant, n_re - n_jammed, rng);
        let energy = Gamma::new(n_re_per_prb as f64, 1.0)
            .map_err(|_| Error::Degenerate("empty PRB"))?;
        let rotated = (0..n_jammed)
            .map(|_| {
                let w = (0..n_ant).map(|_| standard_complex_normal(rng)).collect();
                (w, energy.sample(rng))
            })
            .collect();
        Ok(ObservationDraw::Sufficient {
            white,
            rotated,
            n_re,
        })
    }

    /// Explicit per-RE draw with the same distribution.
    pub fn samples<R: Rng + ?Sized>(
        n_ant: usize,
        n_re: usize,
        n_jammed: usize,
        n_re_per_prb: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if n_jammed * n_re_per_prb > n_re {
            return Err(Error::Degenerate("more jammed REs than blanked REs"));
        }
        let noise = DMatrix::from_fn(n_ant, n_re, |_, _| standard_complex_normal(rng));
        let symbols = (0..n_jammed)
            .map(|_| (0..n_re_per_prb).map(|_| standard_complex_normal(rng)).collect())
            .collect();
        Ok(ObservationDraw::Samples {
            noise,
            symbols,
            n_re_per_prb,
        })
    }

    pub fn n_jammed(&self) -> usize {
        match self {
            ObservationDraw::Sufficient { rotated, .. } => rotated.len(),
            ObservationDraw::Samples { symbols, .. } => symbols.len(),
        }
    }

    fn check(&self, jammer: &[JammedPrb<'_>], n_ant: usize) -> Result<()> {
        if jammer.len() != self.n_jammed() {
            return Err(Error::Degenerate("jammer list does not match the drawn observation"));
        }
        if jammer.iter().any(|j| j.channel.len() != n_ant) {
            return Err(Error::Degenerate("jammer channel has the wrong length"));
        }
        Ok(())
    }

    /// Gram matrix at noise variance `noise_var_per_re` and the given jammer.
    pub fn gram(&self, noise_var_per_re: f64, jammer: &[JammedPrb<'_>]) -> Result<Gram> {
        match self {
            ObservationDraw::Sufficient {
                white,
                rotated,
                n_re,
            } => {
                let n_ant = white.nrows();
                self.check(jammer, n_ant)?;
                let sigma = noise_var_per_re.sqrt();
                let mut matrix = white * Complex64::from(noise_var_per_re);
                let mut col = vec![Complex64::default(); n_ant];
                for ((w, e), j) in rotated.iter().zip(jammer) {
                    let amp = (j.power_per_re * e).sqrt();
                    for (c, (wi, hi)) in col.iter_mut().zip(w.iter().zip(j.channel)) {
                        *c = wi * sigma + hi * amp;
                    }
                    for r in 0..n_ant {
                        for s in 0..n_ant {
                            matrix[(r, s)] += col[r] * col[s].conj();
                        }
                    }
                }
                Ok(Gram {
                    matrix,
                    n_re: *n_re,
                    noise_var_per_re,
                })
            }
            ObservationDraw::Samples { .. } => {
                Ok(self.observation(noise_var_per_re, jammer)?.gram())
            }
        }
    }

    /// Explicit samples; only available for [`ObservationDraw::Samples`].
    pub fn observation(
        &self,
        noise_var_per_re: f64,
        jammer: &[JammedPrb<'_>],
    ) -> Result<BlankedObservation> {
        let ObservationDraw::Samples {
            noise,
            symbols,
            n_re_per_prb,
        } = self
        else {
            return Err(Error::Degenerate("sufficient-statistic draws carry no samples"));
        };
        self.check(jammer, noise.nrows())?;
        let mut samples = noise * Complex64::from(noise_var_per_re.sqrt());
        for (b, (s, j)) in symbols.iter().zip(jammer).enumerate() {
            let amp = j.power_per_re.sqrt();
            for (m, sym) in s.iter().enumerate() {
                let col = b * n_re_per_prb + m;
                for (a, h) in j.channel.iter().enumerate() {
                    samples[(a, col)] += h * sym * amp;
                }
            }
        }
        BlankedObservation::new(samples, noise_var_per_re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{substream, Purpose};

    #[test]
    fn bartlett_gram_moments() {
        // E[G] = dof I, Var(G_11) = dof, E|G_12|^2 = dof
        let (n_ant, dof, trials) = (4, 30, 20_000);
        let mut rng = substream(1, Purpose::ObservationH0, 0, 0);
        let (mut d, mut d2, mut off2) = (0.0, 0.0, 0.0);
        for _ in 0..trials {
            let g = unit_wishart_gram(n_ant, dof, &mut rng);
            d += g[(2, 2)].re;
            d2 += g[(2, 2)].re.powi(2);
            off2 += g[(0, 3)].norm_sqr();
            assert!((g[(1, 0)] - g[(0, 1)].conj()).norm() < 1e-12);
        }
        let t = trials as f64;
        let mean = d / t;
        let var = d2 / t - mean * mean;
        assert!((mean - 30.0).abs() < 0.25, "{mean}");
        assert!((var / 30.0 - 1.0).abs() < 0.05, "{var}");
        assert!((off2 / t / 30.0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn sufficient_and_explicit_draws_agree_in_distribution() {
        // trace and |G_01|^2 moments with two jammed PRBs
        let (n_ant, n_re_per_prb, n_re, trials) = (3, 12, 48, 20_000);
        let h1 = [Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2), Complex64::new(0.0, 1.0)];
        let h2 = [Complex64::new(0.2, 0.0), Complex64::new(0.9, -0.4), Complex64::new(0.5, 0.5)];
        let jam = [
            JammedPrb { channel: &h1, power_per_re: 2.0 },
            JammedPrb { channel: &h2, power_per_re: 0.5 },
        ];
        let mut stats = [[0.0f64; 3]; 2];
        for (k, s) in stats.iter_mut().enumerate() {
            let mut rng = substream(2, Purpose::ObservationH1, k as u64, 0);
            for _ in 0..trials {
                let draw = if k == 0 {
                    ObservationDraw::sufficient(n_ant, n_re, 2, n_re_per_prb, &mut rng)
                } else {
                    ObservationDraw::samples(n_ant, n_re, 2, n_re_per_prb, &mut rng)
                }
                .unwrap();
                let g = draw.gram(0.7, &jam).unwrap();
                s[0] += g.trace();
                s[1] += g.trace().powi(2);
                s[2] += g.matrix[(0, 1)].norm_sqr();
            }
        }
        let t = trials as f64;
        for i in 0..3 {
            let (a, b) = (stats[0][i] / t, stats[1][i] / t);
            assert!((a / b - 1.0).abs() < 0.03, "moment {i}: {a} vs {b}");
        }
        // exact mean of the trace
        let jam_energy: f64 = jam
            .iter()
            .map(|j| j.power_per_re * n_re_per_prb as f64 * j.channel.iter().map(|h| h.norm_sqr()).sum::<f64>())
            .sum();
        let expected = 0.7 * (n_re * n_ant) as f64 + jam_energy;
        assert!((stats[0][0] / t / expected - 1.0).abs() < 0.01);
    }

    #[test]
    fn explicit_gram_matches_samples() {
        let mut rng = substream(3, Purpose::ObservationH1, 0, 0);
        let draw = ObservationDraw::samples(4, 24, 1, 12, &mut rng).unwrap();
        let h = [Complex64::new(1.0, 0.0); 4];
        let jam = [JammedPrb { channel: &h, power_per_re: 3.0 }];
        let obs = draw.observation(0.5, &jam).unwrap();
        let g = draw.gram(0.5, &jam).unwrap();
        assert_eq!(g.n_re, 24);
        assert!((g.trace() - obs.energy()).abs() < 1e-9 * obs.energy());
    }

    #[test]
    fn accumulation_adds_res() {
        let mut rng = substream(4, Purpose::ObservationH0, 0, 0);
        let a = ObservationDraw::sufficient(2, 10, 0, 5, &mut rng).unwrap().gram(1.0, &[]).unwrap();
        let b = ObservationDraw::sufficient(2, 15, 0, 5, &mut rng).unwrap().gram(1.0, &[]).unwrap();
        let mut acc = a.clone();
        acc.accumulate(&b).unwrap();
        assert_eq!(acc.n_re, 25);
        assert!((acc.trace() - a.trace() - b.trace()).abs() < 1e-12);
        let c = ObservationDraw::sufficient(3, 15, 0, 5, &mut rng).unwrap().gram(1.0, &[]).unwrap();
        assert!(acc.accumulate(&c).is_err());
    }

    #[test]
    fn mismatched_jammer_list_is_rejected() {
        let mut rng = substream(5, Purpose::ObservationH1, 0, 0);
        let draw = ObservationDraw::sufficient(2, 24, 1, 12, &mut rng).unwrap();
        assert!(draw.gram(1.0, &[]).is_err());
        assert!(ObservationDraw::sufficient(2, 12, 2, 12, &mut rng).is_err());
    }
}
