//! FFT helpers on a uniform periodic grid `x_j = -L/2 + j L / n`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct PeriodicSpectral {
    n: usize,
    length: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// Angular wavenumbers in FFT order; the Nyquist entry is zero.
    k: Vec<f64>,
}

impl std::fmt::Debug for PeriodicSpectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicSpectral").field("n", &self.n).field("length", &self.length).finish()
    }
}

impl PeriodicSpectral {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("spectral grid needs at least 2 points, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Config(format!("domain length must be positive, got {length}")));
        }
        let mut planner = FftPlanner::new();
        let base = 2.0 * PI / length;
        let k = (0..n)
            .map(|j| {
                if 2 * j < n {
                    base * j as f64
                } else if 2 * j == n {
                    0.0
                } else {
                    base * (j as f64 - n as f64)
                }
            })
            .collect();
        Ok(Self {
            n,
            length,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            k,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    /// Largest wavenumber magnitude kept by the dealiasing mask (or overall).
    pub fn max_wavenumber(&self, dealias: bool) -> f64 {
        self.k
            .iter()
            .enumerate()
            .filter(|&(j, _)| !dealias || self.keeps(j))
            .map(|(_, k)| k.abs())
            .fold(0.0, f64::max)
    }

    /// 2/3 rule: keep modes with index magnitude at most `n / 3`.
    pub fn keeps(&self, j: usize) -> bool {
        let m = if 2 * j <= self.n { j } else { self.n - j };
        3 * m <= self.n
    }

    pub fn forward_real(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        buf
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Inverse transform, normalized, real part.
    pub fn inverse_real(&self, spectrum: &[Complex64]) -> Vec<f64> {
        let mut buf = spectrum.to_vec();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|z| z.re * scale).collect()
    }

    /// `d^order/dx^order` of periodic samples.
    pub fn derivative(&self, values: &[f64], order: u32) -> Vec<f64> {
        let mut spec = self.forward_real(values);
        for (z, &k) in spec.iter_mut().zip(&self.k) {
            *z *= Complex64::new(0.0, k).powu(order);
        }
        self.inverse_real(&spec)
    }

    /// Samples of `f(x - shift)` for periodic samples of `f`, by Fourier interpolation.
    pub fn translate(&self, values: &[f64], shift: f64) -> Vec<f64> {
        let mut spec = self.forward_real(values);
        for (j, (z, &k)) in spec.iter_mut().zip(&self.k).enumerate() {
            if 2 * j == self.n {
                *z *= (k * shift).cos();
            } else {
                *z *= Complex64::from_polar(1.0, -k * shift);
            }
        }
        self.inverse_real(&spec)
    }
}
