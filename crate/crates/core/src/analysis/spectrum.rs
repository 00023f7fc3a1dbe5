use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{QabnError, Result};

use super::info::ImSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumBin {
    /// Cycles per step.
    pub frequency: f64,
    pub magnitude: f64,
}

/// One-sided DFT magnitudes, bins `k = 0..=n/2`, unitary (`1/sqrt(n)`)
/// scaling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub len: usize,
    pub bins: Vec<SpectrumBin>,
}

impl SpectrumReport {
    /// Sum of squared magnitudes over the full two-sided spectrum.
    pub fn total_power(&self) -> f64 {
        self.bins
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let mirrored = k != 0 && 2 * k != self.len;
                b.magnitude * b.magnitude * if mirrored { 2.0 } else { 1.0 }
            })
            .sum()
    }

    /// Bins sorted by descending magnitude, ties by frequency.
    pub fn ranked(&self) -> Vec<SpectrumBin> {
        let mut v = self.bins.clone();
        v.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude).then(a.frequency.total_cmp(&b.frequency)));
        v
    }

    /// `frequency,magnitude` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("frequency,magnitude\n");
        for b in &self.bins {
            out.push_str(&format!("{:.12},{:.12}\n", b.frequency, b.magnitude));
        }
        out
    }
}

pub fn dft_spectrum(series: &ImSeries) -> Result<SpectrumReport> {
    spectrum_of(&series.values())
}

/// [`dft_spectrum`] over raw values.
pub fn spectrum_of(values: &[f64]) -> Result<SpectrumReport> {
    let n = values.len();
    if n < 2 {
        return Err(QabnError::Domain(format!("spectrum needs at least 2 points, got {n}")));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    let bins = buf[..=n / 2]
        .iter()
        .enumerate()
        .map(|(k, c)| SpectrumBin { frequency: k as f64 / n as f64, magnitude: c.norm() * scale })
        .collect();
    Ok(SpectrumReport { len: n, bins })
}
