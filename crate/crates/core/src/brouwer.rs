//! Partial eigenvalue sums against the bound `m + t(t+1)/2`.

use serde::Serialize;

use crate::error::SpectralError;
use crate::graph::Graph;
use crate::spectral::{complement_spectrum, default_tol, laplacian_spectrum, Spectrum};

/// `m + t(t+1)/2`, exact.
pub fn brouwer_bound(m: usize, t: usize) -> u64 {
    m as u64 + (t as u64 * (t as u64 + 1)) / 2
}

/// `S_t - m - t(t+1)/2`. The integer bound is subtracted from the float sum.
pub fn excess_from_spectrum(spec: &Spectrum, t: usize) -> Result<f64, SpectralError> {
    Ok(spec.partial_sum(t)? - brouwer_bound(spec.m(), t) as f64)
}

pub fn partial_sum(spec: &Spectrum, t: usize) -> Result<f64, SpectralError> {
    spec.partial_sum(t)
}

pub fn excess(g: &Graph, t: usize) -> Result<f64, SpectralError> {
    excess_from_spectrum(&laplacian_spectrum(g)?, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Holds,
    /// Excess in `(0, tol]`.
    Tight,
    Violated,
}

impl RowStatus {
    pub fn classify(excess: f64, tol: f64) -> Self {
        if excess > tol {
            RowStatus::Violated
        } else if excess > 0.0 {
            RowStatus::Tight
        } else {
            RowStatus::Holds
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrouwerRow {
    pub t: usize,
    pub partial_sum: f64,
    pub bound: u64,
    pub excess: f64,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrouwerReport {
    pub n: usize,
    pub m: usize,
    pub tol: f64,
    pub rows: Vec<BrouwerRow>,
}

impl BrouwerReport {
    pub fn from_spectrum(spec: &Spectrum, tol: f64) -> Self {
        let m = spec.m();
        let rows = spec
            .prefix_sums()
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let t = i + 1;
                let bound = brouwer_bound(m, t);
                let excess = s - bound as f64;
                BrouwerRow {
                    t,
                    partial_sum: s,
                    bound,
                    excess,
                    status: RowStatus::classify(excess, tol),
                }
            })
            .collect();
        BrouwerReport {
            n: spec.n(),
            m,
            tol,
            rows,
        }
    }

    /// Values of `t` with excess above the tolerance.
    pub fn violations(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.status == RowStatus::Violated)
            .map(|r| r.t)
            .collect()
    }

    /// Worst row status over all `t`.
    pub fn verdict(&self) -> RowStatus {
        if self.rows.iter().any(|r| r.status == RowStatus::Violated) {
            RowStatus::Violated
        } else if self.rows.iter().any(|r| r.status == RowStatus::Tight) {
            RowStatus::Tight
        } else {
            RowStatus::Holds
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict() != RowStatus::Violated
    }

    /// Largest excess and the first `t` attaining it.
    pub fn worst(&self) -> (usize, f64) {
        self.rows
            .iter()
            .fold((0, f64::NEG_INFINITY), |(bt, be), r| {
                if r.excess > be {
                    (r.t, r.excess)
                } else {
                    (bt, be)
                }
            })
    }
}

/// Full report for `t = 1..n`. `tol` defaults to `1e-8 * n`.
pub fn check_all_t(g: &Graph, tol: Option<f64>) -> Result<BrouwerReport, SpectralError> {
    let spec = laplacian_spectrum(g)?;
    Ok(BrouwerReport::from_spectrum(
        &spec,
        tol.unwrap_or_else(|| default_tol(g.n())),
    ))
}

/// `E_s(G) - E_{n-s-1}(co-G)` with both sides from independent eigensolves.
pub fn duality_excess_gap(g: &Graph, s: usize) -> Result<f64, SpectralError> {
    let n = g.n();
    if s == 0 || s + 2 > n {
        return Err(SpectralError::IndexRange { t: s, n });
    }
    let spec = laplacian_spectrum(g)?;
    let co = laplacian_spectrum(&g.complement())?;
    duality_gap_from_spectra(&spec, &co, s)
}

/// Same as [`duality_excess_gap`] with spectra supplied by the caller.
pub fn duality_gap_from_spectra(
    spec: &Spectrum,
    co_spec: &Spectrum,
    s: usize,
) -> Result<f64, SpectralError> {
    let n = spec.n();
    if s == 0 || s + 2 > n {
        return Err(SpectralError::IndexRange { t: s, n });
    }
    Ok(excess_from_spectrum(spec, s)? - excess_from_spectrum(co_spec, n - s - 1)?)
}

/// Largest `|duality gap|` over `s = 1..=n-2` (0 when `n < 3`).
pub fn max_duality_gap(spec: &Spectrum, co_spec: &Spectrum) -> f64 {
    let n = spec.n();
    (1..n.saturating_sub(1))
        .map(|s| duality_gap_from_spectra(spec, co_spec, s).expect("s in range").abs())
        .fold(0.0, f64::max)
}

/// Largest element-wise difference between the transformed spectrum and a
/// direct solve on the complement.
pub fn complement_spectrum_error(spec: &Spectrum, co_spec: &Spectrum) -> f64 {
    complement_spectrum(spec)
        .values()
        .iter()
        .zip(co_spec.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
