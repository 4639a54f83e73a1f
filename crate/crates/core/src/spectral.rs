//! Laplacian spectra.
//!
//! Eigenvalues come from a cyclic Jacobi solver on a dense copy of `L = D - A`.
//! Laplacians are positive semidefinite, so the solver clamps values in
//! `(-NEGATIVE_TOL, 0)` to zero and treats anything lower as a bug.

use crate::error::SpectralError;
use crate::graph::Graph;

/// Rounding floor for negative eigenvalues.
pub const NEGATIVE_TOL: f64 = 1e-9;
/// Convergence threshold on the off-diagonal Frobenius norm, scaled by `n`.
pub const JACOBI_OFF_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Comparison tolerance `1e-8 * n` used by every downstream inequality check.
pub fn default_tol(n: usize) -> f64 {
    1e-8 * n as f64
}

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.n + j] = x;
        self.entries[j * self.n + i] = x;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// `L(G) = D(G) - A(G)`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.n();
    let mut l = SymmetricMatrix::zeros(n);
    for i in 0..n {
        l.set(i, i, g.degree(i) as f64);
    }
    for (i, j) in g.edges() {
        l.set(i, j, -1.0);
    }
    l
}

/// Laplacian eigenvalues `mu_1 >= ... >= mu_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    m: usize,
    tol: f64,
}

impl Spectrum {
    /// Wraps externally computed eigenvalues, sorting and clamping them.
    pub fn from_values(mut values: Vec<f64>, m: usize) -> Result<Self, SpectralError> {
        let n = values.len();
        let tol = default_tol(n.max(1));
        values.sort_by(|a, b| b.total_cmp(a));
        for x in values.iter_mut() {
            if *x < -NEGATIVE_TOL {
                return Err(SpectralError::Negative {
                    value: *x,
                    tol: NEGATIVE_TOL,
                });
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        Ok(Spectrum { values, m, tol })
    }

    /// Descending eigenvalues.
    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Edge count of the graph this spectrum came from.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `mu_i`, 1-indexed.
    #[inline]
    pub fn mu(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    /// Sum of the `t` largest eigenvalues.
    pub fn partial_sum(&self, t: usize) -> Result<f64, SpectralError> {
        if t == 0 || t > self.n() {
            return Err(SpectralError::IndexRange { t, n: self.n() });
        }
        Ok(self.values[..t].iter().sum())
    }

    /// All prefix sums `S_1, ..., S_n`.
    pub fn prefix_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

/// Convenience: `eigenvalues_desc(laplacian(g))`.
pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    eigenvalues_desc(&laplacian(g))
}

/// Full descending spectrum of a graph Laplacian via cyclic Jacobi rotations.
///
/// The edge count recorded in the result is `trace / 2`.
pub fn eigenvalues_desc(mat: &SymmetricMatrix) -> Result<Spectrum, SpectralError> {
    let n = mat.n();
    let m = (mat.trace() / 2.0).round() as usize;
    let mut a = mat.entries.clone();
    jacobi_diagonalize(n, &mut a)?;
    Spectrum::from_values((0..n).map(|i| a[i * n + i]).collect(), m)
}

fn off_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Drives `a` (row-major, symmetric) to diagonal form in place.
fn jacobi_diagonalize(n: usize, a: &mut [f64]) -> Result<(), SpectralError> {
    let threshold = JACOBI_OFF_TOL * n as f64;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(n, a) <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }
    let off = off_norm(n, a);
    if off <= threshold {
        Ok(())
    } else {
        Err(SpectralError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_norm: off,
        })
    }
}

/// Spectrum of the complement: `mu_i(co-G) = n - mu_{n-i}(G)` for `i < n`, and
/// `mu_n(co-G) = 0`.
pub fn complement_spectrum(spec: &Spectrum) -> Spectrum {
    let n = spec.n();
    let nf = n as f64;
    let mut values = Vec::with_capacity(n);
    for i in 1..n {
        values.push((nf - spec.mu(n - i)).max(0.0));
    }
    values.push(0.0);
    Spectrum {
        values,
        m: crate::graph::pair_count(n) - spec.m(),
        tol: spec.tol(),
    }
}

/// Laplacian energy `sum_i |mu_i - 2m/n|`.
pub fn laplacian_energy(spec: &Spectrum) -> f64 {
    let mean = 2.0 * spec.m() as f64 / spec.n() as f64;
    spec.values().iter().map(|&x| (x - mean).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn assert_spectrum(g: &Graph, expected: &[f64]) {
        let s = laplacian_spectrum(g).unwrap();
        assert_eq!(s.n(), expected.len());
        for (a, b) in s.values().iter().zip(expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    fn k(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn laplacian_of_p3() {
        let l = laplacian(&p3());
        assert_eq!(l.row(0), &[1.0, -1.0, 0.0]);
        assert_eq!(l.row(1), &[-1.0, 2.0, -1.0]);
        assert_eq!(l.row(2), &[0.0, -1.0, 1.0]);
        assert_eq!(l.trace(), 4.0);
    }

    #[test]
    fn laplacian_small_cases() {
        assert_eq!(laplacian(&Graph::empty(3).unwrap()), SymmetricMatrix::zeros(3));
        let l = laplacian(&k(2));
        assert_eq!(l.row(0), &[1.0, -1.0]);
        assert_eq!(l.row(1), &[-1.0, 1.0]);
    }

    #[test]
    fn known_spectra() {
        assert_spectrum(&k(4), &[4.0, 4.0, 4.0, 0.0]);
        assert_spectrum(&p3(), &[3.0, 1.0, 0.0]);
        assert_spectrum(&Graph::empty(5).unwrap(), &[0.0; 5]);
        assert_spectrum(&Graph::empty(1).unwrap(), &[0.0]);
    }

    #[test]
    fn complement_spectrum_examples() {
        let s = complement_spectrum(&laplacian_spectrum(&k(4)).unwrap());
        assert_eq!(s.values(), &[0.0; 4]);
        assert_eq!(s.m(), 0);
        let s = complement_spectrum(&laplacian_spectrum(&p3()).unwrap());
        for (a, b) in s.values().iter().zip([2.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-10);
        }
        let s = complement_spectrum(&laplacian_spectrum(&Graph::empty(4).unwrap()).unwrap());
        assert_eq!(s.values(), &[4.0, 4.0, 4.0, 0.0]);
        assert_eq!(s.m(), 6);
    }

    #[test]
    fn energy_examples() {
        let le = |g: &Graph| laplacian_energy(&laplacian_spectrum(g).unwrap());
        assert_abs_diff_eq!(le(&k(4)), 6.0, epsilon = 1e-9);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_abs_diff_eq!(le(&star), 5.0, epsilon = 1e-9);
        assert_eq!(le(&Graph::empty(4).unwrap()), 0.0);
    }

    #[test]
    fn partial_sum_range() {
        let s = laplacian_spectrum(&p3()).unwrap();
        assert!(s.partial_sum(0).is_err());
        assert!(s.partial_sum(4).is_err());
        assert_abs_diff_eq!(s.partial_sum(1).unwrap(), 3.0, epsilon = 1e-10);
    }

    #[test]
    fn negative_eigenvalues_are_rejected() {
        assert!(Spectrum::from_values(vec![1.0, -1e-6], 0).is_err());
        let s = Spectrum::from_values(vec![-1e-12, 2.0], 1).unwrap();
        assert_eq!(s.values(), &[2.0, 0.0]);
    }

    #[test]
    fn solver_is_deterministic() {
        let g = crate::family::Family::Gnp(30, 0.3).generate(5).unwrap();
        assert_eq!(laplacian_spectrum(&g).unwrap(), laplacian_spectrum(&g).unwrap());
    }
}
