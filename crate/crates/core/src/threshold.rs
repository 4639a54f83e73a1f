//! Threshold graphs from creation sequences, their integral Laplacian spectra,
//! and the extremal Laplacian-energy search over them.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::ThresholdError;
use crate::exec::Exec;
use crate::graph::{labeled_graph_count, pair_count, DegreeSequence, Graph, MAX_ENUMERATION_N};
use crate::spectral::{laplacian_energy, laplacian_spectrum};

/// Bit `k` set means vertex `k + 1` joins as a dominating vertex; clear means
/// it joins isolated. Vertex 0 is implicit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CreationSequence(pub Vec<bool>);

impl CreationSequence {
    /// Sequence for `n` vertices from the low `n - 1` bits of `code`, bit `k` of the code
    /// giving element `k`.
    pub fn from_code(n: usize, code: u64) -> Self {
        CreationSequence((0..n.saturating_sub(1)).map(|k| (code >> k) & 1 == 1).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    /// `sum over dominating additions of the number of vertices already present`.
    pub fn edge_count(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k + 1)
            .sum()
    }
}

impl std::fmt::Display for CreationSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CreationSequence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid creation-sequence symbol `{other}`")),
            })
            .collect::<Result<_, _>>()
            .map(CreationSequence)
    }
}

pub fn build_threshold(seq: &CreationSequence) -> Graph {
    let mut g = Graph::empty(seq.n()).expect("creation sequences have at most 63 bits");
    for (k, &dominating) in seq.0.iter().enumerate() {
        if dominating {
            let v = k + 1;
            for u in 0..v {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// `d*_k = |{i : d_i >= k}|` for `k = 1..n`.
pub fn conjugate_degrees(d: &DegreeSequence) -> Vec<usize> {
    let n = d.0.len();
    (1..=n).map(|k| d.0.iter().filter(|&&x| x >= k).count()).collect()
}

/// Exact Laplacian spectrum of a threshold graph, descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerSpectrum(pub Vec<usize>);

impl IntegerSpectrum {
    /// `n * LE(G) = sum |n * mu_i - 2m|`, an exact integer.
    pub fn scaled_energy(&self) -> u64 {
        let n = self.0.len() as i64;
        let two_m: i64 = self.0.iter().map(|&x| x as i64).sum();
        self.0.iter().map(|&x| (n * x as i64 - two_m).unsigned_abs()).sum()
    }

    pub fn energy(&self) -> f64 {
        self.scaled_energy() as f64 / self.0.len() as f64
    }
}

pub fn threshold_spectrum_exact(seq: &CreationSequence) -> IntegerSpectrum {
    IntegerSpectrum(conjugate_degrees(&build_threshold(seq).degrees()))
}

/// Largest `n` accepted by [`max_energy_threshold`].
pub const MAX_THRESHOLD_SEARCH_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdMax {
    pub sequence: CreationSequence,
    pub spectrum: IntegerSpectrum,
    pub energy: f64,
}

/// Maximum-energy threshold graph with `n` vertices and `m` edges.
///
/// Enumerates all `2^(n-1)` creation sequences; ties go to the
/// lexicographically smallest sequence. Energies are compared exactly.
pub fn max_energy_threshold(n: usize, m: usize, exec: Exec) -> Result<ThresholdMax, ThresholdError> {
    if !(1..=MAX_THRESHOLD_SEARCH_N).contains(&n) {
        return Err(ThresholdError::VertexCount {
            n,
            lo: 1,
            hi: MAX_THRESHOLD_SEARCH_N,
        });
    }
    let max = pair_count(n);
    if m > max {
        return Err(ThresholdError::EdgeCount { n, m, max });
    }
    let best = exec
        .filter_map_reduce(
            0..1u64 << (n - 1),
            |code| {
                let seq = CreationSequence::from_code(n, code);
                (seq.edge_count() == m).then(|| {
                    let spec = threshold_spectrum_exact(&seq);
                    (spec.scaled_energy(), seq, spec)
                })
            },
            |a, b| match a.0.cmp(&b.0) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => {
                    if a.1 <= b.1 {
                        a
                    } else {
                        b
                    }
                }
            },
        )
        .expect("every m in 0..=n(n-1)/2 is realized by some creation sequence");
    let (_, sequence, spectrum) = best;
    let energy = spectrum.energy();
    Ok(ThresholdMax {
        sequence,
        spectrum,
        energy,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Row {
    pub m: usize,
    pub graphs: u64,
    pub global_max: f64,
    /// Edge mask of a labeled graph attaining `global_max`.
    pub global_witness: u64,
    pub threshold_max: f64,
    pub threshold_sequence: CreationSequence,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub tol: f64,
    pub rows: Vec<Theorem1Row>,
}

impl Theorem1Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Compares, for every `m`, the best threshold energy against the exhaustive
/// maximum over all labeled graphs on `n` vertices (eigensolver energies).
pub fn verify_theorem1(n: usize, tol: f64, exec: Exec) -> Result<Theorem1Report, ThresholdError> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(ThresholdError::VertexCount {
            n,
            lo: 1,
            hi: MAX_ENUMERATION_N,
        });
    }
    let pairs = pair_count(n);
    // per m: (count, best energy, witness mask)
    type Acc = Vec<(u64, f64, u64)>;
    let empty = || -> Acc { vec![(0, f64::NEG_INFINITY, 0); pairs + 1] };
    let per_m = exec.fold_reduce(
        0..labeled_graph_count(n),
        empty,
        |mut acc: Acc, mask| {
            let g = Graph::from_edge_mask(n, mask).expect("n validated");
            let le = laplacian_energy(&laplacian_spectrum(&g).expect("Laplacians converge"));
            let slot = &mut acc[g.m()];
            slot.0 += 1;
            if le > slot.1 || (le == slot.1 && mask < slot.2) {
                slot.1 = le;
                slot.2 = mask;
            }
            acc
        },
        |mut a: Acc, b: Acc| {
            for (x, y) in a.iter_mut().zip(b) {
                x.0 += y.0;
                if y.1 > x.1 || (y.1 == x.1 && y.2 < x.2) {
                    x.1 = y.1;
                    x.2 = y.2;
                }
            }
            a
        },
    );
    let mut rows = Vec::with_capacity(pairs + 1);
    for (m, (graphs, global_max, global_witness)) in per_m.into_iter().enumerate() {
        let tmax = max_energy_threshold(n, m, Exec::Sequential)?;
        rows.push(Theorem1Row {
            m,
            graphs,
            global_max,
            global_witness,
            threshold_max: tmax.energy,
            pass: tmax.energy >= global_max - tol,
            threshold_sequence: tmax.sequence,
        });
    }
    Ok(Theorem1Report { n, tol, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CreationSequence {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let k4 = build_threshold(&seq("111"));
        assert_eq!(k4.m(), 6);
        assert_eq!(build_threshold(&seq("000")).m(), 0);
        let g = build_threshold(&seq("110"));
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.degree(3), 0);
        assert_eq!(seq("110").edge_count(), 3);
        assert_eq!(build_threshold(&CreationSequence(vec![])).n(), 1);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate_degrees(&DegreeSequence(vec![3, 3, 3, 3])), vec![4, 4, 4, 0]);
        assert_eq!(conjugate_degrees(&DegreeSequence(vec![3, 1, 1, 1])), vec![4, 1, 1, 0]);
        assert_eq!(conjugate_degrees(&DegreeSequence(vec![0, 0, 0])), vec![0, 0, 0]);
    }

    #[test]
    fn exact_spectra() {
        assert_eq!(threshold_spectrum_exact(&seq("111")).0, vec![4, 4, 4, 0]);
        assert_eq!(threshold_spectrum_exact(&seq("110")).0, vec![3, 3, 0, 0]);
        assert_eq!(threshold_spectrum_exact(&seq("000")).0, vec![0, 0, 0, 0]);
    }

    #[test]
    fn energies() {
        assert_eq!(threshold_spectrum_exact(&seq("111")).energy(), 6.0);
        assert_eq!(threshold_spectrum_exact(&seq("001")).energy(), 5.0);
        assert_eq!(threshold_spectrum_exact(&seq("000")).energy(), 0.0);
    }

    #[test]
    fn extremal_examples() {
        let r = max_energy_threshold(4, 3, Exec::default()).unwrap();
        assert_eq!(r.sequence, seq("110"));
        assert_eq!(r.energy, 6.0);
        let r = max_energy_threshold(4, 6, Exec::default()).unwrap();
        assert_eq!(r.sequence, seq("111"));
        assert_eq!(r.energy, 6.0);
        let r = max_energy_threshold(3, 0, Exec::default()).unwrap();
        assert_eq!(r.energy, 0.0);
        assert!(max_energy_threshold(4, 7, Exec::default()).is_err());
        assert!(max_energy_threshold(21, 0, Exec::default()).is_err());
    }

    #[test]
    fn sequential_and_parallel_searches_agree() {
        for m in [0, 7, 20, 45] {
            assert_eq!(
                max_energy_threshold(10, m, Exec::Sequential).unwrap(),
                max_energy_threshold(10, m, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn theorem1_n4() {
        let r = verify_theorem1(4, 1e-6, Exec::default()).unwrap();
        assert!(r.all_pass());
        let row = &r.rows[3];
        assert_eq!(row.graphs, 20);
        assert!((row.global_max - 6.0).abs() < 1e-9);
        assert_eq!(row.threshold_max, 6.0);
        assert_eq!(r.rows.iter().map(|r| r.graphs).sum::<u64>(), 64);
    }

    /// Induced 4-vertex subgraph is P4, C4 or 2K2.
    fn has_forbidden_quad(g: &Graph) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        let mut deg = [0usize; 4];
                        let mut m = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                if g.has_edge(vs[i], vs[j]) {
                                    deg[i] += 1;
                                    deg[j] += 1;
                                    m += 1;
                                }
                            }
                        }
                        deg.sort_unstable();
                        let p4 = m == 3 && deg == [1, 1, 2, 2];
                        let c4 = m == 4 && deg == [2, 2, 2, 2];
                        let two_k2 = m == 2 && deg == [1, 1, 1, 1];
                        if p4 || c4 || two_k2 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn built_graphs_are_threshold() {
        for n in 1..=7 {
            for code in 0..1u64 << (n - 1) {
                let g = build_threshold(&CreationSequence::from_code(n, code));
                assert!(!has_forbidden_quad(&g), "n={n} code={code:b}");
            }
        }
        let p4 = crate::family::Family::Path(4).generate(0).unwrap();
        assert!(has_forbidden_quad(&p4));
    }

    #[test]
    fn conjugate_sums_to_twice_m() {
        for g in crate::graph::enumerate_labeled_graphs(5).unwrap() {
            let c = conjugate_degrees(&g.degrees());
            assert_eq!(c.iter().sum::<usize>(), 2 * g.m());
            assert!(c.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
