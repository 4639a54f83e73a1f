//! Named graph families used as scan corpora.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{Graph, MAX_VERTICES};

/// A graph family with its size parameters.
///
/// Textual form (as accepted by the CLI): `path:N`, `cycle:N`, `star:N`,
/// `complete:N`, `empty:N`, `bipartite:A:B`, `gnp:N:P`, `tree:N`, and
/// `mixed:LO:HI` (uniform `n` in `LO..=HI`, uniform edge probability).
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    /// `K_{1,n-1}` with the center at vertex 0.
    Star(usize),
    Complete(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
    Gnp(usize, f64),
    RandomTree(usize),
    Mixed(usize, usize),
}

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::FamilyParams(msg.into())
}

fn check_n(n: usize) -> Result<(), GraphError> {
    if n == 0 || n > MAX_VERTICES {
        Err(GraphError::VertexCount(n))
    } else {
        Ok(())
    }
}

impl Family {
    /// Whether `generate` depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, Family::Gnp(..) | Family::RandomTree(_) | Family::Mixed(..))
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            Family::Path(n) | Family::Star(n) | Family::Complete(n) | Family::Empty(n) => check_n(n),
            Family::RandomTree(n) => check_n(n),
            Family::Cycle(n) => {
                check_n(n)?;
                if n < 3 {
                    return Err(bad(format!("cycle needs n >= 3, got {n}")));
                }
                Ok(())
            }
            Family::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(bad("bipartite sides must be nonempty"));
                }
                check_n(a + b)
            }
            Family::Gnp(n, p) => {
                check_n(n)?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad(format!("edge probability {p} outside [0, 1]")));
                }
                Ok(())
            }
            Family::Mixed(lo, hi) => {
                check_n(lo)?;
                check_n(hi)?;
                if lo > hi {
                    return Err(bad(format!("empty size range {lo}..={hi}")));
                }
                Ok(())
            }
        }
    }

    /// Builds one member. Deterministic kinds ignore `seed`.
    pub fn generate(&self, seed: u64) -> Result<Graph, GraphError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match *self {
            Family::Path(n) => Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()),
            Family::Cycle(n) => {
                let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                edges.push((n - 1, 0));
                Graph::from_edges(n, &edges)
            }
            Family::Star(n) => Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>()),
            Family::Complete(n) => Ok(Graph::empty(n)?.complement()),
            Family::Empty(n) => Graph::empty(n),
            Family::CompleteBipartite(a, b) => {
                let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
                Graph::from_edges(a + b, &edges)
            }
            Family::Gnp(n, p) => gnp(n, p, &mut rng),
            Family::RandomTree(n) => prufer_tree(n, &mut rng),
            Family::Mixed(lo, hi) => {
                let n = rng.gen_range(lo..=hi);
                let p = rng.gen::<f64>();
                gnp(n, p, &mut rng)
            }
        }
    }
}

fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if rng.gen::<f64>() < p {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Uniform random labeled tree: decode a uniform Prüfer sequence.
fn prufer_tree(n: usize, rng: &mut impl Rng) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    if n < 2 {
        return Ok(g);
    }
    if n == 2 {
        g.add_edge(0, 1)?;
        return Ok(g);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    for (u, v) in decode_prufer(n, &code) {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub(crate) fn decode_prufer(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| remaining[v] == 1).expect("a leaf always exists");
        edges.push((leaf, c));
        remaining[leaf] = 0;
        remaining[c] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Empty(n) => write!(f, "empty:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "bipartite:{a}:{b}"),
            Family::Gnp(n, p) => write!(f, "gnp:{n}:{p}"),
            Family::RandomTree(n) => write!(f, "tree:{n}"),
            Family::Mixed(lo, hi) => write!(f, "mixed:{lo}:{hi}"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |i: usize| -> Result<usize, GraphError> {
            parts
                .get(i)
                .ok_or_else(|| bad(format!("`{s}`: missing parameter {i}")))?
                .parse()
                .map_err(|_| bad(format!("`{s}`: parameter {i} is not an integer")))
        };
        let arity = |k: usize| -> Result<(), GraphError> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(bad(format!("`{s}`: expected {k} parameter(s)")))
            }
        };
        let fam = match parts[0] {
            "path" => arity(1).and(int(1).map(Family::Path)),
            "cycle" => arity(1).and(int(1).map(Family::Cycle)),
            "star" => arity(1).and(int(1).map(Family::Star)),
            "complete" => arity(1).and(int(1).map(Family::Complete)),
            "empty" => arity(1).and(int(1).map(Family::Empty)),
            "tree" => arity(1).and(int(1).map(Family::RandomTree)),
            "bipartite" => arity(2).and_then(|_| Ok(Family::CompleteBipartite(int(1)?, int(2)?))),
            "mixed" => arity(2).and_then(|_| Ok(Family::Mixed(int(1)?, int(2)?))),
            "gnp" => arity(2).and_then(|_| {
                let p = parts[2]
                    .parse::<f64>()
                    .map_err(|_| bad(format!("`{s}`: probability is not a number")))?;
                Ok(Family::Gnp(int(1)?, p))
            }),
            other => Err(bad(format!("unknown family `{other}`"))),
        }?;
        fam.validate()?;
        Ok(fam)
    }
}
