//! Per-node benefit weights.
//!
//! Each node `u` carries a benefit `p(u) >= 0` earned when only the positive
//! cascade activates it, and a disturbed benefit `q(u) <= p(u)` earned when
//! the rival cascade also reaches it. The derived weight `l(u) = p(u) - q(u)`
//! is the per-node loss caused by the rival and is always nonnegative.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq)]
pub struct BenefitProfile {
    p: Vec<f64>,
    q: Vec<f64>,
    l: Vec<f64>,
    p_total: f64,
    l_total: f64,
}

impl BenefitProfile {
    /// Build from explicit weights, validating `p(u) >= 0` and `q(u) <= p(u)`.
    pub fn from_values(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidParameter(format!(
                "p has {} entries, q has {}",
                p.len(),
                q.len()
            )));
        }
        for (u, (&pu, &qu)) in p.iter().zip(&q).enumerate() {
            if !pu.is_finite() || pu < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "p({u}) = {pu} must be finite and nonnegative"
                )));
            }
            if !qu.is_finite() || qu > pu {
                return Err(Error::InvalidParameter(format!(
                    "q({u}) = {qu} must be finite and at most p({u}) = {pu}"
                )));
            }
        }
        let l: Vec<f64> = p.iter().zip(&q).map(|(pu, qu)| pu - qu).collect();
        let p_total = p.iter().sum();
        let l_total = l.iter().sum();
        Ok(BenefitProfile {
            p,
            q,
            l,
            p_total,
            l_total,
        })
    }

    /// Sample `p(u) ~ Uniform[0,1]` and `q(u) ~ Uniform[-1, p(u)]` per node.
    pub fn generate(node_count: usize, seed: u64) -> Self {
        Self::generate_with(node_count, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Same sampling scheme, drawing from a caller-supplied stream.
    pub fn generate_with<R: Rng>(node_count: usize, rng: &mut R) -> Self {
        let mut p = Vec::with_capacity(node_count);
        let mut q = Vec::with_capacity(node_count);
        for _ in 0..node_count {
            let pu: f64 = rng.gen_range(0.0..=1.0);
            let qu: f64 = rng.gen_range(-1.0..=pu);
            p.push(pu);
            q.push(qu);
        }
        Self::from_values(p, q).expect("sampled weights satisfy q <= p")
    }

    /// `p = 1`, `q = 0` everywhere: reduces the overall benefit to plain
    /// influence spread when the rival seed set is empty.
    pub fn unit(node_count: usize) -> Self {
        Self::from_values(vec![1.0; node_count], vec![0.0; node_count])
            .expect("unit weights are valid")
    }

    /// Constant weights on every node.
    pub fn constant(node_count: usize, p: f64, q: f64) -> Result<Self> {
        Self::from_values(vec![p; node_count], vec![q; node_count])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn p(&self, u: NodeId) -> f64 {
        self.p[u]
    }

    pub fn q(&self, u: NodeId) -> f64 {
        self.q[u]
    }

    pub fn l(&self, u: NodeId) -> f64 {
        self.l[u]
    }

    pub fn p_values(&self) -> &[f64] {
        &self.p
    }

    pub fn l_values(&self) -> &[f64] {
        &self.l
    }

    /// `p(V)`.
    pub fn p_total(&self) -> f64 {
        self.p_total
    }

    /// `l(V)`.
    pub fn l_total(&self) -> f64 {
        self.l_total
    }

    /// Load a weights file with `node p q` per line (dense node ids; every
    /// node exactly once). Lines starting with `#` are skipped.
    pub fn load_weights(path: impl AsRef<Path>, node_count: usize) -> Result<Self> {
        let path = path.as_ref();
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let file = fs::File::open(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let mut p = vec![f64::NAN; node_count];
        let mut q = vec![f64::NAN; node_count];
        let mut seen = vec![false; node_count];
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(parse_err(
                    lineno,
                    format!("expected 3 fields, found {}", tokens.len()),
                ));
            }
            let u: usize = tokens[0]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad node id {:?}", tokens[0])))?;
            if u >= node_count {
                return Err(Error::NodeOutOfRange {
                    id: u,
                    nodes: node_count,
                });
            }
            if seen[u] {
                return Err(parse_err(lineno, format!("node {u} listed twice")));
            }
            seen[u] = true;
            p[u] = tokens[1]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad weight {:?}", tokens[1])))?;
            q[u] = tokens[2]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad weight {:?}", tokens[2])))?;
        }
        if let Some(u) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!(
                "weights file is missing node {u}"
            )));
        }
        Self::from_values(p, q)
    }

    pub fn save_weights(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = fs::File::create(path)?;
        for u in 0..self.len() {
            writeln!(file, "{} {} {}", u, self.p[u], self.q[u])?;
        }
        Ok(())
    }
}
