//! Directed social graph with two per-edge activation probability maps, one
//! for the positive cascade and one for the rival cascade, plus edge-list
//! ingestion and JSON snapshots.
//!
//! Node ids are remapped to a dense `0..n` range at load time; the original
//! ids are kept in an id-translation table for reporting.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::benefit::BenefitProfile;
use crate::error::{Error, Result};

pub type NodeId = usize;

/// Which of the two simultaneously diffusing cascades an object belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cascade {
    Positive,
    Rival,
}

/// How edge probabilities are assigned while loading an edge list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityRule {
    /// `pp(u,v) = pr(u,v) = 1 / |N-(v)|`, computed after the whole graph is
    /// loaded (the weighted-cascade convention).
    InDegreeReciprocal,
    /// Probabilities come from the third (and optional fourth) column of the
    /// input file; a missing fourth column makes the rival map equal the
    /// positive one.
    ExplicitColumns,
    /// Both maps constant.
    Constant(f64),
}

/// A set of seed nodes tagged with the cascade it starts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSet {
    members: BTreeSet<NodeId>,
    role: Cascade,
}

impl SeedSet {
    pub fn positive<I: IntoIterator<Item = NodeId>>(ids: I) -> Self {
        SeedSet {
            members: ids.into_iter().collect(),
            role: Cascade::Positive,
        }
    }

    pub fn rival<I: IntoIterator<Item = NodeId>>(ids: I) -> Self {
        SeedSet {
            members: ids.into_iter().collect(),
            role: Cascade::Rival,
        }
    }

    pub fn members(&self) -> &BTreeSet<NodeId> {
        &self.members
    }

    pub fn role(&self) -> Cascade {
        self.role
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.members.contains(&u)
    }

    /// Members as a sorted vector.
    pub fn to_vec(&self) -> Vec<NodeId> {
        self.members.iter().copied().collect()
    }

    /// Check that every member is a valid node of an `n`-node graph.
    pub fn validate(&self, node_count: usize) -> Result<()> {
        for &u in &self.members {
            if u >= node_count {
                return Err(Error::NodeOutOfRange {
                    id: u,
                    nodes: node_count,
                });
            }
        }
        Ok(())
    }
}

/// Bookkeeping returned by the edge-list loader.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadStats {
    /// Input lines dropped because src == dst.
    pub dropped_self_loops: usize,
}

/// Serializable form of a network plus optional node weights.
///
/// Schema: `{nodes, edges: [[s, t, pp, pr]], weights: [[u, p, q]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkSnapshot {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, f64, f64)>,
    pub weights: Vec<(usize, f64, f64)>,
}

/// A directed graph with dense node ids `0..n`, an edge list canonically
/// ordered by `(src, dst)`, and two probability maps over the edges.
///
/// Immutable after construction; share freely across threads.
#[derive(Debug, Clone)]
pub struct SocialNetwork {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    pp: Vec<f64>,
    pr: Vec<f64>,
    /// Per node: outgoing `(edge index, target)`.
    out_edges: Vec<Vec<(usize, NodeId)>>,
    /// Per node: incoming `(edge index, source)`.
    in_edges: Vec<Vec<(usize, NodeId)>>,
    /// Dense id -> id in the input file. Identity for programmatic graphs.
    original_ids: Vec<u64>,
}

fn validate_probability(p: f64, src: u64, dst: u64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 {
        return Err(Error::InvalidProbability { src, dst, value: p });
    }
    Ok(())
}

impl SocialNetwork {
    /// Build a network from explicit `(src, dst, pp, pr)` rows. Node ids must
    /// already be dense. Self-loops and duplicate directed edges are errors.
    pub fn new(node_count: usize, rows: Vec<(NodeId, NodeId, f64, f64)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidParameter(
                "node_count must be positive".into(),
            ));
        }
        let mut rows = rows;
        rows.sort_by_key(|&(s, t, _, _)| (s, t));
        let mut edges = Vec::with_capacity(rows.len());
        let mut pp = Vec::with_capacity(rows.len());
        let mut pr = Vec::with_capacity(rows.len());
        for (i, &(s, t, a, b)) in rows.iter().enumerate() {
            if s >= node_count {
                return Err(Error::NodeOutOfRange {
                    id: s,
                    nodes: node_count,
                });
            }
            if t >= node_count {
                return Err(Error::NodeOutOfRange {
                    id: t,
                    nodes: node_count,
                });
            }
            if s == t {
                return Err(Error::SelfLoop(s as u64));
            }
            if i > 0 && rows[i - 1].0 == s && rows[i - 1].1 == t {
                return Err(Error::DuplicateEdge {
                    src: s as u64,
                    dst: t as u64,
                });
            }
            validate_probability(a, s as u64, t as u64)?;
            validate_probability(b, s as u64, t as u64)?;
            edges.push((s, t));
            pp.push(a);
            pr.push(b);
        }
        let mut out_edges = vec![Vec::new(); node_count];
        let mut in_edges = vec![Vec::new(); node_count];
        for (idx, &(s, t)) in edges.iter().enumerate() {
            out_edges[s].push((idx, t));
            in_edges[t].push((idx, s));
        }
        let original_ids = (0..node_count as u64).collect();
        Ok(SocialNetwork {
            node_count,
            edges,
            pp,
            pr,
            out_edges,
            in_edges,
            original_ids,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Activation probability of edge `idx` under the given cascade.
    pub fn probability(&self, idx: usize, cascade: Cascade) -> f64 {
        match cascade {
            Cascade::Positive => self.pp[idx],
            Cascade::Rival => self.pr[idx],
        }
    }

    pub fn positive_probabilities(&self) -> &[f64] {
        &self.pp
    }

    pub fn rival_probabilities(&self) -> &[f64] {
        &self.pr
    }

    /// Outgoing `(edge index, target)` pairs of `u`.
    pub fn out_edges(&self, u: NodeId) -> &[(usize, NodeId)] {
        &self.out_edges[u]
    }

    /// Incoming `(edge index, source)` pairs of `v`.
    pub fn in_edges(&self, v: NodeId) -> &[(usize, NodeId)] {
        &self.in_edges[v]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_edges[u].len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_edges[v].len()
    }

    /// Dense id -> id used in the source file.
    pub fn original_id(&self, u: NodeId) -> u64 {
        self.original_ids[u]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Dense id of an original id, if present.
    pub fn dense_id(&self, original: u64) -> Option<NodeId> {
        self.original_ids.binary_search(&original).ok()
    }

    /// Load a whitespace-separated edge list: `src dst [pp [pr]]` per line.
    /// Lines starting with `#` and blank lines are skipped. Self-loops are
    /// dropped and counted; duplicate directed edges are rejected. Node ids
    /// are remapped onto `0..n` in ascending order of the original ids.
    pub fn load_edge_list(
        path: impl AsRef<Path>,
        undirected: bool,
        rule: ProbabilityRule,
    ) -> Result<(SocialNetwork, LoadStats)> {
        let path = path.as_ref();
        if let ProbabilityRule::Constant(c) = rule {
            validate_probability(c, 0, 0).map_err(|_| {
                Error::InvalidParameter(format!("constant probability {c} outside (0, 1]"))
            })?;
        }
        let file = fs::File::open(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let reader = BufReader::new(file);

        let parse_err = |line: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };

        let mut stats = LoadStats::default();
        // (src, dst) in original ids with optional explicit probabilities
        let mut raw: Vec<(u64, u64, Option<(f64, f64)>)> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 || tokens.len() > 4 {
                return Err(parse_err(
                    lineno,
                    format!("expected 2 to 4 fields, found {}", tokens.len()),
                ));
            }
            let src: u64 = tokens[0]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad node id {:?}", tokens[0])))?;
            let dst: u64 = tokens[1]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad node id {:?}", tokens[1])))?;
            if src == dst {
                stats.dropped_self_loops += 1;
                continue;
            }
            let probs = match rule {
                ProbabilityRule::ExplicitColumns => {
                    if tokens.len() < 3 {
                        return Err(parse_err(lineno, "missing probability column".into()));
                    }
                    let a: f64 = tokens[2].parse().map_err(|_| {
                        parse_err(lineno, format!("bad probability {:?}", tokens[2]))
                    })?;
                    let b: f64 = if tokens.len() == 4 {
                        tokens[3].parse().map_err(|_| {
                            parse_err(lineno, format!("bad probability {:?}", tokens[3]))
                        })?
                    } else {
                        a
                    };
                    validate_probability(a, src, dst)?;
                    validate_probability(b, src, dst)?;
                    Some((a, b))
                }
                _ => None,
            };
            raw.push((src, dst, probs));
            if undirected {
                raw.push((dst, src, probs));
            }
        }

        // Dense remap in ascending original-id order.
        let mut ids: BTreeSet<u64> = BTreeSet::new();
        for &(s, t, _) in &raw {
            ids.insert(s);
            ids.insert(t);
        }
        if ids.is_empty() {
            return Err(parse_err(0, "no edges in file".into()));
        }
        let original_ids: Vec<u64> = ids.into_iter().collect();
        let index: BTreeMap<u64, usize> = original_ids
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        let n = original_ids.len();

        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut rows: Vec<(usize, usize, f64, f64)> = Vec::with_capacity(raw.len());
        for &(s, t, probs) in &raw {
            let (ds, dt) = (index[&s], index[&t]);
            if !seen.insert((ds, dt)) {
                return Err(Error::DuplicateEdge { src: s, dst: t });
            }
            let (a, b) = match rule {
                ProbabilityRule::ExplicitColumns => probs.expect("explicit rule parsed columns"),
                ProbabilityRule::Constant(c) => (c, c),
                // placeholder until in-degrees are known
                ProbabilityRule::InDegreeReciprocal => (1.0, 1.0),
            };
            rows.push((ds, dt, a, b));
        }

        if let ProbabilityRule::InDegreeReciprocal = rule {
            let mut in_deg = vec![0usize; n];
            for &(_, t, _, _) in &rows {
                in_deg[t] += 1;
            }
            for row in &mut rows {
                let p = 1.0 / in_deg[row.1] as f64;
                row.2 = p;
                row.3 = p;
            }
        }

        let mut network = SocialNetwork::new(n, rows)?;
        network.original_ids = original_ids;
        Ok((network, stats))
    }

    /// Snapshot of the network and, optionally, a weight profile.
    pub fn to_snapshot(&self, profile: Option<&BenefitProfile>) -> NetworkSnapshot {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (s, t, self.pp[i], self.pr[i]))
            .collect();
        let weights = match profile {
            Some(pr) => (0..self.node_count)
                .map(|u| (u, pr.p(u), pr.q(u)))
                .collect(),
            None => Vec::new(),
        };
        NetworkSnapshot {
            nodes: self.node_count,
            edges,
            weights,
        }
    }

    /// Rebuild a network (and profile, when weights are present) from a snapshot.
    pub fn from_snapshot(
        snap: &NetworkSnapshot,
    ) -> Result<(SocialNetwork, Option<BenefitProfile>)> {
        let network = SocialNetwork::new(snap.nodes, snap.edges.clone())?;
        let profile = if snap.weights.is_empty() {
            None
        } else {
            if snap.weights.len() != snap.nodes {
                return Err(Error::InvalidParameter(format!(
                    "snapshot has {} weight rows for {} nodes",
                    snap.weights.len(),
                    snap.nodes
                )));
            }
            let mut p = vec![0.0; snap.nodes];
            let mut q = vec![0.0; snap.nodes];
            for &(u, pu, qu) in &snap.weights {
                if u >= snap.nodes {
                    return Err(Error::NodeOutOfRange {
                        id: u,
                        nodes: snap.nodes,
                    });
                }
                p[u] = pu;
                q[u] = qu;
            }
            Some(BenefitProfile::from_values(p, q)?)
        };
        Ok((network, profile))
    }

    pub fn write_snapshot(
        &self,
        profile: Option<&BenefitProfile>,
        path: impl AsRef<Path>,
    ) -> Result<()> {
        let path = path.as_ref();
        let snap = self.to_snapshot(profile);
        let bytes = serde_json::to_vec(&snap).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        let mut file = fs::File::create(path)?;
        file.write_all(&bytes)?;
        Ok(())
    }

    pub fn read_snapshot(
        path: impl AsRef<Path>,
    ) -> Result<(SocialNetwork, Option<BenefitProfile>)> {
        let path = path.as_ref();
        let bytes = fs::read(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let snap: NetworkSnapshot =
            serde_json::from_slice(&bytes).map_err(|source| Error::Json {
                path: path.to_path_buf(),
                source,
            })?;
        SocialNetwork::from_snapshot(&snap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn in_degree_reciprocal_rule() {
        let f = write_tmp("0 1\n1 2\n0 2\n");
        let (g, stats) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::InDegreeReciprocal)
                .unwrap();
        assert_eq!(stats.dropped_self_loops, 0);
        assert_eq!(g.node_count(), 3);
        let idx = |s, t| g.edges().iter().position(|&e| e == (s, t)).unwrap();
        assert_eq!(g.probability(idx(0, 1), Cascade::Positive), 1.0);
        assert_eq!(g.probability(idx(1, 2), Cascade::Positive), 0.5);
        assert_eq!(g.probability(idx(0, 2), Cascade::Positive), 0.5);
        assert_eq!(g.probability(idx(0, 2), Cascade::Rival), 0.5);
    }

    #[test]
    fn constant_rule_single_edge() {
        let f = write_tmp("0 1\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::Constant(0.3)).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.probability(0, Cascade::Positive), 0.3);
        assert_eq!(g.probability(0, Cascade::Rival), 0.3);
    }

    #[test]
    fn undirected_duplicates_both_directions() {
        let f = write_tmp("0 1\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), true, ProbabilityRule::Constant(0.5)).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn self_loops_dropped_and_counted() {
        let f = write_tmp("0 0\n0 1\n2 2\n");
        let (g, stats) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::Constant(0.5)).unwrap();
        assert_eq!(stats.dropped_self_loops, 2);
        assert_eq!(g.edge_count(), 1);
        // node 2 disappears with its self-loop
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn duplicate_edges_rejected() {
        let f = write_tmp("0 1\n0 1\n");
        let err = SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::Constant(0.5))
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { src: 0, dst: 1 }));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let f = write_tmp("0 1\nnot an edge line at all x\n");
        let err = SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::Constant(0.5))
            .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_columns_with_and_without_rival() {
        let f = write_tmp("0 1 0.4\n1 2 0.6 0.2\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::ExplicitColumns)
                .unwrap();
        let idx = |s, t| g.edges().iter().position(|&e| e == (s, t)).unwrap();
        assert_eq!(g.probability(idx(0, 1), Cascade::Positive), 0.4);
        assert_eq!(g.probability(idx(0, 1), Cascade::Rival), 0.4);
        assert_eq!(g.probability(idx(1, 2), Cascade::Positive), 0.6);
        assert_eq!(g.probability(idx(1, 2), Cascade::Rival), 0.2);
    }

    #[test]
    fn probability_out_of_range_rejected() {
        let f = write_tmp("0 1 1.5\n");
        let err = SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::ExplicitColumns)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidProbability { .. }));

        let f = write_tmp("0 1 0.0\n");
        let err = SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::ExplicitColumns)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidProbability { .. }));
    }

    #[test]
    fn sparse_ids_remapped_densely() {
        let f = write_tmp("10 40\n40 7\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::Constant(0.5)).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.original_ids(), &[7, 10, 40]);
        assert_eq!(g.dense_id(40), Some(2));
        assert_eq!(g.dense_id(3), None);
        assert_eq!(g.edges(), &[(1, 2), (2, 0)]);
    }

    #[test]
    fn adjacency_consistent_with_edge_list() {
        let f = write_tmp("0 1\n1 2\n0 2\n2 1\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::InDegreeReciprocal)
                .unwrap();
        for (idx, &(s, t)) in g.edges().iter().enumerate() {
            assert!(g.out_edges(s).contains(&(idx, t)));
            assert!(g.in_edges(t).contains(&(idx, s)));
        }
        let m: usize = (0..g.node_count()).map(|u| g.out_degree(u)).sum();
        assert_eq!(m, g.edge_count());
        let m: usize = (0..g.node_count()).map(|u| g.in_degree(u)).sum();
        assert_eq!(m, g.edge_count());
    }

    #[test]
    fn snapshot_round_trips_bit_exactly() {
        let f = write_tmp("3 1\n1 2\n2 3\n");
        let (g, _) =
            SocialNetwork::load_edge_list(f.path(), false, ProbabilityRule::InDegreeReciprocal)
                .unwrap();
        let profile = BenefitProfile::generate(g.node_count(), 11);
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.json");
        let p2 = dir.path().join("b.json");
        g.write_snapshot(Some(&profile), &p1).unwrap();
        let (g2, prof2) = SocialNetwork::read_snapshot(&p1).unwrap();
        g2.write_snapshot(prof2.as_ref(), &p2).unwrap();
        assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    }

    #[test]
    fn seed_set_validates_range() {
        let s = SeedSet::positive([0, 5]);
        assert!(s.validate(6).is_ok());
        assert!(matches!(
            s.validate(5),
            Err(Error::NodeOutOfRange { id: 5, nodes: 5 })
        ));
    }
}
