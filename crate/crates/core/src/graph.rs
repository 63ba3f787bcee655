//! Simple undirected graphs with bitset adjacency rows, plus the edge-list
//! text format used to move them in and out of the toolkit.
//!
//! Edge-list format: one `u v` pair of integer node ids per line. Blank
//! lines and lines starting with `#` are ignored. An optional `%nodes N`
//! line fixes the node count (otherwise it is `max id + 1`), which is how
//! isolated nodes survive a round trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Index base of node ids in an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

/// Undirected simple graph on nodes `0..m`.
///
/// Rows are stored as packed bitsets so common-neighbour and union counts
/// cost `m / 64` word operations.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    words: usize,
    bits: Vec<u64>,
    edges: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("m", &self.m)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Graph on `m` nodes without edges.
    pub fn empty(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGraph(format!(
                "node count must be at least 2, got {m}"
            )));
        }
        let words = m.div_ceil(WORD);
        Ok(Graph {
            m,
            words,
            bits: vec![0; m * words],
            edges: 0,
        })
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse;
    /// self-loops are rejected.
    pub fn from_edges<I>(m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(m)?;
        for (u, v) in edges {
            if u >= m || v >= m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {m} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Complete graph `K_m`.
    pub fn complete(m: usize) -> Result<Self> {
        let mut g = Graph::empty(m)?;
        for i in 0..m {
            for j in (i + 1)..m {
                g.insert(i, j);
            }
        }
        Ok(g)
    }

    /// Returns `true` if the edge was new.
    pub(crate) fn insert(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.m && v < self.m);
        if self.has_edge(u, v) {
            return false;
        }
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
        self.edges += 1;
        true
    }

    /// Copy of this graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.m || v >= self.m || u == v {
            return Err(Error::InvalidArgument(format!(
                "cannot add edge ({u}, {v}) to a graph on {} nodes",
                self.m
            )));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / WORD] >> (v % WORD)) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.m).map(|u| self.degree(u)).collect()
    }

    /// Number of nodes adjacent to both `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of nodes adjacent to `u` or `v` (including `u`/`v` themselves
    /// when they are adjacent to each other).
    pub fn union_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + t)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, graph has {} nodes",
                perm.len(),
                self.m
            )));
        }
        let mut seen = vec![false; self.m];
        for &p in perm {
            if p >= self.m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(
                    "permutation is not a bijection".into(),
                ));
            }
        }
        let mut g = Graph::empty(self.m)?;
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Subgraph on the listed nodes, in list order. Repeated nodes become
    /// distinct copies that are not adjacent to one another, which is the
    /// node-resampling convention.
    pub fn select(&self, nodes: &[usize]) -> Result<Self> {
        let mut g = Graph::empty(nodes.len())?;
        for (a, &u) in nodes.iter().enumerate() {
            if u >= self.m {
                return Err(Error::InvalidArgument(format!("node {u} out of range")));
            }
            for (b, &v) in nodes.iter().enumerate().skip(a + 1) {
                if u != v && self.has_edge(u, v) {
                    g.insert(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Empirical edge density `#edges / C(m, 2)`.
    pub fn density(&self) -> f64 {
        let pairs = (self.m * (self.m - 1) / 2) as f64;
        self.edges as f64 / pairs
    }

    /// Serializes to the edge-list format, zero-based, with a `%nodes` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("%nodes {}\n", self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Counts gathered while normalizing an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub nodes: usize,
    pub edges_kept: usize,
    pub loops_dropped: usize,
    pub duplicates_merged: usize,
}

/// Parses edge-list text. `origin` is only used in error messages.
pub fn parse_edge_list(text: &str, indexing: Indexing, origin: &Path) -> Result<(Graph, LoadReport)> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut declared: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('%') {
            let mut parts = rest.split_whitespace();
            match (parts.next(), parts.next(), parts.next()) {
                (Some("nodes"), Some(n), None) => {
                    let n = n
                        .parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad node count {n:?}")))?;
                    declared = Some(n);
                }
                _ => return Err(parse_err(lineno, format!("unknown directive {line:?}"))),
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            let message = if tokens.len() > 2 {
                "weighted or malformed edge: expected exactly two node ids".to_string()
            } else {
                "expected two node ids".to_string()
            };
            return Err(parse_err(lineno, message));
        }
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("non-integer token {tok:?}")))?;
            let v = match indexing {
                Indexing::ZeroBased => v,
                Indexing::OneBased => v - 1,
            };
            if v < 0 {
                return Err(parse_err(lineno, format!("negative node id {tok}")));
            }
            *slot = v as usize;
        }
        max_id = Some(max_id.map_or(ids[0].max(ids[1]), |m| m.max(ids[0]).max(ids[1])));
        pairs.push((ids[0], ids[1], lineno));
    }
    let m = match (declared, max_id) {
        (Some(n), Some(mx)) if mx >= n => {
            return Err(Error::InvalidGraph(format!(
                "node id {mx} exceeds declared node count {n}"
            )))
        }
        (Some(n), _) => n,
        (None, Some(mx)) => mx + 1,
        (None, None) => 0,
    };
    if m < 2 {
        return Err(Error::InvalidGraph(format!(
            "{}: graph needs at least 2 nodes, found {m}",
            origin.display()
        )));
    }
    let mut g = Graph::empty(m)?;
    let mut report = LoadReport {
        nodes: m,
        ..LoadReport::default()
    };
    for (u, v, _) in pairs {
        if u == v {
            report.loops_dropped += 1;
        } else if !g.insert(u, v) {
            report.duplicates_merged += 1;
        }
    }
    report.edges_kept = g.edge_count();
    Ok((g, report))
}

/// Reads an edge-list file and logs the load report.
pub fn load_edge_list(path: impl AsRef<Path>, indexing: Indexing) -> Result<(Graph, LoadReport)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (g, report) = parse_edge_list(&text, indexing, path)?;
    log::info!(
        "loaded {}: {} nodes, {} edges kept, {} self-loops dropped, {} duplicates merged",
        path.display(),
        report.nodes,
        report.edges_kept,
        report.loops_dropped,
        report.duplicates_merged
    );
    Ok((g, report))
}

/// Writes `g` in the edge-list format.
pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, g.to_edge_list()).map_err(|e| Error::io(path, e))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parse(text: &str, indexing: Indexing) -> Result<(Graph, LoadReport)> {
        parse_edge_list(text, indexing, Path::new("<test>"))
    }

    #[test]
    fn parses_zero_and_one_based() {
        let (a, _) = parse("0 1\n1 2", Indexing::ZeroBased).unwrap();
        let (b, _) = parse("1 2\n2 3", Indexing::OneBased).unwrap();
        assert_eq!(a.node_count(), 3);
        assert_eq!(a.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(a, b);
    }

    #[test]
    fn normalizes_loops_and_duplicates() {
        let (g, report) = parse("0 1\n1 0\n0 0", Indexing::ZeroBased).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.loops_dropped, 1);
        assert_eq!(report.duplicates_merged, 1);
    }

    #[test]
    fn skips_comments_and_honours_header() {
        let (g, _) = parse("# comment\n%nodes 6\n\n0 1\n", Indexing::ZeroBased).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.degree(5), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("0 x", Indexing::ZeroBased), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0 1\n-1 2", Indexing::ZeroBased), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("0 1 0.5", Indexing::ZeroBased), Err(Error::Parse { .. })));
        assert!(matches!(parse("0 0", Indexing::ZeroBased), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse("", Indexing::ZeroBased), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse("%nodes 2\n0 5", Indexing::ZeroBased), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse("0 1", Indexing::OneBased), Err(Error::Parse { .. })));
        assert!(load_edge_list("/nonexistent/edges.txt", Indexing::ZeroBased).is_err());
    }

    #[test]
    fn density_examples() {
        assert!((path3().density() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(Graph::empty(5).unwrap().density(), 0.0);
        assert_eq!(Graph::complete(4).unwrap().density(), 1.0);
    }

    #[test]
    fn permute_examples() {
        let p3 = path3();
        assert_eq!(p3.permute(&[0, 1, 2]).unwrap(), p3);
        assert_eq!(p3.permute(&[2, 1, 0]).unwrap(), p3);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.permute(&[3, 1, 0, 2]).unwrap(), k4);
        assert!(p3.permute(&[0, 0, 1]).is_err());
        assert!(p3.permute(&[0, 1]).is_err());
    }

    #[test]
    fn density_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [path3(), star4(), cycle4(), Graph::complete(6).unwrap()] {
            let mut perm: Vec<usize> = (0..g.node_count()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                assert_eq!(g.permute(&perm).unwrap().density(), g.density());
            }
        }
    }

    #[test]
    fn select_handles_repeats() {
        let g = path3();
        let s = g.select(&[1, 1, 0]).unwrap();
        assert_eq!(s.node_count(), 3);
        assert!(!s.has_edge(0, 1));
        assert!(s.has_edge(0, 2) && s.has_edge(1, 2));
    }

    #[test]
    fn neighbour_counts() {
        let g = star4();
        assert_eq!(g.common_neighbors(1, 2), 1);
        assert_eq!(g.union_neighbors(0, 1), 4);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    proptest! {
        #[test]
        fn edge_list_roundtrip_is_idempotent(m in 2usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120)) {
            let edges: Vec<_> = raw.into_iter().map(|(a, b)| (a % m, b % m)).filter(|(a, b)| a != b).collect();
            let g = Graph::from_edges(m, edges).unwrap();
            let text = g.to_edge_list();
            let (h, _) = parse(&text, Indexing::ZeroBased).unwrap();
            prop_assert_eq!(&h, &g);
            prop_assert_eq!(h.to_edge_list(), text);
        }
    }
}
