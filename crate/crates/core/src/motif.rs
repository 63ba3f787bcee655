//! Motifs, the containment indicator and the empirical moment machinery.
//!
//! A subset of `r` nodes "contains" a motif when some relabelling maps every
//! motif edge onto an edge of the induced subgraph. Extra edges are allowed,
//! so a triangle contains a 2-star.
//!
//! Edge, 2-star and triangle have bitset fast paths; all other connected
//! patterns with `r <= 5` go through explicit subset enumeration, which costs
//! `C(m, r)` containment lookups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest supported motif order.
pub const MAX_MOTIF_NODES: usize = 5;

/// Subset budget of [`moment_u_bruteforce`].
pub const BRUTEFORCE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Edge,
    VShape,
    Triangle,
    Generic,
}

/// A connected pattern graph on `r` nodes.
#[derive(Clone)]
pub struct Motif {
    name: String,
    r: usize,
    edges: Vec<(usize, usize)>,
    cyclic: bool,
    kind: Kind,
    /// `contains[mask]` for every edge mask over the `C(r, 2)` node pairs.
    contains: Vec<bool>,
}

impl fmt::Debug for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Motif")
            .field("name", &self.name)
            .field("r", &self.r)
            .field("s", &self.edges.len())
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Motif {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.r == other.r && self.edges == other.edges
    }
}

/// Name and size of a motif; what hash records carry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifDescriptor {
    pub name: String,
    pub r: usize,
    pub s: usize,
}

#[inline]
fn pair_slot(r: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // row-major upper triangle
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

impl Motif {
    /// Single edge (`r = 2`, `s = 1`).
    pub fn edge() -> Self {
        Motif::from_edges("edge", 2, &[(0, 1)]).expect("edge motif")
    }

    /// 2-star, a.k.a. V-shape (`r = 3`, `s = 2`).
    pub fn vshape() -> Self {
        Motif::from_edges("vshape", 3, &[(0, 1), (0, 2)]).expect("vshape motif")
    }

    /// Triangle (`r = 3`, `s = 3`).
    pub fn triangle() -> Self {
        Motif::from_edges("triangle", 3, &[(0, 1), (0, 2), (1, 2)]).expect("triangle motif")
    }

    pub fn builtins() -> Vec<Motif> {
        vec![Motif::edge(), Motif::vshape(), Motif::triangle()]
    }

    /// Builds a motif from its edge list on nodes `0..r`.
    pub fn from_edges(name: impl Into<String>, r: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let name = name.into();
        if !(2..=MAX_MOTIF_NODES).contains(&r) {
            return Err(Error::InvalidMotif(format!(
                "{name}: motif order must be in 2..={MAX_MOTIF_NODES}, got {r}"
            )));
        }
        let mut adj = vec![vec![false; r]; r];
        let mut norm = Vec::new();
        for &(a, b) in edges {
            if a >= r || b >= r || a == b {
                return Err(Error::InvalidMotif(format!("{name}: bad edge ({a}, {b})")));
            }
            if !adj[a][b] {
                adj[a][b] = true;
                adj[b][a] = true;
                norm.push((a.min(b), a.max(b)));
            }
        }
        norm.sort_unstable();
        Motif::build(name, adj, norm)
    }

    /// Builds a motif from a symmetric adjacency pattern.
    pub fn from_pattern(name: impl Into<String>, pattern: &[Vec<bool>]) -> Result<Self> {
        let name = name.into();
        let r = pattern.len();
        if !(2..=MAX_MOTIF_NODES).contains(&r) {
            return Err(Error::InvalidMotif(format!(
                "{name}: motif order must be in 2..={MAX_MOTIF_NODES}, got {r}"
            )));
        }
        let mut edges = Vec::new();
        for (i, row) in pattern.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidMotif(format!("{name}: pattern is not square")));
            }
            if row[i] {
                return Err(Error::InvalidMotif(format!("{name}: pattern has a self-loop")));
            }
            for j in (i + 1)..r {
                if row[j] != pattern[j][i] {
                    return Err(Error::InvalidMotif(format!("{name}: pattern is not symmetric")));
                }
                if row[j] {
                    edges.push((i, j));
                }
            }
        }
        Motif::build(name, pattern.to_vec(), edges)
    }

    fn build(name: String, adj: Vec<Vec<bool>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let r = adj.len();
        // connectivity by DFS from node 0
        let mut seen = vec![false; r];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..r {
                if adj[u][v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidMotif(format!("{name}: pattern is not connected")));
        }
        let s = edges.len();
        let cyclic = s != r - 1;
        let kind = match (r, s) {
            (2, 1) => Kind::Edge,
            (3, 2) => Kind::VShape,
            (3, 3) => Kind::Triangle,
            _ => Kind::Generic,
        };
        let slots = r * (r - 1) / 2;
        let mut images: Vec<u32> = permutations(r)
            .into_iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u32, |acc, &(a, b)| acc | 1 << pair_slot(r, p[a], p[b]))
            })
            .collect();
        images.sort_unstable();
        images.dedup();
        let contains = (0u32..1 << slots)
            .map(|mask| images.iter().any(|&img| img & !mask == 0))
            .collect();
        Ok(Motif {
            name,
            r,
            edges,
            cyclic,
            kind,
            contains,
        })
    }

    /// Parses a built-in name (`edge`, `vshape`, `triangle`) or an edge-list
    /// literal such as `edges:0-1,1-2,2-3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let key = spec.trim();
        match key.to_ascii_lowercase().as_str() {
            "edge" => return Ok(Motif::edge()),
            "vshape" | "v-shape" | "2-star" | "twostar" => return Ok(Motif::vshape()),
            "triangle" => return Ok(Motif::triangle()),
            _ => {}
        }
        let Some(body) = key.strip_prefix("edges:") else {
            return Err(Error::InvalidMotif(format!(
                "unknown motif {key:?}; expected edge, vshape, triangle or edges:a-b,..."
            )));
        };
        let mut edges = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::InvalidMotif(format!("bad edge literal {item:?}")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidMotif(format!("bad node id in {item:?}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidMotif(format!("bad node id in {item:?}")))?;
            edges.push((a, b));
        }
        let r = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Motif::from_edges(key, r, &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Node count.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Edge count.
    pub fn s(&self) -> usize {
        self.edges.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn pattern(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.r]; self.r];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn descriptor(&self) -> MotifDescriptor {
        MotifDescriptor {
            name: self.name.clone(),
            r: self.r,
            s: self.s(),
        }
    }

    /// Containment for an edge mask over the `C(r, 2)` pair slots.
    #[inline]
    fn contained_in_mask(&self, mask: u32) -> bool {
        self.contains[mask as usize]
    }

    fn subset_mask(&self, g: &Graph, nodes: &[usize]) -> u32 {
        let mut mask = 0u32;
        let mut slot = 0;
        for a in 0..nodes.len() {
            for b in (a + 1)..nodes.len() {
                if g.has_edge(nodes[a], nodes[b]) {
                    mask |= 1 << slot;
                }
                slot += 1;
            }
        }
        mask
    }
}

impl TryFrom<String> for Motif {
    type Error = Error;
    fn try_from(value: String) -> Result<Self> {
        Motif::parse(&value)
    }
}

impl From<Motif> for String {
    fn from(m: Motif) -> String {
        m.name
    }
}

impl Serialize for Motif {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for Motif {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Motif::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Containment indicator `h` on an `r x r` adjacency matrix.
///
/// Checks every relabelling directly; the moment routines use a lookup table
/// built once per motif instead.
pub fn contains_motif(sub: &[Vec<bool>], motif: &Motif) -> Result<bool> {
    let r = motif.r;
    if sub.len() != r || sub.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidArgument(format!(
            "subgraph must be {r}x{r} for motif {}",
            motif.name
        )));
    }
    for (i, row) in sub.iter().enumerate() {
        if row[i] || (0..r).any(|j| row[j] != sub[j][i]) {
            return Err(Error::InvalidArgument(
                "subgraph must be symmetric with an empty diagonal".into(),
            ));
        }
    }
    Ok(permutations(r)
        .iter()
        .any(|p| motif.edges.iter().all(|&(a, b)| sub[p[a]][p[b]])))
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Visits every increasing `k`-subset of `pool`.
fn for_each_subset(pool: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    let n = pool.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        f(&buf);
        // advance to the next combination
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == pos - 1 + n - k {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        pos -= 1;
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
        for q in pos..k {
            buf[q] = pool[idx[q]];
        }
    }
}

fn check_order(g: &Graph, motif: &Motif) -> Result<()> {
    if g.node_count() < motif.r {
        return Err(Error::InvalidArgument(format!(
            "graph has {} nodes, motif {} needs at least {}",
            g.node_count(),
            motif.name,
            motif.r
        )));
    }
    Ok(())
}

fn check_node(g: &Graph, i: usize) -> Result<()> {
    if i >= g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "node {i} out of range for {} nodes",
            g.node_count()
        )));
    }
    Ok(())
}

/// Sum over edges of common-neighbour counts, i.e. three times the number of
/// triangles, together with the per-node triangle counts.
fn triangle_counts(g: &Graph) -> (u64, Vec<u64>) {
    let m = g.node_count();
    let mut per_node = vec![0u64; m];
    let mut total = 0u64;
    for u in 0..m {
        let mut twice = 0u64;
        for v in g.neighbors(u) {
            twice += g.common_neighbors(u, v) as u64;
        }
        per_node[u] = twice / 2;
        total += twice;
    }
    // each triangle is seen twice at each of its three corners
    (total / 6, per_node)
}

fn choose2(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

/// Number of `r`-subsets whose induced subgraph contains the motif.
pub fn motif_count(g: &Graph, motif: &Motif) -> Result<u64> {
    check_order(g, motif)?;
    Ok(match motif.kind {
        Kind::Edge => g.edge_count() as u64,
        Kind::Triangle => triangle_counts(g).0,
        Kind::VShape => {
            let (tri, _) = triangle_counts(g);
            let wedges: u64 = (0..g.node_count()).map(|u| choose2(g.degree(u) as u64)).sum();
            wedges - 2 * tri
        }
        Kind::Generic => {
            let pool: Vec<usize> = (0..g.node_count()).collect();
            let mut count = 0u64;
            for_each_subset(&pool, motif.r, |nodes| {
                if motif.contained_in_mask(motif.subset_mask(g, nodes)) {
                    count += 1;
                }
            });
            count
        }
    })
}

/// Per node, the number of motif-bearing `r`-subsets that include it.
pub fn node_counts(g: &Graph, motif: &Motif) -> Result<Vec<u64>> {
    check_order(g, motif)?;
    let m = g.node_count();
    let degrees: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    Ok(match motif.kind {
        Kind::Edge => degrees,
        Kind::Triangle => triangle_counts(g).1,
        Kind::VShape => {
            let (_, tri) = triangle_counts(g);
            (0..m)
                .map(|i| {
                    let open: u64 = g.neighbors(i).map(|j| degrees[j] - 1).sum();
                    choose2(degrees[i]) + open - 2 * tri[i]
                })
                .collect()
        }
        Kind::Generic => {
            let pool: Vec<usize> = (0..m).collect();
            let mut counts = vec![0u64; m];
            for_each_subset(&pool, motif.r, |nodes| {
                if motif.contained_in_mask(motif.subset_mask(g, nodes)) {
                    for &v in nodes {
                        counts[v] += 1;
                    }
                }
            });
            counts
        }
    })
}

/// Number of motif-bearing `r`-subsets that include both `i` and `j`.
/// Caller guarantees `i != j`, both in range.
pub(crate) fn pair_count_unchecked(g: &Graph, motif: &Motif, i: usize, j: usize) -> u64 {
    match motif.kind {
        Kind::Edge => g.has_edge(i, j) as u64,
        Kind::Triangle => {
            if g.has_edge(i, j) {
                g.common_neighbors(i, j) as u64
            } else {
                0
            }
        }
        Kind::VShape => {
            if g.has_edge(i, j) {
                // i and j sit in each other's neighbourhoods
                g.union_neighbors(i, j) as u64 - 2
            } else {
                g.common_neighbors(i, j) as u64
            }
        }
        Kind::Generic => {
            let pool: Vec<usize> = (0..g.node_count()).filter(|&k| k != i && k != j).collect();
            let mut nodes = vec![0; motif.r];
            let mut count = 0;
            for_each_subset(&pool, motif.r - 2, |rest| {
                nodes[0] = i;
                nodes[1] = j;
                nodes[2..].copy_from_slice(rest);
                if motif.contained_in_mask(motif.subset_mask(g, &nodes)) {
                    count += 1;
                }
            });
            count
        }
    }
}

/// Empirical moment: the fraction of `r`-subsets containing the motif.
pub fn moment_u(g: &Graph, motif: &Motif) -> Result<f64> {
    let count = motif_count(g, motif)?;
    Ok(count as f64 / binomial(g.node_count(), motif.r) as f64)
}

/// The same quantity as [`moment_u`], by naive subset enumeration through
/// [`contains_motif`]. Only for small graphs.
pub fn moment_u_bruteforce(g: &Graph, motif: &Motif) -> Result<f64> {
    check_order(g, motif)?;
    let m = g.node_count();
    let total = binomial(m, motif.r);
    if total > BRUTEFORCE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "brute force needs {total} subsets, limit is {BRUTEFORCE_LIMIT}"
        )));
    }
    let pool: Vec<usize> = (0..m).collect();
    let mut hits = 0u64;
    let mut err = None;
    for_each_subset(&pool, motif.r, |nodes| {
        let sub: Vec<Vec<bool>> = nodes
            .iter()
            .map(|&a| nodes.iter().map(|&b| a != b && g.has_edge(a, b)).collect())
            .collect();
        match contains_motif(&sub, motif) {
            Ok(true) => hits += 1,
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(hits as f64 / total as f64)
}

/// Average of `h` over the `r`-subsets containing node `i`.
pub fn node_moment(g: &Graph, motif: &Motif, i: usize) -> Result<f64> {
    check_node(g, i)?;
    let counts = node_counts(g, motif)?;
    Ok(counts[i] as f64 / binomial(g.node_count() - 1, motif.r - 1) as f64)
}

/// Average of `h` over the `r`-subsets containing both `i` and `j`.
pub fn pair_moment(g: &Graph, motif: &Motif, i: usize, j: usize) -> Result<f64> {
    check_order(g, motif)?;
    check_node(g, i)?;
    check_node(g, j)?;
    if i == j {
        return Err(Error::InvalidArgument("pair moment needs two distinct nodes".into()));
    }
    let count = pair_count_unchecked(g, motif, i, j);
    Ok(count as f64 / binomial(g.node_count() - 2, motif.r - 2) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn adj(g: &Graph) -> Vec<Vec<bool>> {
        let m = g.node_count();
        (0..m).map(|a| (0..m).map(|b| a != b && g.has_edge(a, b)).collect()).collect()
    }

    fn random_graph(rng: &mut ChaCha8Rng, m: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(m, edges).unwrap()
    }

    #[test]
    fn builtin_shapes() {
        let e = Motif::edge();
        let v = Motif::vshape();
        let t = Motif::triangle();
        assert_eq!((e.r(), e.s(), e.is_cyclic()), (2, 1, false));
        assert_eq!((v.r(), v.s(), v.is_cyclic()), (3, 2, false));
        assert_eq!((t.r(), t.s(), t.is_cyclic()), (3, 3, true));
    }

    #[test]
    fn rejects_invalid_patterns() {
        assert!(Motif::from_edges("disc", 4, &[(0, 1), (2, 3)]).is_err());
        assert!(Motif::from_edges("big", 6, &[(0, 1)]).is_err());
        assert!(Motif::from_pattern("asym", &[vec![false, true], vec![false, false]]).is_err());
        assert!(Motif::parse("square").is_err());
        assert!(Motif::parse("edges:0-x").is_err());
    }

    #[test]
    fn parses_names_and_literals() {
        assert_eq!(Motif::parse("Triangle").unwrap(), Motif::triangle());
        assert_eq!(Motif::parse("2-star").unwrap().s(), 2);
        let p4 = Motif::parse("edges:0-1,1-2,2-3").unwrap();
        assert_eq!((p4.r(), p4.s(), p4.is_cyclic()), (4, 3, false));
        let c4 = Motif::parse("edges:0-1,1-2,2-3,3-0").unwrap();
        assert!(c4.is_cyclic());
        let from_pattern = Motif::from_pattern("tri", &Motif::triangle().pattern()).unwrap();
        assert_eq!(from_pattern.s(), 3);
    }

    #[test]
    fn containment_examples() {
        let tri = adj(&triangle());
        let p3 = adj(&path3());
        assert!(contains_motif(&tri, &Motif::triangle()).unwrap());
        assert!(!contains_motif(&p3, &Motif::triangle()).unwrap());
        assert!(contains_motif(&tri, &Motif::vshape()).unwrap());
        assert!(contains_motif(&tri, &Motif::edge()).is_err());
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment_u(&triangle(), &Motif::triangle()).unwrap(), 1.0);
        assert_eq!(moment_u(&path3(), &Motif::vshape()).unwrap(), 1.0);
        assert_eq!(moment_u(&star4(), &Motif::vshape()).unwrap(), 0.75);
        assert_eq!(moment_u(&path3(), &Motif::edge()).unwrap(), path3().density());
        assert_eq!(moment_u_bruteforce(&path3(), &Motif::triangle()).unwrap(), 0.0);
        assert_eq!(moment_u_bruteforce(&cycle4(), &Motif::vshape()).unwrap(), 1.0);
        assert!(moment_u(&path3(), &Motif::parse("edges:0-1,1-2,2-3").unwrap()).is_err());
    }

    #[test]
    fn node_and_pair_examples() {
        let vs = Motif::vshape();
        assert_eq!(node_moment(&triangle(), &Motif::triangle(), 2).unwrap(), 1.0);
        assert_eq!(node_moment(&star4(), &vs, 0).unwrap(), 1.0);
        assert!((node_moment(&star4(), &vs, 1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(pair_moment(&triangle(), &Motif::triangle(), 0, 1).unwrap(), 1.0);
        assert_eq!(pair_moment(&path3(), &vs, 0, 2).unwrap(), 1.0);
        assert_eq!(pair_moment(&star4(), &vs, 1, 2).unwrap(), 0.5);
        assert!(pair_moment(&star4(), &vs, 1, 1).is_err());
        assert!(node_moment(&star4(), &vs, 4).is_err());
    }

    #[test]
    fn bruteforce_guard() {
        let g = Graph::empty(200).unwrap();
        assert!(moment_u_bruteforce(&g, &Motif::triangle()).is_err());
    }

    #[test]
    fn fast_paths_match_oracle_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut motifs = Motif::builtins();
        motifs.push(Motif::parse("edges:0-1,1-2,2-3").unwrap());
        motifs.push(Motif::parse("edges:0-1,0-2,0-3").unwrap());
        for _ in 0..60 {
            let m = rng.random_range(5..=10);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, m, p);
            for motif in &motifs {
                let fast = moment_u(&g, motif).unwrap();
                let slow = moment_u_bruteforce(&g, motif).unwrap();
                assert!((fast - slow).abs() <= 1e-12, "{}: {fast} vs {slow}", motif.name());
            }
        }
    }

    #[test]
    fn generic_path_matches_specialized_counters() {
        // the same shapes through the enumeration route
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let as_generic = |m: &Motif| {
            let mut g = m.clone();
            g.kind = Kind::Generic;
            g
        };
        for _ in 0..30 {
            let g = random_graph(&mut rng, 9, 0.45);
            for motif in Motif::builtins() {
                let gen = as_generic(&motif);
                assert_eq!(node_counts(&g, &motif).unwrap(), node_counts(&g, &gen).unwrap());
                for i in 0..9 {
                    for j in (i + 1)..9 {
                        assert_eq!(
                            pair_count_unchecked(&g, &motif, i, j),
                            pair_count_unchecked(&g, &gen, i, j)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn adding_edges_never_decreases_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let g = random_graph(&mut rng, 8, 0.3);
            let (u, v) = loop {
                let u = rng.random_range(0..8);
                let v = rng.random_range(0..8);
                if u != v {
                    break (u, v);
                }
            };
            let h = g.with_edge(u, v).unwrap();
            for motif in Motif::builtins() {
                assert!(moment_u(&h, &motif).unwrap() >= moment_u(&g, &motif).unwrap());
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(1600, 3), 681_387_200);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }
}
