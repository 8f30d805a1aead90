// SPDX-License-Identifier: Apache-2.0

//! Graphs and adversarial dynamic schedules.

use std::borrow::Cow;
use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::randomness::{domain, KeyedStream, MasterSeed};
use crate::{NodeId, Round};

/// Undirected simple graph on nodes `0..n`, stored as a sorted edge list
/// plus CSR adjacency with ascending neighbour ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs are normalised to `a < b`
    /// and duplicates collapse. Self-loops and out-of-range ids are
    /// rejected; connectivity is not checked here.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::validation(format!("self-loop at node {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::validation(format!("edge {{{a},{b}}} out of range for n={n}")));
            }
            list.push(if a < b { (a, b) } else { (b, a) });
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unchecked(n, list))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(NodeId, NodeId)>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for &(a, b) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0 as NodeId; offsets[n]];
        // edges are sorted by (a, b), so for every node the `b`-side
        // neighbours (smaller ids) arrive in ascending order before the
        // `a`-side ones
        for &(a, b) in &edges {
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for &(a, b) in &edges {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
        }
        Graph { n, edges, offsets, targets }
    }

    /// Like [`Graph::from_edges`] but also requires connectivity.
    pub fn connected(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let g = Self::from_edges(n, edges)?;
        if n == 0 {
            return Err(Error::validation("graph has no nodes"));
        }
        if !g.is_connected() {
            let dist = g.bfs_distances(0);
            let isolated = dist.iter().position(|d| d.is_none()).unwrap_or(0);
            return Err(Error::validation(format!("graph is disconnected (node {isolated} unreachable from 0)")));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.neighbors(u).len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        if a as usize >= self.n || b as usize >= self.n {
            return false;
        }
        let (a, b) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn bfs_distances(&self, src: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src as usize] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize].unwrap();
            for &v in self.neighbors(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Graphviz rendering; `label` optionally maps nodes to a group used
    /// for colouring.
    pub fn to_dot(&self, groups: Option<&[usize]>) -> String {
        const PALETTE: [&str; 8] =
            ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
        let mut out = String::from("graph G {\n");
        for u in 0..self.n {
            match groups {
                Some(g) => {
                    let c = PALETTE[g[u] % PALETTE.len()];
                    let _ = writeln!(out, "  {u} [style=filled, fillcolor=\"{c}\", group={}];", g[u]);
                }
                None => {
                    let _ = writeln!(out, "  {u};");
                }
            }
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    /// Edge-list text: first line `n m`, then one `a b` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    /// Parses the edge-list format. The result is required to be connected.
    pub fn read_edge_list(reader: impl BufRead) -> Result<Self> {
        let mut lines = reader
            .lines()
            .map(|l| l.map_err(Error::from))
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge-list file".into()))??;
        let mut fields = header.split_whitespace();
        let n = parse_field(fields.next(), "n")?;
        let m = parse_field(fields.next(), "m")?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let line = line?;
            let mut f = line.split_whitespace();
            let a = parse_field(f.next(), "edge endpoint")? as NodeId;
            let b = parse_field(f.next(), "edge endpoint")? as NodeId;
            if f.next().is_some() {
                return Err(Error::Parse(format!("edge line {} has extra fields", i + 2)));
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        Graph::connected(n, edges)
    }
}

fn parse_field(field: Option<&str>, what: &str) -> Result<usize> {
    let s = field.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    s.parse().map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

pub fn line_graph(n: usize) -> Graph {
    let edges = (1..n).map(|i| ((i - 1) as NodeId, i as NodeId)).collect();
    Graph::from_sorted_unchecked(n, edges)
}

pub fn star_graph(n: usize, center: NodeId) -> Graph {
    let c = center;
    let mut edges: Vec<_> = (0..n as NodeId).filter(|&v| v != c).map(|v| if v < c { (v, c) } else { (c, v) }).collect();
    edges.sort_unstable();
    Graph::from_sorted_unchecked(n, edges)
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n as NodeId {
        for b in a + 1..n as NodeId {
            edges.push((a, b));
        }
    }
    Graph::from_sorted_unchecked(n, edges)
}

/// `rows × cols` grid, node id `row * cols + col`.
pub fn grid_graph(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let u = (r * cols + c) as NodeId;
            if c + 1 < cols {
                edges.push((u, u + 1));
            }
            if r + 1 < rows {
                edges.push((u, u + cols as NodeId));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_sorted_unchecked(rows * cols, edges)
}

/// Uniform random labelled spanning tree (Prüfer decoding) plus `extra`
/// distinct uniform non-tree edges.
pub fn random_connected_graph(n: usize, extra: usize, seed: MasterSeed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::usage("random graph needs at least 1 node"));
    }
    let max_extra = n * (n - 1) / 2 - (n - 1);
    if extra > max_extra {
        return Err(Error::usage(format!("{extra} extra edges requested but only {max_extra} non-tree pairs exist")));
    }
    let mut rng = KeyedStream::new(seed, domain::TOPOLOGY, n as u64, extra as u64);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(n - 1 + extra);
    if n == 2 {
        edges.push((0, 1));
    } else if n > 2 {
        let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &p in &prufer {
            degree[p] += 1;
        }
        let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
        for &p in &prufer {
            let std::cmp::Reverse(leaf) = leaves.pop().expect("prufer decoding always has a leaf");
            edges.push(ordered(leaf, p));
            degree[p] -= 1;
            if degree[p] == 1 {
                leaves.push(std::cmp::Reverse(p));
            }
        }
        let std::cmp::Reverse(a) = leaves.pop().unwrap();
        let std::cmp::Reverse(b) = leaves.pop().unwrap();
        edges.push(ordered(a, b));
    }
    let mut present: HashSet<(NodeId, NodeId)> = edges.iter().copied().collect();
    if extra > max_extra / 2 {
        // dense request: sample from the explicit complement
        let mut pool: Vec<(NodeId, NodeId)> = Vec::with_capacity(max_extra);
        for a in 0..n as NodeId {
            for b in a + 1..n as NodeId {
                if !present.contains(&(a, b)) {
                    pool.push((a, b));
                }
            }
        }
        pool.shuffle(&mut rng);
        edges.extend_from_slice(&pool[..extra]);
    } else {
        while present.len() < n - 1 + extra {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let e = ordered(a, b);
            if present.insert(e) {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

fn ordered(a: usize, b: usize) -> (NodeId, NodeId) {
    if a < b {
        (a as NodeId, b as NodeId)
    } else {
        (b as NodeId, a as NodeId)
    }
}

/// How a schedule produces its per-round graph.
#[derive(Clone, Debug)]
pub enum ScheduleKind {
    Static(Graph),
    /// Star centred at node `r mod n` in round `r`, defined for rounds `1..=n`.
    DynamicStar,
    /// The rotating star continued past round `n`.
    CyclicDynamicStar,
    /// `graphs[r - 1]` is the graph of round `r`.
    Sequence(Vec<Graph>),
}

/// The adversary's dynamic graph `G_1, G_2, ...`. Every snapshot is
/// connected; snapshots are pure functions of the round.
#[derive(Clone, Debug)]
pub struct DynamicSchedule {
    n: usize,
    kind: ScheduleKind,
}

impl DynamicSchedule {
    pub fn static_graph(g: Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::validation("static schedule graph is disconnected"));
        }
        Ok(DynamicSchedule { n: g.n(), kind: ScheduleKind::Static(g) })
    }

    pub fn static_line(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("line needs at least 1 node"));
        }
        Self::static_graph(line_graph(n))
    }

    pub fn static_star(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("star needs at least 1 node"));
        }
        Self::static_graph(star_graph(n, 0))
    }

    pub fn static_complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("complete graph needs at least 1 node"));
        }
        Self::static_graph(complete_graph(n))
    }

    pub fn static_grid(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::usage("grid dimensions must be positive"));
        }
        Self::static_graph(grid_graph(rows, cols))
    }

    pub fn static_from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        Self::static_graph(Graph::connected(n, edges)?)
    }

    pub fn random_connected(n: usize, extra: usize, seed: MasterSeed) -> Result<Self> {
        Self::static_graph(random_connected_graph(n, extra, seed)?)
    }

    pub fn dynamic_star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::usage("dynamic star needs at least 2 nodes"));
        }
        Ok(DynamicSchedule { n, kind: ScheduleKind::DynamicStar })
    }

    pub fn cyclic_dynamic_star(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::usage("cyclic dynamic star needs at least 2 nodes"));
        }
        Ok(DynamicSchedule { n, kind: ScheduleKind::CyclicDynamicStar })
    }

    pub fn explicit_sequence(graphs: Vec<Graph>) -> Result<Self> {
        let n = graphs.first().map(Graph::n).ok_or_else(|| Error::usage("empty graph sequence"))?;
        for (i, g) in graphs.iter().enumerate() {
            if g.n() != n {
                return Err(Error::validation(format!("graph {} has {} nodes, expected {n}", i + 1, g.n())));
            }
            if !g.is_connected() {
                return Err(Error::validation(format!("graph for round {} is disconnected", i + 1)));
            }
        }
        Ok(DynamicSchedule { n, kind: ScheduleKind::Sequence(graphs) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    /// Last defined round, if finite.
    pub fn horizon(&self) -> Option<Round> {
        match &self.kind {
            ScheduleKind::DynamicStar => Some(self.n as Round),
            ScheduleKind::Sequence(gs) => Some(gs.len() as Round),
            _ => None,
        }
    }

    pub fn is_static(&self) -> bool {
        matches!(self.kind, ScheduleKind::Static(_))
    }

    /// True when the rotation continues past the first `n` rounds.
    pub fn is_cyclic_extension(&self) -> bool {
        matches!(self.kind, ScheduleKind::CyclicDynamicStar)
    }

    /// Centre of the rotating star in round `r`.
    pub fn star_center(&self, r: Round) -> Option<NodeId> {
        match self.kind {
            ScheduleKind::DynamicStar | ScheduleKind::CyclicDynamicStar => Some((r % self.n as Round) as NodeId),
            _ => None,
        }
    }

    /// The graph `G_r`.
    pub fn snapshot(&self, r: Round) -> Result<Cow<'_, Graph>> {
        if r == 0 {
            return Err(Error::usage("rounds start at 1"));
        }
        if let Some(h) = self.horizon() {
            if r > h {
                return Err(Error::Horizon { round: r, horizon: h });
            }
        }
        Ok(match &self.kind {
            ScheduleKind::Static(g) => Cow::Borrowed(g),
            ScheduleKind::Sequence(gs) => Cow::Borrowed(&gs[(r - 1) as usize]),
            ScheduleKind::DynamicStar | ScheduleKind::CyclicDynamicStar => {
                Cow::Owned(star_graph(self.n, self.star_center(r).unwrap()))
            }
        })
    }
}
