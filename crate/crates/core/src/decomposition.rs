// SPDX-License-Identifier: Apache-2.0

//! Partition of a connected static graph into components of size at least
//! `⌈√n⌉` whose induced diameter is at most `6·⌈√n⌉`.
//!
//! Stage one grows preliminary components by BFS inside the subgraph of
//! still-free nodes, starting from the lowest-id free node and visiting
//! neighbours in ascending id. A search that has discovered `⌈√n⌉` nodes
//! stops and is red; one that runs out of free nodes first is blue. Stage
//! two folds every blue component into its lowest-index adjacent red one.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::Graph;
use crate::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preliminary {
    pub nodes: Vec<NodeId>,
    pub color: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub size: usize,
    pub diameter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    /// Sorted node sets.
    pub components: Vec<Vec<NodeId>>,
    pub certificates: Vec<Certificate>,
    /// `component_of[v]` indexes `components`.
    pub component_of: Vec<usize>,
    pub preliminary: Vec<Preliminary>,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    components: &'a [Vec<NodeId>],
}

impl Decomposition {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&DecompositionJson { components: &self.components })?)
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        g.to_dot(Some(&self.component_of))
    }
}

pub fn size_threshold(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

pub fn diameter_bound(n: usize) -> usize {
    6 * size_threshold(n)
}

pub fn decompose(g: &Graph) -> Result<Decomposition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::validation("cannot decompose an empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::validation("decomposition requires a connected graph"));
    }
    let threshold = size_threshold(n);
    const FREE: usize = usize::MAX;
    let mut prelim_of = vec![FREE; n];
    let mut preliminary: Vec<Preliminary> = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..n {
        if prelim_of[start] != FREE {
            continue;
        }
        let id = preliminary.len();
        let mut nodes = vec![start as NodeId];
        prelim_of[start] = id;
        queue.clear();
        queue.push_back(start as NodeId);
        let mut red = nodes.len() >= threshold;
        'bfs: while !red {
            let Some(v) = queue.pop_front() else { break };
            for &w in g.neighbors(v) {
                if prelim_of[w as usize] == FREE {
                    prelim_of[w as usize] = id;
                    nodes.push(w);
                    queue.push_back(w);
                    if nodes.len() >= threshold {
                        red = true;
                        break 'bfs;
                    }
                }
            }
        }
        nodes.sort_unstable();
        preliminary.push(Preliminary { nodes, color: if red { Color::Red } else { Color::Blue } });
    }

    // every blue has a red neighbour: any neighbouring blue was built
    // earlier, when this blue's nodes were still free and adjacent
    let mut final_of_prelim = vec![usize::MAX; preliminary.len()];
    let mut components: Vec<Vec<NodeId>> = Vec::new();
    for (i, p) in preliminary.iter().enumerate() {
        if p.color == Color::Red {
            final_of_prelim[i] = components.len();
            components.push(p.nodes.clone());
        }
    }
    for (i, p) in preliminary.iter().enumerate() {
        if p.color == Color::Blue {
            let red = p
                .nodes
                .iter()
                .flat_map(|&v| g.neighbors(v))
                .map(|&w| prelim_of[w as usize])
                .filter(|&j| preliminary[j].color == Color::Red)
                .min()
                .ok_or_else(|| Error::validation(format!("blue component {i} has no red neighbour")))?;
            let c = final_of_prelim[red];
            final_of_prelim[i] = c;
            components[c].extend_from_slice(&p.nodes);
        }
    }
    let mut component_of = vec![0usize; n];
    for c in components.iter_mut() {
        c.sort_unstable();
    }
    for (ci, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v as usize] = ci;
        }
    }
    let certificates = components
        .iter()
        .map(|c| Certificate { size: c.len(), diameter: induced_diameter(g, c, &component_of).unwrap_or(usize::MAX) })
        .collect();
    Ok(Decomposition { n, components, certificates, component_of, preliminary })
}

/// Diameter of the subgraph induced by `nodes` (all sharing one label in
/// `label`), or `None` if it is disconnected.
fn induced_diameter(g: &Graph, nodes: &[NodeId], label: &[usize]) -> Option<usize> {
    let Some(&first) = nodes.first() else { return Some(0) };
    let tag = label[first as usize];
    let mut dist = vec![usize::MAX; g.n()];
    let mut touched = Vec::with_capacity(nodes.len());
    let mut queue = VecDeque::new();
    let mut diameter = 0;
    for &src in nodes {
        for &v in &touched {
            dist[v as usize] = usize::MAX;
        }
        touched.clear();
        dist[src as usize] = 0;
        touched.push(src);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            diameter = diameter.max(d);
            for &w in g.neighbors(v) {
                if label[w as usize] == tag && dist[w as usize] == usize::MAX {
                    dist[w as usize] = d + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        if touched.len() != nodes.len() {
            return None;
        }
    }
    Some(diameter)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub partition: bool,
    pub size: bool,
    pub connectivity: bool,
    pub diameter: bool,
    pub min_size: usize,
    pub max_diameter: Option<usize>,
    pub size_threshold: usize,
    pub diameter_bound: usize,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.partition && self.size && self.connectivity && self.diameter
    }
}

/// Recomputes every certificate from scratch, using only `d.components`.
pub fn validate(g: &Graph, d: &Decomposition) -> CertificateReport {
    let n = g.n();
    let threshold = size_threshold(n);
    let bound = diameter_bound(n);
    let mut owner = vec![usize::MAX; n];
    let mut partition = d.components.iter().all(|c| !c.is_empty());
    for (ci, c) in d.components.iter().enumerate() {
        for &v in c {
            if v as usize >= n || owner[v as usize] != usize::MAX {
                partition = false;
            } else {
                owner[v as usize] = ci;
            }
        }
    }
    partition &= owner.iter().all(|&o| o != usize::MAX);
    let min_size = d.components.iter().map(Vec::len).min().unwrap_or(0);
    let mut connectivity = partition;
    let mut max_diameter = Some(0);
    if partition {
        for c in &d.components {
            match induced_diameter(g, c, &owner) {
                Some(diam) => max_diameter = max_diameter.map(|m: usize| m.max(diam)),
                None => {
                    connectivity = false;
                    max_diameter = None;
                }
            }
        }
    } else {
        max_diameter = None;
    }
    CertificateReport {
        partition,
        size: !d.components.is_empty() && min_size >= threshold,
        connectivity,
        diameter: max_diameter.is_some_and(|m| m <= bound),
        min_size,
        max_diameter,
        size_threshold: threshold,
        diameter_bound: bound,
    }
}
