//! Arc-labeled multigraphs, diameters, and exact isomorphism testing by
//! color refinement with individualization.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// Directed multigraph with labeled arcs `(source, target, label)`.
/// Involutive generators contribute an arc in each direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertex_colors: Vec<usize>,
    pub arcs: Vec<(usize, usize, usize)>,
    pub labels: Vec<String>,
    pub involutive: Vec<bool>,
}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_colors.len()
    }

    /// Undirected neighbor lists, loops dropped.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v, _) in &self.arcs {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Longest shortest path with unit, undirected edges.
    pub fn diameter(&self) -> Result<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return Ok(0);
        }
        let adj = self.neighbors();
        let mut best = 0;
        let mut dist = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            let mut seen = 1;
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        best = best.max(dist[v]);
                        seen += 1;
                        q.push_back(v);
                    }
                }
            }
            if seen != n {
                return Err(Error::Graph("diameter of a disconnected graph".into()));
            }
        }
        Ok(best)
    }

    pub fn is_connected(&self) -> bool {
        self.diameter().is_ok()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub edge_labels: bool,
    pub vertex_colors: bool,
}

struct Prepared {
    n: usize,
    /// per vertex: (label, direction, neighbor)
    adj: Vec<Vec<(usize, u8, usize)>>,
    arcs: Vec<(usize, usize, usize)>,
}

fn prepare(g: &LabeledGraph, opts: IsoOptions) -> Prepared {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut arcs = Vec::with_capacity(g.arcs.len());
    for &(u, v, l) in &g.arcs {
        let l = if opts.edge_labels { l } else { 0 };
        adj[u].push((l, 0, v));
        adj[v].push((l, 1, u));
        arcs.push((u, v, l));
    }
    arcs.sort_unstable();
    Prepared { n, adj, arcs }
}

type Signature = (usize, Vec<(usize, u8, usize)>);

/// Refines both colorings jointly until stable; returns false as soon as
/// the color histograms differ.
fn refine(a: &Prepared, b: &Prepared, ca: &mut Vec<usize>, cb: &mut Vec<usize>) -> bool {
    let mut classes = count_colors(ca, cb);
    loop {
        let sig = |p: &Prepared, c: &[usize], v: usize| -> Signature {
            let mut s: Vec<(usize, u8, usize)> = p.adj[v].iter().map(|&(l, d, w)| (l, d, c[w])).collect();
            s.sort_unstable();
            (c[v], s)
        };
        let sa: Vec<Signature> = (0..a.n).map(|v| sig(a, ca, v)).collect();
        let sb: Vec<Signature> = (0..b.n).map(|v| sig(b, cb, v)).collect();
        let mut table: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            table.insert(s, 0);
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i;
        }
        let na: Vec<usize> = sa.iter().map(|s| table[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| table[s]).collect();
        let new_classes = table.len();
        *ca = na;
        *cb = nb;
        if !same_histogram(ca, cb) {
            return false;
        }
        if new_classes == classes {
            return true;
        }
        classes = new_classes;
    }
}

fn count_colors(ca: &[usize], cb: &[usize]) -> usize {
    let mut all: Vec<usize> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn same_histogram(ca: &[usize], cb: &[usize]) -> bool {
    let hist = |c: &[usize]| {
        let mut h = BTreeMap::new();
        for &x in c {
            *h.entry(x).or_insert(0usize) += 1;
        }
        h
    };
    hist(ca) == hist(cb)
}

fn search(a: &Prepared, b: &Prepared, mut ca: Vec<usize>, mut cb: Vec<usize>) -> bool {
    if !refine(a, b, &mut ca, &mut cb) {
        return false;
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let pick = sizes
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(color) = pick else {
        // discrete: the coloring is a bijection; check it maps arcs onto arcs
        let mut map = vec![0usize; a.n];
        let mut by_color = vec![usize::MAX; ca.iter().max().map_or(0, |m| m + 1)];
        for (w, &c) in cb.iter().enumerate() {
            by_color[c] = w;
        }
        for (v, &c) in ca.iter().enumerate() {
            map[v] = by_color[c];
        }
        let mut mapped: Vec<(usize, usize, usize)> = a.arcs.iter().map(|&(u, v, l)| (map[u], map[v], l)).collect();
        mapped.sort_unstable();
        return mapped == b.arcs;
    };
    let fresh = count_colors(&ca, &cb).max(ca.iter().chain(&cb).max().map_or(0, |m| m + 1));
    let v = ca.iter().position(|&c| c == color).expect("color present");
    for w in (0..b.n).filter(|&w| cb[w] == color) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[w] = fresh;
        if search(a, b, na, nb) {
            return true;
        }
    }
    false
}

/// Exact isomorphism of arc-labeled multigraphs (direction always respected).
pub fn isomorphic_with(g1: &LabeledGraph, g2: &LabeledGraph, opts: IsoOptions) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.arcs.len() != g2.arcs.len() {
        return false;
    }
    let a = prepare(g1, opts);
    let b = prepare(g2, opts);
    let init = |g: &LabeledGraph| -> Vec<usize> {
        if opts.vertex_colors {
            g.vertex_colors.clone()
        } else {
            vec![0; g.vertex_count()]
        }
    };
    search(&a, &b, init(g1), init(g2))
}

/// Isomorphism ignoring vertex colors; edge labels optional.
pub fn isomorphic(g1: &LabeledGraph, g2: &LabeledGraph, respect_edge_labels: bool) -> bool {
    isomorphic_with(
        g1,
        g2,
        IsoOptions {
            edge_labels: respect_edge_labels,
            vertex_colors: false,
        },
    )
}
