//! Directed acyclic graphs, their text format, and the standard generators.
//!
//! Text format: the first non-comment line is the vertex count `n`; every
//! further line `u v` is an edge `u -> v`. `#` starts a comment. Vertices are
//! 0-based integers, or (when any token is not an integer) names mapped to
//! indices in order of first appearance; a one-token line declares a named
//! vertex.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::MAX_VARS;

pub type Vertex = u32;

/// Largest graph the exhaustive searches accept by default.
pub const DEFAULT_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph contains a cycle through vertex {0}")]
    CycleDetected(Vertex),
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange { line: usize, vertex: String, n: usize },
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("line {line}: malformed: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("invalid generator parameter: {0}")]
    InvalidParam(String),
    #[error("{0} vertices exceed the supported maximum of {MAX_VARS}")]
    TooLarge(usize),
}

/// An immutable, validated DAG.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    preds: Vec<Vec<Vertex>>,
    succs: Vec<Vec<Vertex>>,
    sink: Option<Vertex>,
    names: Option<Vec<String>>,
}

impl Dag {
    /// Build from an edge list `(u, v)` meaning `u -> v`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Dag, GraphError> {
        if n > MAX_VARS {
            return Err(GraphError::TooLarge(n));
        }
        let mut preds = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::IndexOutOfRange { line: 0, vertex: x.to_string(), n });
                }
            }
            if u == v {
                return Err(GraphError::CycleDetected(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            preds[v as usize].push(u);
        }
        Self::from_preds(preds)
    }

    fn from_preds(mut preds: Vec<Vec<Vertex>>) -> Result<Dag, GraphError> {
        let n = preds.len();
        let mut succs = vec![Vec::new(); n];
        for (v, ps) in preds.iter_mut().enumerate() {
            ps.sort_unstable();
            for &u in ps.iter() {
                succs[u as usize].push(v as Vertex);
            }
        }
        let dag = Dag { sink: None, preds, succs, names: None };
        dag.topological_order()?;
        let sinks: Vec<Vertex> = (0..n as Vertex).filter(|&v| dag.succs[v as usize].is_empty()).collect();
        let sink = if sinks.len() == 1 { Some(sinks[0]) } else { None };
        Ok(Dag { sink, ..dag })
    }

    /// Attach display names (one per vertex).
    pub fn with_names(mut self, names: Vec<String>) -> Result<Dag, GraphError> {
        if names.len() != self.n() {
            return Err(GraphError::InvalidParam(format!("{} names for {} vertices", names.len(), self.n())));
        }
        let mut seen = HashSet::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') || !seen.insert(name) {
                return Err(GraphError::MalformedLine { line: i, text: name.clone() });
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.preds.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n() as Vertex
    }

    pub fn preds(&self, v: Vertex) -> &[Vertex] {
        &self.preds[v as usize]
    }

    pub fn succs(&self, v: Vertex) -> &[Vertex] {
        &self.succs[v as usize]
    }

    /// The unique vertex of out-degree zero, if there is exactly one.
    pub fn sink(&self) -> Option<Vertex> {
        self.sink
    }

    pub fn sinks(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.succs(v).is_empty()).collect()
    }

    pub fn sources(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.preds(v).is_empty()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.preds.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices().flat_map(|v| self.preds(v).iter().map(move |&u| (u, v))).collect()
    }

    pub fn max_in_degree(&self) -> usize {
        self.preds.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn name(&self, v: Vertex) -> String {
        match &self.names {
            Some(names) => names[v as usize].clone(),
            None => v.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Kahn's algorithm, smallest available vertex first.
    pub fn topological_order(&self) -> Result<Vec<Vertex>, GraphError> {
        let n = self.n();
        let mut indeg: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<Vertex> = (0..n as Vertex).filter(|&v| indeg[v as usize] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &self.succs[v as usize] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap() as Vertex;
            return Err(GraphError::CycleDetected(stuck));
        }
        Ok(order)
    }

    pub fn parse(text: &str) -> Result<Dag, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines.next().ok_or(GraphError::MalformedLine { line: 1, text: String::new() })?;
        let n: usize = first
            .parse()
            .map_err(|_| GraphError::MalformedLine { line: first_no, text: first.to_string() })?;
        if n > MAX_VARS {
            return Err(GraphError::TooLarge(n));
        }
        let body: Vec<(usize, Vec<&str>)> = lines.map(|(i, l)| (i, l.split_whitespace().collect())).collect();
        for (no, toks) in &body {
            if toks.is_empty() || toks.len() > 2 {
                return Err(GraphError::MalformedLine { line: *no, text: toks.join(" ") });
            }
        }
        let named = body.iter().any(|(_, toks)| toks.len() == 1 || toks.iter().any(|t| t.parse::<Vertex>().is_err()));

        let mut names: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, Vertex> = HashMap::new();
        let mut resolve = |tok: &str, line: usize| -> Result<Vertex, GraphError> {
            if named {
                if let Some(&v) = lookup.get(tok) {
                    return Ok(v);
                }
                if names.len() >= n {
                    return Err(GraphError::IndexOutOfRange { line, vertex: tok.to_string(), n });
                }
                let v = names.len() as Vertex;
                names.push(tok.to_string());
                lookup.insert(tok.to_string(), v);
                Ok(v)
            } else {
                let v: Vertex = tok.parse().map_err(|_| GraphError::MalformedLine { line, text: tok.to_string() })?;
                if v as usize >= n {
                    return Err(GraphError::IndexOutOfRange { line, vertex: tok.to_string(), n });
                }
                Ok(v)
            }
        };

        let mut preds = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (no, toks) in &body {
            if toks.len() == 1 {
                resolve(toks[0], *no)?;
                continue;
            }
            let u = resolve(toks[0], *no)?;
            let v = resolve(toks[1], *no)?;
            if u == v {
                return Err(GraphError::CycleDetected(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            preds[v as usize].push(u);
        }
        let dag = Self::from_preds(preds)?;
        if named {
            for i in names.len()..n {
                // unnamed leftovers keep their index as a name
                let mut candidate = i.to_string();
                while lookup.contains_key(&candidate) {
                    candidate.push('_');
                }
                lookup.insert(candidate.clone(), i as Vertex);
                names.push(candidate);
            }
            return dag.with_names(names);
        }
        Ok(dag)
    }

    /// Render in the text format; edges are grouped by target in
    /// topological order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.n()).unwrap();
        let order = self.topological_order().expect("validated on construction");
        if let Some(names) = &self.names {
            for name in names {
                writeln!(out, "{name}").unwrap();
            }
        }
        for v in order {
            for &u in self.preds(v) {
                writeln!(out, "{} {}", self.name(u), self.name(v)).unwrap();
            }
        }
        out
    }
}

/// Generator families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Path { n: usize },
    Pyramid { height: usize },
    BinaryTree { height: usize },
    Random { n: usize, p: f64, seed: u64 },
}

pub fn generate(kind: GraphKind) -> Result<Dag, GraphError> {
    match kind {
        GraphKind::Path { n } => path(n),
        GraphKind::Pyramid { height } => pyramid(height),
        GraphKind::BinaryTree { height } => binary_tree(height),
        GraphKind::Random { n, p, seed } => random(n, p, seed),
    }
}

/// `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> Result<Dag, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParam("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    Dag::new(n, &edges)
}

/// Pyramid with `height + 1` levels; level `l` has `height + 1 - l`
/// vertices and vertex `i` of level `l` sits on `i` and `i + 1` of level
/// `l - 1`.
pub fn pyramid(height: usize) -> Result<Dag, GraphError> {
    if height == 0 {
        return Err(GraphError::InvalidParam("pyramid needs height >= 1".into()));
    }
    let mut offsets = Vec::new();
    let mut n = 0;
    for l in 0..=height {
        offsets.push(n);
        n += height + 1 - l;
    }
    let mut edges = Vec::new();
    for l in 1..=height {
        for i in 0..(height + 1 - l) {
            let v = (offsets[l] + i) as Vertex;
            edges.push(((offsets[l - 1] + i) as Vertex, v));
            edges.push(((offsets[l - 1] + i + 1) as Vertex, v));
        }
    }
    Dag::new(n, &edges)
}

/// Complete binary tree with edges pointing to the root; leaves are the
/// sources and the root (vertex `2^(h+1) - 2`) is the sink.
pub fn binary_tree(height: usize) -> Result<Dag, GraphError> {
    if height == 0 {
        return Err(GraphError::InvalidParam("binary tree needs height >= 1".into()));
    }
    let n = (1usize << (height + 1)) - 1;
    if n > MAX_VARS {
        return Err(GraphError::TooLarge(n));
    }
    // heap layout, relabelled so every edge goes from a smaller index up
    let id = |heap: usize| (n - 1 - heap) as Vertex;
    let mut edges = Vec::new();
    for i in 0..n {
        for child in [2 * i + 1, 2 * i + 2] {
            if child < n {
                edges.push((id(child), id(i)));
            }
        }
    }
    Dag::new(n, &edges)
}

/// Each edge `i -> j` (`i < j`) appears with probability `p`; if that leaves
/// several sinks they all feed a fresh apex vertex.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Dag, GraphError> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParam(format!("random needs n >= 1 and p in [0,1], got n={n} p={p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for j in 0..n as Vertex {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let mut has_succ = vec![false; n];
    for &(u, _) in &edges {
        has_succ[u as usize] = true;
    }
    let sinks: Vec<Vertex> = (0..n as Vertex).filter(|&v| !has_succ[v as usize]).collect();
    if sinks.len() > 1 {
        let apex = n as Vertex;
        edges.extend(sinks.into_iter().map(|s| (s, apex)));
        return Dag::new(n + 1, &edges);
    }
    Dag::new(n, &edges)
}

/// All single-sink DAGs on exactly `n` vertices, one representative per
/// isomorphism class, each in a topological labelling. Exhaustive, so keep
/// `n` small (n = 6 already means 2^15 edge sets times 720 relabellings).
pub fn single_sink_dags(n: usize) -> Vec<Dag> {
    assert!((1..=6).contains(&n), "exhaustive enumeration supports 1..=6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
        let mut out_deg = vec![0usize; n];
        for &(u, _) in &edges {
            out_deg[u] += 1;
        }
        if out_deg.iter().filter(|&&d| d == 0).count() != 1 {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u64, |acc, &(u, v)| acc | 1u64 << (p[u] * n + p[v])))
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let e: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u as Vertex, v as Vertex)).collect();
            out.push(Dag::new(n, &e).expect("upper-triangular edge sets are acyclic"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}
