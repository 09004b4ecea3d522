//! Finite simple graphs on at most 32 vertices, stored as neighbourhood bitmasks.
//!
//! Everything downstream works on induced subgraphs addressed by a [`VertexSet`]
//! mask, so the representation is kept deliberately flat: one `u32` per vertex.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default vertex cap. The invariant DP is exponential in the vertex count.
pub const DEFAULT_CAP: usize = 20;

/// Hard upper bound imposed by the `u32` mask width.
pub const MAX_CAP: usize = 32;

/// A subset of the vertices of a graph, bit `i` set iff vertex `i` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CAP);
        if n == MAX_CAP {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least vertex in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, including `self` and the empty set, in decreasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(VertexSet(cur))
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A finite, undirected, simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_CAP {
            return Err(Error::CapExceeded { n, cap: MAX_CAP });
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    /// The null graph, with no vertices.
    pub fn null() -> Self {
        Graph {
            adj: Vec::new(),
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidFamily(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidFamily(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// The connected component of `v` inside the induced subgraph on `within`.
    #[inline]
    pub fn component_of(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.adj[u]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Relabel vertices so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut adj = vec![VertexSet::EMPTY; n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        let labels = self.labels.as_ref().map(|ls| {
            let mut out = vec![String::new(); n];
            for (v, l) in ls.iter().enumerate() {
                out[perm[v]] = l.clone();
            }
            out
        });
        Graph { adj, labels }
    }

    /// Simple-graph invariants: no loops, symmetric adjacency, no bits beyond `n`.
    pub fn is_well_formed(&self) -> bool {
        let all = self.vertices();
        self.adj.iter().enumerate().all(|(u, a)| {
            !a.contains(u) && a.is_subset(all) && a.iter().all(|v| self.adj[v].contains(u))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_CAP);
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Partition `s` into the vertex sets of the connected components of `g|_s`,
/// ordered by least vertex.
pub fn connected_components(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut rest = s;
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let c = g.component_of(v, rest);
        out.push(c);
        rest = rest.difference(c);
    }
    out
}

/// `g1 ⊔ g2`, with the vertices of `g2` shifted past those of `g1`.
pub fn disjoint_union(g1: &Graph, g2: &Graph, cap: usize) -> Result<Graph> {
    let n1 = g1.n();
    check_cap(n1 + g2.n(), cap)?;
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|a| VertexSet(a.0 << n1)));
    let labels = match (&g1.labels, &g2.labels) {
        (None, None) => None,
        (l1, l2) => {
            let name = |ls: &Option<Vec<String>>, n: usize, off: usize| -> Vec<String> {
                ls.clone()
                    .unwrap_or_else(|| (0..n).map(|i| (i + off).to_string()).collect())
            };
            let mut ls = name(l1, n1, 0);
            ls.extend(name(l2, g2.n(), n1));
            Some(ls)
        }
    };
    Ok(Graph { adj, labels })
}

/// The graph families with closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `Star(m)` is `K_{1,m}`, with `m + 1` vertices and centre 0.
    Star(usize),
    CompleteMultipartite(Vec<usize>),
}

impl GraphFamily {
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphFamily::Path(n) | GraphFamily::Cycle(n) | GraphFamily::Complete(n) => *n,
            GraphFamily::Star(m) => m + 1,
            GraphFamily::CompleteMultipartite(parts) => parts.iter().sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GraphFamily::Cycle(n @ (1 | 2)) => Err(Error::InvalidFamily(format!(
                "cycle:{n} is not a simple graph"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Path(n) => write!(f, "path:{n}"),
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::Star(n) => write!(f, "star:{n}"),
            GraphFamily::CompleteMultipartite(parts) => {
                let ps: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "multipartite:{}", ps.join(","))
            }
        }
    }
}

impl std::str::FromStr for GraphFamily {
    type Err = Error;

    /// Parses `name:args`, e.g. `path:5`, `star:3`, `multipartite:2,3`.
    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(spec.to_string());
        let (name, args) = spec.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        let single = || match nums.as_slice() {
            [n] => Ok(*n),
            _ => Err(bad()),
        };
        let fam = match name.trim() {
            "path" => GraphFamily::Path(single()?),
            "cycle" => GraphFamily::Cycle(single()?),
            "complete" => GraphFamily::Complete(single()?),
            "star" => GraphFamily::Star(single()?),
            "multipartite" | "bipartite" => GraphFamily::CompleteMultipartite(nums),
            _ => return Err(bad()),
        };
        fam.validate()?;
        Ok(fam)
    }
}

/// Build a family member with the canonical numbering: walk order for paths and
/// cycles, centre 0 for stars, consecutive blocks for multipartite parts.
pub fn build_family(f: &GraphFamily, cap: usize) -> Result<Graph> {
    f.validate()?;
    let n = f.vertex_count();
    check_cap(n, cap)?;
    let mut g = Graph::empty(n)?;
    match f {
        GraphFamily::Path(n) => {
            for i in 1..*n {
                g.add_edge(i - 1, i)?;
            }
        }
        GraphFamily::Cycle(n) => {
            for i in 1..*n {
                g.add_edge(i - 1, i)?;
            }
            if *n >= 3 {
                g.add_edge(n - 1, 0)?;
            }
        }
        GraphFamily::Complete(n) => {
            for u in 0..*n {
                for v in u + 1..*n {
                    g.add_edge(u, v)?;
                }
            }
        }
        GraphFamily::Star(m) => {
            for v in 1..=*m {
                g.add_edge(0, v)?;
            }
        }
        GraphFamily::CompleteMultipartite(parts) => {
            let mut part_of = Vec::with_capacity(n);
            for (i, &p) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, p));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if part_of[u] != part_of[v] {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Parse a whitespace-separated edge list.
///
/// One edge `u v` per line; `#` starts a comment; an optional `n=<k>` line fixes
/// the vertex count, which is the only way to declare isolated vertices. If every
/// token is a nonnegative integer the tokens are vertex indices, otherwise they are
/// labels numbered in order of first appearance.
pub fn parse_edge_list<'a>(text: &'a str, cap: usize) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::EdgeList { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
            if declared.is_some() {
                return Err(err("duplicate n= header".into()));
            }
            let k = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(format!("bad vertex count `{}`", rest.trim())))?;
            check_cap(k, cap)?;
            declared = Some(k);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v] => pairs.push((line_no, u, v)),
            _ => return Err(err(format!("expected `u v`, got `{line}`"))),
        }
    }

    let numeric = pairs
        .iter()
        .all(|(_, u, v)| u.parse::<usize>().is_ok() && v.parse::<usize>().is_ok());

    let mut edges = Vec::with_capacity(pairs.len());
    let mut labels: Option<Vec<String>> = None;
    let n = if numeric {
        let mut max_seen: Option<usize> = None;
        for &(line, u, v) in &pairs {
            let (u, v) = (u.parse::<usize>().unwrap(), v.parse::<usize>().unwrap());
            if let Some(k) = declared {
                if u >= k || v >= k {
                    return Err(Error::EdgeList {
                        line,
                        msg: format!("vertex {} is not below declared n={k}", u.max(v)),
                    });
                }
            }
            max_seen = Some(max_seen.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((line, u, v));
        }
        let n = declared.unwrap_or(max_seen.map_or(0, |m| m + 1));
        check_cap(n, cap)?;
        n
    } else {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        for &(line, u, v) in &pairs {
            let mut id = |tok: &'a str| -> Result<usize> {
                if let Some(&i) = index.get(tok) {
                    return Ok(i);
                }
                let i = names.len();
                if i >= cap.min(MAX_CAP) {
                    return Err(Error::CapExceeded {
                        n: i + 1,
                        cap: cap.min(MAX_CAP),
                    });
                }
                index.insert(tok, i);
                names.push(tok.to_string());
                Ok(i)
            };
            let (a, b) = (id(u)?, id(v)?);
            edges.push((line, a, b));
        }
        let n = match declared {
            Some(k) if k < names.len() => {
                return Err(Error::EdgeList {
                    line: 0,
                    msg: format!("{} distinct labels but n={k}", names.len()),
                })
            }
            Some(k) => k,
            None => names.len(),
        };
        check_cap(n, cap)?;
        for i in names.len()..n {
            names.push(i.to_string());
        }
        labels = Some(names);
        n
    };

    let mut g = Graph::empty(n)?;
    for (line, u, v) in edges {
        if u == v {
            return Err(Error::EdgeList {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        g.add_edge(u, v)?;
    }
    if let Some(ls) = labels {
        g = g.with_labels(ls);
    }
    Ok(g)
}

const G6_OFFSET: u8 = 63;

/// Decode one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str, cap: usize) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} is outside the printable range 63..=126",
            bytes[pos]
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => {
            if bytes.len() < 8 {
                return Err(Error::Graph6("truncated 8-byte length header".into()));
            }
            let n = bytes[2..8]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - G6_OFFSET) as usize);
            (n, &bytes[8..])
        }
        [126, ..] => {
            if bytes.len() < 4 {
                return Err(Error::Graph6("truncated 4-byte length header".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - G6_OFFSET) as usize);
            if n < 63 {
                return Err(Error::Graph6(format!(
                    "non-canonical long header for n={n}"
                )));
            }
            (n, &bytes[4..])
        }
        [b, ..] => ((b - G6_OFFSET) as usize, &bytes[1..]),
    };
    check_cap(n, cap)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "n={n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - G6_OFFSET) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// Encode as a graph6 line (no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + G6_OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + G6_OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + G6_OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + G6_OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
