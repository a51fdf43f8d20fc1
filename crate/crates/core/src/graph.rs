//! Simple undirected graphs for the reduction generators, plus exhaustive oracles for
//! clique, vertex cover and biclique on tiny inputs.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinations::{binomial, next_combination};
use crate::error::{Error, Result};

/// Largest vertex count the exhaustive oracles accept.
pub const ORACLE_MAX_VERTICES: usize = 16;

const RANDOM_REGULAR_ATTEMPTS: usize = 10_000;

/// Simple undirected graph with edges stored as sorted `(u, v)` pairs, `u < v`, in
/// ascending order. An optional bipartition declares vertices `0..left` as the left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    left: Option<usize>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Structure(format!(
                    "edge ({u}, {v}) leaves the vertex range 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Structure(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Graph {
            vertex_count,
            edges: canon,
            left: None,
        })
    }

    /// Declares `0..left` and `left..n` as the two sides; every edge must cross.
    pub fn with_bipartition(mut self, left: usize) -> Result<Self> {
        if left > self.vertex_count {
            return Err(Error::Structure(format!(
                "left side of size {left} exceeds {} vertices",
                self.vertex_count
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| (u < left) == (v < left)) {
            return Err(Error::Structure(format!(
                "edge ({u}, {v}) does not cross the bipartition at {left}"
            )));
        }
        self.left = Some(left);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Size of the left side when a bipartition is declared.
    pub fn bipartition(&self) -> Option<usize> {
        self.left
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            Some(&d) if deg.iter().all(|&x| x == d) => Some(d),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Edge-list text: `p <n>`, optional `b <left>`, then one `e u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count);
        if let Some(left) = self.left {
            let _ = writeln!(out, "b {left}");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    /// Parses edge-list text. Blank lines and lines starting with `#` or `c` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertex_count = None;
        let mut left = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let loc = || format!("line {}", lineno + 1);
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap_or_default();
            let nums: Vec<usize> = fields
                .map(|f| {
                    f.parse()
                        .map_err(|_| Error::parse(loc(), format!("expected an index, found {f:?}")))
                })
                .collect::<Result<_>>()?;
            match (tag, nums.as_slice()) {
                ("p", &[n]) if vertex_count.is_none() => vertex_count = Some(n),
                ("p", _) => return Err(Error::parse(loc(), "expected a single \"p <n>\" header")),
                ("b", &[l]) if vertex_count.is_some() && left.is_none() && edges.is_empty() => {
                    left = Some(l)
                }
                ("b", _) => {
                    return Err(Error::parse(
                        loc(),
                        "\"b <left>\" must follow the header once",
                    ))
                }
                ("e", &[u, v]) if vertex_count.is_some() => edges.push((u, v)),
                ("e", _) => {
                    return Err(Error::parse(
                        loc(),
                        "expected \"e <u> <v>\" after the header",
                    ))
                }
                _ => return Err(Error::parse(loc(), format!("unknown line tag {tag:?}"))),
            }
        }
        let n = vertex_count.ok_or_else(|| Error::parse("line 1", "missing \"p <n>\" header"))?;
        let graph = Graph::new(n, edges)?;
        match left {
            Some(l) => graph.with_bipartition(l),
            None => Ok(graph),
        }
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        Graph::new(k, edges).expect("complete graph is simple")
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Parameter(format!(
                "a cycle needs at least 3 vertices, got {k}"
            )));
        }
        Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    pub fn path(k: usize) -> Self {
        Graph::new(k, (1..k).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges)
            .and_then(|g| g.with_bipartition(a))
            .expect("complete bipartite graph is simple and crosses")
    }

    /// Uniform-ish d-regular graph from the pairing model, rejecting loops and
    /// multi-edges. Deterministic in `seed`.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Self> {
        if d >= n.max(1) || (n * d) % 2 == 1 {
            return Err(Error::Parameter(format!(
                "no simple {d}-regular graph on {n} vertices"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        for _ in 0..RANDOM_REGULAR_ATTEMPTS {
            points.shuffle(&mut rng);
            let pairs: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0], p[1])).collect();
            if let Ok(g) = Graph::new(n, pairs) {
                return Ok(g);
            }
        }
        Err(Error::Structure(format!(
            "pairing model found no simple {d}-regular graph on {n} vertices"
        )))
    }

    /// Builds a named family: `complete:k`, `cycle:k`, `path:k`,
    /// `complete_bipartite:a:b` or `random_regular:n:d:seed`.
    pub fn family(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |s: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::Usage(format!("bad number {s:?} in graph family {spec:?}")))
        };
        match parts.as_slice() {
            ["complete", k] => Ok(Graph::complete(num(k)? as usize)),
            ["cycle", k] => Graph::cycle(num(k)? as usize),
            ["path", k] => Ok(Graph::path(num(k)? as usize)),
            ["complete_bipartite", a, b] => Ok(Graph::complete_bipartite(
                num(a)? as usize,
                num(b)? as usize,
            )),
            ["random_regular", n, d, seed] => {
                Graph::random_regular(num(n)? as usize, num(d)? as usize, num(seed)?)
            }
            _ => Err(Error::Usage(format!("unknown graph family {spec:?}"))),
        }
    }

    fn check_oracle_cap(&self) -> Result<()> {
        if self.vertex_count > ORACLE_MAX_VERTICES {
            return Err(Error::Size {
                what: "graph vertex count",
                actual: self.vertex_count,
                cap: ORACLE_MAX_VERTICES,
            });
        }
        Ok(())
    }

    fn adjacency_masks(&self) -> Vec<u32> {
        let mut masks = vec![0u32; self.vertex_count];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    /// Lexicographically first k-clique, if any.
    pub fn find_clique(&self, k: usize) -> Result<Option<Vec<usize>>> {
        self.check_oracle_cap()?;
        if k > self.vertex_count {
            return Ok(None);
        }
        let adj = self.adjacency_masks();
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let is_clique = combo
                .iter()
                .enumerate()
                .all(|(i, &u)| combo[i + 1..].iter().all(|&v| adj[u] & (1 << v) != 0));
            if is_clique {
                return Ok(Some(combo));
            }
            if !next_combination(&mut combo, self.vertex_count) {
                return Ok(None);
            }
        }
    }

    pub fn has_clique(&self, k: usize) -> Result<bool> {
        Ok(self.find_clique(k)?.is_some())
    }

    /// Lexicographically first minimum vertex cover.
    pub fn min_vertex_cover(&self) -> Result<Vec<usize>> {
        self.check_oracle_cap()?;
        let n = self.vertex_count;
        for size in 0..=n {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let mut mask = 0u32;
                for &v in &combo {
                    mask |= 1 << v;
                }
                if self
                    .edges
                    .iter()
                    .all(|&(u, v)| mask & (1 << u | 1 << v) != 0)
                {
                    return Ok(combo);
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
        unreachable!("the full vertex set covers every edge")
    }

    pub fn min_vertex_cover_size(&self) -> Result<usize> {
        Ok(self.min_vertex_cover()?.len())
    }

    /// First (A, B) with |A| = |B| = k, A on the left, B on the right, all A×B edges present.
    pub fn find_biclique(&self, k: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        let left = self.left.ok_or_else(|| {
            Error::Structure("biclique search needs a declared bipartition".into())
        })?;
        self.check_oracle_cap()?;
        let right = self.vertex_count - left;
        if k > left || k > right {
            return Ok(None);
        }
        let adj = self.adjacency_masks();
        let mut a: Vec<usize> = (0..k).collect();
        loop {
            let common = a.iter().fold(u32::MAX, |acc, &u| acc & adj[u]);
            let b: Vec<usize> = (left..self.vertex_count)
                .filter(|&v| common & (1 << v) != 0)
                .take(k)
                .collect();
            if b.len() == k {
                return Ok(Some((a, b)));
            }
            if !next_combination(&mut a, left) {
                return Ok(None);
            }
        }
    }

    pub fn has_biclique(&self, k: usize) -> Result<bool> {
        Ok(self.find_biclique(k)?.is_some())
    }
}

/// C(k, 2) as usize.
pub(crate) fn pairs(k: usize) -> usize {
    binomial(k, 2) as usize
}
