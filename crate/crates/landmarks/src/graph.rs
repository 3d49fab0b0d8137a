//! Immutable graph representation and traversal primitives.
//!
//! Graphs are unweighted, directed or undirected, and stored as compressed
//! sorted adjacency arrays (CSR) for cache-friendly BFS. Undirected graphs
//! are stored symmetrically and share a single adjacency array for both
//! directions. Once built, a [`Graph`] is immutable and safe to share
//! across threads.

use std::collections::VecDeque;
use std::fmt;
use std::io::{self, BufRead, Write};

/// Hop distance between two vertices, with a reserved sentinel for
/// unreachable pairs. The sentinel compares greater than every finite
/// distance, so `min` over candidate distances does the right thing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Distance(pub(crate) u32);

impl Distance {
    pub const UNREACHABLE: Distance = Distance(u32::MAX);

    pub fn from_hops(hops: u32) -> Distance {
        assert!(hops < u32::MAX, "hop count overflows the sentinel");
        Distance(hops)
    }

    /// Finite hop count, or `None` when unreachable.
    pub fn hops(self) -> Option<u32> {
        if self.is_unreachable() {
            None
        } else {
            Some(self.0)
        }
    }

    pub fn is_unreachable(self) -> bool {
        self.0 == u32::MAX
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unreachable() {
            write!(f, "unreachable")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Traversal direction. `Forward` follows out-edges, `Backward` follows
/// in-edges. On undirected graphs the two are equivalent.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn from_sorted_edges(n: usize, edges: &[(u32, u32)]) -> Csr {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in edges {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = edges.iter().map(|&(_, v)| v).collect();
        Csr { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    fn degree(&self, v: u32) -> u32 {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as u32
    }
}

/// Immutable unweighted graph with sorted CSR adjacency in both directions.
///
/// Self-loops and duplicate edges are dropped at construction; undirected
/// graphs keep both orientations of every edge so that `(u,v)` is present
/// iff `(v,u)` is.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Csr,
    /// Reverse adjacency; `None` for undirected graphs, where the
    /// symmetric out-adjacency serves both directions.
    rev: Option<Csr>,
    /// Maps compact vertex id -> id in the source file; `None` when the
    /// graph was built with identity ids (e.g. by a generator).
    original_ids: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an edge list over vertices `0..n`.
    ///
    /// Self-loops and duplicate edges are dropped. For undirected graphs
    /// each input edge is inserted in both orientations.
    pub fn from_edges(n: usize, directed: bool, edges: &[(u32, u32)]) -> Graph {
        let mut all: Vec<(u32, u32)> = Vec::with_capacity(if directed {
            edges.len()
        } else {
            edges.len() * 2
        });
        for &(u, v) in edges {
            debug_assert!((u as usize) < n && (v as usize) < n);
            if u == v {
                continue;
            }
            all.push((u, v));
            if !directed {
                all.push((v, u));
            }
        }
        all.sort_unstable();
        all.dedup();

        let out = Csr::from_sorted_edges(n, &all);
        let rev = if directed {
            let mut rev_edges: Vec<(u32, u32)> = all.iter().map(|&(u, v)| (v, u)).collect();
            rev_edges.sort_unstable();
            Some(Csr::from_sorted_edges(n, &rev_edges))
        } else {
            None
        };
        Graph {
            n,
            directed,
            out,
            rev,
            original_ids: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Number of edges; undirected edges are counted once.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.out.targets.len()
        } else {
            self.out.targets.len() / 2
        }
    }

    #[inline]
    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        self.out.neighbors(v)
    }

    #[inline]
    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        match &self.rev {
            Some(rev) => rev.neighbors(v),
            None => self.out.neighbors(v),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: u32, direction: Direction) -> &[u32] {
        match direction {
            Direction::Forward => self.out_neighbors(v),
            Direction::Backward => self.in_neighbors(v),
        }
    }

    #[inline]
    pub fn out_degree(&self, v: u32) -> u32 {
        self.out.degree(v)
    }

    #[inline]
    pub fn in_degree(&self, v: u32) -> u32 {
        match &self.rev {
            Some(rev) => rev.degree(v),
            None => self.out.degree(v),
        }
    }

    /// Indegree plus outdegree, the key used by [`degree_ordering`].
    #[inline]
    pub fn total_degree(&self, v: u32) -> u32 {
        self.out_degree(v) + self.in_degree(v)
    }

    #[inline]
    pub fn degree(&self, v: u32, direction: Direction) -> u32 {
        match direction {
            Direction::Forward => self.out_degree(v),
            Direction::Backward => self.in_degree(v),
        }
    }

    /// Id of `v` in the source file, when the graph was loaded from one.
    pub fn original_id(&self, v: u32) -> u64 {
        match &self.original_ids {
            Some(ids) => ids[v as usize],
            None => v as u64,
        }
    }

    /// Full single-source BFS; `result[v]` is the exact hop distance from
    /// (direction `Forward`) or to (direction `Backward`) the source.
    pub fn bfs(&self, source: u32, direction: Direction) -> Vec<Distance> {
        assert!((source as usize) < self.n, "source out of range");
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::new();
        self.bfs_into(source, direction, &mut dist, &mut queue);
        dist.into_iter().map(Distance).collect()
    }

    /// BFS into a caller-owned buffer (`u32::MAX` = unreachable). The
    /// buffer is reset here; reusing it across calls avoids reallocation
    /// in all-sources loops.
    pub(crate) fn bfs_into(
        &self,
        source: u32,
        direction: Direction,
        dist: &mut Vec<u32>,
        queue: &mut VecDeque<u32>,
    ) {
        dist.clear();
        dist.resize(self.n, u32::MAX);
        queue.clear();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u as usize] + 1;
            for &v in self.neighbors(u, direction) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = next;
                    queue.push_back(v);
                }
            }
        }
    }

    /// BFS truncated at `radius`: returns every `(vertex, distance)` with
    /// distance ≤ radius, in nondecreasing distance order, so the level
    /// sets Γ_0..Γ_radius are recoverable by scanning.
    pub fn bounded_bfs(&self, source: u32, radius: u32, direction: Direction) -> Vec<(u32, u32)> {
        assert!((source as usize) < self.n, "source out of range");
        let mut dist = vec![u32::MAX; self.n];
        let mut order = Vec::new();
        dist[source as usize] = 0;
        order.push((source, 0u32));
        let mut head = 0;
        while head < order.len() {
            let (u, d) = order[head];
            head += 1;
            if d == radius {
                continue;
            }
            for &v in self.neighbors(u, direction) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = d + 1;
                    order.push((v, d + 1));
                }
            }
        }
        order
    }

    /// Number of edges crossing from the ball N_level(source) to its
    /// complement, following `direction`: forward counts out-edges of ball
    /// vertices ending outside, backward counts in-edges arriving from
    /// outside. On undirected graphs both count each crossing edge once.
    pub fn edge_boundary_count(&self, source: u32, level: u32, direction: Direction) -> u64 {
        let ball = self.bounded_bfs(source, level, direction);
        let mut inside = vec![false; self.n];
        for &(v, _) in &ball {
            inside[v as usize] = true;
        }
        let mut count = 0u64;
        for &(v, _) in &ball {
            for &w in self.neighbors(v, direction) {
                if !inside[w as usize] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Checks the structural invariants (sorted simple adjacency, in/out
    /// consistency, symmetry when undirected). Intended for tests and
    /// debug assertions, not hot paths.
    pub fn check_invariants(&self) -> Result<(), String> {
        for v in 0..self.n as u32 {
            for dir in [Direction::Forward, Direction::Backward] {
                let neigh = self.neighbors(v, dir);
                if !neigh.windows(2).all(|w| w[0] < w[1]) {
                    return Err(format!("adjacency of {v} not strictly sorted"));
                }
                if neigh.iter().any(|&w| w as usize >= self.n) {
                    return Err(format!("neighbor of {v} out of range"));
                }
                if neigh.contains(&v) {
                    return Err(format!("self-loop at {v}"));
                }
            }
            for &w in self.out_neighbors(v) {
                if self.in_neighbors(w).binary_search(&v).is_err() {
                    return Err(format!("edge {v}->{w} missing from in-adjacency"));
                }
            }
            if !self.directed {
                for &w in self.out_neighbors(v) {
                    if self.out_neighbors(w).binary_search(&v).is_err() {
                        return Err(format!("undirected edge {v}-{w} not symmetric"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Permutation of the vertex ids `0..n`, used to schedule labeling roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering(Vec<u32>);

impl VertexOrdering {
    /// Validates that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<u32>) -> Result<VertexOrdering, String> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            match seen.get_mut(v as usize) {
                Some(slot) if !*slot => *slot = true,
                Some(_) => return Err(format!("vertex {v} appears twice in ordering")),
                None => return Err(format!("vertex {v} out of range")),
            }
        }
        Ok(VertexOrdering(order))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }
}

/// Vertices sorted by decreasing indegree plus outdegree, ties broken by
/// ascending vertex id. Deterministic and invariant under input edge order.
pub fn degree_ordering(graph: &Graph) -> VertexOrdering {
    let mut order: Vec<u32> = (0..graph.vertex_count() as u32).collect();
    order.sort_unstable_by_key(|&v| (std::cmp::Reverse(graph.total_degree(v)), v));
    VertexOrdering(order)
}

/// Error while parsing an edge-list file.
#[derive(Debug)]
pub enum EdgeListError {
    Io(io::Error),
    /// A non-comment line that does not hold exactly two integer tokens.
    Malformed { line: usize, content: String },
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::Io(e) => write!(f, "i/o error: {e}"),
            EdgeListError::Malformed { line, content } => {
                write!(f, "malformed edge list line {line}: {content:?}")
            }
        }
    }
}

impl std::error::Error for EdgeListError {}

impl From<io::Error> for EdgeListError {
    fn from(e: io::Error) -> Self {
        EdgeListError::Io(e)
    }
}

/// Parses a whitespace-delimited edge list ("u v" per line, `#` comment
/// lines skipped), the format used by SNAP dataset files.
///
/// Vertex ids are compacted to `0..n` in ascending order of the original
/// ids; the original ids stay available through [`Graph::original_id`].
/// Duplicate edges and self-loops are dropped and undirected input is
/// symmetrized. Empty input yields the empty graph.
pub fn load_edge_list(reader: impl BufRead, directed: bool) -> Result<Graph, EdgeListError> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse = |tok: Option<&str>| tok.and_then(|t| t.parse::<u64>().ok());
        match (parse(tokens.next()), parse(tokens.next()), tokens.next()) {
            (Some(u), Some(v), None) => raw_edges.push((u, v)),
            _ => {
                return Err(EdgeListError::Malformed {
                    line: idx + 1,
                    content: trimmed.to_string(),
                })
            }
        }
    }

    let mut ids: Vec<u64> = raw_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let compact = |id: u64| ids.binary_search(&id).unwrap() as u32;
    let edges: Vec<(u32, u32)> = raw_edges
        .iter()
        .map(|&(u, v)| (compact(u), compact(v)))
        .collect();

    let mut graph = Graph::from_edges(ids.len(), directed, &edges);
    if ids.iter().enumerate().any(|(i, &id)| i as u64 != id) {
        graph.original_ids = Some(ids);
    }
    Ok(graph)
}

/// Writes the graph in the edge-list format accepted by [`load_edge_list`],
/// echoing original ids where present. Undirected edges are written once
/// with the smaller endpoint first.
pub fn write_edge_list(graph: &Graph, mut writer: impl Write) -> io::Result<()> {
    for u in 0..graph.vertex_count() as u32 {
        for &v in graph.out_neighbors(u) {
            if !graph.is_directed() && v < u {
                continue;
            }
            writeln!(writer, "{} {}", graph.original_id(u), graph.original_id(v))?;
        }
    }
    Ok(())
}
