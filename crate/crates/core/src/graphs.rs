//! Simple undirected graphs, the named families built from paths and cycles,
//! and the block / cut-vertex decomposition used by the recursion engine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("vertex join needs two graphs on at least two vertices (got {left} and {right})")]
    TooSmall { left: usize, right: usize },
    #[error("vertex {vertex} out of range for graph of order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

/// A simple undirected graph on vertices `0..order`.
///
/// Equality and hashing consider only the order and the edge set; labels are
/// annotations.
#[derive(Clone)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order, self.edges)
    }
}

impl Graph {
    pub fn new<I>(order: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::OutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph::from_sorted(order, set.into_iter().collect()))
    }

    fn from_sorted(order: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { order, edges, adj, labels: vec![None; order] }
    }

    /// Builds from edges already known to be valid; used by internal relabelings.
    fn from_edges_unchecked<I: IntoIterator<Item = (usize, usize)>>(order: usize, edges: I) -> Graph {
        let mut list: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list.dedup();
        Graph::from_sorted(order, list)
    }

    /// `order` isolated vertices.
    pub fn empty(order: usize) -> Graph {
        Graph::from_sorted(order, Vec::new())
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges_unchecked(n, (1..n).map(|i| (i - 1, i)))
    }

    /// The cycle `0-1-...-(n-1)-0`. Callers guarantee `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges_unchecked(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges_unchecked(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn with_label(mut self, v: usize, name: impl Into<String>) -> Graph {
        self.labels[v] = Some(name.into());
        self
    }

    pub fn find_label(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(name))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, order: self.order })
        }
    }

    /// The subgraph induced on `keep`, relabeled densely in the order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let mut g = Graph::from_edges_unchecked(keep.len(), edges);
        for (i, &v) in keep.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        g
    }

    /// Removes `v` and its edges; the remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.order).filter(|&x| x != v).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_vertex_sets().iter().map(|c| self.induced_subgraph(c)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.component_vertex_sets().len() == 1
    }

    /// Parses the `n <order>` + `u v` per line format.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, message: &str| GraphError::EdgeList { line, message: message.to_string() };
        let (first_no, first) = lines.next().ok_or_else(|| err(1, "missing header `n <order>`"))?;
        let mut head = first.split_whitespace();
        if head.next() != Some("n") {
            return Err(err(first_no, "expected header `n <order>`"));
        }
        let order: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(first_no, "expected a vertex count after `n`"))?;
        if head.next().is_some() {
            return Err(err(first_no, "trailing tokens after vertex count"));
        }
        let mut edges = Vec::new();
        for (no, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(no, "expected two vertex indices")))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(err(no, "expected two vertex indices"));
            }
            edges.push((nums[0], nums[1]));
        }
        Graph::new(order, edges).map_err(|e| match e {
            GraphError::EdgeList { .. } => e,
            other => GraphError::EdgeList { line: 0, message: other.to_string() },
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.order);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Identifies `v_in_g` with `v_in_h`.
///
/// Vertices of `g` keep their indices; the other vertices of `h` follow in
/// their original order.
pub fn vertex_join(g: &Graph, h: &Graph, v_in_g: usize, v_in_h: usize) -> Result<Graph, GraphError> {
    if g.order < 2 || h.order < 2 {
        return Err(GraphError::TooSmall { left: g.order, right: h.order });
    }
    g.check_vertex(v_in_g)?;
    h.check_vertex(v_in_h)?;
    let map = |x: usize| -> usize {
        match x.cmp(&v_in_h) {
            std::cmp::Ordering::Equal => v_in_g,
            std::cmp::Ordering::Less => g.order + x,
            std::cmp::Ordering::Greater => g.order + x - 1,
        }
    };
    let order = g.order + h.order - 1;
    let edges = g.edges.iter().copied().chain(h.edges.iter().map(|&(u, v)| (map(u), map(v))));
    let mut out = Graph::from_edges_unchecked(order, edges);
    out.labels[..g.order].clone_from_slice(&g.labels);
    for x in (0..h.order).filter(|&x| x != v_in_h) {
        out.labels[map(x)] = h.labels[x].clone();
    }
    Ok(out)
}

/// Places the graphs side by side, offsetting later vertex indices.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let order = gs.iter().map(Graph::order).sum();
    let mut edges = Vec::new();
    let mut labels = Vec::with_capacity(order);
    let mut offset = 0;
    for g in gs {
        edges.extend(g.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        labels.extend(g.labels.iter().cloned());
        offset += g.order;
    }
    let mut out = Graph::from_edges_unchecked(order, edges);
    out.labels = labels;
    out
}

/// Shape of a 2-connected block (or bridge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Edge,
    Cycle(usize),
    /// `K_{a,b}` with `a <= b`, both at least 2, excluding `K_{2,2}` which is a cycle.
    CompleteBipartite(usize, usize),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex indices of the host graph.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub kind: BlockKind,
}

impl Block {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Blocks of a connected graph together with the cut vertices joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}

impl BlockTree {
    pub fn block_cut_vertices(&self, block: usize) -> Vec<usize> {
        let b = &self.blocks[block];
        self.cut_vertices.iter().copied().filter(|&c| b.contains(c)).collect()
    }

    /// Blocks containing exactly one cut vertex, paired with that vertex.
    pub fn leaf_blocks(&self) -> Vec<(usize, usize)> {
        (0..self.blocks.len())
            .filter_map(|i| match self.block_cut_vertices(i).as_slice() {
                [c] => Some((i, *c)),
                _ => None,
            })
            .collect()
    }
}

/// Biconnected components of a connected graph.
///
/// Blocks are listed by their smallest vertex (ties broken by edge list).
pub fn cut_vertex_blocks(g: &Graph) -> Result<BlockTree, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.order;
    let mut blocks = Vec::new();
    if n >= 2 {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut parent = vec![UNSEEN; n];
        let mut time = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < g.adj[v].len() {
                let w = g.adj[v][top.1];
                top.1 += 1;
                if disc[w] == UNSEEN {
                    parent[w] = v;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(make_block(edges));
                    }
                }
            }
        }
    }
    blocks.sort_by(|a, b| (&a.vertices, &a.edges).cmp(&(&b.vertices, &b.edges)));
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] >= 2).collect();
    Ok(BlockTree { blocks, cut_vertices })
}

fn make_block(mut edges: Vec<(usize, usize)>) -> Block {
    edges.sort_unstable();
    let vertices: Vec<usize> = edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let kind = classify_block(&vertices, &edges);
    Block { vertices, edges, kind }
}

fn classify_block(vertices: &[usize], edges: &[(usize, usize)]) -> BlockKind {
    let nv = vertices.len();
    if nv == 2 && edges.len() == 1 {
        return BlockKind::Edge;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    // A 2-connected graph where every vertex has degree 2 is a cycle.
    if edges.len() == nv && deg.values().all(|&d| d == 2) {
        return BlockKind::Cycle(nv);
    }
    // 2-colour and compare the edge count with |A|·|B|.
    let mut side: BTreeMap<usize, bool> = BTreeMap::new();
    let mut queue = vec![vertices[0]];
    side.insert(vertices[0], false);
    while let Some(v) = queue.pop() {
        let s = side[&v];
        for &w in &adj[&v] {
            match side.get(&w) {
                Some(&t) if t == s => return BlockKind::Other,
                Some(_) => {}
                None => {
                    side.insert(w, !s);
                    queue.push(w);
                }
            }
        }
    }
    let a = side.values().filter(|&&s| !s).count();
    let b = nv - a;
    if a * b == edges.len() {
        BlockKind::CompleteBipartite(a.min(b), a.max(b))
    } else {
        BlockKind::Other
    }
}

/// Brute-force isomorphism test with degree pruning; meant for small graphs.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order != h.order || g.edges.len() != h.edges.len() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.order).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.order).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut map = vec![usize::MAX; g.order];
    let mut used = vec![false; h.order];
    extend_isomorphism(g, h, 0, &mut map, &mut used)
}

fn extend_isomorphism(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.order {
        return true;
    }
    for target in 0..h.order {
        if used[target] || g.degree(v) != h.degree(target) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], target));
        if consistent {
            map[v] = target;
            used[target] = true;
            if extend_isomorphism(g, h, v + 1, map, used) {
                return true;
            }
            used[target] = false;
        }
    }
    map[v] = usize::MAX;
    false
}

/// Relabeling-invariant key for small graphs.
///
/// Vertices are first split into classes by iterated degree refinement, then
/// every ordering consistent with those classes is tried and the
/// lexicographically smallest edge list wins. Returns `None` when more than
/// `max_orderings` orderings would be needed.
pub fn canonical_form(g: &Graph, max_orderings: usize) -> Option<Vec<(usize, usize)>> {
    let n = g.order;
    // colour refinement
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.adj[v].iter().map(|&w| colour[w]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if after == before {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(colour[v]).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut total: usize = 1;
    for c in &cells {
        for k in 1..=c.len() {
            total = total.checked_mul(k)?;
            if total > max_orderings {
                return None;
            }
        }
    }

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut cell_perms: Vec<Vec<usize>> = cells.clone();
    permute_cells(g, &mut cell_perms, 0, &mut order, &mut best);
    best
}

fn permute_cells(
    g: &Graph,
    cells: &mut Vec<Vec<usize>>,
    idx: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if idx == cells.len() {
        let mut pos = vec![0; g.order];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    let mut cell = cells[idx].clone();
    heap_permutations(&mut cell, &mut |perm| {
        let mark = order.len();
        order.extend_from_slice(perm);
        permute_cells(g, cells, idx + 1, order, best);
        order.truncate(mark);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// A supernova: cycles (sizes include the center) and pendant paths (sizes
/// exclude the center) sharing one center vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Nova {
    pub cycles: Vec<usize>,
    pub arms: Vec<usize>,
}

impl Nova {
    pub fn new(cycles: Vec<usize>, arms: Vec<usize>) -> Nova {
        Nova { cycles, arms }
    }

    pub fn order(&self) -> usize {
        1 + self.cycles.iter().map(|c| c - 1).sum::<usize>() + self.arms.iter().sum::<usize>()
    }

    fn validate(&self) -> Result<(), GraphError> {
        if let Some(c) = self.cycles.iter().find(|&&c| c < 3) {
            return Err(GraphError::InvalidSpec(format!("cycle size {c} < 3")));
        }
        if self.arms.contains(&0) {
            return Err(GraphError::InvalidSpec("arm size must be at least 1".into()));
        }
        Ok(())
    }

    fn fmt_args(&self, sep: &str) -> String {
        format!("cycles={}{sep}arms={}", join_nums(&self.cycles), join_nums(&self.arms))
    }
}

impl fmt::Display for Nova {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nova({})", self.fmt_args(";"))
    }
}

/// Which part of each complete bipartite graph holds the shared vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BipartiteCase {
    AC,
    AD,
    BC,
    BD,
}

impl BipartiteCase {
    pub const ALL: [BipartiteCase; 4] = [BipartiteCase::AC, BipartiteCase::AD, BipartiteCase::BC, BipartiteCase::BD];

    /// Whether the shared vertex sits in part A (else B) and part C (else D).
    pub fn sides(self) -> (bool, bool) {
        match self {
            BipartiteCase::AC => (true, true),
            BipartiteCase::AD => (true, false),
            BipartiteCase::BC => (false, true),
            BipartiteCase::BD => (false, false),
        }
    }
}

impl fmt::Display for BipartiteCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BipartiteCase::AC => "AC",
            BipartiteCase::AD => "AD",
            BipartiteCase::BC => "BC",
            BipartiteCase::BD => "BD",
        })
    }
}

/// Symbolic description of one member of a named graph family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    DisjointPaths(Vec<usize>),
    GeneralizedStar(Vec<usize>),
    Bouquet(Vec<usize>),
    Supernova(Nova),
    /// Two supernovas whose centers are non-adjacent vertices of a bridging
    /// cycle, `gap` edges apart along one side.
    Pulsar { first: Nova, second: Nova, bridge: usize, gap: usize },
    /// Two supernovas whose centers are the ends of a path on `w` vertices.
    BinaryStar { first: Nova, second: Nova, w: usize },
    CompleteBipartite(usize, usize),
    /// `K_{a,b}` joined to `K_{c,d}` at one vertex.
    BipartiteJoin { a: usize, b: usize, c: usize, d: usize, case: BipartiteCase },
    Join { left: Box<FamilySpec>, left_at: usize, right: Box<FamilySpec>, right_at: usize },
    DisjointUnion(Vec<FamilySpec>),
}

fn join_nums(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, GraphError> {
    Err(GraphError::InvalidSpec(msg.into()))
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            FamilySpec::Path(n) if *n < 1 => invalid("path needs at least one vertex"),
            FamilySpec::Cycle(n) if *n < 3 => invalid(format!("cycle({n}) needs at least three vertices")),
            FamilySpec::DisjointPaths(sizes) => {
                if sizes.is_empty() || sizes.contains(&0) {
                    invalid("disjoint paths need at least one path, each with a vertex")
                } else {
                    Ok(())
                }
            }
            FamilySpec::GeneralizedStar(arms) => {
                if arms.is_empty() {
                    return invalid("generalized star needs at least one arm");
                }
                Nova::new(vec![], arms.clone()).validate()
            }
            FamilySpec::Bouquet(cycles) => {
                if cycles.is_empty() {
                    return invalid("bouquet needs at least one cycle");
                }
                Nova::new(cycles.clone(), vec![]).validate()
            }
            FamilySpec::Supernova(nova) => nova.validate(),
            FamilySpec::Pulsar { first, second, bridge, gap } => {
                first.validate()?;
                second.validate()?;
                if *bridge < 4 {
                    return invalid(format!("pulsar bridge cycle of size {bridge} < 4"));
                }
                if *gap < 2 || *gap + 2 > *bridge {
                    return invalid(format!("pulsar gap {gap} must lie in 2..={}", bridge - 2));
                }
                Ok(())
            }
            FamilySpec::BinaryStar { first, second, w } => {
                first.validate()?;
                second.validate()?;
                if *w < 2 {
                    return invalid(format!("binary star path P_{w} needs w >= 2"));
                }
                Ok(())
            }
            FamilySpec::CompleteBipartite(a, b) if *a < 1 || *b < 1 => {
                invalid("complete bipartite parts must be nonempty")
            }
            FamilySpec::BipartiteJoin { a, b, c, d, .. } if [a, b, c, d].iter().any(|&&s| s < 1) => {
                invalid("bipartite join parts must be nonempty")
            }
            FamilySpec::Join { left, left_at, right, right_at } => {
                for (spec, at) in [(left, left_at), (right, right_at)] {
                    spec.validate()?;
                    let n = spec.order()?;
                    if n < 2 {
                        return invalid(format!("join operand {spec} has fewer than two vertices"));
                    }
                    if *at >= n {
                        return invalid(format!("join anchor {at} out of range for {spec}"));
                    }
                }
                Ok(())
            }
            FamilySpec::DisjointUnion(parts) => {
                if parts.is_empty() {
                    return invalid("disjoint union of nothing");
                }
                parts.iter().try_for_each(FamilySpec::validate)
            }
            _ => Ok(()),
        }
    }

    /// Vertex count of the built graph.
    pub fn order(&self) -> Result<usize, GraphError> {
        Ok(match self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) => *n,
            FamilySpec::DisjointPaths(s) => s.iter().sum(),
            FamilySpec::GeneralizedStar(arms) => 1 + arms.iter().sum::<usize>(),
            FamilySpec::Bouquet(cycles) => Nova::new(cycles.clone(), vec![]).order(),
            FamilySpec::Supernova(nova) => nova.order(),
            FamilySpec::Pulsar { first, second, bridge, .. } => first.order() + second.order() + bridge - 2,
            FamilySpec::BinaryStar { first, second, w } => first.order() + second.order() + w - 2,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::BipartiteJoin { a, b, c, d, .. } => a + b + c + d - 1,
            FamilySpec::Join { left, right, .. } => left.order()? + right.order()? - 1,
            FamilySpec::DisjointUnion(parts) => {
                parts.iter().map(FamilySpec::order).sum::<Result<usize, _>>()?
            }
        })
    }

    /// Builds the graph. Centers come first, then cycles and arms in spec order.
    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let g = match self {
            FamilySpec::Path(n) => Graph::path(*n),
            FamilySpec::Cycle(n) => Graph::cycle(*n),
            FamilySpec::DisjointPaths(sizes) => {
                disjoint_union(&sizes.iter().map(|&s| Graph::path(s)).collect::<Vec<_>>())
            }
            FamilySpec::GeneralizedStar(arms) => build_nova(&Nova::new(vec![], arms.clone())),
            FamilySpec::Bouquet(cycles) => build_nova(&Nova::new(cycles.clone(), vec![])),
            FamilySpec::Supernova(nova) => build_nova(nova),
            FamilySpec::Pulsar { first, second, bridge, gap } => {
                let mut b = Builder::with_centers(2);
                b.attach(0, first);
                b.attach(1, second);
                // v ... u along `gap` edges, then back to v along the rest.
                b.chain(0, 1, gap - 1);
                b.chain(1, 0, bridge - gap - 1);
                b.finish().with_label(0, "v").with_label(1, "u")
            }
            FamilySpec::BinaryStar { first, second, w } => {
                let mut b = Builder::with_centers(2);
                b.attach(0, first);
                b.attach(1, second);
                b.chain(1, 0, w - 2);
                b.finish().with_label(0, "v").with_label(1, "u")
            }
            FamilySpec::CompleteBipartite(a, b) => Graph::complete_bipartite(*a, *b),
            FamilySpec::BipartiteJoin { a, b, c, d, case } => {
                let (in_a, in_c) = case.sides();
                let left = Graph::complete_bipartite(*a, *b);
                let right = Graph::complete_bipartite(*c, *d);
                let at_left = if in_a { 0 } else { *a };
                let at_right = if in_c { 0 } else { *c };
                vertex_join(&left, &right, at_left, at_right)?.with_label(at_left, "v")
            }
            FamilySpec::Join { left, left_at, right, right_at } => {
                vertex_join(&left.build()?, &right.build()?, *left_at, *right_at)?
            }
            FamilySpec::DisjointUnion(parts) => {
                disjoint_union(&parts.iter().map(FamilySpec::build).collect::<Result<Vec<_>, _>>()?)
            }
        };
        debug_assert_eq!(g.order(), self.order()?);
        Ok(g)
    }
}

fn build_nova(nova: &Nova) -> Graph {
    let mut b = Builder::with_centers(1);
    b.attach(0, nova);
    b.finish().with_label(0, "v")
}

struct Builder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn with_centers(k: usize) -> Builder {
        Builder { next: k, edges: Vec::new() }
    }

    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Path from `from` to `to` through `internal` new vertices.
    fn chain(&mut self, from: usize, to: usize, internal: usize) {
        let mut prev = from;
        for _ in 0..internal {
            let v = self.fresh();
            self.edges.push((prev, v));
            prev = v;
        }
        self.edges.push((prev, to));
    }

    fn attach(&mut self, center: usize, nova: &Nova) {
        for &c in &nova.cycles {
            self.chain(center, center, c - 1);
        }
        for &a in &nova.arms {
            let mut prev = center;
            for _ in 0..a {
                let v = self.fresh();
                self.edges.push((prev, v));
                prev = v;
            }
        }
    }

    fn finish(self) -> Graph {
        Graph::new(self.next, self.edges).expect("builder produces simple graphs")
    }
}

impl fmt::Display for FamilySpec {
    /// The family DSL accepted by the command-line parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path({n})"),
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::DisjointPaths(s) => write!(f, "paths({})", join_nums(s)),
            FamilySpec::GeneralizedStar(arms) => write!(f, "star({})", join_nums(arms)),
            FamilySpec::Bouquet(cycles) => write!(f, "bouquet({})", join_nums(cycles)),
            FamilySpec::Supernova(nova) => write!(f, "supernova({})", nova.fmt_args("; ")),
            FamilySpec::Pulsar { first, second, bridge, gap } => {
                write!(f, "pulsar({first}, {second}, bridge={bridge}, gap={gap})")
            }
            FamilySpec::BinaryStar { first, second, w } => write!(f, "binarystar({first}, {second}, w={w})"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "kbip({a},{b})"),
            FamilySpec::BipartiteJoin { a, b, c, d, case } => write!(f, "kbipjoin({a},{b},{c},{d},{case})"),
            FamilySpec::Join { left, left_at, right, right_at } => {
                let anchor = |at: usize| if at == 0 { String::new() } else { format!("@{at}") };
                write!(f, "join({left}{}, {right}{})", anchor(*left_at), anchor(*right_at))
            }
            FamilySpec::DisjointUnion(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "union({})", inner.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.order()).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::OutOfRange { vertex: 2, order: 2 }));
    }

    #[test]
    fn build_path_three() {
        let g = FamilySpec::Path(3).build().unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(degrees(&g), vec![1, 2, 1]);
        assert!(is_isomorphic(&g, &Graph::complete_bipartite(1, 2)));
    }

    #[test]
    fn build_supernova_counts() {
        let g = FamilySpec::Supernova(Nova::new(vec![3], vec![2])).build().unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.label(0), Some("v"));
        let big = Nova::new(vec![3, 4], vec![2, 2, 5]);
        assert_eq!(FamilySpec::Supernova(big.clone()).build().unwrap().order(), 1 + 2 + 3 + 9);
    }

    #[test]
    fn single_cycle_bouquet_is_cycle() {
        let b = FamilySpec::Bouquet(vec![3]).build().unwrap();
        assert!(is_isomorphic(&b, &Graph::cycle(3)));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(FamilySpec::Cycle(2).build(), Err(GraphError::InvalidSpec(_))));
        assert!(FamilySpec::Bouquet(vec![3, 2]).build().is_err());
        assert!(FamilySpec::GeneralizedStar(vec![]).build().is_err());
        let nova = Nova::new(vec![3], vec![1]);
        let bad_gap = FamilySpec::Pulsar { first: nova.clone(), second: nova.clone(), bridge: 5, gap: 1 };
        assert!(bad_gap.build().is_err());
        let bad_gap = FamilySpec::Pulsar { first: nova.clone(), second: nova.clone(), bridge: 5, gap: 4 };
        assert!(bad_gap.build().is_err());
        assert!(FamilySpec::BinaryStar { first: nova.clone(), second: nova, w: 1 }.build().is_err());
    }

    #[test]
    fn pulsar_centers_are_not_adjacent() {
        let nova = Nova::new(vec![3], vec![1]);
        for gap in 2..=4 {
            let spec = FamilySpec::Pulsar { first: nova.clone(), second: nova.clone(), bridge: 6, gap };
            let g = spec.build().unwrap();
            assert_eq!(g.order(), 4 + 4 + 4);
            assert!(!g.has_edge(0, 1));
            assert_eq!(g.degree(0), 5);
        }
    }

    #[test]
    fn binary_star_path_joins_centers() {
        let h = Nova::new(vec![3], vec![1]);
        let k = Nova::new(vec![], vec![1]);
        let g = FamilySpec::BinaryStar { first: h.clone(), second: k.clone(), w: 2 }.build().unwrap();
        assert!(g.has_edge(0, 1));
        let g = FamilySpec::BinaryStar { first: h, second: k, w: 4 }.build().unwrap();
        assert_eq!(g.order(), 4 + 2 + 2);
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn join_examples() {
        let p2 = Graph::path(2);
        assert!(is_isomorphic(&vertex_join(&p2, &p2, 1, 0).unwrap(), &Graph::path(3)));
        let c4 = Graph::cycle(4);
        let j = vertex_join(&c4, &c4, 0, 0).unwrap();
        assert_eq!(j.order(), 7);
        assert_eq!(j.edge_count(), 8);
        let h = vertex_join(&Graph::cycle(5), &Graph::path(3), 0, 1).unwrap();
        assert_eq!(h.order(), 7);
        assert_eq!(h.degree(0), 4);
        assert_eq!(
            vertex_join(&Graph::empty(1), &p2, 0, 0),
            Err(GraphError::TooSmall { left: 1, right: 2 })
        );
    }

    #[test]
    fn delete_examples() {
        let c5 = Graph::cycle(5);
        assert!(is_isomorphic(&c5.delete_vertex(2).unwrap(), &Graph::path(4)));
        let p3 = Graph::path(3);
        assert_eq!(p3.delete_vertex(1).unwrap(), Graph::empty(2));
        assert_eq!(Graph::path(2).delete_vertex(0).unwrap(), Graph::path(1));
        assert_eq!(p3.delete_vertex(3), Err(GraphError::OutOfRange { vertex: 3, order: 3 }));
    }

    #[test]
    fn components() {
        let two = disjoint_union(&[Graph::path(1), Graph::path(1)]);
        assert_eq!(two.connected_components().len(), 2);
        let g = FamilySpec::DisjointPaths(vec![2, 3]).build().unwrap();
        assert_eq!(g.connected_components(), vec![Graph::path(2), Graph::path(3)]);
    }

    #[test]
    fn block_examples() {
        let bq = FamilySpec::Bouquet(vec![3, 4]).build().unwrap();
        let tree = cut_vertex_blocks(&bq).unwrap();
        let kinds: Vec<BlockKind> = tree.blocks.iter().map(|b| b.kind).collect();
        assert_eq!(kinds, vec![BlockKind::Cycle(3), BlockKind::Cycle(4)]);
        assert_eq!(tree.cut_vertices, vec![0]);

        let p4 = cut_vertex_blocks(&Graph::path(4)).unwrap();
        assert_eq!(p4.blocks.len(), 3);
        assert!(p4.blocks.iter().all(|b| b.kind == BlockKind::Edge));
        assert_eq!(p4.cut_vertices, vec![1, 2]);

        let h = vertex_join(&Graph::cycle(5), &Graph::path(3), 0, 1).unwrap();
        let t = cut_vertex_blocks(&h).unwrap();
        let mut kinds: Vec<BlockKind> = t.blocks.iter().map(|b| b.kind).collect();
        kinds.sort_by_key(|k| format!("{k:?}"));
        assert_eq!(kinds, vec![BlockKind::Cycle(5), BlockKind::Edge, BlockKind::Edge]);
        assert_eq!(t.cut_vertices, vec![0]);
        assert_eq!(t.leaf_blocks().len(), 3);

        assert_eq!(cut_vertex_blocks(&Graph::empty(2)), Err(GraphError::Disconnected));
    }

    #[test]
    fn block_kinds() {
        let kind = |g: &Graph| cut_vertex_blocks(g).unwrap().blocks[0].kind;
        assert_eq!(kind(&Graph::complete_bipartite(2, 3)), BlockKind::CompleteBipartite(2, 3));
        assert_eq!(kind(&Graph::complete_bipartite(2, 2)), BlockKind::Cycle(4));
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(kind(&k4), BlockKind::Other);
        let theta = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]).unwrap();
        assert_eq!(kind(&theta), BlockKind::CompleteBipartite(2, 3));
        let chorded = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        assert_eq!(kind(&chorded), BlockKind::Other);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let a = FamilySpec::Supernova(Nova::new(vec![3], vec![1, 2])).build().unwrap();
        let perm = [5, 3, 0, 1, 4, 2];
        let b = Graph::new(6, a.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(canonical_form(&a, 10_000), canonical_form(&b, 10_000));
        assert!(canonical_form(&a, 10_000).is_some());
        assert_ne!(canonical_form(&Graph::path(6), 10_000), canonical_form(&a, 10_000));
        assert_eq!(canonical_form(&Graph::cycle(9), 100), None);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = FamilySpec::Bouquet(vec![3, 4]).build().unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("n 6\n"));
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
        assert!(Graph::from_edge_list("n 3\n0 5\n").is_err());
        assert!(matches!(Graph::from_edge_list("3\n"), Err(GraphError::EdgeList { line: 1, .. })));
    }

    #[test]
    fn dsl_display() {
        let spec = FamilySpec::Supernova(Nova::new(vec![3, 4], vec![2, 2, 5]));
        assert_eq!(spec.to_string(), "supernova(cycles=3,4; arms=2,2,5)");
        let j = FamilySpec::Join {
            left: Box::new(FamilySpec::Cycle(5)),
            left_at: 0,
            right: Box::new(FamilySpec::Path(3)),
            right_at: 1,
        };
        assert_eq!(j.to_string(), "join(cycle(5), path(3)@1)");
        let p = FamilySpec::Pulsar {
            first: Nova::new(vec![3], vec![2]),
            second: Nova::new(vec![], vec![1, 1]),
            bridge: 6,
            gap: 2,
        };
        assert_eq!(p.to_string(), "pulsar(nova(cycles=3;arms=2), nova(cycles=;arms=1,1), bridge=6, gap=2)");
    }
}
