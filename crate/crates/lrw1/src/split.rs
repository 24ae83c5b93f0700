//! Reduced split trees (graph-labelled trees), thread-graph recognition,
//! and canonical thread decompositions.
//!
//! A thread block is a graph with a vertex ordering and L/R labels where
//! edges run exactly from R-labeled earlier vertices to L-labeled later
//! ones. A connected graph has linear rankwidth at most 1 ("thread graph")
//! iff its split tree has only degenerate (star/clique) nodes and the tree
//! minus its leaves is a path; the decomposition procedure walks that path.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashSet};

/// Vertex label inside a thread block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    L,
    R,
    LR,
}

impl Label {
    pub fn has_l(self) -> bool {
        matches!(self, Label::L | Label::LR)
    }

    pub fn has_r(self) -> bool {
        matches!(self, Label::R | Label::LR)
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::L => Label::R,
            Label::R => Label::L,
            Label::LR => Label::LR,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::L => "L",
            Label::R => "R",
            Label::LR => "LR",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "L" => Some(Label::L),
            "R" => Some(Label::R),
            "LR" => Some(Label::LR),
            _ => None,
        }
    }
}

/// A thread block over host-graph vertex ids: the ordering sigma plus a
/// label per vertex. Its edge set is derived from the labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadBlock {
    pub order: Vec<usize>,
    pub labels: Vec<Label>,
}

impl ThreadBlock {
    pub fn new(order: Vec<usize>, labels: Vec<Label>) -> Self {
        assert_eq!(order.len(), labels.len());
        ThreadBlock { order, labels }
    }

    pub fn k2(first: usize, last: usize) -> Self {
        ThreadBlock::new(vec![first, last], vec![Label::R, Label::L])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn first(&self) -> usize {
        self.order[0]
    }

    pub fn last(&self) -> usize {
        *self.order.last().unwrap()
    }

    /// Edges defined by the labels: vw for v before w with R in l(v) and
    /// L in l(w).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.order.len() {
            for j in i + 1..self.order.len() {
                if self.labels[i].has_r() && self.labels[j].has_l() {
                    out.push((self.order[i], self.order[j]));
                }
            }
        }
        out
    }

    /// Checks the thread-block conditions: at least two distinct vertices,
    /// first labeled {R}, last labeled {L}, and (when `canonical`) the
    /// second vertex is not a pendant of the first, i.e. not labeled {L},
    /// unless the block is a single edge.
    pub fn validate(&self, canonical: bool) -> bool {
        let k = self.order.len();
        if k < 2 || self.labels.len() != k {
            return false;
        }
        let distinct: HashSet<usize> = self.order.iter().copied().collect();
        if distinct.len() != k {
            return false;
        }
        if self.labels[0] != Label::R || *self.labels.last().unwrap() != Label::L {
            return false;
        }
        if canonical && k != 2 && self.labels[1] == Label::L {
            return false;
        }
        true
    }

    /// The same block read back to front with L and R swapped; still a
    /// valid (not necessarily canonical) thread block.
    pub fn reversed(&self) -> ThreadBlock {
        ThreadBlock {
            order: self.order.iter().rev().copied().collect(),
            labels: self.labels.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.order.contains(&v)
    }

    pub fn label_of(&self, v: usize) -> Option<Label> {
        self.order.iter().position(|&x| x == v).map(|i| self.labels[i])
    }
}

impl Serialize for ThreadBlock {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: &'a [usize],
            labels: BTreeMap<String, &'static str>,
        }
        let labels = self
            .order
            .iter()
            .zip(&self.labels)
            .map(|(v, l)| (v.to_string(), l.as_str()))
            .collect();
        Repr { order: &self.order, labels }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ThreadBlock {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: Vec<usize>,
            labels: BTreeMap<String, String>,
        }
        let r = Repr::deserialize(de)?;
        let labels = r
            .order
            .iter()
            .map(|v| {
                let s = r
                    .labels
                    .get(&v.to_string())
                    .ok_or_else(|| D::Error::custom(format!("missing label for vertex {v}")))?;
                Label::parse(s).ok_or_else(|| D::Error::custom(format!("bad label `{s}`")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ThreadBlock { order: r.order, labels })
    }
}

/// Thread blocks glued along a directed path of anchors; block i runs from
/// anchors[i] to anchors[i+1].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThreadDecomposition {
    pub anchors: Vec<usize>,
    pub blocks: Vec<ThreadBlock>,
}

/// Thread blocks glued along a directed cycle; block i runs from anchors[i]
/// to anchors[(i+1) % h].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecklaceDecomposition {
    pub anchors: Vec<usize>,
    pub blocks: Vec<ThreadBlock>,
}

impl ThreadDecomposition {
    pub fn merge(&self) -> Result<Graph> {
        merge(&self.anchors, &self.blocks, false)
    }
}

impl NecklaceDecomposition {
    pub fn merge(&self) -> Result<Graph> {
        merge(&self.anchors, &self.blocks, true)
    }
}

/// Glues `blocks` along the arcs of a directed path (or cycle when
/// `cyclic`) of `anchors`. Checks mergeability: block endpoints match the
/// arcs, and blocks pairwise intersect exactly in their shared anchors.
/// The block vertex sets must cover a dense id range 0..n-1.
pub fn merge(anchors: &[usize], blocks: &[ThreadBlock], cyclic: bool) -> Result<Graph> {
    let h = anchors.len();
    let want_blocks = if cyclic { h } else { h.checked_sub(1).unwrap_or(0) };
    if cyclic && h < 3 {
        return Err(Error::NotMergeable("cycle needs at least 3 anchors".into()));
    }
    if h < 2 || blocks.len() != want_blocks {
        return Err(Error::NotMergeable(format!(
            "{} anchors need {} blocks, got {}",
            h,
            want_blocks,
            blocks.len()
        )));
    }
    if anchors.iter().collect::<HashSet<_>>().len() != h {
        return Err(Error::NotMergeable("anchors not distinct".into()));
    }
    for (i, b) in blocks.iter().enumerate() {
        if !b.validate(false) {
            return Err(Error::NotMergeable(format!("block {i} is not a thread block")));
        }
        let (from, to) = (anchors[i], anchors[(i + 1) % h]);
        if b.first() != from || b.last() != to {
            return Err(Error::NotMergeable(format!(
                "block {i} runs {}..{}, arc is {from}..{to}",
                b.first(),
                b.last()
            )));
        }
    }
    // Pairwise intersections are exactly the shared anchors.
    let sets: Vec<HashSet<usize>> =
        blocks.iter().map(|b| b.order.iter().copied().collect()).collect();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let shared: HashSet<usize> = {
                let ai = [anchors[i], anchors[(i + 1) % h]];
                let aj = [anchors[j], anchors[(j + 1) % h]];
                ai.iter().filter(|v| aj.contains(v)).copied().collect()
            };
            let inter: HashSet<usize> = sets[i].intersection(&sets[j]).copied().collect();
            if inter != shared {
                return Err(Error::NotMergeable(format!(
                    "blocks {i} and {j} overlap in {inter:?}, expected {shared:?}"
                )));
            }
        }
    }
    let all: HashSet<usize> = sets.iter().flatten().copied().collect();
    let n = all.len();
    if all.iter().any(|&v| v >= n) {
        return Err(Error::NotMergeable("block vertex ids are not dense".into()));
    }
    let mut g = Graph::new(n);
    for b in blocks {
        for (u, v) in b.edges() {
            if !g.has_edge(u, v) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Builds the thread block realizing `g[order]` with the given ordering,
/// if one exists. Labels are forced: the first vertex is {R}, the last is
/// {L}, and a middle vertex carries R iff it sees the last vertex and L
/// iff it sees the first. The candidate is then checked against every
/// edge of the induced subgraph.
pub fn thread_block_from_order(g: &Graph, order: &[usize]) -> Option<ThreadBlock> {
    let k = order.len();
    if k < 2 {
        return None;
    }
    let (first, last) = (order[0], order[k - 1]);
    let mut labels = Vec::with_capacity(k);
    labels.push(Label::R);
    for &u in &order[1..k - 1] {
        let l = g.has_edge(u, first);
        let r = g.has_edge(u, last);
        labels.push(match (l, r) {
            (true, true) => Label::LR,
            (true, false) => Label::L,
            (false, true) => Label::R,
            (false, false) => return None,
        });
    }
    labels.push(Label::L);
    let b = ThreadBlock::new(order.to_vec(), labels);
    // Condition (2) across all pairs, against the host graph.
    for i in 0..k {
        for j in i + 1..k {
            let expect = b.labels[i].has_r() && b.labels[j].has_l();
            if g.has_edge(order[i], order[j]) != expect {
                return None;
            }
        }
    }
    b.validate(false).then_some(b)
}

/// Where a marker vertex of a label graph leads: either an original vertex
/// (a leaf of the tree) or a marker of a neighboring internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerTarget {
    Leaf(usize),
    Node { node: usize, marker: usize },
}

/// One internal node: its label graph, whose vertex i is marker i, and
/// where each marker leads.
#[derive(Debug, Clone)]
pub struct GltNode {
    pub label_graph: Graph,
    pub targets: Vec<MarkerTarget>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Clique,
    /// Star with the given center marker.
    Star { center: usize },
    Prime,
}

impl GltNode {
    pub fn degree(&self) -> usize {
        self.label_graph.n()
    }

    pub fn kind(&self) -> NodeKind {
        classify_label_graph(&self.label_graph)
    }

    pub fn is_degenerate(&self) -> bool {
        !matches!(self.kind(), NodeKind::Prime)
    }

    /// Leaves (original vertices) directly attached to this node, ascending.
    pub fn attached_leaves(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .targets
            .iter()
            .filter_map(|t| match t {
                MarkerTarget::Leaf(v) => Some(*v),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn internal_neighbors(&self) -> Vec<usize> {
        self.targets
            .iter()
            .filter_map(|t| match t {
                MarkerTarget::Node { node, .. } => Some(*node),
                _ => None,
            })
            .collect()
    }
}

fn classify_label_graph(g: &Graph) -> NodeKind {
    let n = g.n();
    debug_assert!(n >= 2);
    let m = g.m();
    if m == n * (n - 1) / 2 {
        return NodeKind::Clique;
    }
    if m == n - 1 {
        if let Some(center) = (0..n).find(|&v| g.degree(v) == n - 1) {
            return NodeKind::Star { center };
        }
    }
    // Not complete, not a star; prime iff it has no split, but nodes are
    // only ever constructed from split-free or degenerate graphs.
    NodeKind::Prime
}

/// A reduced graph-labelled tree (split tree) of a connected graph.
#[derive(Debug, Clone)]
pub struct GraphLabelledTree {
    /// Number of original vertices (= leaves of the tree).
    pub n: usize,
    pub nodes: Vec<GltNode>,
    /// For each original vertex, the (node, marker) it hangs off.
    pub leaf_attachment: Vec<(usize, usize)>,
}

impl GraphLabelledTree {
    /// Structural sanity: marker references are mutual, leaf attachments
    /// match, and internal nodes form a tree.
    pub fn check_consistency(&self) -> Result<()> {
        for (id, node) in self.nodes.iter().enumerate() {
            if node.targets.len() != node.label_graph.n() {
                return Err(Error::Internal(format!("node {id}: marker count mismatch")));
            }
            for (mi, t) in node.targets.iter().enumerate() {
                match *t {
                    MarkerTarget::Leaf(v) => {
                        if self.leaf_attachment[v] != (id, mi) {
                            return Err(Error::Internal(format!("leaf {v} attachment mismatch")));
                        }
                    }
                    MarkerTarget::Node { node: other, marker } => {
                        let back = self.nodes[other].targets[marker];
                        if back != (MarkerTarget::Node { node: id, marker: mi }) {
                            return Err(Error::Internal(format!(
                                "edge {id}:{mi} <-> {other}:{marker} not mutual"
                            )));
                        }
                    }
                }
            }
        }
        // Tree: connected with (#nodes - 1) internal edges (when any nodes).
        if !self.nodes.is_empty() {
            let mut internal_edges = 0;
            for node in &self.nodes {
                internal_edges += node.internal_neighbors().len();
            }
            if internal_edges != 2 * (self.nodes.len() - 1) {
                return Err(Error::Internal("internal edge count is not tree-like".into()));
            }
            let mut seen = vec![false; self.nodes.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for y in self.nodes[x].internal_neighbors() {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::Internal("internal nodes disconnected".into()));
            }
        }
        Ok(())
    }

    /// Reducedness: every node prime or degenerate and no adjacent
    /// degenerate pair whose node-join is again degenerate.
    pub fn is_reduced(&self) -> bool {
        for (id, node) in self.nodes.iter().enumerate() {
            // Degenerate or genuinely prime (no split at all).
            if !node.is_degenerate() && find_split(&node.label_graph).is_some() {
                return false;
            }
            for (mi, t) in node.targets.iter().enumerate() {
                if let MarkerTarget::Node { node: other, marker } = *t {
                    if other < id {
                        continue;
                    }
                    let a = &self.nodes[id];
                    let b = &self.nodes[other];
                    if a.is_degenerate() && b.is_degenerate() {
                        let joined = join_label_graphs(&a.label_graph, mi, &b.label_graph, marker);
                        if !matches!(classify_label_graph(&joined.0), NodeKind::Prime) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Reconstructs the original graph from leaf accessibility.
    pub fn accessibility_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        if self.nodes.is_empty() {
            // 0 or 1 vertex.
            return g;
        }
        for u in 0..self.n {
            let (start_node, start_marker) = self.leaf_attachment[u];
            // DFS over (node, entry marker) states.
            let mut seen: HashSet<(usize, usize)> = HashSet::new();
            let mut stack = vec![(start_node, start_marker)];
            seen.insert((start_node, start_marker));
            while let Some((x, entry)) = stack.pop() {
                let node = &self.nodes[x];
                for m in node.label_graph.neighbors(entry).iter() {
                    match node.targets[m] {
                        MarkerTarget::Leaf(v) => {
                            if v > u {
                                g.add_edge(u, v);
                            }
                        }
                        MarkerTarget::Node { node: y, marker } => {
                            if seen.insert((y, marker)) {
                                stack.push((y, marker));
                            }
                        }
                    }
                }
            }
        }
        g
    }

    /// Internal nodes in path order, if the tree minus its leaves is a
    /// path; None otherwise.
    pub fn internal_path(&self) -> Option<Vec<usize>> {
        let k = self.nodes.len();
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some(vec![0]);
        }
        let deg: Vec<usize> = self.nodes.iter().map(|n| n.internal_neighbors().len()).collect();
        if deg.iter().any(|&d| d > 2) {
            return None;
        }
        let start = (0..k).find(|&i| deg[i] == 1)?;
        let mut path = vec![start];
        let mut prev = usize::MAX;
        while path.len() < k {
            let cur = *path.last().unwrap();
            let next = self.nodes[cur].internal_neighbors().into_iter().find(|&x| x != prev)?;
            prev = cur;
            path.push(next);
        }
        Some(path)
    }
}

/// Finds a split of `h`: a bipartition (V1, V2), both sides of size >= 2,
/// whose crossing edges form a complete bipartite graph between a subset
/// of V1 and a subset of V2. Returns None iff `h` is prime.
///
/// For every guessed triple (u, x in V1 with u on the frontier; w in V2 on
/// the frontier) the forced-move rules below grow V1 to a fixpoint that is
/// itself a split whenever a split separating the guess exists, so the
/// scan over guesses is exhaustive; every candidate is re-checked directly
/// before being returned.
pub fn find_split(h: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = h.n();
    if n < 4 {
        return None;
    }
    for u in 0..n {
        for w in h.neighbors(u).iter() {
            for x in 0..n {
                if x == u || x == w {
                    continue;
                }
                if let Some(split) = try_split(h, u, w, x) {
                    return Some(split);
                }
            }
        }
    }
    None
}

fn try_split(h: &Graph, u: usize, w: usize, x: usize) -> Option<(VertexSet, VertexSet)> {
    let n = h.n();
    let mut v1 = VertexSet::from_iter(n, [u, x]);
    loop {
        let mut moved = false;
        for z in 0..n {
            if v1.contains(z) || z == w {
                continue;
            }
            let has_v1_neighbor = h.neighbors(z).intersects(&v1);
            if !has_v1_neighbor {
                continue;
            }
            // z sits on the V2 frontier, so it must see u (u is on the V1
            // frontier) and agree with w on its V1 neighborhood.
            if !h.has_edge(z, u) || h.neighbors(z).intersection(&v1) != h.neighbors(w).intersection(&v1)
            {
                v1.insert(z);
                moved = true;
            }
        }
        // V1 frontier vertices must all see w; pull in the V2 neighbors of
        // any V1 vertex that does not.
        for v in v1.clone().iter() {
            if h.has_edge(v, w) {
                continue;
            }
            let outside = h.neighbors(v).difference(&v1);
            if outside.contains(w) {
                unreachable!();
            }
            if !outside.is_empty() {
                for z in outside.iter() {
                    v1.insert(z);
                }
                moved = true;
            }
        }
        if v1.contains(w) {
            return None;
        }
        if !moved {
            break;
        }
    }
    let v2 = v1.complement();
    if v1.len() < 2 || v2.len() < 2 {
        return None;
    }
    is_valid_split(h, &v1, &v2).then_some((v1, v2))
}

fn is_valid_split(h: &Graph, v1: &VertexSet, v2: &VertexSet) -> bool {
    let f1: Vec<usize> = v1.iter().filter(|&v| h.neighbors(v).intersects(v2)).collect();
    let f2: Vec<usize> = v2.iter().filter(|&v| h.neighbors(v).intersects(v1)).collect();
    f1.iter().all(|&a| f2.iter().all(|&b| h.has_edge(a, b)))
}

/// Node-join of two label graphs along markers `ma`, `mb`: delete both
/// markers and connect their neighborhoods completely. Returns the joined
/// graph plus, for bookkeeping, the new indices of a's and b's surviving
/// vertices.
fn join_label_graphs(a: &Graph, ma: usize, b: &Graph, mb: usize) -> (Graph, Vec<usize>, Vec<usize>) {
    let na = a.n() - 1;
    let nb = b.n() - 1;
    let amap: Vec<usize> = (0..a.n()).filter(|&v| v != ma).collect();
    let bmap: Vec<usize> = (0..b.n()).filter(|&v| v != mb).collect();
    let mut g = Graph::new(na + nb);
    for (i, &v) in amap.iter().enumerate() {
        for (j, &w) in amap.iter().enumerate().skip(i + 1) {
            if a.has_edge(v, w) {
                g.add_edge(i, j);
            }
        }
    }
    for (i, &v) in bmap.iter().enumerate() {
        for (j, &w) in bmap.iter().enumerate().skip(i + 1) {
            if b.has_edge(v, w) {
                g.add_edge(na + i, na + j);
            }
        }
    }
    for (i, &v) in amap.iter().enumerate() {
        if !a.has_edge(v, ma) {
            continue;
        }
        for (j, &w) in bmap.iter().enumerate() {
            if b.has_edge(w, mb) {
                g.add_edge(i, na + j);
            }
        }
    }
    // Old index -> new index maps.
    let mut a_new = vec![usize::MAX; a.n()];
    for (i, &v) in amap.iter().enumerate() {
        a_new[v] = i;
    }
    let mut b_new = vec![usize::MAX; b.n()];
    for (j, &w) in bmap.iter().enumerate() {
        b_new[w] = na + j;
    }
    (g, a_new, b_new)
}

/// Virtual vertex during recursive construction.
#[derive(Clone, Copy)]
enum Slot {
    Leaf(usize),
    Pending(usize),
}

/// Builds the unique reduced split tree of a connected graph with at least
/// 2 vertices, by recursive node-splits followed by node-joins of adjacent
/// degenerate pairs that violate reducedness.
pub fn build_reduced_split_tree(g: &Graph) -> Result<GraphLabelledTree> {
    if g.n() < 2 {
        return Err(Error::Internal("split tree needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut nodes: Vec<GltNode> = Vec::new();
    let mut leaf_attachment = vec![(usize::MAX, usize::MAX); g.n()];
    let mut pending: Vec<Option<(usize, usize)>> = Vec::new();
    let slots: Vec<Slot> = (0..g.n()).map(Slot::Leaf).collect();
    build_rec(g.clone(), slots, &mut nodes, &mut leaf_attachment, &mut pending)?;
    let mut tree = GraphLabelledTree { n: g.n(), nodes, leaf_attachment };
    reduce_tree(&mut tree);
    tree.check_consistency()?;
    Ok(tree)
}

fn build_rec(
    g: Graph,
    slots: Vec<Slot>,
    nodes: &mut Vec<GltNode>,
    leaf_attachment: &mut Vec<(usize, usize)>,
    pending: &mut Vec<Option<(usize, usize)>>,
) -> Result<()> {
    debug_assert_eq!(g.n(), slots.len());
    let split = if matches!(classify_label_graph(&g), NodeKind::Prime) {
        find_split(&g)
    } else {
        None
    };
    let Some((v1, v2)) = split else {
        // Degenerate or prime: one node, label graph as is. A pending slot
        // whose twin is already placed is linked both ways now; otherwise
        // it records its location and waits for the twin.
        let id = nodes.len();
        let targets: Vec<MarkerTarget> = slots
            .iter()
            .enumerate()
            .map(|(mi, s)| match *s {
                Slot::Leaf(v) => {
                    leaf_attachment[v] = (id, mi);
                    MarkerTarget::Leaf(v)
                }
                Slot::Pending(_) => MarkerTarget::Node { node: usize::MAX, marker: usize::MAX },
            })
            .collect();
        nodes.push(GltNode { label_graph: g, targets });
        for (mi, s) in slots.iter().enumerate() {
            if let Slot::Pending(tok) = *s {
                match pending[tok] {
                    Some((other, marker)) => {
                        nodes[id].targets[mi] = MarkerTarget::Node { node: other, marker };
                        nodes[other].targets[marker] = MarkerTarget::Node { node: id, marker: mi };
                    }
                    None => pending[tok] = Some((id, mi)),
                }
            }
        }
        return Ok(());
    };

    let tok = pending.len();
    pending.push(None);
    for (vs, _other) in [(&v1, &v2), (&v2, &v1)] {
        let keep: Vec<usize> = vs.iter().collect();
        let frontier: Vec<usize> =
            keep.iter().copied().filter(|&v| g.neighbors(v).intersects(&vs.complement())).collect();
        let mut h = Graph::new(keep.len() + 1);
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in keep.iter().enumerate() {
            for w in g.neighbors(v).intersection(vs).iter() {
                if pos[w] > i {
                    h.add_edge(i, pos[w]);
                }
            }
        }
        let marker = keep.len();
        for &v in &frontier {
            h.add_edge(pos[v], marker);
        }
        let mut sub_slots: Vec<Slot> = keep.iter().map(|&v| slots[v]).collect();
        sub_slots.push(Slot::Pending(tok));
        build_rec(h, sub_slots, nodes, leaf_attachment, pending)?;
    }
    Ok(())
}

/// Joins adjacent degenerate node pairs whose node-join is degenerate,
/// until none remain.
fn reduce_tree(tree: &mut GraphLabelledTree) {
    'outer: loop {
        for id in 0..tree.nodes.len() {
            for mi in 0..tree.nodes[id].targets.len() {
                let MarkerTarget::Node { node: other, marker } = tree.nodes[id].targets[mi] else {
                    continue;
                };
                let a = &tree.nodes[id];
                let b = &tree.nodes[other];
                if !a.is_degenerate() || !b.is_degenerate() {
                    continue;
                }
                let (joined, a_new, b_new) =
                    join_label_graphs(&a.label_graph, mi, &b.label_graph, marker);
                if matches!(classify_label_graph(&joined), NodeKind::Prime) {
                    continue;
                }
                // Perform the join: new node replaces both.
                let mut targets = vec![MarkerTarget::Leaf(usize::MAX); joined.n()];
                let a_targets = tree.nodes[id].targets.clone();
                let b_targets = tree.nodes[other].targets.clone();
                for (old, t) in a_targets.iter().enumerate() {
                    if old != mi {
                        targets[a_new[old]] = *t;
                    }
                }
                for (old, t) in b_targets.iter().enumerate() {
                    if old != marker {
                        targets[b_new[old]] = *t;
                    }
                }
                let new_id = tree.nodes.len();
                tree.nodes.push(GltNode { label_graph: joined, targets: targets.clone() });
                for (mi2, t) in targets.iter().enumerate() {
                    match *t {
                        MarkerTarget::Leaf(v) => tree.leaf_attachment[v] = (new_id, mi2),
                        MarkerTarget::Node { node: nb, marker: mk } => {
                            tree.nodes[nb].targets[mk] =
                                MarkerTarget::Node { node: new_id, marker: mi2 };
                        }
                    }
                }
                // Drop the two old nodes, compacting ids.
                let mut remap = vec![usize::MAX; tree.nodes.len()];
                let mut next = 0;
                for i in 0..tree.nodes.len() {
                    if i != id && i != other {
                        remap[i] = next;
                        next += 1;
                    }
                }
                let mut kept = Vec::with_capacity(next);
                for (i, node) in std::mem::take(&mut tree.nodes).into_iter().enumerate() {
                    if i != id && i != other {
                        kept.push(node);
                    }
                }
                for node in &mut kept {
                    for t in &mut node.targets {
                        if let MarkerTarget::Node { node: nb, .. } = t {
                            *nb = remap[*nb];
                        }
                    }
                }
                tree.nodes = kept;
                for att in tree.leaf_attachment.iter_mut() {
                    att.0 = remap[att.0];
                }
                continue 'outer;
            }
        }
        break;
    }
}

/// Split-tree recognition: linear rankwidth is at most one iff every
/// component's split tree has only
/// degenerate nodes and an internal path. Single vertices count as thread
/// graphs; disconnected graphs pass iff every component does.
pub fn is_thread_graph(g: &Graph) -> bool {
    g.connected_components().iter().all(|comp| {
        if comp.len() <= 1 {
            return true;
        }
        let (sub, _) = g.induced_subgraph(comp);
        match build_reduced_split_tree(&sub) {
            Ok(tree) => {
                tree.nodes.iter().all(|n| n.is_degenerate()) && tree.internal_path().is_some()
            }
            Err(_) => false,
        }
    })
}

/// Canonical thread decomposition of a connected thread graph on >= 2
/// vertices, by the split-tree walk: orient the internal path, take the
/// star-center leaves as interior anchors, extend with one leaf at each
/// end, and label each block's vertices by their node's type and star
/// orientation. `reverse` walks the internal path in the opposite
/// direction (used to close necklace certificates both ways round).
pub fn canonical_thread_decomposition(g: &Graph, reverse: bool) -> Result<ThreadDecomposition> {
    if g.n() < 2 {
        return Err(Error::NotThreadGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.n() == 2 {
        let (a, b) = if reverse { (1, 0) } else { (0, 1) };
        return Ok(ThreadDecomposition { anchors: vec![a, b], blocks: vec![ThreadBlock::k2(a, b)] });
    }
    let tree = build_reduced_split_tree(g)?;
    if !tree.nodes.iter().all(|n| n.is_degenerate()) {
        return Err(Error::NotThreadGraph);
    }
    let mut q = tree.internal_path().ok_or(Error::NotThreadGraph)?;
    // Deterministic orientation: the end with the smaller least-attached
    // leaf comes first.
    if q.len() >= 2 {
        let head = tree.nodes[q[0]].attached_leaves().first().copied().unwrap_or(usize::MAX);
        let tail =
            tree.nodes[*q.last().unwrap()].attached_leaves().first().copied().unwrap_or(usize::MAX);
        if tail < head {
            q.reverse();
        }
    }
    if reverse {
        q.reverse();
    }
    let m = q.len();
    let pos_in_q: std::collections::HashMap<usize, usize> =
        q.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    // Per Q node: kind, and for stars where the center marker points.
    #[derive(Clone, Copy, PartialEq)]
    enum Orient {
        CliqueNode,
        TowardsV1,
        TowardsVm,
        CenterLeaf(usize),
    }
    let orient: Vec<Orient> = q
        .iter()
        .enumerate()
        .map(|(ell, &x)| match tree.nodes[x].kind() {
            NodeKind::Clique => Ok(Orient::CliqueNode),
            NodeKind::Star { center } => match tree.nodes[x].targets[center] {
                MarkerTarget::Leaf(v) => Ok(Orient::CenterLeaf(v)),
                MarkerTarget::Node { node: y, .. } => {
                    let ypos = pos_in_q[&y];
                    if ypos < ell {
                        Ok(Orient::TowardsV1)
                    } else {
                        Ok(Orient::TowardsVm)
                    }
                }
            },
            NodeKind::Prime => Err(Error::NotThreadGraph),
        })
        .collect::<Result<_>>()?;

    // Interior anchors: the star-center leaves, in path order.
    let mut seq: Vec<(usize, usize)> = Vec::new(); // (node position i_j, w_j)
    for (ell, o) in orient.iter().enumerate() {
        if let Orient::CenterLeaf(v) = o {
            seq.push((ell + 1, *v)); // 1-based node positions, i_j in 1..=m
        }
    }
    let t = seq.len();
    let eta = |ell1: usize| -> Vec<usize> { tree.nodes[q[ell1 - 1]].attached_leaves() };

    let w1 = seq.first().map(|&(_, w)| w);
    let w0 = eta(1)
        .into_iter()
        .find(|&v| Some(v) != w1)
        .ok_or_else(|| Error::Internal("no free leaf at the head node".into()))?;
    let wt = seq.last().map(|&(_, w)| w);
    let wlast = eta(m)
        .into_iter()
        .find(|&v| Some(v) != wt && v != w0)
        .ok_or_else(|| Error::Internal("no free leaf at the tail node".into()))?;

    let mut anchors = vec![w0];
    anchors.extend(seq.iter().map(|&(_, w)| w));
    anchors.push(wlast);
    let anchor_set: HashSet<usize> = anchors.iter().copied().collect();
    if anchor_set.len() != anchors.len() {
        return Err(Error::Internal("anchors not distinct".into()));
    }

    // i_0 = 0, i_{t+1} = m (1-based node positions).
    let mut ipos = vec![0usize];
    ipos.extend(seq.iter().map(|&(i, _)| i));
    ipos.push(m);

    let mut blocks = Vec::with_capacity(t + 1);
    for j in 0..=t {
        let lo = ipos[j] + 1;
        let hi = ipos[j + 1];
        let wj = anchors[j];
        let wj1 = anchors[j + 1];
        // Members: both anchors plus the leaves of the node range, other
        // anchors excluded (they belong to neighboring blocks).
        let mut members: Vec<(usize, usize)> = Vec::new(); // (node position, vertex)
        for ell in lo..=hi {
            for v in eta(ell) {
                if !anchor_set.contains(&v) {
                    members.push((ell, v));
                }
            }
        }
        members.sort_unstable();
        let mut order = vec![wj];
        order.extend(members.iter().map(|&(_, v)| v));
        order.push(wj1);

        // Pendant tips hanging off the next interior anchor.
        let pendant_tips: HashSet<usize> = if j + 1 <= t {
            eta(ipos[j + 1]).into_iter().filter(|&v| !anchor_set.contains(&v)).collect()
        } else {
            HashSet::new()
        };

        let mut labels = vec![Label::R];
        for &(ell, v) in &members {
            let lab = if pendant_tips.contains(&v) {
                Label::R
            } else {
                match orient[ell - 1] {
                    Orient::CliqueNode => Label::LR,
                    Orient::TowardsV1 => Label::L,
                    Orient::TowardsVm => Label::R,
                    Orient::CenterLeaf(_) => {
                        return Err(Error::Internal(
                            "interior leaf attached to a skipped star center".into(),
                        ))
                    }
                }
            };
            labels.push(lab);
        }
        labels.push(Label::L);
        let block = ThreadBlock::new(order, labels);
        if !block.validate(true) {
            return Err(Error::Internal(format!("block {j} fails canonicality")));
        }
        blocks.push(block);
    }

    let dec = ThreadDecomposition { anchors, blocks };
    // The construction is checked end to end: a wrong label table would
    // silently corrupt every downstream consumer.
    let merged = dec.merge()?;
    if merged != *g {
        return Err(Error::Internal("decomposition does not merge back to the input".into()));
    }
    Ok(dec)
}
