//! Undirected simple graphs with bitset adjacency, GF(2) cut-rank,
//! block/cut-vertex structure and small-graph canonical forms.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A set of vertex indices, backed by 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    fn mask_tail(&mut self) {
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency rows are bitsets; the representation is kept symmetric and
/// loop-free by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: (0..n).map(|_| VertexSet::new(n)).collect(), names: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        assert!(u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.n);
        self.names = Some(names);
    }

    pub fn name_of(&self, v: usize) -> String {
        match &self.names {
            Some(ns) => ns[v].clone(),
            None => format!("{v}"),
        }
    }

    /// Induced subgraph on `s`; the second component maps new indices back
    /// to the original ones (ascending).
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = s.iter().collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for w in self.adj[v].intersection(s).iter() {
                if pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        if let Some(ns) = &self.names {
            g.names = Some(keep.iter().map(|&v| ns[v].clone()).collect());
        }
        (g, keep)
    }

    /// Deletes `s`, relabelling densely; the second component maps old
    /// indices to new ones (`None` for deleted vertices).
    pub fn delete_vertices(&self, s: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let (g, keep) = self.induced_subgraph(&s.complement());
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        (g, old_to_new)
    }

    pub fn delete_vertex(&self, v: usize) -> (Graph, Vec<Option<usize>>) {
        self.delete_vertices(&VertexSet::from_iter(self.n, [v]))
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            comp.insert(start);
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        g
    }

    /// Relabels via `perm`: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// GF(2) rank of the bipartite adjacency submatrix between `s` and its
    /// complement. Word-wide XOR elimination; this is the inner loop of the
    /// linear-rankwidth oracle.
    pub fn cut_rank(&self, s: &VertexSet) -> usize {
        let comp = s.complement();
        let mut rows: Vec<Vec<u64>> = s
            .iter()
            .map(|v| self.adj[v].intersection(&comp).words.clone())
            .filter(|w| w.iter().any(|&x| x != 0))
            .collect();
        let mut rank = 0;
        let words = self.n.div_ceil(64);
        for w in 0..words {
            for bit in 0..64 {
                let mask = 1u64 << bit;
                let Some(pi) = (rank..rows.len()).find(|&i| rows[i][w] & mask != 0) else {
                    continue;
                };
                rows.swap(rank, pi);
                let pivot = rows[rank].clone();
                for row in rows.iter_mut().skip(rank + 1) {
                    if row[w] & mask != 0 {
                        for (a, b) in row.iter_mut().zip(&pivot) {
                            *a ^= b;
                        }
                    }
                }
                rank += 1;
                if rank == rows.len() {
                    return rank;
                }
            }
        }
        rank
    }

    /// Blocks (maximal 2-connected pieces and bridge edges) and cut
    /// vertices, by DFS lowpoints.
    pub fn blocks_and_cut_vertices(&self) -> BlockCutStructure {
        let n = self.n;
        let mut num = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = VertexSet::new(n);
        let mut blocks: Vec<VertexSet> = Vec::new();
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut counter = 0usize;

        // Iterative DFS: (vertex, parent, neighbor iterator state).
        for root in 0..n {
            if num[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
            num[root] = counter;
            low[root] = counter;
            counter += 1;
            let mut root_children = 0usize;
            stack.push((root, usize::MAX, self.adj[root].iter().collect(), 0));
            while let Some((v, parent, nbrs, idx)) = stack.last_mut() {
                let (v, parent) = (*v, *parent);
                if *idx < nbrs.len() {
                    let w = nbrs[*idx];
                    *idx += 1;
                    if num[w] == usize::MAX {
                        edge_stack.push((v, w));
                        num[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, self.adj[w].iter().collect(), 0));
                    } else if w != parent && num[w] < num[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(num[w]);
                    }
                } else {
                    stack.pop();
                    if let Some((p, _, _, _)) = stack.last() {
                        let p = *p;
                        low[p] = low[p].min(low[v]);
                        if low[v] >= num[p] {
                            // p separates the block just finished.
                            let mut block = VertexSet::new(n);
                            while let Some(&(a, b)) = edge_stack.last() {
                                if num[a] >= num[v] {
                                    block.insert(a);
                                    block.insert(b);
                                    edge_stack.pop();
                                } else {
                                    break;
                                }
                            }
                            // The tree edge (p, v) itself.
                            if let Some(&(a, b)) = edge_stack.last() {
                                if (a, b) == (p, v) {
                                    edge_stack.pop();
                                }
                            }
                            block.insert(p);
                            block.insert(v);
                            blocks.push(block);
                            if p != root || root_children > 1 {
                                cut.insert(p);
                            }
                        }
                    }
                }
            }
            edge_stack.clear();
        }

        // Cut-vertex flag for roots with >1 block is handled above; recompute
        // membership counts to fill the block-cut tree adjacency.
        let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for v in b.iter() {
                vertex_blocks[v].push(i);
            }
        }
        BlockCutStructure { cut_vertices: cut, blocks, vertex_blocks }
    }

    /// Canonical byte-string for graphs on at most 10 vertices: equal iff
    /// isomorphic. Minimizes the upper-triangular adjacency bit-string over
    /// all vertex orderings with prefix-based branch-and-bound.
    pub fn canonical_form_small(&self) -> Result<Vec<u8>> {
        if self.n > 10 {
            return Err(Error::TooLarge { op: "canonical_form_small", n: self.n, limit: 10 });
        }
        Ok(self.canonical_perm().0)
    }

    /// Canonical form together with the ordering realizing it
    /// (`perm[position] = vertex`).
    pub(crate) fn canonical_perm(&self) -> (Vec<u8>, Vec<usize>) {
        let n = self.n;
        let masks: Vec<u16> = (0..n)
            .map(|v| self.adj[v].iter().fold(0u16, |m, w| m | (1 << w)))
            .collect();
        let nbits = n * (n - 1).max(0) / 2;
        let mut best_bits: Vec<bool> = vec![true; nbits];
        let mut best_perm: Vec<usize> = (0..n).collect();
        let mut have_best = false;

        // perm[pos] = vertex; bits for position p are adjacency to positions
        // 0..p. The prefix is re-compared against the current best from
        // scratch at every node: the best string can change mid-recursion,
        // so incremental equal/less bookkeeping would go stale.
        fn rec(
            masks: &[u16],
            n: usize,
            perm: &mut Vec<usize>,
            used: &mut u16,
            bits: &mut Vec<bool>,
            best_bits: &mut Vec<bool>,
            best_perm: &mut Vec<usize>,
            have_best: &mut bool,
        ) {
            let p = perm.len();
            if p == n {
                if !*have_best || bits[..] < best_bits[..] {
                    *best_bits = bits.clone();
                    *best_perm = perm.clone();
                    *have_best = true;
                }
                return;
            }
            for v in 0..n {
                if *used >> v & 1 == 1 {
                    continue;
                }
                let start = bits.len();
                for i in 0..p {
                    bits.push(masks[v] >> perm[i] & 1 == 1);
                }
                if *have_best && bits[..] > best_bits[..bits.len()] {
                    bits.truncate(start);
                    continue;
                }
                perm.push(v);
                *used |= 1 << v;
                rec(masks, n, perm, used, bits, best_bits, best_perm, have_best);
                *used &= !(1 << v);
                perm.pop();
                bits.truncate(start);
            }
        }

        let mut perm = Vec::with_capacity(n);
        let mut used = 0u16;
        let mut bits = Vec::with_capacity(nbits);
        rec(&masks, n, &mut perm, &mut used, &mut bits, &mut best_bits, &mut best_perm, &mut have_best);
        if !have_best {
            // n == 0
            best_bits.clear();
            best_perm.clear();
        }

        let mut out = vec![n as u8];
        let mut acc = 0u8;
        for (i, &b) in best_bits.iter().enumerate() {
            acc = acc << 1 | b as u8;
            if i % 8 == 7 {
                out.push(acc);
                acc = 0;
            }
        }
        if best_bits.len() % 8 != 0 {
            acc <<= 8 - best_bits.len() % 8;
            out.push(acc);
        }
        (out, best_perm)
    }

    /// The isomorphism-class representative: relabelled so that its own
    /// canonical ordering is the identity.
    pub fn canonical_graph(&self) -> Result<Graph> {
        if self.n > 10 {
            return Err(Error::TooLarge { op: "canonical_form_small", n: self.n, limit: 10 });
        }
        let (_, perm) = self.canonical_perm();
        // perm[pos] = vertex, so vertex v moves to position perm^{-1}(v).
        let mut inv = vec![0; self.n];
        for (pos, &v) in perm.iter().enumerate() {
            inv[v] = pos;
        }
        Ok(self.permute(&inv))
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        ds.sort_unstable();
        ds
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Blocks and cut vertices of a graph, with per-vertex block membership.
#[derive(Debug, Clone)]
pub struct BlockCutStructure {
    pub cut_vertices: VertexSet,
    pub blocks: Vec<VertexSet>,
    /// For each vertex, the indices of the blocks containing it.
    pub vertex_blocks: Vec<Vec<usize>>,
}

/// A JSON-friendly edge-list view of a graph.
#[derive(Serialize, Deserialize)]
pub struct GraphData {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<&Graph> for GraphData {
    fn from(g: &Graph) -> Self {
        GraphData { n: g.n(), edges: g.edges(), names: g.names().map(|s| s.to_vec()) }
    }
}

impl From<&GraphData> for Graph {
    fn from(d: &GraphData) -> Self {
        let mut g = Graph::from_edges(d.n, &d.edges);
        if let Some(names) = &d.names {
            g.set_names(names.clone());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn house() -> Graph {
        // C5 plus one chord: square 0-1-2-3 with roof 4 on top of 2-3.
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)])
    }

    #[test]
    fn cut_rank_examples() {
        let g = Graph::complete(5);
        assert_eq!(g.cut_rank(&VertexSet::new(5)), 0);
        assert_eq!(g.cut_rank(&VertexSet::from_iter(5, [0, 1])), 1);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.cut_rank(&VertexSet::from_iter(5, [0, 1])), 2);
    }

    #[test]
    fn cut_rank_symmetric_and_bounded() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut s = VertexSet::new(n);
            for v in 0..n {
                if rng.gen_bool(0.5) {
                    s.insert(v);
                }
            }
            let r = g.cut_rank(&s);
            assert_eq!(r, g.cut_rank(&s.complement()));
            assert!(r <= s.len().min(n - s.len()));
        }
    }

    #[test]
    fn blocks_of_path_and_cycle() {
        let p4 = Graph::path(4);
        let bc = p4.blocks_and_cut_vertices();
        assert_eq!(bc.blocks.len(), 3);
        assert_eq!(bc.cut_vertices.iter().collect::<Vec<_>>(), vec![1, 2]);

        let c5 = Graph::cycle(5);
        let bc = c5.blocks_and_cut_vertices();
        assert_eq!(bc.blocks.len(), 1);
        assert!(bc.cut_vertices.is_empty());

        // Two triangles sharing vertex 0.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let bc = g.blocks_and_cut_vertices();
        assert_eq!(bc.blocks.len(), 2);
        assert_eq!(bc.cut_vertices.iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn block_invariants_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(2..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let bc = g.blocks_and_cut_vertices();
            // Every edge lies in exactly one block.
            for (u, v) in g.edges() {
                let cnt = bc
                    .blocks
                    .iter()
                    .filter(|b| b.contains(u) && b.contains(v))
                    .count();
                assert_eq!(cnt, 1, "edge ({u},{v}) in {cnt} blocks");
            }
            // Cut vertex iff in >= 2 blocks.
            for v in 0..n {
                let in_blocks = bc.vertex_blocks[v].len();
                assert_eq!(bc.cut_vertices.contains(v), in_blocks >= 2);
            }
            // Removing a cut vertex increases the component count.
            let before = g.connected_components().len();
            for v in bc.cut_vertices.iter() {
                let (h, _) = g.delete_vertex(v);
                assert!(h.connected_components().len() > before - 1);
            }
        }
    }

    #[test]
    fn induced_and_components() {
        let c5 = Graph::cycle(5);
        let (p3, _) = c5.induced_subgraph(&VertexSet::from_iter(5, [0, 1, 2]));
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);

        let k4 = Graph::complete(4);
        let (k2, _) = k4.induced_subgraph(&VertexSet::from_iter(4, [1, 3]));
        assert_eq!(k2.edges(), vec![(0, 1)]);

        let g = Graph::cycle(9).disjoint_union(&Graph::complete(2));
        assert_eq!(g.connected_components().len(), 2);
    }

    #[test]
    fn canonical_form_basics() {
        let p3a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let p3b = Graph::from_edges(3, &[(2, 0), (0, 1)]);
        assert_eq!(p3a.canonical_form_small().unwrap(), p3b.canonical_form_small().unwrap());

        let c4 = Graph::cycle(4);
        let k3k1 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0)]);
        assert_ne!(c4.canonical_form_small().unwrap(), k3k1.canonical_form_small().unwrap());

        assert!(Graph::new(11).canonical_form_small().is_err());
    }

    #[test]
    fn canonical_form_counts_labeled_4_vertex_graphs() {
        // All 2^6 labeled graphs on 4 vertices fall into exactly 11 classes.
        let mut forms = std::collections::HashSet::new();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for mask in 0u32..64 {
            let mut g = Graph::new(4);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            forms.insert(g.canonical_form_small().unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn canonical_form_permutation_invariant() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm);
            assert_eq!(g.canonical_form_small().unwrap(), h.canonical_form_small().unwrap());
        }
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g = house();
        let c = g.canonical_graph().unwrap();
        assert_eq!(c.canonical_form_small().unwrap(), g.canonical_form_small().unwrap());
        assert_eq!(c.canonical_graph().unwrap().edges(), c.edges());
    }
}
