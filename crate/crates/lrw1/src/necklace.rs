//! Classification of connected graphs into threads, necklaces, and the
//! rest, plus the polynomial minimum deletion routine for graphs that
//! avoid the small obstruction catalog entirely.

use crate::graph::{Graph, VertexSet};
use crate::obstructions::find_small_obstruction;
use crate::split::{
    canonical_thread_decomposition, is_thread_graph, merge, thread_block_from_order, Label,
    NecklaceDecomposition, ThreadBlock, ThreadDecomposition,
};
use crate::{Error, Result};

/// Minimum cycle length certified by [`classify_component`]. Connected
/// graphs without a catalog hit are threads or necklaces whose cycle has
/// at least this many anchors; shorter cyclic arrangements only occur on
/// graphs that contain a catalog member, so they are reported as Other.
pub const MIN_NECKLACE_CYCLE: usize = 9;

/// Outcome of [`classify_component`].
#[derive(Debug, Clone)]
pub enum Classification {
    /// Linear rankwidth at most one, with a decomposition certificate
    /// (empty block list for a single vertex).
    Thread(ThreadDecomposition),
    /// Thread blocks glued along a cycle of at least
    /// [`MIN_NECKLACE_CYCLE`] anchors; the certificate merges back to the
    /// input graph.
    Necklace(NecklaceDecomposition),
    /// Neither of the above; only happens when the graph contains a
    /// member of the small obstruction catalog.
    Other,
}

/// Classifies a connected graph as a thread graph, a necklace with a
/// certificate decomposition, or neither.
///
/// The necklace certificate is found by breaking the graph at a vertex v
/// whose removal leaves a thread graph (plus isolated former pendants of
/// v), decomposing that thread, and closing the path decomposition back
/// into a cycle through v. Candidate break vertices are scanned in
/// ascending order, so the result is deterministic.
pub fn classify_component(g: &Graph) -> Result<Classification> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if is_thread_graph(g) {
        if g.n() < 2 {
            return Ok(Classification::Thread(ThreadDecomposition {
                anchors: (0..g.n()).collect(),
                blocks: vec![],
            }));
        }
        return Ok(Classification::Thread(canonical_thread_decomposition(g, false)?));
    }
    for v in 0..g.n() {
        if let Some(d) = close_cycle_at(g, v) {
            return Ok(Classification::Necklace(d));
        }
    }
    Ok(Classification::Other)
}

/// Attempts to certify `g` as a necklace broken at `v`: `g` minus `v`
/// must be one thread component plus isolated former pendants of `v`, and
/// some prefix and suffix of the component's path decomposition must fold
/// into the two cycle blocks containing `v`.
fn close_cycle_at(g: &Graph, v: usize) -> Option<NecklaceDecomposition> {
    let n = g.n();
    let rest = VertexSet::from_iter(n, (0..n).filter(|&u| u != v));
    let (h, keep) = g.induced_subgraph(&rest);
    let comps = h.connected_components();
    let mut pendants = VertexSet::new(n);
    let mut main: Option<&VertexSet> = None;
    for c in &comps {
        if c.len() == 1 {
            // A singleton of g minus v was adjacent only to v.
            pendants.insert(keep[c.min().unwrap()]);
        } else if main.is_some() {
            return None;
        } else {
            main = Some(c);
        }
    }
    let (mg, mkeep) = h.induced_subgraph(main?);
    if !is_thread_graph(&mg) {
        return None;
    }
    let to_old: Vec<usize> = mkeep.iter().map(|&u| keep[u]).collect();

    for reverse in [false, true] {
        let d = canonical_thread_decomposition(&mg, reverse).ok()?;
        let anchors: Vec<usize> = d.anchors.iter().map(|&a| to_old[a]).collect();
        let blocks: Vec<ThreadBlock> = d
            .blocks
            .iter()
            .map(|b| ThreadBlock {
                order: b.order.iter().map(|&u| to_old[u]).collect(),
                labels: b.labels.clone(),
            })
            .collect();
        let s = blocks.len();
        // Cumulative vertex sets of block prefixes and suffixes.
        let mut prefix = vec![VertexSet::new(n)];
        for b in &blocks {
            let mut next = prefix.last().unwrap().clone();
            for &u in &b.order {
                next.insert(u);
            }
            prefix.push(next);
        }
        let mut suffix = vec![VertexSet::new(n); s + 1];
        suffix[s] = VertexSet::from_iter(n, [anchors[s]]);
        for i in (0..s).rev() {
            let mut next = suffix[i + 1].clone();
            for &u in &blocks[i].order {
                next.insert(u);
            }
            suffix[i] = next;
        }

        for j in 0..s {
            if !g.has_edge(v, anchors[j]) {
                continue;
            }
            let mut front_set = prefix[j].clone();
            if j == 0 {
                front_set.insert(anchors[0]);
            }
            front_set.insert(v);
            let Some(front) = block_with_ends(g, &front_set, v, anchors[j]) else {
                continue;
            };
            if !front.validate(true) {
                continue;
            }
            for i in j + 1..=s {
                if i - j + 2 < MIN_NECKLACE_CYCLE || !g.has_edge(v, anchors[i]) {
                    continue;
                }
                // Every neighbor of v must land in one of its two blocks.
                let covered = front_set.union(&suffix[i]).union(&pendants);
                if !g.neighbors(v).is_subset(&covered) {
                    continue;
                }
                let mut back_set = suffix[i].union(&pendants);
                back_set.insert(v);
                let Some(back) = block_with_ends(g, &back_set, anchors[i], v) else {
                    continue;
                };
                if !back.validate(true) {
                    continue;
                }
                let mut cyc_anchors = vec![v];
                cyc_anchors.extend_from_slice(&anchors[j..=i]);
                let mut cyc_blocks = vec![front.clone()];
                cyc_blocks.extend_from_slice(&blocks[j..i]);
                cyc_blocks.push(back);
                if let Ok(m) = merge(&cyc_anchors, &cyc_blocks, true) {
                    if same_adjacency(&m, g) {
                        return Some(NecklaceDecomposition {
                            anchors: cyc_anchors,
                            blocks: cyc_blocks,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Builds a thread block on the vertex set `set` with the given first and
/// last vertex, realizing exactly the edges of `g[set]`, if one exists.
///
/// With the endpoints fixed, each label is forced (L iff adjacent to the
/// first vertex, R iff adjacent to the last), and the relative order of
/// two interior vertices is either free or forced by whether their edge
/// must be generated. Any topological order of the forced pairs works, so
/// one is built greedily, preferring a non-{L} vertex right after the
/// first position to keep the block canonical when possible.
fn block_with_ends(g: &Graph, set: &VertexSet, first: usize, last: usize) -> Option<ThreadBlock> {
    if !g.has_edge(first, last) {
        return None;
    }
    let inner: Vec<usize> = set.iter().filter(|&u| u != first && u != last).collect();
    let k = inner.len();
    let mut labels = Vec::with_capacity(k);
    for &u in &inner {
        let l = g.has_edge(u, first);
        let r = g.has_edge(u, last);
        labels.push(match (l, r) {
            (true, true) => Label::LR,
            (true, false) => Label::L,
            (false, true) => Label::R,
            (false, false) => return None,
        });
    }
    // before[b] holds the positions that must precede inner[b].
    let mut before: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in 0..k {
        for b in a + 1..k {
            let e = g.has_edge(inner[a], inner[b]);
            let a_first_ok = e == (labels[a].has_r() && labels[b].has_l());
            let b_first_ok = e == (labels[b].has_r() && labels[a].has_l());
            match (a_first_ok, b_first_ok) {
                (true, true) => {}
                (true, false) => before[b].push(a),
                (false, true) => before[a].push(b),
                (false, false) => return None,
            }
        }
    }
    let mut placed = vec![false; k];
    let mut order = vec![first];
    for step in 0..k {
        let mut pick = None;
        for b in 0..k {
            if placed[b] || before[b].iter().any(|&a| !placed[a]) {
                continue;
            }
            // Prefer a canonical second vertex, otherwise the smallest id.
            let better = match pick {
                None => true,
                Some(p) if step == 0 => {
                    (labels[b] != Label::L && labels[p as usize] == Label::L)
                        || (labels[b] != Label::L) == (labels[p as usize] != Label::L)
                            && inner[b] < inner[p as usize]
                }
                Some(p) => inner[b] < inner[p as usize],
            };
            if better {
                pick = Some(b);
            }
        }
        let b = pick?;
        placed[b] = true;
        order.push(inner[b]);
    }
    order.push(last);
    thread_block_from_order(g, &order)
}

fn same_adjacency(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && (0..a.n()).all(|v| a.neighbors(v) == b.neighbors(v))
}

/// Computes a minimum deletion set to linear rankwidth at most one for a
/// graph with no hit from the small obstruction catalog: per component,
/// nothing if the component is already a thread graph, otherwise the
/// smallest vertex whose removal leaves one.
pub fn min_deletion_obn_free(g: &Graph) -> Result<VertexSet> {
    if find_small_obstruction(g).is_some() {
        return Err(Error::NotObnFree);
    }
    let mut out = VertexSet::new(g.n());
    for comp in g.connected_components() {
        let (h, keep) = g.induced_subgraph(&comp);
        if is_thread_graph(&h) {
            continue;
        }
        let v = (0..h.n())
            .find(|&u| is_thread_graph(&h.delete_vertex(u).0))
            .ok_or_else(|| {
                Error::Internal("component is neither a thread nor breakable to one".into())
            })?;
        out.insert(keep[v]);
    }
    Ok(out)
}
