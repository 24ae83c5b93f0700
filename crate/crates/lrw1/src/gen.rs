//! Seeded instance generators: thread graphs and necklaces with ground
//! truth decompositions, planted deletion instances, and the reduction
//! from Vertex Cover used for hardness cross-checks.

use crate::graph::{Graph, VertexSet};
use crate::solver::Instance;
use crate::split::{merge, Label, NecklaceDecomposition, ThreadBlock, ThreadDecomposition};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random thread block from `from` to `to` with `size - 2` fresh
/// interior vertices drawn from `next_id`. Interior labels are uniform
/// over {L}, {R}, {LR}, then repaired to keep the block canonical (the
/// second vertex must not be a pendant of the first).
fn random_block(
    from: usize,
    to: usize,
    size: usize,
    next_id: &mut usize,
    rng: &mut impl Rng,
) -> ThreadBlock {
    assert!(size >= 2);
    let mut order = vec![from];
    let mut labels = vec![Label::R];
    for i in 0..size - 2 {
        order.push(*next_id);
        *next_id += 1;
        let mut l = match rng.gen_range(0..3) {
            0 => Label::L,
            1 => Label::R,
            _ => Label::LR,
        };
        if i == 0 && l == Label::L {
            l = Label::LR;
        }
        labels.push(l);
    }
    order.push(to);
    labels.push(Label::L);
    let b = ThreadBlock::new(order, labels);
    debug_assert!(b.validate(true));
    b
}

fn size_in(range: (usize, usize), rng: &mut impl Rng) -> usize {
    let (lo, hi) = range;
    assert!(2 <= lo && lo <= hi);
    rng.gen_range(lo..=hi)
}

/// A random thread graph made of `blocks` blocks glued along an anchor
/// path, with the decomposition that produced it as ground truth.
pub fn gen_thread_graph(
    blocks: usize,
    block_size_range: (usize, usize),
    seed: u64,
) -> (Graph, ThreadDecomposition) {
    assert!(blocks >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchors: Vec<usize> = (0..=blocks).collect();
    let mut next_id = blocks + 1;
    let bs: Vec<ThreadBlock> = (0..blocks)
        .map(|i| {
            let size = size_in(block_size_range, &mut rng);
            random_block(anchors[i], anchors[i + 1], size, &mut next_id, &mut rng)
        })
        .collect();
    let g = merge(&anchors, &bs, false).expect("generated blocks are mergeable");
    (g, ThreadDecomposition { anchors, blocks: bs })
}

/// A random necklace: `cycle_len` blocks glued along an anchor cycle.
/// Anchors of a cycle shorter than 3 cannot be distinct.
pub fn gen_necklace(
    cycle_len: usize,
    block_size_range: (usize, usize),
    seed: u64,
) -> Result<(Graph, NecklaceDecomposition)> {
    if cycle_len < 3 {
        return Err(Error::NotMergeable("cycle needs at least 3 anchors".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchors: Vec<usize> = (0..cycle_len).collect();
    let mut next_id = cycle_len;
    let bs: Vec<ThreadBlock> = (0..cycle_len)
        .map(|i| {
            let size = size_in(block_size_range, &mut rng);
            let to = anchors[(i + 1) % cycle_len];
            random_block(anchors[i], to, size, &mut next_id, &mut rng)
        })
        .collect();
    let g = merge(&anchors, &bs, true).expect("generated blocks are mergeable");
    Ok((g, NecklaceDecomposition { anchors, blocks: bs }))
}

/// Shape of the clean base graph a planted instance is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Thread,
    Necklace,
}

/// A yes-leaning instance: a random base graph plus `extra` vertices
/// wired in with edge probability `p`. Deleting the extras restores the
/// base, so the optimum is at most the instance budget: `extra` for a
/// thread base, `extra + 1` for a necklace base (one anchor more).
pub fn gen_planted(base: BaseKind, extra: usize, p: f64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, slack) = match base {
        BaseKind::Thread => {
            let blocks = rng.gen_range(2..=6);
            (gen_thread_graph(blocks, (2, 5), rng.gen()).0, 0)
        }
        BaseKind::Necklace => {
            let cycle = rng.gen_range(9..=13);
            (gen_necklace(cycle, (2, 4), rng.gen()).unwrap().0, 1)
        }
    };
    let n = g.n();
    let mut edges = g.edges();
    for i in 0..extra {
        for u in 0..n + i {
            if rng.gen_bool(p) {
                edges.push((n + i, u));
            }
        }
    }
    Instance::new(Graph::from_edges(n + extra, &edges), extra + slack)
}

/// The Vertex Cover reduction: every vertex gets a pendant and every
/// edge is replaced by two disjoint paths of length two. Minimum vertex
/// covers of `g` correspond exactly to minimum deletion sets of the
/// result.
pub fn vc_reduction(g: &Graph) -> Graph {
    let n = g.n();
    let old = g.edges();
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((v, n + v));
    }
    let mut next = 2 * n;
    for &(u, v) in &old {
        edges.push((u, next));
        edges.push((next, v));
        edges.push((u, next + 1));
        edges.push((next + 1, v));
        next += 2;
    }
    Graph::from_edges(next, &edges)
}

/// Minimum vertex cover of size at most `k`, lexicographically smallest
/// among the minimums, or None.
pub fn vertex_cover_bruteforce(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge { op: "vertex_cover_bruteforce", n, limit: 20 });
    }
    let edges = g.edges();
    let covers = |mask: u32| edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
    let mut best: Option<u32> = None;
    for mask in 0u32..1u32 << n {
        let size = mask.count_ones() as usize;
        if size > k.min(n) {
            continue;
        }
        if let Some(b) = best {
            let better = size < b.count_ones() as usize
                || (size == b.count_ones() as usize && mask < b);
            if !better {
                continue;
            }
        }
        if covers(mask) {
            best = Some(mask);
        }
    }
    Ok(best.map(|m| VertexSet::from_iter(n, (0..n).filter(|&v| m >> v & 1 == 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{classify_component, Classification};
    use crate::obstructions::find_small_obstruction;
    use crate::oracle::min_deletion_set_bruteforce;
    use crate::solver::solve_branching;
    use crate::split::is_thread_graph;

    #[test]
    fn thread_generator_examples() {
        let (g, d) = gen_thread_graph(1, (2, 2), 7);
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(d.anchors, vec![0, 1]);

        for seed in 0..50 {
            let (g, d) = gen_thread_graph(1 + (seed as usize % 6), (2, 6), seed);
            assert_eq!(d.anchors.len(), d.blocks.len() + 1);
            assert_eq!(d.merge().unwrap(), g);
            assert!(is_thread_graph(&g), "seed {seed}");
        }
    }

    #[test]
    fn necklace_generator_examples() {
        assert!(gen_necklace(2, (2, 2), 0).is_err());

        let (g, _) = gen_necklace(9, (2, 2), 0).unwrap();
        assert_eq!(g, Graph::cycle(9));

        for seed in 0..30 {
            let (g, d) = gen_necklace(9 + (seed as usize % 7), (2, 5), seed).unwrap();
            assert_eq!(d.merge().unwrap(), g);
            assert!(find_small_obstruction(&g).is_none(), "seed {seed}");
            assert!(matches!(classify_component(&g).unwrap(), Classification::Necklace(_)));
            for &a in &d.anchors {
                assert!(is_thread_graph(&g.delete_vertex(a).0), "seed {seed} anchor {a}");
            }
        }
    }

    #[test]
    fn planted_examples() {
        let inst = gen_planted(BaseKind::Thread, 0, 0.3, 11);
        assert_eq!(inst.k, 0);
        assert!(is_thread_graph(&inst.graph));

        for seed in 0..20 {
            let inst = gen_planted(BaseKind::Thread, 2, 0.4, seed);
            assert!(
                solve_branching(&inst).is_some(),
                "planted budget is an upper bound, seed {seed}"
            );
            let inst = gen_planted(BaseKind::Necklace, 1, 0.3, seed);
            assert!(solve_branching(&inst).is_some(), "seed {seed}");
        }

        let a = gen_planted(BaseKind::Necklace, 3, 0.25, 99);
        let b = gen_planted(BaseKind::Necklace, 3, 0.25, 99);
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn vc_reduction_examples() {
        let g = vc_reduction(&Graph::complete(2));
        assert_eq!(g.n(), 6);
        assert_eq!(vertex_cover_bruteforce(&Graph::complete(2), 2).unwrap().unwrap().len(), 1);
        assert_eq!(min_deletion_set_bruteforce(&g, 2).unwrap().unwrap().len(), 1);

        let g = vc_reduction(&Graph::complete(3));
        assert_eq!(g.n(), 12);
        assert_eq!(vertex_cover_bruteforce(&Graph::complete(3), 3).unwrap().unwrap().len(), 2);
        assert_eq!(min_deletion_set_bruteforce(&g, 3).unwrap().unwrap().len(), 2);

        let g = vc_reduction(&Graph::new(4));
        assert_eq!(g.n(), 8);
        assert!(is_thread_graph(&g) || min_deletion_set_bruteforce(&g, 0).unwrap().is_some());
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(vertex_cover_bruteforce(&Graph::complete(3), 3).unwrap().unwrap().len(), 2);
        assert_eq!(vertex_cover_bruteforce(&Graph::cycle(5), 5).unwrap().unwrap().len(), 3);
        assert!(vertex_cover_bruteforce(&Graph::new(3), 0).unwrap().unwrap().is_empty());
        assert!(vertex_cover_bruteforce(&Graph::complete(3), 1).unwrap().is_none());
        assert!(vertex_cover_bruteforce(&Graph::new(21), 0).is_err());
    }
}
