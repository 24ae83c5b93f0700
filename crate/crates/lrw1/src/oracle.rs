//! Slow, trusted reference implementations: exact linear rankwidth by subset
//! dynamic programming, brute-force minimum deletion sets, exhaustive
//! enumeration of small connected graphs, and derivation of the obstruction
//! catalog from first principles.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};
use std::collections::HashSet;

/// Adjacency as one machine word per vertex; only valid for n <= 20 or so.
fn mask_adjacency(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

/// GF(2) rank of the rows { adj[v] & !s : v in s }, via an XOR basis
/// indexed by leading bit.
fn mask_cut_rank(adj: &[u32], s: u32) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    let mut t = s;
    while t != 0 {
        let v = t.trailing_zeros() as usize;
        t &= t - 1;
        let mut row = adj[v] & !s;
        while row != 0 {
            let b = (31 - row.leading_zeros()) as usize;
            if basis[b] == 0 {
                basis[b] = row;
                rank += 1;
                break;
            }
            row ^= basis[b];
        }
    }
    rank
}

/// Exact linear rankwidth: min over vertex orderings of the max cut-rank of
/// any prefix, computed as f(S) = max(cutrank(S), min_{v in S} f(S minus v)).
pub fn linear_rankwidth_exact(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge { op: "linear_rankwidth_exact", n, limit: 20 });
    }
    if n <= 1 {
        return Ok(0);
    }
    let adj = mask_adjacency(g);
    let full = (1u32 << n) - 1;
    let mut f = vec![0u8; 1 << n];
    for s in 1u32..=full {
        let mut best = u8::MAX;
        let mut t = s;
        while t != 0 {
            let v = t.trailing_zeros();
            t &= t - 1;
            best = best.min(f[(s & !(1 << v)) as usize]);
        }
        f[s as usize] = best.max(mask_cut_rank(&adj, s) as u8);
    }
    Ok(f[full as usize] as usize)
}

/// Decides lrw(g) <= 1 by reachability over prefix sets of cut-rank <= 1.
/// Much faster than the full DP because unreachable sets are never ranked.
pub(crate) fn lrw_at_most_one_masks(adj: &[u32], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    assert!(n <= 25);
    let full = (1u32 << n) - 1;
    let mut reach = vec![false; 1 << n];
    reach[0] = true;
    for s in 1u32..=full {
        let mut t = s;
        let mut ok = false;
        while t != 0 {
            let v = t.trailing_zeros();
            t &= t - 1;
            if reach[(s & !(1 << v)) as usize] {
                ok = true;
                break;
            }
        }
        if ok && mask_cut_rank(adj, s) <= 1 {
            reach[s as usize] = true;
        }
    }
    reach[full as usize]
}

pub fn lrw_at_most_one(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge { op: "lrw_at_most_one", n, limit: 20 });
    }
    Ok(lrw_at_most_one_masks(&mask_adjacency(g), n))
}

/// Smallest S with |S| <= k and lrw(g minus S) <= 1, trying sizes in
/// ascending order and candidate sets in lexicographic order, so ties break
/// to the lexicographically smallest vertex set.
pub fn min_deletion_set_bruteforce(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    let n = g.n();
    if n > 18 {
        return Err(Error::TooLarge { op: "min_deletion_set_bruteforce", n, limit: 18 });
    }
    let adj = mask_adjacency(g);
    for size in 0..=k.min(n) {
        let mut found: Option<u32> = None;
        for_each_subset_lex(n, size, &mut |s| {
            if found.is_some() {
                return;
            }
            // Delete S: keep rows of V minus S restricted to V minus S.
            let keep: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
            let sub: Vec<u32> = keep
                .iter()
                .map(|&v| {
                    let mut row = 0u32;
                    for (i, &w) in keep.iter().enumerate() {
                        if adj[v] >> w & 1 == 1 {
                            row |= 1 << i;
                        }
                    }
                    row
                })
                .collect();
            if lrw_at_most_one_masks(&sub, keep.len()) {
                found = Some(s);
            }
        });
        if let Some(s) = found {
            return Ok(Some(VertexSet::from_iter(n, (0..n).filter(|&v| s >> v & 1 == 1))));
        }
    }
    Ok(None)
}

/// Calls `f` on every size-`size` subset of 0..n, in lexicographic order of
/// the ascending vertex list.
fn for_each_subset_lex(n: usize, size: usize, f: &mut dyn FnMut(u32)) {
    fn rec(n: usize, start: usize, left: usize, acc: u32, f: &mut dyn FnMut(u32)) {
        if left == 0 {
            f(acc);
            return;
        }
        for v in start..=n - left {
            rec(n, v + 1, left - 1, acc | 1 << v, f);
        }
    }
    if size <= n {
        rec(n, 0, size, 0, f);
    }
}

/// One representative per isomorphism class of connected graphs on exactly
/// `n` vertices, built by vertex extension with canonical-form dedup. Every
/// connected graph has a non-cut vertex, so extension from n-1 reaches all.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::TooLarge { op: "enumerate_connected_graphs", n, limit: 8 });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::new(1)];
    for i in 1..n {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 1u32..1 << i {
                let mut h = Graph::new(i + 1);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for v in 0..i {
                    if mask >> v & 1 == 1 {
                        h.add_edge(i, v);
                    }
                }
                let form = h.canonical_form_small()?;
                if seen.insert(form) {
                    next.push(h.canonical_graph()?);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// All connected graphs g on at most 8 vertices with lrw(g) >= 2 but
/// lrw(g minus v) <= 1 for every vertex v: the obstruction set for linear
/// rankwidth 1, restricted to small graphs. This is exactly the finite
/// catalog (the only larger obstructions are cycles of length >= 9).
pub fn derive_obstruction_catalog() -> Result<Vec<Graph>> {
    let mut out: Vec<(usize, Vec<u8>, Graph)> = Vec::new();
    for n in 2..=8 {
        for g in enumerate_connected_graphs(n)? {
            if lrw_at_most_one(&g)? {
                continue;
            }
            let all_deletions_ok = (0..n).all(|v| {
                let (h, _) = g.delete_vertex(v);
                lrw_at_most_one(&h).unwrap()
            });
            if !all_deletions_ok {
                continue;
            }
            // Minimal obstructions at this scale all sit at lrw exactly 2.
            assert_eq!(linear_rankwidth_exact(&g)?, 2);
            let form = g.canonical_form_small()?;
            out.push((n, form, g));
        }
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lrw_small_examples() {
        assert_eq!(linear_rankwidth_exact(&Graph::new(1)).unwrap(), 0);
        assert_eq!(linear_rankwidth_exact(&Graph::complete(5)).unwrap(), 1);
        assert_eq!(linear_rankwidth_exact(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(linear_rankwidth_exact(&Graph::path(6)).unwrap(), 1);
        // Complete bipartite K_{2,3}.
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(linear_rankwidth_exact(&k23).unwrap(), 1);
        assert!(linear_rankwidth_exact(&Graph::new(21)).is_err());
    }

    #[test]
    fn lrw_decision_matches_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(lrw_at_most_one(&g).unwrap(), linear_rankwidth_exact(&g).unwrap() <= 1);
        }
    }

    #[test]
    fn lrw_monotone_under_deletion() {
        for n in 2..=6 {
            for g in enumerate_connected_graphs(n).unwrap() {
                let w = linear_rankwidth_exact(&g).unwrap();
                for v in 0..n {
                    let (h, _) = g.delete_vertex(v);
                    assert!(linear_rankwidth_exact(&h).unwrap() <= w);
                }
            }
        }
    }

    #[test]
    fn brute_force_deletion_examples() {
        let p5 = Graph::path(5);
        assert_eq!(min_deletion_set_bruteforce(&p5, 0).unwrap().unwrap().len(), 0);

        let c9 = Graph::cycle(9);
        let s = min_deletion_set_bruteforce(&c9, 1).unwrap().unwrap();
        assert_eq!(s.len(), 1);
        // Lexicographically smallest single vertex works for a cycle.
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0]);

        let two = Graph::cycle(9).disjoint_union(&Graph::cycle(9));
        assert!(min_deletion_set_bruteforce(&two, 1).unwrap().is_none());
        assert_eq!(min_deletion_set_bruteforce(&two, 2).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected_graphs(9).is_err());
    }

    #[test]
    fn enumeration_members_connected_and_distinct() {
        let graphs = enumerate_connected_graphs(5).unwrap();
        let mut forms = HashSet::new();
        for g in &graphs {
            assert!(g.is_connected());
            assert!(forms.insert(g.canonical_form_small().unwrap()));
        }
    }
}
