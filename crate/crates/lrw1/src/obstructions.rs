//! The finite obstruction catalog for linear rankwidth 1 and fast searches
//! for its members (and for long induced cycles) inside arbitrary graphs.
//!
//! The catalog is derived once by `oracle::derive_obstruction_catalog` and
//! embedded as generated data; loading re-checks the counts and canonical
//! forms so a stale file fails loudly.

use crate::graph::{Graph, GraphData, VertexSet};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// One member of the embedded catalog.
pub struct CatalogMember {
    pub id: usize,
    /// Human-readable annotation where one is known (house, gem, cycles,
    /// ...); purely informational, never load-bearing.
    pub name: Option<String>,
    pub graph: Graph,
    pub canonical_form: Vec<u8>,
    pub degree_multiset: Vec<usize>,
}

pub struct ObstructionCatalog {
    members: Vec<CatalogMember>,
}

#[derive(Serialize, Deserialize)]
pub struct CatalogFileEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub graph: GraphData,
}

static CATALOG_JSON: &str = include_str!("../data/obstruction_catalog.json");

static CATALOG: Lazy<ObstructionCatalog> = Lazy::new(|| {
    let entries: Vec<CatalogFileEntry> =
        serde_json::from_str(CATALOG_JSON).expect("embedded obstruction catalog is valid JSON");
    let members = entries
        .into_iter()
        .map(|e| {
            let graph: Graph = (&e.graph).into();
            let canonical_form = graph.canonical_form_small().unwrap();
            let degree_multiset = graph.degree_multiset();
            CatalogMember { id: e.id, name: e.name, graph, canonical_form, degree_multiset }
        })
        .collect();
    ObstructionCatalog { members }
});

/// The embedded catalog singleton.
pub fn catalog() -> &'static ObstructionCatalog {
    &CATALOG
}

impl ObstructionCatalog {
    pub fn members(&self) -> &[CatalogMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The member isomorphic to `g`, if any (g must have <= 10 vertices).
    pub fn classify(&self, g: &Graph) -> Option<&CatalogMember> {
        let form = g.canonical_form_small().ok()?;
        self.members.iter().find(|m| m.canonical_form == form)
    }
}

/// An occurrence of a catalog member as an induced subgraph.
#[derive(Debug, Clone)]
pub struct ObstructionHit {
    pub catalog_id: usize,
    pub vertices: VertexSet,
    /// mapping[i] = host vertex playing catalog-member vertex i.
    pub mapping: Vec<usize>,
}

/// Backtracking induced-subgraph-isomorphism search. Pattern vertices are
/// visited in an order where each one (after the first) has an earlier
/// neighbor, so partial maps stay connected and prune well. The visitor
/// returns false to stop the search.
pub(crate) fn search_induced(
    g: &Graph,
    pattern: &Graph,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let pn = pattern.n();
    if pn == 0 || pn > g.n() {
        return true;
    }
    // Connected visit order (the catalog members are all connected).
    let mut order = vec![0usize];
    let mut placed = vec![false; pn];
    placed[0] = true;
    while order.len() < pn {
        let next = (0..pn)
            .find(|&v| !placed[v] && order.iter().any(|&u| pattern.has_edge(u, v)))
            .unwrap_or_else(|| (0..pn).find(|&v| !placed[v]).unwrap());
        placed[next] = true;
        order.push(next);
    }
    let pdeg: Vec<usize> = (0..pn).map(|v| pattern.degree(v)).collect();

    fn rec(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        pdeg: &[usize],
        map: &mut Vec<(usize, usize)>, // (pattern vertex, host vertex)
        used: &mut VertexSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if map.len() == order.len() {
            let mut out = vec![0usize; order.len()];
            for &(pv, hv) in map.iter() {
                out[pv] = hv;
            }
            return visit(&out);
        }
        let pv = order[map.len()];
        'cand: for hv in 0..g.n() {
            if used.contains(hv) || g.degree(hv) < pdeg[pv] {
                continue;
            }
            for &(qv, hw) in map.iter() {
                if pattern.has_edge(pv, qv) != g.has_edge(hv, hw) {
                    continue 'cand;
                }
            }
            map.push((pv, hv));
            used.insert(hv);
            let go_on = rec(g, pattern, order, pdeg, map, used, visit);
            used.remove(hv);
            map.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    let mut map = Vec::with_capacity(pn);
    let mut used = VertexSet::new(g.n());
    rec(g, pattern, &order, &pdeg, &mut map, &mut used, visit)
}

/// First catalog occurrence in `g`, searching members by ID and host
/// candidates ascending; deterministic.
pub fn find_small_obstruction(g: &Graph) -> Option<ObstructionHit> {
    for m in catalog().members() {
        if m.graph.n() > g.n() {
            continue;
        }
        let mut hit: Option<ObstructionHit> = None;
        search_induced(g, &m.graph, &mut |map| {
            hit = Some(ObstructionHit {
                catalog_id: m.id,
                vertices: VertexSet::from_iter(g.n(), map.iter().copied()),
                mapping: map.to_vec(),
            });
            false
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Every distinct vertex set of `g` inducing a catalog member, up to `cap`.
pub fn enumerate_obstruction_occurrences(g: &Graph, cap: usize) -> Result<Vec<ObstructionHit>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for m in catalog().members() {
        if m.graph.n() > g.n() {
            continue;
        }
        let mut overflow = false;
        search_induced(g, &m.graph, &mut |map| {
            let mut key: Vec<usize> = map.to_vec();
            key.sort_unstable();
            if seen.insert(key) {
                if out.len() == cap {
                    overflow = true;
                    return false;
                }
                out.push(ObstructionHit {
                    catalog_id: m.id,
                    vertices: VertexSet::from_iter(g.n(), map.iter().copied()),
                    mapping: map.to_vec(),
                });
            }
            true
        });
        if overflow {
            return Err(Error::CapExceeded { cap });
        }
    }
    Ok(out)
}

/// An induced cycle of length >= `min_len`, as a vertex sequence, if one
/// exists. DFS over induced paths anchored at their smallest vertex.
pub fn find_long_induced_cycle(g: &Graph, min_len: usize) -> Option<Vec<usize>> {
    assert!(min_len >= 4);
    let n = g.n();

    fn rec(
        g: &Graph,
        min_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut VertexSet,
    ) -> Option<Vec<usize>> {
        let root = path[0];
        let last = *path.last().unwrap();
        for next in g.neighbors(last).iter() {
            if next <= root || on_path.contains(next) {
                continue;
            }
            // Induced: no chord to an inner path vertex.
            let inner = path.get(1..path.len() - 1).unwrap_or(&[]);
            if inner.iter().any(|&u| g.has_edge(next, u)) {
                continue;
            }
            // Adjacency back to the root either closes the cycle now or
            // would be a chord later; never extend through it.
            if path.len() >= 2 && g.has_edge(next, root) {
                if path.len() + 1 >= min_len {
                    let mut cycle = path.clone();
                    cycle.push(next);
                    return Some(cycle);
                }
                continue;
            }
            path.push(next);
            on_path.insert(next);
            let found = rec(g, min_len, path, on_path);
            on_path.remove(next);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    for root in 0..n {
        let mut path = vec![root];
        let mut on_path = VertexSet::from_iter(n, [root]);
        if let Some(c) = rec(g, min_len, &mut path, &mut on_path) {
            return Some(c);
        }
    }
    None
}

/// Named obstruction constructions used only to annotate the derived
/// catalog; house, gem and domino plus the small cycles are standard.
pub fn house() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])
}

pub fn gem() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
}

pub fn domino() -> Graph {
    let mut g = Graph::cycle(6);
    g.add_edge(1, 4);
    g
}

/// The 6-vertex family around a path v1 v2 . v4 v5 (middle vertex removed)
/// with two common neighbors w1, w2 of v2 and v4; the five free adjacencies
/// (v1v5 and {v1,v5} x {w1,w2} is not free - the free pairs are w1w2 and
/// {v1,v5} x {w1,w2}) range over all completions. Members of the catalog
/// appearing in this family get alpha annotations.
pub fn alpha_family() -> Vec<Graph> {
    // Vertices: 0=v1, 1=v2, 2=v4, 3=v5, 4=w1, 5=w2.
    let base = [(0, 1), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)];
    let free = [(4, 5), (0, 4), (0, 5), (3, 4), (3, 5)];
    let mut out = Vec::new();
    for mask in 0u32..1 << free.len() {
        let mut g = Graph::from_edges(6, &base);
        for (i, &(u, v)) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        out.push(g);
    }
    out
}

/// The 7-vertex spiders: a center u with three legs u - p_i - q_i, where u
/// is additionally adjacent to t of the leg tips q_i, t = 0..3.
pub fn beta_family() -> Vec<Graph> {
    (0..=3)
        .map(|t| {
            let mut g = Graph::new(7);
            for i in 0..3 {
                g.add_edge(0, 1 + 2 * i);
                g.add_edge(1 + 2 * i, 2 + 2 * i);
                if i < t {
                    g.add_edge(0, 2 + 2 * i);
                }
            }
            g
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert_eq!(cat.len(), 21);
        for (i, m) in cat.members().iter().enumerate() {
            assert_eq!(m.id, i);
            assert!(m.graph.n() <= 8);
            assert!(m.graph.is_connected());
        }
        // Sorted by vertex count, forms all distinct.
        let forms: HashSet<_> = cat.members().iter().map(|m| m.canonical_form.clone()).collect();
        assert_eq!(forms.len(), 21);
        assert!(cat.members().windows(2).all(|w| w[0].graph.n() <= w[1].graph.n()));
    }

    #[test]
    fn catalog_contains_named_members() {
        let cat = catalog();
        for (g, name) in [
            (house(), "house"),
            (gem(), "gem"),
            (domino(), "domino"),
            (Graph::cycle(5), "c5"),
            (Graph::cycle(6), "c6"),
            (Graph::cycle(7), "c7"),
            (Graph::cycle(8), "c8"),
        ] {
            let m = cat.classify(&g).unwrap_or_else(|| panic!("{name} not in catalog"));
            assert_eq!(m.name.as_deref(), Some(name));
        }
        assert!(cat.classify(&Graph::cycle(4)).is_none());
        assert!(cat.classify(&Graph::complete(5)).is_none());
    }

    #[test]
    fn find_small_obstruction_examples() {
        assert!(find_small_obstruction(&Graph::complete(5)).is_none());
        assert!(find_small_obstruction(&Graph::path(7)).is_none());
        assert!(find_small_obstruction(&Graph::cycle(9)).is_none());

        let hit = find_small_obstruction(&Graph::cycle(5)).unwrap();
        assert_eq!(hit.vertices.len(), 5);
        assert_eq!(catalog().members()[hit.catalog_id].name.as_deref(), Some("c5"));
    }

    #[test]
    fn hits_induce_the_member() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let n = rng.gen_range(5..=11);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            if let Some(hit) = find_small_obstruction(&g) {
                let m = &catalog().members()[hit.catalog_id];
                let (sub, _) = g.induced_subgraph(&hit.vertices);
                assert_eq!(
                    sub.canonical_form_small().unwrap(),
                    m.canonical_form,
                    "hit does not induce its member"
                );
                // Mapping is exact: edges correspond one to one.
                for u in 0..m.graph.n() {
                    for v in u + 1..m.graph.n() {
                        assert_eq!(
                            m.graph.has_edge(u, v),
                            g.has_edge(hit.mapping[u], hit.mapping[v])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn occurrence_enumeration_examples() {
        assert_eq!(enumerate_obstruction_occurrences(&Graph::cycle(5), 10).unwrap().len(), 1);
        assert_eq!(enumerate_obstruction_occurrences(&Graph::complete(6), 10).unwrap().len(), 0);
        let both = gem().disjoint_union(&house());
        assert_eq!(enumerate_obstruction_occurrences(&both, 10).unwrap().len(), 2);
        assert!(matches!(
            enumerate_obstruction_occurrences(&both, 1),
            Err(Error::CapExceeded { cap: 1 })
        ));
    }

    #[test]
    fn occurrence_enumeration_matches_bruteforce_subsets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let n = rng.gen_range(6..=9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let fast: HashSet<Vec<usize>> = enumerate_obstruction_occurrences(&g, 1 << 20)
                .unwrap()
                .into_iter()
                .map(|h| h.vertices.iter().collect())
                .collect();
            let mut slow: HashSet<Vec<usize>> = HashSet::new();
            for mask in 1u32..1 << n {
                let s = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
                if s.len() < 5 || s.len() > 8 {
                    continue;
                }
                let (sub, _) = g.induced_subgraph(&s);
                if sub.is_connected() && catalog().classify(&sub).is_some() {
                    slow.insert(s.iter().collect());
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn long_induced_cycle_examples() {
        let c9 = Graph::cycle(9);
        let cyc = find_long_induced_cycle(&c9, 9).unwrap();
        assert_eq!(cyc.len(), 9);
        assert!(find_long_induced_cycle(&Graph::cycle(8), 9).is_none());
        assert!(find_long_induced_cycle(&Graph::complete(8), 4).is_none());
        // Reported cycles are genuinely induced.
        let c12 = Graph::cycle(12);
        let cyc = find_long_induced_cycle(&c12, 9).unwrap();
        for i in 0..cyc.len() {
            for j in i + 1..cyc.len() {
                let expect = j == i + 1 || (i == 0 && j == cyc.len() - 1);
                assert_eq!(c12.has_edge(cyc[i], cyc[j]), expect);
            }
        }
    }

    #[test]
    fn agreement_with_oracle_small() {
        // find_small_obstruction absent iff lrw <= 1, on all connected
        // graphs with 5 and 6 vertices (no long-cycle escape below 9).
        for n in 5..=6 {
            for g in oracle::enumerate_connected_graphs(n).unwrap() {
                let free = find_small_obstruction(&g).is_none();
                assert_eq!(free, oracle::lrw_at_most_one(&g).unwrap(), "n={n} {g:?}");
            }
        }
    }

    #[test]
    fn middle_deletion_family_always_hit() {
        // Removing the middle vertex of the path underlying the alpha
        // family always leaves an obstruction, whatever the completion.
        for g in alpha_family() {
            assert!(find_small_obstruction(&g).is_some(), "{g:?}");
        }
    }

    #[test]
    fn chorded_fan_family_always_hit() {
        // A path p1..ph plus an extra vertex adjacent to both ends and any
        // inner subset contains an obstruction whenever every induced cycle
        // created has length at most 8.
        for h in 4..=8usize {
            for mask in 0u32..1 << (h - 2) {
                let mut g = Graph::path(h);
                let v = h;
                let mut g2 = Graph::new(h + 1);
                for (a, b) in g.edges() {
                    g2.add_edge(a, b);
                }
                g = g2;
                g.add_edge(v, 0);
                g.add_edge(v, h - 1);
                for i in 0..h - 2 {
                    if mask >> i & 1 == 1 {
                        g.add_edge(v, i + 1);
                    }
                }
                if find_long_induced_cycle(&g, 9).is_none() {
                    assert!(find_small_obstruction(&g).is_some(), "h={h} mask={mask}");
                }
            }
        }
    }
}
