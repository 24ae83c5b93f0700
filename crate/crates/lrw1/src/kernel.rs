//! Polynomial kernelization: sunflower-based compression of the
//! obstruction family, the modulator set T, the one-vertex reduction
//! rule, irrelevant-vertex detection in large thread blocks, contraction
//! of long block chains, and component-count rules, composed to a
//! fixpoint. Thresholds default to the exact formulas in mu(k); a test
//! mode shrinks them so every rule fires at desk scale.

use crate::graph::{Graph, VertexSet};
use crate::necklace::min_deletion_obn_free;
use crate::obstructions::{enumerate_obstruction_occurrences, find_small_obstruction};
use crate::split::{canonical_thread_decomposition, is_thread_graph, ThreadBlock};
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashSet;

/// mu(k) = 8 * 8! * (k+1)^8 + k, the bound on |T|.
pub fn mu(k: usize) -> BigUint {
    let fact8 = BigUint::from(40320u32);
    BigUint::from(8u32) * fact8 * BigUint::from(k as u64 + 1).pow(8) + BigUint::from(k as u64)
}

/// A family of vertex sets over a fixed universe, with duplicates removed.
#[derive(Debug, Clone)]
pub struct SetFamily {
    pub universe: usize,
    pub sets: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(universe: usize, sets: Vec<VertexSet>) -> Self {
        let mut sets = sets;
        sets.sort();
        sets.dedup();
        SetFamily { universe, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Finds `need` sets forming a sunflower (pairwise intersections all equal
/// to a common core): greedily collect a maximal pairwise-disjoint
/// subfamily, and when it is too small, recurse on the sets through a
/// most-frequent element. Returns indices into `sets`.
fn find_sunflower(universe: usize, sets: &[VertexSet], need: usize) -> Option<Vec<usize>> {
    if sets.len() < need {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut taken = VertexSet::new(universe);
    for (i, s) in sets.iter().enumerate() {
        if !s.intersects(&taken) {
            chosen.push(i);
            taken = taken.union(s);
            if chosen.len() == need {
                return Some(chosen);
            }
        }
    }
    // Too few disjoint sets: some element is frequent; all sunflowers
    // found among the sets containing it extend with that element in the
    // core.
    let mut freq = vec![0usize; universe];
    for s in sets {
        for v in s.iter() {
            freq[v] += 1;
        }
    }
    let x = (0..universe).max_by_key(|&v| freq[v])?;
    if freq[x] < need {
        return None;
    }
    let mut idx = Vec::new();
    let mut sub = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if s.contains(x) {
            let mut s2 = s.clone();
            s2.remove(x);
            idx.push(i);
            sub.push(s2);
        }
    }
    let inner = find_sunflower(universe, &sub, need)?;
    Some(inner.into_iter().map(|i| idx[i]).collect())
}

/// Compresses a family of sets of size at most `d` while preserving its
/// minimal hitting sets of size at most `k`: while a sunflower with k+2
/// petals exists, one petal is redundant (any small hitting set must hit
/// the shared core) and is dropped. The result has at most d!(k+1)^d
/// sets.
pub fn sunflower_compress(f: &SetFamily, k: usize, d: usize) -> SetFamily {
    debug_assert!(f.sets.iter().all(|s| s.len() <= d));
    let mut sets = f.sets.clone();
    while let Some(petals) = find_sunflower(f.universe, &sets, k + 2) {
        let drop = *petals.iter().max().unwrap();
        sets.remove(drop);
    }
    let out = SetFamily { universe: f.universe, sets };
    debug_assert!(BigUint::from(out.len()) <= hitting_bound(k, d));
    out
}

/// d!(k+1)^d, the guaranteed size bound after compression.
pub fn hitting_bound(k: usize, d: usize) -> BigUint {
    (1..=d as u64).map(BigUint::from).product::<BigUint>() * BigUint::from(k as u64 + 1).pow(d as u32)
}

/// Rule firing thresholds. The default values (see [`Thresholds::paper`])
/// make the structural rules correct unconditionally; test mode shrinks
/// them so the same code paths run on desk-scale graphs, with safety
/// checked against oracles instead of proved.
#[derive(Debug, Clone)]
pub struct Thresholds {
    /// Fire the irrelevant-vertex search on blocks of at least this size.
    pub block_size: BigUint,
    /// Contract components with at least this many thread blocks.
    pub component_blocks: BigUint,
    /// Apply the isolated-vertex rule at this many isolated vertices.
    pub isolated: BigUint,
    /// Diagnostic cap on nontrivial components of g minus T.
    pub components: BigUint,
}

impl Thresholds {
    /// (k+2)(mu+2)^2 + 1, 19(6 mu + 1), mu^2 (k+2) + 1, and 2 mu.
    pub fn paper(k: usize) -> Self {
        let m = mu(k);
        let k2 = BigUint::from(k as u64 + 2);
        let two = BigUint::from(2u32);
        Thresholds {
            block_size: k2.clone() * (&m + &two).pow(2) + 1u32,
            component_blocks: BigUint::from(19u32) * (BigUint::from(6u32) * &m + 1u32),
            isolated: m.pow(2) * k2 + 1u32,
            components: two * &m,
        }
    }

    /// Small constants that let every rule fire on toy instances. The
    /// marking widths stay at k+2, so the irrelevance arguments still
    /// apply; only the size guarantees are given up.
    pub fn test() -> Self {
        Thresholds {
            block_size: BigUint::from(6u32),
            component_blocks: BigUint::from(12u32),
            isolated: BigUint::from(3u32),
            components: BigUint::from(1_000_000u32),
        }
    }
}

fn at_least(count: usize, threshold: &BigUint) -> bool {
    BigUint::from(count) >= *threshold
}

/// Mutable kernelization state.
#[derive(Debug, Clone)]
pub struct KernelState {
    pub graph: Graph,
    pub k: usize,
    /// The modulator: g minus t_set is a thread graph once compute_T ran.
    pub t_set: VertexSet,
    pub thresholds: Thresholds,
    /// Cap on obstruction-occurrence enumeration.
    pub cap: usize,
    /// Names of the rules applied, in order.
    pub trace: Vec<String>,
}

impl KernelState {
    pub fn new(graph: Graph, k: usize, thresholds: Thresholds) -> Self {
        let n = graph.n();
        KernelState {
            graph,
            k,
            t_set: VertexSet::new(n),
            thresholds,
            cap: 1_000_000,
            trace: Vec::new(),
        }
    }

    fn delete(&mut self, dead: &VertexSet) {
        let (g, old_to_new) = self.graph.delete_vertices(dead);
        let mut t = VertexSet::new(g.n());
        for v in self.t_set.iter() {
            if let Some(nv) = old_to_new[v] {
                t.insert(nv);
            }
        }
        self.graph = g;
        self.t_set = t;
    }
}

/// Outcome of a rule or of the whole pipeline.
#[derive(Debug, Clone)]
pub enum KernelOutcome {
    Reduced(Graph, usize),
    No,
    Unchanged,
}

impl KernelOutcome {
    pub fn is_unchanged(&self) -> bool {
        matches!(self, KernelOutcome::Unchanged)
    }
}

/// Rule 1: components of linear rankwidth at most one never need
/// deletions; remove them.
pub fn rule_remove_thread_components(state: &mut KernelState) -> KernelOutcome {
    let g = &state.graph;
    let mut dead = VertexSet::new(g.n());
    for comp in g.connected_components() {
        let (h, _) = g.induced_subgraph(&comp);
        if is_thread_graph(&h) {
            dead = dead.union(&comp);
        }
    }
    if dead.is_empty() {
        return KernelOutcome::Unchanged;
    }
    state.delete(&dead);
    state.trace.push("remove_thread_components".into());
    KernelOutcome::Reduced(state.graph.clone(), state.k)
}

/// Computes the modulator T: compress the family of catalog occurrences,
/// take the union T' of the survivors, and add an exact deletion set Y of
/// the obstruction-free remainder. None means the instance has no
/// solution within budget: either the compressed family itself is
/// unhittable with k vertices (witnessed by an occurrence avoiding T'),
/// or |Y| > k.
pub fn compute_t(state: &mut KernelState) -> Result<Option<VertexSet>> {
    let g = &state.graph;
    let occs = enumerate_obstruction_occurrences(g, state.cap)?;
    let family = SetFamily::new(g.n(), occs.into_iter().map(|h| h.vertices).collect());
    let compressed = sunflower_compress(&family, state.k, 8);
    let mut t_prime = VertexSet::new(g.n());
    for s in &compressed.sets {
        t_prime = t_prime.union(s);
    }
    let (h, keep) = g.induced_subgraph(&t_prime.complement());
    if find_small_obstruction(&h).is_some() {
        // Some occurrence avoids the union of the compressed family, so
        // the family has no hitting set of size at most k at all.
        return Ok(None);
    }
    let y = min_deletion_obn_free(&h)?;
    if y.len() >= state.k + 1 {
        return Ok(None);
    }
    let mut t = t_prime;
    for v in y.iter() {
        t.insert(keep[v]);
    }
    state.t_set = t.clone();
    Ok(Some(t))
}

/// Rule 2: every vertex of T that is the sole T-vertex of some catalog
/// occurrence must be in every minimal deletion set; delete them all and
/// shrink the budget, or answer No when there are more than k.
pub fn rule_one_vertex(state: &mut KernelState) -> Result<KernelOutcome> {
    let g = &state.graph;
    let occs = enumerate_obstruction_occurrences(g, state.cap)?;
    let mut u = VertexSet::new(g.n());
    for occ in &occs {
        let inter = occ.vertices.intersection(&state.t_set);
        if inter.len() == 1 {
            u.insert(inter.iter().next().unwrap());
        }
    }
    if u.is_empty() {
        return Ok(KernelOutcome::Unchanged);
    }
    if u.len() > state.k {
        return Ok(KernelOutcome::No);
    }
    state.k -= u.len();
    state.delete(&u);
    state.trace.push("one_vertex".into());
    Ok(KernelOutcome::Reduced(state.graph.clone(), state.k))
}

/// The thread blocks of each component of g minus T, in host-graph ids:
/// (component, anchors, blocks). Singleton components yield no blocks.
fn residual_blocks(state: &KernelState) -> Result<Vec<(VertexSet, Vec<usize>, Vec<ThreadBlock>)>> {
    let g = &state.graph;
    let (h, keep) = g.induced_subgraph(&state.t_set.complement());
    let mut out = Vec::new();
    for comp in h.connected_components() {
        let gids = VertexSet::from_iter(g.n(), comp.iter().map(|v| keep[v]));
        if comp.len() < 2 {
            out.push((gids, vec![], vec![]));
            continue;
        }
        let (sub, subkeep) = h.induced_subgraph(&comp);
        let d = canonical_thread_decomposition(&sub, false)?;
        let anchors = d.anchors.iter().map(|&a| keep[subkeep[a]]).collect();
        let blocks = d
            .blocks
            .iter()
            .map(|b| ThreadBlock {
                order: b.order.iter().map(|&v| keep[subkeep[v]]).collect(),
                labels: b.labels.clone(),
            })
            .collect();
        out.push((gids, anchors, blocks));
    }
    Ok(out)
}

/// Takes the first `want` vertices of `it` that satisfy `pred` into `z`.
fn mark<I: Iterator<Item = usize>>(
    z: &mut HashSet<usize>,
    it: I,
    want: usize,
    mut pred: impl FnMut(usize) -> bool,
) {
    let mut got = 0;
    for v in it {
        if got == want {
            break;
        }
        if pred(v) {
            z.insert(v);
            got += 1;
        }
    }
}

/// Searches g minus T for a thread block of at least threshold size and
/// returns an unmarked interior vertex of it. The marking keeps, per
/// T-vertex and per T-pair and globally, the first/last k+2 vertices that
/// could replace the returned vertex on any long induced cycle, which is
/// what makes the survivor irrelevant.
pub fn find_irrelevant_in_big_block(state: &KernelState) -> Result<Option<usize>> {
    let g = &state.graph;
    let k2 = state.k + 2;
    let t: Vec<usize> = state.t_set.iter().collect();
    for (_, _, blocks) in residual_blocks(state)? {
        for b in &blocks {
            if !at_least(b.order.len(), &state.thresholds.block_size) {
                continue;
            }
            let inner = &b.order[1..b.order.len() - 1];
            let lab = |v: usize| b.label_of(v).unwrap();
            let mut z: HashSet<usize> = HashSet::new();
            for &v in &t {
                mark(&mut z, inner.iter().copied(), k2, |u| {
                    lab(u).has_r() && g.has_edge(u, v)
                });
                mark(&mut z, inner.iter().rev().copied(), k2, |u| {
                    lab(u).has_l() && g.has_edge(u, v)
                });
            }
            for (a, &v) in t.iter().enumerate() {
                for &v2 in &t[a + 1..] {
                    mark(&mut z, b.order.iter().copied(), k2, |u| {
                        g.has_edge(u, v) && g.has_edge(u, v2)
                    });
                }
            }
            mark(&mut z, inner.iter().copied(), k2, |u| lab(u).has_r());
            mark(&mut z, inner.iter().rev().copied(), k2, |u| lab(u).has_l());
            if let Some(&w) = inner.iter().find(|u| !z.contains(u)) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// When a component of g minus T is a chain of many thread blocks, at
/// least nine consecutive blocks have no neighbor of T; the middle one is
/// replaced by a single vertex joined to the outside neighborhoods of its
/// two anchors. Long induced cycles survive the contraction in both
/// directions, so the instance is equivalent.
pub fn contract_long_component(state: &mut KernelState) -> Result<KernelOutcome> {
    let g = &state.graph;
    let t: Vec<usize> = state.t_set.iter().collect();
    for (_, _, blocks) in residual_blocks(state)? {
        if !at_least(blocks.len(), &state.thresholds.component_blocks) {
            continue;
        }
        let marked: Vec<bool> = blocks
            .iter()
            .map(|b| b.order.iter().any(|&u| t.iter().any(|&v| g.has_edge(u, v))))
            .collect();
        for &v in &t {
            let touched = blocks
                .iter()
                .filter(|b| b.order.iter().any(|&u| g.has_edge(u, v)))
                .count();
            if touched >= 7 {
                return Err(Error::Internal(format!(
                    "modulator vertex {v} touches {touched} blocks of one chain; \
                     the one-vertex rule should have removed it"
                )));
            }
        }
        // First run of >= 9 consecutive unmarked blocks.
        let mut run = 0;
        let mut start = None;
        for (i, &m) in marked.iter().enumerate() {
            run = if m { 0 } else { run + 1 };
            if run == 9 {
                start = Some(i + 1 - 9);
                break;
            }
        }
        let Some(s) = start else {
            continue;
        };
        let victim = &blocks[s + 4];
        let (x, y) = (victim.first(), victim.last());
        let dead = VertexSet::from_iter(g.n(), victim.order.iter().copied());
        let fringe: Vec<usize> = g
            .neighbors(x)
            .union(g.neighbors(y))
            .difference(&dead)
            .iter()
            .collect();
        // Rebuild with the new vertex appended, then drop the block.
        let mut edges = g.edges();
        let z = g.n();
        for u in fringe {
            edges.push((z, u));
        }
        let mut bigger = Graph::from_edges(z + 1, &edges);
        if let Some(names) = g.names() {
            let mut names = names.to_vec();
            names.push(fresh_name(&names));
            bigger.set_names(names);
        }
        let mut dead_in_bigger = VertexSet::new(z + 1);
        for v in dead.iter() {
            dead_in_bigger.insert(v);
        }
        state.graph = bigger;
        state.delete(&dead_in_bigger);
        state.trace.push("contract_long_component".into());
        return Ok(KernelOutcome::Reduced(state.graph.clone(), state.k));
    }
    Ok(KernelOutcome::Unchanged)
}

fn fresh_name(names: &[String]) -> String {
    let mut i = names.len();
    loop {
        let cand = format!("z{i}");
        if !names.iter().any(|n| *n == cand) {
            return cand;
        }
        i += 1;
    }
}

/// Beyond the isolated-vertex threshold, marks k+2 common neighbors per
/// T-pair among the isolated vertices of g minus T and returns an
/// unmarked one (irrelevant: any long cycle through it can be rerouted
/// through a marked twin). Also asserts the diagnostic bound on the
/// number of nontrivial components.
pub fn rule_component_counts(state: &KernelState) -> Result<Option<usize>> {
    let g = &state.graph;
    let (h, keep) = g.induced_subgraph(&state.t_set.complement());
    let mut isolated = Vec::new();
    let mut nontrivial = 0usize;
    for comp in h.connected_components() {
        if comp.len() == 1 {
            isolated.push(keep[comp.iter().next().unwrap()]);
        } else {
            nontrivial += 1;
        }
    }
    if BigUint::from(nontrivial) > state.thresholds.components {
        return Err(Error::Internal(format!(
            "{nontrivial} nontrivial residual components exceed the rule bound"
        )));
    }
    if !at_least(isolated.len(), &state.thresholds.isolated) {
        return Ok(None);
    }
    let t: Vec<usize> = state.t_set.iter().collect();
    let mut z: HashSet<usize> = HashSet::new();
    for (a, &v) in t.iter().enumerate() {
        for &v2 in &t[a + 1..] {
            mark(&mut z, isolated.iter().copied(), state.k + 2, |u| {
                g.has_edge(u, v) && g.has_edge(u, v2)
            });
        }
    }
    Ok(isolated.into_iter().find(|u| !z.contains(u)))
}

/// Runs the full pipeline to a fixpoint: Rule 1, recompute T, Rule 2,
/// then one structural reduction per iteration (big-block irrelevant
/// vertex, chain contraction, or isolated-vertex rule). Every productive
/// iteration strictly shrinks the graph or the budget.
pub fn kernelize(g: &Graph, k: usize, thresholds: Thresholds) -> Result<KernelOutcome> {
    Ok(kernelize_with_trace(g, k, thresholds, 1_000_000)?.0)
}

/// As [`kernelize`], also returning the applied-rule trace and honoring a
/// custom occurrence-enumeration cap.
pub fn kernelize_with_trace(
    g: &Graph,
    k: usize,
    thresholds: Thresholds,
    cap: usize,
) -> Result<(KernelOutcome, Vec<String>)> {
    let mut state = KernelState::new(g.clone(), k, thresholds);
    state.cap = cap;
    let mut changed = false;
    loop {
        if !rule_remove_thread_components(&mut state).is_unchanged() {
            changed = true;
        }
        if state.graph.n() == 0 {
            break;
        }
        if compute_t(&mut state)?.is_none() {
            return Ok((KernelOutcome::No, state.trace));
        }
        match rule_one_vertex(&mut state)? {
            KernelOutcome::No => return Ok((KernelOutcome::No, state.trace)),
            KernelOutcome::Reduced(..) => {
                changed = true;
                continue;
            }
            KernelOutcome::Unchanged => {}
        }
        if let Some(w) = find_irrelevant_in_big_block(&state)? {
            state.delete(&VertexSet::from_iter(state.graph.n(), [w]));
            state.trace.push("irrelevant_in_big_block".into());
            changed = true;
            continue;
        }
        match contract_long_component(&mut state)? {
            KernelOutcome::Reduced(..) => {
                changed = true;
                continue;
            }
            KernelOutcome::No => return Ok((KernelOutcome::No, state.trace)),
            KernelOutcome::Unchanged => {}
        }
        if let Some(w) = rule_component_counts(&state)? {
            state.delete(&VertexSet::from_iter(state.graph.n(), [w]));
            state.trace.push("component_counts".into());
            changed = true;
            continue;
        }
        break;
    }
    let outcome = if changed {
        KernelOutcome::Reduced(state.graph, state.k)
    } else {
        KernelOutcome::Unchanged
    };
    Ok((outcome, state.trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::{gem, house};
    use crate::solver::{decide, Instance};
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn yes(g: &Graph, k: usize) -> bool {
        decide(&Instance::new(g.clone(), k)).0
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0), BigUint::from(322_560u32));
        assert_eq!(mu(1), BigUint::from(82_575_361u64));
        for k in 0..6 {
            assert!(mu(k + 1) > mu(k));
        }
    }

    #[test]
    fn paper_thresholds_never_fire_at_desk_scale() {
        for k in 0..4 {
            let t = Thresholds::paper(k);
            let desk = BigUint::from(322_560u32);
            assert!(t.block_size > desk);
            assert!(t.component_blocks > desk);
            assert!(t.isolated > desk);
        }
    }

    /// Brute-force the minimal hitting sets of size <= k.
    fn minimal_hitting_sets(f: &SetFamily, k: usize) -> Vec<Vec<usize>> {
        let n = f.universe;
        assert!(n <= 16);
        let hits = |mask: u32| {
            f.sets.iter().all(|s| s.iter().any(|v| mask >> v & 1 == 1))
        };
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            if (mask.count_ones() as usize) > k || !hits(mask) {
                continue;
            }
            let minimal = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .all(|v| !hits(mask & !(1 << v)));
            if minimal {
                out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn sunflower_examples() {
        // Small family under every bound: unchanged.
        let f = SetFamily::new(
            6,
            vec![VertexSet::from_iter(6, [0, 1]), VertexSet::from_iter(6, [2, 3])],
        );
        assert_eq!(sunflower_compress(&f, 1, 2).len(), 2);

        // k+2 = 3 petals around the core {0}: one petal dropped, the
        // size-<=1 minimal hitting set {0} preserved.
        let f = SetFamily::new(
            4,
            vec![
                VertexSet::from_iter(4, [0, 1]),
                VertexSet::from_iter(4, [0, 2]),
                VertexSet::from_iter(4, [0, 3]),
            ],
        );
        let c = sunflower_compress(&f, 1, 2);
        assert_eq!(c.len(), 2);
        assert_eq!(minimal_hitting_sets(&f, 1), minimal_hitting_sets(&c, 1));
    }

    #[test]
    fn sunflower_preserves_minimal_hitting_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(131);
        for _ in 0..120 {
            let n = rng.gen_range(4..=10);
            let k = rng.gen_range(1..=3usize);
            let d = rng.gen_range(2..=4usize);
            let sets: Vec<VertexSet> = (0..rng.gen_range(1..=40))
                .map(|_| {
                    let size = rng.gen_range(1..=d);
                    let mut s = VertexSet::new(n);
                    while s.len() < size {
                        s.insert(rng.gen_range(0..n));
                    }
                    s
                })
                .collect();
            let f = SetFamily::new(n, sets);
            let c = sunflower_compress(&f, k, d);
            assert!(BigUint::from(c.len()) <= hitting_bound(k, d));
            assert_eq!(minimal_hitting_sets(&f, k), minimal_hitting_sets(&c, k));
        }
    }

    #[test]
    fn compute_t_examples() {
        // Single necklace: no small obstructions, T is the break vertex.
        let mut st = KernelState::new(Graph::cycle(9), 1, Thresholds::test());
        let t = compute_t(&mut st).unwrap().unwrap();
        assert_eq!(t.len(), 1);
        assert!(is_thread_graph(&st.graph.delete_vertices(&t).0));

        // Two gems: both covered by the compressed family, Y empty.
        let mut st = KernelState::new(gem().disjoint_union(&gem()), 1, Thresholds::test());
        let t = compute_t(&mut st).unwrap().unwrap();
        assert_eq!(t.len(), 10);

        // Two long cycles need two deletions: No at k=1.
        let g = Graph::cycle(9).disjoint_union(&Graph::cycle(9));
        let mut st = KernelState::new(g, 1, Thresholds::test());
        assert!(compute_t(&mut st).unwrap().is_none());
    }

    #[test]
    fn t_leaves_a_thread_graph() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(137);
        let mut done = 0;
        while done < 40 {
            let n = rng.gen_range(5..=12);
            let g = random_graph(n, rng.gen_range(0.15..0.5), &mut rng);
            let k = rng.gen_range(1..=3usize);
            let mut st = KernelState::new(g.clone(), k, Thresholds::test());
            if let Some(t) = compute_t(&mut st).unwrap() {
                assert!(is_thread_graph(&g.delete_vertices(&t).0));
                done += 1;
            }
        }
    }

    #[test]
    fn rule_one_vertex_examples() {
        // House with T forced to one of its vertices: that vertex is the
        // sole T-intersection of the house occurrence, so it goes.
        let mut st = KernelState::new(house(), 1, Thresholds::test());
        st.t_set = VertexSet::from_iter(5, [4]);
        match rule_one_vertex(&mut st).unwrap() {
            KernelOutcome::Reduced(g, k) => {
                assert_eq!(g.n(), 4);
                assert_eq!(k, 0);
            }
            other => panic!("{other:?}"),
        }

        // Two disjoint houses, each meeting T once, k=1: |U| = 2 > k.
        let g = house().disjoint_union(&house());
        let mut st = KernelState::new(g, 1, Thresholds::test());
        st.t_set = VertexSet::from_iter(10, [4, 9]);
        assert!(matches!(rule_one_vertex(&mut st).unwrap(), KernelOutcome::No));

        // T covering every occurrence twice: unchanged.
        let mut st = KernelState::new(house(), 1, Thresholds::test());
        st.t_set = VertexSet::from_iter(5, [3, 4]);
        assert!(matches!(rule_one_vertex(&mut st).unwrap(), KernelOutcome::Unchanged));
    }

    #[test]
    fn big_block_rule_fires_in_test_mode() {
        // A clique block (every interior vertex {LR}), T empty: the
        // first/last k+2 interior vertices are marked, the middle two are
        // not.
        let g = Graph::complete(10);
        let mut st = KernelState::new(g.clone(), 1, Thresholds::test());
        st.t_set = VertexSet::new(10);
        let w = find_irrelevant_in_big_block(&st).unwrap().unwrap();
        let d = canonical_thread_decomposition(&g, false).unwrap();
        assert!(!d.anchors.contains(&w), "anchors are never irrelevant");
        let (g2, _) = g.delete_vertex(w);
        assert_eq!(yes(&g, 1), yes(&g2, 1));

        // All blocks small: absent.
        st.graph = Graph::path(5);
        st.t_set = VertexSet::new(5);
        assert!(find_irrelevant_in_big_block(&st).unwrap().is_none());
    }

    #[test]
    fn contraction_fires_in_test_mode() {
        // A 14-block chain of K_2 blocks is a 15-vertex path.
        let g = Graph::path(15);
        let mut st = KernelState::new(g.clone(), 1, Thresholds::test());
        st.t_set = VertexSet::new(15);
        match contract_long_component(&mut st).unwrap() {
            KernelOutcome::Reduced(g2, k) => {
                assert_eq!(k, 1);
                assert_eq!(g2.n(), 14);
                assert!(is_thread_graph(&g2));
                assert_eq!(yes(&g, 1), yes(&g2, 1));
            }
            other => panic!("{other:?}"),
        }

        // Below threshold: unchanged.
        let mut st = KernelState::new(Graph::path(8), 1, Thresholds::test());
        assert!(matches!(contract_long_component(&mut st).unwrap(), KernelOutcome::Unchanged));
    }

    #[test]
    fn isolated_vertex_rule_fires_in_test_mode() {
        // t1, t2 with five common neighbors that are isolated in g minus T.
        let mut g = Graph::new(7);
        for u in 2..7 {
            g.add_edge(0, u);
            g.add_edge(1, u);
        }
        let mut st = KernelState::new(g.clone(), 1, Thresholds::test());
        st.t_set = VertexSet::from_iter(7, [0, 1]);
        let w = rule_component_counts(&st).unwrap().unwrap();
        assert!(!st.t_set.contains(w));
        let (g2, _) = g.delete_vertex(w);
        assert_eq!(yes(&g, 1), yes(&g2, 1));

        // Few isolated vertices: unchanged.
        let st = KernelState::new(Graph::path(4), 1, Thresholds::test());
        assert!(rule_component_counts(&st).unwrap().is_none());
    }

    #[test]
    fn kernelize_examples() {
        match kernelize(&Graph::path(9), 2, Thresholds::test()).unwrap() {
            KernelOutcome::Reduced(g, k) => {
                assert_eq!(g.n(), 0);
                assert_eq!(k, 2);
            }
            other => panic!("{other:?}"),
        }
        let g = Graph::cycle(9).disjoint_union(&Graph::cycle(9));
        assert!(matches!(kernelize(&g, 1, Thresholds::test()).unwrap(), KernelOutcome::No));
    }

    #[test]
    fn kernelize_preserves_answers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(139);
        for round in 0..80 {
            let n = rng.gen_range(5..=13);
            let g = random_graph(n, rng.gen_range(0.1..0.5), &mut rng);
            let k = rng.gen_range(0..=3usize);
            let truth = yes(&g, k);
            match kernelize(&g, k, Thresholds::test()).unwrap() {
                KernelOutcome::No => assert!(!truth, "round {round}"),
                KernelOutcome::Reduced(g2, k2) => {
                    assert!(k2 <= k);
                    assert_eq!(truth, yes(&g2, k2), "round {round}");
                }
                KernelOutcome::Unchanged => {}
            }
        }
    }
}
