//! k-expressions (bounded cliquewidth): parsing, evaluation, an
//! induced-subgraph dynamic program over the expression tree, vertex
//! deletion inside expressions, and a branching solver that finds
//! obstructions through the expression instead of the raw graph.

use crate::graph::{Graph, VertexSet};
use crate::necklace::min_deletion_obn_free;
use crate::obstructions::{catalog, ObstructionHit};
use crate::solver::Solution;
use crate::{Error, Result};
use std::collections::HashMap;

/// An algebraic expression building a labeled graph: vertex creation,
/// disjoint union, complete join between two label classes, and label
/// renaming. Labels are positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KExpression {
    Intro { label: usize, name: String },
    Union(Box<KExpression>, Box<KExpression>),
    Join { i: usize, j: usize, arg: Box<KExpression> },
    Rename { i: usize, j: usize, arg: Box<KExpression> },
}

impl KExpression {
    /// Number of vertices the expression introduces.
    pub fn n(&self) -> usize {
        match self {
            KExpression::Intro { .. } => 1,
            KExpression::Union(a, b) => a.n() + b.n(),
            KExpression::Join { arg, .. } | KExpression::Rename { arg, .. } => arg.n(),
        }
    }

    /// Vertex names in introduction order (the vertex ids of the
    /// evaluated graph).
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            KExpression::Intro { name, .. } => out.push(name.clone()),
            KExpression::Union(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            KExpression::Join { arg, .. } | KExpression::Rename { arg, .. } => {
                arg.collect_names(out)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    Comma,
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut it = text.chars().peekable();
        while let Some(&c) = it.peek() {
            let (l, co) = (line, col);
            let bump = |ch: char, line: &mut usize, col: &mut usize| {
                if ch == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            };
            match c {
                '#' => {
                    while let Some(&ch) = it.peek() {
                        it.next();
                        bump(ch, &mut line, &mut col);
                        if ch == '\n' {
                            break;
                        }
                    }
                }
                c if c.is_whitespace() => {
                    it.next();
                    bump(c, &mut line, &mut col);
                }
                '(' | ')' | ',' => {
                    it.next();
                    bump(c, &mut line, &mut col);
                    let t = match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        _ => Tok::Comma,
                    };
                    toks.push((t, l, co));
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&ch) = it.peek() {
                        if !ch.is_ascii_digit() {
                            break;
                        }
                        s.push(ch);
                        it.next();
                        bump(ch, &mut line, &mut col);
                    }
                    let v = s.parse().map_err(|_| Error::Parse {
                        line: l,
                        col: co,
                        msg: format!("number `{s}` out of range"),
                    })?;
                    toks.push((Tok::Num(v), l, co));
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&ch) = it.peek() {
                        if !(ch.is_alphanumeric() || ch == '_') {
                            break;
                        }
                        s.push(ch);
                        it.next();
                        bump(ch, &mut line, &mut col);
                    }
                    toks.push((Tok::Ident(s), l, co));
                }
                c => {
                    return Err(Error::Parse {
                        line: l,
                        col: co,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        }
        toks.push((Tok::Eof, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (t, l, c) = self.next();
        if t == want {
            Ok(())
        } else {
            self.err(l, c, format!("expected {what}, found {t:?}"))
        }
    }

    fn label(&mut self) -> Result<usize> {
        let (t, l, c) = self.next();
        match t {
            Tok::Num(v) if v >= 1 => Ok(v),
            Tok::Num(v) => self.err(l, c, format!("label {v} out of range, labels start at 1")),
            other => self.err(l, c, format!("expected a label, found {other:?}")),
        }
    }
}

/// Parses the functional-prefix grammar `add(i,NAME)` | `un(E,E)` |
/// `join(i,j,E)` | `ren(i,j,E)`. Whitespace is insignificant and `#`
/// starts a comment running to the end of the line. Duplicate vertex
/// names, zero labels, and `join(i,i)` are rejected with positions.
pub fn parse_kexpression(text: &str) -> Result<KExpression> {
    let mut lx = Lexer::new(text)?;
    let mut names = HashMap::new();
    let e = parse_expr(&mut lx, &mut names)?;
    let (t, l, c) = lx.next();
    if t != Tok::Eof {
        return lx.err(l, c, format!("trailing input after expression: {t:?}"));
    }
    Ok(e)
}

fn parse_expr(lx: &mut Lexer, names: &mut HashMap<String, (usize, usize)>) -> Result<KExpression> {
    let (t, l, c) = lx.next();
    let head = match t {
        Tok::Ident(s) => s,
        other => return lx.err(l, c, format!("expected an operation, found {other:?}")),
    };
    lx.expect(Tok::LParen, "`(`")?;
    let e = match head.as_str() {
        "add" => {
            let label = lx.label()?;
            lx.expect(Tok::Comma, "`,`")?;
            let (t, nl, nc) = lx.next();
            let name = match t {
                Tok::Ident(s) => s,
                Tok::Num(v) => v.to_string(),
                other => return lx.err(nl, nc, format!("expected a vertex name, found {other:?}")),
            };
            if let Some(&(pl, pc)) = names.get(&name) {
                return lx.err(
                    nl,
                    nc,
                    format!("vertex name `{name}` already introduced at {pl}:{pc}"),
                );
            }
            names.insert(name.clone(), (nl, nc));
            KExpression::Intro { label, name }
        }
        "un" => {
            let a = parse_expr(lx, names)?;
            lx.expect(Tok::Comma, "`,`")?;
            let b = parse_expr(lx, names)?;
            KExpression::Union(Box::new(a), Box::new(b))
        }
        "join" | "ren" => {
            let i = lx.label()?;
            lx.expect(Tok::Comma, "`,`")?;
            let j = lx.label()?;
            if i == j {
                return lx.err(l, c, format!("{head}({i},{j}) needs two distinct labels"));
            }
            lx.expect(Tok::Comma, "`,`")?;
            let arg = Box::new(parse_expr(lx, names)?);
            if head == "join" {
                KExpression::Join { i, j, arg }
            } else {
                KExpression::Rename { i, j, arg }
            }
        }
        other => return lx.err(l, c, format!("unknown operation `{other}`")),
    };
    lx.expect(Tok::RParen, "`)`")?;
    Ok(e)
}

/// Renders an expression back into the grammar accepted by
/// [`parse_kexpression`].
pub fn format_kexpression(e: &KExpression) -> String {
    match e {
        KExpression::Intro { label, name } => format!("add({label},{name})"),
        KExpression::Union(a, b) => {
            format!("un({},{})", format_kexpression(a), format_kexpression(b))
        }
        KExpression::Join { i, j, arg } => format!("join({i},{j},{})", format_kexpression(arg)),
        KExpression::Rename { i, j, arg } => format!("ren({i},{j},{})", format_kexpression(arg)),
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluates the expression into a graph (vertex ids in introduction
/// order, names attached) plus the final label of each vertex.
pub fn eval_kexpression(e: &KExpression) -> (Graph, Vec<usize>) {
    let mut names = Vec::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    eval_rec(e, &mut names, &mut labels, &mut edges);
    let mut g = Graph::from_edges(names.len(), &edges);
    g.set_names(names);
    (g, labels)
}

/// Appends this subexpression's vertices to the accumulators and returns
/// the ids it owns.
fn eval_rec(
    e: &KExpression,
    names: &mut Vec<String>,
    labels: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
) -> Vec<usize> {
    match e {
        KExpression::Intro { label, name } => {
            names.push(name.clone());
            labels.push(*label);
            vec![names.len() - 1]
        }
        KExpression::Union(a, b) => {
            let mut own = eval_rec(a, names, labels, edges);
            own.extend(eval_rec(b, names, labels, edges));
            own
        }
        KExpression::Join { i, j, arg } => {
            let own = eval_rec(arg, names, labels, edges);
            for &u in &own {
                for &v in &own {
                    if labels[u] == *i && labels[v] == *j {
                        edges.push((u, v));
                    }
                }
            }
            own
        }
        KExpression::Rename { i, j, arg } => {
            let own = eval_rec(arg, names, labels, edges);
            for &u in &own {
                if labels[u] == *i {
                    labels[u] = *j;
                }
            }
            own
        }
    }
}

// ---------------------------------------------------------------------------
// Induced-subgraph dynamic program
// ---------------------------------------------------------------------------

/// A DP state: `a[x]` is the label class hosting pattern vertex x (0 =
/// not mapped yet), and bit y of `b` is set iff both endpoints of pattern
/// pair y are mapped AND their images are adjacent in the current graph.
/// Tracking all pairs (not just pattern edges) is what makes the final
/// answer an induced copy: acceptance requires `b` to equal the pattern's
/// edge indicator exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    a: [u16; 8],
    b: u32,
}

/// Where a state came from, for witness recovery.
#[derive(Debug, Clone, Copy)]
enum Prov {
    Seed,
    Pair(State, State),
    Child(State),
}

struct Dp {
    h: usize,
    pairs: Vec<(usize, usize)>,
    edge_mask: u32,
}

type Table = HashMap<State, Prov>;

impl Dp {
    fn run(&self, e: &KExpression, next_vertex: &mut usize, tables: &mut Vec<(Table, usize)>) -> usize {
        let table = match e {
            KExpression::Intro { label, .. } => {
                let host = *next_vertex;
                *next_vertex += 1;
                let mut t = Table::new();
                t.insert(State { a: [0; 8], b: 0 }, Prov::Seed);
                if let Ok(l) = u16::try_from(*label) {
                    for x in 0..self.h {
                        let mut a = [0u16; 8];
                        a[x] = l;
                        t.insert(State { a, b: 0 }, Prov::Seed);
                    }
                }
                tables.push((t, host));
                return tables.len() - 1;
            }
            KExpression::Union(l, r) => {
                let ti = self.run(l, next_vertex, tables);
                let tj = self.run(r, next_vertex, tables);
                let mut t = Table::new();
                for (s1, _) in tables[ti].0.clone() {
                    for (s2, _) in &tables[tj].0 {
                        if s1.b & s2.b != 0 {
                            continue;
                        }
                        if (0..self.h).any(|x| s1.a[x] != 0 && s2.a[x] != 0) {
                            continue;
                        }
                        let mut a = s1.a;
                        for x in 0..self.h {
                            a[x] |= s2.a[x];
                        }
                        t.entry(State { a, b: s1.b | s2.b }).or_insert(Prov::Pair(s1, *s2));
                    }
                }
                t
            }
            KExpression::Join { i, j, arg } => {
                let tc = self.run(arg, next_vertex, tables);
                let (i, j) = (*i as u16, *j as u16);
                let mut t = Table::new();
                'state: for (s, _) in tables[tc].0.clone() {
                    let mut b = s.b;
                    for (y, &(x1, x2)) in self.pairs.iter().enumerate() {
                        let (l1, l2) = (s.a[x1], s.a[x2]);
                        if (l1 == i && l2 == j) || (l1 == j && l2 == i) {
                            if self.edge_mask >> y & 1 == 0 {
                                // The join creates an edge on a pattern
                                // non-edge; no induced copy can use this
                                // partial mapping any more.
                                continue 'state;
                            }
                            b |= 1 << y;
                        }
                    }
                    t.entry(State { a: s.a, b }).or_insert(Prov::Child(s));
                }
                t
            }
            KExpression::Rename { i, j, arg } => {
                let tc = self.run(arg, next_vertex, tables);
                let (i, j) = (*i as u16, *j as u16);
                let mut t = Table::new();
                for (s, _) in tables[tc].0.clone() {
                    let mut a = s.a;
                    for x in a.iter_mut() {
                        if *x == i {
                            *x = j;
                        }
                    }
                    t.entry(State { a, b: s.b }).or_insert(Prov::Child(s));
                }
                t
            }
        };
        tables.push((table, usize::MAX));
        tables.len() - 1
    }

    /// Walks the provenance chain of `s` at expression `e` (table index
    /// `idx`), filling in the pattern-to-host mapping at Intro leaves.
    fn trace(
        &self,
        e: &KExpression,
        tables: &[(Table, usize)],
        idx: usize,
        s: State,
        map: &mut [Option<usize>],
    ) {
        let (table, host) = &tables[idx];
        match e {
            KExpression::Intro { .. } => {
                if let Some(x) = (0..self.h).find(|&x| s.a[x] != 0) {
                    map[x] = Some(*host);
                }
            }
            KExpression::Union(l, r) => {
                let Some(Prov::Pair(s1, s2)) = table.get(&s) else { unreachable!() };
                // Children occupy the two table slots built before this
                // one: left subtree first, then right.
                let right_idx = idx - 1;
                let left_idx = right_idx - subtree_tables(r);
                self.trace(l, tables, left_idx, *s1, map);
                self.trace(r, tables, right_idx, *s2, map);
            }
            KExpression::Join { arg, .. } | KExpression::Rename { arg, .. } => {
                let Some(Prov::Child(sc)) = table.get(&s) else { unreachable!() };
                self.trace(arg, tables, idx - 1, *sc, map);
            }
        }
    }
}

/// Number of DP tables a subtree occupies (one per expression node).
fn subtree_tables(e: &KExpression) -> usize {
    match e {
        KExpression::Intro { .. } => 1,
        KExpression::Union(a, b) => 1 + subtree_tables(a) + subtree_tables(b),
        KExpression::Join { arg, .. } | KExpression::Rename { arg, .. } => 1 + subtree_tables(arg),
    }
}

/// Searches `eval(e)` for an induced copy of `pattern` by dynamic
/// programming over the expression tree, without materializing the graph.
/// Returns the host vertex playing each pattern vertex, or None.
pub fn find_induced_subgraph_cwx(e: &KExpression, pattern: &Graph) -> Result<Option<Vec<usize>>> {
    let h = pattern.n();
    if h > 8 {
        return Err(Error::TooLarge { op: "find_induced_subgraph_cwx", n: h, limit: 8 });
    }
    if h == 0 {
        return Ok(Some(vec![]));
    }
    let mut pairs = Vec::new();
    let mut edge_mask = 0u32;
    for x in 0..h {
        for y in x + 1..h {
            if pattern.has_edge(x, y) {
                edge_mask |= 1 << pairs.len();
            }
            pairs.push((x, y));
        }
    }
    let dp = Dp { h, pairs, edge_mask };
    let mut tables = Vec::new();
    let mut next_vertex = 0usize;
    let root = dp.run(e, &mut next_vertex, &mut tables);
    let accept = tables[root]
        .0
        .keys()
        .find(|s| s.b == dp.edge_mask && (0..h).all(|x| s.a[x] != 0))
        .copied();
    let Some(s) = accept else {
        return Ok(None);
    };
    let mut map = vec![None; h];
    dp.trace(e, &tables, root, s, &mut map);
    Ok(Some(map.into_iter().map(|m| m.expect("accepted state maps every vertex")).collect()))
}

// ---------------------------------------------------------------------------
// Vertex deletion and the expression-driven solver
// ---------------------------------------------------------------------------

/// Removes the Intro leaf for `name` and collapses the Union nodes left
/// degenerate by the removal. None is the empty expression.
pub fn delete_vertex_in_expression(e: &KExpression, name: &str) -> Result<Option<KExpression>> {
    fn rec(e: &KExpression, name: &str) -> Option<Option<KExpression>> {
        // Outer None: name not in this subtree. Inner None: subtree gone.
        match e {
            KExpression::Intro { name: n, .. } => (n == name).then_some(None),
            KExpression::Union(a, b) => {
                if let Some(a2) = rec(a, name) {
                    Some(match a2 {
                        None => Some((**b).clone()),
                        Some(a2) => Some(KExpression::Union(Box::new(a2), b.clone())),
                    })
                } else {
                    rec(b, name).map(|b2| match b2 {
                        None => Some((**a).clone()),
                        Some(b2) => Some(KExpression::Union(a.clone(), Box::new(b2))),
                    })
                }
            }
            KExpression::Join { i, j, arg } => rec(arg, name).map(|a2| {
                a2.map(|a2| KExpression::Join { i: *i, j: *j, arg: Box::new(a2) })
            }),
            KExpression::Rename { i, j, arg } => rec(arg, name).map(|a2| {
                a2.map(|a2| KExpression::Rename { i: *i, j: *j, arg: Box::new(a2) })
            }),
        }
    }
    rec(e, name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
}

/// First catalog occurrence in `eval(e)` found through the expression DP,
/// searching members in catalog order. Vertex ids refer to `eval(e)`.
pub fn find_obstruction_cwx(e: &KExpression) -> Result<Option<ObstructionHit>> {
    let n = e.n();
    for m in catalog().members() {
        if m.graph.n() > n {
            continue;
        }
        if let Some(mapping) = find_induced_subgraph_cwx(e, &m.graph)? {
            return Ok(Some(ObstructionHit {
                catalog_id: m.id,
                vertices: VertexSet::from_iter(n, mapping.iter().copied()),
                mapping,
            }));
        }
    }
    Ok(None)
}

/// Same contract as [`crate::solver::solve_branching`] on `eval(e)`, but
/// every obstruction search runs through the expression, and branching
/// deletes Intro leaves instead of graph vertices. The returned deletion
/// set and trace use the vertex ids of `eval(e)`.
pub fn solve_branching_cwx(e: &KExpression, k: usize) -> Option<Solution> {
    let names = e.names();
    let id_of: HashMap<&str, usize> =
        names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let n = names.len();
    let k = k.min(n);
    let mut best: Option<(Vec<usize>, Vec<(ObstructionHit, usize)>)> = None;
    let mut used = Vec::new();
    let mut trace = Vec::new();
    branch_cwx(&Some(e.clone()), k, &names, &id_of, &mut used, &mut trace, &mut best);
    best.map(|(set, trace)| Solution {
        deletion_set: VertexSet::from_iter(n, set),
        branch_trace: trace,
    })
}

#[allow(clippy::too_many_arguments)]
fn branch_cwx(
    e: &Option<KExpression>,
    k: usize,
    names: &[String],
    id_of: &HashMap<&str, usize>,
    used: &mut Vec<usize>,
    trace: &mut Vec<(ObstructionHit, usize)>,
    best: &mut Option<(Vec<usize>, Vec<(ObstructionHit, usize)>)>,
) {
    let cap = match best {
        Some((set, _)) => k.min(set.len().saturating_sub(1)),
        None => k,
    };
    let Some(allowance) = cap.checked_sub(used.len()) else {
        return;
    };
    let Some(expr) = e else {
        // Everything was deleted; the empty graph is a thread graph.
        *best = Some((used.clone(), trace.clone()));
        return;
    };
    let hit = find_obstruction_cwx(expr).expect("catalog members have at most 8 vertices");
    let cur_names = expr.names();
    let Some(hit) = hit else {
        let (g, _) = eval_kexpression(expr);
        let extra = min_deletion_obn_free(&g).expect("no catalog hit was found");
        if extra.len() <= allowance {
            let mut set = used.clone();
            set.extend(extra.iter().map(|v| id_of[cur_names[v].as_str()]));
            *best = Some((set, trace.clone()));
        }
        return;
    };
    // Remap the hit to the original ids and branch in ascending order.
    let global = ObstructionHit {
        catalog_id: hit.catalog_id,
        vertices: VertexSet::from_iter(
            names.len(),
            hit.vertices.iter().map(|v| id_of[cur_names[v].as_str()]),
        ),
        mapping: hit.mapping.iter().map(|&v| id_of[cur_names[v].as_str()]).collect(),
    };
    for v in global.vertices.iter() {
        let child = delete_vertex_in_expression(expr, &names[v]).expect("name is present");
        used.push(v);
        trace.push((global.clone(), v));
        branch_cwx(&child, k, names, id_of, used, trace, best);
        trace.pop();
        used.pop();
    }
}

// ---------------------------------------------------------------------------
// Bounded-label random expressions for test corpora
// ---------------------------------------------------------------------------

/// Builds a random expression on `n` vertices using labels `1..=max_label`:
/// random Intro leaves combined by Unions, interleaved with random Joins
/// and Renames. Used to exercise the DP and the expression solver.
pub fn random_expression(n: usize, max_label: usize, rng: &mut impl rand::Rng) -> KExpression {
    assert!(n >= 1 && max_label >= 2);
    let mut forest: Vec<KExpression> = (0..n)
        .map(|i| KExpression::Intro {
            label: rng.gen_range(1..=max_label),
            name: format!("v{i}"),
        })
        .collect();
    while forest.len() > 1 {
        let a = forest.swap_remove(rng.gen_range(0..forest.len()));
        let b = forest.swap_remove(rng.gen_range(0..forest.len()));
        let mut e = KExpression::Union(Box::new(a), Box::new(b));
        for _ in 0..rng.gen_range(0..3) {
            let i = rng.gen_range(1..=max_label);
            let mut j = rng.gen_range(1..=max_label - 1);
            if j >= i {
                j += 1;
            }
            e = if rng.gen_bool(0.7) {
                KExpression::Join { i, j, arg: Box::new(e) }
            } else {
                KExpression::Rename { i, j, arg: Box::new(e) }
            };
        }
        forest.push(e);
    }
    forest.pop().unwrap()
}
