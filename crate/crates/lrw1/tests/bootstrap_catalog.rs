//! Regenerates the embedded obstruction catalog data file from the oracle.
//! Run explicitly with `cargo test -p lrw1 --test bootstrap_catalog -- --ignored`
//! and rebuild; the result is committed as data/obstruction_catalog.json.

use lrw1::graph::{Graph, GraphData};
use lrw1::obstructions::{alpha_family, beta_family, domino, gem, house, CatalogFileEntry};
use lrw1::oracle;
use std::collections::HashMap;

#[test]
#[ignore]
fn regenerate_catalog() {
    let start = std::time::Instant::now();
    let derived = oracle::derive_obstruction_catalog().unwrap();
    eprintln!("derived {} obstructions in {:?}", derived.len(), start.elapsed());
    assert_eq!(derived.len(), 21);

    let forms: Vec<Vec<u8>> = derived.iter().map(|g| g.canonical_form_small().unwrap()).collect();
    let mut names: HashMap<Vec<u8>, String> = HashMap::new();
    let mut put = |g: &Graph, name: String| {
        let f = g.canonical_form_small().unwrap();
        if forms.contains(&f) {
            names.entry(f).or_insert(name);
        }
    };
    put(&house(), "house".into());
    put(&gem(), "gem".into());
    put(&domino(), "domino".into());
    for h in 5..=8 {
        put(&Graph::cycle(h), format!("c{h}"));
    }
    // Alpha annotations: catalog members realizable in the 6-vertex family,
    // numbered by catalog order.
    let mut alpha_forms: Vec<Vec<u8>> = alpha_family()
        .iter()
        .map(|g| g.canonical_form_small().unwrap())
        .filter(|f| forms.contains(f))
        .collect();
    alpha_forms.sort_by_key(|f| forms.iter().position(|x| x == f).unwrap());
    alpha_forms.dedup();
    for (i, f) in alpha_forms.iter().enumerate() {
        names.entry(f.clone()).or_insert(format!("alpha_{}", i + 1));
    }
    // Beta annotations: the 7-vertex spiders, numbered by how many leg tips
    // see the center.
    for (t, g) in beta_family().iter().enumerate() {
        let f = g.canonical_form_small().unwrap();
        if forms.contains(&f) {
            names.entry(f).or_insert(format!("beta_{}", t + 1));
        }
    }

    let entries: Vec<CatalogFileEntry> = derived
        .iter()
        .enumerate()
        .map(|(id, g)| CatalogFileEntry {
            id,
            name: names.get(&forms[id]).cloned(),
            graph: GraphData::from(g),
        })
        .collect();
    let named = entries.iter().filter(|e| e.name.is_some()).count();
    eprintln!("annotated {named} of {} members", entries.len());

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/obstruction_catalog.json");
    let json = serde_json::to_string_pretty(&entries).unwrap();
    std::fs::write(path, json + "\n").unwrap();
    eprintln!("wrote {path}");
}
