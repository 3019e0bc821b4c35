//! Fixed small corpora of digraphs and graphs used by the suites and checks.

use crate::constructions::*;
use crate::digraph::{Digraph, UGraph};
use crate::error::Result;
use crate::zeta::CorpusItem;

#[derive(Debug, Clone)]
pub struct DigraphEntry {
    pub name: String,
    pub digraph: Digraph,
    /// Known normality class: 1 for normal digraphs, 2 for line digraphs.
    pub r: Option<u64>,
}

fn entry(name: &str, digraph: Digraph, r: Option<u64>) -> DigraphEntry {
    DigraphEntry {
        name: name.to_string(),
        digraph,
        r,
    }
}

/// Line-digraph bases: simple connected regular graphs of degree at least 3.
pub fn line_bases() -> Result<Vec<(String, UGraph)>> {
    Ok(vec![
        ("K4".into(), complete_graph(4)?),
        ("K5".into(), complete_graph(5)?),
        ("petersen".into(), petersen()),
        ("K33".into(), complete_bipartite(3)?),
        ("cube3".into(), hypercube(3)?),
        ("prism8".into(), prism(8)?),
    ])
}

/// Dense-size digraphs: normal families, De Bruijn digraphs, line digraphs
/// and a few permutation-model samples.
pub fn digraph_corpus() -> Result<Vec<DigraphEntry>> {
    let mut v = vec![
        entry("paley(3)", paley_digraph(3)?, Some(1)),
        entry("paley(7)", paley_digraph(7)?, Some(1)),
        entry("paley(11)", paley_digraph(11)?, Some(1)),
        entry("paley(19)", paley_digraph(19)?, Some(1)),
        entry("paley(23)", paley_digraph(23)?, Some(1)),
        entry("paley(31)", paley_digraph(31)?, Some(1)),
        entry("incidence(2,2)", projective_incidence(2, 2)?, Some(1)),
        entry("incidence(3,2)", projective_incidence(3, 2)?, Some(1)),
        entry("incidence(2,3)", projective_incidence(2, 3)?, Some(1)),
        entry("complete(2,1)", complete_digraph(2, 1)?, Some(1)),
        entry("complete(2,3)", complete_digraph(2, 3)?, Some(1)),
        entry("complete(3,2)", complete_digraph(3, 2)?, Some(1)),
        entry("de_bruijn(2,3)", de_bruijn(2, 3)?, None),
        entry("de_bruijn(3,2)", de_bruijn(3, 2)?, None),
        entry("de_bruijn(2,4)", de_bruijn(2, 4)?, None),
    ];
    for (name, g) in line_bases()? {
        v.push(entry(&format!("line({name})"), line_digraph(&g)?.0, Some(2)));
    }
    for (n, k, seed) in [(30, 2, 1), (40, 3, 2), (60, 4, 3)] {
        let d = random_regular_digraph(n, k, seed)?;
        if d.strongly_connected() {
            v.push(entry(&format!("random({n},{k},{seed})"), d, None));
        }
    }
    Ok(v)
}

/// Regular graphs for the undirected checks; includes a cycle (degree 2)
/// and non-Ramanujan instances.
pub fn graph_corpus() -> Result<Vec<(String, UGraph)>> {
    let mut v = line_bases()?;
    v.extend([
        ("C10".into(), cycle_graph(10)?),
        ("prism16".into(), prism(16)?),
        ("cube4".into(), hypercube(4)?),
        ("K44".into(), complete_bipartite(4)?),
        ("random(20,3,1)".into(), random_regular_graph(20, 3, 1)?),
    ]);
    Ok(v)
}

/// Both corpora as zeta-suite items.
pub fn zeta_corpus() -> Result<Vec<CorpusItem>> {
    let mut items: Vec<CorpusItem> = digraph_corpus()?
        .into_iter()
        .map(|e| CorpusItem::Digraph(e.name, e.digraph))
        .collect();
    items.extend(graph_corpus()?.into_iter().map(|(n, g)| CorpusItem::Graph(n, g)));
    Ok(items)
}
