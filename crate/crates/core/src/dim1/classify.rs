use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graph::{debruijn_graph, orbit_measure, simple_cycles};
use crate::config::Config;
use crate::error::Result;
use crate::geometry::{vertex_enumeration, VPolytope};
use crate::invariance::build_iloc;
use crate::par;
use crate::patterns::{Alphabet, PatternIndex};
use crate::rational;

/// A vertex of I_n^loc together with the cycle whose orbit measure it equals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPair {
    pub orbit: String,
    pub period: usize,
    /// Nonzero masses keyed by rendered window.
    pub support: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub alphabet: Alphabet,
    pub n: usize,
    pub vertex_count: usize,
    pub orbit_count: usize,
    pub pairs: Vec<VertexPair>,
    /// Vertices that are not orbit measures, as sparse supports.
    pub unmatched_vertices: Vec<BTreeMap<String, String>>,
    /// Cycles whose orbit measure is not a vertex.
    pub unmatched_orbits: Vec<String>,
    pub bijection: bool,
    pub status: String,
}

fn sparse(index: &PatternIndex, v: &[rational::Rational]) -> BTreeMap<String, String> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(i, x)| (index.render(i), rational::to_string(x)))
        .collect()
}

/// Vertices of I_n^loc (d = 1) paired with the simple cycles of the de Bruijn graph.
pub fn classify_extreme_points(alphabet: &Alphabet, n: usize, cfg: &Config) -> Result<ClassificationReport> {
    let index = PatternIndex::new(1, n, alphabet.clone(), cfg)?;
    let vertices = vertex_enumeration(&build_iloc(&index), cfg)?;
    classify_against(&index, &vertices, cfg)
}

/// Pairing of a given vertex list with the de Bruijn cycle measures.
pub fn classify_against(index: &PatternIndex, vertices: &VPolytope, cfg: &Config) -> Result<ClassificationReport> {
    let graph = debruijn_graph(index.alphabet(), index.n(), cfg)?;
    let orbits = simple_cycles(&graph, cfg);
    let measures = par::map(cfg.exec, &orbits, |o| orbit_measure(o, index))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut by_values: BTreeMap<&[rational::Rational], Vec<usize>> = BTreeMap::new();
    for (i, m) in measures.iter().enumerate() {
        by_values.entry(m.values()).or_default().push(i);
    }
    let mut used = vec![false; orbits.len()];
    let mut pairs = Vec::new();
    let mut unmatched_vertices = Vec::new();
    let mut exactly_one = true;
    for v in &vertices.vertices {
        match by_values.get(v.as_slice()) {
            Some(hits) => {
                exactly_one &= hits.len() == 1;
                let o = &orbits[hits[0]];
                for &h in hits {
                    used[h] = true;
                }
                pairs.push(VertexPair {
                    orbit: o.render(index.alphabet()),
                    period: o.period(),
                    support: sparse(index, v),
                });
            }
            None => unmatched_vertices.push(sparse(index, v)),
        }
    }
    let unmatched_orbits: Vec<String> = orbits
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(o, _)| o.render(index.alphabet()))
        .collect();
    let bijection = exactly_one
        && unmatched_vertices.is_empty()
        && unmatched_orbits.is_empty()
        && vertices.len() == orbits.len();
    Ok(ClassificationReport {
        alphabet: index.alphabet().clone(),
        n: index.n(),
        vertex_count: vertices.len(),
        orbit_count: orbits.len(),
        pairs,
        unmatched_vertices,
        unmatched_orbits,
        bijection,
        status: if bijection { "MATCHED" } else { "FAILURE" }.into(),
    })
}
