use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::invariance::MeasureVector;
use crate::par;
use crate::patterns::{digits, pattern_count, undigits, Alphabet, PatternIndex};
use crate::rational::Rational;

/// Directed edge between two states; `label` indexes the word of length `state_len + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// Overlap graph on words of length `state_len`: an edge `a -> b` for each
/// word `w` of length `state_len + 1` with prefix `a` and suffix `b`.
///
/// States and edges refer to word indices (mixed radix, first symbol most
/// significant); `states` is sorted and edges are sorted by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    alphabet: Alphabet,
    state_len: usize,
    states: Vec<usize>,
    edges: Vec<Edge>,
}

impl TransitionGraph {
    /// Graph of the edge words accepted by `keep`; states are the endpoints of kept edges.
    pub fn from_edge_words(alphabet: Alphabet, state_len: usize, cfg: &Config, keep: impl Fn(&[usize]) -> bool) -> Result<Self> {
        let k = alphabet.len();
        let count = pattern_count(k, state_len + 1, cfg, "transition graph edges")?;
        let mut labels = Vec::new();
        let mut endpoints = BTreeSet::new();
        for w in 0..count {
            let ds = digits(w, k, state_len + 1);
            if keep(&ds) {
                let from = undigits(ds[..state_len].iter().copied(), k);
                let to = undigits(ds[1..].iter().copied(), k);
                endpoints.insert(from);
                endpoints.insert(to);
                labels.push((w, from, to));
            }
        }
        let states: Vec<usize> = endpoints.into_iter().collect();
        let pos = |s: usize| states.binary_search(&s).expect("endpoint");
        let edges = labels
            .into_iter()
            .map(|(label, from, to)| Edge {
                from: pos(from),
                to: pos(to),
                label,
            })
            .collect();
        Ok(TransitionGraph {
            alphabet,
            state_len,
            states,
            edges,
        })
    }

    /// Transition graph of a measure on Ω_n (d = 1): edges are the windows of
    /// positive mass, states the length-2n words of positive mass.
    pub fn from_measure(mu: &MeasureVector, cfg: &Config) -> Result<Self> {
        let index = mu.index();
        if index.d() != 1 {
            return Err(Error::InvalidInput("transition graphs need d = 1".into()));
        }
        let k = index.k();
        TransitionGraph::from_edge_words(index.alphabet().clone(), 2 * index.n(), cfg, |w| {
            !mu.value(undigits(w.iter().copied(), k)).is_zero()
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_len(&self) -> usize {
        self.state_len
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn state_word(&self, s: usize) -> Vec<usize> {
        digits(self.states[s], self.alphabet.len(), self.state_len)
    }

    pub fn label_word(&self, label: usize) -> Vec<usize> {
        digits(label, self.alphabet.len(), self.state_len + 1)
    }

    pub fn render_state(&self, s: usize) -> String {
        self.alphabet.render_word(&self.state_word(s))
    }

    /// Edge labels as a set, for subgraph comparisons.
    pub fn label_set(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.label).collect()
    }

    /// Subgraph keeping only the edges whose words pass `keep`.
    pub fn restrict(&self, cfg: &Config, keep: impl Fn(&[usize]) -> bool) -> Result<Self> {
        let labels = self.label_set();
        TransitionGraph::from_edge_words(self.alphabet.clone(), self.state_len, cfg, |w| {
            labels.contains(&undigits(w.iter().copied(), self.alphabet.len())) && keep(w)
        })
    }

    /// Subgraph with the given state word and every edge through it removed.
    pub fn without_state(&self, word: &[usize], cfg: &Config) -> Result<Self> {
        let len = self.state_len;
        self.restrict(cfg, |w| w[..len] != *word && w[1..] != *word)
    }

    /// True iff some directed cycle exists (repeatedly strip sources and sinks).
    pub fn has_cycle(&self) -> bool {
        let n = self.states.len();
        let mut alive = vec![true; self.edges.len()];
        loop {
            let mut indeg = vec![0usize; n];
            let mut outdeg = vec![0usize; n];
            for (e, a) in self.edges.iter().zip(&alive) {
                if *a {
                    outdeg[e.from] += 1;
                    indeg[e.to] += 1;
                }
            }
            let mut changed = false;
            for (e, a) in self.edges.iter().zip(alive.iter_mut()) {
                if *a && (indeg[e.from] == 0 || outdeg[e.to] == 0) {
                    *a = false;
                    changed = true;
                }
            }
            if !changed {
                return alive.iter().any(|&a| a);
            }
        }
    }
}

/// All words of length 2n+1 over the alphabet, as a graph on length-2n words.
pub fn debruijn_graph(alphabet: &Alphabet, n: usize, cfg: &Config) -> Result<TransitionGraph> {
    TransitionGraph::from_edge_words(alphabet.clone(), 2 * n, cfg, |_| true)
}

/// Primitive word up to rotation, stored as its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicOrbit {
    word: Vec<usize>,
}

impl PeriodicOrbit {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let p = word.len();
        if p == 0 {
            return Err(Error::InvalidInput("periodic word must be nonempty".into()));
        }
        if (1..p).any(|q| p.is_multiple_of(q) && (0..p).all(|i| word[i] == word[i % q])) {
            return Err(Error::InvalidInput("periodic word must be primitive".into()));
        }
        let best = (0..p)
            .map(|r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
            .min()
            .expect("nonempty");
        Ok(PeriodicOrbit { word: best })
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render_word(&self.word)
    }
}

/// Uniform measure on the periodic orbit of `w^∞`, projected to Ω_n (d = 1).
pub fn orbit_measure(orbit: &PeriodicOrbit, index: &PatternIndex) -> Result<MeasureVector> {
    if index.d() != 1 {
        return Err(Error::InvalidInput("orbit measures are defined here for d = 1".into()));
    }
    let p = orbit.period();
    let len = index.cells();
    let w = Rational::new(BigInt::one(), BigInt::from(p));
    let mut values = vec![Rational::zero(); index.size()];
    for i in 0..p {
        let window = (0..len).map(|j| orbit.word[(i + j) % p]);
        values[undigits(window, index.k())] += &w;
    }
    MeasureVector::new(index.clone(), values)
}

fn strongly_connected_component(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let n = adj.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            let nbrs: Box<dyn Iterator<Item = usize>> = if forward {
                Box::new(adj[v].iter().copied())
            } else {
                Box::new((0..n).filter(move |&u| adj[u].contains(&v)))
            };
            for u in nbrs {
                if allowed(u) && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    };
    let f = reach(true);
    let b = reach(false);
    f.iter().zip(&b).map(|(x, y)| *x && *y).collect()
}

/// Johnson's circuit search rooted at `s`, restricted to vertices `>= s` in the SCC of `s`.
fn circuits_from(adj: &[Vec<usize>], s: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let in_scc = strongly_connected_component(adj, s, |v| v >= s);
    let mut blocked = vec![false; n];
    let mut bset: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut path = vec![s];
    let mut out = Vec::new();

    fn unblock(u: usize, blocked: &mut [bool], bset: &mut [BTreeSet<usize>]) {
        blocked[u] = false;
        let waiting: Vec<usize> = std::mem::take(&mut bset[u]).into_iter().collect();
        for w in waiting {
            if blocked[w] {
                unblock(w, blocked, bset);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn circuit(
        v: usize,
        s: usize,
        adj: &[Vec<usize>],
        in_scc: &[bool],
        blocked: &mut [bool],
        bset: &mut [BTreeSet<usize>],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        let mut found = false;
        blocked[v] = true;
        for &w in &adj[v] {
            if !in_scc[w] {
                continue;
            }
            if w == s {
                out.push(path.clone());
                found = true;
            } else if !blocked[w] {
                path.push(w);
                if circuit(w, s, adj, in_scc, blocked, bset, path, out) {
                    found = true;
                }
                path.pop();
            }
        }
        if found {
            unblock(v, blocked, bset);
        } else {
            for &w in &adj[v] {
                if in_scc[w] {
                    bset[w].insert(v);
                }
            }
        }
        found
    }

    circuit(s, s, adj, &in_scc, &mut blocked, &mut bset, &mut path, &mut out);
    out
}

/// Every simple directed cycle (self-loops included), as canonical orbits sorted
/// by period then word. Parallel edges each give their own cycle.
pub fn simple_cycles(g: &TransitionGraph, cfg: &Config) -> Vec<PeriodicOrbit> {
    let n = g.states.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &g.edges {
        if !adj[e.from].contains(&e.to) {
            adj[e.from].push(e.to);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let vertex_cycles = par::flat_map_range(cfg.exec, n, |s| circuits_from(&adj, s));

    let mut orbits = Vec::new();
    for cyc in vertex_cycles {
        // Symbol sequence: first symbol of each edge label along the cycle,
        // expanded over parallel edges.
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &v) in cyc.iter().enumerate() {
            let w = cyc[(i + 1) % cyc.len()];
            let firsts: Vec<usize> = g
                .edges
                .iter()
                .filter(|e| e.from == v && e.to == w)
                .map(|e| g.label_word(e.label)[0])
                .collect();
            words = words
                .into_iter()
                .flat_map(|pre| {
                    firsts.iter().map(move |&f| {
                        let mut x = pre.clone();
                        x.push(f);
                        x
                    })
                })
                .collect();
        }
        for w in words {
            orbits.push(PeriodicOrbit::new(w).expect("simple cycles give primitive words"));
        }
    }
    orbits.sort_by(|a, b| (a.period(), &a.word).cmp(&(b.period(), &b.word)));
    orbits.dedup();
    orbits
}

/// Wire form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub states: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl TransitionGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            states: (0..self.states.len()).map(|s| self.render_state(s)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        self.render_state(e.from),
                        self.render_state(e.to),
                        self.alphabet.render_word(&self.label_word(e.label)),
                    )
                })
                .collect(),
        }
    }
}
