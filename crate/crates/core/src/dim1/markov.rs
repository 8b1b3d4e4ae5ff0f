use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::graph::TransitionGraph;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::invariance::{first_violation, MeasureVector};
use crate::patterns::{undigits, Alphabet, PatternIndex};
use crate::rational::{self, Rational};

/// One transition; `label` is the index of the length-(2n+1) word it reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub label: usize,
    pub prob: Rational,
}

/// Stationary Markov chain on length-2n words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovChain {
    alphabet: Alphabet,
    n: usize,
    /// Sorted word indices of the states.
    states: Vec<usize>,
    transitions: Vec<Transition>,
    stationary: Vec<Rational>,
}

impl MarkovChain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn stationary(&self) -> &[Rational] {
        &self.stationary
    }

    fn render_state(&self, s: usize) -> String {
        let ds = crate::patterns::digits(self.states[s], self.alphabet.len(), 2 * self.n);
        self.alphabet.render_word(&ds)
    }

    /// Dense transition matrix; parallel edges (only when n = 0) are summed.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let m = self.states.len();
        let mut p = vec![vec![Rational::zero(); m]; m];
        for t in &self.transitions {
            p[t.from][t.to] += &t.prob;
        }
        p
    }

    pub fn rows_stochastic(&self) -> bool {
        self.matrix().iter().all(|row| row.iter().sum::<Rational>() == Rational::from_integer(1.into()))
    }

    /// `pᵀP = pᵀ` and `p` sums to one, exactly.
    pub fn is_stationary(&self) -> bool {
        let m = self.states.len();
        let mut flow = vec![Rational::zero(); m];
        for t in &self.transitions {
            flow[t.to] += &self.stationary[t.from] * &t.prob;
        }
        flow == self.stationary && self.stationary.iter().sum::<Rational>() == Rational::from_integer(1.into())
    }

    /// Is the support graph a single directed cycle?
    pub fn is_single_cycle(&self) -> bool {
        let m = self.states.len();
        if self.transitions.len() != m {
            return false;
        }
        let mut next = vec![usize::MAX; m];
        for t in &self.transitions {
            if next[t.from] != usize::MAX {
                return false;
            }
            next[t.from] = t.to;
        }
        let mut v = 0;
        for step in 1..=m {
            v = next[v];
            if v == 0 {
                return step == m;
            }
        }
        false
    }

    pub fn to_json(&self) -> ChainJson {
        let states: Vec<String> = (0..self.states.len()).map(|s| self.render_state(s)).collect();
        let k = self.alphabet.len();
        ChainJson {
            alphabet: self.alphabet.clone(),
            n: self.n,
            p: self.matrix().iter().map(|r| r.iter().map(rational::to_string).collect()).collect(),
            pi: self.stationary.iter().map(rational::to_string).collect(),
            edges: self
                .transitions
                .iter()
                .map(|t| EdgeJson {
                    from: states[t.from].clone(),
                    to: states[t.to].clone(),
                    word: self.alphabet.render_word(&crate::patterns::digits(t.label, k, 2 * self.n + 1)),
                    p: rational::to_string(&t.prob),
                })
                .collect(),
            states,
        }
    }

    /// Rebuilds a chain from its wire form and rechecks the invariants.
    pub fn from_json(j: &ChainJson) -> Result<Self> {
        let k = j.alphabet.len();
        let mut states = Vec::with_capacity(j.states.len());
        for s in &j.states {
            let w = j.alphabet.parse_word(s)?;
            if w.len() != 2 * j.n {
                return Err(Error::InvalidInput(format!("state {s:?} has wrong length")));
            }
            states.push(undigits(w, k));
        }
        if states.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidInput("states must be distinct and sorted".into()));
        }
        let pos = |s: &str| -> Result<usize> {
            let w = undigits(j.alphabet.parse_word(s)?, k);
            states
                .binary_search(&w)
                .map_err(|_| Error::InvalidInput(format!("unknown state {s:?}")))
        };
        let mut transitions = Vec::new();
        for e in &j.edges {
            let word = j.alphabet.parse_word(&e.word)?;
            if word.len() != 2 * j.n + 1 {
                return Err(Error::InvalidInput(format!("edge word {:?} has wrong length", e.word)));
            }
            let (from, to) = (pos(&e.from)?, pos(&e.to)?);
            if states[from] != undigits(word[..2 * j.n].iter().copied(), k)
                || states[to] != undigits(word[1..].iter().copied(), k)
            {
                return Err(Error::InvalidInput(format!("edge word {:?} does not join its states", e.word)));
            }
            transitions.push(Transition {
                from,
                to,
                label: undigits(word, k),
                prob: rational::parse(&e.p)?,
            });
        }
        let stationary = j.pi.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
        if stationary.len() != states.len() {
            return Err(Error::InvalidInput("pi and states differ in length".into()));
        }
        let chain = MarkovChain {
            alphabet: j.alphabet.clone(),
            n: j.n,
            states,
            transitions,
            stationary,
        };
        if chain.to_json().p != j.p {
            return Err(Error::InvalidInput("P disagrees with the edge list".into()));
        }
        if !chain.rows_stochastic() || !chain.is_stationary() {
            return Err(Error::Verification("chain is not stochastic and stationary".into()));
        }
        Ok(chain)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub word: String,
    pub p: String,
}

/// Wire form: `states`, dense `P`, stationary `pi`, plus the labelled edges
/// (needed to tell parallel edges apart when n = 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub alphabet: Alphabet,
    pub n: usize,
    pub states: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    pub pi: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

/// Markov chain on the positive-mass length-2n words whose length-(2n+1)
/// marginal is `mu`.
pub fn markov_extension(mu: &MeasureVector, cfg: &Config) -> Result<MarkovChain> {
    let index = mu.index();
    if index.d() != 1 {
        return Err(Error::InvalidInput("Markov extensions are built for d = 1 only".into()));
    }
    if let Some(v) = first_violation(index, mu.values(), cfg)? {
        return Err(Error::NotLocallyInvariant(v.to_string()));
    }
    let graph = TransitionGraph::from_measure(mu, cfg)?;
    let k = index.k();
    let m = graph.states().len();
    // p(a) = Σ_c μ(ac): out-mass of each state.
    let mut mass = vec![Rational::zero(); m];
    for e in graph.edges() {
        mass[e.from] += mu.value(e.label);
    }
    if mass.iter().any(Zero::is_zero) {
        // Invariance puts in-mass = out-mass, so every endpoint has positive out-mass.
        return Err(Error::Verification("state with zero outgoing mass".into()));
    }
    let transitions = graph
        .edges()
        .iter()
        .map(|e| Transition {
            from: e.from,
            to: e.to,
            label: e.label,
            prob: mu.value(e.label) / &mass[e.from],
        })
        .collect();
    let chain = MarkovChain {
        alphabet: index.alphabet().clone(),
        n: index.n(),
        states: graph.states().to_vec(),
        transitions,
        stationary: mass,
    };
    debug_assert_eq!(k, chain.alphabet.len());
    if !chain.rows_stochastic() || !chain.is_stationary() {
        return Err(Error::Verification("constructed chain is not stationary".into()));
    }
    Ok(chain)
}

/// Length-(2n+1) marginal of the stationary chain: `μ(w) = p(prefix)·P(prefix, suffix)`.
pub fn chain_marginal(chain: &MarkovChain, index: &PatternIndex) -> Result<MeasureVector> {
    if index.d() != 1 || index.n() != chain.n || index.alphabet() != &chain.alphabet {
        return Err(Error::InvalidInput(format!(
            "chain states have length {} but the window needs {}",
            2 * chain.n,
            2 * index.n()
        )));
    }
    let mut values = vec![Rational::zero(); index.size()];
    for t in &chain.transitions {
        values[t.label] += &chain.stationary[t.from] * &t.prob;
    }
    MeasureVector::new(index.clone(), values)
}
