//! Compiles a finite descending chain of rational polytopes in the simplex
//! into word languages whose frequency hulls are exactly those polytopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::geometry::lp::{solve_standard, LpOutcome};
use crate::geometry::{extreme_subset, hull_system, is_subset, AffineMap, VPolytope};
use crate::par;
use crate::patterns::{digits, Alphabet, Pattern};
use crate::rational::{self, lcm_of_denominators, Rational};
use crate::sft::ForbiddenSet;

/// `{1, ..., m+1}`.
pub fn symbol_alphabet(symbols: usize) -> Alphabet {
    Alphabet::new((1..=symbols).map(|i| i.to_string())).expect("nonempty")
}

/// Fraction of positions carrying each symbol.
pub fn empirical_freq(word: &[usize], symbols: usize) -> Result<Vec<Rational>> {
    if word.is_empty() {
        return Err(Error::InvalidInput("empirical frequency of the empty word".into()));
    }
    let mut counts = vec![0usize; symbols];
    for &s in word {
        if s >= symbols {
            return Err(Error::InvalidInput(format!("symbol index {s} out of range")));
        }
        counts[s] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| Rational::new(BigInt::from(c), BigInt::from(word.len())))
        .collect())
}

/// Places a bounded rational polytope of R^m inside the m-simplex.
///
/// Returns the lifted polytope `{(y, 1 - Σy)}` and the affine map that takes
/// it back onto the original. When the input already lies in `[0, 1/2m]^m`
/// no rescaling happens.
pub fn embed_into_simplex(c: &VPolytope) -> Result<(VPolytope, AffineMap)> {
    let m = c.dim;
    if m == 0 || c.is_empty() {
        return Err(Error::InvalidInput("need a nonempty polytope of positive dimension".into()));
    }
    let cap = Rational::new(BigInt::one(), BigInt::from(2 * m));
    let lo: Vec<Rational> = (0..m)
        .map(|i| c.vertices.iter().map(|v| v[i].clone()).min().expect("nonempty"))
        .collect();
    let hi: Vec<Rational> = (0..m)
        .map(|i| c.vertices.iter().map(|v| v[i].clone()).max().expect("nonempty"))
        .collect();
    let fits = lo.iter().all(|x| !x.is_negative()) && hi.iter().all(|x| *x <= cap);
    let (shift, scale) = if fits {
        (vec![Rational::zero(); m], Rational::one())
    } else {
        let width = lo.iter().zip(&hi).map(|(a, b)| b - a).max().expect("m > 0");
        let s = if width.is_zero() { Rational::one() } else { (&cap / &width).min(Rational::one()) };
        (lo, s)
    };
    let lifted = c
        .vertices
        .iter()
        .map(|v| {
            let mut y: Vec<Rational> = v.iter().zip(&shift).map(|(x, l)| (x - l) * &scale).collect();
            let rest = Rational::one() - y.iter().sum::<Rational>();
            y.push(rest);
            y
        })
        .collect();
    let inv = scale.recip();
    let matrix = (0..m)
        .map(|i| (0..=m).map(|j| if i == j { inv.clone() } else { Rational::zero() }).collect())
        .collect();
    let back = AffineMap::new(matrix, shift, m + 1)?;
    Ok((VPolytope::from_extreme_points(m + 1, lifted), back))
}

fn in_simplex(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative()) && v.iter().sum::<Rational>().is_one()
}

/// A finite descending chain `C_0 ⊇ C_1 ⊇ ...` inside the simplex on `symbols` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeChain {
    symbols: usize,
    levels: Vec<VPolytope>,
}

impl PolytopeChain {
    pub fn new(levels: Vec<VPolytope>, cfg: &Config) -> Result<Self> {
        let Some(first) = levels.first() else {
            return Err(Error::InvalidInput("empty chain".into()));
        };
        let symbols = first.dim;
        for (i, c) in levels.iter().enumerate() {
            if c.dim != symbols {
                return Err(Error::InvalidInput(format!("level {i} has dimension {}", c.dim)));
            }
            if c.is_empty() {
                return Err(Error::InvalidInput(format!("level {i} is empty")));
            }
            if let Some(v) = c.vertices.iter().find(|v| !in_simplex(v)) {
                let shown: Vec<String> = v.iter().map(rational::to_string).collect();
                return Err(Error::InvalidInput(format!("level {i} vertex {shown:?} is outside the simplex")));
            }
        }
        for i in 1..levels.len() {
            if !is_subset(&levels[i], &levels[i - 1], cfg.exec) {
                return Err(Error::ChainNotDescending(format!("level {i} is not inside level {}", i - 1)));
            }
        }
        let levels = levels
            .into_iter()
            .map(|c| extreme_subset(&c.vertices, symbols, cfg.exec))
            .collect();
        Ok(PolytopeChain { symbols, levels })
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn levels(&self) -> &[VPolytope] {
        &self.levels
    }
}

/// Words of a common length `N`, sorted, over `{1, ..., m+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordLanguage {
    pub symbols: usize,
    pub length: usize,
    pub words: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageJson {
    pub symbols: usize,
    #[serde(rename = "N")]
    pub length: usize,
    pub words: Vec<String>,
}

impl WordLanguage {
    pub fn to_json(&self) -> LanguageJson {
        let a = symbol_alphabet(self.symbols);
        LanguageJson {
            symbols: self.symbols,
            length: self.length,
            words: self.words.iter().map(|w| a.render_word(w)).collect(),
        }
    }

    pub fn from_json(j: &LanguageJson) -> Result<Self> {
        let a = symbol_alphabet(j.symbols);
        let mut words = j.words.iter().map(|w| a.parse_word(w)).collect::<Result<Vec<_>>>()?;
        if words.iter().any(|w| w.len() != j.length) {
            return Err(Error::InvalidInput(format!("every word must have length {}", j.length)));
        }
        words.sort();
        words.dedup();
        Ok(WordLanguage {
            symbols: j.symbols,
            length: j.length,
            words,
        })
    }

    pub fn frequencies(&self) -> Result<Vec<Vec<Rational>>> {
        self.words.iter().map(|w| empirical_freq(w, self.symbols)).collect()
    }
}

fn to_usize(x: &BigInt, what: &str) -> Result<usize> {
    x.to_usize()
        .ok_or_else(|| Error::too_large("max_word_length", what, u128::MAX, usize::MAX as u128))
}

/// Every arrangement of a multiset, in lexicographic order.
fn arrangements<T: Ord + Clone>(mut items: Vec<T>, cap: usize, what: &str) -> Result<Vec<Vec<T>>> {
    items.sort();
    let mut out = vec![items.clone()];
    loop {
        // Next permutation.
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return Ok(out);
        };
        let j = (i..items.len()).rev().find(|&j| items[i - 1] < items[j]).expect("exists");
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
        if out.len() > cap {
            return Err(Error::too_large("max_language", what, out.len() as u128, cap as u128));
        }
    }
}

/// Lexicographically least convex weights expressing `x` over `points`.
pub fn lex_least_weights(points: &[Vec<Rational>], x: &[Rational]) -> Option<Vec<Rational>> {
    let (mut a, mut b) = hull_system(points, x);
    let k = points.len();
    let mut last = None;
    for j in 0..k {
        let mut c = vec![Rational::zero(); k];
        c[j] = Rational::one();
        match solve_standard(&a, &b, Some(&c)) {
            LpOutcome::Optimal { x: w, .. } => {
                let mut row = vec![Rational::zero(); k];
                row[j] = Rational::one();
                a.push(row);
                b.push(w[j].clone());
                last = Some(w);
            }
            _ => return None,
        }
    }
    last
}

fn check_size(lang_len: usize, word_len: usize, cfg: &Config) -> Result<()> {
    if word_len > cfg.max_word_length {
        return Err(Error::too_large(
            "max_word_length",
            "compiled word length",
            word_len as u128,
            cfg.max_word_length as u128,
        ));
    }
    if lang_len > cfg.max_language {
        return Err(Error::too_large(
            "max_language",
            "compiled language",
            lang_len as u128,
            cfg.max_language as u128,
        ));
    }
    Ok(())
}

/// Builds `E_0, E_1, ...` for a chain.
///
/// `E_0` holds every word of length `N_0` (least common denominator of the
/// extreme points) whose frequency is an extreme point. Each later level
/// expresses every extreme point of `C_{i+1}` over those of `C_i`, scales the
/// weights to block multiplicities, and concatenates representative blocks
/// in sorted order; with `all_arrangements` every distinct ordering of the
/// blocks is added.
pub fn compile_languages(chain: &PolytopeChain, all_arrangements: bool, cfg: &Config) -> Result<Vec<WordLanguage>> {
    let symbols = chain.symbols;
    let first = &chain.levels[0];
    let n0 = to_usize(&lcm_of_denominators(first.vertices.iter().flatten()), "first word length")?;
    check_size(0, n0, cfg)?;
    let mut words = Vec::new();
    for v in &first.vertices {
        let counts: Vec<usize> = v
            .iter()
            .map(|x| (x * Rational::from_integer(BigInt::from(n0))).to_integer().to_usize().expect("fits"))
            .collect();
        let base: Vec<usize> = counts.iter().enumerate().flat_map(|(s, &c)| std::iter::repeat_n(s, c)).collect();
        words.extend(arrangements(base, cfg.max_language, "first language")?);
        check_size(words.len(), n0, cfg)?;
    }
    words.sort();
    words.dedup();
    let mut out = vec![WordLanguage {
        symbols,
        length: n0,
        words,
    }];

    for pair in chain.levels.windows(2) {
        let (outer, inner) = (&pair[0], &pair[1]);
        let prev = out.last().expect("nonempty");
        let weights = par::map(cfg.exec, &inner.vertices, |v| lex_least_weights(&outer.vertices, v));
        let weights: Vec<Vec<Rational>> = weights
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::ChainNotDescending("extreme point outside the previous level".into())))
            .collect::<Result<_>>()?;
        let scale = lcm_of_denominators(weights.iter().flatten());
        let length = to_usize(&(scale.clone() * BigInt::from(prev.length)), "word length")?;
        check_size(0, length, cfg)?;

        // Representative block for each extreme point of the outer level: the least word realizing it.
        let freqs = prev.frequencies()?;
        let reps: Vec<&Vec<usize>> = outer
            .vertices
            .iter()
            .map(|v| {
                prev.words
                    .iter()
                    .zip(&freqs)
                    .find(|(_, f)| *f == v)
                    .map(|(w, _)| w)
                    .ok_or_else(|| Error::Verification("previous language misses an extreme point".into()))
            })
            .collect::<Result<_>>()?;

        let mut words = BTreeSet::new();
        for w in &weights {
            let mut blocks: Vec<&Vec<usize>> = Vec::new();
            for (lambda, rep) in w.iter().zip(&reps) {
                let mult = (lambda * Rational::from_integer(scale.clone())).to_integer();
                for _ in 0..to_usize(&mult, "block multiplicity")? {
                    blocks.push(rep);
                }
            }
            blocks.sort();
            let orders = if all_arrangements {
                arrangements(blocks, cfg.max_language, "block arrangements")?
            } else {
                vec![blocks]
            };
            for order in orders {
                words.insert(order.into_iter().flatten().copied().collect::<Vec<usize>>());
                check_size(words.len(), length, cfg)?;
            }
        }
        out.push(WordLanguage {
            symbols,
            length,
            words: words.into_iter().collect(),
        });
    }
    Ok(out)
}

/// Same hull of frequencies as `c`, and every word of the declared length.
pub fn verify_language(lang: &WordLanguage, c: &VPolytope, cfg: &Config) -> Result<bool> {
    if lang.words.is_empty() || c.dim != lang.symbols || lang.words.iter().any(|w| w.len() != lang.length) {
        return Ok(false);
    }
    let hull = extreme_subset(&lang.frequencies()?, lang.symbols, cfg.exec);
    Ok(is_subset(&hull, c, cfg.exec) && is_subset(c, &hull, cfg.exec))
}

/// Does `word` split into consecutive blocks of `lang`?
pub fn parses_into(word: &[usize], lang: &WordLanguage) -> bool {
    lang.length > 0
        && word.len().is_multiple_of(lang.length)
        && word.chunks(lang.length).all(|b| lang.words.binary_search(&b.to_vec()).is_ok())
}

/// Length-3N words with no factorization `b' a' a'' b''` where `a', a''` lie in the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelForbidden {
    lang: WordLanguage,
}

impl LevelForbidden {
    pub fn window(&self) -> usize {
        3 * self.lang.length
    }

    pub fn is_forbidden(&self, w: &[usize]) -> bool {
        let n = self.lang.length;
        if w.len() != 3 * n {
            return false;
        }
        let member = |s: &[usize]| self.lang.words.binary_search(&s.to_vec()).is_ok();
        !(0..=n).any(|s| member(&w[s..s + n]) && member(&w[s + n..s + 2 * n]))
    }

    /// True iff no window of length 3N in `w` is forbidden.
    pub fn admits(&self, w: &[usize]) -> bool {
        w.len() < self.window() || w.windows(self.window()).all(|x| !self.is_forbidden(x))
    }

    /// Every forbidden word, as a one-dimensional forbidden set.
    pub fn enumerate(&self, cfg: &Config) -> Result<ForbiddenSet> {
        let k = self.lang.symbols;
        let len = self.window();
        let count = crate::patterns::pattern_count(k, len, cfg, "forbidden word enumeration")?;
        let words: Vec<Vec<usize>> = par::map_range(cfg.exec, count, |i| {
            let w = digits(i, k, len);
            self.is_forbidden(&w).then_some(w)
        })
        .into_iter()
        .flatten()
        .collect();
        let patterns = words.iter().map(|w| Pattern::word(0, w)).collect::<Result<Vec<_>>>()?;
        ForbiddenSet::new(1, symbol_alphabet(k), patterns)
    }
}

pub fn forbidden_list_for_level(lang: &WordLanguage) -> Result<LevelForbidden> {
    if lang.length == 0 || lang.words.is_empty() {
        return Err(Error::InvalidInput("language must contain nonempty words".into()));
    }
    Ok(LevelForbidden { lang: lang.clone() })
}

/// `a | b`, for checking `N_i | N_{i+1}`.
pub fn divides(a: usize, b: usize) -> bool {
    a != 0 && b.is_multiple_of(a)
}
