//! Finite patterns over Z^d: shapes, alphabets, indexing, translation, cylinders.
//!
//! Cells inside a shape are kept in lexicographic coordinate order (last
//! coordinate fastest). Every matrix column order downstream follows from
//! this ordering, so it is part of the public contract.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};

/// A lattice point of Z^d.
pub type Cell = Vec<i64>;

/// Ordered finite alphabet. Symbol order defines coordinate indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidInput("alphabet must be nonempty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidInput(format!("duplicate symbol {s:?} in alphabet")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses a comma-separated list such as `0,1,2`.
    pub fn parse(list: &str) -> Result<Self> {
        Alphabet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    /// `{0, 1, ..., k-1}` written as decimal strings.
    pub fn numeric(k: usize) -> Self {
        Alphabet::new((0..k).map(|i| i.to_string())).expect("k > 0")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, s: &str) -> Option<usize> {
        self.symbols.iter().position(|x| x == s)
    }

    /// Reads a word written with single-character symbols, or comma-separated symbols.
    pub fn parse_word(&self, w: &str) -> Result<Vec<usize>> {
        let parts: Vec<&str> = if w.contains(',') {
            w.split(',').map(str::trim).collect()
        } else {
            w.char_indices().map(|(i, c)| &w[i..i + c.len_utf8()]).collect()
        };
        parts
            .into_iter()
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| Error::InvalidInput(format!("symbol {s:?} not in alphabet")))
            })
            .collect()
    }

    /// Renders a word; symbols are concatenated when all are single characters.
    pub fn render_word(&self, w: &[usize]) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&i| self.symbol(i)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

/// Finite nonempty set of lattice points, stored sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    d: usize,
    cells: Vec<Cell>,
}

impl Shape {
    pub fn new(d: usize, mut cells: Vec<Cell>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if cells.is_empty() {
            return Err(Error::InvalidInput("shape must be nonempty".into()));
        }
        if let Some(c) = cells.iter().find(|c| c.len() != d) {
            return Err(Error::InvalidInput(format!("cell {c:?} does not have dimension {d}")));
        }
        cells.sort();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("shape cells must be distinct".into()));
        }
        Ok(Shape { d, cells })
    }

    /// Contiguous 1D interval `{start, ..., start + len - 1}`.
    pub fn interval(start: i64, len: usize) -> Result<Self> {
        Shape::new(1, (0..len as i64).map(|i| vec![start + i]).collect())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        self.cells.binary_search_by(|x| x.as_slice().cmp(c)).is_ok()
    }

    pub fn position(&self, c: &[i64]) -> Option<usize> {
        self.cells.binary_search_by(|x| x.as_slice().cmp(c)).ok()
    }

    pub fn is_subset_of(&self, other: &Shape) -> bool {
        self.d == other.d && self.cells.iter().all(|c| other.contains(c))
    }

    /// `E - u`. Translation preserves the lexicographic cell order.
    pub fn translated(&self, u: &[i64]) -> Shape {
        Shape {
            d: self.d,
            cells: self.cells.iter().map(|c| sub(c, u)).collect(),
        }
    }

    /// Per-coordinate minimum and maximum.
    pub fn bounding_box(&self) -> (Cell, Cell) {
        let mut lo = self.cells[0].clone();
        let mut hi = self.cells[0].clone();
        for c in &self.cells {
            for i in 0..self.d {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        (lo, hi)
    }
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Cell {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Λ_n = {-n, ..., n}^d in lexicographic order.
pub fn cube_shape(d: usize, n: usize) -> Shape {
    assert!(d >= 1, "dimension must be positive");
    let n = n as i64;
    let side = 2 * n + 1;
    let total = (side as usize).pow(d as u32);
    let cells = (0..total)
        .map(|mut k| {
            let mut c = vec![0i64; d];
            for i in (0..d).rev() {
                c[i] = (k % side as usize) as i64 - n;
                k /= side as usize;
            }
            c
        })
        .collect();
    Shape { d, cells }
}

/// `base^exp` as u128, or `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub(crate) fn pattern_count(k: usize, cells: usize, cfg: &Config, what: &str) -> Result<usize> {
    let needed = checked_pow(k, cells).unwrap_or(u128::MAX);
    if needed > cfg.max_patterns as u128 {
        return Err(Error::too_large("max_patterns", what, needed, cfg.max_patterns as u128));
    }
    Ok(needed as usize)
}

/// An assignment of symbol indices to the cells of a shape, aligned with `shape.cells()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    shape: Shape,
    values: Vec<usize>,
}

impl Pattern {
    pub fn new(shape: Shape, values: Vec<usize>) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::InvalidInput(format!(
                "pattern has {} values for {} cells",
                values.len(),
                shape.len()
            )));
        }
        Ok(Pattern { shape, values })
    }

    /// Builds a pattern from unsorted `(cell, symbol)` pairs.
    pub fn from_cells(d: usize, entries: Vec<(Cell, usize)>) -> Result<Self> {
        let mut entries = entries;
        entries.sort();
        let (cells, values): (Vec<Cell>, Vec<usize>) = entries.into_iter().unzip();
        Pattern::new(Shape::new(d, cells)?, values)
    }

    /// 1D word placed at `start, start+1, ...`.
    pub fn word(start: i64, symbols: &[usize]) -> Result<Self> {
        Pattern::new(Shape::interval(start, symbols.len())?, symbols.to_vec())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value_at(&self, c: &[i64]) -> Option<usize> {
        self.shape.position(c).map(|i| self.values[i])
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.values.iter().find(|&&v| v >= alphabet.len()) {
            Some(v) => Err(Error::InvalidInput(format!("symbol index {v} outside alphabet"))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> PatternJson {
        PatternJson {
            d: self.shape.d,
            cells: self.shape.cells.clone(),
            values: self.values.iter().map(|&v| alphabet.symbol(v).to_string()).collect(),
        }
    }

    pub fn from_json(j: &PatternJson, alphabet: &Alphabet) -> Result<Self> {
        if j.cells.len() != j.values.len() {
            return Err(Error::InvalidInput("pattern cells and values differ in length".into()));
        }
        let entries = j
            .cells
            .iter()
            .zip(&j.values)
            .map(|(c, v)| {
                alphabet
                    .index_of(v)
                    .map(|i| (c.clone(), i))
                    .ok_or_else(|| Error::InvalidInput(format!("symbol {v:?} not in alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::from_cells(j.d, entries)
    }
}

/// Wire form of a pattern: `{"d":…, "cells":[[…]], "values":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub d: usize,
    pub cells: Vec<Cell>,
    pub values: Vec<String>,
}

/// Θ^u a: the pattern on `E - u` with `(Θ^u a)_v = a_{v+u}`.
pub fn translate_pattern(a: &Pattern, u: &[i64]) -> Pattern {
    Pattern {
        shape: a.shape.translated(u),
        values: a.values.clone(),
    }
}

/// All `|Σ|^{|E|}` patterns on `shape`, in mixed-radix order (first cell most significant).
pub fn enumerate_patterns(alphabet: &Alphabet, shape: &Shape, cfg: &Config) -> Result<Vec<Pattern>> {
    let count = pattern_count(alphabet.len(), shape.len(), cfg, "pattern enumeration")?;
    Ok((0..count)
        .map(|i| Pattern {
            shape: shape.clone(),
            values: digits(i, alphabet.len(), shape.len()),
        })
        .collect())
}

pub(crate) fn digits(mut i: usize, k: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = i % k;
        i /= k;
    }
    out
}

pub(crate) fn undigits(ds: impl IntoIterator<Item = usize>, k: usize) -> usize {
    ds.into_iter().fold(0, |acc, x| acc * k + x)
}

/// Bijection between Ω_n = Σ^{Λ_n} and `0..|Σ|^{|Λ_n|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternIndex {
    d: usize,
    n: usize,
    alphabet: Alphabet,
    window: Shape,
    size: usize,
}

impl PatternIndex {
    pub fn new(d: usize, n: usize, alphabet: Alphabet, cfg: &Config) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let cells = checked_pow(2 * n + 1, d)
            .filter(|&c| c <= 64)
            .ok_or_else(|| Error::too_large("max_patterns", "window", u128::MAX, cfg.max_patterns as u128))?;
        let size = pattern_count(alphabet.len(), cells as usize, cfg, "Ω_n")?;
        Ok(PatternIndex {
            d,
            n,
            alphabet,
            window: cube_shape(d, n),
            size,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.alphabet.len()
    }

    pub fn window(&self) -> &Shape {
        &self.window
    }

    pub fn cells(&self) -> usize {
        self.window.len()
    }

    /// |Ω_n|.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn digits(&self, i: usize) -> Vec<usize> {
        digits(i, self.k(), self.cells())
    }

    pub fn index_of_values(&self, values: &[usize]) -> usize {
        undigits(values.iter().copied(), self.k())
    }

    pub fn pattern(&self, i: usize) -> Pattern {
        Pattern {
            shape: self.window.clone(),
            values: self.digits(i),
        }
    }

    /// Index of a full pattern on Λ_n.
    pub fn index(&self, p: &Pattern) -> Result<usize> {
        if p.shape != self.window {
            return Err(Error::InvalidInput("pattern is not on the window Λ_n".into()));
        }
        p.check_alphabet(&self.alphabet)?;
        Ok(self.index_of_values(&p.values))
    }

    /// Positions within Λ_n of the cells of `shape`, or `None` if it does not fit.
    pub fn positions(&self, shape: &Shape) -> Option<Vec<usize>> {
        shape.cells().iter().map(|c| self.window.position(c)).collect()
    }

    /// Renders pattern `i` (words in d = 1, row-major cell list otherwise).
    pub fn render(&self, i: usize) -> String {
        self.alphabet.render_word(&self.digits(i))
    }
}

/// `[a]_n`: indices of the full patterns on Λ_n restricting to `a` on its shape.
pub fn cylinder_members(a: &Pattern, index: &PatternIndex) -> Result<Vec<usize>> {
    let positions = index
        .positions(a.shape())
        .ok_or_else(|| Error::DoesNotFit("shape is not contained in Λ_n".into()))?;
    a.check_alphabet(index.alphabet())?;
    let total = index.cells();
    let k = index.k();
    let free: Vec<usize> = (0..total).filter(|p| !positions.contains(p)).collect();
    let count = k.pow(free.len() as u32);
    let mut out = Vec::with_capacity(count);
    let mut vals = vec![0usize; total];
    for (&p, &v) in positions.iter().zip(a.values()) {
        vals[p] = v;
    }
    for j in 0..count {
        for (&p, v) in free.iter().zip(digits(j, k, free.len())) {
            vals[p] = v;
        }
        out.push(index.index_of_values(&vals));
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bin() -> Alphabet {
        Alphabet::numeric(2)
    }

    #[test]
    fn cube_shapes() {
        let s = cube_shape(1, 1);
        assert_eq!(s.cells(), &[vec![-1], vec![0], vec![1]]);
        assert_eq!(cube_shape(2, 1).len(), 9);
        assert_eq!(cube_shape(2, 1).cells()[1], vec![-1, 0]);
        assert_eq!(cube_shape(1, 0).cells(), &[vec![0]]);
        assert_eq!(cube_shape(3, 2).len(), 125);
    }

    #[test]
    fn enumeration_counts() {
        let cfg = Config::default();
        assert_eq!(enumerate_patterns(&bin(), &cube_shape(1, 1), &cfg).unwrap().len(), 8);
        assert_eq!(enumerate_patterns(&bin(), &cube_shape(2, 1), &cfg).unwrap().len(), 512);
        let four = Alphabet::parse("1,2,3,4").unwrap();
        assert_eq!(enumerate_patterns(&four, &cube_shape(1, 1), &cfg).unwrap().len(), 64);
    }

    #[test]
    fn enumeration_cap() {
        let cfg = Config::default();
        let err = enumerate_patterns(&bin(), &cube_shape(2, 2), &cfg).unwrap_err();
        assert!(matches!(err, Error::TooLarge { cap: "max_patterns", .. }));
        assert!(PatternIndex::new(2, 2, bin(), &cfg).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("0,1,0").is_err());
        let a = Alphabet::parse("a,b").unwrap();
        assert_eq!(a.parse_word("abba").unwrap(), vec![0, 1, 1, 0]);
        assert!(a.parse_word("abc").is_err());
    }

    #[test]
    fn translation_examples() {
        let a = Pattern::word(0, &[1, 0]).unwrap();
        let t = translate_pattern(&a, &[1]);
        assert_eq!(t.shape().cells(), &[vec![-1], vec![0]]);
        assert_eq!(t.values(), &[1, 0]);
        assert_eq!(translate_pattern(&a, &[0]), a);
        assert_eq!(translate_pattern(&t, &[-1]), a);
    }

    #[test]
    fn cylinder_examples() {
        let cfg = Config::default();
        let idx = PatternIndex::new(1, 1, bin(), &cfg).unwrap();
        let full = idx.pattern(5);
        assert_eq!(cylinder_members(&full, &idx).unwrap(), vec![5]);
        let one_at_zero = Pattern::word(0, &[1]).unwrap();
        assert_eq!(cylinder_members(&one_at_zero, &idx).unwrap().len(), 4);
        let a = Pattern::word(-1, &[0, 1]).unwrap();
        let members: Vec<String> = cylinder_members(&a, &idx)
            .unwrap()
            .into_iter()
            .map(|i| idx.render(i))
            .collect();
        assert_eq!(members, vec!["010", "011"]);
        let outside = Pattern::word(1, &[0, 1]).unwrap();
        assert!(matches!(cylinder_members(&outside, &idx), Err(Error::DoesNotFit(_))));
    }

    #[test]
    fn pattern_json_round_trip() {
        let a = Alphabet::parse("x,y").unwrap();
        let p = Pattern::from_cells(2, vec![(vec![0, 1], 1), (vec![0, 0], 0)]).unwrap();
        let j = p.to_json(&a);
        assert_eq!(j.values, vec!["x", "y"]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"d":2,"cells":[[0,0],[0,1]],"values":["x","y"]}"#);
        let back: PatternJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Pattern::from_json(&back, &a).unwrap(), p);
    }

    proptest! {
        #[test]
        fn index_round_trip(d in 1usize..=2, k in 1usize..=3, seed in any::<u64>()) {
            let idx = PatternIndex::new(d, 1, Alphabet::numeric(k), &Config::default()).unwrap();
            let i = (seed % idx.size() as u64) as usize;
            prop_assert_eq!(idx.index(&idx.pattern(i)).unwrap(), i);
        }

        #[test]
        fn cylinder_sizes_partition(mask in 1u32..8, k in 1usize..=3) {
            let idx = PatternIndex::new(1, 1, Alphabet::numeric(k), &Config::default()).unwrap();
            let cells: Vec<Cell> = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| vec![i as i64 - 1]).collect();
            let shape = Shape::new(1, cells).unwrap();
            let pats = enumerate_patterns(idx.alphabet(), &shape, &Config::default()).unwrap();
            let total: usize = pats.iter().map(|p| cylinder_members(p, &idx).unwrap().len()).sum();
            prop_assert_eq!(total, idx.size());
        }

        #[test]
        fn translation_is_group_action(u in -3i64..3, v in -3i64..3, w in -3i64..3) {
            let a = Pattern::from_cells(2, vec![(vec![0, 0], 1), (vec![1, -1], 0)]).unwrap();
            let lhs = translate_pattern(&translate_pattern(&a, &[u, v]), &[w, u]);
            let rhs = translate_pattern(&a, &[u + w, v + u]);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
