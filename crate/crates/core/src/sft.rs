//! Shifts of finite type as faces of the locally invariant polytope.
//!
//! A forbidden set zeroes every full window pattern in which one of its
//! patterns occurs (at any translate that fits). In d = 1 emptiness is
//! decided on the pruned overlap graph; in d = 2 only a bounded search for
//! periodic torus configurations is offered.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::dim1::TransitionGraph;
use crate::error::{Error, Result};
use crate::geometry::{lp_feasible, vertex_enumeration, FeasibilityCertificate, HPolytope, HPolytopeJson, VPolytope};
use crate::invariance::{build_iloc, MeasureVector};
use crate::patterns::{cylinder_members, sub, translate_pattern, Alphabet, Cell, Pattern, PatternIndex, PatternJson};
use crate::rational::Rational;

/// Patterns that may not appear anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    d: usize,
    alphabet: Alphabet,
    patterns: Vec<Pattern>,
}

impl ForbiddenSet {
    pub fn new(d: usize, alphabet: Alphabet, patterns: Vec<Pattern>) -> Result<Self> {
        for p in &patterns {
            if p.shape().dim() != d {
                return Err(Error::InvalidInput(format!("forbidden pattern has dimension {}", p.shape().dim())));
            }
            p.check_alphabet(&alphabet)?;
        }
        Ok(ForbiddenSet { d, alphabet, patterns })
    }

    /// d = 1 set from contiguous words, e.g. `["11"]`.
    pub fn from_words(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let patterns = words
            .iter()
            .map(|w| Pattern::word(0, &alphabet.parse_word(w)?))
            .collect::<Result<Vec<_>>>()?;
        ForbiddenSet::new(1, alphabet, patterns)
    }

    /// Every full pattern on Λ_n.
    pub fn everything(index: &PatternIndex) -> Self {
        ForbiddenSet {
            d: index.d(),
            alphabet: index.alphabet().clone(),
            patterns: (0..index.size()).map(|i| index.pattern(i)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn with_pattern(mut self, p: Pattern) -> Result<Self> {
        p.check_alphabet(&self.alphabet)?;
        self.patterns.push(p);
        Ok(self)
    }

    pub fn to_json(&self) -> ForbiddenJson {
        ForbiddenJson {
            d: self.d,
            alphabet: self.alphabet.clone(),
            patterns: self.patterns.iter().map(|p| p.to_json(&self.alphabet)).collect(),
            words: Vec::new(),
        }
    }

    /// `patterns` in full form and, for d = 1, `words` as shorthand.
    pub fn from_json(j: &ForbiddenJson) -> Result<Self> {
        let mut patterns = j
            .patterns
            .iter()
            .map(|p| Pattern::from_json(p, &j.alphabet))
            .collect::<Result<Vec<_>>>()?;
        if !j.words.is_empty() {
            if j.d != 1 {
                return Err(Error::InvalidInput("`words` is only meaningful for d = 1".into()));
            }
            for w in &j.words {
                patterns.push(Pattern::word(0, &j.alphabet.parse_word(w)?)?);
            }
        }
        ForbiddenSet::new(j.d, j.alphabet.clone(), patterns)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenJson {
    pub d: usize,
    pub alphabet: Alphabet,
    #[serde(default)]
    pub patterns: Vec<PatternJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
}

/// Translates `u` with `shape - u` inside the box `[lo, hi]`.
fn fitting_shifts(p: &Pattern, lo: &[i64], hi: &[i64]) -> Vec<Cell> {
    let (plo, phi) = p.shape().bounding_box();
    let d = lo.len();
    // u ranges over plo - lo down to phi - hi, coordinatewise.
    let min: Cell = sub(&phi, hi);
    let max: Cell = sub(&plo, lo);
    if (0..d).any(|i| min[i] > max[i]) {
        return Vec::new();
    }
    let mut out = vec![min.clone()];
    for i in 0..d {
        out = out
            .into_iter()
            .flat_map(|u| {
                (min[i]..=max[i]).map(move |x| {
                    let mut v = u.clone();
                    v[i] = x;
                    v
                })
            })
            .collect();
    }
    out
}

/// Does `p` occur in the box-shaped array `values` (cells of `[lo, hi]` in lexicographic order)?
fn occurs_in_box(p: &Pattern, lo: &[i64], hi: &[i64], values: &[usize]) -> bool {
    let side: Vec<i64> = lo.iter().zip(hi).map(|(a, b)| b - a + 1).collect();
    let offset = |c: &[i64]| -> usize {
        c.iter()
            .zip(lo)
            .zip(&side)
            .fold(0i64, |acc, ((x, l), s)| acc * s + (x - l)) as usize
    };
    fitting_shifts(p, lo, hi).iter().any(|u| {
        p.shape()
            .cells()
            .iter()
            .zip(p.values())
            .all(|(c, &v)| values[offset(&sub(c, u))] == v)
    })
}

/// Full patterns on Λ_n in which some forbidden pattern occurs.
pub fn zeroed_coordinates(l: &ForbiddenSet, index: &PatternIndex) -> Result<Vec<usize>> {
    if l.d != index.d() || l.alphabet != *index.alphabet() {
        return Err(Error::InvalidInput("forbidden set and window disagree on d or alphabet".into()));
    }
    let n = index.n() as i64;
    let lo = vec![-n; index.d()];
    let hi = vec![n; index.d()];
    let mut zeroed = BTreeSet::new();
    for p in &l.patterns {
        let shifts = fitting_shifts(p, &lo, &hi);
        if shifts.is_empty() {
            return Err(Error::DoesNotFit(format!(
                "forbidden pattern on {:?} is larger than the window",
                p.shape().cells()
            )));
        }
        for u in shifts {
            zeroed.extend(cylinder_members(&translate_pattern(p, &u), index)?);
        }
    }
    Ok(zeroed.into_iter().collect())
}

/// I_n^loc with the coordinates of forbidden-containing patterns set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescription {
    pub index: PatternIndex,
    pub zeroed: Vec<usize>,
    pub polytope: HPolytope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub d: usize,
    pub n: usize,
    pub alphabet: Alphabet,
    pub zeroed: Vec<String>,
    pub polytope: HPolytopeJson,
}

impl FaceDescription {
    pub fn to_json(&self) -> FaceJson {
        FaceJson {
            d: self.index.d(),
            n: self.index.n(),
            alphabet: self.index.alphabet().clone(),
            zeroed: self.zeroed.iter().map(|&i| self.index.render(i)).collect(),
            polytope: self.polytope.to_json(),
        }
    }

    /// The same system with the zeroed columns removed; `kept[j]` is the
    /// original coordinate of reduced column `j`.
    fn reduced(&self) -> (HPolytope, Vec<usize>, Vec<usize>) {
        let zero: BTreeSet<usize> = self.zeroed.iter().copied().collect();
        let kept: Vec<usize> = (0..self.polytope.dim).filter(|j| !zero.contains(j)).collect();
        let base_eq = self.polytope.eq.len() - self.zeroed.len();
        let restrict = |row: &[Rational]| kept.iter().map(|&j| row[j].clone()).collect::<Vec<_>>();
        let mut h = HPolytope::new(kept.len());
        for (row, b) in self.polytope.eq[..base_eq].iter().zip(&self.polytope.eq_rhs) {
            h.add_eq(restrict(row), b.clone());
        }
        let mut ineq_rows = Vec::new();
        for (r, (row, b)) in self.polytope.ineq.iter().zip(&self.polytope.ineq_rhs).enumerate() {
            let part = restrict(row);
            if part.iter().all(Zero::is_zero) && *b >= Rational::zero() {
                continue;
            }
            h.add_ineq(part, b.clone());
            ineq_rows.push(r);
        }
        (h, kept, ineq_rows)
    }

    fn lift(&self, kept: &[usize], x: &[Rational]) -> Vec<Rational> {
        let mut full = vec![Rational::zero(); self.polytope.dim];
        for (&j, v) in kept.iter().zip(x) {
            full[j] = v.clone();
        }
        full
    }
}

/// Face of I_n^loc cut out by a forbidden set.
pub fn face_of_forbidden(l: &ForbiddenSet, n: usize, cfg: &Config) -> Result<FaceDescription> {
    let index = PatternIndex::new(l.d, n, l.alphabet.clone(), cfg)?;
    let zeroed = zeroed_coordinates(l, &index)?;
    let mut polytope = build_iloc(&index);
    for &b in &zeroed {
        let mut row = vec![Rational::zero(); index.size()];
        row[b] = Rational::one();
        polytope.add_eq(row, Rational::zero());
    }
    Ok(FaceDescription { index, zeroed, polytope })
}

/// Exact feasibility of a face, with a certificate against its full H-description.
pub fn face_feasible(face: &FaceDescription) -> Result<FeasibilityCertificate> {
    let (h, kept, ineq_rows) = face.reduced();
    let cert = match lp_feasible(&h) {
        FeasibilityCertificate::Feasible { point } => FeasibilityCertificate::Feasible {
            point: face.lift(&kept, &point),
        },
        FeasibilityCertificate::Infeasible {
            eq_multipliers,
            ineq_multipliers,
        } => {
            let full = &face.polytope;
            let mut ineq = vec![Rational::zero(); full.ineq.len()];
            for (&r, y) in ineq_rows.iter().zip(ineq_multipliers) {
                ineq[r] = y;
            }
            // Each x_b = 0 row absorbs whatever the other rows leave in column b.
            let mut eq = eq_multipliers;
            for &b in &face.zeroed {
                let mut col = Rational::zero();
                for (row, y) in full.eq.iter().zip(&eq) {
                    col += &row[b] * y;
                }
                for (row, y) in full.ineq.iter().zip(&ineq) {
                    col += &row[b] * y;
                }
                eq.push(-col);
            }
            FeasibilityCertificate::Infeasible {
                eq_multipliers: eq,
                ineq_multipliers: ineq,
            }
        }
    };
    if !cert.verify(&face.polytope) {
        return Err(Error::Verification("face feasibility certificate failed to verify".into()));
    }
    Ok(cert)
}

/// Vertices of a face (zeroed coordinates are eliminated before enumeration).
pub fn face_vertices(face: &FaceDescription, cfg: &Config) -> Result<VPolytope> {
    let (h, kept, _) = face.reduced();
    let v = vertex_enumeration(&h, cfg)?;
    Ok(VPolytope::from_extreme_points(
        face.polytope.dim,
        v.vertices.iter().map(|x| face.lift(&kept, x)).collect(),
    ))
}

/// Does the d = 1 shift avoiding `l` have no points?
///
/// Windows of length `w` (the longest forbidden span) avoiding `l` form an
/// overlap graph; the shift is nonempty iff that graph has a cycle.
pub fn sft_empty_1d(l: &ForbiddenSet, cfg: &Config) -> Result<bool> {
    if l.d != 1 {
        return Err(Error::InvalidInput("one-dimensional emptiness needs d = 1".into()));
    }
    let w = l
        .patterns
        .iter()
        .map(|p| {
            let (lo, hi) = p.shape().bounding_box();
            (hi[0] - lo[0] + 1) as usize
        })
        .max()
        .unwrap_or(1);
    let lo = [0i64];
    let hi = [w as i64 - 1];
    let g = TransitionGraph::from_edge_words(l.alphabet.clone(), w - 1, cfg, |word| {
        !l.patterns.iter().any(|p| occurs_in_box(p, &lo, &hi, word))
    })?;
    Ok(!g.has_cycle())
}

/// Outcome of the bounded periodic search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusSearch {
    /// A `size x size` torus avoiding the forbidden set (row-major symbols) and
    /// the window marginal of its orbit measure.
    Found {
        size: usize,
        torus: Vec<usize>,
        measure: MeasureVector,
    },
    /// No periodic configuration with square period up to `max_size`.
    NotFound { max_size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusJson {
    pub found: bool,
    pub max_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<crate::invariance::MeasureJson>,
    pub note: String,
}

impl TorusSearch {
    pub fn to_json(&self, alphabet: &Alphabet, max_size: usize) -> TorusJson {
        match self {
            TorusSearch::Found { size, torus, measure } => TorusJson {
                found: true,
                max_size,
                size: Some(*size),
                rows: torus.chunks(*size).map(|r| alphabet.render_word(r)).collect(),
                measure: Some(measure.to_json()),
                note: format!("periodic configuration with period {size} in both directions"),
            },
            TorusSearch::NotFound { max_size } => TorusJson {
                found: false,
                max_size: *max_size,
                size: None,
                rows: Vec::new(),
                measure: None,
                note: format!("no periodic configuration up to size {max_size}; this does not show the shift is empty"),
            },
        }
    }
}

struct Placement {
    cells: Vec<usize>,
    values: Vec<usize>,
}

struct Torus<'a> {
    k: usize,
    placements: &'a [Placement],
    through: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
}

impl Torus<'_> {
    /// After assigning `c`: reject completed forbidden placements and strike
    /// the last missing value from the domain of nearly completed ones.
    fn propagate(&self, c: usize, domains: &mut [u64]) -> bool {
        for &pi in &self.through[c] {
            let p = &self.placements[pi];
            let mut open = None;
            let mut consistent = true;
            for (&cell, &v) in p.cells.iter().zip(&p.values) {
                match self.assign[cell] {
                    Some(x) if x != v => {
                        consistent = false;
                        break;
                    }
                    Some(_) => {}
                    None => match open {
                        None => open = Some((cell, v)),
                        Some((oc, ov)) if oc == cell && ov == v => {}
                        Some(_) => {
                            consistent = false;
                            break;
                        }
                    },
                }
            }
            if !consistent {
                continue;
            }
            match open {
                None => return false,
                Some((cell, v)) => {
                    domains[cell] &= !(1u64 << v);
                    if domains[cell] == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, c: usize, domains: &[u64]) -> bool {
        if c == self.assign.len() {
            return true;
        }
        for v in 0..self.k {
            if domains[c] & (1 << v) == 0 {
                continue;
            }
            self.assign[c] = Some(v);
            let mut next = domains.to_vec();
            next[c] = 1 << v;
            if self.propagate(c, &mut next) && self.search(c + 1, &next) {
                return true;
            }
        }
        self.assign[c] = None;
        false
    }
}

fn torus_solution(l: &ForbiddenSet, m: usize) -> Option<Vec<usize>> {
    let k = l.alphabet.len();
    let wrap = |x: i64| x.rem_euclid(m as i64) as usize;
    let mut placements = Vec::new();
    for p in &l.patterns {
        for a in 0..m as i64 {
            for b in 0..m as i64 {
                placements.push(Placement {
                    cells: p.shape().cells().iter().map(|c| wrap(c[0] + a) * m + wrap(c[1] + b)).collect(),
                    values: p.values().to_vec(),
                });
            }
        }
    }
    let mut through = vec![Vec::new(); m * m];
    for (i, p) in placements.iter().enumerate() {
        let cells: BTreeSet<usize> = p.cells.iter().copied().collect();
        for c in cells {
            through[c].push(i);
        }
    }
    let mut t = Torus {
        k,
        placements: &placements,
        through,
        assign: vec![None; m * m],
    };
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // Placements confined to one cell are settled before the search starts.
    let mut domains = vec![full; m * m];
    for p in &placements {
        if p.cells.iter().all(|&c| c == p.cells[0]) && p.values.iter().all(|&v| v == p.values[0]) {
            domains[p.cells[0]] &= !(1u64 << p.values[0]);
        }
    }
    if domains.contains(&0) {
        return None;
    }
    t.search(0, &domains).then(|| t.assign.iter().map(|v| v.expect("assigned")).collect())
}

/// Uniform measure on the translates of an `m x m`-periodic configuration, read on Λ_n.
pub fn torus_measure(torus: &[usize], m: usize, index: &PatternIndex) -> Result<MeasureVector> {
    if index.d() != 2 || torus.len() != m * m {
        return Err(Error::InvalidInput("torus measure needs d = 2 and an m x m array".into()));
    }
    let w = Rational::new(BigInt::one(), BigInt::from(m * m));
    let mut values = vec![Rational::zero(); index.size()];
    let wrap = |x: i64| x.rem_euclid(m as i64) as usize;
    for a in 0..m as i64 {
        for b in 0..m as i64 {
            let syms = index.window().cells().iter().map(|c| torus[wrap(c[0] + a) * m + wrap(c[1] + b)]);
            values[index.index_of_values(&syms.collect::<Vec<_>>())] += &w;
        }
    }
    MeasureVector::new(index.clone(), values)
}

/// Backtracking search for a periodic configuration avoiding `l`, trying
/// square periods `1..=max_size`.
pub fn bounded_2d_periodic_search(l: &ForbiddenSet, n: usize, max_size: usize, cfg: &Config) -> Result<TorusSearch> {
    if l.d != 2 {
        return Err(Error::InvalidInput("periodic torus search needs d = 2".into()));
    }
    if max_size > cfg.max_torus {
        return Err(Error::too_large(
            "max_torus",
            "torus side",
            max_size as u128,
            cfg.max_torus as u128,
        ));
    }
    if l.alphabet.len() > 64 {
        return Err(Error::InvalidInput("torus search supports at most 64 symbols".into()));
    }
    let index = PatternIndex::new(2, n, l.alphabet.clone(), cfg)?;
    for m in 1..=max_size {
        if let Some(torus) = torus_solution(l, m) {
            let measure = torus_measure(&torus, m, &index)?;
            return Ok(TorusSearch::Found { size: m, torus, measure });
        }
    }
    Ok(TorusSearch::NotFound { max_size })
}

/// Hard squares: no two adjacent 1s horizontally or vertically (Σ = {0,1}).
pub fn hard_squares() -> ForbiddenSet {
    let pair = |u: Cell| Pattern::from_cells(2, vec![(vec![0, 0], 1), (u, 1)]).expect("valid");
    ForbiddenSet::new(2, Alphabet::numeric(2), vec![pair(vec![0, 1]), pair(vec![1, 0])]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim1::{orbit_measure, simple_cycles, PeriodicOrbit};
    use crate::geometry::{contains, polytope_equal};
    use crate::invariance::is_locally_invariant;
    use crate::patterns::digits;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn bin() -> Alphabet {
        Alphabet::numeric(2)
    }

    fn golden() -> ForbiddenSet {
        ForbiddenSet::from_words(bin(), &["11"]).unwrap()
    }

    fn rendered(face: &FaceDescription) -> Vec<String> {
        face.zeroed.iter().map(|&i| face.index.render(i)).collect()
    }

    #[test]
    fn golden_mean_zero_set_and_vertices() {
        let cfg = Config::default();
        let face = face_of_forbidden(&golden(), 1, &cfg).unwrap();
        assert_eq!(rendered(&face), vec!["011", "110", "111"]);
        let cert = face_feasible(&face).unwrap();
        assert!(cert.is_feasible());
        let v = face_vertices(&face, &cfg).unwrap();
        let orbits: Vec<Vec<Rational>> = [vec![0], vec![0, 1], vec![0, 0, 1]]
            .into_iter()
            .map(|w| orbit_measure(&PeriodicOrbit::new(w).unwrap(), &face.index).unwrap().values().to_vec())
            .collect();
        assert!(polytope_equal(&v, &VPolytope::from_extreme_points(8, orbits)));
    }

    #[test]
    fn empty_and_full_forbidden_sets() {
        let cfg = Config::default();
        let none = ForbiddenSet::new(1, bin(), vec![]).unwrap();
        let face = face_of_forbidden(&none, 1, &cfg).unwrap();
        assert!(face.zeroed.is_empty());
        assert_eq!(face_vertices(&face, &cfg).unwrap().len(), 6);

        let index = PatternIndex::new(1, 1, bin(), &cfg).unwrap();
        let all = face_of_forbidden(&ForbiddenSet::everything(&index), 1, &cfg).unwrap();
        let cert = face_feasible(&all).unwrap();
        assert!(!cert.is_feasible());
        assert!(cert.verify(&all.polytope));
        assert!(face_vertices(&all, &cfg).unwrap().is_empty());

        let singles = ForbiddenSet::from_words(bin(), &["0", "1"]).unwrap();
        let face = face_of_forbidden(&singles, 0, &cfg).unwrap();
        assert!(!face_feasible(&face).unwrap().is_feasible());
    }

    #[test]
    fn too_large_pattern() {
        let l = ForbiddenSet::from_words(bin(), &["0110"]).unwrap();
        assert!(matches!(face_of_forbidden(&l, 1, &Config::default()), Err(Error::DoesNotFit(_))));
    }

    #[test]
    fn gapped_pattern_occurrence() {
        // 1?1 with a hole: zeroes 101 and 111 only.
        let p = Pattern::from_cells(1, vec![(vec![0], 1), (vec![2], 1)]).unwrap();
        let l = ForbiddenSet::new(1, bin(), vec![p]).unwrap();
        let face = face_of_forbidden(&l, 1, &Config::default()).unwrap();
        assert_eq!(rendered(&face), vec!["101", "111"]);
    }

    #[test]
    fn emptiness_in_one_dimension() {
        let cfg = Config::default();
        assert!(!sft_empty_1d(&golden(), &cfg).unwrap());
        assert!(sft_empty_1d(&ForbiddenSet::from_words(bin(), &["00", "11", "01"]).unwrap(), &cfg).unwrap());
        assert!(!sft_empty_1d(&ForbiddenSet::new(1, bin(), vec![]).unwrap(), &cfg).unwrap());
        assert!(sft_empty_1d(&ForbiddenSet::from_words(bin(), &["0", "1"]).unwrap(), &cfg).unwrap());
    }

    #[test]
    fn hard_squares_face_and_torus() {
        let cfg = Config::default();
        let l = hard_squares();
        let face = face_of_forbidden(&l, 1, &cfg).unwrap();
        assert!(face_feasible(&face).unwrap().is_feasible());
        let mut delta = vec![Rational::zero(); face.index.size()];
        delta[0] = Rational::one();
        assert!(face.polytope.satisfies(&delta));

        let TorusSearch::Found { size, measure, .. } = bounded_2d_periodic_search(&l, 1, 2, &cfg).unwrap() else {
            panic!("all-zero torus exists");
        };
        assert_eq!(size, 1);
        assert_eq!(measure.values(), delta.as_slice());
        assert!(is_locally_invariant(&measure, &cfg).unwrap());
        assert!(face.zeroed.iter().all(|&b| measure.value(b).is_zero()));
    }

    #[test]
    fn checkerboard_torus() {
        let cfg = Config::default();
        let mut pats = Vec::new();
        for v in 0..2 {
            for u in [vec![0, 1], vec![1, 0]] {
                pats.push(Pattern::from_cells(2, vec![(vec![0, 0], v), (u, v)]).unwrap());
            }
        }
        let l = ForbiddenSet::new(2, bin(), pats).unwrap();
        let TorusSearch::Found { size, measure, .. } = bounded_2d_periodic_search(&l, 0, 2, &cfg).unwrap() else {
            panic!("checkerboard exists");
        };
        assert_eq!(size, 2);
        assert_eq!(measure.values(), &[frac(1, 2), frac(1, 2)]);
        let TorusSearch::Found { measure, .. } = bounded_2d_periodic_search(&l, 1, 2, &cfg).unwrap() else {
            panic!("checkerboard exists");
        };
        assert!(is_locally_invariant(&measure, &cfg).unwrap());
        let face = face_of_forbidden(&l, 1, &cfg).unwrap();
        assert!(face.zeroed.iter().all(|&b| measure.value(b).is_zero()));
    }

    #[test]
    fn nothing_allowed_on_torus() {
        let cfg = Config::default();
        let p = |v| Pattern::from_cells(2, vec![(vec![0, 0], v)]).unwrap();
        let l = ForbiddenSet::new(2, bin(), vec![p(0), p(1)]).unwrap();
        assert_eq!(
            bounded_2d_periodic_search(&l, 1, 3, &cfg).unwrap(),
            TorusSearch::NotFound { max_size: 3 }
        );
        assert!(matches!(
            bounded_2d_periodic_search(&l, 1, cfg.max_torus + 1, &cfg),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let j = serde_json::to_string(&hard_squares().to_json()).unwrap();
        let back = ForbiddenSet::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, hard_squares());
        let short: ForbiddenJson = serde_json::from_str(r#"{"d":1,"alphabet":["0","1"],"words":["11"]}"#).unwrap();
        assert_eq!(ForbiddenSet::from_json(&short).unwrap(), golden());
    }

    /// Any periodic word of length <= 8 whose cyclic windows avoid `l`.
    fn has_periodic_point(l: &ForbiddenSet) -> bool {
        let k = l.alphabet().len();
        (1..=8).any(|p| {
            (0..k.pow(p as u32)).any(|w| {
                let word = digits(w, k, p);
                let long: Vec<usize> = (0..p + 8).map(|i| word[i % p]).collect();
                !l.patterns().iter().any(|pat| occurs_in_box(pat, &[0], &[long.len() as i64 - 1], &long))
            })
        })
    }

    fn word_set() -> impl Strategy<Value = Vec<String>> {
        let word = proptest::collection::vec(0u8..2, 1..=3)
            .prop_map(|w| w.iter().map(|b| char::from(b'0' + b)).collect::<String>());
        proptest::collection::vec(word, 0..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn emptiness_matches_periodic_search_and_faces(words in word_set()) {
            let cfg = Config::default();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let l = ForbiddenSet::from_words(bin(), &refs).unwrap();
            let empty = sft_empty_1d(&l, &cfg).unwrap();
            prop_assert_eq!(empty, !has_periodic_point(&l));
            for n in [1usize, 2] {
                let face = face_of_forbidden(&l, n, &cfg).unwrap();
                let cert = face_feasible(&face).unwrap();
                prop_assert_eq!(cert.is_feasible(), !empty);
            }
        }

        #[test]
        fn face_vertices_are_cycles_of_pruned_graph(words in word_set()) {
            let cfg = Config::default();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let l = ForbiddenSet::from_words(bin(), &refs).unwrap();
            let face = face_of_forbidden(&l, 1, &cfg).unwrap();
            let zero: BTreeSet<usize> = face.zeroed.iter().copied().collect();
            let g = TransitionGraph::from_edge_words(bin(), 2, &cfg, |w| {
                !zero.contains(&crate::patterns::undigits(w.iter().copied(), 2))
            }).unwrap();
            let orbits: Vec<Vec<Rational>> = simple_cycles(&g, &cfg)
                .iter()
                .map(|o| orbit_measure(o, &face.index).unwrap().values().to_vec())
                .collect();
            let v = face_vertices(&face, &cfg).unwrap();
            prop_assert!(polytope_equal(&v, &VPolytope::from_extreme_points(8, orbits)));
        }

        #[test]
        fn more_forbidden_never_enlarges(words in word_set(), extra in proptest::collection::vec(0u8..2, 1..=3)) {
            let cfg = Config::default();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let small = ForbiddenSet::from_words(bin(), &refs).unwrap();
            let big = small.clone().with_pattern(Pattern::word(0, &extra.iter().map(|&b| b as usize).collect::<Vec<_>>()).unwrap()).unwrap();
            let vs = face_vertices(&face_of_forbidden(&small, 1, &cfg).unwrap(), &cfg).unwrap();
            let vb = face_vertices(&face_of_forbidden(&big, 1, &cfg).unwrap(), &cfg).unwrap();
            for v in &vb.vertices {
                prop_assert!(contains(&vs, v));
            }
        }
    }
}
