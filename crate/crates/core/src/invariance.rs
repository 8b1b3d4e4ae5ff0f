//! Local invariance conditions on Ω_n and the polytope of locally invariant measures.
//!
//! A constraint `(E, a, u)` states `μ([a]_n) = μ([Θ^u a]_n)`. The polytope is
//! built from the reduced family of unit shifts on maximal overlaps; the full
//! family over every sub-shape is available for auditing and is what
//! [`is_locally_invariant`] checks.

use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::geometry::HPolytope;
use crate::par;
use crate::patterns::{digits, undigits, Alphabet, Cell, Pattern, PatternIndex, Shape};
use crate::rational::{self, primitive_integer, Rational};

/// A probability vector on Ω_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureVector {
    index: PatternIndex,
    values: Vec<Rational>,
}

impl MeasureVector {
    pub fn new(index: PatternIndex, values: Vec<Rational>) -> Result<Self> {
        if values.len() != index.size() {
            return Err(Error::InvalidInput(format!(
                "measure has {} entries, Ω_n has {}",
                values.len(),
                index.size()
            )));
        }
        if let Some(i) = values.iter().position(Signed::is_negative) {
            return Err(Error::InvalidInput(format!("negative mass on pattern {}", index.render(i))));
        }
        let total: Rational = values.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidInput(format!("masses sum to {}, not 1", rational::to_string(&total))));
        }
        Ok(MeasureVector { index, values })
    }

    /// Uniform mass on the listed patterns (repeats add up).
    pub fn uniform_on(index: PatternIndex, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        let w = Rational::new(BigInt::one(), BigInt::from(support.len()));
        let mut values = vec![Rational::zero(); index.size()];
        for &i in support {
            values[i] += &w;
        }
        MeasureVector::new(index, values)
    }

    /// The i.i.d. uniform measure, `1/|Ω_n|` everywhere.
    pub fn uniform_product(index: PatternIndex) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(index.size()));
        let values = vec![w; index.size()];
        MeasureVector { index, values }
    }

    pub fn index(&self) -> &PatternIndex {
        &self.index
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    /// μ([a]_n) for a pattern on a sub-shape of Λ_n.
    pub fn cylinder_mass(&self, a: &Pattern) -> Result<Rational> {
        let members = crate::patterns::cylinder_members(a, &self.index)?;
        Ok(members.iter().map(|&i| &self.values[i]).sum())
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson {
            d: self.index.d(),
            n: self.index.n(),
            alphabet: self.index.alphabet().clone(),
            values: self.values.iter().map(rational::to_string).collect(),
            masses: None,
        }
    }

    /// Accepts either a dense `values` array in index order or a sparse `masses` map
    /// keyed by rendered patterns (words in d = 1).
    pub fn from_json(j: &MeasureJson, cfg: &Config) -> Result<Self> {
        let index = PatternIndex::new(j.d, j.n, j.alphabet.clone(), cfg)?;
        let values = match (&j.masses, j.values.is_empty()) {
            (Some(map), true) => {
                let mut values = vec![Rational::zero(); index.size()];
                for (word, mass) in map {
                    let syms = index.alphabet().parse_word(word)?;
                    if syms.len() != index.cells() {
                        return Err(Error::InvalidInput(format!("pattern {word:?} has wrong length")));
                    }
                    values[index.index_of_values(&syms)] += rational::parse(mass)?;
                }
                values
            }
            (None, false) => j.values.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?,
            _ => return Err(Error::InvalidInput("give exactly one of `values` or `masses`".into())),
        };
        MeasureVector::new(index, values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub d: usize,
    pub n: usize,
    pub alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses: Option<std::collections::BTreeMap<String, String>>,
}

/// `μ([a]_n) = μ([Θ^u a]_n)` with both sides as cylinder index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceConstraint {
    pub pattern: Pattern,
    pub shift: Cell,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl InvarianceConstraint {
    /// Dense ±1 row over Ω_n.
    pub fn row(&self, size: usize) -> Vec<Rational> {
        let mut r = vec![Rational::zero(); size];
        for &i in &self.lhs {
            r[i] += Rational::one();
        }
        for &i in &self.rhs {
            r[i] -= Rational::one();
        }
        r
    }

    pub fn holds(&self, values: &[Rational]) -> bool {
        let l: Rational = self.lhs.iter().map(|&i| &values[i]).sum();
        let r: Rational = self.rhs.iter().map(|&i| &values[i]).sum();
        l == r
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> ConstraintJson {
        ConstraintJson {
            e: self.pattern.shape().cells().to_vec(),
            a: self
                .pattern
                .values()
                .iter()
                .map(|&v| alphabet.symbol(v).to_string())
                .collect(),
            u: self.shift.clone(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
        }
    }
}

/// Audit dump entry: `{"E":…, "a":…, "u":…, "lhs":[…], "rhs":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    #[serde(rename = "E")]
    pub e: Vec<Cell>,
    pub a: Vec<String>,
    pub u: Cell,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// Positions (within Λ_n) of a cell subset given as a bit mask.
fn mask_positions(mask: u64, cells: usize) -> Vec<usize> {
    (0..cells).filter(|&p| mask & (1 << p) != 0).collect()
}

/// Groups Ω_n by the restriction to `positions`: bucket `a` lists all `b` with `b|_E = a`.
fn buckets(index: &PatternIndex, positions: &[usize]) -> Vec<Vec<usize>> {
    let k = index.k();
    let mut out = vec![Vec::new(); k.pow(positions.len() as u32)];
    for b in 0..index.size() {
        let ds = index.digits(b);
        out[undigits(positions.iter().map(|&p| ds[p]), k)].push(b);
    }
    out
}

fn constraints_for(index: &PatternIndex, e_pos: &[usize], u: &[i64]) -> Vec<InvarianceConstraint> {
    let window = index.window();
    let e_cells: Vec<Cell> = e_pos.iter().map(|&p| window.cells()[p].clone()).collect();
    let t_pos: Vec<usize> = e_cells
        .iter()
        .map(|c| window.position(&crate::patterns::sub(c, u)).expect("translate fits"))
        .collect();
    let shape = Shape::new(index.d(), e_cells).expect("nonempty");
    let lhs = buckets(index, e_pos);
    let rhs = buckets(index, &t_pos);
    lhs.into_iter()
        .zip(rhs)
        .enumerate()
        .map(|(a, (l, r))| InvarianceConstraint {
            pattern: Pattern::new(shape.clone(), digits(a, index.k(), e_pos.len())).expect("sized"),
            shift: u.to_vec(),
            lhs: l,
            rhs: r,
        })
        .collect()
}

/// Unit shifts on maximal overlaps: for each `e_i`, every pattern on
/// `Λ_n ∩ (Λ_n + e_i)` against its translate by `e_i`.
pub fn generator_constraints(index: &PatternIndex) -> Vec<InvarianceConstraint> {
    let d = index.d();
    let lo = -(index.n() as i64);
    let mut out = Vec::new();
    for i in 0..d {
        let e_pos: Vec<usize> = (0..index.cells())
            .filter(|&p| index.window().cells()[p][i] > lo)
            .collect();
        if e_pos.is_empty() {
            continue;
        }
        let mut u = vec![0i64; d];
        u[i] = 1;
        out.extend(constraints_for(index, &e_pos, &u));
    }
    out
}

/// Shifts `u != 0` with `E - u ⊆ Λ_n`, for the cell positions in `e_pos`.
fn admissible_shifts(index: &PatternIndex, e_pos: &[usize]) -> Vec<Cell> {
    let cells = index.window().cells();
    let n = index.n() as i64;
    let d = index.d();
    let (lo, hi) = {
        let shape = Shape::new(d, e_pos.iter().map(|&p| cells[p].clone()).collect()).expect("nonempty");
        shape.bounding_box()
    };
    // u_i ranges over [hi_i - n, lo_i + n].
    let ranges: Vec<(i64, i64)> = (0..d).map(|i| (hi[i] - n, lo[i] + n)).collect();
    let mut out = Vec::new();
    let mut u: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if u.iter().any(|&x| x != 0) {
            out.push(u.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if u[i] < ranges[i].1 {
                u[i] += 1;
                for j in i + 1..d {
                    u[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

fn subset_count_guard(index: &PatternIndex) -> Result<()> {
    if index.cells() > 24 {
        return Err(Error::too_large(
            "max_constraints",
            "sub-shapes of Λ_n",
            1u128 << index.cells().min(127),
            1 << 24,
        ));
    }
    Ok(())
}

/// Number of `(E, a, u)` triples in the full family (with `u != 0`).
pub fn full_constraint_count(index: &PatternIndex) -> Result<u128> {
    subset_count_guard(index)?;
    let k = index.k() as u128;
    let mut total: u128 = 0;
    for mask in 1u64..(1 << index.cells()) {
        let pos = mask_positions(mask, index.cells());
        let shifts = admissible_shifts(index, &pos).len() as u128;
        total += shifts * k.pow(pos.len() as u32);
    }
    Ok(total)
}

/// Every `(E, a, u)` with `E ⊆ Λ_n`, `a ∈ Σ^E`, `u != 0`, `E - u ⊆ Λ_n`.
pub fn full_constraints(index: &PatternIndex, cfg: &Config) -> Result<Vec<InvarianceConstraint>> {
    let count = full_constraint_count(index)?;
    if count > cfg.max_constraints as u128 {
        return Err(Error::too_large(
            "max_constraints",
            "full invariance family",
            count,
            cfg.max_constraints as u128,
        ));
    }
    let masks: Vec<u64> = (1u64..(1 << index.cells())).collect();
    Ok(par::map(cfg.exec, &masks, |&mask| {
        let pos = mask_positions(mask, index.cells());
        admissible_shifts(index, &pos)
            .into_iter()
            .flat_map(|u| constraints_for(index, &pos, &u))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect())
}

/// `I_n^loc`: normalization, nonnegativity, and the generator equations.
pub fn build_iloc(index: &PatternIndex) -> HPolytope {
    let size = index.size();
    let mut h = HPolytope::new(size);
    h.add_eq(vec![Rational::one(); size], Rational::one());
    for c in generator_constraints(index) {
        h.add_eq(c.row(size), Rational::zero());
    }
    for j in 0..size {
        h.add_nonneg(j);
    }
    h
}

/// A violated instance of the invariance condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pattern: Pattern,
    pub shift: Cell,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "E = {:?}, a = {:?}, u = {:?}: μ([a]) = {} but μ([Θ^u a]) = {}",
            self.pattern.shape().cells(),
            self.pattern.values(),
            self.shift,
            self.lhs,
            self.rhs
        )
    }
}

/// Checks every `(E, a, u)` condition by comparing marginals: for each
/// sub-shape `E`, the marginal on `E` must equal the marginal on every
/// translate of `E` that stays inside the window. Works for any exact
/// additive value type.
pub fn first_violation<T>(index: &PatternIndex, values: &[T], cfg: &Config) -> Result<Option<Violation>>
where
    T: Clone + Zero + PartialEq + std::fmt::Display + Send + Sync + for<'a> AddAssign<&'a T>,
{
    subset_count_guard(index)?;
    let cells = index.cells();
    let k = index.k();
    let n = index.n() as i64;
    let window = index.window();
    let table: Vec<Vec<usize>> = (0..index.size()).map(|b| index.digits(b)).collect();
    let masks: Vec<u64> = (1u64..(1 << cells)).collect();

    let marginal = |mask: u64| -> Vec<T> {
        let pos = mask_positions(mask, cells);
        let mut m = vec![T::zero(); k.pow(pos.len() as u32)];
        for (b, ds) in table.iter().enumerate() {
            m[undigits(pos.iter().map(|&p| ds[p]), k)] += &values[b];
        }
        m
    };
    // Representative of a translation class: the translate pushed to the low corner.
    let corner = |mask: u64| -> (u64, Cell) {
        let pos = mask_positions(mask, cells);
        let shape = Shape::new(index.d(), pos.iter().map(|&p| window.cells()[p].clone()).collect()).expect("nonempty");
        let (lo, _) = shape.bounding_box();
        let u: Cell = lo.iter().map(|&x| x + n).collect();
        let rep = pos.iter().fold(0u64, |acc, &p| {
            let c = crate::patterns::sub(&window.cells()[p], &u);
            acc | 1 << window.position(&c).expect("fits")
        });
        (rep, u)
    };

    let found = par::map(cfg.exec, &masks, |&mask| {
        let (rep, u) = corner(mask);
        if rep == mask {
            return None;
        }
        // Constraint (E = mask, a, u): compare E's marginal with that of E - u.
        let here = marginal(mask);
        let there = marginal(rep);
        let a = (0..here.len()).find(|&i| here[i] != there[i])?;
        let pos = mask_positions(mask, cells);
        let shape = Shape::new(index.d(), pos.iter().map(|&p| window.cells()[p].clone()).collect()).expect("nonempty");
        Some(Violation {
            pattern: Pattern::new(shape, digits(a, k, pos.len())).expect("sized"),
            shift: u,
            lhs: here[a].to_string(),
            rhs: there[a].to_string(),
        })
    });
    Ok(found.into_iter().flatten().next())
}

/// Exact check of the full local invariance family.
pub fn is_locally_invariant(mu: &MeasureVector, cfg: &Config) -> Result<bool> {
    Ok(first_violation(mu.index(), mu.values(), cfg)?.is_none())
}

/// Outcome of comparing the reduced and full invariance families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub d: usize,
    pub n: usize,
    pub alphabet_size: usize,
    pub variables: usize,
    pub generator_equations: usize,
    pub full_equations: u128,
    pub generator_rank: usize,
    /// Rank of the full family; computed directly when it is small, otherwise
    /// implied by the null-space check.
    pub full_rank: usize,
    pub full_rank_direct: bool,
    pub equivalent: bool,
}

/// Decides whether the generator family spans the same equations as the full family.
///
/// Every basis vector of the generator null space must satisfy every full
/// constraint; that is exactly `rowspace(full) ⊆ rowspace(generators)`.
pub fn generator_equivalence(index: &PatternIndex, cfg: &Config) -> Result<EquivalenceReport> {
    let size = index.size();
    let gens = generator_constraints(index);
    let rows: Vec<Vec<Rational>> = gens.iter().map(|c| c.row(size)).collect();
    let null = rational::nullspace(&rows, size);
    let generator_rank = size - null.len();
    let full_equations = full_constraint_count(index)?;

    let checks = par::map(cfg.exec, &null, |v| -> Result<bool> {
        let ints = primitive_integer(v);
        let small: Option<Vec<i128>> = ints.iter().map(ToPrimitive::to_i128).collect();
        let fits = small.as_ref().is_some_and(|s| s.iter().all(|x| x.unsigned_abs() < (1u128 << 100) / size as u128));
        let seq = Config {
            exec: crate::Exec::Sequential,
            ..cfg.clone()
        };
        Ok(match (fits, small) {
            (true, Some(s)) => first_violation(index, &s, &seq)?.is_none(),
            _ => first_violation(index, v, &seq)?.is_none(),
        })
    });
    let mut equivalent = true;
    for c in checks {
        equivalent &= c?;
    }

    let (full_rank, full_rank_direct) = if full_equations <= 4096 {
        let all = full_constraints(index, cfg)?;
        let full_rows: Vec<Vec<Rational>> = all.iter().map(|c| c.row(size)).collect();
        (rational::rank(&full_rows, size), true)
    } else if equivalent {
        (generator_rank, false)
    } else {
        // Not equivalent and too large to rank directly; report a lower bound.
        (generator_rank + 1, false)
    };

    Ok(EquivalenceReport {
        d: index.d(),
        n: index.n(),
        alphabet_size: index.k(),
        variables: size,
        generator_equations: gens.len(),
        full_equations,
        generator_rank,
        full_rank,
        full_rank_direct,
        equivalent: equivalent && full_rank == generator_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lp_feasible, vertex_enumeration};
    use crate::rational::frac;

    fn idx(d: usize, n: usize, k: usize) -> PatternIndex {
        PatternIndex::new(d, n, Alphabet::numeric(k), &Config::default()).unwrap()
    }

    fn words(index: &PatternIndex, is: &[usize]) -> Vec<String> {
        is.iter().map(|&i| index.render(i)).collect()
    }

    #[test]
    fn generator_family_d1() {
        let index = idx(1, 1, 2);
        let gens = generator_constraints(&index);
        assert_eq!(gens.len(), 4);
        // a on {0,1}: lhs sums x_{c w}, rhs (translate to {-1,0}) sums x_{w c}.
        let c = &gens[1]; // a = 01
        assert_eq!(c.pattern.shape().cells(), &[vec![0], vec![1]]);
        assert_eq!(c.shift, vec![1]);
        assert_eq!(words(&index, &c.lhs), vec!["001", "101"]);
        assert_eq!(words(&index, &c.rhs), vec!["010", "011"]);
        let rows: Vec<_> = gens.iter().map(|c| c.row(8)).collect();
        assert_eq!(rational::rank(&rows, 8), 3);
    }

    #[test]
    fn generator_family_d2_count() {
        assert_eq!(generator_constraints(&idx(2, 1, 2)).len(), 128);
        assert!(generator_constraints(&idx(1, 0, 3)).is_empty());
    }

    #[test]
    fn full_family_contains_single_cell_and_generators() {
        let index = idx(1, 1, 2);
        let full = full_constraints(&index, &Config::default()).unwrap();
        assert_eq!(full.len() as u128, full_constraint_count(&index).unwrap());
        let single = full
            .iter()
            .find(|c| c.pattern.shape().cells() == [vec![0]] && c.pattern.values() == [1] && c.shift == vec![1])
            .expect("single-cell constraint present");
        // μ(1 at 0) = μ(1 at -1).
        assert_eq!(words(&index, &single.lhs), vec!["010", "011", "110", "111"]);
        assert_eq!(words(&index, &single.rhs), vec!["100", "101", "110", "111"]);
        for g in generator_constraints(&index) {
            assert!(full.contains(&g));
        }
    }

    #[test]
    fn full_family_cap() {
        let cfg = Config {
            max_constraints: 10,
            ..Config::default()
        };
        assert!(matches!(full_constraints(&idx(1, 1, 2), &cfg), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn iloc_shapes_and_dimension() {
        let cfg = Config::default();
        let h0 = build_iloc(&idx(1, 0, 3));
        assert_eq!(h0.eq.len(), 1);
        assert_eq!(vertex_enumeration(&h0, &cfg).unwrap().len(), 3);

        let index = idx(1, 1, 2);
        let h = build_iloc(&index);
        let v = vertex_enumeration(&h, &cfg).unwrap();
        // Affine dimension of the vertex set.
        let base = &v.vertices[0];
        let diffs: Vec<Vec<Rational>> = v.vertices[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        assert_eq!(rational::rank(&diffs, 8), 4);
        assert_eq!(8 - rational::rank(&h.eq, 8), 4);
    }

    #[test]
    fn uniform_product_feasible_everywhere() {
        for (d, n, k) in [(1, 0, 2), (1, 1, 3), (1, 2, 2), (2, 1, 2)] {
            let index = idx(d, n, k);
            let h = build_iloc(&index);
            let mu = MeasureVector::uniform_product(index);
            assert!(h.satisfies(mu.values()));
            assert!(is_locally_invariant(&mu, &Config::default()).unwrap());
        }
        assert!(lp_feasible(&build_iloc(&idx(2, 1, 2))).is_feasible());
    }

    #[test]
    fn invariance_examples() {
        let cfg = Config::default();
        let index = idx(1, 1, 2);
        let delta = MeasureVector::uniform_on(index.clone(), &[0b010]).unwrap();
        let v = first_violation(&index, delta.values(), &cfg).unwrap().expect("violation");
        assert_eq!(v.pattern.shape().len(), 1);
        assert!(!is_locally_invariant(&delta, &cfg).unwrap());
        let orbit = MeasureVector::uniform_on(index, &[0b001, 0b010, 0b100]).unwrap();
        assert!(is_locally_invariant(&orbit, &cfg).unwrap());
    }

    #[test]
    fn marginal_check_agrees_with_explicit_family() {
        let cfg = Config::default();
        let index = idx(1, 1, 2);
        let full = full_constraints(&index, &cfg).unwrap();
        let candidates = [
            vec![frac(1, 3), frac(0, 1), frac(1, 3), frac(0, 1), frac(1, 3), frac(0, 1), frac(0, 1), frac(0, 1)],
            vec![frac(1, 4), frac(1, 8), frac(1, 8), frac(0, 1), frac(1, 8), frac(1, 8), frac(0, 1), frac(1, 4)],
            vec![frac(1, 2), frac(1, 8), frac(1, 8), frac(0, 1), frac(0, 1), frac(1, 8), frac(1, 8), frac(0, 1)],
        ];
        for c in candidates {
            let by_family = full.iter().all(|k| k.holds(&c));
            let by_marginals = first_violation(&index, &c, &cfg).unwrap().is_none();
            assert_eq!(by_family, by_marginals);
        }
    }

    #[test]
    fn equivalence_small_cases() {
        let cfg = Config::default();
        for (d, k) in [(1, 2), (1, 3)] {
            let r = generator_equivalence(&idx(d, 1, k), &cfg).unwrap();
            assert!(r.full_rank_direct);
            assert!(r.equivalent, "{r:?}");
            assert_eq!(r.generator_rank, k * k - 1);
        }
    }

    #[test]
    fn measure_json_forms() {
        let cfg = Config::default();
        let index = idx(1, 1, 2);
        let mu = MeasureVector::uniform_on(index, &[1, 2, 4]).unwrap();
        let j = mu.to_json();
        let back = MeasureVector::from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap(), &cfg).unwrap();
        assert_eq!(back, mu);
        let sparse: MeasureJson = serde_json::from_str(
            r#"{"d":1,"n":1,"alphabet":["0","1"],"masses":{"001":"1/3","010":"1/3","100":"1/3"}}"#,
        )
        .unwrap();
        assert_eq!(MeasureVector::from_json(&sparse, &cfg).unwrap(), mu);
        let bad: MeasureJson =
            serde_json::from_str(r#"{"d":1,"n":0,"alphabet":["0","1"],"values":["1/2","1/3"]}"#).unwrap();
        assert!(MeasureVector::from_json(&bad, &cfg).is_err());
    }
}
