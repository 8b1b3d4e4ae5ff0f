use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::cone_generators;
use super::lp::{solve_standard, LpOutcome};
use crate::config::{Config, Exec};
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{self, dot, mat_vec, primitive_integer, rref, solve_affine, Rational};

/// `{x : eq·x = eq_rhs, ineq·x <= ineq_rhs}` over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub eq: Vec<Vec<Rational>>,
    pub eq_rhs: Vec<Rational>,
    pub ineq: Vec<Vec<Rational>>,
    pub ineq_rhs: Vec<Rational>,
}

impl HPolytope {
    pub fn new(dim: usize) -> Self {
        HPolytope {
            dim,
            eq: Vec::new(),
            eq_rhs: Vec::new(),
            ineq: Vec::new(),
            ineq_rhs: Vec::new(),
        }
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.dim, "equality row length");
        self.eq.push(row);
        self.eq_rhs.push(rhs);
    }

    pub fn add_ineq(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.dim, "inequality row length");
        self.ineq.push(row);
        self.ineq_rhs.push(rhs);
    }

    /// Adds `x_j >= 0`.
    pub fn add_nonneg(&mut self, j: usize) {
        let mut row = vec![Rational::zero(); self.dim];
        row[j] = -Rational::one();
        self.add_ineq(row, Rational::zero());
    }

    /// The standard simplex `{x >= 0, sum x = 1}` in R^dim.
    pub fn simplex(dim: usize) -> Self {
        let mut h = HPolytope::new(dim);
        h.add_eq(vec![Rational::one(); dim], Rational::one());
        for j in 0..dim {
            h.add_nonneg(j);
        }
        h
    }

    /// Axis-aligned box `lo <= x <= hi`.
    pub fn cube(lo: &[Rational], hi: &[Rational]) -> Self {
        let dim = lo.len();
        let mut h = HPolytope::new(dim);
        for j in 0..dim {
            let mut row = vec![Rational::zero(); dim];
            row[j] = Rational::one();
            h.add_ineq(row.clone(), hi[j].clone());
            row[j] = -Rational::one();
            h.add_ineq(row, -lo[j].clone());
        }
        h
    }

    /// Exact membership test by substitution.
    pub fn satisfies(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.eq.iter().zip(&self.eq_rhs).all(|(r, b)| dot(r, x) == *b)
            && self.ineq.iter().zip(&self.ineq_rhs).all(|(r, b)| dot(r, x) <= *b)
    }

    pub fn to_json(&self) -> HPolytopeJson {
        let join = |rows: &[Vec<Rational>], rhs: &[Rational]| {
            rows.iter()
                .zip(rhs)
                .map(|(r, b)| r.iter().chain(std::iter::once(b)).map(rational::to_string).collect())
                .collect()
        };
        HPolytopeJson {
            dim: self.dim,
            eq: join(&self.eq, &self.eq_rhs),
            ineq: join(&self.ineq, &self.ineq_rhs),
        }
    }

    pub fn from_json(j: &HPolytopeJson) -> Result<Self> {
        let mut h = HPolytope::new(j.dim);
        let split = |rows: &[Vec<String>]| -> Result<Vec<(Vec<Rational>, Rational)>> {
            rows.iter()
                .map(|r| {
                    if r.len() != j.dim + 1 {
                        return Err(Error::InvalidInput(format!(
                            "constraint row has {} entries, expected dim + 1 = {}",
                            r.len(),
                            j.dim + 1
                        )));
                    }
                    let mut vals = r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
                    let rhs = vals.pop().expect("nonempty");
                    Ok((vals, rhs))
                })
                .collect()
        };
        for (r, b) in split(&j.eq)? {
            h.add_eq(r, b);
        }
        for (r, b) in split(&j.ineq)? {
            h.add_ineq(r, b);
        }
        Ok(h)
    }
}

/// Wire form: each row is the coefficient list followed by its right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytopeJson {
    pub dim: usize,
    pub eq: Vec<Vec<String>>,
    pub ineq: Vec<Vec<String>>,
}

/// Finite set of pairwise distinct, mutually extreme points, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub dim: usize,
    #[serde(with = "rational::serde_q::mat")]
    pub vertices: Vec<Vec<Rational>>,
}

impl VPolytope {
    /// Wraps points already known to be extreme; sorts and removes duplicates.
    pub fn from_extreme_points(dim: usize, mut vertices: Vec<Vec<Rational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        VPolytope { dim, vertices }
    }

    pub fn empty(dim: usize) -> Self {
        VPolytope {
            dim,
            vertices: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &[Rational]) -> bool {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).is_ok()
    }
}

/// `x -> matrix·x + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(with = "rational::serde_q::mat")]
    pub matrix: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_q::vec")]
    pub offset: Vec<Rational>,
    pub input_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Rational>>, offset: Vec<Rational>, input_dim: usize) -> Result<Self> {
        if matrix.len() != offset.len() || matrix.iter().any(|r| r.len() != input_dim) {
            return Err(Error::InvalidInput("affine map shapes are inconsistent".into()));
        }
        Ok(AffineMap {
            matrix,
            offset,
            input_dim,
        })
    }

    pub fn linear(matrix: Vec<Vec<Rational>>, input_dim: usize) -> Result<Self> {
        let m = matrix.len();
        AffineMap::new(matrix, vec![Rational::zero(); m], input_dim)
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        AffineMap::linear(matrix, dim).expect("square")
    }

    pub fn output_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, x)
            .into_iter()
            .zip(&self.offset)
            .map(|(y, o)| y + o)
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if self.input_dim != inner.output_dim() {
            return Err(Error::InvalidInput("cannot compose maps of mismatched dimension".into()));
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..inner.input_dim)
                    .map(|j| {
                        row.iter()
                            .zip(&inner.matrix)
                            .filter(|(a, _)| !a.is_zero())
                            .fold(Rational::zero(), |acc, (a, irow)| acc + a * &irow[j])
                    })
                    .collect()
            })
            .collect();
        let offset = self.apply(&inner.offset);
        AffineMap::new(matrix, offset, inner.input_dim)
    }
}

/// A feasible point, or Farkas multipliers proving `0 <= (negative number)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FeasibilityCertificate {
    Feasible {
        #[serde(with = "rational::serde_q::vec")]
        point: Vec<Rational>,
    },
    Infeasible {
        #[serde(with = "rational::serde_q::vec")]
        eq_multipliers: Vec<Rational>,
        #[serde(with = "rational::serde_q::vec")]
        ineq_multipliers: Vec<Rational>,
    },
}

impl FeasibilityCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityCertificate::Feasible { .. })
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityCertificate::Feasible { point } => Some(point),
            _ => None,
        }
    }

    /// Checks the certificate against `h` by direct substitution.
    pub fn verify(&self, h: &HPolytope) -> bool {
        match self {
            FeasibilityCertificate::Feasible { point } => h.satisfies(point),
            FeasibilityCertificate::Infeasible {
                eq_multipliers,
                ineq_multipliers,
            } => {
                if eq_multipliers.len() != h.eq.len() || ineq_multipliers.len() != h.ineq.len() {
                    return false;
                }
                if ineq_multipliers.iter().any(|y| y.is_negative()) {
                    return false;
                }
                let mut combo = vec![Rational::zero(); h.dim];
                let mut rhs = Rational::zero();
                let rows = h.eq.iter().zip(&h.eq_rhs).zip(eq_multipliers);
                let rows = rows.chain(h.ineq.iter().zip(&h.ineq_rhs).zip(ineq_multipliers));
                for ((row, b), y) in rows {
                    if y.is_zero() {
                        continue;
                    }
                    for (c, a) in combo.iter_mut().zip(row) {
                        if !a.is_zero() {
                            *c += y * a;
                        }
                    }
                    rhs += y * b;
                }
                combo.iter().all(Zero::is_zero) && rhs.is_negative()
            }
        }
    }
}

/// Standard-form image of an H-polytope: nonnegative variables where a bound row
/// `-α x_j <= 0` exists, split free variables elsewhere, slacks for other rows.
struct StandardForm {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    /// For each original variable: (positive column, optional negative column).
    columns: Vec<(usize, Option<usize>)>,
    /// Original inequality index of each slack row.
    slack_rows: Vec<usize>,
    /// Bound inequality used for each nonnegative variable.
    bound_row: Vec<Option<usize>>,
    ncols: usize,
}

fn bound_variable(row: &[Rational], rhs: &Rational) -> Option<usize> {
    if !rhs.is_zero() {
        return None;
    }
    let mut nz = row.iter().enumerate().filter(|(_, x)| !x.is_zero());
    match (nz.next(), nz.next()) {
        (Some((j, x)), None) if x.is_negative() => Some(j),
        _ => None,
    }
}

impl StandardForm {
    fn build(h: &HPolytope) -> Self {
        let mut bound_row = vec![None; h.dim];
        let mut slack_rows = Vec::new();
        for (i, (row, rhs)) in h.ineq.iter().zip(&h.ineq_rhs).enumerate() {
            match bound_variable(row, rhs) {
                Some(j) if bound_row[j].is_none() => bound_row[j] = Some(i),
                Some(_) => {}
                None => slack_rows.push(i),
            }
        }
        let mut columns = Vec::with_capacity(h.dim);
        let mut next = 0;
        for br in &bound_row {
            if br.is_some() {
                columns.push((next, None));
                next += 1;
            } else {
                columns.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let ncols = next + slack_rows.len();
        let expand = |row: &[Rational]| {
            let mut out = vec![Rational::zero(); ncols];
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (p, n) = columns[j];
                out[p] = x.clone();
                if let Some(n) = n {
                    out[n] = -x.clone();
                }
            }
            out
        };
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (row, rhs) in h.eq.iter().zip(&h.eq_rhs) {
            a.push(expand(row));
            b.push(rhs.clone());
        }
        for (s, &i) in slack_rows.iter().enumerate() {
            let mut r = expand(&h.ineq[i]);
            r[next + s] = Rational::one();
            a.push(r);
            b.push(h.ineq_rhs[i].clone());
        }
        StandardForm {
            a,
            b,
            columns,
            slack_rows,
            bound_row,
            ncols,
        }
    }

    fn original_point(&self, w: &[Rational]) -> Vec<Rational> {
        self.columns
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &w[p] - &w[n],
                None => w[p].clone(),
            })
            .collect()
    }

    fn objective(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ncols];
        for (j, x) in c.iter().enumerate() {
            let (p, n) = self.columns[j];
            out[p] = x.clone();
            if let Some(n) = n {
                out[n] = -x.clone();
            }
        }
        out
    }

    fn certificate(&self, h: &HPolytope, z: &[Rational]) -> FeasibilityCertificate {
        let neq = h.eq.len();
        let eq_multipliers = z[..neq].to_vec();
        let mut ineq_multipliers = vec![Rational::zero(); h.ineq.len()];
        for (s, &i) in self.slack_rows.iter().enumerate() {
            ineq_multipliers[i] = z[neq + s].clone();
        }
        for (j, br) in self.bound_row.iter().enumerate() {
            let Some(i) = *br else { continue };
            // Column weight zᵀA_j >= 0 is cancelled by the bound row -α x_j <= 0.
            let (p, _) = self.columns[j];
            let weight = self.a.iter().zip(z).fold(Rational::zero(), |acc, (row, zi)| acc + &row[p] * zi);
            let alpha = -h.ineq[i][j].clone();
            ineq_multipliers[i] = weight / alpha;
        }
        FeasibilityCertificate::Infeasible {
            eq_multipliers,
            ineq_multipliers,
        }
    }
}

/// Exact feasibility decision with a verifiable certificate.
pub fn lp_feasible(h: &HPolytope) -> FeasibilityCertificate {
    let sf = StandardForm::build(h);
    match solve_standard(&sf.a, &sf.b, None) {
        LpOutcome::Optimal { x, .. } => FeasibilityCertificate::Feasible {
            point: sf.original_point(&x),
        },
        LpOutcome::Infeasible { farkas } => sf.certificate(h, &farkas),
        LpOutcome::Unbounded => unreachable!("feasibility problems have no objective"),
    }
}

/// Result of optimizing a linear objective over an H-polytope.
#[derive(Debug, Clone, PartialEq)]
pub enum Optimum {
    Point { x: Vec<Rational>, value: Rational },
    Infeasible(FeasibilityCertificate),
    Unbounded,
}

/// Minimizes (or maximizes) `c·x` over `h`, returning an optimal basic point.
pub fn optimize(h: &HPolytope, c: &[Rational], maximize: bool) -> Optimum {
    let sf = StandardForm::build(h);
    let c: Vec<Rational> = if maximize { c.iter().map(|x| -x.clone()).collect() } else { c.to_vec() };
    match solve_standard(&sf.a, &sf.b, Some(&sf.objective(&c))) {
        LpOutcome::Optimal { x, .. } => {
            let x = sf.original_point(&x);
            let mut value = dot(&c, &x);
            if maximize {
                value = -value;
            }
            Optimum::Point { x, value }
        }
        LpOutcome::Infeasible { farkas } => Optimum::Infeasible(sf.certificate(h, &farkas)),
        LpOutcome::Unbounded => Optimum::Unbounded,
    }
}

/// Exact vertex set of a bounded H-polytope.
///
/// Equalities are eliminated first (`x = x0 + N z`), then double description
/// runs on the homogenized cone `{(t, z) : t >= 0, t·h - G z >= 0}`.
pub fn vertex_enumeration(h: &HPolytope, cfg: &Config) -> Result<VPolytope> {
    let Some(sol) = solve_affine(&h.eq, &h.eq_rhs, h.dim) else {
        return Ok(VPolytope::empty(h.dim));
    };
    let k = sol.basis.len();
    if k == 0 {
        let pts = if h.satisfies(&sol.particular) { vec![sol.particular] } else { vec![] };
        return Ok(VPolytope::from_extreme_points(h.dim, pts));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(h.ineq.len() + 1);
    let mut t_row = vec![BigInt::zero(); k + 1];
    t_row[0] = BigInt::one();
    rows.push(t_row);
    for (row, rhs) in h.ineq.iter().zip(&h.ineq_rhs) {
        let g: Vec<Rational> = sol.basis.iter().map(|b| dot(row, b)).collect();
        let slack = rhs - dot(row, &sol.particular);
        let mut cone_row = Vec::with_capacity(k + 1);
        cone_row.push(slack);
        cone_row.extend(g.into_iter().map(|x| -x));
        if cone_row.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(primitive_integer(&cone_row));
    }
    let gens = cone_generators(&rows, k + 1, cfg)?;
    let has_point = gens.rays.iter().any(|r| r[0].is_positive());
    if !has_point {
        return Ok(VPolytope::empty(h.dim));
    }
    if !gens.lineality.is_empty() || gens.rays.iter().any(|r| r[0].is_zero()) {
        return Err(Error::Unbounded);
    }
    let vertices = gens
        .rays
        .iter()
        .map(|r| {
            let t = Rational::from_integer(r[0].clone());
            let mut x = sol.particular.clone();
            for (zi, b) in r[1..].iter().zip(&sol.basis) {
                if zi.is_zero() {
                    continue;
                }
                let z = Rational::from_integer(zi.clone()) / &t;
                for (xj, bj) in x.iter_mut().zip(b) {
                    if !bj.is_zero() {
                        *xj += &z * bj;
                    }
                }
            }
            x
        })
        .collect();
    Ok(VPolytope::from_extreme_points(h.dim, vertices))
}

/// Is `x` a convex combination of `points`? Decided by exact LP.
pub fn in_hull(points: &[Vec<Rational>], x: &[Rational]) -> bool {
    hull_weights(points, x).is_some()
}

/// Some convex-combination weights reproducing `x`, if any exist.
pub fn hull_weights(points: &[Vec<Rational>], x: &[Rational]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let (a, b) = hull_system(points, x);
    match solve_standard(&a, &b, None) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// `[points^T; 1^T] λ = [x; 1]`.
pub(crate) fn hull_system(points: &[Vec<Rational>], x: &[Rational]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let dim = x.len();
    let mut a: Vec<Vec<Rational>> = (0..dim).map(|i| points.iter().map(|p| p[i].clone()).collect()).collect();
    a.push(vec![Rational::one(); points.len()]);
    let mut b = x.to_vec();
    b.push(Rational::one());
    (a, b)
}

/// Minimal subset of `points` with the same convex hull.
pub fn extreme_subset(points: &[Vec<Rational>], dim: usize, exec: Exec) -> VPolytope {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mean: Vec<Rational> = if pts.is_empty() {
        Vec::new()
    } else {
        let n = Rational::from_integer(BigInt::from(pts.len()));
        (0..dim).map(|j| pts.iter().map(|p| &p[j]).sum::<Rational>() / &n).collect()
    };
    let keep = par::map_range(exec, pts.len(), |i| {
        // A direction maximized only at pts[i] proves it extreme without an LP.
        let centred: Vec<Rational> = pts[i].iter().zip(&mean).map(|(x, m)| x - m).collect();
        for c in [&centred, &pts[i]] {
            let top = dot(c, &pts[i]);
            if pts.iter().enumerate().all(|(j, q)| j == i || dot(c, q) < top) {
                return true;
            }
        }
        let others: Vec<Vec<Rational>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        !in_hull(&others, &pts[i])
    });
    let vertices = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    VPolytope { dim, vertices }
}

/// Vertices of `T(P)`.
pub fn affine_image(p: &VPolytope, t: &AffineMap, exec: Exec) -> Result<VPolytope> {
    if t.input_dim != p.dim {
        return Err(Error::InvalidInput(format!(
            "map expects dimension {}, polytope has {}",
            t.input_dim, p.dim
        )));
    }
    let imgs: Vec<Vec<Rational>> = par::map(exec, &p.vertices, |v| t.apply(v));
    Ok(extreme_subset(&imgs, t.output_dim(), exec))
}

pub fn polytope_equal(p: &VPolytope, q: &VPolytope) -> bool {
    p.dim == q.dim && p.vertices == q.vertices
}

/// Exact membership in the convex hull of the vertices.
pub fn contains(p: &VPolytope, x: &[Rational]) -> bool {
    x.len() == p.dim && in_hull(&p.vertices, x)
}

/// Every vertex of `inner` lies in `outer`.
pub fn is_subset(inner: &VPolytope, outer: &VPolytope, exec: Exec) -> bool {
    inner.dim == outer.dim && par::all(exec, &inner.vertices, |v| contains(outer, v))
}

/// Affine hull of a point set: a base point and the RREF basis of directions.
pub(crate) struct AffineHull {
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn affine_hull(points: &[Vec<Rational>], dim: usize) -> AffineHull {
    let base = points[0].clone();
    let mut diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    let pivots = rref(&mut diffs, dim);
    AffineHull {
        base,
        directions: diffs,
        pivots,
    }
}

/// H-representation of the hull of a nonempty point set, via double description
/// on the polar cone inside the affine hull.
pub(crate) fn facets(points: &[Vec<Rational>], dim: usize, cfg: &Config) -> Result<HPolytope> {
    let hull = affine_hull(points, dim);
    let mut h = HPolytope::new(dim);
    for normal in rational::nullspace(&hull.directions, dim) {
        let rhs = dot(&normal, &hull.base);
        h.add_eq(normal, rhs);
    }
    let k = hull.pivots.len();
    if k == 0 {
        return Ok(h);
    }
    // In RREF, z_j = (x - base)[pivot_j] are affine coordinates on the hull.
    let coords = |x: &[Rational]| -> Vec<Rational> { hull.pivots.iter().map(|&p| &x[p] - &hull.base[p]).collect() };
    let mut rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let z = coords(p);
            let mut r = Vec::with_capacity(k + 1);
            r.push(Rational::one());
            r.extend(z.into_iter().map(|x| -x));
            primitive_integer(&r)
        })
        .collect();
    rows.sort();
    rows.dedup();
    let gens = cone_generators(&rows, k + 1, cfg)?;
    debug_assert!(gens.lineality.is_empty());
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = gens
        .rays
        .into_iter()
        .filter(|r| r[1..].iter().any(|x| !x.is_zero()))
        .map(|r| {
            // α·z <= β  ⇔  Σ α_j x_{p_j} <= β + Σ α_j base_{p_j}
            let beta = Rational::from_integer(r[0].clone());
            let mut row = vec![Rational::zero(); dim];
            let mut rhs = beta;
            for (alpha, &p) in r[1..].iter().zip(&hull.pivots) {
                let a = Rational::from_integer(alpha.clone());
                rhs += &a * &hull.base[p];
                row[p] = a;
            }
            (row, rhs)
        })
        .collect();
    ineqs.sort();
    for (row, rhs) in ineqs {
        h.add_ineq(row, rhs);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(p, q)| frac(p, q)).collect()
    }

    fn square() -> HPolytope {
        HPolytope::cube(&[int(0), int(0)], &[int(1), int(1)])
    }

    fn square_v() -> VPolytope {
        vertex_enumeration(&square(), &Config::default()).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let mut h = HPolytope::new(1);
        h.add_nonneg(0);
        h.add_ineq(vec![int(1)], int(1));
        let cert = lp_feasible(&h);
        assert!(cert.is_feasible() && cert.verify(&h));

        let mut h = HPolytope::new(1);
        h.add_ineq(vec![int(-1)], int(-1));
        h.add_ineq(vec![int(1)], int(0));
        let cert = lp_feasible(&h);
        assert!(!cert.is_feasible());
        assert!(cert.verify(&h));
    }

    #[test]
    fn infeasible_with_bounds_certificate() {
        // sum = 1 while every coordinate is forced to zero.
        let mut h = HPolytope::simplex(3);
        for j in 0..3 {
            let mut row = vec![int(0); 3];
            row[j] = int(1);
            h.add_eq(row, int(0));
        }
        let cert = lp_feasible(&h);
        assert!(!cert.is_feasible());
        assert!(cert.verify(&h));
    }

    #[test]
    fn square_and_simplex_vertices() {
        let sq = square_v();
        assert_eq!(sq.vertices, vec![v(&[(0, 1), (0, 1)]), v(&[(0, 1), (1, 1)]), v(&[(1, 1), (0, 1)]), v(&[(1, 1), (1, 1)])]);
        let simplex = vertex_enumeration(&HPolytope::simplex(3), &Config::default()).unwrap();
        assert_eq!(simplex.len(), 3);
        for vert in &simplex.vertices {
            assert_eq!(vert.iter().filter(|x| x.is_one()).count(), 1);
        }
    }

    #[test]
    fn unbounded_and_empty() {
        let mut h = HPolytope::new(2);
        h.add_nonneg(0);
        h.add_nonneg(1);
        assert_eq!(vertex_enumeration(&h, &Config::default()), Err(Error::Unbounded));
        let mut h = HPolytope::new(1);
        h.add_ineq(vec![int(-1)], int(-1));
        h.add_ineq(vec![int(1)], int(0));
        assert!(vertex_enumeration(&h, &Config::default()).unwrap().is_empty());
        // Unbounded direction inside an empty set is still reported as empty.
        let mut h = HPolytope::new(2);
        h.add_ineq(vec![int(1), int(0)], int(-1));
        h.add_nonneg(0);
        assert!(vertex_enumeration(&h, &Config::default()).unwrap().is_empty());
    }

    #[test]
    fn image_examples() {
        let sq = square_v();
        let id = AffineMap::identity(2);
        assert!(polytope_equal(&affine_image(&sq, &id, Exec::Sequential).unwrap(), &sq));
        let proj = AffineMap::linear(vec![vec![int(1), int(0)]], 2).unwrap();
        let seg = affine_image(&sq, &proj, Exec::Parallel).unwrap();
        assert_eq!(seg.vertices, vec![vec![int(0)], vec![int(1)]]);
    }

    #[test]
    fn equality_examples() {
        let sq = square_v();
        // 90° rotation about the center (1/2, 1/2).
        let rot = AffineMap::new(vec![vec![int(0), int(-1)], vec![int(1), int(0)]], vec![int(1), int(0)], 2).unwrap();
        let rotated = affine_image(&sq, &rot, Exec::Sequential).unwrap();
        assert!(polytope_equal(&sq, &rotated));
        let tri = vertex_enumeration(&HPolytope::simplex(2), &Config::default()).unwrap();
        assert!(!polytope_equal(&sq, &tri));
    }

    #[test]
    fn extreme_subset_examples() {
        let line = vec![vec![int(0)], vec![frac(1, 2)], vec![int(1)]];
        assert_eq!(extreme_subset(&line, 1, Exec::Sequential).vertices, vec![vec![int(0)], vec![int(1)]]);
        let mut sq = square_v().vertices;
        sq.push(v(&[(1, 2), (1, 2)]));
        assert_eq!(extreme_subset(&sq, 2, Exec::Parallel).len(), 4);
        let pts = vec![v(&[(1, 3), (2, 3)]), v(&[(2, 3), (1, 3)]), v(&[(1, 2), (1, 2)])];
        let ext = extreme_subset(&pts, 2, Exec::Sequential);
        assert_eq!(ext.vertices, vec![v(&[(1, 3), (2, 3)]), v(&[(2, 3), (1, 3)])]);
    }

    #[test]
    fn containment_examples() {
        let sq = square_v();
        assert!(contains(&sq, &v(&[(1, 1), (0, 1)])));
        assert!(contains(&sq, &v(&[(1, 2), (1, 2)])));
        assert!(!contains(&sq, &v(&[(2, 1), (0, 1)])));
    }

    #[test]
    fn json_forms() {
        let sq = square_v();
        let text = serde_json::to_string(&sq).unwrap();
        assert!(text.starts_with(r#"{"dim":2,"vertices":[["0/1","0/1"]"#));
        let back: VPolytope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sq);
        let h = square();
        let hj = serde_json::to_string(&h.to_json()).unwrap();
        let back = HPolytope::from_json(&serde_json::from_str(&hj).unwrap()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn facets_of_square_and_segment() {
        let sq = square_v();
        let h = facets(&sq.vertices, 2, &Config::default()).unwrap();
        assert_eq!(h.eq.len(), 0);
        assert_eq!(h.ineq.len(), 4);
        assert_eq!(vertex_enumeration(&h, &Config::default()).unwrap(), sq);
        // A segment in R^3 has two equalities and two facets.
        let seg = vec![v(&[(1, 1), (0, 1), (2, 1)]), v(&[(0, 1), (1, 1), (2, 1)])];
        let h = facets(&seg, 3, &Config::default()).unwrap();
        assert_eq!((h.eq.len(), h.ineq.len()), (2, 2));
        assert_eq!(vertex_enumeration(&h, &Config::default()).unwrap().vertices, {
            let mut s = seg.clone();
            s.sort();
            s
        });
    }

    fn small_points() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=3), 3), 1..9)
            .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(|(a, b)| frac(a, b)).collect()).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn h_v_round_trip(pts in small_points()) {
            let cfg = Config::default();
            let v = extreme_subset(&pts, 3, Exec::Sequential);
            let h = facets(&v.vertices, 3, &cfg).unwrap();
            for p in &pts {
                prop_assert!(h.satisfies(p));
            }
            prop_assert_eq!(vertex_enumeration(&h, &cfg).unwrap(), v);
        }

        #[test]
        fn image_commutes_with_convex_combinations(p in small_points(), q in small_points(), num in 0i64..=7) {
            let lam = frac(num, 7);
            let t = AffineMap::new(
                vec![vec![int(1), int(2), frac(-1, 3)], vec![int(0), int(-1), int(4)]],
                vec![frac(1, 2), int(-3)],
                3,
            ).unwrap();
            let a = &p[0];
            let b = &q[0];
            let mix: Vec<Rational> = a.iter().zip(b).map(|(x, y)| &lam * x + (int(1) - &lam) * y).collect();
            let lhs = t.apply(&mix);
            let rhs: Vec<Rational> = t.apply(a).iter().zip(t.apply(b)).map(|(x, y)| &lam * x + (int(1) - &lam) * y).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn farkas_witness_verifies(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..6), rhs in prop::collection::vec(-3i64..=3, 6)) {
            let mut h = HPolytope::new(3);
            for (r, b) in rows.iter().zip(&rhs) {
                h.add_ineq(r.iter().map(|&x| int(x)).collect(), int(*b));
            }
            h.add_eq(vec![int(1), int(1), int(1)], int(1));
            for j in 0..3 { h.add_nonneg(j); }
            let cert = lp_feasible(&h);
            prop_assert!(cert.verify(&h));
            let verts = vertex_enumeration(&h, &Config::default()).unwrap();
            prop_assert_eq!(cert.is_feasible(), !verts.is_empty());
            for vert in &verts.vertices {
                prop_assert!(h.satisfies(vert));
            }
        }
    }
}
