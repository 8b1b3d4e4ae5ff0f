//! Tile frequencies of primitive substitutions from their count matrices.
//!
//! Frequencies are the normalized Perron eigenvector. When the Perron root
//! is an integer or a quadratic irrational the vector is computed exactly in
//! Q(√d); otherwise it is bracketed by rational intervals.

mod quadratic;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use quadratic::QuadraticNumber;

use crate::error::{Error, Result};
use crate::rational::{self, solve_affine, Rational};

/// Types and count matrix: `m[i][j]` tiles of type `i` inside an inflated tile of type `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionSystem {
    types: Vec<String>,
    m: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub types: Vec<String>,
    #[serde(rename = "M")]
    pub m: Vec<Vec<u64>>,
}

/// Some power of `m` is strictly positive (checked up to Wielandt's bound).
pub fn is_primitive(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    let base: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = base.clone();
    for _ in 0..(n - 1) * (n - 1) + 1 {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| p[i][k] && base[k][j])).collect())
            .collect();
    }
    p.iter().all(|r| r.iter().all(|&x| x))
}

impl SubstitutionSystem {
    pub fn new(types: Vec<String>, m: Vec<Vec<u64>>) -> Result<Self> {
        let n = types.len();
        if n == 0 || m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("count matrix must be square with one row per type".into()));
        }
        for (i, t) in types.iter().enumerate() {
            if types[..i].contains(t) {
                return Err(Error::InvalidInput(format!("duplicate type {t:?}")));
            }
        }
        if !is_primitive(&m) {
            return Err(Error::NotPrimitive);
        }
        Ok(SubstitutionSystem { types, m })
    }

    /// Robinson triangles: fat and thin.
    pub fn penrose_robinson() -> Self {
        SubstitutionSystem::new(vec!["fat".into(), "thin".into()], vec![vec![2, 1], vec![1, 1]]).expect("primitive")
    }

    pub fn fibonacci() -> Self {
        SubstitutionSystem::new(vec!["a".into(), "b".into()], vec![vec![1, 1], vec![1, 0]]).expect("primitive")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "penrose-robinson" | "penrose" => Ok(Self::penrose_robinson()),
            "fibonacci" => Ok(Self::fibonacci()),
            other => Err(Error::InvalidInput(format!("unknown preset {other:?}"))),
        }
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.m
    }

    pub fn type_index(&self, name: &str) -> Result<usize> {
        self.types
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown tile type {name:?}")))
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            types: self.types.clone(),
            m: self.m.clone(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        SubstitutionSystem::new(j.types.clone(), j.m.clone())
    }

    fn shifted(&self, t: &Rational) -> Vec<Vec<Rational>> {
        let n = self.m.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = -Rational::from_integer(BigInt::from(self.m[i][j]));
                        if i == j {
                            e + t
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        let piv = a[c][c].clone();
        acc *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            let pivot_row = a[c].clone();
            for (x, p) in a[r][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * p;
            }
        }
    }
    acc
}

/// Coefficients (constant term first) of the polynomial of degree `<= degree` through `f(0), ..., f(degree)`.
fn interpolate(degree: usize, f: impl Fn(&Rational) -> Rational) -> Vec<Rational> {
    let pts: Vec<Rational> = (0..=degree).map(|t| rational::int(t as i64)).collect();
    let rows: Vec<Vec<Rational>> = pts
        .iter()
        .map(|t| (0..=degree).map(|e| num_traits::pow(t.clone(), e)).collect())
        .collect();
    let vals: Vec<Rational> = pts.iter().map(f).collect();
    solve_affine(&rows, &vals, degree + 1).expect("Vandermonde is invertible").particular
}

/// `det(tI - M)` with integer coefficients, constant term first.
pub fn characteristic_polynomial(s: &SubstitutionSystem) -> Vec<BigInt> {
    interpolate(s.m.len(), |t| det(s.shifted(t)))
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

fn eval(poly: &[Rational], t: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// `t > ρ(M)` iff every leading principal minor of `tI - M` is positive.
fn above_perron_root(s: &SubstitutionSystem, t: &Rational) -> bool {
    let a = s.shifted(t);
    (1..=a.len()).all(|k| det(a[..k].iter().map(|r| r[..k].to_vec()).collect()).is_positive())
}

/// Closed rational interval containing ρ(M), of width at most `width`.
fn perron_bracket(s: &SubstitutionSystem, lo: Rational, hi: Rational, width: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo, hi);
    let two = rational::int(2);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if above_perron_root(s, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

fn initial_bracket(s: &SubstitutionSystem) -> (Rational, Rational) {
    let sums: Vec<u64> = s.m.iter().map(|r| r.iter().sum()).collect();
    let lo = rational::int(*sums.iter().min().expect("nonempty") as i64);
    let hi = rational::int(*sums.iter().max().expect("nonempty") as i64);
    (lo, hi)
}

/// Exact frequencies, or certified intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerronData {
    Exact {
        root: QuadraticNumber,
        frequencies: Vec<QuadraticNumber>,
    },
    Interval {
        root: (Rational, Rational),
        frequencies: Vec<(Rational, Rational)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrequencyMode {
    /// Exact when the Perron root is at most quadratic, intervals otherwise.
    #[default]
    Auto,
    Exact,
    Interval,
}

/// Kernel vector of a square matrix of corank one over Q(√d).
fn kernel_vector(mut a: Vec<Vec<QuadraticNumber>>) -> Option<Vec<QuadraticNumber>> {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip().expect("nonzero");
        a[row] = a[row].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![QuadraticNumber::from_int(0); n];
    v[free] = QuadraticNumber::from_int(1);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -&a[r][free];
    }
    Some(v)
}

/// If `r` has a positive eigenvector, the normalized vector; that makes `r` the Perron root.
fn positive_eigenvector(s: &SubstitutionSystem, r: &QuadraticNumber) -> Option<Vec<QuadraticNumber>> {
    let n = s.m.len();
    let entry = |i: usize, j: usize| QuadraticNumber::from_int(s.m[i][j] as i64);
    let a: Vec<Vec<QuadraticNumber>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { r - &entry(i, j) } else { -entry(i, j) })
                .collect()
        })
        .collect();
    let v = kernel_vector(a)?;
    let total = v.iter().fold(QuadraticNumber::from_int(0), |acc, x| &acc + x);
    if total.is_zero() {
        return None;
    }
    let v: Vec<QuadraticNumber> = v.iter().map(|x| x / &total).collect();
    if v.iter().any(|x| x.signum() <= 0) {
        return None;
    }
    let image_ok = (0..n).all(|i| {
        let mv = (0..n).fold(QuadraticNumber::from_int(0), |acc, j| &acc + &(&entry(i, j) * &v[j]));
        mv == r * &v[i]
    });
    image_ok.then_some(v)
}

fn divides_poly(poly: &[BigInt], s: &BigInt, p: &BigInt) -> bool {
    // Synthetic division by x² - s x + p (monic), highest degree first.
    let mut rem: Vec<BigInt> = poly.iter().rev().cloned().collect();
    if rem.len() < 3 {
        return false;
    }
    for i in 0..rem.len() - 2 {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        rem[i + 1] += &c * s;
        rem[i + 2] -= &c * p;
    }
    rem[rem.len() - 2..].iter().all(Zero::is_zero)
}

fn exact_frequencies(s: &SubstitutionSystem) -> Result<PerronData> {
    let (lo0, hi0) = initial_bracket(s);
    let (lo, hi) = perron_bracket(s, lo0, hi0, &rational::frac(1, 1_000_000));
    let poly = characteristic_polynomial(s);
    let poly_q: Vec<Rational> = poly.iter().cloned().map(Rational::from_integer).collect();

    // Integer root.
    let mut t = lo.ceil();
    while t <= hi {
        if eval(&poly_q, &t).is_zero() {
            let r = QuadraticNumber::rational(t.clone());
            if let Some(frequencies) = positive_eigenvector(s, &r) {
                return Ok(PerronData::Exact { root: r, frequencies });
            }
        }
        t += Rational::one();
    }

    // Quadratic root (s + √(s² - 4p))/2 of a factor x² - s x + p; the
    // conjugate is another eigenvalue, so s lies in [0, 2ρ].
    let hi_s = (&hi * rational::int(2)).ceil().to_integer();
    let mut sum = BigInt::zero();
    while sum <= hi_s {
        let sq = Rational::from_integer(sum.clone());
        let g = |x: &Rational| &sq * x - x * x;
        let mut cands = vec![g(&lo), g(&hi)];
        let vertex = &sq / rational::int(2);
        if vertex >= lo && vertex <= hi {
            cands.push(g(&vertex));
        }
        let pmin = cands.iter().min().expect("nonempty").floor().to_integer();
        let pmax = cands.iter().max().expect("nonempty").ceil().to_integer();
        let mut prod = pmin;
        while prod <= pmax {
            let disc = &sum * &sum - BigInt::from(4) * &prod;
            if disc.is_positive() && divides_poly(&poly, &sum, &prod) {
                let r = QuadraticNumber::new(
                    Rational::new(sum.clone(), BigInt::from(2)),
                    rational::frac(1, 2),
                    disc,
                )?;
                if !r.is_rational() && r.within(&lo, &hi) {
                    if let Some(frequencies) = positive_eigenvector(s, &r) {
                        return Ok(PerronData::Exact { root: r, frequencies });
                    }
                }
            }
            prod += 1;
        }
        sum += 1;
    }
    Err(Error::DegreeTooHigh)
}

/// Entries of the first column of `adj(tI - M)` as polynomials in `t`.
fn adjugate_column(s: &SubstitutionSystem) -> Vec<Vec<Rational>> {
    let n = s.m.len();
    (0..n)
        .map(|i| {
            interpolate(n.saturating_sub(1), |t| {
                if n == 1 {
                    return Rational::one();
                }
                let a = s.shifted(t);
                let minor: Vec<Vec<Rational>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect())
                    .collect();
                let d = det(minor);
                if i % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
        })
        .collect()
}

/// Range of a polynomial over `[lo, hi]` by interval Horner evaluation.
fn eval_interval(poly: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in poly.iter().rev() {
        let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let min = prods.iter().min().expect("four").clone();
        let max = prods.iter().max().expect("four").clone();
        acc = (min + c, max + c);
    }
    acc
}

/// Bracket the root, evaluate the adjugate column on the bracket, and shrink
/// until every ratio `q_i / q_j` requested fits in `tolerance`.
fn interval_data(
    s: &SubstitutionSystem,
    tolerance: &Rational,
    ratio: Option<(usize, usize)>,
) -> Result<(PerronData, Option<(Rational, Rational)>)> {
    let cols = adjugate_column(s);
    let n = cols.len();
    let mut total = vec![Rational::zero(); n.max(1)];
    for p in &cols {
        for (t, c) in total.iter_mut().zip(p) {
            *t += c;
        }
    }
    let (mut lo, mut hi) = initial_bracket(s);
    let mut width = rational::frac(1, 1000);
    for _ in 0..40 {
        (lo, hi) = perron_bracket(s, lo, hi, &width);
        let qs: Vec<(Rational, Rational)> = cols.iter().map(|p| eval_interval(p, &lo, &hi)).collect();
        let sum = eval_interval(&total, &lo, &hi);
        if qs.iter().all(|q| q.0.is_positive()) && sum.0.is_positive() {
            let freqs: Vec<(Rational, Rational)> = qs.iter().map(|q| (&q.0 / &sum.1, &q.1 / &sum.0)).collect();
            let r = ratio.map(|(i, j)| (&qs[i].0 / &qs[j].1, &qs[i].1 / &qs[j].0));
            let tight = freqs.iter().all(|f| &(&f.1 - &f.0) <= tolerance)
                && r.as_ref().is_none_or(|r| &(&r.1 - &r.0) <= tolerance);
            if tight {
                return Ok((
                    PerronData::Interval {
                        root: (lo, hi),
                        frequencies: freqs,
                    },
                    r,
                ));
            }
        }
        width /= rational::int(1000);
    }
    Err(Error::Verification("interval refinement did not converge".into()))
}

fn tolerance() -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12))
}

/// Normalized Perron eigenvector of the count matrix.
pub fn perron_frequencies(s: &SubstitutionSystem, mode: FrequencyMode) -> Result<PerronData> {
    match mode {
        FrequencyMode::Exact => exact_frequencies(s),
        FrequencyMode::Interval => Ok(interval_data(s, &tolerance(), None)?.0),
        FrequencyMode::Auto => match exact_frequencies(s) {
            Err(Error::DegreeTooHigh) => Ok(interval_data(s, &tolerance(), None)?.0),
            other => other,
        },
    }
}

/// `ν(i) / ν(j)`, exact or bracketed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrequencyRatio {
    Exact(QuadraticNumber),
    Interval(Rational, Rational),
}

pub fn frequency_ratio(s: &SubstitutionSystem, i: usize, j: usize, mode: FrequencyMode) -> Result<FrequencyRatio> {
    let n = s.m.len();
    if i >= n || j >= n {
        return Err(Error::InvalidInput("tile type index out of range".into()));
    }
    if i == j {
        return Ok(FrequencyRatio::Exact(QuadraticNumber::from_int(1)));
    }
    let interval = || -> Result<FrequencyRatio> {
        let (_, r) = interval_data(s, &tolerance(), Some((i, j)))?;
        let (lo, hi) = r.expect("requested");
        Ok(FrequencyRatio::Interval(lo, hi))
    };
    match mode {
        FrequencyMode::Interval => interval(),
        _ => match exact_frequencies(s) {
            Ok(PerronData::Exact { frequencies, .. }) => Ok(FrequencyRatio::Exact(&frequencies[i] / &frequencies[j])),
            Ok(PerronData::Interval { .. }) => unreachable!("exact search returns exact data"),
            Err(Error::DegreeTooHigh) if mode == FrequencyMode::Auto => interval(),
            Err(e) => Err(e),
        },
    }
}

/// `[M·seed, M²·seed, ..., M^k·seed]`.
pub fn iterate_counts(s: &SubstitutionSystem, seed: &[BigInt], k: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = s.m.len();
    if seed.len() != n || seed.iter().any(Signed::is_negative) || seed.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("seed must be a nonzero nonnegative vector of the right length".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("need at least one iteration".into()));
    }
    let mut out = Vec::with_capacity(k);
    let mut v = seed.to_vec();
    for _ in 0..k {
        v = (0..n)
            .map(|i| (0..n).fold(BigInt::zero(), |acc, j| acc + BigInt::from(s.m[i][j]) * &v[j]))
            .collect();
        out.push(v.clone());
    }
    Ok(out)
}

/// Exact irrationality: the √d part survives reduction.
pub fn certify_irrational(x: &QuadraticNumber) -> bool {
    !x.is_rational()
}

/// A number as exact text (when available), decimal, and bracket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub decimal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
}

impl NumberJson {
    pub fn exact(x: &QuadraticNumber) -> Self {
        NumberJson {
            exact: Some(x.render()),
            decimal: x.to_decimal(15),
            lo: None,
            hi: None,
        }
    }

    pub fn interval(lo: &Rational, hi: &Rational) -> Self {
        NumberJson {
            exact: None,
            decimal: rational::to_decimal(&((lo + hi) / rational::int(2)), 15),
            lo: Some(rational::to_string(lo)),
            hi: Some(rational::to_string(hi)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub numerator: String,
    pub denominator: String,
    pub value: NumberJson,
    pub irrational: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyReport {
    pub system: SystemJson,
    pub mode: String,
    pub perron_root: NumberJson,
    pub frequencies: Vec<(String, NumberJson)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RatioJson>,
}

/// Frequencies and, if requested, one ratio, in wire form.
pub fn frequency_report(
    s: &SubstitutionSystem,
    mode: FrequencyMode,
    ratio: Option<(usize, usize)>,
) -> Result<FrequencyReport> {
    let data = perron_frequencies(s, mode)?;
    let (mode_name, root, freqs) = match &data {
        PerronData::Exact { root, frequencies } => (
            "exact",
            NumberJson::exact(root),
            frequencies.iter().map(NumberJson::exact).collect::<Vec<_>>(),
        ),
        PerronData::Interval { root, frequencies } => (
            "interval",
            NumberJson::interval(&root.0, &root.1),
            frequencies.iter().map(|(a, b)| NumberJson::interval(a, b)).collect(),
        ),
    };
    let ratio = match ratio {
        None => None,
        Some((i, j)) => {
            let mode = if mode_name == "exact" { FrequencyMode::Exact } else { FrequencyMode::Interval };
            let r = frequency_ratio(s, i, j, mode)?;
            let (value, irrational) = match &r {
                FrequencyRatio::Exact(x) => (NumberJson::exact(x), certify_irrational(x)),
                FrequencyRatio::Interval(lo, hi) => (NumberJson::interval(lo, hi), false),
            };
            Some(RatioJson {
                numerator: s.types[i].clone(),
                denominator: s.types[j].clone(),
                value,
                irrational,
            })
        }
    };
    Ok(FrequencyReport {
        system: s.to_json(),
        mode: mode_name.into(),
        perron_root: root,
        frequencies: s.types.iter().cloned().zip(freqs).collect(),
        ratio,
    })
}

/// `|x_i / x_j - target|` for an integer count vector, exactly.
pub fn ratio_error(counts: &[BigInt], i: usize, j: usize, target: &QuadraticNumber) -> Option<QuadraticNumber> {
    if counts[j].is_zero() {
        return None;
    }
    let r = QuadraticNumber::rational(Rational::new(counts[i].clone(), counts[j].clone()));
    Some((&r - target).abs())
}

/// `x < bound`, exactly.
pub fn below(x: &QuadraticNumber, bound: &Rational) -> bool {
    x < &QuadraticNumber::rational(bound.clone())
}

impl FrequencyRatio {
    pub fn as_f64(&self) -> f64 {
        match self {
            FrequencyRatio::Exact(x) => x.to_f64(),
            FrequencyRatio::Interval(lo, hi) => ((lo + hi) / rational::int(2)).to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn phi() -> QuadraticNumber {
        QuadraticNumber::new(frac(1, 2), frac(1, 2), BigInt::from(5)).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[vec![2, 1], vec![1, 1]]));
        assert!(is_primitive(&[vec![1, 1], vec![1, 0]]));
        assert!(!is_primitive(&[vec![0, 1], vec![1, 0]]));
        assert!(!is_primitive(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(
            SubstitutionSystem::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn characteristic_polynomials() {
        let p = characteristic_polynomial(&SubstitutionSystem::penrose_robinson());
        assert_eq!(p, big(&[1, -3, 1]));
        let f = characteristic_polynomial(&SubstitutionSystem::fibonacci());
        assert_eq!(f, big(&[-1, -1, 1]));
    }

    #[test]
    fn trivial_system() {
        let s = SubstitutionSystem::new(vec!["x".into()], vec![vec![1]]).unwrap();
        let PerronData::Exact { root, frequencies } = perron_frequencies(&s, FrequencyMode::Auto).unwrap() else {
            panic!("exact expected");
        };
        assert_eq!(root, QuadraticNumber::from_int(1));
        assert_eq!(frequencies, vec![QuadraticNumber::from_int(1)]);
    }

    #[test]
    fn penrose_frequencies() {
        let s = SubstitutionSystem::penrose_robinson();
        let PerronData::Exact { root, frequencies } = perron_frequencies(&s, FrequencyMode::Exact).unwrap() else {
            panic!("exact expected");
        };
        let p = phi();
        assert_eq!(root, &p * &p);
        let one = QuadraticNumber::from_int(1);
        let denom = &one + &p;
        assert_eq!(frequencies, vec![&p / &denom, &one / &denom]);
        let FrequencyRatio::Exact(r) = frequency_ratio(&s, 0, 1, FrequencyMode::Auto).unwrap() else {
            panic!("exact expected");
        };
        assert_eq!(r, p);
        assert_eq!(r.render(), "(1+1*sqrt(5))/2");
        assert!(certify_irrational(&r));
        assert_eq!(frequency_ratio(&s, 1, 1, FrequencyMode::Auto).unwrap(), FrequencyRatio::Exact(one));
    }

    #[test]
    fn fibonacci_ratio() {
        let s = SubstitutionSystem::fibonacci();
        assert_eq!(frequency_ratio(&s, 0, 1, FrequencyMode::Exact).unwrap(), FrequencyRatio::Exact(phi()));
    }

    #[test]
    fn eigen_equation_holds() {
        for s in [SubstitutionSystem::penrose_robinson(), SubstitutionSystem::fibonacci()] {
            let PerronData::Exact { root, frequencies } = perron_frequencies(&s, FrequencyMode::Exact).unwrap() else {
                panic!("exact expected");
            };
            let n = frequencies.len();
            let total = frequencies.iter().fold(QuadraticNumber::from_int(0), |a, x| &a + x);
            assert_eq!(total, QuadraticNumber::from_int(1));
            for i in 0..n {
                let mv = (0..n).fold(QuadraticNumber::from_int(0), |acc, j| {
                    &acc + &(&QuadraticNumber::from_int(s.matrix()[i][j] as i64) * &frequencies[j])
                });
                assert_eq!(mv, &root * &frequencies[i]);
                assert!(frequencies[i].signum() > 0);
            }
        }
    }

    #[test]
    fn interval_mode_brackets_exact_answer() {
        let s = SubstitutionSystem::penrose_robinson();
        let PerronData::Interval { root, frequencies } = perron_frequencies(&s, FrequencyMode::Interval).unwrap() else {
            panic!("interval expected");
        };
        let p = phi();
        assert!((&p * &p).within(&root.0, &root.1));
        let denom = &QuadraticNumber::from_int(1) + &p;
        assert!((&p / &denom).within(&frequencies[0].0, &frequencies[0].1));
        for (lo, hi) in &frequencies {
            assert!(hi - lo <= tolerance());
        }
        let FrequencyRatio::Interval(lo, hi) = frequency_ratio(&s, 0, 1, FrequencyMode::Interval).unwrap() else {
            panic!("interval expected");
        };
        assert!(p.within(&lo, &hi));
    }

    #[test]
    fn cubic_falls_back_to_intervals() {
        // Tribonacci: x³ - x² - x - 1 is irreducible.
        let s = SubstitutionSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]],
        )
        .unwrap();
        assert_eq!(perron_frequencies(&s, FrequencyMode::Exact), Err(Error::DegreeTooHigh));
        let PerronData::Interval { root, frequencies } = perron_frequencies(&s, FrequencyMode::Auto).unwrap() else {
            panic!("interval expected");
        };
        assert!(root.0 < frac(18393, 10000) && root.1 > frac(18392, 10000));
        let lo: Rational = frequencies.iter().map(|f| f.0.clone()).sum();
        let hi: Rational = frequencies.iter().map(|f| f.1.clone()).sum();
        assert!(lo <= int(1) && hi >= int(1));
    }

    #[test]
    fn integer_root_with_three_types() {
        // Column sums all 3, so the Perron root is 3.
        let s = SubstitutionSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![1, 1, 2], vec![1, 1, 0], vec![1, 1, 1]],
        )
        .unwrap();
        let PerronData::Exact { root, frequencies } = perron_frequencies(&s, FrequencyMode::Exact).unwrap() else {
            panic!("exact expected");
        };
        assert_eq!(root, QuadraticNumber::from_int(3));
        assert!(frequencies.iter().all(|f| f.is_rational() && f.signum() > 0));
    }

    #[test]
    fn counts_and_convergence() {
        let s = SubstitutionSystem::penrose_robinson();
        let it = iterate_counts(&s, &big(&[1, 0]), 3).unwrap();
        assert_eq!(it, vec![big(&[2, 1]), big(&[5, 3]), big(&[13, 8])]);
        assert_eq!(iterate_counts(&s, &big(&[0, 1]), 1).unwrap(), vec![big(&[1, 1])]);
        assert!(iterate_counts(&s, &big(&[0, 0]), 1).is_err());

        let p = phi();
        let seq = iterate_counts(&s, &big(&[1, 0]), 30).unwrap();
        let errs: Vec<QuadraticNumber> = seq.iter().map(|v| ratio_error(v, 0, 1, &p).unwrap()).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
        assert!(below(&errs[24], &frac(1, 1_000_000_000)));
    }

    #[test]
    fn irrationality_certificates() {
        assert!(certify_irrational(&phi()));
        assert!(!certify_irrational(&QuadraticNumber::rational(frac(3, 7))));
        let s5 = QuadraticNumber::new(int(0), int(1), BigInt::from(5)).unwrap();
        assert!(!certify_irrational(&(&s5 - &s5)));
    }

    #[test]
    fn report_and_json() {
        let s = SubstitutionSystem::penrose_robinson();
        let r = frequency_report(&s, FrequencyMode::Auto, Some((0, 1))).unwrap();
        let ratio = r.ratio.as_ref().unwrap();
        assert_eq!(ratio.value.exact.as_deref(), Some("(1+1*sqrt(5))/2"));
        assert_eq!(ratio.value.decimal, "1.618033988749894");
        assert!(ratio.irrational);
        let j: SystemJson = serde_json::from_str(r#"{"types":["fat","thin"],"M":[[2,1],[1,1]]}"#).unwrap();
        assert_eq!(SubstitutionSystem::from_json(&j).unwrap(), s);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn two_by_two_systems_are_exact(a in 0u64..6, b in 1u64..6, c in 1u64..6, d in 0u64..6) {
            // A zero diagonal makes the matrix periodic, hence not primitive.
            proptest::prop_assume!(a + d > 0);
            let s = SubstitutionSystem::new(vec!["x".into(), "y".into()], vec![vec![a, b], vec![c, d]]).unwrap();
            let PerronData::Exact { root, frequencies } = perron_frequencies(&s, FrequencyMode::Auto).unwrap() else {
                panic!("2x2 roots are at most quadratic");
            };
            let total = frequencies.iter().fold(QuadraticNumber::from_int(0), |acc, x| &acc + x);
            proptest::prop_assert_eq!(total, QuadraticNumber::from_int(1));
            for i in 0..2 {
                proptest::prop_assert!(frequencies[i].signum() > 0);
                let mv = (0..2).fold(QuadraticNumber::from_int(0), |acc, j| {
                    &acc + &(&QuadraticNumber::from_int(s.matrix()[i][j] as i64) * &frequencies[j])
                });
                proptest::prop_assert_eq!(mv, &root * &frequencies[i]);
            }
            // Irrational exactly when the discriminant of the characteristic polynomial is not a square.
            let disc = ((a + d) * (a + d)) as i64 - 4 * (a * d) as i64 + 4 * (b * c) as i64;
            let sq = (disc as f64).sqrt().round() as i64;
            let FrequencyRatio::Exact(r) = frequency_ratio(&s, 0, 1, FrequencyMode::Exact).unwrap() else {
                panic!("exact expected");
            };
            proptest::prop_assert_eq!(certify_irrational(&r), sq * sq != disc);
            proptest::prop_assert_eq!(certify_irrational(&root), sq * sq != disc);
        }

        #[test]
        fn field_arithmetic(p in -20i64..20, q in -20i64..20, r in 1i64..9, u in -20i64..20, v in -20i64..20) {
            let x = QuadraticNumber::new(frac(p, r), frac(q, r), BigInt::from(7)).unwrap();
            let y = QuadraticNumber::new(int(u), int(v), BigInt::from(7)).unwrap();
            proptest::prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                proptest::prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                proptest::prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
            proptest::prop_assert_eq!(certify_irrational(&(&x - &x.conjugate())), q != 0);
        }
    }
}
