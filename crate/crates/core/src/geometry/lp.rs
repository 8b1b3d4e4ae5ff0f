//! Dense two-phase simplex over exact rationals.
//!
//! Works on the standard form `min c·w  s.t.  A w = b, w >= 0`. Infeasible
//! problems come back with a Farkas vector `z` such that `zᵀA >= 0` and
//! `zᵀb < 0`, read off the phase-one reduced costs of the artificial columns.
//!
//! A floating-point run of the same method proposes a starting basis; the
//! exact tableau installs it when it is primal feasible and then continues
//! with Bland's rule, so the answer never depends on rounding.

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// `[A | I | b]` with rows negated where `b < 0`; artificials are basic.
    fn new(a: &[Vec<Rational>], b: &[Rational], n: usize) -> (Self, Vec<bool>) {
        let m = a.len();
        let width = n + m;
        let mut signs = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
            let flip = rhs.is_negative();
            signs.push(flip);
            let mut t = Vec::with_capacity(width + 1);
            t.extend(row.iter().map(|x| if flip { -x.clone() } else { x.clone() }));
            t.extend((0..m).map(|j| if j == i { Rational::one() } else { Rational::zero() }));
            t.push(if flip { -rhs.clone() } else { rhs.clone() });
            rows.push(t);
        }
        let tab = Tableau {
            rows,
            obj: vec![Rational::zero(); width + 1],
            basis: (n..n + m).collect(),
            width,
        };
        (tab, signs)
    }

    fn rhs(&self) -> usize {
        self.width
    }

    /// Reduced costs of `cost` (length `width`) for the current basis.
    fn price(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.iter().cloned().chain(std::iter::once(Rational::zero())).collect();
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[bv];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o -= cb * x;
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Brings the proposed structural columns into the basis. Returns false
    /// (leaving the tableau unusable) if the resulting basis is not feasible.
    fn install(&mut self, columns: &[usize], n: usize) -> bool {
        for &j in columns {
            if self.basis.contains(&j) {
                continue;
            }
            let Some(r) = (0..self.rows.len()).find(|&i| self.basis[i] >= n && !self.rows[i][j].is_zero()) else {
                continue;
            };
            self.pivot(r, j);
        }
        let rhs = self.rhs();
        self.rows.iter().all(|row| !row[rhs].is_negative())
    }

    /// Bland's rule over columns `0..allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, enter),
                None => return false,
            }
        }
    }
}

const EPS: f64 = 1e-9;

/// The same two-phase method in f64, used only to suggest a basis.
struct FloatTableau {
    rows: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl FloatTableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<f64>| {
            let f = row[c];
            if f == 0.0 {
                return;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
            row[c] = 0.0;
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Largest-coefficient rule, falling back to Bland's rule while stalled.
    /// `None` when the iteration budget runs out; `Some(false)` if unbounded.
    fn optimize(&mut self, allowed: usize, budget: &mut usize) -> Option<bool> {
        let rhs = self.width;
        let mut stalled = 0usize;
        loop {
            let candidates = (0..allowed).filter(|&j| self.obj[j] < -EPS);
            let enter = if stalled < 30 {
                candidates.min_by(|&a, &b| self.obj[a].total_cmp(&self.obj[b]))
            } else {
                candidates.into_iter().next()
            };
            let Some(enter) = enter else {
                return Some(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter] <= EPS {
                    continue;
                }
                let ratio = row[rhs].max(0.0) / row[enter];
                let better = match leave {
                    None => true,
                    Some((li, lr)) => ratio < lr - EPS || (ratio <= lr + EPS && self.basis[i] < self.basis[li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((i, ratio)) = leave else {
                return Some(false);
            };
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            stalled = if ratio <= EPS { stalled + 1 } else { 0 };
            self.pivot(i, enter);
        }
    }
}

fn float_basis(a: &[Vec<Rational>], b: &[Rational], c: Option<&[Rational]>, n: usize) -> Option<Vec<usize>> {
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let s = if rhs.is_negative() { -1.0 } else { 1.0 };
        let mut t: Vec<f64> = row.iter().map(|x| s * to_f64(x)).collect();
        t.extend((0..m).map(|j| if j == i { 1.0 } else { 0.0 }));
        t.push(s * to_f64(rhs));
        rows.push(t);
    }
    let mut obj = vec![0.0; width + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] -= row[j];
        }
        obj[width] -= row[width];
    }
    let mut t = FloatTableau {
        rows,
        obj,
        basis: (n..width).collect(),
        width,
    };
    let mut budget = 50 * (n + m) + 1000;
    t.optimize(n, &mut budget)?;
    for i in 0..m {
        if t.basis[i] >= n {
            let best = (0..n)
                .filter(|&j| t.rows[i][j].abs() > EPS)
                .max_by(|&x, &y| t.rows[i][x].abs().total_cmp(&t.rows[i][y].abs()));
            if let Some(j) = best {
                t.pivot(i, j);
            }
        }
    }
    if let Some(c) = c {
        let mut obj = vec![0.0; width + 1];
        for (j, cj) in c.iter().enumerate() {
            obj[j] = to_f64(cj);
        }
        for (row, &bv) in t.rows.iter().zip(&t.basis) {
            let cb = if bv < n { to_f64(&c[bv]) } else { 0.0 };
            if cb != 0.0 {
                for (o, x) in obj.iter_mut().zip(row) {
                    *o -= cb * x;
                }
            }
        }
        for &bv in &t.basis {
            if bv < n {
                obj[bv] = 0.0;
            }
        }
        t.obj = obj;
        t.optimize(n, &mut budget)?;
    }
    let mut cols: Vec<usize> = t.basis.into_iter().filter(|&j| j < n).collect();
    cols.sort_unstable();
    Some(cols)
}

/// Solves `min c·w s.t. A w = b, w >= 0`. With `c = None` only feasibility is decided
/// and the returned point is the phase-one basic solution.
pub fn solve_standard(a: &[Vec<Rational>], b: &[Rational], c: Option<&[Rational]>) -> LpOutcome {
    let m = a.len();
    let n = a.first().map_or(c.map_or(0, |c| c.len()), |r| r.len());
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert_eq!(b.len(), m);
    let width = n + m;

    let (mut tab, signs) = Tableau::new(a, b, n);
    if let Some(cols) = float_basis(a, b, c, n) {
        if !tab.install(&cols, n) {
            tab = Tableau::new(a, b, n).0;
        }
    }
    let phase_one: Vec<Rational> = (0..width)
        .map(|j| if j < n { Rational::zero() } else { Rational::one() })
        .collect();
    tab.price(&phase_one);
    let bounded = tab.optimize(n);
    debug_assert!(bounded, "phase one is bounded below by zero");

    let infeasibility = -tab.obj[width].clone();
    if infeasibility.is_positive() {
        // y_i = 1 - (reduced cost of artificial i); z = -diag(sign) y.
        let farkas = (0..m)
            .map(|i| {
                let y = Rational::one() - &tab.obj[n + i];
                if signs[i] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    if let Some(c) = c {
        let cost: Vec<Rational> = c.iter().cloned().chain((0..m).map(|_| Rational::zero())).collect();
        tab.price(&cost);
        if !tab.optimize(n) {
            return LpOutcome::Unbounded;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        x[bv] = row[width].clone();
    }
    let value = c.map(|c| dot(c, &x)).unwrap_or_else(Rational::zero);
    LpOutcome::Optimal { x, value }
}

/// Checks `zᵀA >= 0` and `zᵀb < 0` exactly.
pub fn verify_farkas(a: &[Vec<Rational>], b: &[Rational], z: &[Rational]) -> bool {
    if z.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, |r| r.len());
    let combo_ok = (0..n).all(|j| {
        let s = a
            .iter()
            .zip(z)
            .fold(Rational::zero(), |acc, (row, zi)| acc + &row[j] * zi);
        !s.is_negative()
    });
    combo_ok && dot(z, b).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn simple_optimum() {
        // min -x - y s.t. x + s1 = 1, y + s2 = 2
        let a = vec![
            vec![int(1), int(0), int(1), int(0)],
            vec![int(0), int(1), int(0), int(1)],
        ];
        let b = vec![int(1), int(2)];
        let c = vec![int(-1), int(-1), int(0), int(0)];
        match solve_standard(&a, &b, Some(&c)) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(-3));
                assert_eq!(&x[..2], &[int(1), int(2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x + y = 1, x + y = 2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        let b = vec![int(1), int(2)];
        match solve_standard(&a, &b, None) {
            LpOutcome::Infeasible { farkas } => assert!(verify_farkas(&a, &b, &farkas)),
            other => panic!("{other:?}"),
        }
        // x = -1 with x >= 0
        let a = vec![vec![int(1)]];
        let b = vec![int(-1)];
        match solve_standard(&a, &b, None) {
            LpOutcome::Infeasible { farkas } => assert!(verify_farkas(&a, &b, &farkas)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded() {
        // min -x s.t. x - y = 0
        let a = vec![vec![int(1), int(-1)]];
        let b = vec![int(0)];
        assert_eq!(solve_standard(&a, &b, Some(&[int(-1), int(0)])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_and_degeneracy() {
        // Three copies of x + y + z = 1 and one with rational scaling.
        let row = vec![int(1), int(1), int(1)];
        let a = vec![row.clone(), row.clone(), vec![frac(1, 2), frac(1, 2), frac(1, 2)]];
        let b = vec![int(1), int(1), frac(1, 2)];
        match solve_standard(&a, &b, Some(&[int(0), int(-1), int(1)])) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(-1));
                assert_eq!(x, vec![int(0), int(1), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }
}
