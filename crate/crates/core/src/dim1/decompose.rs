use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::lp::{solve_standard, LpOutcome};
use crate::geometry::{hull_system, VPolytope};
use crate::invariance::MeasureVector;
use crate::rational::{self, Rational};

/// Convex-combination weights over a vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Decomposition {
    Two {
        #[serde(with = "rational::serde_q::vec")]
        first: Vec<Rational>,
        #[serde(with = "rational::serde_q::vec")]
        second: Vec<Rational>,
    },
    /// Every coordinate of the decomposition polytope is pinned, so it is a point.
    Unique {
        #[serde(with = "rational::serde_q::vec")]
        weights: Vec<Rational>,
    },
}

/// Do the weights form a convex combination of `vertices` equal to `target`?
pub fn reproduces(vertices: &VPolytope, weights: &[Rational], target: &[Rational]) -> bool {
    if weights.len() != vertices.len() || weights.iter().any(|w| *w < Rational::zero()) {
        return false;
    }
    if weights.iter().sum::<Rational>() != Rational::one() {
        return false;
    }
    let mut sum = vec![Rational::zero(); target.len()];
    for (v, w) in vertices.vertices.iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        for (s, x) in sum.iter_mut().zip(v) {
            *s += w * x;
        }
    }
    sum == target
}

/// Looks for two different convex decompositions of `mu` over `vertices`.
///
/// Each weight is pushed to its maximum and minimum in turn; the first
/// coordinate whose range is not a single value yields two distinct basic
/// solutions. If every range is a point, the decomposition is unique.
pub fn find_two_decompositions(mu: &MeasureVector, vertices: &VPolytope) -> Result<Decomposition> {
    let x = mu.values();
    if vertices.dim != x.len() {
        return Err(Error::InvalidInput("vertex and measure dimensions differ".into()));
    }
    if vertices.is_empty() {
        return Err(Error::NotInHull);
    }
    let (a, b) = hull_system(&vertices.vertices, x);
    let m = vertices.len();
    let extreme = |j: usize, maximize: bool| -> Result<Vec<Rational>> {
        let mut c = vec![Rational::zero(); m];
        c[j] = if maximize { -Rational::one() } else { Rational::one() };
        match solve_standard(&a, &b, Some(&c)) {
            LpOutcome::Optimal { x, .. } => Ok(x),
            LpOutcome::Infeasible { .. } => Err(Error::NotInHull),
            LpOutcome::Unbounded => Err(Error::Verification("bounded decomposition LP reported unbounded".into())),
        }
    };
    let first = extreme(0, true)?;
    for j in 0..m {
        let hi = if j == 0 { first.clone() } else { extreme(j, true)? };
        let lo = extreme(j, false)?;
        if hi[j] != lo[j] {
            for w in [&hi, &lo] {
                if !reproduces(vertices, w, x) {
                    return Err(Error::Verification("decomposition does not reproduce the measure".into()));
                }
            }
            return Ok(Decomposition::Two { first: hi, second: lo });
        }
    }
    if !reproduces(vertices, &first, x) {
        return Err(Error::Verification("decomposition does not reproduce the measure".into()));
    }
    Ok(Decomposition::Unique { weights: first })
}
