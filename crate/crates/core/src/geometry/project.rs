//! Image of an H-polytope under an affine map, computed with an LP oracle.
//!
//! Used when the source polytope is too large for vertex enumeration but the
//! image lives in a small space. First the affine hull of the image is found
//! by optimizing along directions orthogonal to the points found so far, then
//! every facet of the current hull is tested for an image point beyond it.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::polytope::{affine_hull, extreme_subset, facets, lp_feasible, optimize, AffineMap, HPolytope, Optimum, VPolytope};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::rational::{self, dot, Rational};

fn pull_back(t: &AffineMap, c: &[Rational]) -> Vec<Rational> {
    (0..t.input_dim)
        .map(|j| t.matrix.iter().zip(c).fold(Rational::zero(), |acc, (row, ci)| acc + &row[j] * ci))
        .collect()
}

fn extreme_image(h: &HPolytope, t: &AffineMap, c: &[Rational], maximize: bool) -> Result<Vec<Rational>> {
    match optimize(h, &pull_back(t, c), maximize) {
        Optimum::Point { x, .. } => Ok(t.apply(&x)),
        Optimum::Unbounded => Err(Error::Unbounded),
        Optimum::Infeasible(_) => Err(Error::Verification("polytope became infeasible".into())),
    }
}

pub fn image_by_lp(h: &HPolytope, t: &AffineMap, cfg: &Config) -> Result<VPolytope> {
    if t.input_dim != h.dim {
        return Err(Error::InvalidInput("map and polytope dimensions differ".into()));
    }
    let m = t.output_dim();
    let Some(start) = lp_feasible(h).point().map(<[Rational]>::to_vec) else {
        return Ok(VPolytope::empty(m));
    };
    let mut points = vec![t.apply(&start)];

    'hull: loop {
        let hull = affine_hull(&points, m);
        for c in rational::nullspace(&hull.directions, m) {
            let base = dot(&c, &hull.base);
            for maximize in [true, false] {
                let q = extreme_image(h, t, &c, maximize)?;
                if dot(&c, &q) != base {
                    points.push(q);
                    continue 'hull;
                }
            }
        }
        break;
    }

    let mut confirmed: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
    'facets: loop {
        let hull_h = facets(&points, m, cfg)?;
        for (row, rhs) in hull_h.ineq.iter().zip(&hull_h.ineq_rhs) {
            let key = (row.clone(), rhs.clone());
            if confirmed.contains(&key) {
                continue;
            }
            let q = extreme_image(h, t, row, true)?;
            if dot(row, &q) > *rhs {
                points.push(q);
                continue 'facets;
            }
            confirmed.insert(key);
        }
        break;
    }
    Ok(extreme_subset(&points, m, cfg.exec))
}
