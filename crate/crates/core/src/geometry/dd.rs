//! Double description method for cones `{x : a_i·x >= 0}` with integer rows.
//!
//! Constraints are inserted in the order given. The cone starts as the
//! whole space (all of it lineality); a constraint that is nonzero on some
//! lineality vector turns that vector into a ray, otherwise the usual
//! positive/negative ray combination runs with the combinatorial adjacency
//! test. Pair tests are data-parallel; output order never depends on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn prefix(count: usize, n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..count {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// `s·r - t·l`, normalized.
fn combine(s: &BigInt, r: &[BigInt], t: &BigInt, l: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = r.iter().zip(l).map(|(x, y)| s * x - t * y).collect();
    normalize(&mut v);
    v
}

/// Extreme rays and lineality basis of `{x in R^dim : row·x >= 0 for all rows}`.
pub fn cone_generators(rows: &[Vec<BigInt>], dim: usize, cfg: &Config) -> Result<ConeGenerators> {
    let nrows = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, a) in rows.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(li) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(li);
            let mut s = dot(a, &l);
            if s.is_negative() {
                for x in l.iter_mut() {
                    *x = -x.clone();
                }
                s = -s;
            }
            for other in lineality.iter_mut() {
                let t = dot(a, other);
                if !t.is_zero() {
                    *other = combine(&s, other, &t, &l);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l);
                }
                r.zeros.set(ci);
            }
            rays.push(Ray {
                v: l,
                zeros: Bits::prefix(ci, nrows),
            });
            continue;
        }

        let values: Vec<BigInt> = par::map(cfg.exec, &rays, |r| dot(a, &r.v));
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.set(ci);
                }
            }
            continue;
        }

        let pointed_dim = dim - lineality.len();
        let need = pointed_dim.saturating_sub(2);
        let old = &rays;
        let created: Vec<Ray> = par::flat_map_range(cfg.exec, pos.len(), |pi| {
            let p = pos[pi];
            let mut out = Vec::new();
            for &q in &neg {
                let common = old[p].zeros.and(&old[q].zeros);
                if common.count() < need {
                    continue;
                }
                let blocked = old
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let s = values[p].clone();
                let t = values[q].clone();
                // s > 0 > t: s·q - t·p lies on the hyperplane with positive weights.
                let v = combine(&s, &old[q].v, &t, &old[p].v);
                let mut zeros = common;
                zeros.set(ci);
                out.push(Ray { v, zeros });
            }
            out
        });

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.set(ci);
            }
            next.push(r);
        }
        next.extend(created);
        if next.len() > cfg.max_generators {
            return Err(Error::too_large(
                "max_generators",
                "double description generators",
                next.len() as u128,
                cfg.max_generators as u128,
            ));
        }
        rays = next;
    }

    Ok(ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    })
}
