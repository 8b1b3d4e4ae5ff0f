//! Restriction maps between windows and the projected outer approximations
//! `π̃_{k,n}(I_k^loc)` of the marginal set on Ω_n.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::geometry::{affine_image, image_by_lp, polytope_equal, vertex_enumeration, AffineMap, VPolytope};
use crate::invariance::build_iloc;
use crate::par;
use crate::patterns::{Alphabet, PatternIndex};
use crate::rational::Rational;

/// Restriction from Ω_k to Ω_n as a 0/1 linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalMap {
    pub big: PatternIndex,
    pub small: PatternIndex,
    /// `target[b]` is the index in Ω_n of `b|Λ_n`.
    pub target: Vec<usize>,
}

impl MarginalMap {
    pub fn k(&self) -> usize {
        self.big.n()
    }

    pub fn n(&self) -> usize {
        self.small.n()
    }

    pub fn affine_map(&self) -> AffineMap {
        let mut m = vec![vec![Rational::zero(); self.big.size()]; self.small.size()];
        for (b, &a) in self.target.iter().enumerate() {
            m[a][b] = Rational::one();
        }
        AffineMap::linear(m, self.big.size()).expect("rectangular")
    }

    /// Pushes a vector on Ω_k forward to Ω_n.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.small.size()];
        for (v, &a) in x.iter().zip(&self.target) {
            if !v.is_zero() {
                out[a] += v;
            }
        }
        out
    }

    /// `self ∘ inner`: restrict with `inner` first, then with `self`.
    pub fn compose(&self, inner: &MarginalMap) -> Result<MarginalMap> {
        if inner.small != self.big {
            return Err(Error::InvalidInput("marginal maps do not chain".into()));
        }
        Ok(MarginalMap {
            big: inner.big.clone(),
            small: self.small.clone(),
            target: inner.target.iter().map(|&b| self.target[b]).collect(),
        })
    }
}

/// The restriction map Ω_k → Ω_n for `k >= n`.
pub fn marginal_map(k: usize, n: usize, d: usize, alphabet: &Alphabet, cfg: &Config) -> Result<MarginalMap> {
    if k < n {
        return Err(Error::InvalidInput(format!("cannot restrict window {k} to the larger window {n}")));
    }
    let big = PatternIndex::new(d, k, alphabet.clone(), cfg)?;
    let small = PatternIndex::new(d, n, alphabet.clone(), cfg)?;
    let pos = big.positions(small.window()).expect("Λ_n sits inside Λ_k");
    let target = par::map_range(cfg.exec, big.size(), |b| {
        let ds = big.digits(b);
        small.index_of_values(&pos.iter().map(|&p| ds[p]).collect::<Vec<_>>())
    });
    Ok(MarginalMap { big, small, target })
}

/// `π̃_{k,n}(I_k^loc)` as a V-polytope on Ω_n.
///
/// Small sources are enumerated and pushed forward; larger ones go through
/// the LP oracle, which only needs optimization over I_k^loc.
pub fn project_iloc(k: usize, n: usize, d: usize, alphabet: &Alphabet, cfg: &Config) -> Result<VPolytope> {
    let map = marginal_map(k, n, d, alphabet, cfg)?;
    let h = build_iloc(&map.big);
    if map.big.size() <= cfg.max_vertex_route_dim {
        let v = vertex_enumeration(&h, cfg)?;
        affine_image(&v, &map.affine_map(), cfg.exec)
    } else {
        image_by_lp(&h, &map.affine_map(), cfg)
    }
}

/// One level of the tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub k: usize,
    pub vertices: usize,
    pub equal_to_previous: bool,
    pub polytope: VPolytope,
}

/// Levels `k = n+1 ..= k_max`; level `n+1` is compared with I_n^loc itself.
pub fn refinement_report(
    n: usize,
    k_max: usize,
    d: usize,
    alphabet: &Alphabet,
    cfg: &Config,
) -> Result<Vec<TowerLevel>> {
    if k_max <= n {
        return Err(Error::InvalidInput("k_max must exceed n".into()));
    }
    let polys = par::map_range(cfg.exec, k_max - n + 1, |i| project_iloc(n + i, n, d, alphabet, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(polys
        .windows(2)
        .enumerate()
        .map(|(i, w)| TowerLevel {
            k: n + 1 + i,
            vertices: w[1].len(),
            equal_to_previous: polytope_equal(&w[0], &w[1]),
            polytope: w[1].clone(),
        })
        .collect())
}
