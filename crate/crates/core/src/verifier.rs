//! Numerical test of whether a weighted point set on the unit sphere of `K^m`
//! is a projective cubature formula of index `p`.
//!
//! By the addition formula, `M_k = sum_{i,j} rho_i rho_j P_k(x_i x_j)` is a sum of
//! squared moduli of harmonic moments, so it is nonnegative and vanishes for all
//! `1 <= k <= p/2` exactly when the set integrates every invariant `p`-form.
//! Here `x y = 2 |(x, y)|^2 - 1` is the projective cosine.

use std::cmp::Ordering;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{lp_bound, yudin_bound};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobi::{jacobi_eval_all_into, value_at_one, JacobiParams};
use crate::quaternion::{inner, norm_sq, Quaternion};
use crate::sum::CompensatedSum;

const UNIT_TOL: f64 = 1e-12;
const DISTINCT_TOL: f64 = 1e-12;
/// `M_k` below this value contradicts positive semidefiniteness.
pub const NONNEGATIVITY_TOL: f64 = 1e-10;

/// Weighted nodes on the unit sphere of `K^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    field: Field,
    m: usize,
    nodes: Vec<Vec<Quaternion>>,
    weights: Vec<f64>,
}

impl PointSet {
    /// Validates field membership, unit norms, positive weights and `sum rho_i = 1`.
    pub fn new(field: Field, m: usize, nodes: Vec<Vec<Quaternion>>, weights: Vec<f64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::Input(format!("m must be at least 2, got {m}")));
        }
        if nodes.is_empty() {
            return Err(Error::Input("point set is empty".into()));
        }
        if nodes.len() != weights.len() {
            return Err(Error::Input(format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        let delta = field.delta();
        for (i, node) in nodes.iter().enumerate() {
            if node.len() != m {
                return Err(Error::Input(format!(
                    "node {i} has {} coordinates, expected {m}",
                    node.len()
                )));
            }
            if let Some(c) = node.iter().position(|q| !q.fits_field(delta)) {
                return Err(Error::Input(format!(
                    "node {i}, coordinate {c} is not an element of {field}"
                )));
            }
            let n2 = norm_sq(node);
            if (n2 - 1.0).abs() > UNIT_TOL {
                return Err(Error::Input(format!(
                    "node {i} is not on the unit sphere: |x|^2 = {n2}"
                )));
            }
        }
        if let Some(i) = weights.iter().position(|&w| !(w > 0.0)) {
            return Err(Error::Input(format!("weight {i} is not positive: {}", weights[i])));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > UNIT_TOL {
            return Err(Error::Input(format!("weights sum to {total}, expected 1")));
        }
        Ok(Self { field, m, nodes, weights })
    }

    /// Equal weights `1/n`: the set is tested as a projective `p/2`-design.
    pub fn equal_weights(field: Field, m: usize, nodes: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = nodes.len().max(1);
        Self::new(field, m, nodes, vec![1.0 / n as f64; n])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<Quaternion>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn jacobi_params(&self) -> JacobiParams {
        self.field
            .jacobi_params(self.m)
            .expect("m >= 2 is checked at construction")
    }

    /// Node indices sorted by weight, then coordinates, so that every
    /// permutation of the input sums its terms in the same order.
    fn canonical_order(&self) -> Vec<usize> {
        let key = |i: usize| {
            std::iter::once(self.weights[i]).chain(
                self.nodes[i]
                    .iter()
                    .flat_map(|q| [q.w, q.x, q.y, q.z]),
            )
        };
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| {
            key(a)
                .zip(key(b))
                .map(|(x, y)| x.total_cmp(&y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        });
        idx
    }

    /// Pairs `(i, j)`, `i < j`, of nodes that are not projectively distinct.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if projective_cos_unchecked(&self.nodes[i], &self.nodes[j]) >= 1.0 - DISTINCT_TOL {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

fn projective_cos_unchecked(x: &[Quaternion], y: &[Quaternion]) -> f64 {
    2.0 * inner(x, y).norm_sq() - 1.0
}

/// Projective cosine `x y = 2 |(x, y)|^2 - 1` of two unit vectors.
pub fn projective_cos(x: &[Quaternion], y: &[Quaternion]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Input(format!(
            "dimension mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(projective_cos_unchecked(x, y))
}

/// `M_0, ..., M_{k_max}`, each summed with compensation in a canonical order.
pub fn moments(ps: &PointSet, k_max: usize) -> Vec<f64> {
    let params = ps.jacobi_params();
    let order = ps.canonical_order();
    let rows: Vec<Vec<CompensatedSum>> = order
        .par_iter()
        .enumerate()
        .map(|(a, &i)| {
            let mut acc = vec![CompensatedSum::new(); k_max + 1];
            let mut p = Vec::with_capacity(k_max + 1);
            let ri = ps.weights[i];
            jacobi_eval_all_into(params, k_max, 1.0, &mut p);
            for (k, pk) in p.iter().enumerate() {
                acc[k].add(ri * ri * pk);
            }
            for &j in &order[a + 1..] {
                let t = projective_cos_unchecked(&ps.nodes[i], &ps.nodes[j]);
                let w = 2.0 * ri * ps.weights[j];
                jacobi_eval_all_into(params, k_max, t, &mut p);
                for (k, pk) in p.iter().enumerate() {
                    acc[k].add(w * pk);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![CompensatedSum::new(); k_max + 1];
    for row in &rows {
        for (k, s) in row.iter().enumerate() {
            total[k].merge(s);
        }
    }
    total.iter().map(CompensatedSum::value).collect()
}

/// Jacobi moments `M_1, ..., M_{p/2}`.
pub fn moment_test(ps: &PointSet, p: usize) -> Result<Vec<f64>> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::Parameter(format!("p must be a positive even integer, got {p}")));
    }
    let mut m = moments(ps, p / 2);
    m.remove(0);
    Ok(m)
}

/// Tolerance used when none is given: `1e-10` scaled by the number of nodes.
pub fn default_tolerance(n: usize) -> f64 {
    1e-10 * n.max(1) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: Field,
    pub m: usize,
    pub p: usize,
    pub n: usize,
    /// `M_1, ..., M_{p/2}`
    pub moments: Vec<f64>,
    pub max_abs_moment: f64,
    pub tol: f64,
    pub pass: bool,
    /// Every `M_k >= -1e-10`, as positive semidefiniteness requires.
    pub nonnegative: bool,
    #[serde(with = "decimal")]
    pub lp_bound: BigUint,
    #[serde(with = "decimal")]
    pub yudin_bound: BigUint,
    #[serde(with = "crate::bounds::overflowing")]
    pub yudin_raw: f64,
    /// The set passes and its size equals the bound.
    pub tight_lp: bool,
    pub tight_yudin: bool,
    /// Node pairs that are not projectively distinct (a warning, not an error).
    pub duplicate_pairs: Vec<(usize, usize)>,
}

/// Moment test for index `p` at tolerance `tol`, paired with the lower bounds.
pub fn verify(ps: &PointSet, p: usize, tol: f64) -> Result<VerificationReport> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let moments = moment_test(ps, p)?;
    let params = ps.jacobi_params();
    let max_abs_moment = moments.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let nonnegative = moments
        .iter()
        .enumerate()
        .all(|(k, &v)| v >= -NONNEGATIVITY_TOL * value_at_one(params, k + 1).max(1.0));
    let bounds = yudin_bound(ps.field, ps.m, p)?;
    let lp = lp_bound(ps.field, ps.m, p / 2)?.value;
    let n = ps.len();
    let n_big = BigUint::from(n);
    let duplicate_pairs = ps.duplicate_pairs();
    for &(i, j) in &duplicate_pairs {
        log::warn!("nodes {i} and {j} are not projectively distinct");
    }
    let pass = max_abs_moment <= tol;
    Ok(VerificationReport {
        field: ps.field,
        m: ps.m,
        p,
        n,
        pass,
        max_abs_moment,
        moments,
        tol,
        nonnegative,
        tight_lp: pass && n_big == lp,
        tight_yudin: pass && n_big == bounds.yudin_bound,
        lp_bound: lp,
        yudin_bound: bounds.yudin_bound,
        yudin_raw: bounds.yudin_raw,
        duplicate_pairs,
    })
}

/// On-disk point-set description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub field: Field,
    pub m: usize,
    pub p: usize,
    /// `nodes[i][c]` holds the `delta` real components of coordinate `c` of node `i`.
    pub nodes: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl PointSetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point set serializes")
    }

    pub fn from_point_set(ps: &PointSet, p: usize) -> Self {
        let delta = ps.field.delta();
        let nodes = ps
            .nodes
            .iter()
            .map(|node| {
                node.iter()
                    .map(|q| [q.w, q.x, q.y, q.z][..delta].to_vec())
                    .collect()
            })
            .collect();
        Self { field: ps.field, m: ps.m, p, nodes, weights: Some(ps.weights.clone()) }
    }

    /// Converts to a validated [`PointSet`]; omitted weights become `1/n`.
    pub fn into_point_set(self) -> Result<(PointSet, usize)> {
        let delta = self.field.delta();
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let mut coords = Vec::with_capacity(node.len());
            for (c, scalar) in node.iter().enumerate() {
                if scalar.len() != delta {
                    return Err(Error::Input(format!(
                        "node {i}, coordinate {c}: expected {delta} real components for field {}, got {}",
                        self.field,
                        scalar.len()
                    )));
                }
                coords.push(Quaternion::from_components(scalar).expect("length checked"));
            }
            nodes.push(coords);
        }
        let ps = match self.weights {
            Some(w) => PointSet::new(self.field, self.m, nodes, w)?,
            None => PointSet::equal_weights(self.field, self.m, nodes)?,
        };
        Ok((ps, self.p))
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Nodes `(cos(j pi/n), sin(j pi/n))`, `j = 0..n`: a projective `(n-1)`-design
/// on the real projective line.
pub fn circle_design(n: usize) -> Result<PointSet> {
    let nodes = (0..n)
        .map(|j| {
            let a = std::f64::consts::PI * j as f64 / n as f64;
            vec![Quaternion::real(a.cos()), Quaternion::real(a.sin())]
        })
        .collect();
    PointSet::equal_weights(Field::R, 2, nodes)
}

/// Line in `K^2` corresponding to a point of the sphere `S^delta` under the Hopf map.
///
/// `point = (s, v)` with `s` real and `v` given by `delta` real components. The
/// returned unit vector `(a, b)` satisfies `|a|^2 - |b|^2 = s` and `2 a conj(b) = v`,
/// so the projective cosine of two lines equals the dot product of their points.
pub fn line_from_sphere(field: Field, point: &[f64]) -> Result<Vec<Quaternion>> {
    let delta = field.delta();
    if point.len() != delta + 1 {
        return Err(Error::Input(format!(
            "a point of S^{delta} needs {} coordinates, got {}",
            delta + 1,
            point.len()
        )));
    }
    let r: f64 = point.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::Input(format!("point has norm {r}, expected 1")));
    }
    let s = point[0].clamp(-1.0, 1.0);
    let mut comps = [0.0; 4];
    comps[..delta].copy_from_slice(&point[1..]);
    let v = Quaternion::new(comps[0], comps[1], comps[2], comps[3]);
    let a = ((1.0 + s) / 2.0).sqrt();
    let b_abs = ((1.0 - s) / 2.0).sqrt();
    let v_abs = v.norm();
    let b = if v_abs > 0.0 {
        v.conj().scale(b_abs / v_abs)
    } else {
        Quaternion::real(b_abs)
    };
    Ok(vec![Quaternion::real(a), b])
}

/// Standard orthonormal basis of `K^m` with weights `1/m`.
pub fn orthonormal_basis(field: Field, m: usize) -> Result<PointSet> {
    let nodes = (0..m)
        .map(|i| {
            (0..m)
                .map(|c| if c == i { Quaternion::ONE } else { Quaternion::ZERO })
                .collect()
        })
        .collect();
    PointSet::equal_weights(field, m, nodes)
}
