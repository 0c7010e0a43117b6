//! Finite point clouds with a distance matrix: quasimetric constants,
//! snowflakes, chain metrization, Lipschitz constants, doubling covers,
//! doubling measures and box-count dimension.
//!
//! Balls are open, `B(x, r) = {y : d(x, y) < r}`, and cover centres are
//! always cloud points. Under a quasimetric an open ball need not be an
//! open set; nothing here depends on that.
//!
//! # File formats
//!
//! JSON:
//!
//! ```text
//! {"schema_version": 1, "points": 3,
//!  "distances": [[0,1,2],[1,0,1],[2,1,0]],
//!  "weights": [1,1,1], "labels": ["p","q","r"]}
//! ```
//!
//! CSV, lower triangle including the diagonal, `#` comments, optional
//! `labels,` and `weights,` rows before the matrix:
//!
//! ```text
//! labels,p,q,r
//! 0
//! 1,0
//! 2,1,0
//! ```

use std::io::Read;
use std::path::Path;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CLOUD_SCHEMA_VERSION: u32 = 1;

/// Slack allowed when deciding that a floating-point triangle inequality
/// holds.
pub const METRIC_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum QuasimetricError {
    #[error("invariant violated at ({i}, {j}): {reason}")]
    InvariantViolation { i: usize, j: usize, reason: String },
    #[error("degenerate radius grid: {0}")]
    DegenerateGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed point cloud: {0}")]
    Parse(String),
    #[error("cover of B({x}, {r}) at depth {l} uses {count} balls, more than {bound}")]
    IterateBound {
        x: usize,
        r: f64,
        l: u32,
        count: usize,
        bound: u128,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn violation(i: usize, j: usize, reason: &str) -> QuasimetricError {
    QuasimetricError::InvariantViolation {
        i,
        j,
        reason: reason.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    dist: Vec<Vec<f64>>,
    weights: Option<Vec<f64>>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CloudFile {
    schema_version: u32,
    points: usize,
    distances: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointCloud {
    pub fn new(
        dist: Vec<Vec<f64>>,
        weights: Option<Vec<f64>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, QuasimetricError> {
        let c = PointCloud {
            dist,
            weights,
            labels,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self, QuasimetricError> {
        let dist = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { f(i, j) }).collect())
            .collect();
        PointCloud::new(dist, None, None)
    }

    /// Points on the real line with `d = |x - y|`.
    pub fn line(points: &[f64]) -> Result<Self, QuasimetricError> {
        PointCloud::from_fn(points.len(), |i, j| (points[i] - points[j]).abs())
    }

    /// `{0, …, n-1}` with `d = |x - y|`.
    pub fn integer_line(n: usize) -> Self {
        let pts: Vec<f64> = (0..n).map(|i| i as f64).collect();
        PointCloud::line(&pts).expect("distinct integers")
    }

    /// `w × h` integer grid with the L¹ metric, row-major.
    pub fn grid_l1(w: usize, h: usize) -> Self {
        PointCloud::from_fn(w * h, |i, j| {
            let (xi, yi) = ((i % w) as f64, (i / w) as f64);
            let (xj, yj) = ((j % w) as f64, (j / w) as f64);
            (xi - xj).abs() + (yi - yj).abs()
        })
        .expect("distinct grid points")
    }

    pub fn validate(&self) -> Result<(), QuasimetricError> {
        let n = self.dist.len();
        for (i, row) in self.dist.iter().enumerate() {
            if row.len() != n {
                return Err(QuasimetricError::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(violation(i, j, "distance must be finite and nonnegative"));
                }
                if i == j && d != 0.0 {
                    return Err(violation(i, j, "nonzero diagonal"));
                }
                if i != j && d == 0.0 {
                    return Err(violation(i, j, "zero distance between distinct points"));
                }
                if d != self.dist[j][i] {
                    return Err(violation(i, j, "asymmetric distance"));
                }
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != n {
                return Err(QuasimetricError::Parse(format!(
                    "{} weights for {n} points",
                    w.len()
                )));
            }
            if let Some(i) = w.iter().position(|&x| !(x.is_finite() && x > 0.0)) {
                return Err(violation(i, i, "weight must be positive"));
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(QuasimetricError::Parse(format!(
                    "{} labels for {n} points",
                    l.len()
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, QuasimetricError> {
        self.weights = Some(weights);
        self.validate()?;
        Ok(self)
    }

    /// Weight of point `i`; counting measure when no weights are set.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Smallest positive distance, or `None` for fewer than two points.
    pub fn min_gap(&self) -> Option<f64> {
        self.dist
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row[i + 1..].iter().copied())
            .reduce(f64::min)
    }

    /// Points of the open ball `B(x, r)` in index order.
    pub fn ball(&self, x: usize, r: f64) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.dist[x][y] < r).collect()
    }

    pub fn from_json_str(text: &str) -> Result<Self, QuasimetricError> {
        let f: CloudFile = serde_json::from_str(text)?;
        if f.schema_version != CLOUD_SCHEMA_VERSION {
            return Err(QuasimetricError::Parse(format!(
                "unsupported schema_version {}",
                f.schema_version
            )));
        }
        if f.points != f.distances.len() {
            return Err(QuasimetricError::Parse(format!(
                "points = {} but the matrix has {} rows",
                f.points,
                f.distances.len()
            )));
        }
        PointCloud::new(f.distances, f.weights, f.labels)
    }

    pub fn to_json_string(&self) -> String {
        let f = CloudFile {
            schema_version: CLOUD_SCHEMA_VERSION,
            points: self.len(),
            distances: self.dist.clone(),
            weights: self.weights.clone(),
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&f).expect("plain data serializes")
    }

    pub fn from_csv_reader(reader: impl Read) -> Result<Self, QuasimetricError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut labels = None;
        let mut weights = None;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let fields: Vec<&str> = rec.iter().filter(|f| !f.is_empty()).collect();
            match fields.first() {
                None => continue,
                Some(&"labels") => {
                    labels = Some(fields[1..].iter().map(|s| s.to_string()).collect())
                }
                Some(&"weights") => weights = Some(parse_numbers(&fields[1..], rows.len())?),
                Some(_) => {
                    let row = parse_numbers(&fields, rows.len())?;
                    if row.len() != rows.len() + 1 {
                        return Err(QuasimetricError::Parse(format!(
                            "lower-triangle row {} has {} entries",
                            rows.len(),
                            row.len()
                        )));
                    }
                    rows.push(row);
                }
            }
        }
        let n = rows.len();
        let mut dist = vec![vec![0.0; n]; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                dist[i][j] = d;
                dist[j][i] = d;
            }
            if row[i] != 0.0 {
                return Err(violation(i, i, "nonzero diagonal"));
            }
        }
        PointCloud::new(dist, weights, labels)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if let Some(l) = &self.labels {
            out += &format!("labels,{}\n", l.join(","));
        }
        if let Some(w) = &self.weights {
            out += &format!("weights,{}\n", join(w));
        }
        for (i, row) in self.dist.iter().enumerate() {
            out += &join(&row[..=i]);
            out.push('\n');
        }
        out
    }

    /// Reads `.csv` files as lower triangles and everything else as JSON.
    pub fn read_path(path: &Path) -> Result<Self, QuasimetricError> {
        let text = std::fs::read_to_string(path)?;
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
        {
            PointCloud::from_csv_reader(text.as_bytes())
        } else {
            PointCloud::from_json_str(&text)
        }
    }
}

fn parse_numbers(fields: &[&str], row: usize) -> Result<Vec<f64>, QuasimetricError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>()
                .map_err(|_| QuasimetricError::Parse(format!("row {row}: not a number: {f:?}")))
        })
        .collect()
}

/// Least `C >= 1` with `d(x,z) <= C (d(x,y) + d(y,z))` for all triples.
pub fn quasimetric_constant(c: &PointCloud) -> f64 {
    let n = c.len();
    let worst = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best: f64 = 0.0;
            for z in x + 1..n {
                let dxz = c.d(x, z);
                for y in 0..n {
                    if y != x && y != z {
                        best = best.max(dxz / (c.d(x, y) + c.d(y, z)));
                    }
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    worst.max(1.0)
}

pub fn is_metric(c: &PointCloud) -> bool {
    quasimetric_constant(c) <= 1.0 + METRIC_TOLERANCE
}

/// First triple `(x, y, z)` with `d(x,z) > max(d(x,y), d(y,z))`, if any.
pub fn ultrametric_violation(c: &PointCloud) -> Option<(usize, usize, usize)> {
    let n = c.len();
    for x in 0..n {
        for z in 0..n {
            for y in 0..n {
                if c.d(x, z) > c.d(x, y).max(c.d(y, z)) * (1.0 + METRIC_TOLERANCE) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `d ↦ d^a`.
pub fn snowflake(c: &PointCloud, a: f64) -> Result<PointCloud, QuasimetricError> {
    if !(a.is_finite() && a > 0.0) {
        return Err(QuasimetricError::InvalidParameter(format!(
            "snowflake exponent {a}"
        )));
    }
    let dist = c
        .dist
        .iter()
        .map(|row| row.iter().map(|&d| d.powf(a)).collect())
        .collect();
    PointCloud::new(dist, c.weights.clone(), c.labels.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Epsilon {
    Fixed(f64),
    /// `ε = ln 2 / ln(2C)`, so that `(2C)^ε = 2`.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainMetrization {
    pub rho: PointCloud,
    pub epsilon: f64,
    pub delta: f64,
    pub c_prime: f64,
}

/// Shortest chain sums of `d^ε`, with the least `C'` such that
/// `ρ^δ / C' <= d <= C' ρ^δ` on every pair, `δ = 1/ε`.
pub fn chain_metrize(c: &PointCloud, eps: Epsilon) -> Result<ChainMetrization, QuasimetricError> {
    let epsilon = match eps {
        Epsilon::Fixed(e) => e,
        Epsilon::Auto => 2f64.ln() / (2.0 * quasimetric_constant(c)).ln(),
    };
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(QuasimetricError::InvalidParameter(format!(
            "chain exponent {epsilon}"
        )));
    }
    let n = c.len();
    let mut rho: Vec<Vec<f64>> = c
        .dist
        .iter()
        .map(|row| row.iter().map(|&d| d.powf(epsilon)).collect())
        .collect();
    for k in 0..n {
        let via = rho[k].clone();
        for row in rho.iter_mut() {
            let dik = row[k];
            for (j, r) in row.iter_mut().enumerate() {
                let cand = dik + via[j];
                if cand < *r {
                    *r = cand;
                }
            }
        }
    }
    // keep the matrix exactly symmetric
    for i in 0..n {
        for j in 0..i {
            let m = rho[i][j].min(rho[j][i]);
            rho[i][j] = m;
            rho[j][i] = m;
        }
    }
    let delta = 1.0 / epsilon;
    let mut c_prime: f64 = 1.0;
    for i in 0..n {
        for j in 0..i {
            let r = rho[i][j].powf(delta);
            let d = c.d(i, j);
            c_prime = c_prime.max(r / d).max(d / r);
        }
    }
    let rho = PointCloud::new(rho, c.weights.clone(), c.labels.clone())?;
    Ok(ChainMetrization {
        rho,
        epsilon,
        delta,
        c_prime,
    })
}

/// `max |f(x) - f(y)| / d(x, y)` over distinct pairs.
pub fn lipschitz_constant(c: &PointCloud, f: &[f64]) -> Result<f64, QuasimetricError> {
    if c.len() < 2 {
        return Err(QuasimetricError::InvalidParameter(
            "need at least two points".into(),
        ));
    }
    if f.len() != c.len() {
        return Err(QuasimetricError::InvalidParameter(format!(
            "{} values for {} points",
            f.len(),
            c.len()
        )));
    }
    let mut l: f64 = 0.0;
    for i in 0..c.len() {
        for j in 0..i {
            l = l.max((f[i] - f[j]).abs() / c.d(i, j));
        }
    }
    Ok(l)
}

/// Cover of `set` by open balls of radius `r` centred at cloud points.
/// Targets are taken farthest-first, starting from `first`; each target is
/// covered by the centre within `r` of it that covers the most uncovered
/// points of `set`. Ties go to the lower index.
pub fn greedy_cover(c: &PointCloud, set: &[usize], first: usize, r: f64) -> Vec<usize> {
    let mut centers = Vec::new();
    if set.is_empty() {
        return centers;
    }
    let mut covered = vec![false; set.len()];
    let mut gap: Vec<f64> = vec![f64::INFINITY; set.len()];
    let mut target = set.iter().position(|&y| y == first).unwrap_or(0);
    loop {
        let t = set[target];
        let gain = |ctr: usize| {
            set.iter()
                .zip(&covered)
                .filter(|&(&y, &done)| !done && c.d(ctr, y) < r)
                .count()
        };
        let mut ctr = t;
        let mut best = gain(t);
        for cand in 0..c.len() {
            if cand != t && c.d(cand, t) < r {
                let g = gain(cand);
                if g > best || (g == best && cand < ctr) {
                    (ctr, best) = (cand, g);
                }
            }
        }
        centers.push(ctr);
        for ((g, done), &y) in gap.iter_mut().zip(covered.iter_mut()).zip(set) {
            let d = c.d(ctr, y);
            *g = g.min(d);
            *done |= d < r;
        }
        let mut far = None;
        for (k, &g) in gap.iter().enumerate() {
            if !covered[k] && far.is_none_or(|f: usize| g > gap[f]) {
                far = Some(k);
            }
        }
        match far {
            Some(k) => target = k,
            None => return centers,
        }
    }
}

/// Whether every point of `set` lies in some `B(center, r)`.
pub fn covers(c: &PointCloud, set: &[usize], centers: &[usize], r: f64) -> bool {
    set.iter()
        .all(|&y| centers.iter().any(|&ctr| c.d(ctr, y) < r))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusCover {
    pub radius: f64,
    pub worst_count: usize,
    pub worst_center: usize,
    pub cover: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub radius_grid: Vec<f64>,
    pub per_radius: Vec<RadiusCover>,
    pub constant: usize,
}

/// Worst greedy count of `r/2`-balls needed for `B(x, r)` over all points
/// and grid radii. Every cover is re-checked before it is reported.
pub fn doubling_constant_estimate(
    c: &PointCloud,
    radii: &[f64],
) -> Result<CoverReport, QuasimetricError> {
    check_radii(radii)?;
    let mut per_radius = Vec::with_capacity(radii.len());
    for &r in radii {
        let covers_at: Vec<Vec<usize>> = (0..c.len())
            .into_par_iter()
            .map(|x| {
                let ball = c.ball(x, r);
                let cover = greedy_cover(c, &ball, x, r / 2.0);
                assert!(
                    covers(c, &ball, &cover, r / 2.0),
                    "greedy cover of B({x}, {r}) misses a point"
                );
                cover
            })
            .collect();
        let (x, cover) =
            covers_at
                .into_iter()
                .enumerate()
                .fold((0, Vec::new()), |best, (x, cv)| {
                    if cv.len() > best.1.len() {
                        (x, cv)
                    } else {
                        best
                    }
                });
        per_radius.push(RadiusCover {
            radius: r,
            worst_count: cover.len(),
            worst_center: x,
            cover,
        });
    }
    let constant = per_radius
        .iter()
        .map(|p| p.worst_count)
        .max()
        .unwrap_or(1)
        .max(1);
    Ok(CoverReport {
        radius_grid: radii.to_vec(),
        per_radius,
        constant,
    })
}

fn check_radii(radii: &[f64]) -> Result<(), QuasimetricError> {
    if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(QuasimetricError::InvalidParameter(format!("radius {r}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateReport {
    pub x: usize,
    pub r: f64,
    pub l: u32,
    pub count: usize,
    pub bound: u128,
}

/// Covers `B(x, r)` by balls of radius `r / 2^l`, halving one level at a
/// time and covering each whole ball again, and checks the count against
/// `c1^l`. `c1` should come from a [`CoverReport`] whose grid contains the
/// radii `r, r/2, …, r/2^(l-1)`.
pub fn doubling_iterate_check(
    c: &PointCloud,
    x: usize,
    r: f64,
    l: u32,
    c1: usize,
) -> Result<IterateReport, QuasimetricError> {
    check_radii(&[r])?;
    if x >= c.len() {
        return Err(QuasimetricError::InvalidParameter(format!(
            "point {x} out of range"
        )));
    }
    let mut frontier = vec![x];
    let mut radius = r;
    for _ in 0..l {
        let mut next = Vec::new();
        for &ctr in &frontier {
            let ball = c.ball(ctr, radius);
            next.extend(greedy_cover(c, &ball, ctr, radius / 2.0));
        }
        frontier = next;
        radius /= 2.0;
    }
    let count = frontier.len();
    let bound = (c1 as u128).saturating_pow(l);
    let report = IterateReport {
        x,
        r,
        l,
        count,
        bound,
    };
    if count as u128 > bound {
        return Err(QuasimetricError::IterateBound {
            x,
            r,
            l,
            count,
            bound,
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub c2: f64,
    pub worst_center: usize,
    pub worst_radius: f64,
}

/// `max μ(B(x, 2r)) / μ(B(x, r))` over points and grid radii, with the
/// cloud weights (counting measure if absent).
pub fn measure_doubling_check(
    c: &PointCloud,
    radii: &[f64],
) -> Result<MeasureReport, QuasimetricError> {
    check_radii(radii)?;
    let mass = |x: usize, r: f64| -> f64 { c.ball(x, r).iter().map(|&y| c.weight(y)).sum() };
    let mut best = MeasureReport {
        c2: 1.0,
        worst_center: 0,
        worst_radius: radii.first().copied().unwrap_or(0.0),
    };
    for &r in radii {
        for x in 0..c.len() {
            let q = mass(x, 2.0 * r) / mass(x, r);
            if q > best.c2 {
                best = MeasureReport {
                    c2: q,
                    worst_center: x,
                    worst_radius: r,
                };
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionFit {
    pub radii: Vec<f64>,
    pub cover_counts: Vec<usize>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// `diam · 2^{-k}` for `k = 1..=levels`, dropping radii below the smallest
/// gap.
pub fn dyadic_radii(c: &PointCloud, levels: u32) -> Vec<f64> {
    let diam = c.diameter();
    let gap = c.min_gap().unwrap_or(0.0);
    let mut out = Vec::new();
    for k in 1..=levels {
        let r = diam / 2f64.powi(k as i32);
        if r < gap {
            warn!("radius {r} is below the smallest gap {gap}; clipped");
            continue;
        }
        out.push(r);
    }
    out
}

/// Least-squares slope of `log N(r)` against `log(1/r)`, where `N(r)` is
/// the greedy count of `r`-balls covering the whole cloud.
pub fn boxcount_dimension(c: &PointCloud, radii: &[f64]) -> Result<DimensionFit, QuasimetricError> {
    check_radii(radii)?;
    if radii.len() < 3 {
        return Err(QuasimetricError::DegenerateGrid(format!(
            "{} radii, need 3",
            radii.len()
        )));
    }
    let (lo, hi) = radii.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| {
        (lo.min(r), hi.max(r))
    });
    if hi / lo < 4.0 {
        return Err(QuasimetricError::DegenerateGrid(format!(
            "radii span {lo}..{hi}, less than two octaves"
        )));
    }
    let all: Vec<usize> = (0..c.len()).collect();
    let counts: Vec<usize> = radii
        .par_iter()
        .map(|&r| greedy_cover(c, &all, 0, r).len().max(1))
        .collect();
    let xs: Vec<f64> = radii.iter().map(|r| -r.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&k| (k as f64).ln()).collect();
    let (slope, intercept, residual) = least_squares(&xs, &ys);
    Ok(DimensionFit {
        radii: radii.to_vec(),
        cover_counts: counts,
        slope,
        intercept,
        residual,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (sse / n).sqrt())
}
